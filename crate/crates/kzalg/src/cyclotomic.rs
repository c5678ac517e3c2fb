//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element stores its conductor `n` and coordinates in the power basis
//! `1, zeta, ..., zeta^{phi(n)-1}`. Elements of different conductors are lifted
//! to the least common multiple before combining, so rational constants (conductor 1)
//! mix freely with everything.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::QMat;
use crate::poly::{Field, Ring};
use crate::rational::{fmt_q, q, to_f64, Q};

fn poly_divmod_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    // exact division of integer polynomials (low degree first), den monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() < den.len() {
        return vec![];
    }
    let mut out = vec![0i64; r.len() - dd];
    for k in (0..out.len()).rev() {
        let c = r[k + dd];
        out[k] = c;
        for (j, d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    out
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_divmod_monic(&p, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

#[derive(Clone)]
pub struct Cyc {
    n: u32,
    c: Vec<Q>,
}

impl Cyc {
    pub fn rational(x: Q) -> Self {
        Cyc { n: 1, c: vec![x] }
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![Q::zero(); n as usize];
        dense[k] = Q::one();
        Self::from_power_sum(n, &dense)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Q] {
        &self.c
    }

    /// `sum_k a_k zeta_n^k` for arbitrary length `a`.
    pub fn from_power_sum(n: u32, a: &[Q]) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        let mut r: Vec<Q> = a.to_vec();
        // zeta^n = 1 first
        if r.len() > n as usize {
            let mut folded = vec![Q::zero(); n as usize];
            for (k, x) in r.iter().enumerate() {
                folded[k % n as usize] += x;
            }
            r = folded;
        }
        for k in (d..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.iter().enumerate() {
                if *p != 0 {
                    r[k - d + j] -= &c * q(*p);
                }
            }
        }
        r.resize(d, Q::zero());
        Cyc { n, c: r }
    }

    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert_eq!(m % self.n, 0, "conductor {} does not divide {m}", self.n);
        let step = (m / self.n) as usize;
        let mut dense = vec![Q::zero(); m as usize];
        for (k, x) in self.c.iter().enumerate() {
            dense[k * step] += x;
        }
        Self::from_power_sum(m, &dense)
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let m = self.n.lcm(&o.n);
        (self.lift(m), o.lift(m))
    }

    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.n as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for x in &self.c {
            acc += p * to_f64(x);
            p *= z;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    fn mul_matrix(&self) -> QMat {
        let d = self.c.len();
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|j| {
                let mut basis = vec![Q::zero(); d];
                basis[j] = Q::one();
                Ring::mul(self, &Cyc { n: self.n, c: basis }).c
            })
            .collect();
        QMat::from_cols(&cols, d)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.common(o);
        a.c == b.c
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_coeff())
    }
}

impl Ring for Cyc {
    fn rzero() -> Self {
        Cyc::rational(Q::zero())
    }
    fn rone() -> Self {
        Cyc::rational(Q::one())
    }
    fn ris_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        Cyc { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        Cyc { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let mut dense = vec![Q::zero(); a.c.len() + b.c.len()];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                dense[i + j] += x * y;
            }
        }
        Cyc::from_power_sum(a.n, &dense)
    }
    fn neg(&self) -> Self {
        Cyc { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
    fn from_q(x: &Q) -> Self {
        Cyc::rational(x.clone())
    }
    fn fmt_coeff(&self) -> String {
        if let Some(r) = self.as_rational() {
            return fmt_q(&r);
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => fmt_q(x),
                _ => format!("{}*z{}^{}", fmt_q(x), self.n, k),
            })
            .collect();
        format!("({})", terms.join(" + "))
    }
}

impl Field for Cyc {
    fn inv(&self) -> Self {
        assert!(!self.ris_zero(), "division by zero");
        let m = self.mul_matrix();
        let mut e = vec![Q::zero(); self.c.len()];
        e[0] = Q::one();
        let c = m.solve(&e).expect("nonzero field elements are invertible");
        Cyc { n: self.n, c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn phi_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn roots_of_unity() {
        let z = Cyc::zeta(6, 1);
        let mut p = Cyc::rone();
        for _ in 0..6 {
            p = Ring::mul(&p, &z);
        }
        assert_eq!(p, Cyc::rone());
        assert_eq!(Ring::mul(&Cyc::zeta(6, 3), &Cyc::zeta(6, 3)), Cyc::rone());
        assert_eq!(Cyc::zeta(6, 3), Cyc::rational(qr(-1, 1)));
        assert_eq!(Cyc::zeta(4, 1).lift(12), Cyc::zeta(12, 3));
        assert_eq!(Ring::add(&Cyc::zeta(3, 1), &Cyc::zeta(4, 1)).conductor(), 12);
    }

    #[test]
    fn inverse_and_embedding() {
        let x = Ring::add(&Cyc::zeta(10, 3), &Cyc::rational(qr(2, 3)));
        let y = x.inv();
        assert_eq!(Ring::mul(&x, &y), Cyc::rone());
        let c = x.to_complex() * y.to_complex();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let z = Cyc::zeta(8, 1);
        let w = z.to_complex();
        assert!((w - Complex64::from_polar(1.0, std::f64::consts::PI / 4.0)).norm() < 1e-14);
    }
}
