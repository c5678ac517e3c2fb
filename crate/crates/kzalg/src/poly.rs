use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Coefficient ring.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn rzero() -> Self;
    fn rone() -> Self;
    fn ris_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(x: &Q) -> Self;
    fn fmt_coeff(&self) -> String;
}

pub trait Field: Ring {
    fn inv(&self) -> Self;
}

impl Ring for Q {
    fn rzero() -> Self {
        Zero::zero()
    }
    fn rone() -> Self {
        One::one()
    }
    fn ris_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn fmt_coeff(&self) -> String {
        self.to_string()
    }
}

impl Field for Q {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Ring for Complex64 {
    fn rzero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn rone() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn ris_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        Complex64::new(crate::rational::to_f64(x), 0.0)
    }
    fn fmt_coeff(&self) -> String {
        format!("({:.6}{:+.6}i)", self.re, self.im)
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Self {
        1.0 / self
    }
}

/// Sparse multivariate Laurent polynomial with exponent vectors of fixed length.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i32>, R>,
}

pub type QPoly = Poly<Q>;

impl<R: Ring> Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}

impl<R: Ring> Poly<R> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = Self::zero(nvars);
        if !c.ris_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::rone())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, R::rone())
    }

    pub fn monomial(exps: Vec<i32>, c: R) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.ris_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Linear form `c0 + sum c_i x_i`.
    pub fn linear(constant: R, coeffs: &[R]) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, constant);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.ris_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(e, c.clone());
            }
        }
        p
    }

    pub fn ris_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<i32>, c: R) {
        if c.ris_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.ris_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.mul(s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn mul_monomial(&self, e: &[i32]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Total degree of the highest term (0 for the zero polynomial).
    pub fn degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn constant_term(&self) -> R {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(R::rzero)
    }

    /// Applies a permutation of the variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(a, b);
        self.permute_vars(&perm)
    }

    /// Substitutes polynomial `images[i]` for variable `i`; exponents must be nonnegative.
    pub fn substitute(&self, images: &[Poly<R>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut cache: Vec<Vec<Poly<R>>> = vec![Vec::new(); self.nvars];
        let mut r = Poly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                assert!(k >= 0, "substitution into a Laurent monomial");
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k {
                    let next = match cache[i].last() {
                        None => Poly::one(nv),
                        Some(p) => p.mul(&images[i]),
                    };
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Transforms the exponent vectors by a linear map, with a coefficient twist.
    pub fn map_monomials(&self, f: impl Fn(&[i32]) -> (Vec<i32>, R)) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (ne, t) = f(e);
            r.add_term(ne, c.mul(&t));
        }
        r
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut m = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let n = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                if k == 1 {
                    m.push(n);
                } else {
                    m.push(format!("{n}^{k}"));
                }
            }
            let cs = c.fmt_coeff();
            if m.is_empty() {
                parts.push(cs);
            } else if c == &R::rone() {
                parts.push(m.join("*"));
            } else {
                parts.push(format!("{}*{}", cs, m.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<R: Field> Poly<R> {
    /// Exact division; fails when the divisor does not divide.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        assert_eq!(self.nvars, g.nvars);
        let Some((lg, lc)) = g.terms.iter().next_back() else {
            return Err(Error::NotDivisible("division by zero polynomial".into()));
        };
        let lci = lc.inv();
        let mut r = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lr, cr)) = r.terms.iter().next_back() {
            if lr.iter().zip(lg).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible(format!("{:?} by {:?}", self, g)));
            }
            let e: Vec<i32> = lr.iter().zip(lg).map(|(a, b)| a - b).collect();
            let c = cr.mul(&lci);
            let t = Self::monomial(e, c);
            r = r.sub(&t.mul(g));
            quot = quot.add(&t);
        }
        Ok(quot)
    }
}

impl QPoly {
    pub fn eval(&self, pt: &[Q]) -> Q {
        let mut s = <Q as Zero>::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k >= 0 {
                    for _ in 0..k {
                        t *= &pt[i];
                    }
                } else {
                    for _ in 0..(-k) {
                        t /= &pt[i];
                    }
                }
            }
            s += t;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn x(i: usize) -> QPoly {
        QPoly::var(3, i)
    }

    #[test]
    fn ring_ops() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let p = a.mul(&b);
        assert_eq!(p, x(0).pow(2).sub(&x(1).pow(2)));
        assert_eq!(p.degree(), 2);
        assert!(p.is_homogeneous());
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1)).add(&QPoly::constant(3, q(1)));
        let b = x(2).sub(&x(0)).scale(&qr(1, 2));
        let p = a.mul(&b).mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a.mul(&b));
        assert!(p.div_exact(&x(1).add(&x(2).scale(&q(3)))).is_err());
    }

    #[test]
    fn substitution() {
        let p = x(0).mul(&x(1));
        let s = p.substitute(&[x(1), x(0).add(&QPoly::one(3)), x(2)]);
        assert_eq!(s, x(1).mul(&x(0)).add(&x(1)));
        assert_eq!(p.swap_vars(0, 2), x(2).mul(&x(1)));
    }

    #[test]
    fn laurent_monomials() {
        let m = QPoly::monomial(vec![-1, 0, 2], q(3));
        let n = QPoly::monomial(vec![1, 1, -2], q(2));
        assert_eq!(m.mul(&n), QPoly::monomial(vec![0, 1, 0], q(6)));
    }
}
