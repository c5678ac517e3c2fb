//! SL2 Knizhnik–Zamolodchikov monodromy: Cherednik's closed-form affine Hecke action on the
//! graded weight modules, the KZ connection transported numerically along paths, and the
//! comparison of the two up to simultaneous similarity.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{ubar_weight_module, WeightModuleSl2};
use crate::linalg::QMat;
use crate::rational::{is_integer, q, qr, to_f64, Q};

pub type CMat = DMatrix<C64>;

const I: C64 = C64 { re: 0.0, im: 1.0 };

// ---------------------------------------------------------------------------
// Jets

/// Truncated power series `c_0 + c_1 e + ... + c_k e^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub c: Vec<C64>,
}

impl Jet {
    pub fn constant(z: C64, order: usize) -> Self {
        let mut c = vec![C64::zero(); order + 1];
        c[0] = z;
        Jet { c }
    }

    /// The identity function expanded at `z0`.
    pub fn var(z0: C64, order: usize) -> Self {
        let mut j = Self::constant(z0, order);
        if order >= 1 {
            j.c[1] = C64::one();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    pub fn add(&self, o: &Self) -> Self {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn add_scalar(&self, s: C64) -> Self {
        let mut j = self.clone();
        j.c[0] += s;
        j
    }

    pub fn scale(&self, s: C64) -> Self {
        Jet { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.c.len();
        let mut c = vec![C64::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }

    pub fn recip(&self) -> Result<Self> {
        let a0 = self.c[0];
        if a0.norm() == 0.0 {
            return Err(Error::Numerical("jet division by a series with zero constant term".into()));
        }
        let n = self.c.len();
        let mut r = vec![C64::zero(); n];
        r[0] = 1.0 / a0;
        for k in 1..n {
            let s: C64 = (1..=k).map(|j| self.c[j] * r[k - j]).sum();
            r[k] = -s / a0;
        }
        Ok(Jet { c: r })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut f = vec![C64::zero(); n];
        f[0] = self.c[0].exp();
        for k in 1..n {
            let s: C64 = (1..=k).map(|j| self.c[j] * f[k - j] * j as f64).sum();
            f[k] = s / k as f64;
        }
        Jet { c: f }
    }

    /// Principal branch at the constant term.
    pub fn ln(&self) -> Result<Self> {
        let a0 = self.c[0];
        if a0.norm() == 0.0 {
            return Err(Error::Numerical("logarithm at zero".into()));
        }
        let n = self.c.len();
        let mut h = vec![C64::zero(); n];
        h[0] = a0.ln();
        for k in 1..n {
            let s: C64 = (1..k).map(|j| h[j] * self.c[k - j] * j as f64).sum();
            h[k] = (self.c[k] - s / k as f64) / a0;
        }
        Ok(Jet { c: h })
    }

    pub fn sin(&self) -> Self {
        let a = self.scale(I).exp();
        let b = self.scale(-I).exp();
        a.sub(&b).scale(1.0 / (2.0 * I))
    }

    /// `f(z0 + a e)` from the jet of `f` at `z0`.
    pub fn rescale(&self, a: C64) -> Self {
        let mut p = C64::one();
        Jet {
            c: self
                .c
                .iter()
                .map(|x| {
                    let r = x * p;
                    p *= a;
                    r
                })
                .collect(),
        }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation, valid for `Re w >= 1/2`.
fn gamma_lanczos(w: &Jet) -> Result<Jet> {
    let n = w.order();
    let z = w.add_scalar(C64::new(-1.0, 0.0));
    let mut a = Jet::constant(C64::new(LANCZOS[0], 0.0), n);
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        a = a.add(&z.add_scalar(C64::new(i as f64, 0.0)).recip()?.scale(C64::new(*p, 0.0)));
    }
    let t = z.add_scalar(C64::new(LANCZOS_G + 0.5, 0.0));
    // t^{z + 1/2} e^{-t}
    let pw = z.add_scalar(C64::new(0.5, 0.0)).mul(&t.ln()?).sub(&t).exp();
    Ok(pw.mul(&a).scale(C64::new((2.0 * PI).sqrt(), 0.0)))
}

fn is_pole(z: C64) -> bool {
    z.im.abs() < 1e-12 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-12
}

/// `Gamma` applied to a jet.
pub fn gamma(w: &Jet) -> Result<Jet> {
    if is_pole(w.value()) {
        return Err(Error::Precondition(format!("Gamma has a pole at {}; use the reciprocal", w.value())));
    }
    if w.value().re >= 0.5 {
        gamma_lanczos(w)
    } else {
        // Gamma(w) = pi / (sin(pi w) Gamma(1 - w))
        let s = w.scale(C64::new(PI, 0.0)).sin();
        let g = gamma_lanczos(&w.scale(C64::new(-1.0, 0.0)).add_scalar(C64::one()))?;
        Jet::constant(C64::new(PI, 0.0), w.order()).div(&s.mul(&g))
    }
}

/// `1/Gamma` applied to a jet; entire, so defined everywhere.
pub fn rgamma(w: &Jet) -> Result<Jet> {
    if w.value().re >= 0.5 {
        gamma_lanczos(w)?.recip()
    } else {
        let s = w.scale(C64::new(PI, 0.0)).sin();
        let g = gamma_lanczos(&w.scale(C64::new(-1.0, 0.0)).add_scalar(C64::one()))?;
        Ok(s.mul(&g).scale(C64::new(1.0 / PI, 0.0)))
    }
}

pub fn gamma_jet(z0: C64, order: usize) -> Result<Jet> {
    gamma(&Jet::var(z0, order))
}

pub fn rgamma_jet(z0: C64, order: usize) -> Result<Jet> {
    rgamma(&Jet::var(z0, order))
}

// ---------------------------------------------------------------------------
// Matrix functions

pub fn qmat_to_c(m: &QMat) -> CMat {
    CMat::from_fn(m.rows, m.cols, |i, j| C64::new(to_f64(&m[(i, j)]), 0.0))
}

/// `f(x)` for `x` whose minimal polynomial divides `prod_mu (t - mu)^{N}`, given the jets of
/// `f` of order `N - 1` at each `mu` (Hermite interpolation).
pub fn matrix_function(x: &CMat, points: &[C64], jets: &[Jet]) -> Result<CMat> {
    let n_each = jets[0].c.len();
    let deg = points.len() * n_each;
    let mut a = CMat::zeros(deg, deg);
    let mut b = nalgebra::DVector::<C64>::zeros(deg);
    let mut row = 0;
    for (mu, jet) in points.iter().zip(jets) {
        for k in 0..n_each {
            // k-th Taylor coefficient of sum_j c_j t^j at mu
            for j in k..deg {
                let binom = (0..k).fold(1.0, |acc, i| acc * (j - i) as f64 / (i + 1) as f64);
                a[(row, j)] = mu.powu((j - k) as u32) * binom;
            }
            b[row] = jet.c[k];
            row += 1;
        }
    }
    let coeffs = a.lu().solve(&b).ok_or_else(|| Error::Numerical("Hermite interpolation is singular".into()))?;
    let n = x.nrows();
    let mut out = CMat::zeros(n, n);
    let mut p = CMat::identity(n, n);
    for c in coeffs.iter() {
        out += &p * *c;
        p = &p * x;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Cherednik operators

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyModule {
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub lambda: Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub u: Q,
    pub n: usize,
    #[serde(serialize_with = "ser_cmat")]
    pub x: CMat,
    #[serde(serialize_with = "ser_cmat")]
    pub t1: CMat,
}

pub fn ser_cmat<S: serde::Serializer>(m: &CMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

pub fn v_of(u: &Q) -> C64 {
    (I * PI * to_f64(u)).exp()
}

fn check_lambda(lambda: &Q) -> Result<()> {
    if is_integer(&(lambda * q(2))) {
        return Err(Error::Precondition(format!("lambda = {lambda} lies in (1/2)Z")));
    }
    Ok(())
}

/// `X -> exp(2 pi i x)`, `T_1 -> (v - 1/v)/(1 - exp(-4 pi i x)) + G(x) (s_1 - (u/2) x^{-1})` with
/// `G(x) = Gamma(1+2x)^2 / (Gamma(1+u+2x) Gamma(1-u+2x))`.
pub fn cherednik_operators(m: &WeightModuleSl2) -> Result<MonodromyModule> {
    check_lambda(&m.lambda)?;
    let n = m.n;
    let order = n - 1;
    let u = to_f64(&m.u);
    let v = v_of(&m.u);
    let mus = [C64::new(to_f64(&m.lambda), 0.0), C64::new(-to_f64(&m.lambda), 0.0)];
    let mut jx = Vec::new();
    let mut ja = Vec::new();
    let mut jg = Vec::new();
    for &mu in &mus {
        let w = Jet::var(mu, order);
        jx.push(w.scale(2.0 * PI * I).exp());
        let den = Jet::constant(C64::one(), order).sub(&w.scale(-4.0 * PI * I).exp());
        ja.push(Jet::constant(v - 1.0 / v, order).div(&den)?);
        let two_w = w.scale(C64::new(2.0, 0.0));
        let g1 = gamma(&two_w.add_scalar(C64::one()))?;
        let r1 = rgamma(&two_w.add_scalar(C64::new(1.0 + u, 0.0)))?;
        let r2 = rgamma(&two_w.add_scalar(C64::new(1.0 - u, 0.0)))?;
        jg.push(g1.mul(&g1).mul(&r1).mul(&r2));
    }
    let x = qmat_to_c(&m.x);
    let s1 = qmat_to_c(&m.s1);
    let xinv = qmat_to_c(&m.x.inverse().ok_or_else(|| Error::Precondition("x is not invertible".into()))?);
    let big_x = matrix_function(&x, &mus, &jx)?;
    let a = matrix_function(&x, &mus, &ja)?;
    let g = matrix_function(&x, &mus, &jg)?;
    let t1 = a + g * (s1 - xinv * C64::new(u / 2.0, 0.0));
    Ok(MonodromyModule { lambda: m.lambda.clone(), u: m.u.clone(), n, x: big_x, t1 })
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct AhaResiduals {
    /// `(T_1 - v)(T_1 + 1/v)`.
    pub quadratic: f64,
    /// `T_1 X^{-1} T_1 - X`.
    pub braid: f64,
    /// `(T_1 - v)(T_1 + v)`, reported for comparison.
    pub split_quadratic: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Frobenius-norm residuals (upper bounds for operator norms).
pub fn verify_aha_relations(x: &CMat, t1: &CMat, u: &Q, tol: f64) -> Result<AhaResiduals> {
    let v = v_of(u);
    let n = x.nrows();
    let id = CMat::identity(n, n);
    let xinv = x.clone().try_inverse().ok_or_else(|| Error::Numerical("X is singular".into()))?;
    let quadratic = frob(&((t1 - &id * v) * (t1 + &id / v)));
    let braid = frob(&(t1 * xinv * t1 - x));
    let split_quadratic = frob(&((t1 - &id * v) * (t1 + &id * v)));
    Ok(AhaResiduals { quadratic, braid, split_quadratic, tol, passed: quadratic <= tol && braid <= tol })
}

// ---------------------------------------------------------------------------
// Paths and the KZ connection

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum KzPath {
    /// `center + radius * exp(i (theta0 + (theta1 - theta0) t))`.
    Arc { center: [f64; 2], radius: f64, theta0: f64, theta1: f64 },
    Segment { from: [f64; 2], to: [f64; 2] },
    Constant { at: [f64; 2] },
}

fn c(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl KzPath {
    /// `tau(t) = 5/4 - (3/4) exp(pi i t)`, from `1/2` to `2` below the real axis.
    pub fn tau() -> Self {
        KzPath::Arc { center: [1.25, 0.0], radius: 0.75, theta0: PI, theta1: 2.0 * PI }
    }

    /// `gamma(t) = (1/2) exp(2 pi i t)`.
    pub fn gamma() -> Self {
        KzPath::Arc { center: [0.0, 0.0], radius: 0.5, theta0: 0.0, theta1: 2.0 * PI }
    }

    pub fn reversed(&self) -> Self {
        match self {
            KzPath::Arc { center, radius, theta0, theta1 } => KzPath::Arc { center: *center, radius: *radius, theta0: *theta1, theta1: *theta0 },
            KzPath::Segment { from, to } => KzPath::Segment { from: *to, to: *from },
            KzPath::Constant { at } => KzPath::Constant { at: *at },
        }
    }

    pub fn point(&self, t: f64) -> C64 {
        match self {
            KzPath::Arc { center, radius, theta0, theta1 } => c(*center) + *radius * (I * (theta0 + (theta1 - theta0) * t)).exp(),
            KzPath::Segment { from, to } => c(*from) + (c(*to) - c(*from)) * t,
            KzPath::Constant { at } => c(*at),
        }
    }

    pub fn velocity(&self, t: f64) -> C64 {
        match self {
            KzPath::Arc { radius, theta0, theta1, .. } => {
                let th = theta0 + (theta1 - theta0) * t;
                *radius * I * (theta1 - theta0) * (I * th).exp()
            }
            KzPath::Segment { from, to } => c(*to) - c(*from),
            KzPath::Constant { .. } => C64::zero(),
        }
    }

    /// Exact distance from the path to the singular points `0` and `1`.
    pub fn clearance(&self) -> f64 {
        [C64::zero(), C64::one()].iter().map(|&p| self.distance_to(p)).fold(f64::INFINITY, f64::min)
    }

    fn distance_to(&self, p: C64) -> f64 {
        match self {
            KzPath::Constant { at } => (c(*at) - p).norm(),
            KzPath::Segment { from, to } => {
                let (a, b) = (c(*from), c(*to));
                let d = b - a;
                let t = if d.norm_sqr() == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0) };
                (a + d * t - p).norm()
            }
            KzPath::Arc { center, radius, theta0, theta1 } => {
                let rel = p - c(*center);
                let ends = (self.point(0.0) - p).norm().min((self.point(1.0) - p).norm());
                if rel.norm() == 0.0 {
                    return *radius;
                }
                let (lo, hi) = if theta0 <= theta1 { (*theta0, *theta1) } else { (*theta1, *theta0) };
                let ang = rel.arg();
                let on_arc = (-2..=2).any(|k| {
                    let a = ang + 2.0 * PI * k as f64;
                    a >= lo && a <= hi
                });
                if on_arc {
                    (rel.norm() - radius).abs()
                } else {
                    ends
                }
            }
        }
    }
}

/// Connection matrix `A(z) = (x - u/2) + u (1 - s_1) / (1 - z^{-1})`; flat sections satisfy `z F' = -A(z) F`.
fn connection(x: &CMat, s1: &CMat, u: f64, z: C64) -> CMat {
    let n = x.nrows();
    let id = CMat::identity(n, n);
    (x - &id * C64::new(u / 2.0, 0.0)) + (&id - s1) * (C64::new(u, 0.0) / (1.0 - 1.0 / z))
}

/// Fundamental solution of `z dPhi/dz + A(z) Phi = 0` transported along the path, starting from the identity.
pub fn transport(x: &CMat, s1: &CMat, u: f64, path: &KzPath, tol: f64) -> Result<CMat> {
    let n = x.nrows();
    if path.clearance() <= 0.0 {
        return Err(Error::Precondition("path meets a singular point".into()));
    }
    if matches!(path, KzPath::Constant { .. }) {
        return Ok(CMat::identity(n, n));
    }
    let rhs = |t: f64, y: &CMat| -> CMat {
        let z = path.point(t);
        let dz = path.velocity(t);
        connection(x, s1, u, z) * y * (-dz / z)
    };
    dopri5(rhs, CMat::identity(n, n), tol)
}

/// Adaptive Dormand–Prince 5(4) on `[0, 1]`.
fn dopri5(f: impl Fn(f64, &CMat) -> CMat, y0: CMat, tol: f64) -> Result<CMat> {
    const C2: f64 = 1.0 / 5.0;
    const C3: f64 = 3.0 / 10.0;
    const C4: f64 = 4.0 / 5.0;
    const C5: f64 = 8.0 / 9.0;
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    const E1: f64 = 71.0 / 57600.0;
    const E3: f64 = -71.0 / 16695.0;
    const E4: f64 = 71.0 / 1920.0;
    const E5: f64 = -17253.0 / 339200.0;
    const E6: f64 = 22.0 / 525.0;
    const E7: f64 = -1.0 / 40.0;
    let r = |x: f64| C64::new(x, 0.0);
    let mut t = 0.0;
    let mut y = y0;
    let mut h: f64 = 0.01;
    let mut k1 = f(t, &y);
    let mut steps = 0usize;
    while t < 1.0 {
        if h < 1e-12 {
            return Err(Error::Numerical("step size underflow".into()));
        }
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::Numerical("too many steps".into()));
        }
        h = h.min(1.0 - t);
        let k2 = f(t + C2 * h, &(&y + &k1 * r(h * A21)));
        let k3 = f(t + C3 * h, &(&y + &k1 * r(h * A31) + &k2 * r(h * A32)));
        let k4 = f(t + C4 * h, &(&y + &k1 * r(h * A41) + &k2 * r(h * A42) + &k3 * r(h * A43)));
        let k5 = f(t + C5 * h, &(&y + &k1 * r(h * A51) + &k2 * r(h * A52) + &k3 * r(h * A53) + &k4 * r(h * A54)));
        let k6 = f(t + h, &(&y + &k1 * r(h * A61) + &k2 * r(h * A62) + &k3 * r(h * A63) + &k4 * r(h * A64) + &k5 * r(h * A65)));
        let y_new = &y + (&k1 * r(B1) + &k3 * r(B3) + &k4 * r(B4) + &k5 * r(B5) + &k6 * r(B6)) * r(h);
        let k7 = f(t + h, &y_new);
        let err = (&k1 * r(E1) + &k3 * r(E3) + &k4 * r(E4) + &k5 * r(E5) + &k6 * r(E6) + &k7 * r(E7)) * r(h);
        let scale = y.iter().zip(y_new.iter()).map(|(a, b)| a.norm().max(b.norm())).fold(0.0, f64::max);
        let e = err.iter().map(|z| z.norm()).fold(0.0, f64::max) / (tol * (1.0 + scale));
        if e <= 1.0 {
            t += h;
            y = y_new;
            k1 = k7;
        }
        let fac = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
        h *= fac;
    }
    Ok(y)
}

/// Generators of the orbifold fundamental group at the base point `1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    Tau,
    TauInv,
    Gamma,
    GammaInv,
}

/// Parses words such as `tau`, `gamma`, `tau gamma tau`, `tgt`, `G` (upper case is the inverse).
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    let mut out = Vec::new();
    for (pos, tok) in s.split(|ch: char| ch.is_whitespace() || ch == '*' || ch == ',').filter(|t| !t.is_empty()).enumerate() {
        match tok {
            "tau" => out.push(Letter::Tau),
            "tau^-1" | "TAU" => out.push(Letter::TauInv),
            "gamma" => out.push(Letter::Gamma),
            "gamma^-1" | "GAMMA" => out.push(Letter::GammaInv),
            _ => {
                for ch in tok.chars() {
                    out.push(match ch {
                        't' => Letter::Tau,
                        'T' => Letter::TauInv,
                        'g' => Letter::Gamma,
                        'G' => Letter::GammaInv,
                        _ => return Err(Error::Parse { pos, msg: format!("unknown path letter '{ch}'") }),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Monodromy on flat sections near `1/2`: `gamma` acts by transport around the loop and `tau`
/// by transport to `2` followed by the symmetry `s_1`.
pub struct KzSystem {
    pub module: WeightModuleSl2,
    pub x: CMat,
    pub s1: CMat,
    pub u: f64,
    pub tol: f64,
    pub tau: CMat,
    pub gamma: CMat,
}

impl KzSystem {
    pub fn new(module: &WeightModuleSl2, tol: f64) -> Result<Self> {
        let x = qmat_to_c(&module.x);
        let s1 = qmat_to_c(&module.s1);
        let u = to_f64(&module.u);
        let tau = &s1 * transport(&x, &s1, u, &KzPath::tau(), tol)?;
        let gamma = transport(&x, &s1, u, &KzPath::gamma(), tol)?;
        Ok(KzSystem { module: module.clone(), x, s1, u, tol, tau, gamma })
    }

    pub fn letter(&self, l: Letter) -> Result<CMat> {
        let inv = |m: &CMat| m.clone().try_inverse().ok_or_else(|| Error::Numerical("singular monodromy".into()));
        Ok(match l {
            Letter::Tau => self.tau.clone(),
            Letter::TauInv => inv(&self.tau)?,
            Letter::Gamma => self.gamma.clone(),
            Letter::GammaInv => inv(&self.gamma)?,
        })
    }

    /// `rho(a_1) rho(a_2) ... rho(a_k)`.
    pub fn word(&self, w: &[Letter]) -> Result<CMat> {
        let n = self.x.nrows();
        w.iter().try_fold(CMat::identity(n, n), |acc, &l| Ok(acc * self.letter(l)?))
    }

    /// `(X, T_1) = (v gamma^{-1}, v tau)`.
    pub fn hecke_pair(&self) -> Result<(CMat, CMat)> {
        let v = v_of(&self.module.u);
        Ok((self.letter(Letter::GammaInv)? * v, &self.tau * v))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupResiduals {
    /// `tau gamma tau - gamma^{-1}`.
    pub braid: f64,
    /// `(tau - 1)(tau + exp(-2 pi i u))`.
    pub quadratic: f64,
    pub tol: f64,
    pub passed: bool,
}

pub fn verify_group_relations(sys: &KzSystem, tol: f64) -> Result<GroupResiduals> {
    let n = sys.x.nrows();
    let id = CMat::identity(n, n);
    let lhs = sys.word(&[Letter::Tau, Letter::Gamma, Letter::Tau])?;
    let braid = frob(&(lhs - sys.letter(Letter::GammaInv)?));
    let e = (-2.0 * PI * I * sys.u).exp();
    let quadratic = frob(&((&sys.tau - &id) * (&sys.tau + &id * e)));
    Ok(GroupResiduals { braid, quadratic, tol, passed: braid <= tol && quadratic <= tol })
}

pub fn ode_monodromy(module: &WeightModuleSl2, word: &[Letter], tol: f64) -> Result<CMat> {
    KzSystem::new(module, tol)?.word(word)
}

// ---------------------------------------------------------------------------
// Simultaneous similarity

#[derive(Clone, Debug, Serialize)]
pub struct SimilarityReport {
    pub nullity: usize,
    pub residual: f64,
    pub condition: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(serialize_with = "ser_cmat")]
    pub intertwiner: CMat,
}

/// Finds an invertible `S` with `S A_k = B_k S` for all pairs.
pub fn simultaneous_similarity(pairs: &[(CMat, CMat)], tol: f64, seed: u64) -> Result<SimilarityReport> {
    let n = pairs[0].0.nrows();
    let nn = n * n;
    let mut m = CMat::zeros(pairs.len() * nn, nn);
    // vec(S A) = (A^T (x) I) vec S, vec(B S) = (I (x) B) vec S, column-major
    for (p, (a, b)) in pairs.iter().enumerate() {
        for col_s in 0..n {
            for row_s in 0..n {
                let k = col_s * n + row_s;
                for j in 0..n {
                    // (S A)[row_s', j] gets S[row_s, col_s] A[col_s, j] at row_s' = row_s
                    m[(p * nn + j * n + row_s, k)] += a[(col_s, j)];
                }
                for i in 0..n {
                    // (B S)[i, col_s] gets B[i, row_s] S[row_s, col_s]
                    m[(p * nn + col_s * n + i, k)] -= b[(i, row_s)];
                }
            }
        }
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD failed".into()))?;
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let null: Vec<usize> = (0..nn).filter(|&i| svd.singular_values[i] <= 1e-8 * smax).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut svec = nalgebra::DVector::<C64>::zeros(nn);
    for &i in &null {
        let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for k in 0..nn {
            svec[k] += vt[(i, k)].conj() * w;
        }
    }
    let s = CMat::from_fn(n, n, |i, j| svec[j * n + i]);
    let norm = frob(&s).max(1e-300);
    let residual = pairs.iter().map(|(a, b)| frob(&(&s * a - b * &s)) / norm).fold(0.0, f64::max);
    let sv = s.clone().singular_values();
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if null.is_empty() || smin == 0.0 { f64::INFINITY } else { sv.iter().cloned().fold(0.0, f64::max) / smin };
    let passed = !null.is_empty() && residual <= tol && condition < 1e8;
    Ok(SimilarityReport { nullity: null.len(), residual, condition, tol, passed, intertwiner: s })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyComparison {
    pub aha: AhaResiduals,
    pub ode_aha: AhaResiduals,
    pub group: GroupResiduals,
    pub similarity: SimilarityReport,
}

/// Cherednik's closed form against the ODE monodromy `(v gamma^{-1}, v tau)`.
pub fn compare_monodromy(module: &WeightModuleSl2, tol: f64, ode_tol: f64) -> Result<MonodromyComparison> {
    let cher = cherednik_operators(module)?;
    let aha = verify_aha_relations(&cher.x, &cher.t1, &module.u, 1e-9)?;
    let sys = KzSystem::new(module, ode_tol)?;
    let group = verify_group_relations(&sys, tol)?;
    let (xo, to) = sys.hecke_pair()?;
    let ode_aha = verify_aha_relations(&xo, &to, &module.u, tol)?;
    let similarity = simultaneous_similarity(&[(xo, cher.x.clone()), (to, cher.t1.clone())], tol, 1)?;
    Ok(MonodromyComparison { aha, ode_aha, group, similarity })
}

/// `sup |Mon(gamma) - exp(-2 pi i x)|` at `u = 0`.
pub fn calibration_residual(lambda: &Q, n: usize, ode_tol: f64) -> Result<f64> {
    let m = ubar_weight_module(lambda, n, &Q::zero())?;
    let sys = KzSystem::new(&m, ode_tol)?;
    let x = qmat_to_c(&m.x);
    let mus = [C64::new(to_f64(lambda), 0.0), C64::new(-to_f64(lambda), 0.0)];
    let jets: Vec<Jet> = mus.iter().map(|&mu| Jet::var(mu, n - 1).scale(-2.0 * PI * I).exp()).collect();
    let closed = matrix_function(&x, &mus, &jets)?;
    Ok((sys.gamma - closed).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

// ---------------------------------------------------------------------------
// Cyclicity of the monodromy of P(lambda)

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// Generated by `phi_e`, isomorphic to `P(ell)`.
    CyclicP,
    /// Isomorphic to the module at `-lambda`, hence to `P(ell^{-1})`.
    CyclicPInverse,
    NonCyclicFlagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct KzModuleShape {
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub lambda: Q,
    pub n: usize,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub u: Q,
    pub shape: Shape,
    /// `exp(2 pi i lambda)` as `[re, im]`.
    pub ell: [f64; 2],
    pub krylov_phi_e: usize,
    pub krylov_phi_s1: usize,
    pub isomorphic_to_negative: Option<bool>,
    /// Whether the computed data supports the classification.
    pub consistent: bool,
}

/// Dimension of the span of `v` under the algebra generated by the given operators.
pub fn krylov_rank(ops: &[CMat], v: &nalgebra::DVector<C64>, tol: f64) -> usize {
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    let mut queue = vec![v.clone()];
    while let Some(mut w) = queue.pop() {
        let scale = w.norm().max(1.0);
        for b in &basis {
            let p = b.dotc(&w);
            w -= b * p;
        }
        if w.norm() <= tol * scale {
            continue;
        }
        w /= C64::new(w.norm(), 0.0);
        for op in ops {
            queue.push(op * &w);
        }
        basis.push(w);
        if basis.len() == v.len() {
            break;
        }
    }
    basis.len()
}

/// Which of the three cases (generated by `phi_e`, by `phi_{s_1}`, or flagged) the monodromy of
/// `P(lambda)_N` falls into, for `lambda in 1/4 + (1/2)Z`.
pub fn kz_module_shape(lambda: &Q, n: usize, u: &Q) -> Result<KzModuleShape> {
    let shifted = lambda - qr(1, 4);
    if !is_integer(&(shifted * q(2))) {
        return Err(Error::Precondition(format!("lambda = {lambda} is not in 1/4 + (1/2)Z")));
    }
    let m = ubar_weight_module(lambda, n, u)?;
    let cher = cherednik_operators(&m)?;
    let xinv = cher.x.clone().try_inverse().ok_or_else(|| Error::Numerical("X is singular".into()))?;
    let ops = [cher.x.clone(), xinv, cher.t1.clone()];
    let dim = 2 * n;
    let mut e0 = nalgebra::DVector::<C64>::zeros(dim);
    e0[0] = C64::one();
    // phi_{s_1} = lambda s_1 - u/2
    let s1 = qmat_to_c(&m.s1);
    let phi_s1 = &s1 * &e0 * C64::new(to_f64(lambda), 0.0) - &e0 * C64::new(to_f64(u) / 2.0, 0.0);
    let krylov_phi_e = krylov_rank(&ops, &e0, 1e-9);
    let krylov_phi_s1 = krylov_rank(&ops, &phi_s1, 1e-9);
    let l = to_f64(lambda);
    let ell = (2.0 * PI * I * l).exp();
    let (shape, isomorphic_to_negative, consistent) = if lambda < &Q::zero() {
        (Shape::CyclicP, None, krylov_phi_e == dim)
    } else if lambda >= &qr(3, 4) {
        let neg = cherednik_operators(&ubar_weight_module(&-lambda.clone(), n, u)?)?;
        let sim = simultaneous_similarity(&[(cher.x.clone(), neg.x.clone()), (cher.t1.clone(), neg.t1.clone())], 1e-6, 2)?;
        (Shape::CyclicPInverse, Some(sim.passed), krylov_phi_s1 == dim && sim.passed)
    } else {
        (Shape::NonCyclicFlagged, None, krylov_phi_e < dim)
    };
    Ok(KzModuleShape { lambda: lambda.clone(), n, u: u.clone(), shape, ell: [ell.re, ell.im], krylov_phi_e, krylov_phi_s1, isomorphic_to_negative, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((gamma_jet(C64::one(), 0).unwrap().value() - 1.0).norm() < 1e-13);
        assert!((gamma_jet(C64::new(0.5, 0.0), 0).unwrap().value() - PI.sqrt()).norm() < 1e-13);
        assert!(rgamma_jet(C64::zero(), 0).unwrap().value().norm() < 1e-15);
        assert!(gamma_jet(C64::new(-2.0, 0.0), 1).is_err());
        // Gamma'(1) = -euler_gamma, Gamma''(1)/2 = (euler_gamma^2 + pi^2/6)/2
        let eg = 0.577_215_664_901_532_9;
        let j = gamma_jet(C64::one(), 2).unwrap();
        assert!((j.c[1] + eg).norm() < 1e-12);
        assert!((j.c[2] - (eg * eg + PI * PI / 6.0) / 2.0).norm() < 1e-11);
    }

    #[test]
    fn jet_exp_ln_roundtrip() {
        let j = Jet { c: vec![C64::new(0.3, 0.2), C64::new(1.0, -0.5), C64::new(0.25, 0.0), C64::new(-0.1, 0.3)] };
        let r = j.exp().ln().unwrap();
        for (a, b) in r.c.iter().zip(&j.c) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn clearance_of_named_paths() {
        assert!((KzPath::tau().clearance() - 0.5).abs() < 1e-12);
        assert!((KzPath::gamma().clearance() - 0.5).abs() < 1e-12);
        assert!((KzPath::tau().point(1.0) - 2.0).norm() < 1e-12);
        assert!(KzPath::tau().point(0.5).im < 0.0);
    }

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("tau gamma tau").unwrap(), vec![Letter::Tau, Letter::Gamma, Letter::Tau]);
        assert_eq!(parse_word("tgT").unwrap(), vec![Letter::Tau, Letter::Gamma, Letter::TauInv]);
        assert!(parse_word("x").is_err());
    }
}
