//! Degenerate double affine Hecke algebras and affine Hecke algebras in normal form,
//! the SL2 graded weight modules and Cherednik's Dunkl representation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::{Poly, QPoly, Ring};
use crate::rational::{q, Q};
use crate::rootdata::{AffineWeylElement, RootDatum};

// ---------------------------------------------------------------------------
// dDAHA

/// `sum_w w (x) f_w`, group part on the left.
pub type DdahaElem = BTreeMap<AffineWeylElement, QPoly>;

/// `CW^ (x) Sym X` with `s_a f - (s_a f) s_a = c (f - s_a f) / a` for simple affine roots `a`.
/// Polynomials are in the fundamental weights `x_1..x_r`, which are the simple-coroot coordinates.
#[derive(Clone, Debug)]
pub struct Ddaha {
    pub rd: RootDatum,
    /// The parameter `2d/m`.
    pub c: Q,
}

fn add_poly_into<K: Ord, R: Ring>(map: &mut BTreeMap<K, Poly<R>>, k: K, p: Poly<R>) {
    if p.ris_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(e) => {
            *e = e.add(&p);
            if e.ris_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, p);
        }
    }
}

impl Ddaha {
    /// Slope `d/m` gives the parameter `2d/m`.
    pub fn new(rd: RootDatum, d: i64, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("slope denominator is zero".into()));
        }
        Ok(Ddaha { rd, c: crate::rational::qr(2 * d, m) })
    }

    pub fn with_parameter(rd: RootDatum, c: Q) -> Self {
        Ddaha { rd, c }
    }

    pub fn nvars(&self) -> usize {
        self.rd.rank
    }

    pub fn x(&self, i: usize) -> QPoly {
        QPoly::var(self.nvars(), i)
    }

    /// The simple affine root with index `i` as an affine function (index 0 is `1 - theta`).
    pub fn simple_root_poly(&self, i: usize) -> QPoly {
        let r = self.rd.rank;
        let (alpha, level) = if i == 0 { (self.rd.theta().iter().map(|x| -x).collect::<Vec<_>>(), 1) } else { (self.rd.roots[i - 1].clone(), 0) };
        let f = self.rd.functional(&alpha);
        QPoly::linear(q(level), &(0..r).map(|j| q(f[j])).collect::<Vec<_>>())
    }

    /// `(w f)(lambda) = f(w^{-1} lambda)`.
    pub fn act_poly(&self, w: &AffineWeylElement, f: &QPoly) -> QPoly {
        let wi = w.inverse();
        let r = self.rd.rank;
        let images: Vec<QPoly> = (0..r).map(|i| QPoly::linear(q(wi.translation[i]), &(0..r).map(|k| q(wi.finite[i][k])).collect::<Vec<_>>())).collect();
        f.substitute(&images)
    }

    pub fn reflect_poly(&self, i: usize, f: &QPoly) -> QPoly {
        self.act_poly(&AffineWeylElement::simple(&self.rd, i), f)
    }

    /// `(f - s_i f) / a_i`, checked to be a polynomial.
    pub fn demazure(&self, i: usize, f: &QPoly) -> Result<QPoly> {
        let num = f.sub(&self.reflect_poly(i, f));
        num.div_exact(&self.simple_root_poly(i))
    }

    pub fn elem(&self, w: AffineWeylElement, f: QPoly) -> DdahaElem {
        let mut m = BTreeMap::new();
        add_poly_into(&mut m, w, f);
        m
    }

    pub fn one(&self) -> DdahaElem {
        self.elem(AffineWeylElement::identity(self.rd.rank), QPoly::one(self.nvars()))
    }

    pub fn group(&self, w: AffineWeylElement) -> DdahaElem {
        self.elem(w, QPoly::one(self.nvars()))
    }

    pub fn poly(&self, f: QPoly) -> DdahaElem {
        self.elem(AffineWeylElement::identity(self.rd.rank), f)
    }

    /// `f s_{i1} ... s_{ik}` in normal form.
    pub fn push(&self, f: &QPoly, word: &[usize]) -> DdahaElem {
        let Some((&i, rest)) = word.split_first() else {
            return self.poly(f.clone());
        };
        let s = AffineWeylElement::simple(&self.rd, i);
        let mut out = BTreeMap::new();
        // f s = s (s f) + c (f - s f) / a
        for (w, g) in self.push(&self.reflect_poly(i, f), rest) {
            add_poly_into(&mut out, s.mul(&w), g);
        }
        let d = self.demazure(i, f).expect("simple affine roots divide f - s f").scale(&self.c);
        if !d.ris_zero() {
            for (w, g) in self.push(&d, rest) {
                add_poly_into(&mut out, w, g);
            }
        }
        out
    }

    fn mul_by(&self, a: &DdahaElem, b: &DdahaElem, largest: bool) -> DdahaElem {
        let mut out = BTreeMap::new();
        for (w, f) in a {
            for (w2, g) in b {
                let word = w2.reduced_word_by(&self.rd, largest);
                for (u, h) in self.push(f, &word) {
                    add_poly_into(&mut out, w.mul(&u), h.mul(g));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &DdahaElem, b: &DdahaElem) -> DdahaElem {
        self.mul_by(a, b, false)
    }

    /// Product computed along the reduced words built from the largest descents.
    pub fn mul_alt(&self, a: &DdahaElem, b: &DdahaElem) -> DdahaElem {
        self.mul_by(a, b, true)
    }

    pub fn add(&self, a: &DdahaElem, b: &DdahaElem) -> DdahaElem {
        let mut out = a.clone();
        for (w, f) in b {
            add_poly_into(&mut out, w.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, a: &DdahaElem, b: &DdahaElem) -> DdahaElem {
        let mut out = a.clone();
        for (w, f) in b {
            add_poly_into(&mut out, w.clone(), f.neg());
        }
        out
    }

    pub fn scale(&self, a: &DdahaElem, c: &Q) -> DdahaElem {
        let mut out = BTreeMap::new();
        for (w, f) in a {
            add_poly_into(&mut out, w.clone(), f.scale(c));
        }
        out
    }

    pub fn random_elem<G: Rng>(&self, rng: &mut G, terms: usize, word_len: usize, deg: i32) -> DdahaElem {
        let r = self.rd.rank;
        let mut out = BTreeMap::new();
        for _ in 0..terms {
            let len = rng.gen_range(0..=word_len);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=r)).collect();
            let w = AffineWeylElement::from_word(&self.rd, &word);
            add_poly_into(&mut out, w, random_qpoly(rng, r, deg));
        }
        out
    }
}

pub fn random_qpoly<G: Rng>(rng: &mut G, nvars: usize, deg: i32) -> QPoly {
    let mut f = QPoly::zero(nvars);
    for _ in 0..3 {
        let mut e = vec![0i32; nvars];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 {
            e[rng.gen_range(0..nvars)] += 1;
            left -= 1;
        }
        f.add_term(e, q(rng.gen_range(-3..=3)));
    }
    f
}

// ---------------------------------------------------------------------------
// AHA

/// Quadratic relation normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quadratic {
    /// `(T_s - v)(T_s + v^{-1}) = 0` with the Bernstein cross relation.
    Bernstein,
    /// `(T_s - v)(T_s + v) = 0` with `T_s f = (s * f) T_s`, where `s * X^mu = v^{2<mu, a^v>} X^{s mu}`.
    /// In rank one this is the algebra `<X, T_1 | T_1^2 = v^2, T_1 X^{-1} T_1 = X>`.
    Split,
}

/// Laurent polynomials in `X^{varpi_1}, ..., X^{varpi_r}` over a cyclotomic field.
pub type LPoly = Poly<Cyc>;
/// `sum_w T_w (x) f_w` over the finite Weyl group.
pub type AhaElem = BTreeMap<AffineWeylElement, LPoly>;

#[derive(Clone, Debug)]
pub struct Aha {
    pub rd: RootDatum,
    pub v: Cyc,
    pub quadratic: Quadratic,
}

impl Aha {
    pub fn new(rd: RootDatum, v: Cyc, quadratic: Quadratic) -> Self {
        Aha { rd, v, quadratic }
    }

    /// `v = exp(pi i d / m)`.
    pub fn with_slope(rd: RootDatum, d: i64, m: i64, quadratic: Quadratic) -> Result<Self> {
        if m <= 0 {
            return Err(Error::Invalid("slope denominator must be positive".into()));
        }
        Ok(Self::new(rd, Cyc::zeta((2 * m) as u32, d), quadratic))
    }

    pub fn nvars(&self) -> usize {
        self.rd.rank
    }

    pub fn kappa(&self) -> Cyc {
        self.v.sub(&self.v.inv_checked())
    }

    pub fn lattice(&self, mu: &[i32]) -> LPoly {
        LPoly::monomial(mu.to_vec(), Cyc::rone())
    }

    pub fn scalar(&self, c: Cyc) -> LPoly {
        LPoly::constant(self.nvars(), c)
    }

    /// `alpha_i` in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Vec<i32> {
        (0..self.rd.rank).map(|j| self.rd.cartan[j][i - 1] as i32).collect()
    }

    fn reflect_weight(&self, i: usize, mu: &[i32]) -> Vec<i32> {
        let a = self.simple_root_weight(i);
        mu.iter().zip(&a).map(|(m, x)| m - mu[i - 1] * x).collect()
    }

    /// Linear action `s_i X^mu = X^{s_i mu}` (`i >= 1`).
    pub fn reflect_poly(&self, i: usize, f: &LPoly) -> LPoly {
        let mut out = LPoly::zero(self.nvars());
        for (e, c) in &f.terms {
            out.add_term(self.reflect_weight(i, e), c.clone());
        }
        out
    }

    /// Shifted action `s_i * X^mu = v^{2 mu_i} X^{s_i mu}`.
    pub fn star_poly(&self, i: usize, f: &LPoly) -> LPoly {
        let mut out = LPoly::zero(self.nvars());
        for (e, c) in &f.terms {
            out.add_term(self.reflect_weight(i, e), c.mul(&self.v_pow(2 * e[i - 1] as i64)));
        }
        out
    }

    fn v_pow(&self, k: i64) -> Cyc {
        let mut r = Cyc::rone();
        let b = if k >= 0 { self.v.clone() } else { self.v.inv_checked() };
        for _ in 0..k.abs() {
            r = r.mul(&b);
        }
        r
    }

    /// `(f - s_i f) / (1 - X^{-alpha_i})`, checked by multiplying back.
    pub fn bernstein_quotient(&self, i: usize, f: &LPoly) -> Result<LPoly> {
        let a = self.simple_root_weight(i);
        let mut out = LPoly::zero(self.nvars());
        for (e, c) in &f.terms {
            let k = e[i - 1];
            if k > 0 {
                for j in 0..k {
                    out.add_term(e.iter().zip(&a).map(|(m, x)| m - j * x).collect(), c.clone());
                }
            } else if k < 0 {
                for j in 1..=-k {
                    out.add_term(e.iter().zip(&a).map(|(m, x)| m + j * x).collect(), c.neg());
                }
            }
        }
        let denom = self.scalar(Cyc::rone()).sub(&self.lattice(&a.iter().map(|x| -x).collect::<Vec<_>>()));
        if out.mul(&denom) != f.sub(&self.reflect_poly(i, f)) {
            return Err(Error::NotDivisible("Bernstein quotient".into()));
        }
        Ok(out)
    }

    fn simple(&self, i: usize) -> AffineWeylElement {
        AffineWeylElement::simple(&self.rd, i)
    }

    fn finite_length(&self, w: &AffineWeylElement) -> usize {
        w.length(&self.rd)
    }

    pub fn elem(&self, w: AffineWeylElement, f: LPoly) -> AhaElem {
        let mut m = BTreeMap::new();
        add_poly_into(&mut m, w, f);
        m
    }

    pub fn one(&self) -> AhaElem {
        self.elem(AffineWeylElement::identity(self.rd.rank), LPoly::one(self.nvars()))
    }

    pub fn t(&self, i: usize) -> AhaElem {
        self.elem(self.simple(i), LPoly::one(self.nvars()))
    }

    pub fn poly(&self, f: LPoly) -> AhaElem {
        self.elem(AffineWeylElement::identity(self.rd.rank), f)
    }

    pub fn x(&self, mu: &[i32]) -> AhaElem {
        self.poly(self.lattice(mu))
    }

    pub fn scalar_elem(&self, c: Cyc) -> AhaElem {
        self.poly(self.scalar(c))
    }

    /// `T_i T_w (x) f`.
    fn left_t(&self, i: usize, w: &AffineWeylElement, f: &LPoly) -> AhaElem {
        let s = self.simple(i);
        let sw = s.mul(w);
        let mut out = BTreeMap::new();
        if self.finite_length(&sw) > self.finite_length(w) {
            add_poly_into(&mut out, sw, f.clone());
            return out;
        }
        match self.quadratic {
            Quadratic::Bernstein => {
                // T_s T_s = kappa T_s + 1
                add_poly_into(&mut out, w.clone(), f.mul(&self.scalar(self.kappa())));
                add_poly_into(&mut out, sw, f.clone());
            }
            Quadratic::Split => {
                add_poly_into(&mut out, sw, f.mul(&self.scalar(self.v.mul(&self.v))));
            }
        }
        out
    }

    /// `f T_{i1} ... T_{ik}` in normal form.
    pub fn push(&self, f: &LPoly, word: &[usize]) -> AhaElem {
        let Some((&i, rest)) = word.split_first() else {
            return self.poly(f.clone());
        };
        let mut out = BTreeMap::new();
        match self.quadratic {
            Quadratic::Bernstein => {
                // f T_s = T_s (s f) + kappa (f - s f) / (1 - X^{-a})
                for (w, g) in self.push(&self.reflect_poly(i, f), rest) {
                    for (k, h) in self.left_t(i, &w, &g) {
                        add_poly_into(&mut out, k, h);
                    }
                }
                let d = self.bernstein_quotient(i, f).expect("Bernstein quotient is a Laurent polynomial").mul(&self.scalar(self.kappa()));
                if !d.ris_zero() {
                    for (w, g) in self.push(&d, rest) {
                        add_poly_into(&mut out, w, g);
                    }
                }
            }
            Quadratic::Split => {
                for (w, g) in self.push(&self.star_poly(i, f), rest) {
                    for (k, h) in self.left_t(i, &w, &g) {
                        add_poly_into(&mut out, k, h);
                    }
                }
            }
        }
        out
    }

    fn mul_by(&self, a: &AhaElem, b: &AhaElem, largest: bool) -> AhaElem {
        let mut out = BTreeMap::new();
        for (w, f) in a {
            let wword = w.reduced_word(&self.rd);
            for (w2, g) in b {
                let word = w2.reduced_word_by(&self.rd, largest);
                for (u, h) in self.push(f, &word) {
                    let mut acc = self.elem(u, h.mul(g));
                    for &i in wword.iter().rev() {
                        let mut next = BTreeMap::new();
                        for (k, p) in &acc {
                            for (k2, p2) in self.left_t(i, k, p) {
                                add_poly_into(&mut next, k2, p2);
                            }
                        }
                        acc = next;
                    }
                    for (k, p) in acc {
                        add_poly_into(&mut out, k, p);
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &AhaElem, b: &AhaElem) -> AhaElem {
        self.mul_by(a, b, false)
    }

    pub fn mul_alt(&self, a: &AhaElem, b: &AhaElem) -> AhaElem {
        self.mul_by(a, b, true)
    }

    pub fn add(&self, a: &AhaElem, b: &AhaElem) -> AhaElem {
        let mut out = a.clone();
        for (w, f) in b {
            add_poly_into(&mut out, w.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, a: &AhaElem, b: &AhaElem) -> AhaElem {
        let mut out = a.clone();
        for (w, f) in b {
            add_poly_into(&mut out, w.clone(), f.neg());
        }
        out
    }

    pub fn random_elem<G: Rng>(&self, rng: &mut G, terms: usize, spread: i32) -> AhaElem {
        let r = self.rd.rank;
        let weyl = self.rd.weyl_group();
        let mut out = BTreeMap::new();
        for _ in 0..terms {
            let w = weyl[rng.gen_range(0..weyl.len())].clone();
            let mut f = LPoly::zero(r);
            for _ in 0..2 {
                let e: Vec<i32> = (0..r).map(|_| rng.gen_range(-spread..=spread)).collect();
                let c = Cyc::rational(q(rng.gen_range(-2..=2))).add(&self.v.mul(&Cyc::rational(q(rng.gen_range(-1..=1)))));
                f.add_term(e, c);
            }
            add_poly_into(&mut out, w, f);
        }
        out
    }
}

trait CheckedInverse {
    fn inv_checked(&self) -> Self;
}

impl CheckedInverse for Cyc {
    fn inv_checked(&self) -> Self {
        crate::poly::Field::inv(self)
    }
}

// ---------------------------------------------------------------------------
// SL2 relations

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

/// The four relations `s1^2 = 1, s0^2 = 1, s1 x + x s1 = u, s0 x + (x - 1) s0 = -u` in the rank-one dDAHA with parameter `u`.
pub fn sl2_ddaha_relations(u: &Q) -> Result<Vec<IdentityCheck>> {
    let rd = RootDatum::new(&crate::rootdata::CartanType::A, 1)?;
    let h = Ddaha::with_parameter(rd.clone(), u.clone());
    let s0 = h.group(AffineWeylElement::simple(&rd, 0));
    let s1 = h.group(AffineWeylElement::simple(&rd, 1));
    let x = h.poly(h.x(0));
    let one = h.one();
    let xm1 = h.sub(&x, &one);
    let mut out = Vec::new();
    let mut push = |name: &str, lhs: DdahaElem, rhs: DdahaElem| out.push(IdentityCheck { name: name.into(), passed: lhs == rhs });
    push("s1^2 = 1", h.mul(&s1, &s1), one.clone());
    push("s0^2 = 1", h.mul(&s0, &s0), one.clone());
    push("s1 x + x s1 = u", h.add(&h.mul(&s1, &x), &h.mul(&x, &s1)), h.scale(&one, u));
    push("s0 x + (x - 1) s0 = -u", h.add(&h.mul(&s0, &x), &h.mul(&xm1, &s0)), h.scale(&one, &-u.clone()));
    Ok(out)
}

/// `T_1^2` and `T_1 X^{-1} T_1 = X` in the rank-one AHA with `v = exp(pi i u)`.
pub fn sl2_aha_relations(u: &Q, quadratic: Quadratic) -> Result<Vec<IdentityCheck>> {
    let rd = RootDatum::new(&crate::rootdata::CartanType::A, 1)?;
    let (p, qd) = (u.numer().clone(), u.denom().clone());
    let p: i64 = p.try_into().map_err(|_| Error::Invalid("u too large".into()))?;
    let qd: i64 = qd.try_into().map_err(|_| Error::Invalid("u too large".into()))?;
    let k = Aha::with_slope(rd, p, qd, quadratic)?;
    let t = k.t(1);
    let x = k.x(&[1]);
    let xi = k.x(&[-1]);
    let tt = k.mul(&t, &t);
    let quad_rhs = match quadratic {
        Quadratic::Split => k.scalar_elem(k.v.mul(&k.v)),
        Quadratic::Bernstein => k.add(&k.mul(&k.scalar_elem(k.kappa()), &t), &k.one()),
    };
    let name = match quadratic {
        Quadratic::Split => "T1^2 = v^2",
        Quadratic::Bernstein => "T1^2 = (v - 1/v) T1 + 1",
    };
    Ok(vec![
        IdentityCheck { name: name.into(), passed: tt == quad_rhs },
        IdentityCheck { name: "T1 X^-1 T1 = X".into(), passed: k.mul(&k.mul(&t, &xi), &t) == x },
    ])
}

// ---------------------------------------------------------------------------
// Weight modules of the graded subalgebra <x, s1>

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightModuleSl2 {
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub lambda: Q,
    pub n: usize,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub u: Q,
    #[serde(skip)]
    pub x: QMat,
    #[serde(skip)]
    pub s1: QMat,
}

/// `<x, s1> / <x, s1> (x - lambda)^N` on the basis `(x - lambda)^a, s1 (x - lambda)^a` for `a < N`.
pub fn ubar_weight_module(lambda: &Q, n: usize, u: &Q) -> Result<WeightModuleSl2> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let dim = 2 * n;
    let mut x = QMat::zeros(dim, dim);
    let mut s1 = QMat::zeros(dim, dim);
    for a in 0..n {
        // x p_a = p_{a+1} + lambda p_a
        x[(a, a)] = lambda.clone();
        if a + 1 < n {
            x[(a + 1, a)] = Q::one();
        }
        // x s p_a = u p_a - s p_{a+1} - lambda s p_a
        x[(a, n + a)] = u.clone();
        x[(n + a, n + a)] = -lambda.clone();
        if a + 1 < n {
            x[(n + a + 1, n + a)] = -Q::one();
        }
        s1[(n + a, a)] = Q::one();
        s1[(a, n + a)] = Q::one();
    }
    Ok(WeightModuleSl2 { lambda: lambda.clone(), n, u: u.clone(), x, s1 })
}

impl WeightModuleSl2 {
    /// `det(t - x)` as coefficients in increasing degree.
    pub fn char_poly(&self) -> Vec<Q> {
        let n = self.x.rows;
        // Faddeev-LeVerrier
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = QMat::zeros(n, n);
        for k in 1..=n {
            let mut next = self.x.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let tr: Q = (0..n).map(|i| self.x.mul(&m)[(i, i)].clone()).fold(Q::zero(), |a, b| a + b);
            coeffs[n - k] = -tr / q(k as i64);
        }
        coeffs
    }
}

/// Coefficients of `(t - a)^N (t - b)^N` in increasing degree.
pub fn weight_char_poly(a: &Q, b: &Q, n: usize) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for root in std::iter::repeat(a).take(n).chain(std::iter::repeat(b).take(n)) {
        let mut next = vec![Q::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        p = next;
    }
    p
}

// ---------------------------------------------------------------------------
// Dunkl representation

/// `z^zpow num(z) / (1 - z)^opow` with `num` coprime to `z` and `1 - z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFun {
    pub num: Vec<Q>,
    pub zpow: i64,
    pub opow: u32,
}

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn padd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(&mut out);
    out
}

fn pscale(a: &[Q], c: &Q) -> Vec<Q> {
    let mut out: Vec<Q> = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

fn one_minus_z_pow(k: u32) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for _ in 0..k {
        p = pmul(&p, &[Q::one(), -Q::one()]);
    }
    p
}

impl RFun {
    pub fn zero() -> Self {
        RFun { num: vec![], zpow: 0, opow: 0 }
    }

    pub fn z_pow(k: i64) -> Self {
        RFun { num: vec![Q::one()], zpow: k, opow: 0 }
    }

    /// `z^k / (1 - z)^o`.
    pub fn basis(k: i64, o: u32) -> Self {
        RFun { num: vec![Q::one()], zpow: k, opow: o }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn normalized(mut self) -> Self {
        trim(&mut self.num);
        if self.num.is_empty() {
            return Self::zero();
        }
        let lead = self.num.iter().take_while(|c| c.is_zero()).count();
        self.num.drain(..lead);
        self.zpow += lead as i64;
        // divide by (1 - z) while num(1) = 0
        while self.opow > 0 && self.num.iter().fold(Q::zero(), |a, b| a + b).is_zero() {
            // num = (1 - z) g: synthetic division by (z - 1) then negate
            let d = self.num.len() - 1;
            let mut g = vec![Q::zero(); d];
            let mut carry = Q::zero();
            for i in (1..=d).rev() {
                carry += &self.num[i];
                g[i - 1] = -carry.clone();
            }
            self.num = g;
            self.opow -= 1;
        }
        self
    }

    fn on_denominator(&self, zpow: i64, opow: u32) -> Vec<Q> {
        let shift = (self.zpow - zpow) as usize;
        let mut p = vec![Q::zero(); shift];
        p.extend(self.num.iter().cloned());
        pmul(&p, &one_minus_z_pow(opow - self.opow))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let zp = self.zpow.min(o.zpow);
        let op = self.opow.max(o.opow);
        RFun { num: padd(&self.on_denominator(zp, op), &o.on_denominator(zp, op)), zpow: zp, opow: op }.normalized()
    }

    pub fn scale(&self, c: &Q) -> Self {
        RFun { num: pscale(&self.num, c), zpow: self.zpow, opow: self.opow }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul_z(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RFun { num: self.num.clone(), zpow: self.zpow + k, opow: self.opow }
    }

    /// `f(z^{-1})`.
    pub fn s1(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let deg = self.num.len() as i64 - 1;
        let mut rev: Vec<Q> = self.num.iter().rev().cloned().collect();
        if self.opow % 2 == 1 {
            rev = pscale(&rev, &-Q::one());
        }
        RFun { num: rev, zpow: -self.zpow + self.opow as i64 - deg, opow: self.opow }.normalized()
    }

    /// `z d/dz`.
    pub fn euler(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let k = q(self.zpow);
        let o = q(self.opow as i64);
        let n = &self.num;
        let dn: Vec<Q> = n.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect();
        let one_minus_z = [Q::one(), -Q::one()];
        // z^k [k N (1 - z) + z N' (1 - z) + o z N] / (1 - z)^{o+1}
        let t1 = pscale(&pmul(n, &one_minus_z), &k);
        let mut zdn = vec![Q::zero()];
        zdn.extend(dn);
        let t2 = pmul(&zdn, &one_minus_z);
        let mut zn = vec![Q::zero()];
        zn.extend(n.iter().cloned());
        let t3 = pscale(&zn, &o);
        RFun { num: padd(&padd(&t1, &t2), &t3), zpow: self.zpow, opow: self.opow + 1 }.normalized()
    }

    /// Multiplication by `(1 - z^{-1})^{-1} = -z / (1 - z)`.
    pub fn mul_inv_one_minus_zinv(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RFun { num: pscale(&self.num, &-Q::one()), zpow: self.zpow + 1, opow: self.opow + 1 }.normalized()
    }

    pub fn eval(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut p = num_complex::Complex64::new(0.0, 0.0);
        for c in self.num.iter().rev() {
            p = p * z + crate::rational::to_f64(c);
        }
        p * z.powi(self.zpow as i32) / (1.0 - z).powi(self.opow as i32)
    }
}

/// Operators of Cherednik's Dunkl representation on `Q[z^{+-1}, (1 - z)^{-1}]`.
#[derive(Clone, Debug)]
pub struct DunklRep {
    pub u: Q,
}

impl DunklRep {
    pub fn new(u: Q) -> Self {
        DunklRep { u }
    }

    pub fn s1(&self, f: &RFun) -> RFun {
        f.s1()
    }

    /// `s0 = (s0 s1) s1 = z s1`.
    pub fn s0(&self, f: &RFun) -> RFun {
        f.s1().mul_z(1)
    }

    pub fn z(&self, f: &RFun) -> RFun {
        f.mul_z(1)
    }

    /// `D = z d/dz - u (1 - z^{-1})^{-1} (1 - s1) + u/2`.
    pub fn d(&self, f: &RFun) -> RFun {
        let a = f.euler();
        let b = f.sub(&f.s1()).mul_inv_one_minus_zinv().scale(&self.u);
        a.sub(&b).add(&f.scale(&(self.u.clone() / q(2))))
    }

    /// The spanning set `z^k (|k| <= 8)` and `z^k / (1 - z) (|k| <= 4)`.
    pub fn test_functions() -> Vec<RFun> {
        (-8..=8).map(RFun::z_pow).chain((-4..=4).map(|k| RFun::basis(k, 1))).collect()
    }

    /// The four relations as operator identities on the spanning set.
    pub fn check_relations(&self) -> Vec<IdentityCheck> {
        let fs = Self::test_functions();
        let u = &self.u;
        let rel = |name: &str, f: &dyn Fn(&RFun) -> RFun| IdentityCheck { name: name.into(), passed: fs.iter().all(|g| f(g).is_zero()) };
        vec![
            rel("s1^2 = 1", &|g| self.s1(&self.s1(g)).sub(g)),
            rel("s0^2 = 1", &|g| self.s0(&self.s0(g)).sub(g)),
            rel("s1 x + x s1 = u", &|g| self.s1(&self.d(g)).add(&self.d(&self.s1(g))).sub(&g.scale(u))),
            rel("s0 x + (x - 1) s0 = -u", &|g| {
                let s0g = self.s0(g);
                self.s0(&self.d(g)).add(&self.d(&s0g)).sub(&s0g).add(&g.scale(u))
            }),
        ]
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::rootdata::CartanType;

    fn a(r: usize) -> RootDatum {
        RootDatum::new(&CartanType::A, r).unwrap()
    }

    #[test]
    fn sl2_cross_relation_example() {
        let rd = a(1);
        let h = Ddaha::with_parameter(rd.clone(), qr(-1, 2));
        let s1 = h.group(AffineWeylElement::simple(&rd, 1));
        let x = h.poly(h.x(0));
        let lhs = h.mul(&x, &s1);
        let rhs = h.add(&h.scale(&h.mul(&s1, &x), &-Q::one()), &h.scale(&h.one(), &qr(-1, 2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_presentations() {
        for u in [qr(-1, 2), qr(1, 3), Q::zero()] {
            assert!(all_passed(&sl2_ddaha_relations(&u).unwrap()));
            assert!(all_passed(&sl2_aha_relations(&u, Quadratic::Bernstein).unwrap()));
            assert!(all_passed(&sl2_aha_relations(&u, Quadratic::Split).unwrap()));
        }
    }

    #[test]
    fn ubar_small() {
        let m = ubar_weight_module(&qr(-1, 4), 1, &qr(-1, 2)).unwrap();
        assert_eq!(m.x, QMat::from_rows(&[vec![qr(-1, 4), qr(-1, 2)], vec![Q::zero(), qr(1, 4)]]));
        for n in 1..4 {
            let m = ubar_weight_module(&qr(3, 4), n, &qr(1, 3)).unwrap();
            assert_eq!(m.s1.mul(&m.s1), QMat::identity(2 * n));
            assert_eq!(m.s1.mul(&m.x).add(&m.x.mul(&m.s1)), QMat::identity(2 * n).scale(&qr(1, 3)));
            assert_eq!(m.char_poly(), weight_char_poly(&qr(3, 4), &qr(-3, 4), n));
        }
    }

    #[test]
    fn rfun_arithmetic() {
        let f = RFun::basis(2, 1);
        assert_eq!(f.s1().s1(), f);
        assert_eq!(f.sub(&f), RFun::zero());
        // 1/(1-z) - z/(1-z) = 1
        assert_eq!(RFun::basis(0, 1).sub(&RFun::basis(1, 1)), RFun::z_pow(0));
        assert_eq!(RFun::z_pow(3).euler(), RFun::z_pow(3).scale(&q(3)));
    }

    #[test]
    fn dunkl_examples() {
        let u = qr(1, 3);
        let d = DunklRep::new(u.clone());
        assert_eq!(d.d(&RFun::z_pow(0)), RFun::z_pow(0).scale(&qr(1, 6)));
        let z = RFun::z_pow(1);
        assert_eq!(d.s1(&d.d(&z)).add(&d.d(&d.s1(&z))), z.scale(&u));
        for u in [qr(-1, 2), qr(1, 3), Q::zero()] {
            assert!(all_passed(&DunklRep::new(u).check_relations()));
        }
    }
}
