//! Nilpotent representations of the cyclic quiver, their rank invariants and
//! multisegment classification, and the symplectic (anti-self-adjoint) variant
//! with its Lagrangian splitting.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, QMat};
use crate::rational::{q, Q};

pub const DEFAULT_ORBIT_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DimVector {
    pub m: usize,
    pub beta: Vec<usize>,
}

impl DimVector {
    pub fn new(beta: Vec<usize>) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        Ok(DimVector { m: beta.len(), beta })
    }

    /// Parses `"m:b0,b1,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let (m, rest) = s.split_once(':').ok_or_else(|| Error::Parse { pos: 0, msg: "expected m:b0,b1,...".into() })?;
        let m: usize = m.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad modulus {m:?}") })?;
        let beta: Vec<usize> = rest
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .enumerate()
            .map(|(k, x)| x.trim().parse().map_err(|_| Error::Parse { pos: k, msg: format!("bad entry {x:?}") }))
            .collect::<Result<_>>()?;
        if beta.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: beta.len() });
        }
        Self::new(beta)
    }

    pub fn total(&self) -> usize {
        self.beta.iter().sum()
    }

    pub fn get(&self, i: i64) -> usize {
        self.beta[i.rem_euclid(self.m as i64) as usize]
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut o = vec![0; self.m + 1];
        for i in 0..self.m {
            o[i + 1] = o[i] + self.beta[i];
        }
        o
    }

    pub fn is_self_dual(&self) -> bool {
        (0..self.m as i64).all(|i| self.get(i) == self.get(-i))
    }
}

fn inv_residue(m: usize, i: usize) -> usize {
    (m - i % m) % m
}

/// `x_i : V_i -> V_{i+1}` stored as a `beta_{i+1} x beta_i` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilRep {
    pub beta: DimVector,
    pub x: Vec<QMat>,
}

fn block_matrix(beta: &DimVector, x: &[QMat]) -> QMat {
    let n = beta.total();
    let off = beta.offsets();
    let m = beta.m;
    let mut t = QMat::zeros(n, n);
    for i in 0..m {
        let j = (i + 1) % m;
        for a in 0..beta.beta[j] {
            for b in 0..beta.beta[i] {
                let v = &x[i][(a, b)];
                if !v.is_zero() {
                    t.data[(off[j] + a) * n + off[i] + b] += v;
                }
            }
        }
    }
    t
}

fn check_shapes(beta: &DimVector, x: &[QMat]) -> Result<()> {
    if x.len() != beta.m {
        return Err(Error::DimensionMismatch { expected: beta.m, got: x.len() });
    }
    for (i, xi) in x.iter().enumerate() {
        let j = (i + 1) % beta.m;
        if xi.rows != beta.beta[j] || xi.cols != beta.beta[i] {
            return Err(Error::Invalid(format!("x_{i} has shape {}x{}, expected {}x{}", xi.rows, xi.cols, beta.beta[j], beta.beta[i])));
        }
    }
    Ok(())
}

impl NilRep {
    pub fn new(beta: DimVector, x: Vec<QMat>) -> Result<Self> {
        check_shapes(&beta, &x)?;
        Ok(NilRep { beta, x })
    }

    pub fn zero(beta: DimVector) -> Self {
        let m = beta.m;
        let x = (0..m).map(|i| QMat::zeros(beta.beta[(i + 1) % m], beta.beta[i])).collect();
        NilRep { beta, x }
    }

    /// The total endomorphism `sum x_i` of `V`.
    pub fn total(&self) -> QMat {
        block_matrix(&self.beta, &self.x)
    }

    /// `x_{i+l-1} ... x_i`.
    pub fn composite(&self, i: usize, l: usize) -> QMat {
        let m = self.beta.m;
        let mut acc = QMat::identity(self.beta.beta[i % m]);
        for k in 0..l {
            acc = self.x[(i + k) % m].mul(&acc);
        }
        acc
    }

    /// Conjugate by `g = (g_i)`: `x_i -> g_{i+1} x_i g_i^{-1}`.
    pub fn conjugate(&self, g: &[QMat]) -> Result<NilRep> {
        let m = self.beta.m;
        let inv: Vec<QMat> = g
            .iter()
            .map(|gi| gi.inverse().ok_or_else(|| Error::Invalid("conjugating element is singular".into())))
            .collect::<Result<_>>()?;
        let x = (0..m).map(|i| g[(i + 1) % m].mul(&self.x[i]).mul(&inv[i])).collect();
        Ok(NilRep { beta: self.beta.clone(), x })
    }
}

pub fn is_nilpotent(rep: &NilRep) -> bool {
    let n = rep.beta.total();
    n == 0 || rep.total().pow(n as u32).is_zero()
}

/// `table[i][l-1] = rank(x_{i+l-1} ... x_i)` for `1 <= l <= |beta|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RankInvariant {
    pub m: usize,
    pub table: Vec<Vec<usize>>,
}

impl RankInvariant {
    pub fn get(&self, i: usize, l: usize) -> usize {
        if l == 0 || l > self.table.first().map_or(0, |r| r.len()) {
            0
        } else {
            self.table[i % self.m][l - 1]
        }
    }
}

pub fn rank_invariants(rep: &NilRep) -> Result<RankInvariant> {
    if !is_nilpotent(rep) {
        return Err(Error::Precondition("representation is not nilpotent".into()));
    }
    let n = rep.beta.total();
    let m = rep.beta.m;
    let table = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(n);
            let mut acc = QMat::identity(rep.beta.beta[i]);
            for l in 1..=n {
                acc = rep.x[(i + l - 1) % m].mul(&acc);
                row.push(acc.rank());
            }
            row
        })
        .collect();
    Ok(RankInvariant { m, table })
}

pub fn same_orbit(a: &NilRep, b: &NilRep) -> Result<bool> {
    if a.beta != b.beta {
        return Err(Error::Invalid("dimension vectors differ".into()));
    }
    Ok(rank_invariants(a)? == rank_invariants(b)?)
}

/// Multiset of segments `(start, length)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Multisegment {
    pub m: usize,
    pub segments: BTreeMap<(usize, usize), usize>,
}

impl Multisegment {
    pub fn dim_vector(&self) -> DimVector {
        let mut b = vec![0; self.m];
        for (&(i, l), &c) in &self.segments {
            for k in 0..l {
                b[(i + k) % self.m] += c;
            }
        }
        DimVector { m: self.m, beta: b }
    }

    /// Closed-form rank table: `r(j, L) = sum over segments of #{k <= l-1-L : i + k = j mod m}`.
    pub fn rank_table(&self) -> RankInvariant {
        let n = self.dim_vector().total();
        let m = self.m;
        let table = (0..m)
            .map(|j| {
                (1..=n)
                    .map(|big_l| {
                        self.segments
                            .iter()
                            .map(|(&(i, l), &c)| if l > big_l { c * (0..l - big_l).filter(|k| (i + k) % m == j).count() } else { 0 })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        RankInvariant { m, table }
    }

    /// Block shift matrices: each segment is a string `e_0 -> e_1 -> ... -> e_{l-1} -> 0`.
    pub fn canonical_rep(&self) -> NilRep {
        let beta = self.dim_vector();
        let m = self.m;
        let mut next = vec![0usize; m];
        let mut x: Vec<QMat> = (0..m).map(|i| QMat::zeros(beta.beta[(i + 1) % m], beta.beta[i])).collect();
        for (&(i, l), &c) in &self.segments {
            for _ in 0..c {
                let mut prev: Option<(usize, usize)> = None;
                for k in 0..l {
                    let r = (i + k) % m;
                    let idx = next[r];
                    next[r] += 1;
                    if let Some((pr, pidx)) = prev {
                        x[pr].data[idx * beta.beta[pr] + pidx] = Q::one();
                    }
                    prev = Some((r, idx));
                }
            }
        }
        NilRep { beta, x }
    }
}

pub fn enumerate_orbits(beta: &DimVector, bound: usize) -> Result<Vec<Multisegment>> {
    let n = beta.total();
    if n > bound {
        return Err(Error::BoundExceeded(format!("|beta| = {n} exceeds the bound {bound}")));
    }
    let m = beta.m;
    let segs: Vec<(usize, usize)> = (0..m).flat_map(|i| (1..=n).map(move |l| (i, l))).collect();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    fn rec(
        k: usize,
        segs: &[(usize, usize)],
        rem: &mut Vec<usize>,
        m: usize,
        cur: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Vec<Multisegment>,
    ) {
        if rem.iter().all(|&r| r == 0) {
            out.push(Multisegment { m, segments: cur.clone() });
            return;
        }
        if k == segs.len() {
            return;
        }
        let (i, l) = segs[k];
        let mut c = 0;
        loop {
            if c > 0 {
                cur.insert((i, l), c);
            }
            rec(k + 1, segs, rem, m, cur, out);
            // add one more copy if it fits
            let fits = (0..l).all(|t| {
                let r = (i + t) % m;
                let need = (0..l).filter(|s| (i + s) % m == r).count();
                rem[r] >= need
            });
            if !fits {
                break;
            }
            for t in 0..l {
                rem[(i + t) % m] -= 1;
            }
            c += 1;
        }
        for t in 0..l {
            rem[(i + t) % m] += c;
        }
        cur.remove(&(i, l));
    }
    let mut rem = beta.beta.clone();
    rec(0, &segs, &mut rem, m, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> QMat {
    loop {
        let rows: Vec<Vec<Q>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
        let g = QMat::from_rows(&rows);
        if n == 0 || !g.det().is_zero() {
            return if n == 0 { QMat::zeros(0, 0) } else { g };
        }
    }
}

pub fn random_conjugate<R: Rng>(rep: &NilRep, rng: &mut R) -> NilRep {
    let g: Vec<QMat> = rep.beta.beta.iter().map(|&b| random_invertible(b, rng)).collect();
    rep.conjugate(&g).expect("invertible")
}

/// Random nilpotent representation: a random multisegment's canonical form, randomly conjugated.
pub fn random_nilrep<R: Rng>(beta: &DimVector, rng: &mut R) -> NilRep {
    let orbits = enumerate_orbits(beta, usize::MAX).expect("no bound");
    let ms = &orbits[rng.gen_range(0..orbits.len())];
    random_conjugate(&ms.canonical_rep(), rng)
}

/// Symplectic `V = (+) V_i` over `Z/n` (`n` even) with `V_i` paired with `V_{-i}` and
/// `x` anti-self-adjoint. `omega[i]` is the `beta_i x beta_{-i}` block of the Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticNilRep {
    pub beta: DimVector,
    pub omega: Vec<QMat>,
    pub x: Vec<QMat>,
}

impl SymplecticNilRep {
    pub fn new(beta: DimVector, omega: Vec<QMat>, x: Vec<QMat>) -> Result<Self> {
        check_shapes(&beta, &x)?;
        let r = SymplecticNilRep { beta, omega, x };
        r.validate()?;
        Ok(r)
    }

    /// Standard form: identity pairings between `V_i` and `V_{-i}`, the standard symplectic block on self-paired `V_i`.
    pub fn standard_form(beta: &DimVector) -> Result<Vec<QMat>> {
        let m = beta.m;
        if m % 2 != 0 {
            return Err(Error::Invalid("the modulus must be even".into()));
        }
        if !beta.is_self_dual() {
            return Err(Error::Invalid("beta must satisfy beta_i = beta_{-i}".into()));
        }
        let mut om = Vec::with_capacity(m);
        for i in 0..m {
            let j = inv_residue(m, i);
            let b = beta.beta[i];
            if i == j {
                if b % 2 != 0 {
                    return Err(Error::Invalid(format!("self-paired V_{i} must have even dimension")));
                }
                let h = b / 2;
                let mut w = QMat::zeros(b, b);
                for a in 0..h {
                    w.data[a * b + h + a] = Q::one();
                    w.data[(h + a) * b + a] = -Q::one();
                }
                om.push(w);
            } else if i < j {
                om.push(QMat::identity(b));
            } else {
                om.push(QMat::identity(b).scale(&-Q::one()));
            }
        }
        Ok(om)
    }

    pub fn gram(&self) -> QMat {
        let n = self.beta.total();
        let off = self.beta.offsets();
        let m = self.beta.m;
        let mut g = QMat::zeros(n, n);
        for i in 0..m {
            let j = inv_residue(m, i);
            for a in 0..self.beta.beta[i] {
                for b in 0..self.beta.beta[j] {
                    g.data[(off[i] + a) * n + off[j] + b] = self.omega[i][(a, b)].clone();
                }
            }
        }
        g
    }

    pub fn total(&self) -> QMat {
        block_matrix(&self.beta, &self.x)
    }

    pub fn as_nilrep(&self) -> NilRep {
        NilRep { beta: self.beta.clone(), x: self.x.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.beta.m;
        if m % 2 != 0 {
            return Err(Error::Invalid("the modulus must be even".into()));
        }
        if !self.beta.is_self_dual() {
            return Err(Error::Invalid("beta must satisfy beta_i = beta_{-i}".into()));
        }
        if self.omega.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: self.omega.len() });
        }
        for i in 0..m {
            let j = inv_residue(m, i);
            if self.omega[i].rows != self.beta.beta[i] || self.omega[i].cols != self.beta.beta[j] {
                return Err(Error::Invalid(format!("omega_{i} has the wrong shape")));
            }
        }
        let g = self.gram();
        if g.transpose() != g.scale(&-Q::one()) {
            return Err(Error::Invalid("form is not antisymmetric".into()));
        }
        if self.beta.total() > 0 && g.det().is_zero() {
            return Err(Error::Invalid("form is degenerate".into()));
        }
        let x = self.total();
        if !x.transpose().mul(&g).add(&g.mul(&x)).is_zero() {
            return Err(Error::Invalid("x is not anti-self-adjoint".into()));
        }
        if !is_nilpotent(&self.as_nilrep()) {
            return Err(Error::Invalid("x is not nilpotent".into()));
        }
        Ok(())
    }

    /// Conjugate by a graded element `g` of the symplectic group (total matrix form).
    pub fn conjugate_total(&self, g: &QMat) -> Result<SymplecticNilRep> {
        let gi = g.inverse().ok_or_else(|| Error::Invalid("singular".into()))?;
        let xt = g.mul(&self.total()).mul(&gi);
        let off = self.beta.offsets();
        let m = self.beta.m;
        let x = (0..m)
            .map(|i| {
                let j = (i + 1) % m;
                let rows: Vec<usize> = (off[j]..off[j + 1]).collect();
                let cols: Vec<usize> = (off[i]..off[i + 1]).collect();
                xt.submatrix(&rows, &cols)
            })
            .collect();
        Ok(SymplecticNilRep { beta: self.beta.clone(), omega: self.omega.clone(), x })
    }
}

/// Random graded symplectic group element for the given form.
pub fn random_graded_sp<R: Rng>(beta: &DimVector, omega: &[QMat], rng: &mut R) -> QMat {
    let m = beta.m;
    let n = beta.total();
    let off = beta.offsets();
    let mut g = QMat::zeros(n, n);
    let put = |g: &mut QMat, i: usize, blk: &QMat| {
        for a in 0..blk.rows {
            for b in 0..blk.cols {
                g.data[(off[i] + a) * n + off[i] + b] = blk[(a, b)].clone();
            }
        }
    };
    for i in 0..m {
        let j = inv_residue(m, i);
        let b = beta.beta[i];
        if i < j {
            let gi = random_invertible(b, rng);
            // g_{-i} = w_i^{-1} g_i^{-T} w_i
            let w = &omega[i];
            let gj = w.inverse().unwrap().mul(&gi.inverse().unwrap().transpose()).mul(w);
            put(&mut g, i, &gi);
            put(&mut g, j, &gj);
        } else if i == j {
            let w = &omega[i];
            let mut acc = QMat::identity(b);
            for _ in 0..3 {
                if b == 0 {
                    break;
                }
                let u: Vec<Q> = (0..b).map(|_| q(rng.gen_range(-2..=2))).collect();
                let c = q(rng.gen_range(-2..=2));
                let uw: Vec<Q> = (0..b).map(|k| (0..b).fold(Q::zero(), |s, a| s + &u[a] * &w[(a, k)])).collect();
                let mut t = QMat::identity(b);
                for a in 0..b {
                    for k in 0..b {
                        t.data[a * b + k] += &c * &u[a] * &uw[k];
                    }
                }
                acc = t.mul(&acc);
            }
            put(&mut g, i, &acc);
        }
    }
    g
}

/// Random nilpotent anti-self-adjoint representation: `x = Omega^{-1} S` with `S` sparse symmetric
/// supported on degrees `(a, j)` with `a + j = -1`, conjugated by a random graded symplectic element.
pub fn random_symplectic_nilrep<R: Rng>(beta: &DimVector, rng: &mut R) -> Result<SymplecticNilRep> {
    let omega = SymplecticNilRep::standard_form(beta)?;
    let m = beta.m;
    let n = beta.total();
    let off = beta.offsets();
    let deg: Vec<usize> = (0..m).flat_map(|i| std::iter::repeat(i).take(beta.beta[i])).collect();
    let proto = SymplecticNilRep { beta: beta.clone(), omega: omega.clone(), x: NilRep::zero(beta.clone()).x };
    let gram = proto.gram();
    let ginv = if n > 0 { gram.inverse().unwrap() } else { QMat::zeros(0, 0) };
    for attempt in 0..10_000 {
        let density = 0.15 + 0.6 * ((attempt % 7) as f64 / 7.0);
        let mut s = QMat::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                if (deg[a] + deg[b] + 1) % m == 0 && rng.gen_bool(density) {
                    let v = q(rng.gen_range(-2..=2));
                    s.data[a * n + b] = v.clone();
                    s.data[b * n + a] = v;
                }
            }
        }
        let xt = ginv.mul(&s);
        let x: Vec<QMat> = (0..m)
            .map(|i| {
                let j = (i + 1) % m;
                let rows: Vec<usize> = (off[j]..off[j + 1]).collect();
                let cols: Vec<usize> = (off[i]..off[i + 1]).collect();
                xt.submatrix(&rows, &cols)
            })
            .collect();
        let rep = SymplecticNilRep { beta: beta.clone(), omega: omega.clone(), x };
        if n == 0 || rep.total().pow(n as u32).is_zero() {
            let g = random_graded_sp(beta, &omega, rng);
            let out = rep.conjugate_total(&g)?;
            out.validate()?;
            return Ok(out);
        }
    }
    Err(Error::Numerical("failed to sample a nilpotent representation".into()))
}

/// `V = U (+) U'` with `U` Lagrangian and `x`-stable and `U'` an `x`-stable isotropic complement
/// paired perfectly with `U`. Vectors are homogeneous, in total coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianSplitting {
    pub u: Vec<Vec<Q>>,
    pub complement: Vec<Vec<Q>>,
    pub u_degrees: Vec<usize>,
}

impl LagrangianSplitting {
    pub fn graded_dim(&self, m: usize) -> Vec<usize> {
        let mut d = vec![0; m];
        for &k in &self.u_degrees {
            d[k] += 1;
        }
        d
    }
}

fn form(g: &QMat, u: &[Q], v: &[Q]) -> Q {
    dot(u, &g.mul_vec(v))
}

pub fn lagrangian_splitting(rep: &SymplecticNilRep) -> Result<LagrangianSplitting> {
    rep.validate()?;
    let m = rep.beta.m;
    let n = rep.beta.total();
    let off = rep.beta.offsets();
    let g = rep.gram();
    let x = rep.total();
    let degree_of = |v: &[Q]| -> usize { (0..m).find(|&i| (off[i]..off[i + 1]).any(|k| !v[k].is_zero())).unwrap() };
    // graded basis of the remaining nondegenerate subspace
    let mut s: Vec<Vec<Vec<Q>>> = (0..m)
        .map(|i| {
            (off[i]..off[i + 1])
                .map(|k| {
                    let mut e = vec![Q::zero(); n];
                    e[k] = Q::one();
                    e
                })
                .collect()
        })
        .collect();
    let mut u = Vec::new();
    let mut comp = Vec::new();
    let mut u_degrees = Vec::new();
    while s.iter().any(|b| !b.is_empty()) {
        // longest string among homogeneous basis vectors
        let mut best: Option<(usize, Vec<Q>)> = None;
        for b in s.iter().flatten() {
            let mut len = 0;
            let mut v = b.clone();
            while v.iter().any(|c| !c.is_zero()) {
                len += 1;
                v = x.mul_vec(&v);
            }
            if best.as_ref().map_or(true, |(l, _)| len > *l) {
                best = Some((len, b.clone()));
            }
        }
        let (k, w) = best.unwrap();
        let mut string_w = vec![w.clone()];
        for _ in 1..k {
            let nxt = x.mul_vec(string_w.last().unwrap());
            string_w.push(nxt);
        }
        let top = string_w.last().unwrap().clone();
        let target = inv_residue(m, degree_of(&top));
        let v = s[target]
            .iter()
            .find(|b| !form(&g, &top, b).is_zero())
            .cloned()
            .ok_or_else(|| Error::Numerical("form degenerate on the remaining subspace".into()))?;
        let mut string_v = vec![v];
        for _ in 1..k {
            let nxt = x.mul_vec(string_v.last().unwrap());
            string_v.push(nxt);
        }
        for z in &string_w {
            u_degrees.push(degree_of(z));
        }
        u.extend(string_w.iter().cloned());
        comp.extend(string_v.iter().cloned());
        let block: Vec<Vec<Q>> = string_w.iter().chain(&string_v).cloned().collect();
        for basis in s.iter_mut() {
            if basis.is_empty() {
                continue;
            }
            let rows: Vec<Vec<Q>> = block.iter().map(|z| basis.iter().map(|b| form(&g, b, z)).collect()).collect();
            let ns = QMat::from_rows(&rows).nullspace();
            *basis = ns
                .iter()
                .map(|c| {
                    let mut acc = vec![Q::zero(); n];
                    for (cb, b) in c.iter().zip(basis.iter()) {
                        if !cb.is_zero() {
                            for (a, bb) in acc.iter_mut().zip(b) {
                                *a += cb * bb;
                            }
                        }
                    }
                    acc
                })
                .collect();
        }
    }
    Ok(LagrangianSplitting { u, complement: comp, u_degrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub lagrangian: bool,
    pub x_stable: bool,
    pub perfect_pairing: bool,
    pub complement_isotropic: bool,
    pub complement_x_stable: bool,
}

impl SplittingReport {
    pub fn ok(&self) -> bool {
        self.lagrangian && self.x_stable && self.perfect_pairing && self.complement_isotropic && self.complement_x_stable
    }
}

pub fn verify_splitting(rep: &SymplecticNilRep, sp: &LagrangianSplitting) -> SplittingReport {
    let n = rep.beta.total();
    let g = rep.gram();
    let x = rep.total();
    let iso = |vs: &[Vec<Q>]| vs.iter().all(|a| vs.iter().all(|b| form(&g, a, b).is_zero()));
    let stable = |vs: &[Vec<Q>]| {
        let d = crate::linalg::span_dim(vs, n);
        vs.iter().all(|v| {
            let mut w = vs.to_vec();
            w.push(x.mul_vec(v));
            crate::linalg::span_dim(&w, n) == d
        })
    };
    let lagrangian = 2 * crate::linalg::span_dim(&sp.u, n) == n && iso(&sp.u);
    let pairing: Vec<Vec<Q>> = sp.u.iter().map(|a| sp.complement.iter().map(|b| form(&g, a, b)).collect()).collect();
    let perfect_pairing = sp.u.len() == sp.complement.len() && (sp.u.is_empty() || !QMat::from_rows(&pairing).det().is_zero());
    SplittingReport {
        lagrangian,
        x_stable: stable(&sp.u),
        perfect_pairing,
        complement_isotropic: iso(&sp.complement),
        complement_x_stable: stable(&sp.complement),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m1(v: i64) -> QMat {
        QMat::from_i64(&[vec![v]])
    }

    #[test]
    fn nilpotency_examples() {
        let b = DimVector::new(vec![1, 1]).unwrap();
        assert!(is_nilpotent(&NilRep::zero(b.clone())));
        assert!(!is_nilpotent(&NilRep::new(b.clone(), vec![m1(1), m1(1)]).unwrap()));
        let r = NilRep::new(b, vec![m1(1), m1(0)]).unwrap();
        assert!(is_nilpotent(&r));
        let t = rank_invariants(&r).unwrap();
        assert_eq!(t.get(0, 1), 1);
        assert_eq!(t.get(1, 1), 0);
        assert_eq!(t.get(0, 2), 0);
    }

    #[test]
    fn orbit_counts() {
        let c = |b: Vec<usize>| enumerate_orbits(&DimVector::new(b).unwrap(), 12).unwrap().len();
        assert_eq!(c(vec![1, 0]), 1);
        assert_eq!(c(vec![1, 1]), 3);
        assert_eq!(c(vec![2, 0]), 1);
        assert!(enumerate_orbits(&DimVector::new(vec![7, 7]).unwrap(), 12).is_err());
    }

    #[test]
    fn canonical_reps_match_closed_form() {
        for b in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 1, 1], vec![2, 1, 1]] {
            let beta = DimVector::new(b).unwrap();
            for ms in enumerate_orbits(&beta, 12).unwrap() {
                let rep = ms.canonical_rep();
                assert_eq!(rep.beta, beta);
                assert_eq!(rank_invariants(&rep).unwrap(), ms.rank_table());
            }
        }
    }

    #[test]
    fn splitting_examples() {
        let beta = DimVector::new(vec![2, 0]).unwrap();
        let om = SymplecticNilRep::standard_form(&beta).unwrap();
        let rep = SymplecticNilRep::new(beta.clone(), om, NilRep::zero(beta).x).unwrap();
        let sp = lagrangian_splitting(&rep).unwrap();
        assert!(verify_splitting(&rep, &sp).ok());

        let beta = DimVector::new(vec![0, 1, 0, 1]).unwrap();
        let om = SymplecticNilRep::standard_form(&beta).unwrap();
        let rep = SymplecticNilRep::new(beta.clone(), om, NilRep::zero(beta).x).unwrap();
        let sp = lagrangian_splitting(&rep).unwrap();
        assert!(verify_splitting(&rep, &sp).ok());
        assert_eq!(sp.graded_dim(4).iter().sum::<usize>(), 1);
    }

    #[test]
    fn random_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for b in [vec![2, 2], vec![2, 1, 0, 1], vec![2, 2, 0, 2], vec![0, 1, 2, 1]] {
            let beta = DimVector::new(b).unwrap();
            for _ in 0..5 {
                let rep = random_symplectic_nilrep(&beta, &mut rng).unwrap();
                let sp = lagrangian_splitting(&rep).unwrap();
                assert!(verify_splitting(&rep, &sp).ok());
            }
        }
    }
}
