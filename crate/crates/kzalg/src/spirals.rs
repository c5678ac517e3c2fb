//! Spirals attached to fractional cocharacters, the alcove to spiral map, clan
//! arrangements and the Borel subalgebras attached to generic clans.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::lp::{feasible, Constraint, Rel};
use crate::rational::{q, ser_q, ser_qvec, Q};
use crate::rootdata::{alcove_point, AffineWeylElement, RootDatum};

/// Roots of a reductive Lie algebra as integer functionals on cocharacter coordinates,
/// together with a `Z/m`-grading given by a rational coweight `theta_tilde`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRootSupport {
    pub m: i64,
    pub theta_tilde: Vec<Q>,
    pub roots: Vec<Vec<i64>>,
    pub positive: Vec<bool>,
    pub labels: Vec<String>,
    pub torus_rank: usize,
}

impl GradedRootSupport {
    pub fn new(m: i64, theta_tilde: Vec<Q>, roots: Vec<Vec<i64>>, positive: Vec<bool>, labels: Vec<String>) -> Result<Self> {
        if m < 1 {
            return Err(Error::Invalid("grading modulus must be positive".into()));
        }
        let n = theta_tilde.len();
        if roots.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: roots.iter().map(|r| r.len()).find(|&l| l != n).unwrap() });
        }
        let s = GradedRootSupport { m, theta_tilde, roots, positive, labels, torus_rank: n };
        for i in 0..s.roots.len() {
            if !s.pair(i, &s.theta_tilde).is_integer() {
                return Err(Error::Invalid(format!("theta_tilde pairs non-integrally with root {}", s.labels[i])));
            }
        }
        Ok(s)
    }

    /// Grading of a simple group from a coweight in simple-coroot coordinates.
    pub fn from_root_datum(rd: &RootDatum, theta_tilde: Vec<Q>, m: i64) -> Result<Self> {
        if theta_tilde.len() != rd.rank {
            return Err(Error::DimensionMismatch { expected: rd.rank, got: theta_tilde.len() });
        }
        let roots = rd.roots.iter().map(|a| rd.functional(a)).collect();
        let positive = (0..rd.num_roots()).map(|i| rd.is_positive(i)).collect();
        let labels = rd.roots.iter().map(|a| format!("{a:?}")).collect();
        Self::new(m, theta_tilde, roots, positive, labels)
    }

    /// `gl(V)` for `V = (+)_i V_i` graded by `Z/m`: basis vector `a` sits in residue `residues[a]`,
    /// root `e_a - e_b` is the matrix unit `E_ab` of degree `residues[a] - residues[b]`.
    pub fn from_cyclic_quiver(residues: &[i64], m: i64) -> Result<Self> {
        let n = residues.len();
        let mut roots = Vec::new();
        let mut positive = Vec::new();
        let mut labels = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut r = vec![0i64; n];
                    r[a] = 1;
                    r[b] = -1;
                    roots.push(r);
                    positive.push(a < b);
                    labels.push(format!("E{a}{b}"));
                }
            }
        }
        Self::new(m, residues.iter().map(|&x| q(x.rem_euclid(m))).collect(), roots, positive, labels)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn pair(&self, i: usize, y: &[Q]) -> Q {
        self.roots[i].iter().zip(y).fold(Q::zero(), |s, (a, x)| s + q(*a) * x)
    }

    pub fn degree(&self, i: usize) -> i64 {
        let v = self.pair(i, &self.theta_tilde).to_integer();
        let v: i64 = num_traits::ToPrimitive::to_i64(&v).expect("small degree");
        v.rem_euclid(self.m)
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let neg: Vec<i64> = self.roots[i].iter().map(|x| -x).collect();
        self.roots.iter().position(|r| *r == neg).expect("root system is symmetric")
    }

    /// The cocharacter `theta_tilde - m y` whose spiral is attached to the point `y`.
    pub fn lambda_of_point(&self, y: &[Q]) -> Vec<Q> {
        self.theta_tilde.iter().zip(y).map(|(t, x)| t - q(self.m) * x).collect()
    }
}

/// Root sets of `p_n`, `l_n`, `u_n` (root indices of the support).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiralPiece {
    pub n: i64,
    pub p: Vec<usize>,
    pub l: Vec<usize>,
    pub u: Vec<usize>,
    pub torus: bool,
}

pub fn spiral_from_coweight(support: &GradedRootSupport, lambda: &[Q], epsilon: i64, n: i64) -> Result<SpiralPiece> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Invalid("epsilon must be +1 or -1".into()));
    }
    if lambda.len() != support.torus_rank {
        return Err(Error::DimensionMismatch { expected: support.torus_rank, got: lambda.len() });
    }
    let thr = q(n * epsilon);
    let (mut p, mut l, mut u) = (vec![], vec![], vec![]);
    for i in 0..support.num_roots() {
        if support.degree(i) != n.rem_euclid(support.m) {
            continue;
        }
        let w = support.pair(i, lambda);
        if w >= thr {
            p.push(i);
            if w == thr {
                l.push(i);
            } else {
                u.push(i);
            }
        }
    }
    let torus = n.rem_euclid(support.m) == 0 && !thr.is_positive();
    Ok(SpiralPiece { n, p, l, u, torus })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spiral {
    pub epsilon: i64,
    #[serde(serialize_with = "ser_qvec")]
    pub lambda: Vec<Q>,
    pub pieces: Vec<SpiralPiece>,
}

impl Spiral {
    pub fn piece(&self, n: i64) -> Option<&SpiralPiece> {
        self.pieces.iter().find(|p| p.n == n)
    }
}

fn sign_of(d: i64) -> Result<i64> {
    match d.signum() {
        0 => Err(Error::Invalid("d must be nonzero".into())),
        s => Ok(s),
    }
}

/// Spiral of the fractional cocharacter attached to a point `y`, pieces in degrees `d` and `0`.
pub fn spiral_of_point(support: &GradedRootSupport, y: &[Q], d: i64) -> Result<Spiral> {
    let epsilon = sign_of(d)?;
    let lambda = support.lambda_of_point(y);
    let pieces = vec![spiral_from_coweight(support, &lambda, epsilon, d)?, spiral_from_coweight(support, &lambda, epsilon, 0)?];
    Ok(Spiral { epsilon, lambda, pieces })
}

/// Spiral attached to the alcove `w^{-1} nu_0`.
pub fn spiral_of_alcove(support: &GradedRootSupport, rd: &RootDatum, w: &AffineWeylElement, d: i64) -> Result<Spiral> {
    let y = alcove_point(rd, w);
    spiral_of_point(support, &y, d)
}

/// Hyperplane `<a, y> = r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    pub root: usize,
    pub a: Vec<i64>,
    #[serde(serialize_with = "ser_q")]
    pub r: Q,
    pub family: i64,
}

impl Hyperplane {
    pub fn value(&self, y: &[Q]) -> Q {
        self.a.iter().zip(y).fold(-self.r.clone(), |s, (a, x)| s + q(*a) * x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClanArrangement {
    pub dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
}

/// Hyperplanes where some root changes membership in `p_N`, `N in {d, 0}`.
pub fn clan_arrangement(support: &GradedRootSupport, d: i64) -> Result<ClanArrangement> {
    let epsilon = sign_of(d)?;
    let mut hs: Vec<Hyperplane> = Vec::new();
    for fam in [d, 0] {
        for i in 0..support.num_roots() {
            if support.degree(i) != fam.rem_euclid(support.m) {
                continue;
            }
            // <alpha, theta> - m <alpha, y> = N epsilon
            let mut r = (support.pair(i, &support.theta_tilde) - q(fam * epsilon)) / q(support.m);
            let mut root = i;
            let mut a = support.roots[i].clone();
            if !support.positive[i] {
                root = support.negative_of(i);
                a = support.roots[root].clone();
                r = -r;
            }
            if !hs.iter().any(|h| h.a == a && h.r == r) {
                hs.push(Hyperplane { root, a, r, family: fam });
            }
        }
    }
    hs.sort_by(|x, y| x.r.cmp(&y.r).then_with(|| x.root.cmp(&y.root)));
    Ok(ClanArrangement { dim: support.torus_rank, hyperplanes: hs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clan {
    pub signs: Vec<i8>,
    #[serde(serialize_with = "ser_qvec")]
    pub witness: Vec<Q>,
    pub bounded: bool,
    /// Generators of the recession cone, lineality directions listed with both signs.
    pub recession: Vec<Vec<i64>>,
}

fn sign_constraint(h: &Hyperplane, s: i8) -> Constraint {
    let a: Vec<Q> = h.a.iter().map(|x| q(*x * s as i64)).collect();
    Constraint::new(a, Rel::Gt, &h.r * q(s as i64))
}

fn cone_constraints(arr: &ClanArrangement, signs: &[i8]) -> Vec<Constraint> {
    arr.hyperplanes
        .iter()
        .zip(signs)
        .map(|(h, &s)| Constraint::new(h.a.iter().map(|x| q(*x * s as i64)).collect(), Rel::Ge, Q::zero()))
        .collect()
}

/// Whether the linear functional `f` is not identically zero on the cone.
fn nonzero_on_cone(cone: &[Constraint], f: &[Q], n: usize) -> bool {
    [Q::one(), -Q::one()].iter().any(|s| {
        let mut c = cone.to_vec();
        c.push(Constraint::new(f.iter().map(|x| x * s).collect(), Rel::Gt, Q::zero()));
        feasible(&c, n).is_some()
    })
}

fn primitive(v: &[Q]) -> Vec<i64> {
    let l = crate::rational::lcm_denoms(v.iter());
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    ints.iter().map(|x| num_traits::ToPrimitive::to_i64(&(x / &g)).expect("small generator")).collect()
}

/// Generators of the cone `{v : s_H <a_H, v> >= 0}`.
fn recession_generators(arr: &ClanArrangement, signs: &[i8]) -> Vec<Vec<i64>> {
    let n = arr.dim;
    let rows: Vec<Vec<Q>> = arr.hyperplanes.iter().zip(signs).map(|(h, &s)| h.a.iter().map(|x| q(*x * s as i64)).collect()).collect();
    let lineality = if rows.is_empty() { QMat::identity(n).to_rows() } else { QMat::from_rows(&rows).nullspace() };
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for l in &lineality {
        let p = primitive(l);
        gens.push(p.clone());
        gens.push(p.iter().map(|x| -x).collect());
    }
    let need = n - lineality.len();
    if need == 0 {
        return gens;
    }
    // extreme rays of the pointed part: orthogonal to the lineality space and to need-1 constraints
    let in_cone = |v: &[Q]| rows.iter().all(|r| !crate::linalg::dot(r, v).is_negative());
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for sub in (0..rows.len()).combinations(need - 1) {
        let mut eqs: Vec<Vec<Q>> = lineality.clone();
        eqs.extend(sub.iter().map(|&i| rows[i].clone()));
        let ns = if eqs.is_empty() { QMat::identity(n).to_rows() } else { QMat::from_rows(&eqs).nullspace() };
        if ns.len() != 1 {
            continue;
        }
        for s in [Q::one(), -Q::one()] {
            let v: Vec<Q> = ns[0].iter().map(|x| x * &s).collect();
            if in_cone(&v) {
                let p = primitive(&v);
                if !rays.contains(&p) {
                    rays.push(p);
                }
            }
        }
    }
    rays.sort();
    gens.extend(rays);
    gens
}

fn finish_clan(arr: &ClanArrangement, signs: Vec<i8>, witness: Vec<Q>) -> Clan {
    let n = arr.dim;
    let cone = cone_constraints(arr, &signs);
    let bounded = (0..n).all(|i| {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        !nonzero_on_cone(&cone, &e, n)
    });
    let recession = recession_generators(arr, &signs);
    Clan { signs, witness, bounded, recession }
}

/// Connected components of the complement of the arrangement, ordered by sign vector (`-` before `+`).
pub fn enumerate_clans_in(arr: &ClanArrangement) -> Vec<Clan> {
    let n = arr.dim;
    let mut cells: Vec<(Vec<i8>, Vec<Q>)> = vec![(vec![], vec![Q::zero(); n])];
    for (k, h) in arr.hyperplanes.iter().enumerate() {
        cells = cells
            .into_par_iter()
            .flat_map_iter(|(signs, wit)| {
                let base: Vec<Constraint> = arr.hyperplanes[..k].iter().zip(&signs).map(|(g, &s)| sign_constraint(g, s)).collect();
                let mut out = Vec::new();
                for s in [-1i8, 1] {
                    let v = h.value(&wit);
                    let w = if (v.is_negative() && s < 0) || (v.is_positive() && s > 0) {
                        Some(wit.clone())
                    } else {
                        let mut c = base.clone();
                        c.push(sign_constraint(h, s));
                        feasible(&c, n)
                    };
                    if let Some(w) = w {
                        let mut ns = signs.clone();
                        ns.push(s);
                        out.push((ns, w));
                    }
                }
                out
            })
            .collect();
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    cells.into_par_iter().map(|(s, w)| finish_clan(arr, s, w)).collect()
}

pub fn enumerate_clans(support: &GradedRootSupport, d: i64) -> Result<(ClanArrangement, Vec<Clan>)> {
    let arr = clan_arrangement(support, d)?;
    let clans = enumerate_clans_in(&arr);
    Ok((arr, clans))
}

/// Sign vector of a point off the arrangement.
pub fn signs_of_point(arr: &ClanArrangement, y: &[Q]) -> Result<Vec<i8>> {
    arr.hyperplanes
        .iter()
        .map(|h| {
            let v = h.value(y);
            if v.is_zero() {
                Err(Error::Wall(format!("point lies on hyperplane {:?} = {}", h.a, crate::rational::fmt_q(&h.r))))
            } else {
                Ok(if v.is_positive() { 1 } else { -1 })
            }
        })
        .collect()
}

pub fn clan_of_point<'a>(arr: &ClanArrangement, clans: &'a [Clan], y: &[Q]) -> Result<&'a Clan> {
    let s = signs_of_point(arr, y)?;
    clans.iter().find(|c| c.signs == s).ok_or_else(|| Error::Invalid("no clan with this sign vector".into()))
}

/// Every root is unbounded on the clan, i.e. not identically zero on its recession cone.
pub fn is_generic(clan: &Clan, arr: &ClanArrangement, support: &GradedRootSupport) -> bool {
    let cone = cone_constraints(arr, &clan.signs);
    (0..support.num_roots()).filter(|&i| support.positive[i]).all(|i| {
        let f: Vec<Q> = support.roots[i].iter().map(|x| q(*x)).collect();
        nonzero_on_cone(&cone, &f, arr.dim)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorelDescriptor {
    /// Regular direction in the recession cone; the Borel has positive roots `{alpha : <alpha, v> < 0}`.
    pub v: Vec<i64>,
    pub positive_roots: Vec<usize>,
    pub nilradical_degree_d: Vec<usize>,
    pub u_d: Vec<usize>,
    pub certified: bool,
}

pub fn borel_of_generic_clan(clan: &Clan, arr: &ClanArrangement, support: &GradedRootSupport, d: i64) -> Result<BorelDescriptor> {
    if !is_generic(clan, arr, support) {
        return Err(Error::Precondition("clan is not generic".into()));
    }
    let gens = &clan.recession;
    let pair = |i: usize, v: &[i64]| -> i64 { support.roots[i].iter().zip(v).map(|(a, b)| a * b).sum() };
    let mut v = None;
    for t in 2i64.. {
        let mut cand = vec![0i64; arr.dim];
        let mut pw = 1i64;
        for g in gens {
            pw *= t;
            for (c, x) in cand.iter_mut().zip(g) {
                *c += pw * x;
            }
        }
        if (0..support.num_roots()).all(|i| pair(i, &cand) != 0) {
            v = Some(cand);
            break;
        }
        if t > 64 {
            break;
        }
    }
    let v = v.ok_or_else(|| Error::Numerical("no regular direction found in the recession cone".into()))?;
    let positive_roots: Vec<usize> = (0..support.num_roots()).filter(|&i| pair(i, &v) < 0).collect();
    let nilradical_degree_d: Vec<usize> = positive_roots.iter().copied().filter(|&i| support.degree(i) == d.rem_euclid(support.m)).collect();
    let spiral = spiral_of_point(support, &clan.witness, d)?;
    let u_d = spiral.piece(d).expect("degree d piece").u.clone();
    let certified = u_d == nilradical_degree_d;
    Ok(BorelDescriptor { v, positive_roots, nilradical_degree_d, u_d, certified })
}

/// Root set of the Borel `wbar . b^{nu_0}` attached to an alcove, where `b^{nu_0}` is spanned by
/// the torus and the negative root spaces.
pub fn borel_of_alcove(rd: &RootDatum, w: &AffineWeylElement) -> Vec<usize> {
    let wbar = w.finite_part();
    let f: Vec<Vec<i64>> = rd.roots.iter().map(|a| rd.functional(a)).collect();
    // image of a root under wbar: alpha o wbar^{-1} as functional
    let winv = wbar.inverse();
    let mut out = Vec::new();
    for idx in rd.n_pos..rd.num_roots() {
        let fa = &f[idx];
        let img: Vec<i64> = (0..rd.rank).map(|j| (0..rd.rank).map(|k| fa[k] * winv.finite[k][j]).sum()).collect();
        out.push(f.iter().position(|g| *g == img).expect("Weyl group permutes roots"));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::rootdata::{alcove_of, build_root_datum};

    fn a1(m: i64) -> (RootDatum, GradedRootSupport) {
        let rd = build_root_datum("A", 1).unwrap();
        let s = GradedRootSupport::from_root_datum(&rd, vec![qr(1, 2)], m).unwrap();
        (rd, s)
    }

    #[test]
    fn trivial_spirals() {
        let (_, s) = a1(2);
        let p = spiral_from_coweight(&s, &[Q::zero()], 1, 1).unwrap();
        assert!(p.p.is_empty());
        let p0 = spiral_from_coweight(&s, &[Q::zero()], 1, 0).unwrap();
        assert!(p0.torus && p0.p.is_empty());
        // <alpha, lambda> = 1
        let p1 = spiral_from_coweight(&s, &[qr(1, 2)], 1, 1).unwrap();
        assert_eq!(p1.l, vec![0]);
        assert!(p1.u.is_empty());
    }

    #[test]
    fn a1_clans() {
        let (_, s) = a1(2);
        let (arr, clans) = enumerate_clans(&s, 1).unwrap();
        let walls: Vec<Q> = arr.hyperplanes.iter().map(|h| &h.r / q(h.a[0])).collect();
        assert_eq!(walls, vec![Q::zero(), qr(1, 2)]);
        assert_eq!(clans.len(), 3);
        let gen: Vec<bool> = clans.iter().map(|c| is_generic(c, &arr, &s)).collect();
        assert_eq!(gen, vec![true, false, true]);
        assert!(clans[1].bounded);
        let (arr3, clans3) = enumerate_clans(&s, 3).unwrap();
        let walls3: Vec<Q> = arr3.hyperplanes.iter().map(|h| &h.r / q(h.a[0])).collect();
        assert_eq!(walls3, vec![qr(-1, 2), Q::one()]);
        assert_eq!(clans3.len(), 3);
    }

    #[test]
    fn empty_arrangement() {
        let (_, s) = a1(2);
        // d = 2 is even: D_2 and D_0 need roots of even degree, there are none
        let (arr, clans) = enumerate_clans(&s, 2).unwrap();
        assert!(arr.hyperplanes.is_empty());
        assert_eq!(clans.len(), 1);
        assert!(is_generic(&clans[0], &arr, &s));
    }

    #[test]
    fn borel_for_rays() {
        let (_, s) = a1(2);
        let (arr, clans) = enumerate_clans(&s, 1).unwrap();
        let b_right = borel_of_generic_clan(&clans[2], &arr, &s, 1).unwrap();
        assert!(b_right.certified);
        assert_eq!(b_right.positive_roots, vec![1]);
        let b_left = borel_of_generic_clan(&clans[0], &arr, &s, 1).unwrap();
        assert!(b_left.certified);
        assert_eq!(b_left.positive_roots, vec![0]);
        assert!(borel_of_generic_clan(&clans[1], &arr, &s, 1).is_err());
    }

    #[test]
    fn negative_alcove_is_borel() {
        let (rd, s) = a1(2);
        let y = qr(-1, 4);
        let w = alcove_of(&rd, &[y]).unwrap();
        let sp = spiral_of_alcove(&s, &rd, &w, 1).unwrap();
        let b = borel_of_alcove(&rd, &w);
        let b1: Vec<usize> = b.into_iter().filter(|&i| s.degree(i) == 1).collect();
        assert_eq!(sp.piece(1).unwrap().p, b1);
    }
}
