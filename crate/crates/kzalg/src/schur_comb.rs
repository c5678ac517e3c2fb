//! Complete sequences, parabolic and isotropic flag types, and the dimension
//! counts attached to them.

use itertools::Itertools;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::rational::Q;
use crate::spirals::{GradedRootSupport, Spiral};

pub const DEFAULT_SEQUENCE_BOUND: usize = 10;

pub fn multinomial(beta: &[usize]) -> u128 {
    let mut num: u128 = 1;
    let mut k: u128 = 0;
    for &b in beta {
        for j in 1..=b as u128 {
            k += 1;
            num = num * k / j;
        }
    }
    num
}

/// Sequences `(nu_1, ..., nu_n)` of residues with `sum alpha_{nu_k} = beta`, in lexicographic order.
pub fn complete_sequences(beta: &DimVector, bound: usize) -> Result<Vec<Vec<usize>>> {
    let n = beta.total();
    if n > bound {
        return Err(Error::BoundExceeded(format!("|beta| = {n} exceeds the bound {bound}")));
    }
    fn rec(rem: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut beta.beta.clone(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Nonzero vectors `v <= b` componentwise, in lexicographic order.
fn nonzero_subvectors(b: &[usize]) -> Vec<Vec<usize>> {
    b.iter().map(|&x| 0..=x).multi_cartesian_product().filter(|v| v.iter().any(|&x| x > 0)).collect()
}

fn compositions(b: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if b.iter().all(|&x| x == 0) {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in nonzero_subvectors(b) {
        let rest: Vec<usize> = b.iter().zip(&first).map(|(x, y)| x - y).collect();
        for mut tail in compositions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParTypeA {
    pub m: usize,
    pub parts: Vec<Vec<usize>>,
}

impl ParTypeA {
    pub fn new(m: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.iter().any(|p| p.len() != m || p.iter().all(|&x| x == 0)) {
            return Err(Error::Invalid("parts must be nonzero vectors of length m".into()));
        }
        Ok(ParTypeA { m, parts })
    }

    pub fn beta(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.parts.iter().map(|p| p[i]).sum()).collect()
    }
}

/// Ordered by length, then lexicographically.
pub fn par_types(beta: &DimVector, bound: usize) -> Result<Vec<ParTypeA>> {
    if beta.total() > bound {
        return Err(Error::BoundExceeded(format!("|beta| = {} exceeds the bound {bound}", beta.total())));
    }
    let mut v: Vec<ParTypeA> = compositions(&beta.beta).into_iter().map(|parts| ParTypeA { m: beta.m, parts }).collect();
    v.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(v)
}

pub fn conj(v: &[usize]) -> Vec<usize> {
    let m = v.len();
    (0..m).map(|i| v[(m - i) % m]).collect()
}

/// `(gamma_{1-l}, ..., gamma_l)` with `gamma_{1-k} = conj(gamma_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymParType {
    pub m: usize,
    pub parts: Vec<Vec<usize>>,
}

impl SymParType {
    /// Builds the type from its positive half `(gamma_1, ..., gamma_l)`.
    pub fn from_half(m: usize, half: &[Vec<usize>]) -> Self {
        let mut parts: Vec<Vec<usize>> = half.iter().rev().map(|g| conj(g)).collect();
        parts.extend(half.iter().cloned());
        SymParType { m, parts }
    }

    pub fn l(&self) -> usize {
        self.parts.len() / 2
    }

    pub fn is_valid(&self) -> bool {
        let n = self.parts.len();
        n % 2 == 0
            && self.parts.iter().all(|p| p.len() == self.m && p.iter().any(|&x| x > 0))
            && (0..n).all(|p| conj(&self.parts[p]) == self.parts[n - 1 - p])
    }

    /// Reverse and conjugate every part.
    pub fn involution(&self) -> Self {
        SymParType { m: self.m, parts: self.parts.iter().rev().map(|g| conj(g)).collect() }
    }

    pub fn beta(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.parts.iter().map(|p| p[i]).sum()).collect()
    }
}

pub fn sym_par_types(beta: &DimVector, bound: usize) -> Result<Vec<SymParType>> {
    if beta.m % 2 != 0 {
        return Err(Error::Invalid("the modulus must be even".into()));
    }
    if !beta.is_self_dual() {
        return Err(Error::Invalid("beta must satisfy beta_i = beta_{-i}".into()));
    }
    if beta.total() > bound {
        return Err(Error::BoundExceeded(format!("|beta| = {} exceeds the bound {bound}", beta.total())));
    }
    let m = beta.m;
    let mut out = Vec::new();
    for h in beta.beta.iter().map(|&x| 0..=x).multi_cartesian_product() {
        let hc = conj(&h);
        if (0..m).any(|i| h[i] + hc[i] != beta.beta[i]) {
            continue;
        }
        for comp in compositions(&h) {
            out.push(SymParType::from_half(m, &comp));
        }
    }
    out.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then_with(|| a.parts.cmp(&b.parts)));
    out.dedup();
    Ok(out)
}

/// Where a block of `g_0` or `g_1` sits relative to the flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockClass {
    /// Preserves the piece index (Levi part).
    Levi,
    /// Raises the piece index.
    Raising,
    /// Lowers the piece index.
    Lowering,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub degree: usize,
    pub residue: usize,
    pub source: usize,
    pub target: usize,
    pub dim: usize,
    pub class: BlockClass,
}

/// Blocks `L_source(i) -> L_target(i + degree)` of `g_0` and `g_1` for a flag of type `gamma`,
/// where pieces are ordered so that the flag is `F^k = (+)_{k' >= k} L_{k'}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockModel {
    pub m: usize,
    pub blocks: Vec<Block>,
}

impl BlockModel {
    pub fn of_type(gamma: &ParTypeA) -> Self {
        let m = gamma.m;
        let l = gamma.parts.len();
        let mut blocks = Vec::new();
        for degree in 0..2 {
            for i in 0..m {
                for k in 0..l {
                    for kp in 0..l {
                        let dim = gamma.parts[k][i] * gamma.parts[kp][(i + degree) % m];
                        if dim == 0 {
                            continue;
                        }
                        let class = match kp.cmp(&k) {
                            std::cmp::Ordering::Equal => BlockClass::Levi,
                            std::cmp::Ordering::Greater => BlockClass::Raising,
                            std::cmp::Ordering::Less => BlockClass::Lowering,
                        };
                        blocks.push(Block { degree, residue: i, source: k, target: kp, dim, class });
                    }
                }
            }
        }
        BlockModel { m, blocks }
    }

    pub fn dim_g(&self, degree: usize) -> usize {
        self.blocks.iter().filter(|b| b.degree == degree).map(|b| b.dim).sum()
    }

    /// `dim G_0 / Q_0 + dim {x in g_1 : x F^k in F^{k+1}}`.
    pub fn shift_dim(&self) -> usize {
        let lowering0: usize = self.blocks.iter().filter(|b| b.degree == 0 && b.class == BlockClass::Lowering).map(|b| b.dim).sum();
        let raising1: usize = self.blocks.iter().filter(|b| b.degree == 1 && b.class == BlockClass::Raising).map(|b| b.dim).sum();
        lowering0 + raising1
    }
}

/// `d_gamma = sum_{k<k'} sum_i gamma_k(i) gamma_k'(i) + sum_{k<k'} sum_i gamma_k(i) gamma_k'(i+1)`.
pub fn shift_dim_parabolic(gamma: &ParTypeA) -> usize {
    let m = gamma.m;
    let g = &gamma.parts;
    let mut s = 0;
    for k in 0..g.len() {
        for kp in k + 1..g.len() {
            for i in 0..m {
                s += g[k][i] * g[kp][i] + g[k][i] * g[kp][(i + 1) % m];
            }
        }
    }
    s
}

/// `dim X_gamma + dim {x in g_1 cap sp(V) : x V^k in V^{k+1}}` for an isotropic flag type.
pub fn shift_dim_isotropic(gamma: &SymParType) -> Result<usize> {
    if !gamma.is_valid() {
        return Err(Error::Invalid("not a symplectic type".into()));
    }
    let m = gamma.m;
    let g = &gamma.parts;
    let n = g.len();
    // anti-self-adjoint blocks pair (p -> p', i) with (n-1-p' -> n-1-p, -i-e)
    let count = |e: usize, keep: &dyn Fn(usize, usize) -> bool| -> usize {
        let mut twice = 0;
        let mut selfp = 0;
        for i in 0..m {
            for p in 0..n {
                for pp in 0..n {
                    if !keep(p, pp) {
                        continue;
                    }
                    let d = g[p][i] * g[pp][(i + e) % m];
                    let partner_i = (2 * m - i - e) % m;
                    if pp == n - 1 - p && partner_i == i {
                        selfp += g[p][i] * (g[p][i] + 1) / 2;
                    } else {
                        twice += d;
                    }
                }
            }
        }
        twice / 2 + selfp
    };
    let all0 = count(0, &|_, _| true);
    let q0 = count(0, &|p, pp| pp >= p);
    let v1 = count(1, &|p, pp| pp > p);
    Ok(all0 - q0 + v1)
}

/// `dim G_0 / P_0 + dim u_d`: degree-zero roots of negative weight plus the radical in degree `d`.
pub fn shift_dim_spiral(support: &GradedRootSupport, spiral: &Spiral, d: i64) -> Result<usize> {
    let ud = spiral.piece(d).ok_or_else(|| Error::Invalid(format!("spiral has no degree {d} piece")))?;
    let neg0 = (0..support.num_roots())
        .filter(|&i| support.degree(i) == 0)
        .filter(|&i| {
            let w: Q = support.pair(i, &spiral.lambda);
            w.is_negative()
        })
        .count();
    Ok(neg0 + ud.u.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(b: Vec<usize>) -> DimVector {
        DimVector::new(b).unwrap()
    }

    #[test]
    fn sequence_counts() {
        assert_eq!(complete_sequences(&dv(vec![2, 1]), 10).unwrap().len(), 3);
        assert_eq!(complete_sequences(&dv(vec![1, 1]), 10).unwrap().len(), 2);
        assert_eq!(complete_sequences(&dv(vec![0, 1]), 10).unwrap().len(), 1);
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[2, 2, 2]), 90);
    }

    #[test]
    fn type_counts() {
        let t = par_types(&dv(vec![1, 1]), 10).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].parts, vec![vec![1, 1]]);
        assert_eq!(t[1].parts, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(par_types(&dv(vec![2, 0]), 10).unwrap().len(), 2);
        assert_eq!(par_types(&dv(vec![0, 1]), 10).unwrap().len(), 1);
        let s = sym_par_types(&dv(vec![2, 0]), 10).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].parts, vec![vec![1, 0], vec![1, 0]]);
        assert_eq!(sym_par_types(&dv(vec![2, 2]), 10).unwrap().len(), 3);
        assert_eq!(sym_par_types(&dv(vec![0, 0]), 10).unwrap().len(), 1);
    }

    #[test]
    fn shift_dims() {
        let t = |p: Vec<Vec<usize>>| ParTypeA::new(2, p).unwrap();
        assert_eq!(shift_dim_parabolic(&t(vec![vec![1, 1]])), 0);
        assert_eq!(shift_dim_parabolic(&t(vec![vec![1, 0], vec![0, 1]])), 1);
        assert_eq!(shift_dim_parabolic(&t(vec![vec![0, 1], vec![1, 0]])), 1);
        for b in [vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![2, 1, 1]] {
            for g in par_types(&dv(b), 10).unwrap() {
                assert_eq!(shift_dim_parabolic(&g), BlockModel::of_type(&g).shift_dim());
            }
        }
        assert_eq!(shift_dim_isotropic(&SymParType { m: 2, parts: vec![] }).unwrap(), 0);
    }
}
