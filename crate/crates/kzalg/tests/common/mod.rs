#![allow(dead_code)]

use kzalg::linalg::QMat;
use kzalg::quiver::{random_graded_sp, random_invertible, DimVector, SymplecticNilRep};
use kzalg::rational::{q, Q};
use kzalg::schur_comb::*;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

pub fn dv(b: Vec<usize>) -> DimVector {
    DimVector::new(b).unwrap()
}

pub fn dim_vectors(m: usize, max_total: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|_| 0..=max_total)
        .fold(vec![vec![]], |acc, r| {
            acc.into_iter().flat_map(|v| r.clone().map(move |x| [v.clone(), vec![x]].concat())).collect()
        })
        .into_iter()
        .filter(|v: &Vec<usize>| v.iter().sum::<usize>() <= max_total)
        .collect()
}

/// Dimension of `{A in g_e : A F^k in F^{k+s} for all k}` where `A` maps `V_i` to `V_{i+e}`,
/// optionally restricted to the anti-self-adjoint maps for the Gram matrix `gram`.
pub fn flag_stabilizer_dim(beta: &DimVector, flag: &[Vec<Vec<Q>>], e: usize, s: usize, gram: Option<&QMat>) -> usize {
    let n = beta.total();
    let m = beta.m;
    let deg: Vec<usize> = (0..m).flat_map(|i| std::iter::repeat(i).take(beta.beta[i])).collect();
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| deg[r] == (deg[c] + e) % m).collect();
    let idx = |r: usize, c: usize| vars.iter().position(|&v| v == (r, c));
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let l = flag.len();
    for k in 0..l {
        let target = if k + s < l { flag[k + s].clone() } else { vec![] };
        let ann: Vec<Vec<Q>> = if target.is_empty() {
            QMat::identity(n).to_rows()
        } else {
            QMat::from_rows(&target).nullspace()
        };
        for f in &flag[k] {
            for a in &ann {
                let mut row = vec![Q::zero(); vars.len()];
                for (t, &(r, c)) in vars.iter().enumerate() {
                    row[t] = &a[r] * &f[c];
                }
                rows.push(row);
            }
        }
    }
    if let Some(g) = gram {
        // (A^T G + G A)_{ab} = sum_r A_{ra} G_{rb} + sum_r G_{ar} A_{rb}
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![Q::zero(); vars.len()];
                for r in 0..n {
                    if let Some(t) = idx(r, a) {
                        row[t] += &g[(r, b)];
                    }
                    if let Some(t) = idx(r, b) {
                        row[t] += &g[(a, r)];
                    }
                }
                rows.push(row);
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { QMat::from_rows(&rows).rank() };
    vars.len() - rank
}

pub fn unit(n: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[k] = Q::one();
    v
}

pub fn apply(g: &QMat, vs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    vs.iter().map(|v| g.mul_vec(v)).collect()
}

/// `F^k` spanned by the pieces `k, k+1, ...`, conjugated by a random graded element.
pub fn type_a_oracle(gamma: &ParTypeA, rng: &mut ChaCha8Rng) -> usize {
    let beta = dv(gamma.beta());
    let n = beta.total();
    let off = beta.offsets();
    let l = gamma.parts.len();
    let mut piece_of = vec![0usize; n];
    for i in 0..gamma.m {
        let mut c = off[i];
        for (k, p) in gamma.parts.iter().enumerate() {
            for _ in 0..p[i] {
                piece_of[c] = k;
                c += 1;
            }
        }
    }
    let mut g = QMat::zeros(n, n);
    for i in 0..gamma.m {
        let b = random_invertible(beta.beta[i], rng);
        for a in 0..beta.beta[i] {
            for c in 0..beta.beta[i] {
                g.data[(off[i] + a) * n + off[i] + c] = b[(a, c)].clone();
            }
        }
    }
    let flag: Vec<Vec<Vec<Q>>> = (0..l).map(|k| apply(&g, &(0..n).filter(|&c| piece_of[c] >= k).map(|c| unit(n, c)).collect::<Vec<_>>())).collect();
    let g0 = flag_stabilizer_dim(&beta, &[], 0, 0, None);
    let q0 = flag_stabilizer_dim(&beta, &flag, 0, 0, None);
    let v1 = flag_stabilizer_dim(&beta, &flag, 1, 1, None);
    g0 - q0 + v1
}

pub fn sym_oracle(gamma: &SymParType, rng: &mut ChaCha8Rng) -> usize {
    let beta = dv(gamma.beta());
    let m = gamma.m;
    let n = beta.total();
    let np = gamma.parts.len();
    if n == 0 {
        return 0;
    }
    let off = beta.offsets();
    let omega = SymplecticNilRep::standard_form(&beta).unwrap();
    let proto = SymplecticNilRep { beta: beta.clone(), omega: omega.clone(), x: kzalg::quiver::NilRep::zero(beta.clone()).x };
    let gram = proto.gram();
    let mut piece_of = vec![0usize; n];
    for i in 0..m {
        let j = (m - i) % m;
        if i < j {
            let mut c = 0;
            for p in 0..np {
                for _ in 0..gamma.parts[p][i] {
                    piece_of[off[i] + c] = p;
                    piece_of[off[j] + c] = np - 1 - p;
                    c += 1;
                }
            }
        } else if i == j {
            let h = beta.beta[i] / 2;
            let mut c = 0;
            for p in 0..np / 2 {
                for _ in 0..gamma.parts[p][i] {
                    piece_of[off[i] + c] = p;
                    piece_of[off[i] + h + c] = np - 1 - p;
                    c += 1;
                }
            }
        }
    }
    let g = random_graded_sp(&beta, &omega, rng);
    assert!(g.transpose().mul(&gram).mul(&g) == gram);
    let flag: Vec<Vec<Vec<Q>>> = (0..np).map(|k| apply(&g, &(0..n).filter(|&c| piece_of[c] >= k).map(|c| unit(n, c)).collect::<Vec<_>>())).collect();
    for k in 0..np {
        // F^k and F^{np-k} are mutually orthogonal
        for a in &flag[k] {
            for b in flag.get(np - k).map(|v| v.as_slice()).unwrap_or(&[]) {
                assert!(kzalg::linalg::dot(a, &gram.mul_vec(b)).is_zero());
            }
        }
    }
    let g0 = flag_stabilizer_dim(&beta, &[], 0, 0, Some(&gram));
    let q0 = flag_stabilizer_dim(&beta, &flag, 0, 0, Some(&gram));
    let v1 = flag_stabilizer_dim(&beta, &flag, 1, 1, Some(&gram));
    g0 - q0 + v1
}

/// `d_p` from the eigenvalues of `ad H` on matrix units of `gl_n`.
pub fn spiral_oracle(residues: &[i64], m: i64, y: &[Q], d: i64) -> usize {
    let n = residues.len();
    let lambda: Vec<Q> = residues.iter().zip(y).map(|(r, x)| q(r.rem_euclid(m)) - q(m) * x).collect();
    let h = QMat::from_rows(&(0..n).map(|a| (0..n).map(|b| if a == b { lambda[a].clone() } else { Q::zero() }).collect()).collect::<Vec<_>>());
    let eps = d.signum();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut e = QMat::zeros(n, n);
            e.data[a * n + b] = Q::one();
            let comm = h.mul(&e).sub(&e.mul(&h));
            let c = comm[(a, b)].clone();
            let deg = (residues[a] - residues[b]).rem_euclid(m);
            if deg == 0 && c < Q::zero() {
                count += 1;
            }
            if deg == d.rem_euclid(m) && c > q(d * eps) {
                count += 1;
            }
        }
    }
    count
}

