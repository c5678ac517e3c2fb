mod common;

use std::collections::BTreeSet;

use common::dv;
use kzalg::linalg::QMat;
use kzalg::quiver::*;
use kzalg::rational::q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distinct rank tables among all nilpotent representations with entries in `{-1, 0, 1}`.
fn orbit_oracle(beta: &DimVector) -> usize {
    let m = beta.m;
    let shapes: Vec<(usize, usize)> = (0..m).map(|i| (beta.beta[(i + 1) % m], beta.beta[i])).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut seen = BTreeSet::new();
    for code in 0..3usize.pow(total as u32) {
        let mut c = code;
        let mut entries = Vec::with_capacity(total);
        for _ in 0..total {
            entries.push(q((c % 3) as i64 - 1));
            c /= 3;
        }
        let mut it = entries.into_iter();
        let x: Vec<QMat> = shapes.iter().map(|&(r, cc)| QMat { rows: r, cols: cc, data: it.by_ref().take(r * cc).collect() }).collect();
        let rep = NilRep::new(beta.clone(), x).unwrap();
        if is_nilpotent(&rep) {
            seen.insert(rank_invariants(&rep).unwrap());
        }
    }
    seen.len()
}

#[test]
fn orbit_counts_match_brute_force() {
    for b in [vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 0], vec![1, 1, 1], vec![2, 1, 0], vec![1, 1, 0, 1]] {
        let beta = dv(b.clone());
        assert_eq!(enumerate_orbits(&beta, 12).unwrap().len(), orbit_oracle(&beta), "{b:?}");
    }
}

#[test]
fn rank_tables_separate_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let betas = [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 1, 1], vec![2, 1, 1]];
    for trial in 0..1000 {
        let beta = dv(betas[trial % betas.len()].clone());
        let orbits = enumerate_orbits(&beta, 12).unwrap();
        let i = rng.gen_range(0..orbits.len());
        let j = rng.gen_range(0..orbits.len());
        let a = random_conjugate(&orbits[i].canonical_rep(), &mut rng);
        let b = random_conjugate(&orbits[j].canonical_rep(), &mut rng);
        assert_eq!(same_orbit(&a, &b).unwrap(), i == j);
    }
}

fn self_dual_betas(max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for m in [2usize, 4] {
        for b in common::dim_vectors(m, max_total) {
            let beta = dv(b.clone());
            if beta.total() > 0 && beta.is_self_dual() && SymplecticNilRep::standard_form(&beta).is_ok() {
                out.push(b);
            }
        }
    }
    out
}

#[test]
fn splittings_on_random_symplectic_reps() {
    let betas = self_dual_betas(6);
    assert!(!betas.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..200 {
        let beta = dv(betas[k % betas.len()].clone());
        let rep = random_symplectic_nilrep(&beta, &mut rng).unwrap();
        let sp = lagrangian_splitting(&rep).unwrap();
        let r = verify_splitting(&rep, &sp);
        assert!(r.ok(), "{beta:?} {r:?}");
        assert_eq!(sp.u.len() * 2, beta.total());
    }
}
