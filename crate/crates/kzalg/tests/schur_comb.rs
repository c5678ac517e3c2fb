mod common;

use common::*;
use kzalg::rational::{qr, Q};
use kzalg::schur_comb::*;
use kzalg::spirals::{spiral_of_point, GradedRootSupport};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn parabolic_shift_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=3 {
        for b in dim_vectors(m, 4) {
            for gamma in par_types(&dv(b), 10).unwrap() {
                assert_eq!(shift_dim_parabolic(&gamma), type_a_oracle(&gamma, &mut rng), "{gamma:?}");
                assert_eq!(shift_dim_parabolic(&gamma), BlockModel::of_type(&gamma).shift_dim());
            }
        }
    }
}

#[test]
fn isotropic_shift_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in [2usize, 4] {
        for b in dim_vectors(m, 4) {
            let beta = dv(b);
            let Ok(types) = sym_par_types(&beta, 10) else { continue };
            for gamma in types {
                assert_eq!(shift_dim_isotropic(&gamma).unwrap(), sym_oracle(&gamma, &mut rng), "{gamma:?}");
            }
        }
    }
}

#[test]
fn sequence_and_type_counts() {
    for m in 1..=3 {
        for b in dim_vectors(m, 6) {
            let beta = dv(b.clone());
            let seqs = complete_sequences(&beta, 10).unwrap();
            assert_eq!(seqs.len() as u128, multinomial(&b));
            // unit-part types biject with sequences
            let unit: Vec<Vec<usize>> = par_types(&beta, 10)
                .unwrap()
                .into_iter()
                .filter(|g| g.parts.iter().all(|p| p.iter().sum::<usize>() == 1))
                .map(|g| g.parts.iter().map(|p| p.iter().position(|&x| x == 1).unwrap()).collect())
                .collect();
            let mut u = unit.clone();
            u.sort();
            assert_eq!(u, seqs);
        }
    }
}

#[test]
fn involution_preserves_types() {
    for b in [vec![2, 2], vec![4, 0], vec![2, 1, 0, 1], vec![0, 2, 2, 2]] {
        let types = sym_par_types(&dv(b), 10).unwrap();
        for t in &types {
            assert!(t.is_valid());
            assert_eq!(&t.involution(), t);
        }
    }
    assert!(sym_par_types(&dv(vec![1, 2, 0, 1]), 10).is_err());
}

#[test]
fn additivity_on_disjoint_residues() {
    // pieces supported on residues that no block connects give additive dimensions
    let g1 = ParTypeA::new(4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
    let g2 = ParTypeA::new(4, vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
    let joint = ParTypeA::new(4, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o = type_a_oracle(&joint, &mut rng);
    assert_eq!(shift_dim_parabolic(&joint), o);
    assert_eq!(shift_dim_parabolic(&g1) + shift_dim_parabolic(&g2), o);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn spiral_shift_matches_ad_oracle(
        residues in prop::collection::vec(0i64..3, 1..5),
        ys in prop::collection::vec((-12i64..12, 1i64..5), 4),
        d in prop::sample::select(vec![-2i64, -1, 1, 2, 3]),
    ) {
        let m = 3;
        let n = residues.len();
        let y: Vec<Q> = ys[..n].iter().map(|&(a, b)| qr(a, b)).collect();
        let s = GradedRootSupport::from_cyclic_quiver(&residues, m).unwrap();
        let sp = spiral_of_point(&s, &y, d).unwrap();
        prop_assert_eq!(shift_dim_spiral(&s, &sp, d).unwrap(), spiral_oracle(&residues, m, &y, d));
    }
}

#[test]
fn spiral_shift_zero_cocharacter() {
    // y = theta / m gives lambda = 0
    let s = GradedRootSupport::from_cyclic_quiver(&[0, 1], 2).unwrap();
    let y = vec![Q::zero(), qr(1, 2)];
    let sp = spiral_of_point(&s, &y, 1).unwrap();
    assert_eq!(shift_dim_spiral(&s, &sp, 1).unwrap(), 0);
}
