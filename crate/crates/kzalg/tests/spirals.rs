use kzalg::rational::{q, qr, Q};
use kzalg::rootdata::*;
use kzalg::schur_comb::shift_dim_spiral;
use kzalg::spirals::*;
use num_traits::Zero;
use proptest::prelude::*;

fn a1() -> (RootDatum, GradedRootSupport) {
    let rd = build_root_datum("A", 1).unwrap();
    let s = GradedRootSupport::from_root_datum(&rd, vec![qr(1, 2)], 2).unwrap();
    (rd, s)
}

fn a2() -> (RootDatum, GradedRootSupport) {
    let rd = build_root_datum("A", 2).unwrap();
    let s = GradedRootSupport::from_root_datum(&rd, vec![q(1), q(1)], 3).unwrap();
    (rd, s)
}

#[test]
fn a1_census() {
    let (_, s) = a1();
    let (arr, clans) = enumerate_clans(&s, 1).unwrap();
    assert_eq!(clans.len(), 3);
    let walls: Vec<Q> = arr.hyperplanes.iter().map(|h| &h.r / q(h.a[0])).collect();
    assert_eq!(walls, vec![Q::zero(), qr(1, 2)]);
    let generic: Vec<bool> = clans.iter().map(|c| is_generic(c, &arr, &s)).collect();
    assert_eq!(generic, vec![true, false, true]);
}

/// Alcoves `]k/2, (k+1)/2[` inside `]-2, 2[`, with `w` and `lambda_nu = w (1/4)`.
fn a1_alcoves(rd: &RootDatum) -> Vec<(Q, AffineWeylElement, Q)> {
    (-4i64..4)
        .map(|k| {
            let y = qr(2 * k + 1, 4);
            let w = alcove_of(rd, &[y.clone()]).unwrap();
            let l = weight_of_alcove(rd, &w, &[qr(1, 4)]).unwrap()[0].clone();
            (y, w, l)
        })
        .collect()
}

#[test]
fn negative_alcoves_give_borels() {
    let (rd, s) = a1();
    let (arr, clans) = enumerate_clans(&s, 1).unwrap();
    let mut seen = 0;
    for (y, w, l) in a1_alcoves(&rd) {
        if l >= Q::zero() {
            continue;
        }
        seen += 1;
        let sp = spiral_of_alcove(&s, &rd, &w, 1).unwrap();
        let p1 = sp.piece(1).unwrap().p.clone();
        let b1: Vec<usize> = borel_of_alcove(&rd, &w).into_iter().filter(|&i| s.degree(i) == 1).collect();
        assert_eq!(p1, b1, "alcove at {y}");
        let clan = clan_of_point(&arr, &clans, &[y]).unwrap();
        let b = borel_of_generic_clan(clan, &arr, &s, 1).unwrap();
        assert!(b.certified);
        assert_eq!(p1, b.nilradical_degree_d);
    }
    assert_eq!(seen, 3);
}

#[test]
fn a1_alcove_spirals_are_clan_constant() {
    let (rd, s) = a1();
    let (arr, clans) = enumerate_clans(&s, 1).unwrap();
    let alcoves = a1_alcoves(&rd);
    for (y1, w1, _) in &alcoves {
        for (y2, w2, _) in &alcoves {
            let same = clan_of_point(&arr, &clans, &[y1.clone()]).unwrap() == clan_of_point(&arr, &clans, &[y2.clone()]).unwrap();
            let p = |w: &AffineWeylElement| {
                let sp = spiral_of_alcove(&s, &rd, w, 1).unwrap();
                (sp.piece(1).unwrap().p.clone(), sp.piece(0).unwrap().p.clone())
            };
            if same {
                assert_eq!(p(w1), p(w2));
                let d1 = shift_dim_spiral(&s, &spiral_of_alcove(&s, &rd, w1, 1).unwrap(), 1).unwrap();
                let d2 = shift_dim_spiral(&s, &spiral_of_alcove(&s, &rd, w2, 1).unwrap(), 1).unwrap();
                assert_eq!(d1, d2);
            }
        }
    }
    // the fundamental alcove and ]1/2, 1[ sit in different clans with different p_1
    let f = spiral_of_point(&s, &[qr(1, 4)], 1).unwrap();
    let g = spiral_of_point(&s, &[qr(3, 4)], 1).unwrap();
    assert_ne!(f.piece(1).unwrap().p, g.piece(1).unwrap().p);
}

#[test]
fn a2_clans_are_consistent() {
    let (_, s) = a2();
    let (arr, clans) = enumerate_clans(&s, 1).unwrap();
    assert!(!clans.is_empty());
    for c in &clans {
        assert_eq!(signs_of_point(&arr, &c.witness).unwrap(), c.signs);
        if is_generic(c, &arr, &s) {
            assert!(!c.bounded);
            assert!(borel_of_generic_clan(c, &arr, &s, 1).unwrap().certified);
        }
    }
    // bounded clans are never generic
    assert!(clans.iter().filter(|c| c.bounded).all(|c| !is_generic(c, &arr, &s)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn a2_spirals_are_clan_constant(a in -30i64..30, b in -30i64..30, den in 1i64..9) {
        let (_, s) = a2();
        let (arr, clans) = enumerate_clans(&s, 1).unwrap();
        let y = vec![qr(a, den), qr(b, den)];
        if let Ok(clan) = clan_of_point(&arr, &clans, &y) {
            let here = spiral_of_point(&s, &y, 1).unwrap();
            let there = spiral_of_point(&s, &clan.witness, 1).unwrap();
            prop_assert_eq!(here.pieces, there.pieces);
        }
    }
}
