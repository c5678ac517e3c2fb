use kzalg::rational::{qr, Q};
use kzalg::rootdata::*;
use num_traits::Zero;
use proptest::prelude::*;

fn data() -> Vec<RootDatum> {
    [("A", 1), ("A", 2), ("C", 2), ("A", 3)].iter().map(|(t, r)| build_root_datum(t, *r).unwrap()).collect()
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..4).prop_flat_map(|k| {
        let r = [1usize, 2, 2, 3][k];
        (Just(k), prop::collection::vec(0..=r, 0..9))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_words_represent_the_element((k, word) in word_strategy()) {
        let rd = &data()[k];
        let w = AffineWeylElement::from_word(rd, &word);
        let red = w.reduced_word(rd);
        prop_assert_eq!(AffineWeylElement::from_word(rd, &red), w.clone());
        prop_assert!(red.len() <= word.len());
        prop_assert_eq!(red.len() % 2, word.len() % 2);
        prop_assert_eq!(w.length(rd), red.len());
        prop_assert_eq!(w.reduced_word_by(rd, true).len(), red.len());
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn alcove_walk_inverts_alcove_point((k, word) in word_strategy()) {
        let rd = &data()[k];
        let w = AffineWeylElement::from_word(rd, &word);
        let y = alcove_point(rd, &w);
        prop_assert_eq!(alcove_of(rd, &y).unwrap(), w.clone());
        // w y lies in the fundamental alcove
        let c = w.act(&y);
        for i in 0..=rd.rank {
            prop_assert!(rd.simple_affine_value(i, &c) > Q::zero());
        }
    }

    #[test]
    fn exp_is_invariant_under_translations((k, word) in word_strategy(), num in -20i64..20, den in 1i64..7) {
        let rd = &data()[k];
        let lambda: Vec<Q> = (0..rd.rank).map(|i| qr(num + i as i64, den)).collect();
        let w = AffineWeylElement::from_word(rd, &word);
        let moved = w.act(&lambda);
        prop_assert_eq!(exp_map(&moved), exp_map(&lambda).act(&w));
    }
}

#[test]
fn weyl_group_acts_on_roots() {
    for rd in data() {
        for w in rd.weyl_group() {
            for a in &rd.roots {
                // the functional alpha o w^{-1} is again a root
                let f = rd.functional(a);
                let winv = w.inverse();
                let img: Vec<i64> = (0..rd.rank).map(|j| (0..rd.rank).map(|k| f[k] * winv.finite[k][j]).sum()).collect();
                assert!(rd.roots.iter().any(|b| rd.functional(b) == img));
            }
        }
    }
}

#[test]
fn alcove_examples() {
    let rd = build_root_datum("A", 1).unwrap();
    let s0 = AffineWeylElement::simple(&rd, 0);
    let s1 = AffineWeylElement::simple(&rd, 1);
    assert_eq!(weight_of_alcove(&rd, &AffineWeylElement::identity(1), &[qr(1, 4)]).unwrap(), vec![qr(1, 4)]);
    assert_eq!(weight_of_alcove(&rd, &s1, &[qr(1, 4)]).unwrap(), vec![qr(-1, 4)]);
    assert_eq!(weight_of_alcove(&rd, &s0.mul(&s1), &[qr(1, 4)]).unwrap(), vec![qr(5, 4)]);
    assert!(affine_action(&rd, &s0, &[qr(1, 4), qr(1, 4)]).is_err());
    // every alcove ]k/2, (k+1)/2[
    for k in -6i64..6 {
        let y = qr(2 * k + 1, 4);
        let w = alcove_of(&rd, &[y.clone()]).unwrap();
        let c = w.act(&[y]);
        assert!(c[0] > Q::zero() && c[0] < qr(1, 2));
    }
}
