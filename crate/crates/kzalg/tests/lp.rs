use kzalg::lp::*;
use kzalg::rational::q;
use proptest::prelude::*;

fn rel(k: u8) -> Rel {
    match k {
        0 => Rel::Ge,
        1 => Rel::Gt,
        _ => Rel::Eq,
    }
}

fn system() -> impl Strategy<Value = (usize, Vec<Constraint>)> {
    (1usize..=3).prop_flat_map(|n| {
        let c = (prop::collection::vec(-3i64..=3, n), 0u8..3, -4i64..=4).prop_map(|(a, r, b)| Constraint::new(a.into_iter().map(q).collect(), rel(if r == 2 && b % 3 != 0 { 0 } else { r }), q(b)));
        (Just(n), prop::collection::vec(c, 0..7))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn elimination_and_simplex_agree((n, cons) in system()) {
        let a = feasible_fm(&cons, n);
        let b = feasible_simplex(&cons, n);
        prop_assert_eq!(a.is_some(), b.is_some());
        if let Some(x) = a {
            prop_assert!(satisfies(&cons, &x));
        }
        if let Some(x) = b {
            prop_assert!(satisfies(&cons, &x));
        }
    }
}

#[test]
fn strict_versus_closed() {
    // x > 0, x < 0 is empty; x >= 0, -x >= 0 is the origin
    let one = vec![q(1)];
    let neg = vec![q(-1)];
    let open = [Constraint::new(one.clone(), Rel::Gt, q(0)), Constraint::new(neg.clone(), Rel::Gt, q(0))];
    assert!(feasible_fm(&open, 1).is_none() && feasible_simplex(&open, 1).is_none());
    let closed = [Constraint::new(one, Rel::Ge, q(0)), Constraint::new(neg, Rel::Ge, q(0))];
    assert_eq!(feasible_simplex(&closed, 1), Some(vec![q(0)]));
}
