use kzalg::hecke::*;
use kzalg::rational::qr;
use kzalg::rootdata::{AffineWeylElement, CartanType, RootDatum};
use kzalg::Q;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a(r: usize) -> RootDatum {
    RootDatum::new(&CartanType::A, r).unwrap()
}

#[test]
fn ddaha_associative_and_word_independent() {
    for r in [1, 2] {
        let h = Ddaha::new(a(r), 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7 + r as u64);
        for _ in 0..100 {
            let x = h.random_elem(&mut rng, 2, 3, 2);
            let y = h.random_elem(&mut rng, 2, 3, 2);
            let z = h.random_elem(&mut rng, 2, 3, 2);
            assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
            assert_eq!(h.mul(&x, &y), h.mul_alt(&x, &y));
        }
    }
}

#[test]
fn ddaha_longest_element_words() {
    let rd = a(2);
    let h = Ddaha::new(rd.clone(), 1, 2).unwrap();
    let w0 = AffineWeylElement::from_word(&rd, &[1, 2, 1]);
    assert_eq!(w0, AffineWeylElement::from_word(&rd, &[2, 1, 2]));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let f = random_qpoly(&mut rng, 2, 3);
        assert_eq!(h.push(&f, &[1, 2, 1]), h.push(&f, &[2, 1, 2]));
    }
}

#[test]
fn ddaha_group_and_polynomial_subalgebras() {
    let rd = a(2);
    let h = Ddaha::new(rd.clone(), 2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..=2 {
        let s = h.group(AffineWeylElement::simple(&rd, i));
        assert_eq!(h.mul(&s, &s), h.one());
        let f = random_qpoly(&mut rng, 2, 3);
        let g = random_qpoly(&mut rng, 2, 3);
        assert_eq!(h.mul(&h.poly(f.clone()), &h.poly(g.clone())), h.poly(f.mul(&g)));
        // s f - (s f) s = c (f - s f) / a
        let lhs = h.sub(&h.mul(&s, &h.poly(f.clone())), &h.mul(&h.poly(h.reflect_poly(i, &f)), &s));
        assert_eq!(lhs, h.poly(h.demazure(i, &f).unwrap().scale(&h.c)));
    }
}

#[test]
fn aha_associative_and_word_independent() {
    for quad in [Quadratic::Bernstein, Quadratic::Split] {
        for r in [1, 2] {
            let k = Aha::with_slope(a(r), 1, 3, quad).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(19 + r as u64);
            for _ in 0..100 {
                let x = k.random_elem(&mut rng, 2, 1);
                let y = k.random_elem(&mut rng, 2, 1);
                let z = k.random_elem(&mut rng, 2, 1);
                assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
                assert_eq!(k.mul(&x, &y), k.mul_alt(&x, &y));
            }
        }
    }
}

#[test]
fn aha_braid_and_lattice() {
    let k = Aha::with_slope(a(2), 1, 2, Quadratic::Bernstein).unwrap();
    let (t1, t2) = (k.t(1), k.t(2));
    assert_eq!(k.mul(&k.mul(&t1, &t2), &t1), k.mul(&k.mul(&t2, &t1), &t2));
    assert_eq!(k.mul(&k.x(&[1, -1]), &k.x(&[2, 3])), k.x(&[3, 2]));
}

#[test]
fn sl2_relations_for_parameters() {
    for u in [qr(-1, 2), qr(1, 3), Q::zero()] {
        assert!(all_passed(&sl2_ddaha_relations(&u).unwrap()));
        assert!(all_passed(&DunklRep::new(u.clone()).check_relations()));
        for quad in [Quadratic::Bernstein, Quadratic::Split] {
            assert!(all_passed(&sl2_aha_relations(&u, quad).unwrap()));
        }
    }
}

#[test]
fn dunkl_at_zero_is_euler() {
    let d = DunklRep::new(Q::zero());
    for f in DunklRep::test_functions() {
        assert_eq!(d.d(&f), f.euler());
    }
}

#[test]
fn dunkl_numeric_agrees() {
    let u = qr(1, 3);
    let d = DunklRep::new(u);
    let z0 = num_complex::Complex64::new(0.3, 0.7);
    let h = 1e-5;
    for f in DunklRep::test_functions() {
        let deriv = (f.eval(z0 + h) - f.eval(z0 - h)) / (2.0 * h);
        let s1 = |z: num_complex::Complex64| f.eval(1.0 / z);
        let expect = z0 * deriv - (1.0 / 3.0) * (f.eval(z0) - s1(z0)) / (1.0 - 1.0 / z0) + f.eval(z0) / 6.0;
        assert!((d.d(&f).eval(z0) - expect).norm() < 1e-5 * (1.0 + expect.norm()));
    }
}

#[test]
fn ubar_weight_gate() {
    for lambda in [qr(-1, 4), qr(-3, 4), qr(3, 4), qr(1, 4)] {
        for n in 1..=3 {
            let m = ubar_weight_module(&lambda, n, &qr(-1, 2)).unwrap();
            assert_eq!(m.char_poly(), weight_char_poly(&lambda, &-lambda.clone(), n));
        }
    }
}
