//! Invariant suites behind `--self-test`, one per subcommand, with fixed seeds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use kzalg::hecke::{all_passed, sl2_aha_relations, sl2_ddaha_relations, ubar_weight_module, Aha, Ddaha, DunklRep, Quadratic};
use kzalg::klr::{check_relations, DemazureSign, KlrContext};
use kzalg::monodromy::{calibration_residual, compare_monodromy, kz_module_shape, Shape};
use kzalg::quiver::*;
use kzalg::rational::{q, qr, Q};
use kzalg::rootdata::*;
use kzalg::schur_comb::*;
use kzalg::spirals::*;

use crate::args::Command;
use crate::report::Report;

const SEED: u64 = 20240101;

type Check = (String, bool);

fn check(name: &str, ok: bool) -> Check {
    (name.to_string(), ok)
}

fn a1() -> (RootDatum, GradedRootSupport) {
    let rd = build_root_datum("A", 1).expect("A1");
    let s = GradedRootSupport::from_root_datum(&rd, vec![qr(1, 2)], 2).expect("A1 grading");
    (rd, s)
}

fn roots() -> Vec<Check> {
    let counts = [("A", 1, 2), ("A", 2, 6), ("A", 3, 12), ("C", 2, 8), ("C", 3, 18)]
        .iter()
        .all(|&(t, r, n)| build_root_datum(t, r).map(|rd| rd.num_roots() == n).unwrap_or(false));
    let pairing = [("A", 3), ("C", 3)].iter().all(|&(t, r)| {
        let rd = build_root_datum(t, r).expect("datum");
        rd.roots.iter().zip(&rd.coroots).all(|(a, c)| rd.pairing(a, c) == 2)
    });
    let rd = build_root_datum("A", 2).expect("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let words = (0..200).all(|_| {
        let word: Vec<usize> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..=2)).collect();
        let w = AffineWeylElement::from_word(&rd, &word);
        let red = w.reduced_word(&rd);
        AffineWeylElement::from_word(&rd, &red) == w && alcove_of(&rd, &alcove_point(&rd, &w)).ok() == Some(w)
    });
    let (a, _) = a1();
    let s0 = AffineWeylElement::simple(&a, 0);
    let s1 = AffineWeylElement::simple(&a, 1);
    let examples = s0.act(&[qr(1, 4)]) == vec![qr(3, 4)] && s0.mul(&s1).act(&[qr(1, 4)]) == vec![qr(5, 4)] && alcove_of(&a, &[qr(1, 2)]).is_err();
    vec![check("root counts", counts), check("root-coroot pairing is 2", pairing), check("reduced words and alcove walk", words), check("A1 examples", examples)]
}

fn clans() -> Vec<Check> {
    let (_, s) = a1();
    let Ok((arr, cl)) = enumerate_clans(&s, 1) else { return vec![check("A1 clans", false)] };
    let census = cl.len() == 3 && cl.iter().map(|c| is_generic(c, &arr, &s)).collect::<Vec<_>>() == vec![true, false, true];
    let rd = build_root_datum("A", 2).expect("A2");
    let s2 = GradedRootSupport::from_root_datum(&rd, vec![q(1), q(1)], 3).expect("A2 grading");
    let a2 = enumerate_clans(&s2, 1).map(|(arr, cl)| {
        cl.iter().all(|c| signs_of_point(&arr, &c.witness).ok().as_ref() == Some(&c.signs) && (!is_generic(c, &arr, &s2) || borel_of_generic_clan(c, &arr, &s2, 1).map(|b| b.certified).unwrap_or(false)))
    });
    vec![check("A1 has three clans, the bounded one non-generic", census), check("A2 witnesses and Borels", a2.unwrap_or(false))]
}

fn spirals() -> Vec<Check> {
    let (rd, s) = a1();
    let Ok((arr, cl)) = enumerate_clans(&s, 1) else { return vec![check("A1 clans", false)] };
    let mut borel = true;
    let mut constant = true;
    let mut seen: Vec<(Vec<i8>, Vec<usize>, Vec<usize>)> = Vec::new();
    for k in -4i64..4 {
        let y = qr(2 * k + 1, 4);
        let (Ok(w), Ok(clan)) = (alcove_of(&rd, &[y.clone()]), clan_of_point(&arr, &cl, &[y.clone()])) else { return vec![check("alcoves", false)] };
        let Ok(sp) = spiral_of_alcove(&s, &rd, &w, 1) else { return vec![check("spirals", false)] };
        let p1 = sp.piece(1).map(|p| p.p.clone()).unwrap_or_default();
        let p0 = sp.piece(0).map(|p| p.p.clone()).unwrap_or_default();
        if w.act(&[qr(1, 4)])[0] < Q::from_integer(0.into()) {
            let b1: Vec<usize> = borel_of_alcove(&rd, &w).into_iter().filter(|&i| s.degree(i) == 1).collect();
            borel &= p1 == b1;
        }
        for (signs, q1, q0) in &seen {
            if *signs == clan.signs {
                constant &= *q1 == p1 && *q0 == p0;
            }
        }
        seen.push((clan.signs.clone(), p1, p0));
    }
    vec![check("p_1 = b_1 on alcoves with negative weight", borel), check("spirals are clan-constant", constant)]
}

fn orbits() -> Vec<Check> {
    let beta = DimVector::new(vec![1, 1]).expect("beta");
    let count = enumerate_orbits(&beta, 12).map(|o| o.len() == 3).unwrap_or(false);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let betas = [vec![2, 1], vec![2, 2], vec![1, 1, 1]];
    let conj = (0..100).all(|t| {
        let beta = DimVector::new(betas[t % 3].clone()).expect("beta");
        let os = enumerate_orbits(&beta, 12).expect("small");
        let (i, j) = (rng.gen_range(0..os.len()), rng.gen_range(0..os.len()));
        let a = random_conjugate(&os[i].canonical_rep(), &mut rng);
        let b = random_conjugate(&os[j].canonical_rep(), &mut rng);
        same_orbit(&a, &b).ok() == Some(i == j)
    });
    let split = [vec![2, 2], vec![2, 1, 0, 1], vec![0, 1, 2, 1]].iter().all(|b| {
        let beta = DimVector::new(b.clone()).expect("beta");
        (0..10).all(|_| {
            random_symplectic_nilrep(&beta, &mut rng)
                .and_then(|rep| lagrangian_splitting(&rep).map(|sp| verify_splitting(&rep, &sp).ok()))
                .unwrap_or(false)
        })
    });
    vec![check("three orbits for (1,1)", count), check("rank tables separate orbits", conj), check("Lagrangian splittings", split)]
}

fn partypes() -> Vec<Check> {
    let dv = |b: Vec<usize>| DimVector::new(b).expect("beta");
    let seqs = [vec![1, 1], vec![2, 1], vec![2, 2, 1], vec![3, 0, 2]]
        .iter()
        .all(|b| complete_sequences(&dv(b.clone()), 10).map(|s| s.len() as u128 == multinomial(b)).unwrap_or(false));
    let par = par_types(&dv(vec![1, 1]), 10).map(|t| t.len() == 3).unwrap_or(false);
    let sym = sym_par_types(&dv(vec![2, 2]), 10).map(|t| t.len() == 3).unwrap_or(false);
    let blocks = par_types(&dv(vec![2, 1, 1]), 10).map(|ts| ts.iter().all(|g| BlockModel::of_type(g).shift_dim() == shift_dim_parabolic(g))).unwrap_or(false);
    vec![check("sequence counts are multinomial", seqs), check("|Par((1,1))| = 3", par), check("|sym Par((2,2))| = 3", sym), check("block model agrees with the closed formula", blocks)]
}

fn klr() -> Vec<Check> {
    let ctx = |b: Vec<usize>| KlrContext::new(DimVector::new(b).expect("beta"), 6).expect("context");
    let std = [vec![1, 1], vec![2, 1], vec![1, 1, 1]].into_iter().all(|b| check_relations(&ctx(b), 3, DemazureSign::Standard).all_passed());
    let neg = !check_relations(&ctx(vec![2, 1]), 2, DemazureSign::Flipped).all_passed();
    vec![check("relations hold at degree <= 3", std), check("flipped sign fails", neg)]
}

fn hecke() -> Vec<Check> {
    let sl2 = [qr(-1, 2), qr(1, 3), Q::from_integer(0.into())].iter().all(|u| {
        sl2_ddaha_relations(u).map(|c| all_passed(&c)).unwrap_or(false)
            && all_passed(&DunklRep::new(u.clone()).check_relations())
            && [Quadratic::Bernstein, Quadratic::Split].into_iter().all(|qd| sl2_aha_relations(u, qd).map(|c| all_passed(&c)).unwrap_or(false))
    });
    let rd = build_root_datum("A", 2).expect("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let h = Ddaha::new(rd.clone(), 1, 3).expect("dDAHA");
    let k = Aha::with_slope(rd, 1, 3, Quadratic::Bernstein).expect("AHA");
    let assoc = (0..10).all(|_| {
        let (x, y, z) = (h.random_elem(&mut rng, 2, 3, 2), h.random_elem(&mut rng, 2, 3, 2), h.random_elem(&mut rng, 2, 3, 2));
        let (a, b, c) = (k.random_elem(&mut rng, 2, 1), k.random_elem(&mut rng, 2, 1), k.random_elem(&mut rng, 2, 1));
        h.mul(&h.mul(&x, &y), &z) == h.mul(&x, &h.mul(&y, &z)) && k.mul(&k.mul(&a, &b), &c) == k.mul(&a, &k.mul(&b, &c)) && h.mul(&x, &y) == h.mul_alt(&x, &y)
    });
    vec![check("SL2 dDAHA, AHA and Dunkl relations", sl2), check("A2 associativity", assoc)]
}

fn monodromy() -> Vec<Check> {
    let u = qr(-1, 2);
    let cmp = [qr(-1, 4), qr(3, 4)].iter().all(|l| {
        ubar_weight_module(l, 1, &u)
            .and_then(|m| compare_monodromy(&m, 1e-6, 1e-12))
            .map(|c| c.aha.passed && c.group.passed && c.similarity.passed)
            .unwrap_or(false)
    });
    let cal = calibration_residual(&qr(-1, 4), 2, 1e-12).map(|r| r < 1e-8).unwrap_or(false);
    let shapes = [(qr(-1, 4), Shape::CyclicP), (qr(3, 4), Shape::CyclicPInverse), (qr(1, 4), Shape::NonCyclicFlagged)]
        .iter()
        .all(|(l, s)| kz_module_shape(l, 1, &u).map(|r| &r.shape == s).unwrap_or(false));
    vec![check("closed form matches ODE monodromy", cmp), check("u = 0 loop is exp(-2 pi i x)", cal), check("cyclicity classification", shapes)]
}

pub fn run(cmd: &Command) -> Report {
    let checks = match cmd {
        Command::Roots(_) => roots(),
        Command::Clans(_) => clans(),
        Command::Spirals(_) => spirals(),
        Command::Orbits(_) => orbits(),
        Command::Partypes(_) => partypes(),
        Command::KlrCheck(_) => klr(),
        Command::HeckeCheck(_) => hecke(),
        Command::Monodromy(_) => monodromy(),
    };
    let ok = checks.iter().all(|c| c.1);
    let rows = checks.iter().map(|(n, p)| vec![n.clone(), p.to_string()]).collect();
    let result = json!({"self_test": true, "checks": checks.iter().map(|(n, p)| json!({"name": n, "passed": p})).collect::<Vec<_>>()});
    Report::new(cmd.name(), result).table(&["check", "passed"], rows).status(ok)
}
