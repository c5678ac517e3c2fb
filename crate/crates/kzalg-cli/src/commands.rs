use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use kzalg::hecke::{all_passed, sl2_aha_relations, sl2_ddaha_relations, ubar_weight_module, Aha, Ddaha, DunklRep, IdentityCheck, Quadratic};
use kzalg::klr::{check_relations, DemazureSign, KlrContext};
use kzalg::monodromy::{compare_monodromy, kz_module_shape, parse_word, KzSystem, Letter};
use kzalg::quiver::{enumerate_orbits, DimVector, Multisegment};
use kzalg::rational::{fmt_q, parse_q, Q};
use kzalg::rootdata::{alcove_of, build_root_datum, AffineWeylElement, RootDatum};
use kzalg::schur_comb::{complete_sequences, multinomial, par_types, shift_dim_isotropic, shift_dim_parabolic, shift_dim_spiral, sym_par_types};
use kzalg::spirals::{borel_of_generic_clan, clan_of_point, enumerate_clans, is_generic, spiral_of_point, GradedRootSupport, Spiral};

use crate::args::*;
use crate::report::Report;

fn parse_list<T>(flag: &str, s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',')
        .enumerate()
        .map(|(k, x)| f(x.trim()).with_context(|| format!("--{flag}: entry {} ({:?})", k + 1, x.trim())))
        .collect()
}

pub fn parse_rationals(flag: &str, s: &str) -> Result<Vec<Q>> {
    parse_list(flag, s, |x| Ok(parse_q(x)?))
}

pub fn parse_usizes(flag: &str, s: &str) -> Result<Vec<usize>> {
    parse_list(flag, s, |x| x.parse::<usize>().map_err(|_| anyhow!("not a nonnegative integer")))
}

fn parse_i64s(flag: &str, s: &str) -> Result<Vec<i64>> {
    parse_list(flag, s, |x| x.parse::<i64>().map_err(|_| anyhow!("not an integer")))
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| anyhow!("missing --{flag}"))
}

fn qstrs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn datum(a: &DatumArgs) -> Result<RootDatum> {
    Ok(build_root_datum(&a.kind, a.rank)?)
}

pub fn dim_vector(a: &QuiverArgs) -> Result<DimVector> {
    let beta = parse_usizes("beta", required(&a.beta, "beta")?)?;
    if let Some(m) = a.m {
        if m != beta.len() {
            bail!("--beta has {} entries but --m is {m}", beta.len());
        }
    }
    Ok(DimVector::new(beta)?)
}

fn checks_json(c: &[IdentityCheck]) -> Value {
    json!(c.iter().map(|x| json!({"name": x.name, "passed": x.passed})).collect::<Vec<_>>())
}

pub fn roots(a: &RootsArgs) -> Result<Report> {
    let rd = datum(&a.datum)?;
    let rows = rd
        .roots
        .iter()
        .zip(&rd.coroots)
        .enumerate()
        .map(|(i, (r, c))| vec![i.to_string(), format!("{r:?}"), format!("{c:?}"), rd.is_positive(i).to_string()])
        .collect();
    Ok(Report::new("roots", serde_json::to_value(rd.to_json())?)
        .table(&["index", "root", "coroot", "positive"], rows)
        .note(format!("{} roots, Coxeter number {}", rd.num_roots(), rd.coxeter_number())))
}

struct Support {
    support: GradedRootSupport,
    rd: Option<RootDatum>,
    d: i64,
}

fn support(a: &SupportArgs) -> Result<Support> {
    let m = *required(&a.m, "m")?;
    let d = *required(&a.d, "d")?;
    if d == 0 {
        bail!("--d must be nonzero");
    }
    if let Some(res) = &a.residues {
        let residues = parse_i64s("residues", res)?;
        return Ok(Support { support: GradedRootSupport::from_cyclic_quiver(&residues, m)?, rd: None, d });
    }
    let rd = datum(&a.datum)?;
    let theta = parse_rationals("theta", required(&a.theta, "theta")?)?;
    Ok(Support { support: GradedRootSupport::from_root_datum(&rd, theta, m)?, rd: Some(rd), d })
}

fn labels(s: &GradedRootSupport, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| s.labels[i].clone()).collect()
}

pub fn clans(a: &ClansArgs) -> Result<Report> {
    let Support { support: s, d, .. } = support(&a.support)?;
    let (arr, clans) = enumerate_clans(&s, d)?;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (k, c) in clans.iter().enumerate() {
        let generic = is_generic(c, &arr, &s);
        let borel = if generic { Some(borel_of_generic_clan(c, &arr, &s, d)?) } else { None };
        let signs: String = c.signs.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect();
        rows.push(vec![k.to_string(), signs.clone(), qstrs(&c.witness).join(" "), c.bounded.to_string(), generic.to_string(), borel.as_ref().map_or("-".into(), |b| b.certified.to_string())]);
        out.push(json!({
            "signs": c.signs,
            "witness": qstrs(&c.witness),
            "bounded": c.bounded,
            "recession": c.recession,
            "generic": generic,
            "borel": borel.map(|b| json!({
                "direction": b.v,
                "positive_roots": labels(&s, &b.positive_roots),
                "nilradical_degree_d": labels(&s, &b.nilradical_degree_d),
                "u_d": labels(&s, &b.u_d),
                "certified": b.certified,
            })),
        }));
    }
    let walls: Vec<Value> = arr.hyperplanes.iter().map(|h| json!({"root": s.labels[h.root], "normal": h.a, "offset": fmt_q(&h.r), "family": h.family})).collect();
    Ok(Report::new("clans", json!({"m": s.m, "d": d, "theta": qstrs(&s.theta_tilde), "hyperplanes": walls, "clans": out}))
        .table(&["clan", "signs", "witness", "bounded", "generic", "borel_certified"], rows)
        .note(format!("{} hyperplanes, {} clans", arr.hyperplanes.len(), clans.len())))
}

fn spiral_json(s: &GradedRootSupport, sp: &Spiral) -> Value {
    json!({
        "epsilon": sp.epsilon,
        "lambda": qstrs(&sp.lambda),
        "pieces": sp.pieces.iter().map(|p| json!({"n": p.n, "p": labels(s, &p.p), "l": labels(s, &p.l), "u": labels(s, &p.u), "torus": p.torus})).collect::<Vec<_>>(),
    })
}

pub fn spirals(a: &SpiralsArgs) -> Result<Report> {
    let Support { support: s, rd, d } = support(&a.support)?;
    let (y, alcove) = match (&a.point, &a.alcove) {
        (Some(p), None) => (parse_rationals("point", p)?, None),
        (None, Some(w)) => {
            let rd = rd.as_ref().context("--alcove needs a root datum (--type/--rank)")?;
            let word = parse_usizes("alcove", w)?;
            if let Some(bad) = word.iter().find(|&&i| i > rd.rank) {
                bail!("--alcove: reflection index {bad} exceeds the rank");
            }
            let el = AffineWeylElement::from_word(rd, &word);
            (kzalg::rootdata::alcove_point(rd, &el), Some(el))
        }
        _ => bail!("give exactly one of --point and --alcove"),
    };
    let sp = spiral_of_point(&s, &y, d)?;
    let dp = shift_dim_spiral(&s, &sp, d)?;
    let (arr, clans) = enumerate_clans(&s, d)?;
    let clan = clan_of_point(&arr, &clans, &y).ok().map(|c| c.signs.clone());
    let mut extra = json!({});
    if let Some(rd) = &rd {
        let w = alcove.clone().map(Ok).unwrap_or_else(|| alcove_of(rd, &y));
        if let Ok(w) = w {
            let weight = w.act(&rd.alcove_center());
            extra = json!({"alcove_word": w.reduced_word(rd), "lambda_nu": qstrs(&weight)});
        }
    }
    let rows = sp.pieces.iter().map(|p| vec![p.n.to_string(), labels(&s, &p.p).join(" "), labels(&s, &p.l).join(" "), labels(&s, &p.u).join(" "), p.torus.to_string()]).collect();
    Ok(Report::new("spirals", json!({"point": qstrs(&y), "d": d, "spiral": spiral_json(&s, &sp), "shift_dim": dp, "clan_signs": clan, "alcove": extra}))
        .table(&["n", "p", "l", "u", "torus"], rows)
        .note(format!("d_p = {dp}")))
}

fn segments_string(ms: &Multisegment) -> String {
    ms.segments.iter().map(|(&(i, l), &c)| if c == 1 { format!("[{i};{l}]") } else { format!("[{i};{l}]^{c}") }).collect::<Vec<_>>().join(" ")
}

pub fn orbits(a: &QuiverArgs) -> Result<Report> {
    let beta = dim_vector(a)?;
    let os = enumerate_orbits(&beta, a.bound)?;
    let list: Vec<Value> = os
        .iter()
        .map(|ms| {
            json!({
                "segments": ms.segments.iter().map(|(&(i, l), &c)| json!({"start": i, "length": l, "multiplicity": c})).collect::<Vec<_>>(),
                "rank_table": ms.rank_table().table,
            })
        })
        .collect();
    let rows = os.iter().enumerate().map(|(k, ms)| vec![k.to_string(), segments_string(ms)]).collect();
    Ok(Report::new("orbits", json!({"m": beta.m, "beta": beta.beta, "count": os.len(), "orbits": list}))
        .table(&["orbit", "multisegment"], rows)
        .note(format!("{} orbits", os.len())))
}

pub fn partypes(a: &PartypesArgs) -> Result<Report> {
    let beta = dim_vector(&a.quiver)?;
    let seqs = complete_sequences(&beta, a.quiver.bound)?.len();
    let expected = multinomial(&beta.beta);
    let (types, rows): (Vec<Value>, Vec<Vec<String>>) = if a.symplectic {
        sym_par_types(&beta, a.quiver.bound)?
            .into_iter()
            .map(|g| {
                let d = shift_dim_isotropic(&g)?;
                Ok((json!({"parts": g.parts, "shift_dim": d}), vec![format!("{:?}", g.parts), d.to_string()]))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    } else {
        par_types(&beta, a.quiver.bound)?
            .into_iter()
            .map(|g| {
                let d = shift_dim_parabolic(&g);
                (json!({"parts": g.parts, "shift_dim": d}), vec![format!("{:?}", g.parts), d.to_string()])
            })
            .unzip()
    };
    Ok(Report::new(
        "partypes",
        json!({"m": beta.m, "beta": beta.beta, "symplectic": a.symplectic, "sequences": seqs, "multinomial": expected.to_string(), "types": types}),
    )
    .table(&["type", "shift_dim"], rows)
    .note(format!("{seqs} residue sequences, {} types", types.len()))
    .status(seqs as u128 == expected))
}

pub fn klr_check(a: &KlrArgs) -> Result<Report> {
    let beta = dim_vector(&a.quiver)?;
    let ctx = KlrContext::new(beta, a.quiver.bound)?;
    let sign = if a.flipped { DemazureSign::Flipped } else { DemazureSign::Standard };
    let r = check_relations(&ctx, a.degree, sign);
    let rows = r.relations.iter().map(|c| vec![c.name.clone(), c.checked.to_string(), c.passed.to_string(), c.witness.clone().unwrap_or_default()]).collect();
    let ok = r.all_passed();
    Ok(Report::new("klr-check", serde_json::to_value(&r)?)
        .table(&["relation", "checked", "passed", "witness"], rows)
        .note(format!("{} relations, degree <= {}", r.relations.len(), a.degree))
        .status(ok))
}

fn parse_slope(s: &str) -> Result<(i64, i64)> {
    let (d, m) = s.split_once('/').context("--slope must be d/m")?;
    let d: i64 = d.trim().parse().context("--slope: bad numerator")?;
    let m: i64 = m.trim().parse().context("--slope: bad denominator")?;
    if m <= 0 {
        bail!("--slope: denominator must be positive");
    }
    Ok((d, m))
}

pub fn hecke_check(a: &HeckeArgs) -> Result<Report> {
    let seed = a.seed.context("--seed is required for randomized checks")?;
    let rd = datum(&a.datum)?;
    let (d, m) = parse_slope(&a.slope)?;
    let quad = match a.quadratic {
        QuadraticArg::Bernstein => Quadratic::Bernstein,
        QuadraticArg::Split => Quadratic::Split,
    };
    let h = Ddaha::new(rd.clone(), d, m)?;
    let k = Aha::with_slope(rd.clone(), d, m, quad)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 4];
    for _ in 0..a.trials {
        let (x, y, z) = (h.random_elem(&mut rng, 2, 3, 2), h.random_elem(&mut rng, 2, 3, 2), h.random_elem(&mut rng, 2, 3, 2));
        counts[0] += (h.mul(&h.mul(&x, &y), &z) == h.mul(&x, &h.mul(&y, &z))) as usize;
        counts[1] += (h.mul(&x, &y) == h.mul_alt(&x, &y)) as usize;
        let (x, y, z) = (k.random_elem(&mut rng, 2, 1), k.random_elem(&mut rng, 2, 1), k.random_elem(&mut rng, 2, 1));
        counts[2] += (k.mul(&k.mul(&x, &y), &z) == k.mul(&x, &k.mul(&y, &z))) as usize;
        counts[3] += (k.mul(&x, &y) == k.mul_alt(&x, &y)) as usize;
    }
    let names = ["ddaha associativity", "ddaha word independence", "aha associativity", "aha word independence"];
    let mut rows: Vec<Vec<String>> = names.iter().zip(counts).map(|(n, c)| vec![n.to_string(), format!("{c}/{}", a.trials), (c == a.trials).to_string()]).collect();
    let mut ok = counts.iter().all(|&c| c == a.trials);
    let mut sl2 = Value::Null;
    if rd.rank == 1 {
        let u = h.c.clone();
        let dd = sl2_ddaha_relations(&u)?;
        let ah = sl2_aha_relations(&u, quad)?;
        let du = DunklRep::new(u.clone()).check_relations();
        for c in dd.iter().chain(&ah).chain(&du) {
            rows.push(vec![c.name.clone(), "exact".into(), c.passed.to_string()]);
        }
        ok &= all_passed(&dd) && all_passed(&ah) && all_passed(&du);
        sl2 = json!({"u": fmt_q(&u), "ddaha": checks_json(&dd), "aha": checks_json(&ah), "dunkl": checks_json(&du)});
    }
    let result = json!({
        "type": rd.label, "rank": rd.rank, "slope": format!("{d}/{m}"), "c": fmt_q(&h.c), "quadratic": format!("{quad:?}").to_lowercase(),
        "seed": seed, "trials": a.trials,
        "passed": names.iter().zip(counts).map(|(n, c)| json!({"check": n, "passed": c})).collect::<Vec<_>>(),
        "sl2": sl2,
    });
    Ok(Report::new("hecke-check", result).table(&["check", "trials", "passed"], rows).status(ok))
}

pub fn monodromy(a: &MonodromyArgs) -> Result<Report> {
    let lambda = parse_q(required(&a.lambda, "lambda")?).context("--lambda")?;
    let u = parse_q(&a.u).context("--u")?;
    let module = ubar_weight_module(&lambda, a.order, &u)?;
    let ode_tol = (a.tol * 1e-4).max(1e-13);
    let cmp = compare_monodromy(&module, a.tol, ode_tol)?;
    let cher = kzalg::monodromy::cherednik_operators(&module)?;
    let sys = KzSystem::new(&module, ode_tol)?;
    let word: Vec<Letter> = match a.path {
        PathArg::Tau => vec![Letter::Tau],
        PathArg::Gamma => vec![Letter::Gamma],
        PathArg::Word => parse_word(required(&a.word, "word")?)?,
    };
    let mon = sys.word(&word)?;
    let shape = kz_module_shape(&lambda, a.order, &u).ok();
    let ok = cmp.aha.passed && cmp.group.passed && cmp.ode_aha.passed && cmp.similarity.passed;
    let mat = |m: &kzalg::monodromy::CMat| -> Value {
        json!((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
    };
    let rows = vec![
        vec!["closed form quadratic".into(), format!("{:.3e}", cmp.aha.quadratic)],
        vec!["closed form T X^-1 T - X".into(), format!("{:.3e}", cmp.aha.braid)],
        vec!["ode tau gamma tau - gamma^-1".into(), format!("{:.3e}", cmp.group.braid)],
        vec!["ode quadratic".into(), format!("{:.3e}", cmp.group.quadratic)],
        vec!["similarity residual".into(), format!("{:.3e}", cmp.similarity.residual)],
        vec!["similarity condition".into(), format!("{:.3e}", cmp.similarity.condition)],
    ];
    let result = json!({
        "lambda": fmt_q(&lambda), "u": fmt_q(&u), "order": a.order, "tol": a.tol,
        "path": word.iter().map(|l| format!("{l:?}")).collect::<Vec<_>>(),
        "monodromy": mat(&mon),
        "cherednik": {"x": mat(&cher.x), "t1": mat(&cher.t1)},
        "closed_form_relations": cmp.aha,
        "ode_relations": cmp.group,
        "ode_hecke_relations": cmp.ode_aha,
        "similarity": {"nullity": cmp.similarity.nullity, "residual": cmp.similarity.residual, "condition": cmp.similarity.condition, "passed": cmp.similarity.passed},
        "shape": shape,
    });
    Ok(Report::new("monodromy", result).table(&["quantity", "value"], rows).status(ok))
}
