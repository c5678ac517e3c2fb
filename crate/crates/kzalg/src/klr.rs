//! The quiver Hecke (KLR) algebra of the cyclic quiver with deformation parameter `hbar`:
//! its faithful polynomial representation, relation checks, a normal-form engine for
//! products, induced modules `P(gamma)` and their homomorphism spaces.
//!
//! Polynomials live in `Q[X_1, ..., X_n, hbar]`; variable `k` is `X_{k+1}` and variable `n` is `hbar`.
//! Positions `t` and `k` are 0-based. Degrees are counted with `deg X = deg hbar = 1`, under which
//! `r_t e(nu)` has degree `-1` if `nu_t = nu_{t+1}` and `[nu_t + 1 = nu_{t+1}]` otherwise.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::QPoly;
use crate::quiver::DimVector;
use crate::rational::Q;
use crate::schur_comb::{complete_sequences, ParTypeA};

pub const DEFAULT_KLR_BOUND: usize = 6;

pub type Seq = Vec<usize>;
pub type Perm = Vec<usize>;
/// Element `sum_nu f_nu(X) 1(nu)` of the polynomial representation.
pub type PolyVec = BTreeMap<Seq, QPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlrContext {
    pub m: usize,
    pub beta: DimVector,
    pub n: usize,
    pub seqs: Vec<Seq>,
}

impl KlrContext {
    pub fn new(beta: DimVector, bound: usize) -> Result<Self> {
        if beta.m < 2 {
            return Err(Error::Invalid("the cyclic quiver needs m >= 2".into()));
        }
        let seqs = complete_sequences(&beta, bound)?;
        Ok(KlrContext { m: beta.m, n: beta.total(), beta, seqs })
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn x(&self, k: usize) -> QPoly {
        QPoly::var(self.nvars(), k)
    }

    pub fn hbar(&self) -> QPoly {
        QPoly::var(self.nvars(), self.n)
    }

    pub fn one(&self) -> QPoly {
        QPoly::one(self.nvars())
    }

    pub fn zero(&self) -> QPoly {
        QPoly::zero(self.nvars())
    }

    /// `Q_{i,j}(x, y)`.
    pub fn q_poly(&self, i: usize, j: usize, x: &QPoly, y: &QPoly) -> QPoly {
        q_matrix_eval(self.m, i, j, x, y, &self.hbar())
    }

    /// Right side of the deformed braid relation
    /// `(r_{t+1} r_t r_{t+1} - r_t r_{t+1} r_t) e(nu)`.
    pub fn braid_rhs(&self, nu: &[usize], t: usize) -> QPoly {
        if nu[t] != nu[t + 2] {
            return self.zero();
        }
        let f = self.q_poly(nu[t], nu[t + 1], &self.x(t), &self.x(t + 1));
        divided_difference(&f, t, t + 2)
    }

    /// Degree of `r_t e(nu)`.
    pub fn deg_r(&self, t: usize, nu: &[usize]) -> i32 {
        if nu[t] == nu[t + 1] {
            -1
        } else {
            i32::from((nu[t] + 1) % self.m == nu[t + 1])
        }
    }

    /// All monomials in `X_1..X_n, hbar` of total degree at most `d`.
    pub fn monomials(&self, d: usize) -> Vec<Vec<i32>> {
        monomials_upto(self.nvars(), d)
    }
}

pub fn monomials_upto(nv: usize, d: usize) -> Vec<Vec<i32>> {
    fn rec(nv: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == nv {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(nv, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nv, d as i32, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<i32>(), std::cmp::Reverse(e.clone())));
    out
}

pub fn q_matrix_eval(m: usize, i: usize, j: usize, x: &QPoly, y: &QPoly, hbar: &QPoly) -> QPoly {
    let nv = x.nvars;
    if i % m == j % m {
        return QPoly::zero(nv);
    }
    let mut f = QPoly::one(nv);
    if i % m == (j + 1) % m {
        f = f.mul(&x.sub(y).add(hbar));
    }
    if (i + 1) % m == j % m {
        f = f.mul(&y.sub(x).add(hbar));
    }
    f
}

/// `Q_{i,j}` as a polynomial in `(x, y, hbar)`.
pub fn q_matrix(m: usize, i: usize, j: usize) -> QPoly {
    q_matrix_eval(m, i, j, &QPoly::var(3, 0), &QPoly::var(3, 1), &QPoly::var(3, 2))
}

/// `(f - s_{ab} f) / (X_a - X_b)` where `s_{ab}` exchanges `X_a` and `X_b`.
pub fn divided_difference(f: &QPoly, a: usize, b: usize) -> QPoly {
    let nv = f.nvars;
    let mut out = QPoly::zero(nv);
    for (e, c) in &f.terms {
        let (p, r) = (e[a], e[b]);
        if p == r {
            continue;
        }
        let (lo, k, sign) = if p > r { (r, p - r, Q::one()) } else { (p, r - p, -Q::one()) };
        for i in 0..k {
            let mut ne = e.clone();
            ne[a] = lo + i;
            ne[b] = lo + k - 1 - i;
            out.add_term(ne, c * &sign);
        }
    }
    out
}

/// Sign convention for `r_t` on `1(nu)` with `nu_t = nu_{t+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DemazureSign {
    /// `r_t f = (f - s_t f) / (X_{t+1} - X_t)`.
    Standard,
    /// `r_t f = (f - s_t f) / (X_t - X_{t+1})`, kept as a negative control.
    Flipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    E(Seq),
    X(usize),
    R(usize),
}

pub fn swap(nu: &[usize], t: usize) -> Seq {
    let mut v = nu.to_vec();
    v.swap(t, t + 1);
    v
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, QPoly>, k: K, p: QPoly) {
    if p.ris_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(e) => {
            *e = e.add(&p);
            if e.ris_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, p);
        }
    }
}

/// The polynomial representation `P(beta) = (+)_nu Q[X, hbar] 1(nu)`.
#[derive(Clone, Debug)]
pub struct PolyRep {
    pub ctx: KlrContext,
    pub sign: DemazureSign,
}

impl PolyRep {
    pub fn new(ctx: KlrContext, sign: DemazureSign) -> Self {
        PolyRep { ctx, sign }
    }

    pub fn r_single(&self, t: usize, nu: &[usize], f: &QPoly) -> (Seq, QPoly) {
        if nu[t] == nu[t + 1] {
            let d = divided_difference(f, t, t + 1);
            let g = match self.sign {
                DemazureSign::Standard => d.neg(),
                DemazureSign::Flipped => d,
            };
            (nu.to_vec(), g)
        } else {
            let s = f.swap_vars(t, t + 1);
            let g = if (nu[t] + 1) % self.ctx.m == nu[t + 1] { self.ctx.x(t).sub(&self.ctx.x(t + 1)).add(&self.ctx.hbar()).mul(&s) } else { s };
            (swap(nu, t), g)
        }
    }

    pub fn act(&self, g: &Gen, v: &PolyVec) -> PolyVec {
        let mut out = BTreeMap::new();
        for (nu, f) in v {
            match g {
                Gen::E(mu) => {
                    if mu == nu {
                        add_into(&mut out, nu.clone(), f.clone());
                    }
                }
                Gen::X(k) => add_into(&mut out, nu.clone(), self.ctx.x(*k).mul(f)),
                Gen::R(t) => {
                    let (mu, h) = self.r_single(*t, nu, f);
                    add_into(&mut out, mu, h);
                }
            }
        }
        out
    }

    /// Applies `g_1 g_2 ... g_k` (rightmost first).
    pub fn act_word(&self, word: &[Gen], v: &PolyVec) -> PolyVec {
        word.iter().rev().fold(v.clone(), |acc, g| self.act(g, &acc))
    }

    pub fn mul_poly(&self, p: &QPoly, v: &PolyVec) -> PolyVec {
        let mut out = BTreeMap::new();
        for (nu, f) in v {
            add_into(&mut out, nu.clone(), p.mul(f));
        }
        out
    }
}

pub fn sub_vec(a: &PolyVec, b: &PolyVec) -> PolyVec {
    let mut out = a.clone();
    for (k, p) in b {
        add_into(&mut out, k.clone(), p.neg());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub m: usize,
    pub beta: Vec<usize>,
    pub degree: usize,
    pub sign: DemazureSign,
    pub relations: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

fn vec_string(v: &PolyVec, ctx: &KlrContext) -> String {
    let names: Vec<String> = (1..=ctx.n).map(|k| format!("X{k}")).chain(std::iter::once("h".to_string())).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    v.iter().map(|(nu, f)| format!("{}*1{:?}", f.display(&names), nu)).collect::<Vec<_>>().join(" + ")
}

/// Every defining relation, applied to `X^a 1(nu)` for all `nu` and all monomials of degree `<= d`.
pub fn check_relations(ctx: &KlrContext, d: usize, sign: DemazureSign) -> RelationReport {
    let rep = PolyRep::new(ctx.clone(), sign);
    let n = ctx.n;
    let monos = ctx.monomials(d);
    type Rel<'a> = (String, Box<dyn Fn(&Seq, &QPoly) -> PolyVec + Sync + 'a>);
    let mut rels: Vec<Rel> = Vec::new();
    let rep_ref = &rep;
    let single = |nu: &Seq, f: &QPoly| -> PolyVec { BTreeMap::from([(nu.clone(), f.clone())]) };
    rels.push((
        "idempotents orthogonal".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for a in &ctx.seqs {
                for b in &ctx.seqs {
                    let lhs = rep_ref.act_word(&[Gen::E(a.clone()), Gen::E(b.clone())], &v);
                    let rhs = if a == b { rep_ref.act(&Gen::E(a.clone()), &v) } else { BTreeMap::new() };
                    let res = sub_vec(&lhs, &rhs);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "idempotents sum to one".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            let mut s = BTreeMap::new();
            for a in &ctx.seqs {
                for (k, p) in rep_ref.act(&Gen::E(a.clone()), &v) {
                    add_into(&mut s, k, p);
                }
            }
            sub_vec(&s, &v)
        }),
    ));
    rels.push((
        "x commute with idempotents".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for k in 0..n {
                for a in &ctx.seqs {
                    let l = rep_ref.act_word(&[Gen::X(k), Gen::E(a.clone())], &v);
                    let r = rep_ref.act_word(&[Gen::E(a.clone()), Gen::X(k)], &v);
                    let res = sub_vec(&l, &r);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "r_t e(nu) = e(s_t nu) r_t".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(1) {
                for a in &ctx.seqs {
                    let l = rep_ref.act_word(&[Gen::R(t), Gen::E(a.clone())], &v);
                    let r = rep_ref.act_word(&[Gen::E(swap(a, t)), Gen::R(t)], &v);
                    let res = sub_vec(&l, &r);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "x_k x_l = x_l x_k".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for k in 0..n {
                for l in 0..n {
                    let a = rep_ref.act_word(&[Gen::X(k), Gen::X(l)], &v);
                    let b = rep_ref.act_word(&[Gen::X(l), Gen::X(k)], &v);
                    let res = sub_vec(&a, &b);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "r_t r_s = r_s r_t for |t - s| > 1".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(1) {
                for s in t + 2..n.saturating_sub(1) {
                    let a = rep_ref.act_word(&[Gen::R(t), Gen::R(s)], &v);
                    let b = rep_ref.act_word(&[Gen::R(s), Gen::R(t)], &v);
                    let res = sub_vec(&a, &b);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "r_t x_k = x_k r_t for k != t, t+1".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(1) {
                for k in (0..n).filter(|&k| k != t && k != t + 1) {
                    let a = rep_ref.act_word(&[Gen::R(t), Gen::X(k)], &v);
                    let b = rep_ref.act_word(&[Gen::X(k), Gen::R(t)], &v);
                    let res = sub_vec(&a, &b);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "(r_t x_k - x_{s_t(k)} r_t) e(nu) = -+ delta e(nu)".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(1) {
                for (k, sk, c) in [(t, t + 1, -1i64), (t + 1, t, 1)] {
                    let a = rep_ref.act_word(&[Gen::R(t), Gen::X(k)], &v);
                    let b = rep_ref.act_word(&[Gen::X(sk), Gen::R(t)], &v);
                    let lhs = sub_vec(&a, &b);
                    let rhs = if nu[t] == nu[t + 1] { rep_ref.mul_poly(&QPoly::constant(ctx.nvars(), Q::from_integer(c.into())), &v) } else { BTreeMap::new() };
                    let res = sub_vec(&lhs, &rhs);
                    if !res.is_empty() {
                        return res;
                    }
                }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "r_t^2 e(nu) = Q(x_t, x_{t+1}) e(nu)".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(1) {
                let a = rep_ref.act_word(&[Gen::R(t), Gen::R(t)], &v);
                let q = ctx.q_poly(nu[t], nu[t + 1], &ctx.x(t), &ctx.x(t + 1));
                let res = sub_vec(&a, &rep_ref.mul_poly(&q, &v));
                    if !res.is_empty() {
                        return res;
                    }
            }
            BTreeMap::new()
        }),
    ));
    rels.push((
        "braid".into(),
        Box::new(move |nu, f| {
            let v = single(nu, f);
            for t in 0..n.saturating_sub(2) {
                let a = rep_ref.act_word(&[Gen::R(t + 1), Gen::R(t), Gen::R(t + 1)], &v);
                let b = rep_ref.act_word(&[Gen::R(t), Gen::R(t + 1), Gen::R(t)], &v);
                let rhs = rep_ref.mul_poly(&ctx.braid_rhs(nu, t), &v);
                let res = sub_vec(&sub_vec(&a, &b), &rhs);
                    if !res.is_empty() {
                        return res;
                    }
            }
            BTreeMap::new()
        }),
    ));
    let relations = rels
        .par_iter()
        .map(|(name, rel)| {
            let mut checked = 0;
            let mut witness = None;
            'outer: for nu in &ctx.seqs {
                for e in &monos {
                    let f = QPoly::monomial(e.clone(), Q::one());
                    checked += 1;
                    let res = rel(nu, &f);
                    if !res.is_empty() {
                        witness = Some(format!("on {}: residual {}", vec_string(&single(nu, &f), ctx), vec_string(&res, ctx)));
                        break 'outer;
                    }
                }
            }
            RelationCheck { name: name.clone(), checked, passed: witness.is_none(), witness }
        })
        .collect();
    RelationReport { m: ctx.m, beta: ctx.beta.beta.clone(), degree: d, sign, relations }
}

// ---------------------------------------------------------------------------
// Permutations and reduced words

/// `(w . nu)_i = nu_{pi(i)}`.
pub fn perm_act(pi: &[usize], nu: &[usize]) -> Seq {
    pi.iter().map(|&p| nu[p]).collect()
}

pub fn perm_identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Permutation of `s_{i1} s_{i2} ... s_{ik}`.
pub fn perm_of_word(n: usize, word: &[usize]) -> Perm {
    let mut p = perm_identity(n);
    for &t in word.iter().rev() {
        p.swap(t, t + 1);
    }
    p
}

pub fn perm_length(pi: &[usize]) -> usize {
    let n = pi.len();
    (0..n).map(|i| (i + 1..n).filter(|&j| pi[i] > pi[j]).count()).sum()
}

/// Lexicographically least reduced word.
pub fn perm_nf(pi: &[usize]) -> Vec<usize> {
    let mut p = pi.to_vec();
    let mut w = Vec::new();
    loop {
        let Some(t) = (0..p.len().saturating_sub(1)).find(|&t| p[t] > p[t + 1]) else { break };
        w.push(t);
        p.swap(t, t + 1);
    }
    w
}

/// Right multiplication `w s_t`.
pub fn perm_mul_right(pi: &[usize], t: usize) -> Perm {
    pi.iter().map(|&v| if v == t { t + 1 } else if v == t + 1 { t } else { v }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Move {
    Commute(usize),
    Braid(usize),
}

fn apply_move(w: &[usize], mv: Move) -> Vec<usize> {
    let mut v = w.to_vec();
    match mv {
        Move::Commute(p) => v.swap(p, p + 1),
        Move::Braid(p) => {
            let (a, b) = (v[p], v[p + 1]);
            v[p] = b;
            v[p + 1] = a;
            v[p + 2] = b;
        }
    }
    v
}

fn moves_of(w: &[usize]) -> Vec<Move> {
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        if w[p].abs_diff(w[p + 1]) > 1 {
            out.push(Move::Commute(p));
        }
        if p + 2 < w.len() && w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
            out.push(Move::Braid(p));
        }
    }
    out
}

fn braid_path(from: &[usize], to: &[usize]) -> Vec<Move> {
    let mut prev: HashMap<Vec<usize>, (Vec<usize>, Move)> = HashMap::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(w) = queue.pop_front() {
        if w == to {
            break;
        }
        for mv in moves_of(&w) {
            let nw = apply_move(&w, mv);
            if seen.insert(nw.clone()) {
                prev.insert(nw.clone(), (w.clone(), mv));
                queue.push_back(nw);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to.to_vec();
    while cur != from {
        let (p, mv) = prev.get(&cur).cloned().expect("reduced words are connected by braid moves");
        path.push(mv);
        cur = p;
    }
    path.reverse();
    path
}

// ---------------------------------------------------------------------------
// Normal forms in R(beta)

/// `sum r_{nf(pi)} P e(nu)` keyed by `(pi, nu)`.
pub type RElem = BTreeMap<(Perm, Seq), QPoly>;

fn relem_add(a: &mut RElem, b: &RElem, scale: &Q) {
    for (k, p) in b {
        add_into(a, k.clone(), p.scale(scale));
    }
}

fn relem_mul_right(a: &RElem, p: &QPoly) -> RElem {
    let mut out = BTreeMap::new();
    for (k, q) in a {
        add_into(&mut out, k.clone(), q.mul(p));
    }
    out
}

/// Rewriting engine for `R(beta)` on the basis `r_{nf(w)} X^a e(nu)`.
pub struct KlrAlgebra {
    pub ctx: KlrContext,
    word_cache: RefCell<HashMap<(Vec<usize>, Seq), RElem>>,
    lr_cache: RefCell<HashMap<(usize, Perm, Seq), RElem>>,
    lx_cache: RefCell<HashMap<(usize, Perm, Seq), RElem>>,
    path_cache: RefCell<HashMap<(Vec<usize>, Vec<usize>), Vec<Move>>>,
}

impl KlrAlgebra {
    pub fn new(ctx: KlrContext) -> Self {
        KlrAlgebra {
            ctx,
            word_cache: RefCell::new(HashMap::new()),
            lr_cache: RefCell::new(HashMap::new()),
            lx_cache: RefCell::new(HashMap::new()),
            path_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn unit_term(&self, pi: Perm, nu: Seq) -> RElem {
        BTreeMap::from([((pi, nu), self.ctx.one())])
    }

    pub fn idempotent(&self, nu: &[usize]) -> RElem {
        self.unit_term(perm_identity(self.ctx.n), nu.to_vec())
    }

    pub fn one(&self) -> RElem {
        let mut out = BTreeMap::new();
        for nu in &self.ctx.seqs {
            add_into(&mut out, (perm_identity(self.ctx.n), nu.clone()), self.ctx.one());
        }
        out
    }

    fn path(&self, from: &[usize], to: &[usize]) -> Vec<Move> {
        let key = (from.to_vec(), to.to_vec());
        if let Some(p) = self.path_cache.borrow().get(&key) {
            return p.clone();
        }
        let p = braid_path(from, to);
        self.path_cache.borrow_mut().insert(key, p.clone());
        p
    }

    /// Normal form of `r_word e(nu)` for a reduced word.
    pub fn reduced_word_nf(&self, word: &[usize], nu: &[usize]) -> RElem {
        let key = (word.to_vec(), nu.to_vec());
        if let Some(r) = self.word_cache.borrow().get(&key) {
            return r.clone();
        }
        let n = self.ctx.n;
        let pi = perm_of_word(n, word);
        let target = perm_nf(&pi);
        let mut out = self.unit_term(pi.clone(), nu.to_vec());
        if word != target.as_slice() {
            let mut cw = word.to_vec();
            for mv in self.path(word, &target) {
                if let Move::Braid(p) = mv {
                    let a = cw[p];
                    let b = cw[p + 1];
                    let t = a.min(b);
                    let suffix = &cw[p + 3..];
                    let mu = perm_act(&perm_of_word(n, suffix), nu);
                    let rhs = self.ctx.braid_rhs(&mu, t);
                    if !rhs.ris_zero() {
                        // r_a r_b r_a = r_b r_a r_b + sign * B e(mu)
                        let sign = if a == t + 1 { Q::one() } else { -Q::one() };
                        let tail = self.reduced_word_nf(suffix, nu);
                        let mid = self.left_poly(&rhs, &tail);
                        let corr = self.left_word(&cw[..p], &mid);
                        relem_add(&mut out, &corr, &sign);
                    }
                }
                cw = apply_move(&cw, mv);
            }
        }
        self.word_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// `r_t r_{nf(pi)} e(nu)`.
    fn left_r_unit(&self, t: usize, pi: &[usize], nu: &[usize]) -> RElem {
        let key = (t, pi.to_vec(), nu.to_vec());
        if let Some(r) = self.lr_cache.borrow().get(&key) {
            return r.clone();
        }
        let out = if pi[t] < pi[t + 1] {
            let mut word = vec![t];
            word.extend(perm_nf(pi));
            self.reduced_word_nf(&word, nu)
        } else {
            let mut pi2 = pi.to_vec();
            pi2.swap(t, t + 1);
            let mut word = vec![t];
            word.extend(perm_nf(&pi2));
            // r_t r_{nf(pi2)} = r_{nf(pi)} + corr
            let mut corr = self.reduced_word_nf(&word, nu);
            add_into(&mut corr, (pi.to_vec(), nu.to_vec()), self.ctx.one().neg());
            let mu = perm_act(&pi2, nu);
            let q = self.ctx.q_poly(mu[t], mu[t + 1], &self.ctx.x(t), &self.ctx.x(t + 1));
            let mut out = self.left_poly(&q, &self.unit_term(pi2, nu.to_vec()));
            let c = self.left_r(t, &corr);
            relem_add(&mut out, &c, &-Q::one());
            out
        };
        self.lr_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// `x_k r_{nf(pi)} e(nu)`.
    fn left_x_unit(&self, k: usize, pi: &[usize], nu: &[usize]) -> RElem {
        let key = (k, pi.to_vec(), nu.to_vec());
        if let Some(r) = self.lx_cache.borrow().get(&key) {
            return r.clone();
        }
        let n = self.ctx.n;
        let word = perm_nf(pi);
        let mut out = BTreeMap::new();
        let mut j = k;
        for i in 0..word.len() {
            let t = word[i];
            let mu = perm_act(&perm_of_word(n, &word[i + 1..]), nu);
            if mu[t] == mu[t + 1] && (j == t || j == t + 1) {
                // x_{t+1} r_t e = r_t x_t e + e,  x_t r_t e = r_t x_{t+1} e - e
                let c = if j == t + 1 { Q::one() } else { -Q::one() };
                let tail = self.reduced_word_nf(&word[i + 1..], nu);
                let corr = self.left_word(&word[..i], &tail);
                relem_add(&mut out, &corr, &c);
            }
            j = if j == t {
                t + 1
            } else if j == t + 1 {
                t
            } else {
                j
            };
        }
        add_into(&mut out, (pi.to_vec(), nu.to_vec()), self.ctx.x(j));
        self.lx_cache.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn left_r(&self, t: usize, a: &RElem) -> RElem {
        let mut out = BTreeMap::new();
        for ((pi, nu), p) in a {
            let r = self.left_r_unit(t, pi, nu);
            for (k, q) in r {
                add_into(&mut out, k, q.mul(p));
            }
        }
        out
    }

    pub fn left_x(&self, k: usize, a: &RElem) -> RElem {
        let mut out = BTreeMap::new();
        for ((pi, nu), p) in a {
            let r = self.left_x_unit(k, pi, nu);
            for (kk, q) in r {
                add_into(&mut out, kk, q.mul(p));
            }
        }
        out
    }

    pub fn left_e(&self, mu: &[usize], a: &RElem) -> RElem {
        a.iter().filter(|((pi, nu), _)| perm_act(pi, nu) == mu).map(|(k, p)| (k.clone(), p.clone())).collect()
    }

    /// Left multiplication by a polynomial in `X` and `hbar`.
    pub fn left_poly(&self, f: &QPoly, a: &RElem) -> RElem {
        let n = self.ctx.n;
        let mut out = BTreeMap::new();
        for (e, c) in &f.terms {
            let mut cur = a.clone();
            for k in 0..n {
                for _ in 0..e[k] {
                    cur = self.left_x(k, &cur);
                }
            }
            let mut h = vec![0i32; n + 1];
            h[n] = e[n];
            let scal = QPoly::monomial(h, c.clone());
            cur = relem_mul_right(&cur, &scal);
            for (k, p) in cur {
                add_into(&mut out, k, p);
            }
        }
        out
    }

    /// `r_{i1} ... r_{ik} a` (any word).
    pub fn left_word(&self, word: &[usize], a: &RElem) -> RElem {
        word.iter().rev().fold(a.clone(), |acc, &t| self.left_r(t, &acc))
    }

    pub fn left_gen(&self, g: &Gen, a: &RElem) -> RElem {
        match g {
            Gen::E(mu) => self.left_e(mu, a),
            Gen::X(k) => self.left_x(*k, a),
            Gen::R(t) => self.left_r(*t, a),
        }
    }

    /// Normal form of a word in the generators.
    pub fn word(&self, w: &[Gen]) -> RElem {
        w.iter().rev().fold(self.one(), |acc, g| self.left_gen(g, &acc))
    }

    pub fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        let mut out = BTreeMap::new();
        for ((pi, nu), p) in a {
            let x = self.left_e(nu, b);
            let x = self.left_poly(p, &x);
            let x = self.left_word(&perm_nf(pi), &x);
            relem_add(&mut out, &x, &Q::one());
        }
        out
    }

    /// Action of an element on the polynomial representation.
    pub fn act_on(&self, rep: &PolyRep, a: &RElem, v: &PolyVec) -> PolyVec {
        let mut out = BTreeMap::new();
        for ((pi, nu), p) in a {
            let sel = rep.act(&Gen::E(nu.clone()), v);
            let sel = rep.mul_poly(p, &sel);
            let w: Vec<Gen> = perm_nf(pi).into_iter().map(Gen::R).collect();
            for (k, f) in rep.act_word(&w, &sel) {
                add_into(&mut out, k, f);
            }
        }
        out
    }

    /// Degree of `r_word e(nu)`.
    pub fn word_degree(&self, word: &[usize], nu: &[usize]) -> i32 {
        let mut mu = nu.to_vec();
        let mut d = 0;
        for &t in word.iter().rev() {
            d += self.ctx.deg_r(t, &mu);
            mu = swap(&mu, t);
        }
        d
    }
}

// ---------------------------------------------------------------------------
// Induced modules

/// `P(gamma) = R(beta) (x)_{R(gamma)} (P(gamma_1) [x] ... [x] P(gamma_l))` on the basis
/// `r_{nf(u)} (x) X^a 1(nu)` with `u` a minimal left coset representative and `nu` a
/// concatenation of complete sequences of the parts.
pub struct InducedModule<'a> {
    pub alg: &'a KlrAlgebra,
    pub gamma: ParTypeA,
    pub cosets: Vec<Perm>,
    pub seqs: Vec<Seq>,
    internal: Vec<bool>,
    rep: PolyRep,
}

pub type ModElem = BTreeMap<(Perm, Seq), QPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModBasis {
    pub coset: Perm,
    pub nu: Seq,
    pub monomial: Vec<i32>,
}

impl<'a> InducedModule<'a> {
    pub fn new(alg: &'a KlrAlgebra, gamma: ParTypeA) -> Result<Self> {
        let ctx = &alg.ctx;
        if gamma.beta() != ctx.beta.beta || gamma.m != ctx.m {
            return Err(Error::Invalid("gamma is not a type of beta".into()));
        }
        let n = ctx.n;
        let mut internal = vec![false; n.saturating_sub(1)];
        let mut start = 0;
        for part in &gamma.parts {
            let len: usize = part.iter().sum();
            for t in start..start + len - 1 {
                internal[t] = true;
            }
            start += len;
        }
        let mut seqs: Vec<Seq> = vec![vec![]];
        for part in &gamma.parts {
            let sub = complete_sequences(&DimVector { m: gamma.m, beta: part.clone() }, usize::MAX)?;
            seqs = seqs.into_iter().flat_map(|s| sub.iter().map(move |x| [s.clone(), x.clone()].concat())).collect();
        }
        let mut cosets: Vec<Perm> = Vec::new();
        let mut all = vec![perm_identity(n)];
        let mut seen: HashSet<Perm> = all.iter().cloned().collect();
        let mut i = 0;
        while i < all.len() {
            let p = all[i].clone();
            i += 1;
            for t in 0..n.saturating_sub(1) {
                let mut q = p.clone();
                q.swap(t, t + 1);
                if seen.insert(q.clone()) {
                    all.push(q);
                }
            }
        }
        for p in all {
            if (0..n.saturating_sub(1)).filter(|&t| internal[t]).all(|t| perm_length(&perm_mul_right(&p, t)) > perm_length(&p)) {
                cosets.push(p);
            }
        }
        cosets.sort_by_key(|p| (perm_length(p), p.clone()));
        let rep = PolyRep::new(ctx.clone(), DemazureSign::Standard);
        Ok(InducedModule { alg, gamma, cosets, seqs, internal, rep })
    }

    pub fn generators(&self) -> Vec<ModElem> {
        self.seqs.iter().map(|nu| BTreeMap::from([((perm_identity(self.alg.ctx.n), nu.clone()), self.alg.ctx.one())])).collect()
    }

    /// `u = u' v` with `u'` a minimal coset representative and `v` in the parabolic subgroup.
    fn decompose(&self, u: &[usize]) -> (Perm, Vec<usize>) {
        let mut up = u.to_vec();
        let mut vword = Vec::new();
        loop {
            let l = perm_length(&up);
            let Some(t) = (0..self.internal.len()).filter(|&t| self.internal[t]).find(|&t| perm_length(&perm_mul_right(&up, t)) < l) else { break };
            up = perm_mul_right(&up, t);
            vword.insert(0, t);
        }
        (up, vword)
    }

    /// `r_{nf(u)} (x) h(nu)` in the coset basis.
    fn to_coset(&self, u: &[usize], nu: &[usize], h: &QPoly) -> ModElem {
        let ctx = &self.alg.ctx;
        let (up, vword) = self.decompose(u);
        let mut out = BTreeMap::new();
        if vword.is_empty() {
            add_into(&mut out, (up, nu.to_vec()), h.clone());
            return out;
        }
        let vnf = perm_nf(&perm_of_word(ctx.n, &vword));
        let inner: Vec<Gen> = vnf.iter().map(|&t| Gen::R(t)).collect();
        let acted = self.rep.act_word(&inner, &BTreeMap::from([(nu.to_vec(), h.clone())]));
        for (nu2, f) in acted {
            add_into(&mut out, (up.clone(), nu2), f);
        }
        // r_{nf(u')} r_{nf(v)} e(nu) = r_{nf(u)} e(nu) + lower
        let tail = self.alg.reduced_word_nf(&vnf, nu);
        let mut prod = self.alg.left_word(&perm_nf(&up), &tail);
        let lead = prod.remove(&(u.to_vec(), nu.to_vec())).expect("leading term");
        debug_assert!(lead == ctx.one());
        for ((pi, nu2), p) in prod {
            debug_assert_eq!(&nu2, nu);
            let sub = self.to_coset(&pi, &nu2, &p.mul(h));
            for (k, f) in sub {
                add_into(&mut out, k, f.neg());
            }
        }
        out
    }

    fn lift(&self, a: &RElem, h: &QPoly) -> ModElem {
        let mut out = BTreeMap::new();
        for ((pi, nu), p) in a {
            for (k, f) in self.to_coset(pi, nu, &p.mul(h)) {
                add_into(&mut out, k, f);
            }
        }
        out
    }

    pub fn act(&self, g: &Gen, v: &ModElem) -> ModElem {
        let mut out = BTreeMap::new();
        for ((u, nu), f) in v {
            let a = self.alg.left_gen(g, &self.alg.unit_term(u.clone(), nu.clone()));
            for (k, p) in self.lift(&a, f) {
                add_into(&mut out, k, p);
            }
        }
        out
    }

    /// Action of an algebra element given in normal form.
    pub fn act_elem(&self, a: &RElem, v: &ModElem) -> ModElem {
        let mut out = BTreeMap::new();
        for ((u, nu), f) in v {
            let mut b = self.alg.unit_term(u.clone(), nu.clone());
            b = self.alg.mul(a, &b);
            for (k, p) in self.lift(&b, f) {
                add_into(&mut out, k, p);
            }
        }
        out
    }

    pub fn act_poly(&self, f: &QPoly, v: &ModElem) -> ModElem {
        let n = self.alg.ctx.n;
        let mut out = BTreeMap::new();
        for (e, c) in &f.terms {
            let mut cur = v.clone();
            for k in 0..n {
                for _ in 0..e[k] {
                    cur = self.act(&Gen::X(k), &cur);
                }
            }
            let mut hm = vec![0i32; n + 1];
            hm[n] = e[n];
            let s = QPoly::monomial(hm, c.clone());
            for (k, p) in cur {
                add_into(&mut out, k, p.mul(&s));
            }
        }
        out
    }

    pub fn basis_degree(&self, b: &ModBasis) -> i32 {
        self.alg.word_degree(&perm_nf(&b.coset), &b.nu) + b.monomial.iter().sum::<i32>()
    }

    /// Basis elements of degree exactly `d` (optionally inside `e(mu) P(gamma)`).
    pub fn basis_in_degree(&self, d: i32, mu: Option<&[usize]>) -> Vec<ModBasis> {
        let nv = self.alg.ctx.nvars();
        let mut out = Vec::new();
        for u in &self.cosets {
            for nu in &self.seqs {
                if let Some(mu) = mu {
                    if perm_act(u, nu) != mu {
                        continue;
                    }
                }
                let rd = self.alg.word_degree(&perm_nf(u), nu);
                let rest = d - rd;
                if rest < 0 {
                    continue;
                }
                for e in monomials_upto(nv, rest as usize) {
                    if e.iter().sum::<i32>() == rest {
                        out.push(ModBasis { coset: u.clone(), nu: nu.clone(), monomial: e });
                    }
                }
            }
        }
        out
    }

    pub fn basis_upto(&self, d: i32) -> Vec<ModBasis> {
        let lo = self.min_degree();
        (lo..=d).flat_map(|k| self.basis_in_degree(k, None)).collect()
    }

    pub fn min_degree(&self) -> i32 {
        self.cosets.iter().flat_map(|u| self.seqs.iter().map(move |nu| self.alg.word_degree(&perm_nf(u), nu))).min().unwrap_or(0)
    }

    pub fn elem_of(&self, b: &ModBasis) -> ModElem {
        BTreeMap::from([((b.coset.clone(), b.nu.clone()), QPoly::monomial(b.monomial.clone(), Q::one()))])
    }

    /// Coordinates of `v` in the listed basis; `None` if `v` leaves its span.
    pub fn coords(&self, basis: &[ModBasis], v: &ModElem) -> Option<Vec<Q>> {
        let idx: HashMap<(&Perm, &Seq, &Vec<i32>), usize> = basis.iter().enumerate().map(|(i, b)| ((&b.coset, &b.nu, &b.monomial), i)).collect();
        let mut out = vec![Q::zero(); basis.len()];
        for ((u, nu), f) in v {
            for (e, c) in &f.terms {
                let i = *idx.get(&(u, nu, e))?;
                out[i] += c;
            }
        }
        Some(out)
    }

    /// Matrix of a generator from the degree `<= d` basis to the degree `<= d + 1` basis.
    pub fn operator_matrix(&self, g: &Gen, d: i32) -> Result<(Vec<ModBasis>, Vec<ModBasis>, QMat)> {
        let src = self.basis_upto(d);
        let dst = self.basis_upto(d + 1);
        let cols: Vec<Vec<Q>> = src
            .iter()
            .map(|b| self.coords(&dst, &self.act(g, &self.elem_of(b))).ok_or_else(|| Error::BoundExceeded("image leaves the truncation".into())))
            .collect::<Result<_>>()?;
        let m = QMat::from_cols(&cols, dst.len());
        Ok((src, dst, m))
    }
}

/// `Hom(P(gamma), P(gamma'))` in a single degree `k`: images `y_nu` of the generators `1 (x) 1(nu)`
/// subject to equivariance on all basis elements of degree `<= d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSpace {
    pub degree: i32,
    pub dim: usize,
    pub unknowns: usize,
}

fn image_of(src: &InducedModule, dst: &InducedModule, b: &ModBasis, y: &BTreeMap<Seq, ModElem>) -> ModElem {
    let Some(yn) = y.get(&b.nu) else { return BTreeMap::new() };
    let f = QPoly::monomial(b.monomial.clone(), Q::one());
    let mut v = dst.act_poly(&f, yn);
    for &t in perm_nf(&b.coset).iter().rev() {
        v = dst.act(&Gen::R(t), &v);
    }
    let _ = src;
    v
}

fn mod_sub(a: &ModElem, b: &ModElem) -> ModElem {
    let mut out = a.clone();
    for (k, p) in b {
        add_into(&mut out, k.clone(), p.neg());
    }
    out
}

fn flatten(v: &ModElem) -> BTreeMap<(Perm, Seq, Vec<i32>), Q> {
    let mut out = BTreeMap::new();
    for ((u, nu), f) in v {
        for (e, c) in &f.terms {
            out.insert((u.clone(), nu.clone(), e.clone()), c.clone());
        }
    }
    out
}

fn hom_unknowns(src: &InducedModule, dst: &InducedModule, k: i32) -> Vec<(Seq, ModBasis)> {
    src.seqs.iter().flat_map(|nu| dst.basis_in_degree(k, Some(nu)).into_iter().map(move |b| (nu.clone(), b))).collect()
}

fn solve_dim(unknowns: usize, residuals: Vec<BTreeMap<(Perm, Seq, Vec<i32>), Q>>) -> usize {
    // residuals[j] = constraint vector contributed by unknown j
    let mut keys: Vec<&(Perm, Seq, Vec<i32>)> = residuals.iter().flat_map(|r| r.keys()).collect();
    keys.sort();
    keys.dedup();
    if keys.is_empty() {
        return unknowns;
    }
    let idx: HashMap<&(Perm, Seq, Vec<i32>), usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = QMat::zeros(keys.len(), unknowns);
    for (j, r) in residuals.iter().enumerate() {
        for (k, c) in r {
            m.data[idx[k] * unknowns + j] = c.clone();
        }
    }
    unknowns - m.rank()
}

pub fn hom_space(src: &InducedModule, dst: &InducedModule, k: i32, d: i32) -> HomSpace {
    let unknowns = hom_unknowns(src, dst, k);
    let n = src.alg.ctx.n;
    let mut gens: Vec<Gen> = (0..n).map(Gen::X).chain((0..n.saturating_sub(1)).map(Gen::R)).collect();
    gens.extend(src.alg.ctx.seqs.iter().cloned().map(Gen::E));
    let basis = src.basis_upto(d);
    let residuals: Vec<BTreeMap<(Perm, Seq, Vec<i32>), Q>> = unknowns
        .iter()
        .map(|(nu, b)| {
            let y: BTreeMap<Seq, ModElem> = BTreeMap::from([(nu.clone(), dst.elem_of(b))]);
            let mut acc: BTreeMap<(Perm, Seq, Vec<i32>), Q> = BTreeMap::new();
            for (bi, sb) in basis.iter().enumerate() {
                for (gi, g) in gens.iter().enumerate() {
                    let gv = src.act(g, &src.elem_of(sb));
                    let mut lhs = BTreeMap::new();
                    for ((u, nu2), f) in &gv {
                        for (e, c) in &f.terms {
                            let img = image_of(src, dst, &ModBasis { coset: u.clone(), nu: nu2.clone(), monomial: e.clone() }, &y);
                            for (kk, p) in img {
                                add_into(&mut lhs, kk, p.scale(c));
                            }
                        }
                    }
                    let rhs = dst.act(g, &image_of(src, dst, sb, &y));
                    for ((u, nu2, e), c) in flatten(&mod_sub(&lhs, &rhs)) {
                        let mut tagged = u.clone();
                        tagged.push(bi);
                        tagged.push(gi);
                        acc.insert((tagged, nu2, e), c);
                    }
                }
            }
            acc
        })
        .collect();
    let dim = if unknowns.is_empty() { 0 } else { solve_dim(unknowns.len(), residuals) };
    HomSpace { degree: k, dim, unknowns: unknowns.len() }
}

/// Dimensions of `Hom^k` for `k` in a window (empty window gives an empty list).
pub fn hom_window(src: &InducedModule, dst: &InducedModule, lo: i32, hi: i32, d: i32) -> Vec<HomSpace> {
    (lo..=hi).map(|k| hom_space(src, dst, k, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(b: Vec<usize>) -> KlrContext {
        KlrContext::new(DimVector::new(b).unwrap(), 6).unwrap()
    }

    #[test]
    fn q_matrix_examples() {
        assert!(q_matrix(3, 1, 1).ris_zero());
        let y_x_h = QPoly::var(3, 1).sub(&QPoly::var(3, 0)).add(&QPoly::var(3, 2));
        assert_eq!(q_matrix(3, 1, 2), y_x_h);
        let x_y_h = QPoly::var(3, 0).sub(&QPoly::var(3, 1)).add(&QPoly::var(3, 2));
        assert_eq!(q_matrix(2, 0, 1), x_y_h.mul(&y_x_h));
    }

    #[test]
    fn relations_hold() {
        for b in [vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
            let c = ctx(b);
            let r = check_relations(&c, 3, DemazureSign::Standard);
            assert!(r.all_passed(), "{r:?}");
            assert!(!check_relations(&c, 2, DemazureSign::Flipped).all_passed() || c.seqs.iter().all(|s| s.windows(2).all(|w| w[0] != w[1])));
        }
    }

    #[test]
    fn nil_hecke_sign() {
        let c = ctx(vec![2, 0]);
        let rep = PolyRep::new(c.clone(), DemazureSign::Standard);
        let v = BTreeMap::from([(vec![0, 0], c.one())]);
        let a = rep.act_word(&[Gen::R(0), Gen::X(0)], &v);
        let b = rep.act_word(&[Gen::X(1), Gen::R(0)], &v);
        assert_eq!(sub_vec(&a, &b), rep.mul_poly(&c.one().neg(), &v));
    }

    #[test]
    fn normal_form_acts_like_word() {
        let c = ctx(vec![2, 1]);
        let alg = KlrAlgebra::new(c.clone());
        let rep = PolyRep::new(c.clone(), DemazureSign::Standard);
        let words: Vec<Vec<Gen>> = vec![
            vec![Gen::R(0), Gen::R(1), Gen::R(0)],
            vec![Gen::R(1), Gen::R(0), Gen::R(1), Gen::X(0)],
            vec![Gen::X(2), Gen::R(1), Gen::R(0), Gen::R(1), Gen::R(0)],
            vec![Gen::R(0), Gen::R(0), Gen::X(1), Gen::R(1)],
        ];
        for w in &words {
            let nf = alg.word(w);
            for nu in &c.seqs {
                for e in c.monomials(2) {
                    let v = BTreeMap::from([(nu.clone(), QPoly::monomial(e, Q::one()))]);
                    assert_eq!(alg.act_on(&rep, &nf, &v), rep.act_word(w, &v), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn full_parabolic_is_polynomial_rep() {
        let c = ctx(vec![1, 1]);
        let alg = KlrAlgebra::new(c.clone());
        let g = ParTypeA::new(2, vec![vec![1, 1]]).unwrap();
        let m = InducedModule::new(&alg, g).unwrap();
        assert_eq!(m.cosets.len(), 1);
        // degree <= 1: 2 sequences times {1, X1, X2, h}
        assert_eq!(m.basis_upto(1).len(), 8);
    }
}
