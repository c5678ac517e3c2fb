//! Exact feasibility of systems of linear inequalities, some of them strict.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::rational::{q, qr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Ge,
    Gt,
    Eq,
}

/// `a . x  rel  b`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: Vec<Q>,
    pub rel: Rel,
    pub b: Q,
}

impl Constraint {
    pub fn new(a: Vec<Q>, rel: Rel, b: Q) -> Self {
        Constraint { a, rel, b }
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let v = self.a.iter().zip(x).fold(Q::zero(), |s, (a, x)| s + a * x);
        match self.rel {
            Rel::Ge => v >= self.b,
            Rel::Gt => v > self.b,
            Rel::Eq => v == self.b,
        }
    }
}

pub fn satisfies(cons: &[Constraint], x: &[Q]) -> bool {
    cons.iter().all(|c| c.holds(x))
}

/// Rational point satisfying every constraint, if any. Dimension `n`.
pub fn feasible(cons: &[Constraint], n: usize) -> Option<Vec<Q>> {
    if n <= 3 {
        feasible_fm(cons, n)
    } else {
        feasible_simplex(cons, n)
    }
}

fn split_eq(cons: &[Constraint]) -> Vec<(Vec<Q>, bool, Q)> {
    let mut out = Vec::new();
    for c in cons {
        match c.rel {
            Rel::Ge => out.push((c.a.clone(), false, c.b.clone())),
            Rel::Gt => out.push((c.a.clone(), true, c.b.clone())),
            Rel::Eq => {
                out.push((c.a.clone(), false, c.b.clone()));
                out.push((c.a.iter().map(|x| -x).collect(), false, -c.b.clone()));
            }
        }
    }
    out
}

fn normalize(c: (Vec<Q>, bool, Q)) -> (Vec<Q>, bool, Q) {
    let (a, s, b) = c;
    match a.iter().find(|x| !x.is_zero()) {
        None => (a, s, b),
        Some(p) => {
            let f = p.abs().recip();
            (a.iter().map(|x| x * &f).collect(), s, b * f)
        }
    }
}

/// Fourier–Motzkin elimination with strictness tracking.
pub fn feasible_fm(cons: &[Constraint], n: usize) -> Option<Vec<Q>> {
    let mut stages: Vec<Vec<(Vec<Q>, bool, Q)>> = Vec::new();
    let mut cur: Vec<(Vec<Q>, bool, Q)> = split_eq(cons).into_iter().map(normalize).collect();
    for k in 0..n {
        // drop duplicates
        let mut seen = HashSet::new();
        cur.retain(|c| seen.insert(c.clone()));
        stages.push(cur.clone());
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in &cur {
            if c.0[k].is_positive() {
                pos.push(c);
            } else if c.0[k].is_negative() {
                neg.push(c);
            } else {
                next.push(c.clone());
            }
        }
        for p in &pos {
            for m in &neg {
                let al = p.0[k].clone();
                let be = -m.0[k].clone();
                let a: Vec<Q> = p.0.iter().zip(&m.0).map(|(x, y)| x * &be + y * &al).collect();
                let b = &p.2 * &be + &m.2 * &al;
                next.push(normalize((a, p.1 || m.1, b)));
            }
        }
        for c in &next {
            if c.0.iter().all(|x| x.is_zero()) && !trivially_ok(c) {
                return None;
            }
        }
        next.retain(|c| !c.0.iter().all(|x| x.is_zero()));
        cur = next;
    }
    for c in &cur {
        if !trivially_ok(c) {
            return None;
        }
    }
    let mut x = vec![Q::zero(); n];
    for k in (0..n).rev() {
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for c in &stages[k] {
            let mut rhs = c.2.clone();
            for j in k + 1..n {
                rhs -= &c.0[j] * &x[j];
            }
            let ak = &c.0[k];
            if ak.is_zero() {
                continue;
            }
            let bound = rhs / ak;
            if ak.is_positive() {
                if lo.as_ref().map_or(true, |(l, ls)| bound > *l || (bound == *l && c.1 && !ls)) {
                    lo = Some((bound, c.1));
                }
            } else if hi.as_ref().map_or(true, |(h, hs)| bound < *h || (bound == *h && c.1 && !hs)) {
                hi = Some((bound, c.1));
            }
        }
        x[k] = match (lo, hi) {
            (None, None) => Q::zero(),
            (Some((l, _)), None) => l.floor() + q(1),
            (None, Some((h, _))) => h.ceil() - q(1),
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs);
                    l
                } else {
                    simplest_between(&l, &h)
                }
            }
        };
    }
    debug_assert!(satisfies(cons, &x));
    Some(x)
}

fn trivially_ok(c: &(Vec<Q>, bool, Q)) -> bool {
    if c.1 {
        c.2.is_negative()
    } else {
        !c.2.is_positive()
    }
}

/// A rational with small denominator strictly between `l < h`.
pub fn simplest_between(l: &Q, h: &Q) -> Q {
    debug_assert!(l < h);
    let mut d = 1i64;
    loop {
        let dq = q(d);
        let cand = (l * &dq).floor() + q(1);
        let v = cand / dq;
        if &v > l && &v < h {
            return v;
        }
        d += 1;
        if d > 64 {
            return (l + h) * qr(1, 2);
        }
    }
}

/// Exact two-phase simplex with Bland's rule; strict constraints are handled by
/// maximizing a common slack `t <= 1`.
pub fn feasible_simplex(cons: &[Constraint], n: usize) -> Option<Vec<Q>> {
    let rows = split_eq(cons);
    let any_strict = rows.iter().any(|r| r.1);
    // variables: x+ (n), x- (n), t (1)
    let nz = 2 * n + 1;
    let mut a: Vec<Vec<Q>> = Vec::new();
    let mut b: Vec<Q> = Vec::new();
    for (coef, strict, rhs) in &rows {
        // coef.x - [strict] t >= rhs   <=>  -coef.x + [strict] t <= -rhs
        let mut row = vec![Q::zero(); nz];
        for j in 0..n {
            row[j] = -coef[j].clone();
            row[n + j] = coef[j].clone();
        }
        if *strict {
            row[2 * n] = Q::one();
        }
        a.push(row);
        b.push(-rhs.clone());
    }
    let mut trow = vec![Q::zero(); nz];
    trow[2 * n] = Q::one();
    a.push(trow);
    b.push(Q::one());
    let mut c = vec![Q::zero(); nz];
    c[2 * n] = Q::one();
    let (z, val) = lp_max(&a, &b, &c)?;
    if any_strict && !val.is_positive() {
        return None;
    }
    let x: Vec<Q> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    debug_assert!(satisfies(cons, &x));
    Some(x)
}

/// Maximizes `c.z` subject to `A z <= b`, `z >= 0`. Returns `None` if infeasible.
/// Panics on unbounded problems, which callers exclude by construction.
pub fn lp_max(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Option<(Vec<Q>, Q)> {
    let m = a.len();
    let nz = c.len();
    let neg_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let na = neg_rows.len();
    let ncol = nz + m + na;
    // tableau rows: [coeffs (ncol) | rhs]
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    for i in 0..m {
        let mut row = vec![Q::zero(); ncol + 1];
        let flip = b[i].is_negative();
        for j in 0..nz {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[nz + i] = if flip { -Q::one() } else { Q::one() };
        row[ncol] = if flip { -b[i].clone() } else { b[i].clone() };
        if flip {
            let k = neg_rows.iter().position(|&r| r == i).unwrap();
            row[nz + m + k] = Q::one();
            basis[i] = nz + m + k;
        } else {
            basis[i] = nz + i;
        }
        t.push(row);
    }
    if na > 0 {
        let mut obj = vec![Q::zero(); ncol];
        for k in 0..na {
            obj[nz + m + k] = -Q::one();
        }
        let allowed: Vec<bool> = vec![true; ncol];
        run_simplex(&mut t, &mut basis, &obj, &allowed);
        let phase1: Q = basis
            .iter()
            .enumerate()
            .filter(|(_, &bv)| bv >= nz + m)
            .fold(Q::zero(), |s, (i, _)| s + &t[i][ncol]);
        if phase1.is_positive() {
            return None;
        }
        // drive remaining artificial variables out of the basis
        for i in 0..m {
            if basis[i] >= nz + m {
                if let Some(j) = (0..nz + m).find(|&j| !t[i][j].is_zero()) {
                    pivot(&mut t, &mut basis, i, j);
                }
            }
        }
    }
    let mut obj = vec![Q::zero(); ncol];
    obj[..nz].clone_from_slice(c);
    let allowed: Vec<bool> = (0..ncol).map(|j| j < nz + m).collect();
    run_simplex(&mut t, &mut basis, &obj, &allowed);
    let mut z = vec![Q::zero(); nz];
    for i in 0..m {
        if basis[i] < nz {
            z[basis[i]] = t[i][ncol].clone();
        }
    }
    let val = z.iter().zip(c).fold(Q::zero(), |s, (x, y)| s + x * y);
    Some((z, val))
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        *v *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
    }
    basis[r] = c;
}

fn run_simplex(t: &mut [Vec<Q>], basis: &mut [usize], obj: &[Q], allowed: &[bool]) {
    let ncol = obj.len();
    loop {
        // reduced costs: obj_j - sum_i obj_{basis_i} t_ij
        let mut enter = None;
        for j in 0..ncol {
            if !allowed[j] || basis.contains(&j) {
                continue;
            }
            let mut rc = obj[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                if !obj[bv].is_zero() && !t[i][j].is_zero() {
                    rc -= &obj[bv] * &t[i][j];
                }
            }
            if rc.is_positive() {
                enter = Some(j);
                break;
            }
        }
        let Some(j) = enter else { return };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][ncol] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("unbounded linear program");
        pivot(t, basis, r, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: &[i64], rel: Rel, b: Q) -> Constraint {
        Constraint::new(a.iter().map(|&x| q(x)).collect(), rel, b)
    }

    #[test]
    fn open_interval() {
        let cons = vec![c(&[1], Rel::Gt, q(0)), c(&[-1], Rel::Gt, qr(-1, 2))];
        for f in [feasible_fm, feasible_simplex] {
            let x = f(&cons, 1).unwrap();
            assert!(satisfies(&cons, &x));
        }
        let empty = vec![c(&[1], Rel::Gt, q(0)), c(&[-1], Rel::Ge, q(0))];
        assert!(feasible_fm(&empty, 1).is_none());
        assert!(feasible_simplex(&empty, 1).is_none());
    }

    #[test]
    fn closed_point() {
        let cons = vec![c(&[1, 1], Rel::Ge, q(1)), c(&[-1, -1], Rel::Ge, q(-1)), c(&[1, -1], Rel::Eq, q(0))];
        for f in [feasible_fm, feasible_simplex] {
            let x = f(&cons, 2).unwrap();
            assert_eq!(x, vec![qr(1, 2), qr(1, 2)]);
        }
    }

    #[test]
    fn lp_optimum() {
        // max x + y, x <= 2, y <= 3, x + y <= 4
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        let b = vec![q(2), q(3), q(4)];
        let (_, v) = lp_max(&a, &b, &[q(1), q(1)]).unwrap();
        assert_eq!(v, q(4));
    }
}
