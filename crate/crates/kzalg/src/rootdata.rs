//! Root data of finite type, affine roots, the affine Weyl group acting on the
//! coweight space, alcoves and the exponential map to the torus.
//!
//! Coweights are written in the basis of simple coroots, so the translation
//! lattice of the affine Weyl group is the integer lattice and the torus of the
//! simply connected group is the coordinate torus `(R/Z)^r`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::rational::{frac, q, qr, ser_qvec, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CartanType {
    A,
    C,
    Explicit(Vec<Vec<i64>>),
}

impl CartanType {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "C" => Ok(CartanType::C),
            other => Err(Error::Invalid(format!("unknown Cartan type {other:?} (expected A or C)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub rank: usize,
    pub label: String,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Roots in simple-root coordinates: positive roots (simple ones first), then their negatives.
    pub roots: Vec<Vec<i64>>,
    /// Matching coroots in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    pub n_pos: usize,
    pub highest: usize,
}

#[derive(Serialize)]
pub struct RootDatumJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub root_basis: &'static str,
    pub coroot_basis: &'static str,
    pub coweight_basis: &'static str,
}

pub fn cartan_matrix(t: &CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
    if rank == 0 {
        return Err(Error::InvalidCartan("rank must be at least 1".into()));
    }
    let mut a = vec![vec![0i64; rank]; rank];
    match t {
        CartanType::A | CartanType::C => {
            for i in 0..rank {
                a[i][i] = 2;
                if i + 1 < rank {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
            }
            if *t == CartanType::C && rank >= 2 {
                a[rank - 2][rank - 1] = -2;
            }
        }
        CartanType::Explicit(m) => {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::InvalidCartan(format!("expected a {rank}x{rank} matrix")));
            }
            a = m.clone();
        }
    }
    validate_cartan(&a)?;
    Ok(a)
}

/// Checks that `a` is the Cartan matrix of an irreducible finite crystallographic root system.
pub fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {} (must be 2)", a[i][i])));
        }
        for j in 0..n {
            if i != j {
                if a[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({i},{j}) is positive")));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("entries ({i},{j}) and ({j},{i}) are not both zero")));
                }
            }
        }
    }
    // connectedness
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if a[i][j] != 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidCartan("Dynkin diagram is not connected".into()));
    }
    // symmetrizer d with d_i a_ij = d_j a_ji
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].clone().unwrap();
        for j in 0..n {
            if i != j && a[i][j] != 0 {
                let dj = &di * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(x) if *x != dj => return Err(Error::InvalidCartan("matrix is not symmetrizable".into())),
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.unwrap()).collect();
    let sym: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| &d[i] * q(a[i][j])).collect()).collect();
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        let minor = QMat::from_rows(&sym).submatrix(&idx, &idx).det();
        if !minor.is_positive() {
            return Err(Error::InvalidCartan("symmetrized matrix is not positive definite (not of finite type)".into()));
        }
    }
    Ok(())
}

pub fn build_root_datum(type_tag: &str, rank: usize) -> Result<RootDatum> {
    RootDatum::new(&CartanType::parse(type_tag)?, rank)
}

impl RootDatum {
    pub fn new(t: &CartanType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(t, rank)?;
        let label = match t {
            CartanType::A => format!("A{rank}"),
            CartanType::C => format!("C{rank}"),
            CartanType::Explicit(_) => format!("Cartan{rank}"),
        };
        Ok(Self::from_cartan(cartan, label))
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>, label: String) -> Self {
        let r = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            seen.insert(unit(i), unit(i));
            queue.push_back(unit(i));
        }
        while let Some(al) = queue.pop_front() {
            let co = seen[&al].clone();
            for j in 0..r {
                let c: i64 = (0..r).map(|i| al[i] * cartan[j][i]).sum();
                let mut nal = al.clone();
                nal[j] -= c;
                let d: i64 = (0..r).map(|k| co[k] * cartan[k][j]).sum();
                let mut nco = co.clone();
                nco[j] -= d;
                if nal.iter().all(|&x| x >= 0) && !seen.contains_key(&nal) {
                    seen.insert(nal.clone(), nco);
                    queue.push_back(nal);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.keys().cloned().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        let mut coroots: Vec<Vec<i64>> = pos.iter().map(|a| seen[a].clone()).collect();
        for a in &pos {
            roots.push(a.iter().map(|x| -x).collect());
            coroots.push(seen[a].iter().map(|x| -x).collect());
        }
        let highest = n_pos - 1;
        RootDatum { rank: r, label, cartan, roots, coroots, n_pos, highest }
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            kind: self.label.clone(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            root_basis: "simple roots",
            coroot_basis: "simple coroots",
            coweight_basis: "simple coroots",
        }
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.n_pos
    }

    pub fn negate_index(&self, idx: usize) -> usize {
        if idx < self.n_pos {
            idx + self.n_pos
        } else {
            idx - self.n_pos
        }
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    /// `<alpha, beta^vee>` for a root in simple-root coordinates and a coroot in simple-coroot coordinates.
    pub fn pairing(&self, alpha: &[i64], coroot: &[i64]) -> i64 {
        let r = self.rank;
        let mut s = 0;
        for i in 0..r {
            for k in 0..r {
                s += alpha[i] * coroot[k] * self.cartan[k][i];
            }
        }
        s
    }

    /// Coordinates of a root-lattice element as a functional on simple-coroot coordinates
    /// (equivalently, its expansion in fundamental weights).
    pub fn functional(&self, alpha: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| (0..self.rank).map(|i| alpha[i] * self.cartan[j][i]).sum()).collect()
    }

    pub fn pair_q(&self, alpha: &[i64], lambda: &[Q]) -> Q {
        let f = self.functional(alpha);
        f.iter().zip(lambda).fold(Q::zero(), |s, (a, x)| s + q(*a) * x)
    }

    pub fn theta(&self) -> &Vec<i64> {
        &self.roots[self.highest]
    }

    pub fn theta_coroot(&self) -> &Vec<i64> {
        &self.coroots[self.highest]
    }

    pub fn coxeter_number(&self) -> i64 {
        self.theta().iter().sum::<i64>() + 1
    }

    /// Interior point of the fundamental alcove where every simple affine root takes the value `1/h`.
    pub fn alcove_center(&self) -> Vec<Q> {
        let h = self.coxeter_number();
        let at = QMat::from_i64(&self.cartan).transpose();
        let rhs = vec![qr(1, h); self.rank];
        at.solve(&rhs).expect("Cartan matrix is invertible")
    }

    /// Simple affine roots: index 0 is `1 - theta`, index `i >= 1` is `alpha_i`.
    pub fn simple_affine_roots(&self) -> Vec<AffineRoot> {
        let mut out = vec![AffineRoot { finite: self.theta().iter().map(|x| -x).collect(), level: 1 }];
        for i in 0..self.rank {
            out.push(AffineRoot { finite: self.roots[i].clone(), level: 0 });
        }
        out
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// Reflection in the simple affine root with index `i` (0 is the affine one).
    pub fn reflect(&self, i: usize, lambda: &[Q]) -> Vec<Q> {
        let (alpha, coroot, level) = if i == 0 {
            (self.theta().iter().map(|x| -x).collect::<Vec<_>>(), self.theta_coroot().iter().map(|x| -x).collect::<Vec<_>>(), 1)
        } else {
            (self.roots[i - 1].clone(), self.coroots[i - 1].clone(), 0)
        };
        let v = self.pair_q(&alpha, lambda) + q(level);
        lambda.iter().zip(&coroot).map(|(x, c)| x - &v * q(*c)).collect()
    }

    pub fn simple_affine_value(&self, i: usize, lambda: &[Q]) -> Q {
        if i == 0 {
            Q::one() - self.pair_q(self.theta(), lambda)
        } else {
            self.pair_q(&self.roots[i - 1], lambda)
        }
    }

    /// Real affine roots vanishing at `y`, each normalized to be positive.
    pub fn walls_through(&self, y: &[Q]) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for idx in 0..self.n_pos {
            let v = self.pair_q(&self.roots[idx], y);
            if v.is_integer() {
                let n = v.to_integer();
                let n: i64 = num_traits::ToPrimitive::to_i64(&n).expect("small level");
                let r = if n <= 0 {
                    AffineRoot { finite: self.roots[idx].clone(), level: -n }
                } else {
                    AffineRoot { finite: self.roots[idx].iter().map(|x| -x).collect(), level: n }
                };
                out.push(r);
            }
        }
        out
    }

    /// Elements of the finite Weyl group.
    pub fn weyl_group(&self) -> Vec<AffineWeylElement> {
        let id = AffineWeylElement::identity(self.rank);
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                let nw = AffineWeylElement::simple(self, i).mul(&w);
                if seen.insert(nw.clone()) {
                    queue.push_back(nw);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort_by_key(|w| (w.length(self), w.reduced_word(self)));
        v
    }
}

/// The affine function `lambda -> <finite, lambda> + level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineRoot {
    pub finite: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(finite: Vec<i64>, level: i64) -> Result<Self> {
        if level == 0 && finite.iter().all(|&x| x == 0) {
            return Err(Error::Invalid("(0, 0) is not an affine root".into()));
        }
        Ok(AffineRoot { finite, level })
    }

    pub fn is_real(&self) -> bool {
        self.finite.iter().any(|&x| x != 0)
    }

    pub fn eval(&self, rd: &RootDatum, lambda: &[Q]) -> Q {
        rd.pair_q(&self.finite, lambda) + q(self.level)
    }

    pub fn is_positive(&self, rd: &RootDatum) -> bool {
        self.level > 0 || (self.level == 0 && rd.root_index(&self.finite).is_some_and(|i| rd.is_positive(i)))
    }

    pub fn name(&self, rd: &RootDatum) -> String {
        if let Some(i) = rd.simple_affine_roots().iter().position(|r| r == self) {
            return format!("alpha{i}");
        }
        let f: Vec<String> = self.finite.iter().map(|x| x.to_string()).collect();
        format!("[{}]{:+}", f.join(","), self.level)
    }
}

/// `lambda -> finite * lambda + translation` on simple-coroot coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    pub finite: Vec<Vec<i64>>,
}

impl fmt::Debug for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W(t={:?}, w={:?})", self.translation, self.finite)
    }
}

impl AffineWeylElement {
    pub fn identity(r: usize) -> Self {
        let mut m = vec![vec![0i64; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        AffineWeylElement { translation: vec![0; r], finite: m }
    }

    /// Simple reflection; index 0 is the affine reflection `s_0`.
    pub fn simple(rd: &RootDatum, i: usize) -> Self {
        let r = rd.rank;
        let (alpha, coroot, level) = if i == 0 {
            (rd.theta().iter().map(|x| -x).collect::<Vec<_>>(), rd.theta_coroot().iter().map(|x| -x).collect::<Vec<_>>(), 1)
        } else {
            (rd.roots[i - 1].clone(), rd.coroots[i - 1].clone(), 0)
        };
        let f = rd.functional(&alpha);
        let mut m = vec![vec![0i64; r]; r];
        for a in 0..r {
            for b in 0..r {
                m[a][b] = i64::from(a == b) - coroot[a] * f[b];
            }
        }
        let t: Vec<i64> = coroot.iter().map(|c| -level * c).collect();
        AffineWeylElement { translation: t, finite: m }
    }

    pub fn translation_by(t: Vec<i64>) -> Self {
        let mut w = Self::identity(t.len());
        w.translation = t;
        w
    }

    pub fn from_word(rd: &RootDatum, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(rd.rank), |acc, &i| acc.mul(&Self::simple(rd, i)))
    }

    pub fn rank(&self) -> usize {
        self.translation.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn is_finite(&self) -> bool {
        self.translation.iter().all(|&x| x == 0)
    }

    pub fn finite_part(&self) -> Self {
        AffineWeylElement { translation: vec![0; self.rank()], finite: self.finite.clone() }
    }

    /// Group law `(t1, w1)(t2, w2) = (t1 + w1 t2, w1 w2)`.
    pub fn mul(&self, o: &Self) -> Self {
        let r = self.rank();
        let mut t = self.translation.clone();
        let mut m = vec![vec![0i64; r]; r];
        for i in 0..r {
            for k in 0..r {
                t[i] += self.finite[i][k] * o.translation[k];
                for j in 0..r {
                    m[i][j] += self.finite[i][k] * o.finite[k][j];
                }
            }
        }
        AffineWeylElement { translation: t, finite: m }
    }

    pub fn inverse(&self) -> Self {
        let r = self.rank();
        let inv = QMat::from_i64(&self.finite).inverse().expect("Weyl group elements are invertible");
        let m: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| crate::rational::to_i64(&inv[(i, j)]).expect("integral inverse")).collect())
            .collect();
        let t: Vec<i64> = (0..r).map(|i| -(0..r).map(|k| m[i][k] * self.translation[k]).sum::<i64>()).collect();
        AffineWeylElement { translation: t, finite: m }
    }

    pub fn act(&self, lambda: &[Q]) -> Vec<Q> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let mut s = q(self.translation[i]);
                for k in 0..r {
                    if self.finite[i][k] != 0 {
                        s += q(self.finite[i][k]) * &lambda[k];
                    }
                }
                s
            })
            .collect()
    }

    /// Reduced word `w = s_{i1} s_{i2} ...`, lexicographically least.
    pub fn reduced_word(&self, rd: &RootDatum) -> Vec<usize> {
        self.reduced_word_by(rd, false)
    }

    /// Reduced word built greedily from the smallest (or largest) left descent.
    pub fn reduced_word_by(&self, rd: &RootDatum, largest: bool) -> Vec<usize> {
        let p0 = rd.alcove_center();
        let mut pt = self.act(&p0);
        let mut word = Vec::new();
        let idx: Vec<usize> = if largest { (0..=rd.rank).rev().collect() } else { (0..=rd.rank).collect() };
        loop {
            let Some(&i) = idx.iter().find(|&&i| rd.simple_affine_value(i, &pt).is_negative()) else { break };
            word.push(i);
            pt = rd.reflect(i, &pt);
        }
        debug_assert_eq!(pt, p0);
        word
    }

    pub fn length(&self, rd: &RootDatum) -> usize {
        self.reduced_word(rd).len()
    }

    /// Left descent test: `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, rd: &RootDatum, i: usize) -> bool {
        rd.simple_affine_value(i, &self.act(&rd.alcove_center())).is_negative()
    }

    pub fn word_string(word: &[usize]) -> String {
        if word.is_empty() {
            "e".into()
        } else {
            word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
        }
    }
}

/// Element of the rational coweight space, in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FractionalCoweight {
    #[serde(serialize_with = "ser_qvec")]
    pub coords: Vec<Q>,
}

impl FractionalCoweight {
    pub fn new(coords: Vec<Q>) -> Self {
        FractionalCoweight { coords }
    }
}

/// Point `exp(2 pi i lambda)` of the torus, coordinates reduced to `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusPoint {
    #[serde(serialize_with = "ser_qvec")]
    pub coords: Vec<Q>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Q>) -> Self {
        TorusPoint { coords: coords.iter().map(frac).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// Action of the finite part of a Weyl group element.
    pub fn act(&self, w: &AffineWeylElement) -> TorusPoint {
        TorusPoint::new(w.finite_part().act(&self.coords))
    }

    /// Complex coordinates `e^{2 pi i c}`.
    pub fn to_complex(&self) -> Vec<num_complex::Complex64> {
        self.coords
            .iter()
            .map(|c| num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * crate::rational::to_f64(c)))
            .collect()
    }
}

pub fn affine_action(rd: &RootDatum, w: &AffineWeylElement, lambda: &[Q]) -> Result<Vec<Q>> {
    rd.check_dim(lambda)?;
    if w.rank() != rd.rank {
        return Err(Error::DimensionMismatch { expected: rd.rank, got: w.rank() });
    }
    Ok(w.act(lambda))
}

/// The unique `w` with `w y` in the fundamental alcove.
pub fn alcove_of(rd: &RootDatum, y: &[Q]) -> Result<AffineWeylElement> {
    rd.check_dim(y)?;
    let walls = rd.walls_through(y);
    if !walls.is_empty() {
        let names: Vec<String> = walls.iter().map(|a| a.name(rd)).collect();
        return Err(Error::Wall(names.join(", ")));
    }
    let mut w = AffineWeylElement::identity(rd.rank);
    let mut pt = y.to_vec();
    loop {
        let Some(i) = (0..=rd.rank).find(|&i| rd.simple_affine_value(i, &pt).is_negative()) else { break };
        pt = rd.reflect(i, &pt);
        w = AffineWeylElement::simple(rd, i).mul(&w);
    }
    Ok(w)
}

pub fn weight_of_alcove(rd: &RootDatum, w: &AffineWeylElement, lambda0: &[Q]) -> Result<Vec<Q>> {
    affine_action(rd, w, lambda0)
}

pub fn exp_map(lambda: &[Q]) -> TorusPoint {
    TorusPoint::new(lambda.to_vec())
}

/// Interior point of the alcove `w^{-1} nu_0`.
pub fn alcove_point(rd: &RootDatum, w: &AffineWeylElement) -> Vec<Q> {
    w.inverse().act(&rd.alcove_center())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(build_root_datum("A", 1).unwrap().num_roots(), 2);
        assert_eq!(build_root_datum("A", 2).unwrap().num_roots(), 6);
        assert_eq!(build_root_datum("C", 2).unwrap().num_roots(), 8);
        assert_eq!(build_root_datum("C", 3).unwrap().num_roots(), 18);
        assert_eq!(build_root_datum("A", 3).unwrap().num_roots(), 12);
    }

    #[test]
    fn pairing_is_two() {
        for (t, r) in [("A", 1), ("A", 3), ("C", 2), ("C", 3)] {
            let rd = build_root_datum(t, r).unwrap();
            for (a, c) in rd.roots.iter().zip(&rd.coroots) {
                assert_eq!(rd.pairing(a, c), 2);
            }
        }
    }

    #[test]
    fn invalid_cartan() {
        assert!(RootDatum::new(&CartanType::Explicit(vec![vec![2, 1], vec![1, 2]]), 2).is_err());
        assert!(RootDatum::new(&CartanType::Explicit(vec![vec![2, -3], vec![-3, 2]]), 2).is_err());
        assert!(RootDatum::new(&CartanType::Explicit(vec![vec![2, 0], vec![0, 2]]), 2).is_err());
        assert!(RootDatum::new(&CartanType::Explicit(vec![vec![2, -1], vec![0, 2]]), 2).is_err());
        let g2 = RootDatum::new(&CartanType::Explicit(vec![vec![2, -1], vec![-3, 2]]), 2).unwrap();
        assert_eq!(g2.num_roots(), 12);
    }

    #[test]
    fn a1_examples() {
        let rd = build_root_datum("A", 1).unwrap();
        let s0 = AffineWeylElement::simple(&rd, 0);
        let s1 = AffineWeylElement::simple(&rd, 1);
        assert_eq!(s1.act(&[qr(1, 4)]), vec![qr(-1, 4)]);
        assert_eq!(s0.act(&[qr(1, 4)]), vec![qr(3, 4)]);
        assert_eq!(alcove_of(&rd, &[qr(1, 4)]).unwrap(), AffineWeylElement::identity(1));
        assert_eq!(alcove_of(&rd, &[qr(-1, 4)]).unwrap(), s1);
        match alcove_of(&rd, &[qr(1, 2)]) {
            Err(Error::Wall(n)) => assert_eq!(n, "alpha0"),
            other => panic!("{other:?}"),
        }
        assert_eq!(s0.mul(&s1).act(&[qr(1, 4)]), vec![qr(5, 4)]);
        assert_eq!(s0.mul(&s1).reduced_word(&rd), vec![0, 1]);
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(build_root_datum("A", 2).unwrap().weyl_group().len(), 6);
        assert_eq!(build_root_datum("C", 2).unwrap().weyl_group().len(), 8);
        assert_eq!(build_root_datum("A", 3).unwrap().weyl_group().len(), 24);
    }
}
