//! Bialgebra and Hopf axioms for finite-dimensional algebras given by
//! structure constants, duals, and function algebras of finite groups.
//!
//! Conventions: `x_a x_b = Σ_e mult[a][b][e] x_e`,
//! `Δ(x_a) = Σ comult[a][b][e] x_b ⊗ x_e`, `S(x_a) = Σ_b antipode[a][b] x_b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::LaurentScalar;

type S = LaurentScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing antipode")]
    MissingAntipode,
    #[error("not a group: {reason} at {triple:?}")]
    NotAGroup {
        reason: String,
        triple: (usize, usize, usize),
    },
    #[error("input fails {0}")]
    FailedCheck(Box<AxiomFailure>),
    #[error("bad JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Associativity.
    H1_1,
    /// Unit.
    H1_2,
    /// Coassociativity.
    H2_1,
    /// Counit.
    H2_2,
    /// `Δ` is multiplicative.
    H3_1,
    /// `ε` is multiplicative and `ε(1) = 1`.
    H3_2,
    /// `Δ(1) = 1 ⊗ 1` and `ε(1) = 1`.
    H3_3,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::H1_1,
        Axiom::H1_2,
        Axiom::H2_1,
        Axiom::H2_2,
        Axiom::H3_1,
        Axiom::H3_2,
        Axiom::H3_3,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::H1_1 => "H1.1",
            Axiom::H1_2 => "H1.2",
            Axiom::H2_1 => "H2.1",
            Axiom::H2_2 => "H2.2",
            Axiom::H3_1 => "H3.1",
            Axiom::H3_2 => "H3.2",
            Axiom::H3_3 => "H3.3",
        };
        f.write_str(s)
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// Where an identity fails: the first index tuple in lexicographic order,
/// the clause that failed there and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{check} fails at {indices:?} ({clause}): {lhs} != {rhs}")]
pub struct AxiomFailure {
    pub check: String,
    pub clause: String,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteBialgebra {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<S>>>,
    pub unit: Vec<S>,
    pub comult: Vec<Vec<Vec<S>>>,
    pub counit: Vec<S>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<S>>>,
}

fn int(n: i64) -> S {
    S::from_int(n)
}

fn delta(a: usize, b: usize) -> S {
    int(i64::from(a == b))
}

fn cube(n: usize) -> Vec<Vec<Vec<S>>> {
    vec![vec![vec![S::zero(); n]; n]; n]
}

fn sum<I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::zero(), |acc, x| &acc + &x)
}

impl FiniteBialgebra {
    /// The one-dimensional Hopf algebra: `m = Δ = id`, `η = ε = 1`, `S = id`.
    pub fn trivial() -> Self {
        Self {
            dim: 1,
            mult: vec![vec![vec![int(1)]]],
            unit: vec![int(1)],
            comult: vec![vec![vec![int(1)]]],
            counit: vec![int(1)],
            antipode: Some(vec![vec![int(1)]]),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HopfError> {
        let b: FiniteBialgebra =
            serde_json::from_str(text).map_err(|e| HopfError::Json(e.to_string()))?;
        b.validate_shape()?;
        Ok(b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn validate_shape(&self) -> Result<(), HopfError> {
        let n = self.dim;
        let bad = |what: &str| {
            Err(HopfError::DimensionMismatch(format!(
                "{what} does not match dim {n}"
            )))
        };
        if n == 0 {
            return Err(HopfError::DimensionMismatch("dim must be positive".into()));
        }
        let is_cube = |t: &Vec<Vec<Vec<S>>>| {
            t.len() == n
                && t.iter()
                    .all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
        };
        if !is_cube(&self.mult) {
            return bad("mult");
        }
        if !is_cube(&self.comult) {
            return bad("comult");
        }
        if self.unit.len() != n {
            return bad("unit");
        }
        if self.counit.len() != n {
            return bad("counit");
        }
        if let Some(s) = &self.antipode {
            if s.len() != n || s.iter().any(|r| r.len() != n) {
                return bad("antipode");
            }
        }
        Ok(())
    }
}

struct Checker {
    name: String,
}

impl Checker {
    fn expect(&self, clause: &str, indices: &[usize], lhs: S, rhs: S) -> Result<(), AxiomFailure> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(AxiomFailure {
                check: self.name.clone(),
                clause: clause.into(),
                indices: indices.to_vec(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        }
    }
}

fn for_tuples<const K: usize>(
    n: usize,
    mut f: impl FnMut([usize; K]) -> Result<(), AxiomFailure>,
) -> Result<(), AxiomFailure> {
    let total = n.pow(K as u32);
    for mut idx in 0..total {
        let mut t = [0usize; K];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        f(t)?;
    }
    Ok(())
}

/// Checks one axiom as an exact identity of structure-constant arrays.
pub fn check_axiom(b: &FiniteBialgebra, which: Axiom) -> Result<(), AxiomFailure> {
    b.validate_shape().map_err(|e| AxiomFailure {
        check: which.to_string(),
        clause: "shape".into(),
        indices: vec![],
        lhs: e.to_string(),
        rhs: String::new(),
    })?;
    let n = b.dim;
    let (c, d, u, eps) = (&b.mult, &b.comult, &b.unit, &b.counit);
    let ck = Checker {
        name: which.to_string(),
    };
    match which {
        Axiom::H1_1 => for_tuples::<4>(n, |[a, bb, f, g]| {
            let lhs = sum((0..n).map(|e| &c[a][bb][e] * &c[e][f][g]));
            let rhs = sum((0..n).map(|e| &c[bb][f][e] * &c[a][e][g]));
            ck.expect("m(m ⊗ id) = m(id ⊗ m)", &[a, bb, f, g], lhs, rhs)
        }),
        Axiom::H1_2 => for_tuples::<2>(n, |[bb, g]| {
            let left = sum((0..n).map(|a| &u[a] * &c[a][bb][g]));
            ck.expect("m(η ⊗ id) = id", &[bb, g], left, delta(bb, g))?;
            let right = sum((0..n).map(|a| &u[a] * &c[bb][a][g]));
            ck.expect("m(id ⊗ η) = id", &[bb, g], right, delta(bb, g))
        }),
        Axiom::H2_1 => for_tuples::<4>(n, |[a, bb, f, g]| {
            let lhs = sum((0..n).map(|e| &d[a][e][g] * &d[e][bb][f]));
            let rhs = sum((0..n).map(|e| &d[a][bb][e] * &d[e][f][g]));
            ck.expect("(Δ ⊗ id)Δ = (id ⊗ Δ)Δ", &[a, bb, f, g], lhs, rhs)
        }),
        Axiom::H2_2 => for_tuples::<2>(n, |[a, g]| {
            let left = sum((0..n).map(|bb| &eps[bb] * &d[a][bb][g]));
            ck.expect("(ε ⊗ id)Δ = id", &[a, g], left, delta(a, g))?;
            let right = sum((0..n).map(|e| &eps[e] * &d[a][g][e]));
            ck.expect("(id ⊗ ε)Δ = id", &[a, g], right, delta(a, g))
        }),
        Axiom::H3_1 => for_tuples::<4>(n, |[a, bb, f, g]| {
            let lhs = sum((0..n).map(|e| &c[a][bb][e] * &d[e][f][g]));
            let mut rhs = S::zero();
            for p in 0..n {
                for r in 0..n {
                    if d[a][p][r].is_zero() {
                        continue;
                    }
                    for s in 0..n {
                        for t in 0..n {
                            if d[bb][s][t].is_zero() {
                                continue;
                            }
                            let x = &(&d[a][p][r] * &d[bb][s][t]) * &(&c[p][s][f] * &c[r][t][g]);
                            rhs = &rhs + &x;
                        }
                    }
                }
            }
            ck.expect("Δm = (m ⊗ m)(id ⊗ τ ⊗ id)(Δ ⊗ Δ)", &[a, bb, f, g], lhs, rhs)
        }),
        Axiom::H3_2 => {
            let one = sum((0..n).map(|a| &u[a] * &eps[a]));
            ck.expect("ε(1) = 1", &[], one, int(1))?;
            for_tuples::<2>(n, |[a, bb]| {
                let lhs = sum((0..n).map(|e| &c[a][bb][e] * &eps[e]));
                ck.expect("εm = ε ⊗ ε", &[a, bb], lhs, &eps[a] * &eps[bb])
            })
        }
        Axiom::H3_3 => {
            let one = sum((0..n).map(|a| &u[a] * &eps[a]));
            ck.expect("ε(1) = 1", &[], one, int(1))?;
            for_tuples::<2>(n, |[f, g]| {
                let lhs = sum((0..n).map(|a| &u[a] * &d[a][f][g]));
                ck.expect("Δ(1) = 1 ⊗ 1", &[f, g], lhs, &u[f] * &u[g])
            })
        }
    }
}

/// `m(S ⊗ id)Δ = ηε = m(id ⊗ S)Δ`.
pub fn check_antipode(b: &FiniteBialgebra) -> Result<Result<(), AxiomFailure>, HopfError> {
    b.validate_shape()?;
    let s = b.antipode.as_ref().ok_or(HopfError::MissingAntipode)?;
    let n = b.dim;
    let (c, d, u, eps) = (&b.mult, &b.comult, &b.unit, &b.counit);
    let ck = Checker {
        name: "antipode".into(),
    };
    Ok(for_tuples::<2>(n, |[a, g]| {
        let target = &eps[a] * &u[g];
        let mut left = S::zero();
        let mut right = S::zero();
        for bb in 0..n {
            for e in 0..n {
                if d[a][bb][e].is_zero() {
                    continue;
                }
                for p in 0..n {
                    left = &left + &(&d[a][bb][e] * &(&s[bb][p] * &c[p][e][g]));
                    right = &right + &(&d[a][bb][e] * &(&s[e][p] * &c[bb][p][g]));
                }
            }
        }
        ck.expect("m(S ⊗ id)Δ = ηε", &[a, g], left, target.clone())?;
        ck.expect("m(id ⊗ S)Δ = ηε", &[a, g], right, target)
    }))
}

/// Runs all seven axioms and, if present, the antipode check.
pub fn check_all(b: &FiniteBialgebra) -> Vec<(String, Result<(), AxiomFailure>)> {
    let mut out: Vec<(String, Result<(), AxiomFailure>)> = Axiom::ALL
        .iter()
        .map(|a| (a.to_string(), check_axiom(b, *a)))
        .collect();
    if let Ok(r) = check_antipode(b) {
        out.push(("antipode".into(), r));
    }
    out
}

/// `(A*, Δ*, m*, ε*, η*)` with the transposed antipode.
pub fn dual_hopf(b: &FiniteBialgebra) -> Result<FiniteBialgebra, HopfError> {
    b.validate_shape()?;
    if let Some((_, Err(f))) = check_all(b).into_iter().find(|(_, r)| r.is_err()) {
        return Err(HopfError::FailedCheck(Box::new(f)));
    }
    let n = b.dim;
    let mut mult = cube(n);
    let mut comult = cube(n);
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                mult[x][y][a] = b.comult[a][x][y].clone();
                comult[y][a][x] = b.mult[a][x][y].clone();
            }
        }
    }
    let antipode = b.antipode.as_ref().map(|s| {
        (0..n)
            .map(|i| (0..n).map(|j| s[j][i].clone()).collect())
            .collect()
    });
    Ok(FiniteBialgebra {
        dim: n,
        mult,
        unit: b.counit.clone(),
        comult,
        counit: b.unit.clone(),
        antipode,
    })
}

/// A finite group as a multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = table.len();
        let not = |reason: &str, triple| {
            Err(HopfError::NotAGroup {
                reason: reason.into(),
                triple,
            })
        };
        if n == 0 {
            return not("empty table", (0, 0, 0));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return not("ragged table", (a, 0, 0));
            }
            if let Some(b) = row.iter().position(|x| *x >= n) {
                return not("not closed", (a, b, row[b]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return not("not associative", (a, b, c));
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return not("no identity", (0, 0, 0));
        };
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == e && table[h][g] == e) {
                Some(h) => inverse.push(h),
                None => return not("no inverse", (g, e, e)),
            }
        }
        Ok(Self {
            table,
            identity: e,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

pub fn cyclic_group(n: usize) -> GroupTable {
    GroupTable::new(
        (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect(),
    )
    .expect("cyclic group")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `S_n` with elements in lexicographic order; the product is `(στ)(i) = σ(τ(i))`.
pub fn symmetric_group(n: usize) -> GroupTable {
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("permutation");
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index(&t.iter().map(|&i| s[i]).collect()))
                .collect()
        })
        .collect();
    GroupTable::new(table).expect("symmetric group")
}

/// `G × H` with `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
    let (n, m) = (g.order(), h.order());
    let table = (0..n * m)
        .map(|x| {
            (0..n * m)
                .map(|y| g.table[x / m][y / m] * m + h.table[x % m][y % m])
                .collect()
        })
        .collect();
    GroupTable::new(table).expect("direct product")
}

/// Functions on `G`: pointwise product, `Δf(x, y) = f(xy)`, `ε(f) = f(e)`,
/// `S(f)(x) = f(x⁻¹)`, in the basis of delta functions.
pub fn group_function_algebra(table: Vec<Vec<usize>>) -> Result<FiniteBialgebra, HopfError> {
    let g = GroupTable::new(table)?;
    Ok(function_algebra(&g))
}

pub fn function_algebra(g: &GroupTable) -> FiniteBialgebra {
    let n = g.order();
    let mut mult = cube(n);
    let mut comult = cube(n);
    let mut antipode = vec![vec![S::zero(); n]; n];
    for x in 0..n {
        mult[x][x][x] = int(1);
        antipode[x][g.inverse[x]] = int(1);
        for y in 0..n {
            comult[g.table[x][y]][x][y] = int(1);
        }
    }
    FiniteBialgebra {
        dim: n,
        mult,
        unit: vec![int(1); n],
        comult,
        counit: (0..n).map(|x| delta(x, g.identity)).collect(),
        antipode: Some(antipode),
    }
}

/// The group algebra `k[G]`: `g · h = gh`, `Δg = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &GroupTable) -> FiniteBialgebra {
    let n = g.order();
    let mut mult = cube(n);
    let mut comult = cube(n);
    let mut antipode = vec![vec![S::zero(); n]; n];
    for x in 0..n {
        comult[x][x][x] = int(1);
        antipode[x][g.inverse[x]] = int(1);
        for y in 0..n {
            mult[x][y][g.table[x][y]] = int(1);
        }
    }
    FiniteBialgebra {
        dim: n,
        mult,
        unit: (0..n).map(|x| delta(x, g.identity)).collect(),
        comult,
        counit: vec![int(1); n],
        antipode: Some(antipode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(b: &FiniteBialgebra) {
        for (name, r) in check_all(b) {
            assert!(r.is_ok(), "{name}: {r:?}");
        }
        assert_eq!(check_all(b).len(), 8);
    }

    #[test]
    fn trivial_algebra() {
        let t = FiniteBialgebra::trivial();
        all_pass(&t);
        assert_eq!(dual_hopf(&t).unwrap(), t);
    }

    #[test]
    fn small_groups() {
        for g in [
            cyclic_group(2),
            cyclic_group(4),
            symmetric_group(3),
            direct_product(&cyclic_group(2), &cyclic_group(2)),
        ] {
            let b = function_algebra(&g);
            all_pass(&b);
            let d = dual_hopf(&b).unwrap();
            all_pass(&d);
            assert_eq!(dual_hopf(&d).unwrap(), b);
            all_pass(&group_algebra(&g));
        }
    }

    #[test]
    fn mutated_multiplication() {
        // On functions of Z/2 this only rescales an idempotent and stays associative.
        let mut b = function_algebra(&cyclic_group(2));
        b.mult[0][0][0] = &b.mult[0][0][0] + &int(1);
        assert!(check_axiom(&b, Axiom::H1_1).is_ok());
        assert!(check_axiom(&b, Axiom::H1_2).is_err());
        let mut b = group_algebra(&cyclic_group(2));
        b.mult[0][0][0] = &b.mult[0][0][0] + &int(1);
        let f = check_axiom(&b, Axiom::H1_1).unwrap_err();
        assert_eq!(f.indices, vec![0, 0, 1, 1]);
    }

    #[test]
    fn identity_is_not_an_antipode_on_z3() {
        let mut b = group_algebra(&cyclic_group(3));
        b.antipode = Some(
            (0..3)
                .map(|i| (0..3).map(|j| delta(i, j)).collect())
                .collect(),
        );
        let f = check_antipode(&b).unwrap().unwrap_err();
        assert_eq!(f.indices, vec![1, 0]);
        b.antipode = None;
        assert_eq!(check_antipode(&b).unwrap_err(), HopfError::MissingAntipode);
    }

    #[test]
    fn magma_is_rejected() {
        // a*b = a - b mod 3 has no identity and fails associativity first.
        let table: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect())
            .collect();
        let e = group_function_algebra(table).unwrap_err();
        assert!(
            matches!(e, HopfError::NotAGroup { ref reason, triple: (0, 0, 1) } if reason == "not associative"),
            "{e}"
        );
        assert!(e.to_string().starts_with("not a group"));
    }

    #[test]
    fn symmetric_group_shape() {
        let s3 = symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity, 0);
        let commuting = (0..6).all(|a| (0..6).all(|b| s3.table[a][b] == s3.table[b][a]));
        assert!(!commuting);
    }

    #[test]
    fn json_roundtrip() {
        let b = function_algebra(&cyclic_group(2));
        let text = b.to_json().to_string();
        assert_eq!(FiniteBialgebra::from_json(&text).unwrap(), b);
        let bad = r#"{"dim": 2, "mult": [[[1]]], "unit": [1,1], "comult": [], "counit": [1,0]}"#;
        assert!(matches!(
            FiniteBialgebra::from_json(bad),
            Err(HopfError::DimensionMismatch(_))
        ));
        let laurent =
            r#"{"dim": 1, "mult": [[[1]]], "unit": [1], "comult": [[[{"0": 1}]]], "counit": [1]}"#;
        let b = FiniteBialgebra::from_json(laurent).unwrap();
        assert!(b.antipode.is_none());
        assert!(check_axiom(&b, Axiom::H3_1).is_ok());
    }

    #[test]
    fn axiom_names_roundtrip() {
        for a in Axiom::ALL {
            assert_eq!(a.to_string().parse::<Axiom>().unwrap(), a);
        }
    }
}
