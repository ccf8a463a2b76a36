//! Finite-dimensional `U_q(sl2)` modules `V_n`, their tensor products and duals.
//!
//! Convention: weight basis `m_0..m_n` with
//! `K m_j = q^(n-2j) m_j`, `F m_j = [j+1] m_(j+1)`, `E m_j = [n-j+1] m_(j-1)`,
//! and coproduct `ΔE = E⊗1 + K⊗E`, `ΔF = F⊗K⁻¹ + 1⊗F`, `ΔK = K⊗K`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::ring::{quantum_integer, CycloScalar, Cyclotomic, LaurentScalar, Scalar, ScalarRing};

/// Default bound on the dimension of any tensor-product space.
pub const DEFAULT_DIM_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("tensor dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("empty factor list")]
    NoFactors,
    #[error("E not nilpotent at level {0}")]
    NotNilpotent(u32),
}

/// Action matrices of `E`, `F`, `K`, `K⁻¹` on a module with a weight basis.
///
/// `weights[i]` is the exponent `w` with `K e_i = q^w e_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Action<S> {
    pub weights: Vec<i64>,
    pub e: Matrix<S>,
    pub f: Matrix<S>,
    pub k: Matrix<S>,
    pub kinv: Matrix<S>,
}

impl<S: Scalar> Action<S> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn map<T: Scalar>(&self, g: impl Fn(&S) -> T + Copy) -> Action<T> {
        Action {
            weights: self.weights.clone(),
            e: self.e.map(g),
            f: self.f.map(g),
            k: self.k.map(g),
            kinv: self.kinv.map(g),
        }
    }

    pub fn generator(&self, g: Generator) -> &Matrix<S> {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::K => &self.k,
            Generator::KInv => &self.kinv,
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Action<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Action")
            .field("weights", &self.weights)
            .field("e", &self.e)
            .field("f", &self.f)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

/// The simple module `V_n` of dimension `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVn<S> {
    pub n: u32,
    pub action: Action<S>,
}

impl<S: Scalar> RepVn<S> {
    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }

    /// `V_n` stays simple at truncation level `l` only for `n <= l - 2`.
    pub fn is_simple_at(&self, level: u32) -> bool {
        self.n + 2 <= level
    }
}

/// `V_{n_1} ⊗ ... ⊗ V_{n_k}` with the iterated coproduct action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRep<S> {
    pub factors: Vec<u32>,
    pub action: Action<S>,
}

fn generic_rep(n: u32) -> Action<LaurentScalar> {
    let d = n as usize + 1;
    let n = n as i64;
    let weights: Vec<i64> = (0..n + 1).map(|j| n - 2 * j).collect();
    let mut e = Matrix::zeros(d, d);
    let mut f = Matrix::zeros(d, d);
    for j in 0..d {
        let jj = j as i64;
        if j + 1 < d {
            f.set(j + 1, j, quantum_integer(jj + 1));
        }
        if j >= 1 {
            e.set(j - 1, j, quantum_integer(n - jj + 1));
        }
    }
    let k = Matrix::diagonal(weights.iter().map(|w| LaurentScalar::q_pow(*w)));
    let kinv = Matrix::diagonal(weights.iter().map(|w| LaurentScalar::q_pow(-*w)));
    Action {
        weights,
        e,
        f,
        k,
        kinv,
    }
}

/// The module `V_n` over `ring`.
pub fn make_rep<R: ScalarRing>(ring: &R, n: u32) -> RepVn<R::Elem> {
    RepVn {
        n,
        action: generic_rep(n).map(|x| ring.embed(x)),
    }
}

/// `Δ`-action on `a ⊗ b`.
pub fn tensor_pair<R: ScalarRing>(
    ring: &R,
    a: &Action<R::Elem>,
    b: &Action<R::Elem>,
) -> Action<R::Elem> {
    let ia = Matrix::identity(ring, a.dim());
    let ib = Matrix::identity(ring, b.dim());
    let weights = a
        .weights
        .iter()
        .flat_map(|wa| b.weights.iter().map(move |wb| wa + wb))
        .collect();
    Action {
        weights,
        e: a.e.kron(&ib).add(&a.k.kron(&b.e)),
        f: a.f.kron(&b.kinv).add(&ia.kron(&b.f)),
        k: a.k.kron(&b.k),
        kinv: a.kinv.kron(&b.kinv),
    }
}

/// Left-nested iterated coproduct action on `V_{n_1} ⊗ ... ⊗ V_{n_k}`.
pub fn tensor_action<R: ScalarRing>(
    ring: &R,
    factors: &[u32],
    cap: usize,
) -> Result<TensorRep<R::Elem>, RepError> {
    let (first, rest) = factors.split_first().ok_or(RepError::NoFactors)?;
    let dim: usize = factors.iter().map(|n| *n as usize + 1).product();
    if dim > cap {
        return Err(RepError::DimensionCap { dim, cap });
    }
    let action = rest.iter().fold(make_rep(ring, *first).action, |acc, n| {
        tensor_pair(ring, &acc, &make_rep(ring, *n).action)
    });
    Ok(TensorRep {
        factors: factors.to_vec(),
        action,
    })
}

/// Dual module: `x · f = f(S(x) · -)` with `S(E) = -K⁻¹E`, `S(F) = -FK`, `S(K) = K⁻¹`.
pub fn dual_action<S: Scalar>(a: &Action<S>) -> Action<S> {
    Action {
        weights: a.weights.iter().map(|w| -w).collect(),
        e: a.kinv.mul(&a.e).neg().transpose(),
        f: a.f.mul(&a.k).neg().transpose(),
        k: a.kinv.transpose(),
        kinv: a.k.transpose(),
    }
}

pub fn dual_rep<S: Scalar>(r: &RepVn<S>) -> Action<S> {
    dual_action(&r.action)
}

/// Which defining relation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    KKinv,
    KinvK,
    KE,
    KF,
    Commutator,
    WeightsMatchK,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::KKinv => "K K^-1 = 1",
            Relation::KinvK => "K^-1 K = 1",
            Relation::KE => "K E = q^2 E K",
            Relation::KF => "K F = q^-2 F K",
            Relation::Commutator => "(q - q^-1)(EF - FE) = K - K^-1",
            Relation::WeightsMatchK => "K diagonal with q^weight entries",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("relation {relation} fails at entry ({row}, {col})")]
pub struct RelationFailure {
    pub relation: Relation,
    pub row: usize,
    pub col: usize,
}

fn compare<S: Scalar>(
    relation: Relation,
    lhs: &Matrix<S>,
    rhs: &Matrix<S>,
) -> Result<(), RelationFailure> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((row, col)) => Err(RelationFailure { relation, row, col }),
    }
}

/// Exact check of the defining relations on the given action matrices.
///
/// The commutator relation is checked multiplied through by `q - q⁻¹`.
pub fn check_relations<R: ScalarRing>(
    ring: &R,
    a: &Action<R::Elem>,
) -> Result<(), RelationFailure> {
    let id = Matrix::identity(ring, a.dim());
    let diag = Matrix::diagonal(a.weights.iter().map(|w| ring.q_pow(*w)));
    compare(Relation::WeightsMatchK, &a.k, &diag)?;
    compare(Relation::KKinv, &a.k.mul(&a.kinv), &id)?;
    compare(Relation::KinvK, &a.kinv.mul(&a.k), &id)?;
    compare(
        Relation::KE,
        &a.k.mul(&a.e),
        &a.e.mul(&a.k).scale(&ring.q_pow(2)),
    )?;
    compare(
        Relation::KF,
        &a.k.mul(&a.f),
        &a.f.mul(&a.k).scale(&ring.q_pow(-2)),
    )?;
    let q_diff = ring.q_pow(1).sub_ref(&ring.q_pow(-1));
    let comm = a.e.mul(&a.f).sub(&a.f.mul(&a.e)).scale(&q_diff);
    compare(Relation::Commutator, &comm, &a.k.sub(&a.kinv))
}

/// Nilpotent Jordan type of `E` at truncation level `level`, as block size -> multiplicity.
///
/// Multiplicities come from ranks of powers:
/// `#blocks of size s = r(s-1) - 2 r(s) + r(s+1)` with `r(s) = rank E^s`.
pub fn jordan_type_e(
    ring: &Cyclotomic,
    a: &Action<CycloScalar>,
    level: u32,
) -> Result<BTreeMap<usize, usize>, RepError> {
    let field = ring.field();
    let zero = ring.zero();
    let mut ranks = vec![a.dim()];
    let mut power = Matrix::identity(ring, a.dim());
    for _ in 1..=level {
        power = power.mul(&a.e);
        ranks.push(if power.is_zero() {
            0
        } else {
            field.rank(&power.to_dense(&zero))
        });
    }
    if *ranks.last().expect("nonempty") != 0 {
        return Err(RepError::NotNilpotent(level));
    }
    ranks.push(0);
    let mut blocks = BTreeMap::new();
    for s in 1..=level as usize {
        let mult = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        if mult > 0 {
            blocks.insert(s, mult);
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Generic;

    #[test]
    fn trivial_module() {
        let r = make_rep(&Generic, 0);
        assert!(r.action.e.is_zero() && r.action.f.is_zero());
        assert!(r.action.k.get(0, 0).unwrap().is_one());
        check_relations(&Generic, &r.action).unwrap();
    }

    #[test]
    fn fundamental_module() {
        let r = make_rep(&Generic, 1);
        assert_eq!(
            r.action.k,
            Matrix::diagonal([LaurentScalar::q_pow(1), LaurentScalar::q_pow(-1)])
        );
        assert!(r.action.e.get(0, 1).unwrap().is_one());
        assert!(r.action.f.get(1, 0).unwrap().is_one());
        assert_eq!(r.action.e.nnz() + r.action.f.nnz(), 2);
    }

    #[test]
    fn relations_hold_generically() {
        for n in 0..=6 {
            check_relations(&Generic, &make_rep(&Generic, n).action).unwrap();
        }
    }

    #[test]
    fn relations_hold_at_roots_of_unity() {
        for (m, level) in [(6u32, 3u32), (16, 4), (10, 5), (14, 7)] {
            let ring = Cyclotomic::new(m).unwrap();
            for n in 0..=level - 2 {
                check_relations(&ring, &make_rep(&ring, n).action).unwrap();
            }
        }
    }

    #[test]
    fn commutator_is_quantum_integer_on_weights() {
        for n in 0..=6u32 {
            let a = make_rep(&Generic, n).action;
            let comm = a.e.mul(&a.f).sub(&a.f.mul(&a.e));
            for j in 0..=n as usize {
                let expect = quantum_integer(n as i64 - 2 * j as i64);
                assert_eq!(comm.get(j, j).cloned().unwrap_or_default(), expect);
            }
            assert!(comm.is_diagonal());
        }
    }

    #[test]
    fn mutated_entry_is_caught() {
        let mut a = make_rep(&Generic, 2).action;
        a.e.set(0, 1, LaurentScalar::from_int(7));
        let err = check_relations(&Generic, &a).unwrap_err();
        assert_eq!(err.relation, Relation::Commutator);
    }

    #[test]
    fn tensor_square_of_fundamental() {
        let t = tensor_action(&Generic, &[1, 1], DEFAULT_DIM_CAP).unwrap();
        check_relations(&Generic, &t.action).unwrap();
        let expect_k = Matrix::diagonal([
            LaurentScalar::q_pow(2),
            LaurentScalar::one(),
            LaurentScalar::one(),
            LaurentScalar::q_pow(-2),
        ]);
        assert_eq!(t.action.k, expect_k);
        // E kills the highest weight vector m0 ⊗ m0.
        assert!(t.action.e.entries().all(|(_, j, _)| j != 0));
    }

    #[test]
    fn coassociativity_of_triple() {
        let r = |n| make_rep(&Generic, n).action;
        let left = tensor_pair(&Generic, &tensor_pair(&Generic, &r(1), &r(1)), &r(1));
        let right = tensor_pair(&Generic, &r(1), &tensor_pair(&Generic, &r(1), &r(1)));
        assert_eq!(left, right);
    }

    #[test]
    fn dimension_cap() {
        let err = tensor_action(&Generic, &[3, 3, 3, 3, 3, 3, 3], DEFAULT_DIM_CAP).unwrap_err();
        assert_eq!(
            err,
            RepError::DimensionCap {
                dim: 16384,
                cap: 4096
            }
        );
        assert_eq!(
            tensor_action(&Generic, &[], 10).unwrap_err(),
            RepError::NoFactors
        );
    }

    #[test]
    fn duals() {
        let v0 = make_rep(&Generic, 0);
        assert_eq!(dual_rep(&v0), v0.action);
        for n in 0..=4 {
            let r = make_rep(&Generic, n);
            let d = dual_rep(&r);
            check_relations(&Generic, &d).unwrap();
            let spectrum: Vec<i64> = r.action.weights.iter().map(|w| -w).collect();
            assert_eq!(d.weights, spectrum);
        }
    }

    #[test]
    fn jordan_types() {
        let ring = Cyclotomic::new(10).unwrap();
        for n in 0..=3u32 {
            let r = make_rep(&ring, n);
            let blocks = jordan_type_e(&ring, &r.action, 5).unwrap();
            assert_eq!(blocks, BTreeMap::from([(n as usize + 1, 1)]));
        }
        let t = tensor_action(&ring, &[1, 1], DEFAULT_DIM_CAP).unwrap();
        assert_eq!(
            jordan_type_e(&ring, &t.action, 5).unwrap(),
            BTreeMap::from([(1, 1), (3, 1)])
        );
        let t = tensor_action(&ring, &[3, 3], DEFAULT_DIM_CAP).unwrap();
        assert_eq!(
            jordan_type_e(&ring, &t.action, 5).unwrap(),
            BTreeMap::from([(1, 1), (5, 3)])
        );
    }

    #[test]
    fn jordan_type_rejects_non_nilpotent_level() {
        let ring = Cyclotomic::new(10).unwrap();
        let t = tensor_action(&ring, &[3, 3], DEFAULT_DIM_CAP).unwrap();
        assert_eq!(
            jordan_type_e(&ring, &t.action, 3),
            Err(RepError::NotNilpotent(3))
        );
    }
}
