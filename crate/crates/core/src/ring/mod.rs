//! Exact scalars: integer Laurent polynomials in `v` (with `q = v^2`) and their
//! specializations to cyclotomic quotients.

mod cyclo;
mod field;
mod laurent;

use std::fmt::{self, Debug, Display};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use cyclo::{cyclotomic_polynomial, CycloModulus, CycloScalar};
pub use field::{CycloField, QCyclo};
pub use laurent::LaurentScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("non-exact division computing {0}")]
    InexactDivision(String),
    #[error("degenerate specialization: q - q^-1 vanishes at order {0}")]
    DegenerateSpecialization(u32),
    #[error("no truncation level <= {0}")]
    NoTruncationLevel(u32),
    #[error("cyclotomic order must be >= 3, got {0}")]
    OrderTooSmall(u32),
}

/// Ring element operations shared by the generic and specialized scalars.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn to_json(&self) -> serde_json::Value;
}

/// Which scalar ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingTag {
    Generic,
    Cyclotomic { order: u32 },
}

impl Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Generic => write!(f, "generic"),
            RingTag::Cyclotomic { order } => write!(f, "cyclotomic({order})"),
        }
    }
}

/// A scalar ring together with the constructors the rest of the crate needs.
///
/// Every structural morphism is built over `LaurentScalar` and pushed through
/// [`ScalarRing::embed`], so the specialized computations are images of the
/// generic ones under a ring homomorphism.
pub trait ScalarRing: Clone + Debug + Send + Sync {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn v_pow(&self, k: i64) -> Self::Elem;
    fn embed(&self, x: &LaurentScalar) -> Self::Elem;
    fn tag(&self) -> RingTag;

    fn q_pow(&self, k: i64) -> Self::Elem {
        self.v_pow(2 * k)
    }
}

/// `Z[v, v^-1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Generic;

impl ScalarRing for Generic {
    type Elem = LaurentScalar;

    fn zero(&self) -> LaurentScalar {
        LaurentScalar::zero()
    }
    fn one(&self) -> LaurentScalar {
        LaurentScalar::one()
    }
    fn from_int(&self, n: i64) -> LaurentScalar {
        LaurentScalar::from_int(n)
    }
    fn v_pow(&self, k: i64) -> LaurentScalar {
        LaurentScalar::v_pow(k)
    }
    fn embed(&self, x: &LaurentScalar) -> LaurentScalar {
        x.clone()
    }
    fn tag(&self) -> RingTag {
        RingTag::Generic
    }
}

/// `Z[v]/(Phi_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    modulus: Arc<CycloModulus>,
}

impl Cyclotomic {
    pub fn new(order: u32) -> Result<Self, RingError> {
        if order < 3 {
            return Err(RingError::OrderTooSmall(order));
        }
        Ok(Self {
            modulus: Arc::new(CycloModulus::new(order)),
        })
    }

    pub fn order(&self) -> u32 {
        self.modulus.order()
    }

    pub fn modulus(&self) -> &Arc<CycloModulus> {
        &self.modulus
    }

    pub fn field(&self) -> CycloField {
        CycloField::new(self.modulus.clone())
    }
}

impl ScalarRing for Cyclotomic {
    type Elem = CycloScalar;

    fn zero(&self) -> CycloScalar {
        CycloScalar::zero(&self.modulus)
    }
    fn one(&self) -> CycloScalar {
        CycloScalar::from_int(&self.modulus, 1)
    }
    fn from_int(&self, n: i64) -> CycloScalar {
        CycloScalar::from_int(&self.modulus, n)
    }
    fn v_pow(&self, k: i64) -> CycloScalar {
        CycloScalar::v_pow(&self.modulus, k)
    }
    fn embed(&self, x: &LaurentScalar) -> CycloScalar {
        specialize_with(x, &self.modulus)
    }
    fn tag(&self) -> RingTag {
        RingTag::Cyclotomic {
            order: self.order(),
        }
    }
}

fn specialize_with(x: &LaurentScalar, modulus: &Arc<CycloModulus>) -> CycloScalar {
    let m = modulus.order() as i64;
    let mut poly = vec![num_bigint::BigInt::default(); m as usize];
    for (e, c) in x.terms() {
        poly[e.rem_euclid(m) as usize] += c;
    }
    CycloScalar::from_poly(modulus, poly)
}

/// Image of `x` under `v -> zeta_m`.
pub fn specialize(x: &LaurentScalar, m: u32) -> Result<CycloScalar, RingError> {
    Ok(Cyclotomic::new(m)?.embed(x))
}

/// `[n] = (q^n - q^-n)/(q - q^-1)`, with `[-n] = -[n]`.
pub fn quantum_integer(n: i64) -> LaurentScalar {
    let sign = n.signum();
    let n = n.abs();
    let q = LaurentScalar::from_terms(
        (0..n).map(|j| (2 * (n - 1 - 2 * j), num_bigint::BigInt::from(1))),
    );
    if sign < 0 {
        -q
    } else {
        q
    }
}

/// `[n]! = [n][n-1]...[1]`.
pub fn quantum_factorial(n: u32) -> LaurentScalar {
    (1..=n as i64).fold(LaurentScalar::one(), |acc, k| &acc * &quantum_integer(k))
}

/// `[n]!/([k]![n-k]!)`, computed by exact division.
pub fn quantum_binomial(n: u32, k: u32) -> Result<LaurentScalar, RingError> {
    if k > n {
        return Ok(LaurentScalar::zero());
    }
    let den = &quantum_factorial(k) * &quantum_factorial(n - k);
    quantum_factorial(n)
        .exact_div(&den)
        .ok_or_else(|| RingError::InexactDivision(format!("[{n} choose {k}]")))
}

/// The smallest `l >= 2` with `[l] = 0` once `v` is a primitive `m`-th root of unity.
pub fn find_truncation_level(m: u32) -> Result<u32, RingError> {
    let ring = Cyclotomic::new(m)?;
    let q_minus_qinv = &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1);
    if ring.embed(&q_minus_qinv).is_zero() {
        return Err(RingError::DegenerateSpecialization(m));
    }
    (2..=m)
        .find(|&k| ring.embed(&quantum_integer(k as i64)).is_zero())
        .ok_or(RingError::NoTruncationLevel(m))
}
