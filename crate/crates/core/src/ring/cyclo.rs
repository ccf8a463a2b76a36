use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{LaurentScalar, Scalar};

/// The modulus `Phi_m(v)` of the cyclotomic quotient `Z[v]/(Phi_m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloModulus {
    order: u32,
    /// Coefficients of `Phi_m`, lowest degree first; monic.
    phi: Vec<BigInt>,
}

impl CycloModulus {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Self {
            order,
            phi: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce an arbitrary-degree polynomial (lowest first) modulo `Phi_m`.
    pub(crate) fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        for top in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in self.phi[..deg].iter().enumerate() {
                poly[top - deg + j] -= &c * pj;
            }
        }
        poly.resize(deg, BigInt::zero());
        poly
    }
}

fn poly_divexact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // `den` is monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quot[top - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[top - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Phi_m` by dividing `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        num = poly_divexact(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// An element of `Z[v]/(Phi_m)`: `v` is a primitive `m`-th root of unity.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloScalar {
    modulus: Arc<CycloModulus>,
    coeffs: Vec<BigInt>,
}

impl CycloScalar {
    pub fn zero(modulus: &Arc<CycloModulus>) -> Self {
        Self {
            modulus: modulus.clone(),
            coeffs: vec![BigInt::zero(); modulus.degree()],
        }
    }

    pub fn from_int(modulus: &Arc<CycloModulus>, n: i64) -> Self {
        let mut out = Self::zero(modulus);
        if !out.coeffs.is_empty() {
            out.coeffs[0] = BigInt::from(n);
        }
        out
    }

    /// Reduce an integer polynomial in `v` (lowest degree first).
    pub fn from_poly(modulus: &Arc<CycloModulus>, poly: Vec<BigInt>) -> Self {
        Self {
            modulus: modulus.clone(),
            coeffs: modulus.reduce(poly),
        }
    }

    pub fn v_pow(modulus: &Arc<CycloModulus>, k: i64) -> Self {
        let m = modulus.order() as i64;
        let r = k.rem_euclid(m) as usize;
        let mut poly = vec![BigInt::zero(); r + 1];
        poly[r] = BigInt::one();
        Self::from_poly(modulus, poly)
    }

    pub fn order(&self) -> u32 {
        self.modulus.order()
    }

    pub fn modulus(&self) -> &Arc<CycloModulus> {
        &self.modulus
    }

    /// Residue coefficients, lowest degree first; length `deg Phi_m`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(One::is_one) && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.modulus.order(),
            other.modulus.order(),
            "mixing cyclotomic scalars of different orders"
        );
    }

    /// Numerical value at `v = exp(2 pi i / m)`, used by test oracles.
    pub fn eval_c64(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let a = theta * k as f64;
                (re + c * a.cos(), im + c * a.sin())
            })
    }
}

impl Scalar for CycloScalar {
    fn is_zero(&self) -> bool {
        CycloScalar::is_zero(self)
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.check_same(other);
        let deg = self.modulus.degree();
        if deg == 0 {
            return self.clone();
        }
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(&self.modulus, prod)
    }

    fn neg_ref(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cyclotomic serialization")
    }
}

impl fmt::Display for CycloScalar {
    /// Printed as the reduced residue polynomial in `z`, where `z` is the root `v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = LaurentScalar::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64, c.clone())),
        );
        let text = terms.to_string().replace('v', "z");
        write!(f, "{text} (mod Phi_{})", self.order())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(small) => serde_json::Value::from(small),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        let mut st = serializer.serialize_struct("CycloScalar", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}
