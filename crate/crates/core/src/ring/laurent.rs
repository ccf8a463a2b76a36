use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Scalar;

/// An integer Laurent polynomial in `v`, stored as exponent -> coefficient.
///
/// Zero coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigInt::from(n), 0)
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The constant integer, if this is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// The substitution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplicative inverse when this is a unit (`±v^k`).
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[v, v^-1]`; `None` if the quotient is not a Laurent polynomial.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lo, d_hi) = (divisor.min_degree()?, divisor.max_degree()?);
        let d_lead = divisor.terms[&d_hi].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top degree; the remainder must vanish once its
        // span is shorter than the divisor's.
        while let Some(r_hi) = rem.max_degree() {
            let r_lo = rem.min_degree()?;
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let (c, r) = rem.terms[&r_hi].div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            let shift = r_hi - d_hi;
            quot.add_term(shift, &c);
            for (e, dc) in divisor.terms() {
                rem.add_term(e + shift, &(-(&c * dc)));
            }
        }
        Some(quot)
    }

    /// Numerical evaluation at a complex point, used by test oracles.
    pub fn eval_c64(&self, re: f64, im: f64) -> (f64, f64) {
        let (r, theta) = ((re * re + im * im).sqrt(), im.atan2(re));
        self.terms.iter().fold((0.0, 0.0), |(ar, ai), (e, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let mag = c * r.powi(*e as i32);
            let ang = theta * (*e as f64);
            (ar + mag * ang.cos(), ai + mag * ang.sin())
        })
    }
}

impl Scalar for LaurentScalar {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("laurent serialization")
    }
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &(-c));
        }
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl fmt::Display for LaurentScalar {
    /// Highest power first, e.g. `v^2 + 1 - 3v^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&e.to_string(), &small)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl JsonCoeff {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            JsonCoeff::Int(n) => Ok(BigInt::from(n)),
            JsonCoeff::Text(s) => s
                .parse()
                .map_err(|_| E::custom(format!("bad integer coefficient {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LaurentVisitor;
        impl<'de> Visitor<'de> for LaurentVisitor {
            type Value = LaurentScalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(
                    f,
                    "an integer or a map from exponent strings to integer coefficients"
                )
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Self::Value, E> {
                Ok(LaurentScalar::from_int(n))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Self::Value, E> {
                Ok(LaurentScalar::monomial(BigInt::from(n), 0))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = LaurentScalar::zero();
                while let Some((key, value)) = access.next_entry::<String, JsonCoeff>()? {
                    let exp: i64 = key
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent key {key:?}")))?;
                    out.add_term(exp, &value.into_bigint()?);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_any(LaurentVisitor)
    }
}
