//! Linear algebra over the cyclotomic field `Q(zeta_m)`, used for rank
//! computations at roots of unity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CycloModulus, CycloScalar};

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = &rem[top] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[top - dd + j] -= &c * dj;
        }
        quot[top - dd] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// An element of `Q(zeta_m)` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCyclo {
    coeffs: QPoly,
}

/// Field arithmetic for one fixed cyclotomic order.
#[derive(Clone, Debug)]
pub struct CycloField {
    modulus: Arc<CycloModulus>,
    phi: QPoly,
}

impl CycloField {
    pub fn new(modulus: Arc<CycloModulus>) -> Self {
        let phi = modulus
            .phi()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Self { modulus, phi }
    }

    fn reduce(&self, p: QPoly) -> QCyclo {
        let (_, mut rem) = poly_divrem(&p, &self.phi);
        rem.resize(self.modulus.degree(), BigRational::zero());
        QCyclo { coeffs: rem }
    }

    pub fn embed(&self, x: &CycloScalar) -> QCyclo {
        QCyclo {
            coeffs: x
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self, x: &QCyclo) -> bool {
        x.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, a: &QCyclo, b: &QCyclo) -> QCyclo {
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn sub(&self, a: &QCyclo, b: &QCyclo) -> QCyclo {
        self.reduce(poly_sub(&a.coeffs, &b.coeffs))
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_m`.
    pub fn inverse(&self, a: &QCyclo) -> Option<QCyclo> {
        let mut r0 = self.phi.clone();
        let mut r1 = a.coeffs.clone();
        trim(&mut r1);
        if r1.is_empty() {
            return None;
        }
        let mut t0: QPoly = Vec::new();
        let mut t1: QPoly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&quot, &t1));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
            if r1.is_empty() {
                // gcd has positive degree; Phi_m is irreducible so this cannot happen
                // for a nonzero residue.
                return None;
            }
        }
        let c = r1[0].clone();
        let scaled: QPoly = t1.into_iter().map(|t| t / &c).collect();
        Some(self.reduce(scaled))
    }

    /// Rank of a matrix with entries in `Z[zeta_m]`, computed over `Q(zeta_m)`.
    pub fn rank(&self, rows: &[Vec<CycloScalar>]) -> usize {
        let mut m: Vec<Vec<QCyclo>> = rows
            .iter()
            .map(|r| r.iter().map(|x| self.embed(x)).collect())
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !self.is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self
                .inverse(&m[rank][col])
                .expect("nonzero element of a field");
            let pivot_row: Vec<QCyclo> = m[rank].iter().map(|x| self.mul(x, &inv)).collect();
            for r in (rank + 1)..m.len() {
                if self.is_zero(&m[r][col]) {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in col..ncols {
                    if self.is_zero(&pivot_row[c]) {
                        continue;
                    }
                    let delta = self.mul(&factor, &pivot_row[c]);
                    m[r][c] = self.sub(&m[r][c], &delta);
                }
            }
            m[rank] = pivot_row;
            rank += 1;
        }
        rank
    }
}

impl QCyclo {
    pub fn from_int(deg: usize, n: i64) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg];
        if deg > 0 {
            coeffs[0] = BigRational::from_integer(BigInt::from(n));
        }
        Self { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let md = Arc::new(CycloModulus::new(10));
        let field = CycloField::new(md.clone());
        let x = CycloScalar::from_poly(
            &md,
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(3)],
        );
        let xq = field.embed(&x);
        let inv = field.inverse(&xq).unwrap();
        assert_eq!(field.mul(&xq, &inv), QCyclo::from_int(md.degree(), 1));
        assert!(field.inverse(&QCyclo::from_int(md.degree(), 0)).is_none());
    }

    #[test]
    fn rank_of_singular_matrix() {
        let md = Arc::new(CycloModulus::new(5));
        let field = CycloField::new(md.clone());
        let z = CycloScalar::v_pow(&md, 1);
        let one = CycloScalar::from_int(&md, 1);
        // second row = z * first row
        let z2 = CycloScalar::v_pow(&md, 2);
        let rows = vec![vec![one.clone(), z.clone()], vec![z.clone(), z2]];
        assert_eq!(field.rank(&rows), 1);
        let rows = vec![vec![one.clone(), z.clone()], vec![z, one]];
        assert_eq!(field.rank(&rows), 2);
    }
}
