//! The semisimplified category at a root of unity: fusion multiplicities from
//! the Jordan type of `E`, the fusion ring, its Frobenius data and the
//! surface invariants `w(Σ_g) = η(H^g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ring::{find_truncation_level, Cyclotomic, RingError};
use crate::uqsl2::{jordan_type_e, make_rep, tensor_pair, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("color out of truncated range: {color} > {max}")]
    ColorOutOfRange { color: u32, max: u32 },
    #[error("unexpected Jordan block of size {size} in V_{a} ⊗ V_{b}")]
    UnexpectedBlock { a: u32, b: u32, size: usize },
    #[error("dimension bookkeeping fails for V_{a} ⊗ V_{b}: {found} != {expected}")]
    Bookkeeping {
        a: u32,
        b: u32,
        found: usize,
        expected: usize,
    },
    #[error("theta degenerate")]
    ThetaDegenerate,
    #[error("malformed fusion table: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// `V_a ⊗ V_b` in the semisimplified category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `N_ab^c` for `c = 0..=ℓ-2`.
    pub multiplicities: Vec<u64>,
    /// Number of negligible summands (blocks of size `ℓ`).
    pub negligible: u64,
}

fn decompose_at(
    ring: &Cyclotomic,
    level: u32,
    a: u32,
    b: u32,
) -> Result<Decomposition, FusionError> {
    let max = level - 2;
    for c in [a, b] {
        if c > max {
            return Err(FusionError::ColorOutOfRange { color: c, max });
        }
    }
    let action = tensor_pair(ring, &make_rep(ring, a).action, &make_rep(ring, b).action);
    let blocks: BTreeMap<usize, usize> = jordan_type_e(ring, &action, level)?;
    let mut multiplicities = vec![0u64; level as usize - 1];
    let mut negligible = 0u64;
    for (&size, &mult) in &blocks {
        if size < level as usize {
            multiplicities[size - 1] = mult as u64;
        } else if size == level as usize {
            negligible = mult as u64;
        } else {
            return Err(FusionError::UnexpectedBlock { a, b, size });
        }
    }
    let found: usize = multiplicities
        .iter()
        .enumerate()
        .map(|(c, n)| (c + 1) * *n as usize)
        .sum::<usize>()
        + level as usize * negligible as usize;
    let expected = (a as usize + 1) * (b as usize + 1);
    if found != expected {
        return Err(FusionError::Bookkeeping {
            a,
            b,
            found,
            expected,
        });
    }
    Ok(Decomposition {
        multiplicities,
        negligible,
    })
}

/// Decomposes `V_a ⊗ V_b` at a primitive `m`-th root of unity: a Jordan block
/// of `E` of size `c+1 < ℓ` is a copy of `V_c`, a block of size `ℓ` is negligible.
pub fn fusion_decompose(a: u32, b: u32, m: u32) -> Result<Decomposition, FusionError> {
    let level = find_truncation_level(m)?;
    decompose_at(&Cyclotomic::new(m)?, level, a, b)
}

/// Structure constants `N[a][b][c]` on the classes `[V_0], ..., [V_(ℓ-2)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionRing {
    pub level: u32,
    pub n: Vec<Vec<Vec<u64>>>,
}

impl FusionRing {
    pub fn from_table(level: u32, n: Vec<Vec<Vec<u64>>>) -> Result<Self, FusionError> {
        let r = level
            .checked_sub(1)
            .filter(|r| *r > 0)
            .ok_or_else(|| FusionError::Malformed(format!("level {level}")))?
            as usize;
        let ok = n.len() == r
            && n.iter()
                .all(|row| row.len() == r && row.iter().all(|v| v.len() == r));
        if !ok {
            return Err(FusionError::Malformed(format!(
                "expected a {r}x{r}x{r} table"
            )));
        }
        Ok(Self { level, n })
    }

    pub fn rank(&self) -> usize {
        self.n.len()
    }

    /// First `(a, b, c)` with `N[a][b][c] != N[b][a][c]`.
    pub fn check_commutative(&self) -> Result<(), (usize, usize, usize)> {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.n[a][b][c] != self.n[b][a][c] {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// First `(b, c)` with `N[0][b][c] != δ_bc`.
    pub fn check_unit(&self) -> Result<(), (usize, usize)> {
        let r = self.rank();
        for b in 0..r {
            for c in 0..r {
                if self.n[0][b][c] != u64::from(b == c) {
                    return Err((b, c));
                }
            }
        }
        Ok(())
    }

    /// First `(a, b, c, d)` where `(x_a x_b) x_c` and `x_a (x_b x_c)` differ in the `x_d` coefficient.
    pub fn check_associative(&self) -> Result<(), (usize, usize, usize, usize)> {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let lhs: u64 = (0..r).map(|e| self.n[a][b][e] * self.n[e][c][d]).sum();
                        let rhs: u64 = (0..r).map(|e| self.n[b][c][e] * self.n[a][e][d]).sum();
                        if lhs != rhs {
                            return Err((a, b, c, d));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of two elements given in the basis `x_a`.
    pub fn multiply(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let r = self.rank();
        let mut out = vec![BigRational::zero(); r];
        for a in 0..r {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..r {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (c, slot) in out.iter_mut().enumerate() {
                    let n = self.n[a][b][c];
                    if n != 0 {
                        *slot += &xy * BigRational::from_integer(BigInt::from(n));
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, a: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.rank()];
        v[a] = BigRational::one();
        v
    }

    /// Matrix of left multiplication by `x`: column `b` holds `x · x_b`.
    pub fn left_mult(&self, x: &[BigRational]) -> Vec<Vec<BigRational>> {
        let r = self.rank();
        let cols: Vec<Vec<BigRational>> =
            (0..r).map(|b| self.multiply(x, &self.basis(b))).collect();
        (0..r)
            .map(|i| (0..r).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

impl fmt::Display for FusionRing {
    /// One line per nonzero product, `V_a x V_b = V_c + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank();
        for a in 0..r {
            for b in a..r {
                let terms: Vec<String> = (0..r)
                    .filter(|c| self.n[a][b][*c] > 0)
                    .map(|c| match self.n[a][b][c] {
                        1 => format!("V_{c}"),
                        k => format!("{k} V_{c}"),
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                writeln!(f, "V_{a} x V_{b} = {rhs}")?;
            }
        }
        Ok(())
    }
}

/// The fusion ring at a primitive `m`-th root of unity; entries are computed in
/// parallel over `(a, b)` and assembled in order.
pub fn fusion_ring(m: u32) -> Result<FusionRing, FusionError> {
    let level = find_truncation_level(m)?;
    let ring = Cyclotomic::new(m)?;
    let r = level - 1;
    let pairs: Vec<(u32, u32)> = (0..r).flat_map(|a| (0..r).map(move |b| (a, b))).collect();
    let decomps: Vec<Result<Decomposition, FusionError>> = pairs
        .par_iter()
        .map(|&(a, b)| decompose_at(&ring, level, a, b))
        .collect();
    let mut n = vec![vec![Vec::new(); r as usize]; r as usize];
    for ((a, b), d) in pairs.into_iter().zip(decomps) {
        n[a as usize][b as usize] = d?.multiplicities;
    }
    FusionRing::from_table(level, n)
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `η`, `θ(a, b) = η(x_a x_b)` and the handle element `H = Σ g^(ab) x_a x_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub ring: FusionRing,
    pub eta: Vec<BigRational>,
    pub theta: Vec<Vec<BigRational>>,
    pub handle: Vec<BigRational>,
}

impl FrobeniusData {
    pub fn apply_eta(&self, x: &[BigRational]) -> BigRational {
        self.eta.iter().zip(x).map(|(e, v)| e * v).sum()
    }
}

/// Frobenius data with `η` the coefficient of the unit class.
pub fn frobenius_data(ring: &FusionRing) -> Result<FrobeniusData, FusionError> {
    let r = ring.rank();
    let eta = ring.basis(0);
    let theta: Vec<Vec<BigRational>> = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    let prod = ring.multiply(&ring.basis(a), &ring.basis(b));
                    eta.iter().zip(&prod).map(|(e, p)| e * p).sum()
                })
                .collect()
        })
        .collect();
    let g_inv = inverse(&theta).ok_or(FusionError::ThetaDegenerate)?;
    let mut handle = vec![BigRational::zero(); r];
    for a in 0..r {
        for b in 0..r {
            if g_inv[a][b].is_zero() {
                continue;
            }
            let prod = ring.multiply(&ring.basis(a), &ring.basis(b));
            for (h, p) in handle.iter_mut().zip(prod) {
                *h += &g_inv[a][b] * p;
            }
        }
    }
    Ok(FrobeniusData {
        ring: ring.clone(),
        eta,
        theta,
        handle,
    })
}

/// `w(Σ_g) = η(H^g)`.
pub fn surface_invariant(genus: u32, f: &FrobeniusData) -> BigRational {
    let mut acc = f.ring.basis(0);
    for _ in 0..genus {
        acc = f.ring.multiply(&acc, &f.handle);
    }
    f.apply_eta(&acc)
}

/// The invariant of `Σ_g ⊔ Σ_h`: a product, since `w` is multiplicative.
pub fn disjoint_union_invariant(genera: &[u32], f: &FrobeniusData) -> BigRational {
    genera.iter().map(|g| surface_invariant(*g, f)).product()
}

/// Gram matrix of the regular trace form `Tr(L_(x_a x_b))`.
pub fn trace_form(ring: &FusionRing) -> Vec<Vec<BigRational>> {
    let r = ring.rank();
    (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    let prod = ring.multiply(&ring.basis(a), &ring.basis(b));
                    let l = ring.left_mult(&prod);
                    (0..r).map(|i| l[i][i].clone()).sum()
                })
                .collect()
        })
        .collect()
}

/// Semisimple iff the regular trace form is nondegenerate.
pub fn check_semisimple(ring: &FusionRing) -> bool {
    !determinant(&trace_form(ring)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn decompositions_at_level_five() {
        let d = fusion_decompose(1, 1, 10).unwrap();
        assert_eq!(d.multiplicities, vec![1, 0, 1, 0]);
        assert_eq!(d.negligible, 0);
        let d = fusion_decompose(3, 3, 10).unwrap();
        assert_eq!(d.multiplicities, vec![1, 0, 0, 0]);
        assert_eq!(d.negligible, 3);
        for b in 0..4 {
            let d = fusion_decompose(0, b, 10).unwrap();
            let mut delta = vec![0; 4];
            delta[b as usize] = 1;
            assert_eq!(d.multiplicities, delta);
        }
        assert_eq!(
            fusion_decompose(4, 1, 10).unwrap_err(),
            FusionError::ColorOutOfRange { color: 4, max: 3 }
        );
    }

    #[test]
    fn level_three_ring() {
        let r = fusion_ring(6).unwrap();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.n[1][1], vec![1, 0]);
    }

    #[test]
    fn level_five_ring() {
        let r = fusion_ring(10).unwrap();
        r.check_commutative().unwrap();
        r.check_unit().unwrap();
        r.check_associative().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let x = r.n[a][b][c];
                    for p in [
                        r.n[a][c][b],
                        r.n[b][a][c],
                        r.n[b][c][a],
                        r.n[c][a][b],
                        r.n[c][b][a],
                    ] {
                        assert_eq!(x, p);
                    }
                }
            }
        }
        let f = frobenius_data(&r).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.theta[a][b], int(i64::from(a == b)));
            }
        }
        let h: Vec<BigRational> = (0..4).fold(vec![int(0); 4], |acc, a| {
            let sq = r.multiply(&r.basis(a), &r.basis(a));
            acc.iter().zip(sq).map(|(x, y)| x + y).collect()
        });
        assert_eq!(f.handle, h);
        assert_eq!(f.apply_eta(&r.basis(0)), int(1));
        assert_eq!(surface_invariant(0, &f), int(1));
        assert_eq!(surface_invariant(1, &f), int(4));
        assert!(check_semisimple(&r));
    }

    #[test]
    fn mutations_are_caught() {
        let mut r = fusion_ring(10).unwrap();
        r.n[1] = vec![vec![0; 4]; 4];
        assert!(!check_semisimple(&r));
        assert!(r.check_commutative().is_err());
        let mut r = fusion_ring(10).unwrap();
        r.n[0][2][2] = 0;
        assert_eq!(r.check_unit(), Err((2, 2)));
    }

    #[test]
    fn degenerate_orders_are_rejected() {
        assert!(matches!(
            fusion_ring(4),
            Err(FusionError::Ring(RingError::DegenerateSpecialization(4)))
        ));
    }

    #[test]
    fn rational_linear_algebra() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        assert_eq!(determinant(&m), int(1));
        assert_eq!(
            inverse(&m).unwrap(),
            vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]
        );
        assert!(inverse(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
