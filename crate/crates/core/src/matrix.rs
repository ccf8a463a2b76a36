//! Sparse matrices over a [`ScalarRing`].

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::{Scalar, ScalarRing};

/// Row-major sparse matrix; zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity<R: ScalarRing<Elem = S>>(ring: &R, n: usize) -> Self {
        Self::diagonal((0..n).map(|_| ring.one()))
    }

    pub fn diagonal<I: IntoIterator<Item = S>>(diag: I) -> Self {
        let entries: Vec<S> = diag.into_iter().collect();
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        self.data[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &S) {
        if x.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.get_mut(&j) {
            Some(e) => {
                e.add_assign_ref(x);
                if e.is_zero() {
                    row.remove(&j);
                }
            }
            None => {
                row.insert(j, x.clone());
            }
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &S)> {
        self.data[i].iter().map(|(j, x)| (*j, x))
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let p = a.mul_ref(b);
                    match acc.get_mut(j) {
                        Some(e) => e.add_assign_ref(&p),
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, x| !x.is_zero());
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        let mut out = self.clone();
        for (i, j, x) in rhs.entries() {
            out.add_at(i, j, x);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg_ref())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn map<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, j, x) in self.entries() {
            out.set(i, j, f(x));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            out.data[j].insert(i, x.clone());
        }
        out
    }

    /// Kronecker product; the left factor indexes the slow coordinate.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in rhs.entries() {
                out.data[i * rhs.rows + k].insert(j * rhs.cols + l, a.mul_ref(b));
            }
        }
        out
    }

    /// `self^k` with the identity supplied by `ring`.
    pub fn pow_in<R: ScalarRing<Elem = S>>(&self, ring: &R, k: u32) -> Self {
        let mut acc = Self::identity(ring, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self * x` for a column vector.
    pub fn apply(&self, x: &[S], zero: &S) -> Vec<S> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = zero.clone();
                for (j, a) in row {
                    if !x[*j].is_zero() {
                        acc.add_assign_ref(&a.mul_ref(&x[*j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self, zero: &S) -> S {
        let mut acc = zero.clone();
        for i in 0..self.rows.min(self.cols) {
            if let Some(x) = self.get(i, i) {
                acc.add_assign_ref(x);
            }
        }
        acc
    }

    /// First `(row, col)` in row-major order where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        for i in 0..self.rows {
            if self.data[i] == other.data[i] {
                continue;
            }
            let cols = self.data[i].keys().chain(other.data[i].keys());
            let j = cols
                .filter(|j| self.data[i].get(j) != other.data[i].get(j))
                .min()
                .copied()
                .expect("rows differ");
            return Some((i, j));
        }
        None
    }

    pub fn to_dense(&self, zero: &S) -> Vec<Vec<S>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).cloned().unwrap_or_else(|| zero.clone()))
                    .collect()
            })
            .collect()
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                writeln!(f, "  ({i}, {j}): {x:?}")?;
            }
        }
        write!(f, "]")
    }
}
