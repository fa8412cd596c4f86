//! Dense exact matrices over the rationals: Gaussian elimination for the
//! finite-dimensional membership certificates, plus the square-matrix
//! arithmetic used by the matrix ambient of the Mathieu tester.

use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Nilpotent Jordan block: ones on the superdiagonal.
    pub fn jordan_nilpotent(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, e: u64) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Solve A x = b exactly. Returns any solution (free variables set to zero),
/// or None when the system is inconsistent. Elimination over Q is exact, so
/// `None` is a certificate of unsolvability.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let rows = a.rows;
    let cols = a.cols;
    // augmented matrix
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = (0..cols).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    // inconsistency: a zero row with nonzero rhs
    for row in m.iter().skip(r) {
        if row[..cols].iter().all(|v| v.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }

    let mut x = vec![Rational::zero(); cols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[k][cols].clone();
    }
    Some(x)
}
