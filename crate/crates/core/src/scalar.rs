//! Exact rational scalars and dense matrices over them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar n/d.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p" or "p/q".
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let mut it = s.splitn(2, '/');
    let num: BigInt = it
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let den: BigInt = match it.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator in {s:?}: {e}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Render as "p" or "p/q".
pub fn scalar_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense matrix with exact rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// 0/1 matrix with a single 1 per column at `f(col)`, or an all-zero column on None.
    pub fn from_column_map(rows: usize, cols: usize, mut f: impl FnMut(usize) -> Option<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for j in 0..cols {
            if let Some(i) = f(j) {
                assert!(i < rows);
                m.data[i * cols + j] = Scalar::one();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &Scalar) {
        if !v.is_zero() {
            let e = &mut self.data[i * self.cols + j];
            *e = &*e + v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.data.iter().enumerate().all(|(k, x)| {
            if k / self.cols == k % self.cols {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    /// First nonzero entry of self - other in row-major order, if any.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Matrix product, skipping zero entries (most matrices in this crate are
    /// permutation-like, so this is effectively sparse composition).
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch in mul");
        if self.is_identity() {
            return rhs.clone();
        }
        if rhs.is_identity() {
            return self.clone();
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for k in 0..self.cols {
            for j in 0..rhs.cols {
                let b = rhs.get(k, j);
                if b.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let e = &mut out.data[i * rhs.cols + j];
                    *e = &*e + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// If every entry equals the same constant c, return c.
    pub fn constant_value(&self) -> Option<Scalar> {
        let first = self.data.first()?;
        if self.data.iter().all(|x| x == first) {
            Some(first.clone())
        } else {
            None
        }
    }

    /// Exact inverse by Gauss-Jordan elimination, None if singular.
    pub fn invert(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] = &a.data[col * n + j] / &p;
                inv.data[col * n + j] = &inv.data[col * n + j] / &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &a.data[col * n + j] * &factor;
                    a.data[r * n + j] = &a.data[r * n + j] - &t;
                    let t = &inv.data[col * n + j] * &factor;
                    inv.data[r * n + j] = &inv.data[r * n + j] - &t;
                }
            }
        }
        Some(inv)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols, k % cols, v))
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries().filter(|(_, _, v)| !v.is_zero())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| scalar_string(self.get(i, j))).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged matrix"));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            for e in r {
                data.push(parse_scalar(e).map_err(D::Error::custom)?);
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }
}
