//! Dense matrices and vectors over arbitrary-precision nonnegative integers.
//!
//! Every tower, power and multiplicity computation in the crate goes through
//! [`IntMatrix`]; dimension vectors grow exponentially with the level, so
//! fixed-width integers are never used for them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigUint::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Returns `None` when rows are ragged.
    pub fn from_rows<T: Into<BigUint> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Some(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor for small literal matrices in tests and the registry.
    pub fn from_u64(rows: &[&[u64]]) -> Self {
        let owned: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigUint {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigUint) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut BigUint {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigUint] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigUint> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigUint>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| !x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Panics on a shape mismatch; callers validate shapes at construction.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add_scaled(&mut self, rhs: &IntMatrix, scale: &BigUint) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        if scale.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a += b * scale;
            }
        }
    }

    /// Square-and-multiply power; `pow(0)` is the identity.
    pub fn pow(&self, mut exp: usize) -> IntMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Principal submatrix on the given index set, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(idx.len(), idx.len());
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Boolean support: `out[r][c]` is true iff the entry is nonzero.
    pub fn support(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| !x.is_zero()).collect())
            .collect()
    }

    /// Entries as `f64`; only used by the Perron-Frobenius numerics.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::INFINITY))
                    .collect()
            })
            .collect()
    }

    /// Row-major decimal rendering used by digests and report output.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn basis_vector(len: usize, at: usize) -> Vec<BigUint> {
    let mut v = vec![BigUint::zero(); len];
    v[at] = BigUint::one();
    v
}

pub fn support_of(v: &[BigUint]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn dot(a: &[BigUint], b: &[BigUint]) -> BigUint {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sum_of_squares(v: &[BigUint]) -> BigUint {
    v.iter().map(|x| x * x).sum()
}

pub fn big(values: &[u64]) -> Vec<BigUint> {
    values.iter().map(|&x| BigUint::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_matches_repeated_product() {
        let fib = IntMatrix::from_u64(&[&[0, 1], &[1, 1]]);
        let mut acc = IntMatrix::identity(2);
        for e in 0..12 {
            assert_eq!(fib.pow(e), acc);
            acc = acc.mul(&fib);
        }
        assert_eq!(fib.pow(10), IntMatrix::from_u64(&[&[34, 55], &[55, 89]]));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_rows(&[vec![1u64, 2], vec![3]]).is_none());
    }

    #[test]
    fn big_powers_do_not_overflow() {
        let two = IntMatrix::from_u64(&[&[2]]);
        let p = two.pow(200);
        assert_eq!(*p.get(0, 0), BigUint::from(2u32).pow(200));
    }
}
