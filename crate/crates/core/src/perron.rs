//! Perron-Frobenius data of nonnegative integer matrices.
//!
//! The only inexact computation in the crate. The iterate is produced in
//! `f64`, but the returned bounds are Collatz-Wielandt ratios evaluated in
//! exact rational arithmetic at that iterate, so the enclosure is rigorous.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph;
use crate::matrix::IntMatrix;

const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PfEnclosure {
    pub lower: BigRational,
    pub upper: BigRational,
    /// Nonnegative, sums to one.
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
}

impl PfEnclosure {
    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().unwrap_or(f64::NAN)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().unwrap_or(f64::NAN)
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lower + &self.upper) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn summary(&self) -> PfSummary {
        PfSummary {
            lower: self.lower_f64(),
            upper: self.upper_f64(),
            lower_exact: self.lower.to_string(),
            upper_exact: self.upper.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PfSummary {
    pub lower: f64,
    pub upper: f64,
    pub lower_exact: String,
    pub upper_exact: String,
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite iterate")
}

fn big_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Exact `min_i (Mx)_i / x_i` and `max_i (Mx)_i / x_i` over a positive `x`.
fn collatz_wielandt(m: &IntMatrix, x: &[f64]) -> (BigRational, BigRational) {
    let xr: Vec<BigRational> = x.iter().map(|&v| rational(v)).collect();
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for i in 0..m.rows() {
        let mut acc = BigRational::zero();
        for (j, xj) in xr.iter().enumerate() {
            let a = m.get(i, j);
            if !a.is_zero() {
                acc += big_rational(a) * xj;
            }
        }
        let ratio = acc / &xr[i];
        if lo.as_ref().is_none_or(|l| &ratio < l) {
            lo = Some(ratio.clone());
        }
        if hi.as_ref().is_none_or(|h| &ratio > h) {
            hi = Some(ratio);
        }
    }
    (lo.unwrap(), hi.unwrap())
}

/// One step of `x ← (M + I)x`, normalized to sum one.
fn shifted_step(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let mut y: Vec<f64> = (0..x.len())
        .map(|i| x[i] + m[i].iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let s: f64 = y.iter().sum();
    for v in &mut y {
        *v /= s;
    }
    y
}

fn float_spread(m: &[Vec<f64>], x: &[f64]) -> f64 {
    let ratios = (0..x.len()).map(|i| m[i].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / x[i]);
    let (lo, hi) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), r| {
        (l.min(r), h.max(r))
    });
    hi - lo
}

/// Enclosure of the spectral radius of an irreducible matrix.
fn irreducible_enclosure(
    m: &IntMatrix,
    tol: &BigRational,
    tol_f: f64,
) -> Result<(BigRational, BigRational, Vec<f64>, usize)> {
    let k = m.rows();
    let mf = m.to_f64_rows();
    let mut x = vec![1.0 / k as f64; k];
    let mut it = 0;
    loop {
        if float_spread(&mf, &x) <= tol_f / 4.0 || it % 1024 == 1023 {
            let (lo, hi) = collatz_wielandt(m, &x);
            if &(&hi - &lo) <= tol {
                return Ok((lo, hi, x, it));
            }
        }
        if it >= MAX_ITERATIONS {
            return Err(Error::NotConverged {
                tolerance: tol_f.to_string(),
                iterations: it,
            });
        }
        x = shifted_step(&mf, &x);
        it += 1;
    }
}

/// Spectral radius enclosure `[lower, upper]` with `upper − lower ≤ tolerance`
/// and an approximate Perron vector.
///
/// Reducible matrices are split into strongly connected components; the
/// spectral radius is the largest over the components.
pub fn fp_dimension(matrix: &IntMatrix, tolerance: f64) -> Result<PfEnclosure> {
    if !matrix.is_square() {
        return Err(Error::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidTolerance(tolerance.to_string()));
    }
    if matrix.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let tol = rational(tolerance);
    let adj = matrix.support();
    let comps = graph::sccs(&adj);

    if comps.len() == 1 {
        let (lower, upper, eigenvector, iterations) =
            irreducible_enclosure(matrix, &tol, tolerance)?;
        return Ok(PfEnclosure {
            lower,
            upper,
            eigenvector,
            iterations,
        });
    }

    let mut lower = BigRational::zero();
    let mut upper = BigRational::zero();
    let mut iterations = 0;
    for comp in &comps {
        let block = matrix.restrict(comp);
        if block.is_zero() {
            continue;
        }
        let (lo, hi, _, it) = irreducible_enclosure(&block, &tol, tolerance)?;
        iterations += it;
        if lo > lower {
            lower = lo;
        }
        if hi > upper {
            upper = hi;
        }
    }

    // Perron vector of the whole matrix by plain shifted iteration.
    let mf = matrix.to_f64_rows();
    let k = matrix.rows();
    let mut x = vec![1.0 / k as f64; k];
    for _ in 0..10_000 {
        let y = shifted_step(&mf, &x);
        let delta: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if delta < 1e-15 {
            break;
        }
    }
    Ok(PfEnclosure {
        lower,
        upper,
        eigenvector: x,
        iterations,
    })
}
