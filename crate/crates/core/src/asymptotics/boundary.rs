//! `P(boundary > s) = det(1 - M)` for large `n` in multiprecision floating
//! point.
//!
//! No factorial is ever formed: plain counts enter only through the ratios
//! `lambda_m = A_m / A_{m-1}` and refined counts only through
//! `rho_{m,p} = A_{m,p} / A_m`, both built by telescoping products of small
//! integers. The entry is then
//!
//! ```text
//! M_ij = lambda_b sum_{d,l} (-1)^{i+j-d-l} C(d+l, l) P_i(d) Q_j(l)
//! ```
//!
//! with the same row and column parts as the exact sum route, weighted by
//! `rho` instead of refined counts.

use rayon::prelude::*;
use rug::ops::NegAssign;
use rug::Float;

use super::PrecisionConfig;
use crate::conjecture::{EntryRoute, FrozenMatrix};
use crate::error::{Error, Result};
use crate::numkit::{binomial, sign, ExactRational};

/// Largest `n` for which an unconverged float evaluation is retried exactly.
pub const EXACT_FALLBACK_MAX_N: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryEstimate {
    pub n: u32,
    pub s: u32,
    pub value: f64,
    /// `|v(bits) - v(2 bits)|` plus one rounding unit, or zero when
    /// computed exactly.
    pub error: f64,
    /// Precision of the returned value; zero when computed exactly.
    pub bits: u32,
}

/// `log10 A_n`, summed from the ratio telescope in double precision.
pub fn log10_asm_count(n: u32) -> f64 {
    let mut log_lambda = 0.0f64;
    let mut total = 0.0f64;
    for m in 2..=n as u64 {
        let m = m as f64;
        log_lambda += ((3.0 * m - 2.0) * (3.0 * m - 3.0) * (3.0 * m - 4.0) * (m - 1.0)).log10()
            - ((2.0 * m - 2.0) * (2.0 * m - 3.0) * (2.0 * m - 1.0) * (2.0 * m - 2.0)).log10();
        total += log_lambda;
    }
    total
}

/// About 3.3 bits per decimal digit of `A_n`, never below 128.
pub fn default_bits(n: u32) -> u32 {
    let digits = log10_asm_count(n).floor() + 1.0;
    ((3.3 * digits).ceil() as u32).max(128)
}

/// `lambda_m` for `m = 0..=n` (index 0 unused).
fn lambdas(n: u32, prec: u32) -> Vec<Float> {
    let mut out = vec![Float::with_val(prec, 1); n as usize + 1];
    for m in 2..=n as u64 {
        let num = (3 * m - 2) * (3 * m - 3) * (3 * m - 4) * (m - 1);
        let den = (2 * m - 2) * (2 * m - 3) * (2 * m - 1) * (2 * m - 2);
        out[m as usize] = Float::with_val(prec, &out[m as usize - 1] * num) / den;
    }
    out
}

/// `rho_{m,p}` for `p = 0..=p_max` (index 0 unused, entries beyond `m` zero).
fn rhos(m: u32, p_max: u32, lambda_m: &Float, prec: u32) -> Vec<Float> {
    let mut out = vec![Float::new(prec); p_max as usize + 1];
    if p_max == 0 {
        return out;
    }
    out[1] = Float::with_val(prec, 1) / lambda_m;
    let m = m as u64;
    for p in 1..p_max.min(m as u32) as u64 {
        let num = (m + p - 1) * (m - p);
        let den = p * (2 * m - p - 1);
        out[p as usize + 1] = Float::with_val(prec, &out[p as usize] * num) / den;
    }
    out
}

fn int_float(prec: u32, a: i64, b: i64) -> Result<Float> {
    Ok(Float::with_val(prec, binomial(a, b)?))
}

/// Row part `P_i(d)` for `d = 0..i` (sign `-` inside the bracket) or column
/// part `Q_j(l)` (sign `+`), with weights `rho`.
fn part(idx: u32, plus: bool, rho: &[Float], prec: u32) -> Result<Vec<Float>> {
    let i = idx as i64;
    let inner = if plus { sign(i) } else { -sign(i) };
    (0..i)
        .map(|d| {
            let mut acc = Float::new(prec);
            for p in 1..=(i - d).min(rho.len() as i64 - 1) {
                let bracket = binomial(i - 1, i - d - p)? + inner * binomial(i - 1, i - d - p - 1)?;
                if bracket != 0 {
                    let w =
                        Float::with_val(prec, &rho[p as usize] * Float::with_val(prec, bracket));
                    if p % 2 == 0 {
                        acc += w;
                    } else {
                        acc -= w;
                    }
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `M` at precision `prec`, row-major.
fn float_matrix(n: u32, s: u32, prec: u32) -> Result<Vec<Float>> {
    let lam = lambdas(n, prec);
    let sz = s as usize;
    let base = n - s;
    let side = |idx: u32, plus: bool| -> Result<Vec<Float>> {
        let m = base + idx;
        let rho = rhos(m, idx.min(m), &lam[m as usize], prec);
        part(idx, plus, &rho, prec)
    };
    let rows: Vec<Vec<Float>> = (1..=s)
        .into_par_iter()
        .map(|i| side(i, false))
        .collect::<Result<_>>()?;
    let cols: Vec<Vec<Float>> = (1..=s)
        .into_par_iter()
        .map(|j| side(j, true))
        .collect::<Result<_>>()?;
    let mut binom = vec![vec![Float::new(prec); sz + 1]; 2 * sz + 1];
    for (k, row) in binom.iter_mut().enumerate() {
        for (l, c) in row.iter_mut().enumerate().take(k.min(sz) + 1) {
            *c = int_float(prec, k as i64, l as i64)?;
        }
    }
    let cells: Vec<(usize, usize)> = (0..sz).flat_map(|i| (0..sz).map(move |j| (i, j))).collect();
    Ok(cells
        .par_iter()
        .map(|&(i, j)| {
            let (pi, qj) = (&rows[i], &cols[j]);
            let mut acc = Float::new(prec);
            for (d, pd) in pi.iter().enumerate() {
                if pd.is_zero() {
                    continue;
                }
                for (l, ql) in qj.iter().enumerate() {
                    let t = Float::with_val(prec, pd * ql) * &binom[d + l][l];
                    // (i+1) + (j+1) - d - l with 1-based i, j
                    if (i + j + d + l) % 2 == 0 {
                        acc += t;
                    } else {
                        acc -= t;
                    }
                }
            }
            acc * &lam[(base + j as u32 + 1) as usize]
        })
        .collect())
}

/// Determinant by Gaussian elimination with partial pivoting.
fn float_det(mut a: Vec<Float>, dim: usize, prec: u32) -> Float {
    let mut det = Float::with_val(prec, 1);
    for c in 0..dim {
        let pivot = (c..dim)
            .max_by(|&x, &y| {
                a[x * dim + c]
                    .cmp_abs(&a[y * dim + c])
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot * dim + c].is_zero() {
            return Float::new(prec);
        }
        if pivot != c {
            for k in 0..dim {
                a.swap(c * dim + k, pivot * dim + k);
            }
            det = -det;
        }
        det *= &a[c * dim + c];
        for r in c + 1..dim {
            let factor = Float::with_val(prec, &a[r * dim + c] / &a[c * dim + c]);
            if factor.is_zero() {
                continue;
            }
            for k in c..dim {
                let sub = Float::with_val(prec, &factor * &a[c * dim + k]);
                a[r * dim + k] -= sub;
            }
        }
    }
    det
}

/// `det(1 - M)` at a fixed precision, unrounded.
pub fn boundary_cdf_at(n: u32, s: u32, bits: u32) -> Result<Float> {
    check(n, s)?;
    if s == 0 {
        return Ok(Float::with_val(bits, 1));
    }
    let dim = s as usize;
    let mut a = float_matrix(n, s, bits)?;
    for (k, v) in a.iter_mut().enumerate() {
        v.neg_assign();
        if k / dim == k % dim {
            *v += 1;
        }
    }
    Ok(float_det(a, dim, bits))
}

fn check(n: u32, s: u32) -> Result<()> {
    if n == 0 || s > n {
        return Err(Error::Domain(format!(
            "need n >= 1 and s <= n, got n={n}, s={s}"
        )));
    }
    Ok(())
}

/// Exact `det(1 - M)` through the rational matrix.
pub fn boundary_cdf_exact(n: u32, s: u32) -> Result<ExactRational> {
    check(n, s)?;
    if s == 0 {
        return Ok(ExactRational::from(1));
    }
    Ok(FrozenMatrix::build(n, s, EntryRoute::Sum)?.det_one_minus())
}

/// `P(boundary > s)` with an error estimate from precision doubling.
///
/// Starts at `cfg.bits` (or [`default_bits`]) and doubles until two
/// consecutive values agree within `cfg.cdf_tolerance`. If that never
/// happens the exact route is used for `n <= EXACT_FALLBACK_MAX_N`;
/// otherwise a [`Error::Precision`] is returned.
pub fn boundary_cdf(n: u32, s: u32, cfg: &PrecisionConfig) -> Result<BoundaryEstimate> {
    check(n, s)?;
    if s == 0 {
        return Ok(BoundaryEstimate {
            n,
            s,
            value: 1.0,
            error: 0.0,
            bits: 0,
        });
    }
    let mut bits = cfg.bits.unwrap_or_else(|| default_bits(n)).max(64);
    let mut prev = boundary_cdf_at(n, s, bits)?;
    let mut error = f64::INFINITY;
    for _ in 0..=cfg.max_doublings {
        let next_bits = bits
            .checked_mul(2)
            .ok_or_else(|| Error::Precision("precision overflow".into()))?;
        let next = boundary_cdf_at(n, s, next_bits)?;
        let value = next.to_f64();
        // Float disagreement plus the final rounding to f64.
        error = Float::with_val(next_bits, &next - &prev).abs().to_f64()
            + f64::EPSILON * value.abs().max(f64::MIN_POSITIVE);
        bits = next_bits;
        prev = next;
        if error <= cfg.cdf_tolerance {
            return Ok(BoundaryEstimate {
                n,
                s,
                value: value.clamp(0.0, 1.0),
                error,
                bits,
            });
        }
    }
    if n <= EXACT_FALLBACK_MAX_N {
        let value = boundary_cdf_exact(n, s)?.to_f64();
        return Ok(BoundaryEstimate {
            n,
            s,
            value,
            error: 0.0,
            bits: 0,
        });
    }
    Err(Error::Precision(format!(
        "det(1-M) for n={n}, s={s} still moves by {error:e} at {bits} bits; \
         raise the starting significand or the number of doublings"
    )))
}
