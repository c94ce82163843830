//! The `s x s` matrix `M` and the determinant formula
//! `B(n, s) = A_n det(1 - M)`.
//!
//! Entries are computed two independent ways: as residues of a double
//! contour integral over Laurent kernels ([`matrix_entry_contour`]), and as
//! a finite alternating sum of plain and refined counts
//! ([`matrix_entry_sum`]).

use rayon::prelude::*;

use crate::asm_enum::{asm_count, g_poly, refined_count};
use crate::error::{Error, Result};
use crate::numkit::{
    binomial, det_exact, sign, ExactInteger, ExactRational, LaurentPoly, RationalMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelSign {
    Plus,
    Minus,
}

/// How matrix entries are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EntryRoute {
    /// Residue extraction from the Laurent kernels.
    Contour,
    /// Alternating sum over refined counts.
    #[default]
    Sum,
}

fn check_params(n: u32, s: u32, i: u32, j: u32) -> Result<()> {
    if s > n || i == 0 || j == 0 || i > s || j > s {
        return Err(Error::Domain(format!(
            "matrix entry needs 1 <= i, j <= s <= n; got n={n}, s={s}, i={i}, j={j}"
        )));
    }
    Ok(())
}

/// `f_i^{+/-}(z) = [1 +/- (-1)^i z] (1 - z)^{i-1} z^{-i} g_{n-s+i}(z)`.
pub fn f_kernel(i: u32, sign_choice: KernelSign, n: u32, s: u32) -> Result<LaurentPoly> {
    if i == 0 || i > s || s > n {
        return Err(Error::Domain(format!(
            "kernel needs 1 <= i <= s <= n; got i={i}, s={s}, n={n}"
        )));
    }
    let parity = sign(i as i64);
    let lin = match sign_choice {
        KernelSign::Plus => parity,
        KernelSign::Minus => -parity,
    };
    let prefactor = LaurentPoly::from_terms("z", [(0, 1), (1, lin)]);
    let body = LaurentPoly::binomial_power("z", -1, i - 1).shift(-(i as i64));
    prefactor.mul(&body)?.mul(&g_poly(n - s + i)?)
}

fn plain_ratio(num: u32, den: u32) -> ExactRational {
    ExactRational::from((asm_count(num), asm_count(den)))
}

/// `M_ij` from the double contour integral, evaluated as the finite
/// residue sum obtained by expanding `1/(1 - z - w)` in powers of `z + w`.
pub fn matrix_entry_contour(n: u32, s: u32, i: u32, j: u32) -> Result<ExactRational> {
    check_params(n, s, i, j)?;
    let fp = f_kernel(i, KernelSign::Plus, n, s)?;
    let fm = f_kernel(j, KernelSign::Minus, n, s)?;
    let mut acc = ExactRational::new();
    // Only m <= i+j-2 contributes: f_i has a pole of order at most i.
    for m in 0..=(i + j - 2) as i64 {
        for t in 0..=m {
            let a = fp.coeff(-1 - (m - t));
            let b = fm.coeff(-1 - t);
            if a == 0 || b == 0 {
                continue;
            }
            acc += ExactRational::from(a * b) * binomial(m, t)?;
        }
    }
    Ok(acc * plain_ratio(n - s + j, n - s + j - 1))
}

/// `sum_p (-1)^p [C(i-1, i-d-p) - (-1)^i C(i-1, i-d-p-1)] A_{a,p}` for
/// `a = n-s+i`; the `p`-part of the quadruple sum at `d = k - l`.
fn row_part(i: u32, a: u32, d: i64) -> Result<ExactInteger> {
    let i = i as i64;
    let mut acc = ExactInteger::new();
    for p in 1..=a as i64 {
        let bracket = binomial(i - 1, i - d - p)? - sign(i) * binomial(i - 1, i - d - p - 1)?;
        if bracket != 0 {
            acc += sign(p) * bracket * refined_count(a, p as u32)?;
        }
    }
    Ok(acc)
}

/// `sum_q (-1)^q [C(j-1, j-l-q) + (-1)^j C(j-1, j-l-q-1)] A_{b,q}` for
/// `b = n-s+j`.
fn col_part(j: u32, b: u32, l: i64) -> Result<ExactInteger> {
    let j = j as i64;
    let mut acc = ExactInteger::new();
    for q in 1..=b as i64 {
        let bracket = binomial(j - 1, j - l - q)? + sign(j) * binomial(j - 1, j - l - q - 1)?;
        if bracket != 0 {
            acc += sign(q) * bracket * refined_count(b, q as u32)?;
        }
    }
    Ok(acc)
}

/// `M_ij` from the alternating sum over plain and refined counts.
///
/// The sum over `k` is unbounded as written but every term with
/// `k > i + j` vanishes, so the loop stops there. The `p` and `q` sums only
/// see `(i, k - l)` and `(j, l)` respectively and are factored out.
pub fn matrix_entry_sum(n: u32, s: u32, i: u32, j: u32) -> Result<ExactRational> {
    check_params(n, s, i, j)?;
    let a = n - s + i;
    let b = n - s + j;
    let k_max = (i + j) as i64;
    let rows: Vec<ExactInteger> = (0..=k_max)
        .map(|d| row_part(i, a, d))
        .collect::<Result<_>>()?;
    let cols: Vec<ExactInteger> = (0..=(j as i64).min(k_max))
        .map(|l| col_part(j, b, l))
        .collect::<Result<_>>()?;
    let mut acc = ExactInteger::new();
    for k in 0..=k_max {
        for l in 0..=k.min(j as i64) {
            let (row, col) = (&rows[(k - l) as usize], &cols[l as usize]);
            if *row == 0 || *col == 0 {
                continue;
            }
            let term = binomial(k, l)? * row * col;
            acc += sign(i as i64 + j as i64 - k) * term;
        }
    }
    Ok(ExactRational::from((acc, asm_count(a) * asm_count(b - 1))))
}

pub fn matrix_entry(route: EntryRoute, n: u32, s: u32, i: u32, j: u32) -> Result<ExactRational> {
    match route {
        EntryRoute::Contour => matrix_entry_contour(n, s, i, j),
        EntryRoute::Sum => matrix_entry_sum(n, s, i, j),
    }
}

/// `M` for one `(n, s)`, 1-based indices mapped to 0-based storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenMatrix {
    pub n: u32,
    pub s: u32,
    pub entries: RationalMatrix,
}

impl FrozenMatrix {
    pub fn build(n: u32, s: u32, route: EntryRoute) -> Result<Self> {
        if s > n || n == 0 {
            return Err(Error::Domain(format!(
                "need 0 <= s <= n, n >= 1; got n={n}, s={s}"
            )));
        }
        let cells: Vec<(u32, u32)> = (1..=s).flat_map(|i| (1..=s).map(move |j| (i, j))).collect();
        let values: Vec<ExactRational> = cells
            .par_iter()
            .map(|&(i, j)| matrix_entry(route, n, s, i, j))
            .collect::<Result<_>>()?;
        let dim = s as usize;
        let entries = RationalMatrix::from_fn(dim, |r, c| values[r * dim + c].clone());
        Ok(FrozenMatrix { n, s, entries })
    }

    /// `det(1 - M)`, the probability that the diagonal frozen boundary
    /// lies beyond `s`.
    pub fn det_one_minus(&self) -> ExactRational {
        det_exact(&self.entries.one_minus())
    }
}

/// `A_n det(1 - M)` as an exact rational, before the integrality check.
pub fn conjecture_value(n: u32, s: u32, route: EntryRoute) -> Result<ExactRational> {
    let m = FrozenMatrix::build(n, s, route)?;
    Ok(m.det_one_minus() * asm_count(n))
}

/// `B(n, s)` from the determinant formula (default entry route).
pub fn conjecture_count(n: u32, s: u32) -> Result<ExactInteger> {
    conjecture_count_with(n, s, EntryRoute::default())
}

pub fn conjecture_count_with(n: u32, s: u32, route: EntryRoute) -> Result<ExactInteger> {
    let v = conjecture_value(n, s, route)?;
    if *v.denom() != 1 {
        return Err(Error::Integrity(format!(
            "A_n det(1-M) = {v} is not an integer for n={n}, s={s}"
        )));
    }
    let (num, _) = v.into_numer_denom();
    if num < 0 {
        return Err(Error::Integrity(format!(
            "A_n det(1-M) = {num} is negative for n={n}, s={s}"
        )));
    }
    Ok(num)
}
