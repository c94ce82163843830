use super::{ExactInteger, ExactRational};
use crate::error::{Error, Result};

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<ExactRational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![ExactRational::new(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ExactRational::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Usage(format!(
                "row {bad} has {} entries, expected {dim}",
                rows[bad].len()
            )));
        }
        Ok(RationalMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    /// `I - self`.
    pub fn one_minus(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            let delta = ExactRational::from(u32::from(i == j));
            delta - self.get(i, j)
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Usage(format!(
                "dimension mismatch {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(Self::from_fn(self.dim, |i, j| {
            let mut acc = ExactRational::new();
            for k in 0..self.dim {
                acc += ExactRational::from(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn determinant(&self) -> ExactRational {
        det_exact(self)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first cleared of denominators by its lcm; the integer
/// determinant is then divided by the product of those scales.
pub fn det_exact(m: &RationalMatrix) -> ExactRational {
    let n = m.dim();
    if n == 0 {
        return ExactRational::from(1);
    }
    let mut scale = ExactInteger::from(1);
    let mut a: Vec<Vec<ExactInteger>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &m.entries[i * n..(i + 1) * n];
        let lcm = row
            .iter()
            .fold(ExactInteger::from(1), |acc, x| acc.lcm(x.denom()));
        a.push(
            row.iter()
                .map(|x| ExactInteger::from(x.numer() * ExactInteger::from(&lcm / x.denom())))
                .collect(),
        );
        scale *= lcm;
    }

    let mut negate = false;
    let mut prev = ExactInteger::from(1);
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return ExactRational::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ExactInteger::from(&a[i][j] * &a[k][k])
                    - ExactInteger::from(&a[i][k] * &a[k][j]);
                // Bareiss: the division is exact.
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    ExactRational::from((det, scale))
}
