use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;

use super::{binomial, ExactRational};
use crate::error::{Error, Result};

/// Finite-support Laurent polynomial in one named variable with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    var: String,
    coeffs: BTreeMap<i64, ExactRational>,
}

impl LaurentPoly {
    pub fn zero(var: &str) -> Self {
        LaurentPoly {
            var: var.to_owned(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(var: &str, c: impl Into<ExactRational>) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: &str, exp: i64, c: impl Into<ExactRational>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, c.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(var: &str, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<ExactRational>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `(1 + c z)^m` expanded.
    pub fn binomial_power(var: &str, c: i64, m: u32) -> Self {
        let mut p = Self::zero(var);
        let mut cpow = ExactRational::from(1);
        for t in 0..=m {
            let b = binomial(m as i64, t as i64).expect("nonnegative index");
            p.add_term(t as i64, ExactRational::from(b) * &cpow);
            cpow *= c;
        }
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `var^exp`, zero when absent.
    pub fn coeff(&self, exp: i64) -> ExactRational {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, exp: i64, c: ExactRational) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_default();
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::Usage(format!(
                "Laurent polynomials in different variables: {} vs {}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = Self::zero(&self.var);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ExactRational::from(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        let mut out = Self::zero(&self.var);
        for (e, a) in &self.coeffs {
            out.add_term(*e, ExactRational::from(a * c));
        }
        out
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, z: &ExactRational) -> Result<ExactRational> {
        if *z == 0 && self.low_exponent().is_some_and(|e| e < 0) {
            return Err(Error::Domain("evaluating a pole at zero".into()));
        }
        let mut acc = ExactRational::new();
        for (e, c) in &self.coeffs {
            let p = ExactRational::from(z.pow(*e as i32));
            acc += ExactRational::from(c * &p);
        }
        Ok(acc)
    }
}

/// Exact product of two Laurent polynomials in the same variable.
pub fn laurent_mul(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.mul(q)
}

/// Coefficient extraction; realises a residue when `e = -1`.
pub fn laurent_coeff(p: &LaurentPoly, e: i64) -> ExactRational {
    p.coeff(e)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{e}", self.var)?,
            }
        }
        Ok(())
    }
}
