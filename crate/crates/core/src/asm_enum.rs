//! Plain and refined ASM counts and the refined generating polynomial.

use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::numkit::{binomial, ExactInteger, ExactRational, LaurentPoly};

/// Process-wide memo of `A_n` and of refined rows `A_{n,1..n}`.
/// Readers share the lock; insertions are serialised.
#[derive(Default)]
struct Tables {
    plain: Vec<ExactInteger>,
    refined: Vec<Option<Vec<ExactInteger>>>,
}

static TABLES: LazyLock<RwLock<Tables>> = LazyLock::new(|| {
    RwLock::new(Tables {
        plain: vec![ExactInteger::from(1)],
        refined: Vec::new(),
    })
});

fn factorial(k: u32) -> ExactInteger {
    ExactInteger::from(ExactInteger::factorial(k))
}

fn into_integer(q: ExactRational, what: &str) -> ExactInteger {
    assert!(q.denom() == &1, "{what} is not an integer: {q}");
    q.into_numer_denom().0
}

/// `A_n`, the number of `n x n` alternating sign matrices. `A_0 = 1`.
///
/// Built up as `A_n = A_{n-1} (3n-2)! (n-1)! / ((2n-2)! (2n-1)!)`, so no
/// factorial larger than `(3n-2)!` is ever formed.
pub fn asm_count(n: u32) -> ExactInteger {
    if let Some(v) = TABLES.read().unwrap().plain.get(n as usize) {
        return v.clone();
    }
    let mut tables = TABLES.write().unwrap();
    while tables.plain.len() <= n as usize {
        let m = tables.plain.len() as u32;
        let ratio = ExactRational::from((
            factorial(3 * m - 2) * factorial(m - 1),
            factorial(2 * m - 2) * factorial(2 * m - 1),
        ));
        let next = into_integer(ratio * tables.plain.last().unwrap(), "A_n");
        tables.plain.push(next);
    }
    tables.plain[n as usize].clone()
}

fn refined_row(n: u32) -> Vec<ExactInteger> {
    if let Some(Some(row)) = TABLES.read().unwrap().refined.get(n as usize) {
        return row.clone();
    }
    let prev = asm_count(n - 1);
    // prod_{j=0}^{n-2} (3j+1)!/(n+j)! = A_{n-1} (n-1)!/(2n-2)!
    let common = ExactRational::from((factorial(n - 1), factorial(2 * n - 2))) * prev;
    let row: Vec<ExactInteger> = (1..=n)
        .map(|r| {
            let c = binomial((n + r - 2) as i64, (r - 1) as i64).unwrap();
            let q = ExactRational::from((c * factorial(2 * n - r - 1), factorial(n - r)));
            into_integer(q * &common, "A_{n,r}")
        })
        .collect();
    let mut tables = TABLES.write().unwrap();
    if tables.refined.len() <= n as usize {
        tables.refined.resize(n as usize + 1, None);
    }
    tables.refined[n as usize] = Some(row.clone());
    row
}

/// `A_{n,r}`: ASMs whose first-row 1 sits in column `r`.
pub fn refined_count(n: u32, r: u32) -> Result<ExactInteger> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::Domain(format!(
            "refined count needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    Ok(refined_row(n)[(r - 1) as usize].clone())
}

/// The refined counts of one size, `counts[r-1] = A_{n,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedVector {
    pub n: u32,
    pub counts: Vec<ExactInteger>,
}

impl RefinedVector {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("refined vector needs n >= 1".into()));
        }
        Ok(RefinedVector {
            n,
            counts: refined_row(n),
        })
    }

    pub fn total(&self) -> ExactInteger {
        self.counts.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }
}

/// `g_n(z) = 2F1(1-n, n; 2n; 1-z)`, expanded in powers of `z`.
///
/// The series terminates after `n` terms; its coefficient of `z^{r-1}` is
/// `A_{n,r} / A_n`.
pub fn g_poly(n: u32) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::Domain("g_n needs n >= 1".into()));
    }
    let n = n as i64;
    let mut out = LaurentPoly::zero("z");
    let mut term = ExactRational::from(1);
    for m in 0..n {
        let expansion = LaurentPoly::binomial_power("z", -1, m as u32);
        out = out.add(&expansion.scale(&term))?;
        term *= ExactRational::from(((1 - n + m) * (n + m), (2 * n + m) * (m + 1)));
    }
    Ok(out)
}

/// Which closed-form identity a [`PropertyCheck`] exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    /// `B_{n,1} = sum_{r<n} A_{n,r}`.
    FirstCornerSum,
    /// `B_{n,s} = 0` for `s > floor(n/2)`.
    Vanishing,
    /// `B_{2s,s} = A_s^2`.
    EvenSquare,
    /// `B_{2s+1,s} = sum_{j,k} C(j+k-2, j-1) A_{s+1,j} A_{s+1,k}`.
    OddBinomialForm,
}

impl Identity {
    pub fn label(self) -> &'static str {
        match self {
            Identity::FirstCornerSum => "first-corner-sum",
            Identity::Vanishing => "vanishing",
            Identity::EvenSquare => "even-square",
            Identity::OddBinomialForm => "odd-binomial-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub identity: Identity,
    pub n: u32,
    pub s: u32,
    pub expected: ExactInteger,
    /// `Err` carries the source's failure message.
    pub actual: std::result::Result<ExactInteger, String>,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        matches!(&self.actual, Ok(v) if *v == self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub n: u32,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }
}

/// Expected right-hand side of the odd-size identity for `n = 2s+1`.
pub fn odd_binomial_form(s: u32) -> ExactInteger {
    let row = refined_row(s + 1);
    let mut acc = ExactInteger::new();
    for j in 1..=s + 1 {
        for k in 1..=s + 1 {
            let c = binomial((j + k - 2) as i64, (j - 1) as i64).unwrap();
            acc += c * &row[(j - 1) as usize] * &row[(k - 1) as usize];
        }
    }
    acc
}

/// Checks every closed-form identity that applies at size `n` against a
/// source of `B(n, s)` values. Failures are recorded, never raised.
pub fn verify_properties<F>(n: u32, mut source: F) -> PropertyReport
where
    F: FnMut(u32, u32) -> Result<ExactInteger>,
{
    let mut checks = Vec::new();
    let mut check = |identity, s, expected| {
        checks.push(PropertyCheck {
            identity,
            n,
            s,
            expected,
            actual: source(n, s).map_err(|e| e.to_string()),
        });
    };
    if n >= 1 {
        let expected: ExactInteger = refined_row(n)[..(n - 1) as usize].iter().sum();
        check(Identity::FirstCornerSum, 1, expected);
    }
    for s in n / 2 + 1..=n {
        check(Identity::Vanishing, s, ExactInteger::new());
    }
    if n >= 2 && n.is_multiple_of(2) {
        let half = asm_count(n / 2);
        check(
            Identity::EvenSquare,
            n / 2,
            ExactInteger::from(&half * &half),
        );
    }
    if n >= 3 && n % 2 == 1 {
        check(Identity::OddBinomialForm, n / 2, odd_binomial_form(n / 2));
    }
    PropertyReport { n, checks }
}
