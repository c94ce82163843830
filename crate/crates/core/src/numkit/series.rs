use super::ExactRational;
use crate::error::{Error, Result};

/// Multivariate polynomial truncated per variable: only monomials whose
/// exponent in variable `v` is at most `caps[v]` are kept.
///
/// Storage is dense over the box `[0, cap_0] x ... x [0, cap_{k-1}]` in
/// mixed radix, last variable fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    caps: Vec<u32>,
    strides: Vec<usize>,
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], caps: &[u32]) -> Result<Self> {
        if vars.len() != caps.len() {
            return Err(Error::Usage(format!(
                "{} variables but {} caps",
                vars.len(),
                caps.len()
            )));
        }
        let mut strides = vec![1usize; caps.len()];
        for v in (0..caps.len().saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * (caps[v + 1] as usize + 1);
        }
        let size = caps.iter().map(|&c| c as usize + 1).product();
        Ok(TruncatedSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            caps: caps.to_vec(),
            strides,
            coeffs: vec![ExactRational::new(); size],
        })
    }

    pub fn one(vars: &[&str], caps: &[u32]) -> Result<Self> {
        let mut s = Self::zero(vars, caps)?;
        s.coeffs[0] = ExactRational::from(1);
        Ok(s)
    }

    /// Sum of `c * x^e` terms; monomials beyond a cap are dropped.
    pub fn from_terms<I>(vars: &[&str], caps: &[u32], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactRational)>,
    {
        let mut s = Self::zero(vars, caps)?;
        for (exps, c) in terms {
            if exps.len() != caps.len() {
                return Err(Error::Usage(format!(
                    "exponent tuple of length {} for {} variables",
                    exps.len(),
                    caps.len()
                )));
            }
            if let Some(idx) = s.index(&exps) {
                s.coeffs[idx] += c;
            }
        }
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    fn index(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for ((e, cap), stride) in exps.iter().zip(&self.caps).zip(&self.strides) {
            if e > cap {
                return None;
            }
            idx += *e as usize * stride;
        }
        Some(idx)
    }

    fn exponents(&self, mut idx: usize) -> Vec<u32> {
        let mut exps = vec![0; self.caps.len()];
        for (v, stride) in self.strides.iter().enumerate() {
            exps[v] = (idx / stride) as u32;
            idx %= stride;
        }
        exps
    }

    pub fn coeff(&self, exps: &[u32]) -> ExactRational {
        if exps.len() != self.caps.len() {
            return ExactRational::new();
        }
        self.index(exps)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &ExactRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (self.exponents(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.caps != other.caps {
            return Err(Error::Usage(format!(
                "series over {:?} caps {:?} vs {:?} caps {:?}",
                self.vars, self.caps, other.vars, other.caps
            )));
        }
        Ok(())
    }

    /// Truncated product. Both operands must share variables and caps.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self {
            coeffs: vec![ExactRational::new(); self.coeffs.len()],
            ..self.clone()
        };
        let rhs: Vec<(Vec<u32>, &ExactRational)> = other.terms().collect();
        let mut exps = vec![0u32; self.caps.len()];
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if *ca == 0 {
                continue;
            }
            let ea = self.exponents(ia);
            'rhs: for (eb, cb) in &rhs {
                for v in 0..exps.len() {
                    exps[v] = ea[v] + eb[v];
                    if exps[v] > self.caps[v] {
                        continue 'rhs;
                    }
                }
                let idx = self.index(&exps).expect("within caps");
                out.coeffs[idx] += ExactRational::from(ca * *cb);
            }
        }
        Ok(out)
    }

    /// Product with a univariate polynomial in variable `var`, given by its
    /// coefficients from degree 0 upward.
    pub fn mul_univariate(&self, var: usize, poly: &[ExactRational]) -> Result<Self> {
        if var >= self.caps.len() {
            return Err(Error::Usage(format!("no variable with index {var}")));
        }
        let cap = self.caps[var] as usize;
        let stride = self.strides[var];
        let mut out = vec![ExactRational::new(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = (i / stride) % (cap + 1);
            for (d, p) in poly.iter().enumerate().take(cap + 1 - e) {
                if *p == 0 {
                    continue;
                }
                out[i + d * stride] += ExactRational::from(c * p);
            }
        }
        Ok(TruncatedSeries {
            coeffs: out,
            ..self.clone()
        })
    }

    /// The same series re-truncated (or zero-padded) to new caps.
    pub fn with_caps(&self, caps: &[u32]) -> Result<Self> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        Self::from_terms(&vars, caps, self.terms().map(|(e, c)| (e, c.clone())))
    }
}

/// Truncated product of two series with identical variables and caps.
pub fn series_mul(p: &TruncatedSeries, q: &TruncatedSeries) -> Result<TruncatedSeries> {
    p.mul(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> ExactRational {
        ExactRational::from(n)
    }

    #[test]
    fn identity_and_truncation() {
        let x = TruncatedSeries::from_terms(&["x"], &[1], [(vec![1], r(1))]).unwrap();
        let one = TruncatedSeries::one(&["x"], &[1]).unwrap();
        assert_eq!(x.mul(&one).unwrap(), x);
        assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn two_variable_product() {
        let vars = ["x", "y"];
        let caps = [1, 2];
        let px =
            TruncatedSeries::from_terms(&vars, &caps, [(vec![0, 0], r(1)), (vec![1, 0], r(1))])
                .unwrap();
        let py =
            TruncatedSeries::from_terms(&vars, &caps, [(vec![0, 0], r(1)), (vec![0, 1], r(1))])
                .unwrap();
        let prod = px.mul(&py).unwrap();
        let expect = TruncatedSeries::from_terms(
            &vars,
            &caps,
            [
                (vec![0, 0], r(1)),
                (vec![1, 0], r(1)),
                (vec![0, 1], r(1)),
                (vec![1, 1], r(1)),
            ],
        )
        .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn mismatched_caps_rejected() {
        let a = TruncatedSeries::one(&["x"], &[1]).unwrap();
        let b = TruncatedSeries::one(&["x"], &[2]).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
        let c = TruncatedSeries::one(&["y"], &[1]).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn univariate_product_matches_general() {
        let vars = ["x", "y"];
        let caps = [3, 2];
        let s = TruncatedSeries::from_terms(
            &vars,
            &caps,
            [(vec![0, 0], r(2)), (vec![1, 2], r(-1)), (vec![3, 1], r(5))],
        )
        .unwrap();
        let poly = vec![r(1), r(-2), r(3)];
        let as_series = TruncatedSeries::from_terms(
            &vars,
            &caps,
            poly.iter()
                .enumerate()
                .map(|(d, c)| (vec![0, d as u32], c.clone())),
        )
        .unwrap();
        assert_eq!(
            s.mul_univariate(1, &poly).unwrap(),
            s.mul(&as_series).unwrap()
        );
    }

    fn arb_series(caps: [u32; 2]) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((0u32..5, 0u32..5, -4i64..5), 0..8).prop_map(move |v| {
            TruncatedSeries::from_terms(
                &["x", "y"],
                &caps,
                v.into_iter()
                    .map(|(a, b, c)| (vec![a, b], ExactRational::from(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn commutative_associative(p in arb_series([3, 2]), q in arb_series([3, 2]), s in arb_series([3, 2])) {
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
            prop_assert_eq!(p.mul(&q).unwrap().mul(&s).unwrap(), p.mul(&q.mul(&s).unwrap()).unwrap());
        }

        #[test]
        fn truncation_commutes_with_product(p in arb_series([4, 4]), q in arb_series([4, 4])) {
            let small = [2, 3];
            let late = p.mul(&q).unwrap().with_caps(&small).unwrap();
            let early = p.with_caps(&small).unwrap().mul(&q.with_caps(&small).unwrap()).unwrap();
            prop_assert_eq!(late, early);
        }
    }
}
