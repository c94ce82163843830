//! `B(n, s)` as a constant term of a product of power series in
//! `z_1..z_s`.
//!
//! The integrand is regular at the origin in every variable apart from the
//! explicit `z_j^{-(n-s)}`, so the integral is the coefficient of
//! `prod_j z_j^{n-s-1}` in
//!
//! ```text
//! prod_j (z_j - 1)^{-(s-j+1)}  *  prod_{j<k} 1/(z_j z_k - z_j + 1)
//!   *  det_{j,k} [ (z_j - 1)^{s-k} z_j^{k-1} g_{n-k+1}(z_j) ]
//! ```
//!
//! with every factor expanded around the origin and truncated at degree
//! `n - s - 1` per variable.

use rayon::prelude::*;

use crate::asm_enum::{asm_count, g_poly};
use crate::error::{Error, Result};
use crate::numkit::{binomial, sign, ExactInteger, ExactRational, LaurentPoly, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirConfig {
    pub s_max: u32,
    pub n_max: u32,
    /// Extra truncation degree beyond what the extraction needs.
    pub margin: u32,
    /// Skip the `s_max`/`n_max` guard.
    pub allow_large: bool,
}

impl Default for MirConfig {
    fn default() -> Self {
        MirConfig {
            s_max: 4,
            n_max: 12,
            margin: 0,
            allow_large: false,
        }
    }
}

/// One `(n, s)` instance: the permutation-independent part of the series
/// and the determinant columns as coefficient vectors.
#[derive(Clone, Debug)]
pub struct MirInstance {
    pub n: u32,
    pub s: u32,
    pub caps: Vec<u32>,
    base: TruncatedSeries,
    columns: Vec<Vec<ExactRational>>,
}

fn var_names(s: u32) -> Vec<String> {
    (1..=s).map(|j| format!("z{j}")).collect()
}

impl MirInstance {
    pub fn new(n: u32, s: u32, margin: u32) -> Result<Self> {
        if s == 0 || s >= n {
            return Err(Error::Domain(format!(
                "instance needs 1 <= s < n, got n={n}, s={s}"
            )));
        }
        let cap = n - s - 1 + margin;
        let caps = vec![cap; s as usize];
        let names = var_names(s);
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();

        let mut base = TruncatedSeries::one(&vars, &caps)?;
        // (z_j - 1)^{-(s-j+1)} = (-1)^{s-j+1} sum_m C(m+s-j, s-j) z_j^m
        for j in 1..=s {
            let e = (s - j) as i64;
            let pole: Vec<ExactRational> = (0..=cap as i64)
                .map(|m| Ok(ExactRational::from(sign(e + 1) * binomial(m + e, e)?)))
                .collect::<Result<_>>()?;
            base = base.mul_univariate((j - 1) as usize, &pole)?;
        }
        // 1/(1 - z_j (1 - z_k)) = sum_m z_j^m (1 - z_k)^m, folded with j ascending.
        for j in 0..s as usize {
            for k in j + 1..s as usize {
                let mut terms = Vec::new();
                for m in 0..=cap {
                    for t in 0..=m.min(cap) {
                        let mut exps = vec![0; s as usize];
                        exps[j] = m;
                        exps[k] = t;
                        let c = sign(t as i64) * binomial(m as i64, t as i64)?;
                        terms.push((exps, ExactRational::from(c)));
                    }
                }
                let cross = TruncatedSeries::from_terms(&vars, &caps, terms)?;
                base = base.mul(&cross)?;
            }
        }
        // Column k: (z - 1)^{s-k} z^{k-1} g_{n-k+1}(z)
        let columns = (1..=s)
            .map(|k| {
                let p = LaurentPoly::binomial_power("z", -1, s - k)
                    .scale(&ExactRational::from(sign((s - k) as i64)))
                    .shift((k - 1) as i64)
                    .mul(&g_poly(n - k + 1)?)?;
                Ok((0..=cap as i64).map(|e| p.coeff(e)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(MirInstance {
            n,
            s,
            caps,
            base,
            columns,
        })
    }

    /// Coefficient of `prod_j z_j^{n-s-1}` in the full integrand series.
    pub fn constant_term(&self) -> Result<ExactRational> {
        let target = vec![self.n - self.s - 1; self.s as usize];
        let perms = permutations(self.s as usize);
        let parts: Vec<ExactRational> = perms
            .par_iter()
            .map(|(perm, parity)| {
                let mut term = self.base.clone();
                for (j, &k) in perm.iter().enumerate() {
                    term = term.mul_univariate(j, &self.columns[k])?;
                }
                Ok(term.coeff(&target) * ExactRational::from(*parity))
            })
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().sum())
    }
}

/// All permutations of `0..s` with their signs.
fn permutations(s: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == used.len() {
            let inversions = (0..prefix.len())
                .flat_map(|a| (a + 1..prefix.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| prefix[a] > prefix[b])
                .count();
            out.push((prefix.clone(), sign(inversions as i64)));
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; s], &mut out);
    out
}

pub fn mir_count(n: u32, s: u32) -> Result<ExactInteger> {
    mir_count_with(n, s, &MirConfig::default())
}

pub fn mir_count_with(n: u32, s: u32, cfg: &MirConfig) -> Result<ExactInteger> {
    if n == 0 || s > n {
        return Err(Error::Domain(format!(
            "need 1 <= n and s <= n, got n={n}, s={s}"
        )));
    }
    if !cfg.allow_large && (s > cfg.s_max || n > cfg.n_max) {
        return Err(Error::Guard(format!(
            "constant-term extraction costs about (n-s)^s * s! series products; \
             n={n}, s={s} exceeds the limits n <= {}, s <= {} (override to force)",
            cfg.n_max, cfg.s_max
        )));
    }
    if s == 0 {
        return Ok(asm_count(n));
    }
    if s >= n {
        // No pole left at the origin.
        return Ok(ExactInteger::new());
    }
    let ct = MirInstance::new(n, s, cfg.margin)?.constant_term()?;
    let value = ct * asm_count(n) * ExactRational::from(sign(s as i64));
    if *value.denom() != 1 {
        return Err(Error::Integrity(format!(
            "constant term gives non-integer {value} for n={n}, s={s}"
        )));
    }
    Ok(value.into_numer_denom().0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frozen_oracle::count_frozen;

    #[test]
    fn table_examples() {
        assert_eq!(mir_count(3, 1).unwrap(), 5);
        assert_eq!(mir_count(6, 2).unwrap(), 2889);
        assert_eq!(mir_count(8, 4).unwrap(), 1764);
    }

    #[test]
    fn single_frozen_cell() {
        for n in 2..=10 {
            assert_eq!(
                mir_count(n, 1).unwrap(),
                asm_count(n) - asm_count(n - 1),
                "n={n}"
            );
        }
    }

    #[test]
    fn margin_does_not_change_result() {
        for (n, s) in [(5, 2), (6, 3), (7, 2)] {
            let base = mir_count(n, s).unwrap();
            for margin in 1..=2 {
                let cfg = MirConfig {
                    margin,
                    ..MirConfig::default()
                };
                assert_eq!(
                    mir_count_with(n, s, &cfg).unwrap(),
                    base,
                    "n={n} s={s} margin={margin}"
                );
            }
        }
    }

    #[test]
    fn agrees_with_oracle() {
        for n in 1..=7 {
            for s in 0..=n.min(4) {
                assert_eq!(
                    mir_count(n, s).unwrap(),
                    count_frozen(n, s).unwrap(),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn guard_refuses_large() {
        assert!(matches!(mir_count(10, 5), Err(Error::Guard(_))));
        assert!(matches!(mir_count(13, 2), Err(Error::Guard(_))));
        let cfg = MirConfig {
            allow_large: true,
            ..MirConfig::default()
        };
        assert_eq!(mir_count_with(10, 5, &cfg).unwrap(), 184041);
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert!(p.contains(&(vec![1, 0, 2], -1)));
    }
}
