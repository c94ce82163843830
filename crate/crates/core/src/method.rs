//! Interchangeable `B(n, s)` counters behind one trait, looked up by name.

use std::collections::BTreeMap;

use crate::conjecture::{conjecture_count_with, EntryRoute};
use crate::error::{Error, Result};
use crate::frozen_oracle::{brute_force_frozen, count_frozen_with, MemoMode, BRUTE_FORCE_MAX_N};
use crate::mir::{mir_count_with, MirConfig};
use crate::numkit::ExactInteger;

pub trait FrozenCounter: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Cheap guard, run before any work is done.
    fn admit(&self, n: u32, s: u32) -> Result<()> {
        let _ = (n, s);
        Ok(())
    }

    fn count(&self, n: u32, s: u32) -> Result<ExactInteger>;
}

/// Default largest size the triangle oracle accepts without an override.
pub const ORACLE_DEFAULT_MAX_N: u32 = 14;

pub struct OracleCounter {
    pub memo: MemoMode,
    pub max_n: u32,
}

impl FrozenCounter for OracleCounter {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn summary(&self) -> &'static str {
        "memoized count of monotone triangles with capped top rows"
    }

    fn admit(&self, n: u32, _s: u32) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Guard(format!(
                "oracle run time grows roughly 3^n; n={n} exceeds {} (override to force)",
                self.max_n
            )));
        }
        Ok(())
    }

    fn count(&self, n: u32, s: u32) -> Result<ExactInteger> {
        self.admit(n, s)?;
        count_frozen_with(n, s, self.memo)
    }
}

pub struct ConjectureCounter {
    pub route: EntryRoute,
}

impl FrozenCounter for ConjectureCounter {
    fn name(&self) -> &'static str {
        "conjecture"
    }

    fn summary(&self) -> &'static str {
        "A_n det(1 - M) with exact rational entries"
    }

    fn count(&self, n: u32, s: u32) -> Result<ExactInteger> {
        conjecture_count_with(n, s, self.route)
    }
}

pub struct MirCounter {
    pub config: MirConfig,
}

impl FrozenCounter for MirCounter {
    fn name(&self) -> &'static str {
        "mir"
    }

    fn summary(&self) -> &'static str {
        "constant term of the multiple-integral representation"
    }

    fn admit(&self, n: u32, s: u32) -> Result<()> {
        let c = &self.config;
        if !c.allow_large && (s > c.s_max || n > c.n_max) {
            return Err(Error::Guard(format!(
                "mir is limited to n <= {}, s <= {} (override to force); got n={n}, s={s}",
                c.n_max, c.s_max
            )));
        }
        Ok(())
    }

    fn count(&self, n: u32, s: u32) -> Result<ExactInteger> {
        mir_count_with(n, s, &self.config)
    }
}

pub struct BruteCounter;

impl FrozenCounter for BruteCounter {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn summary(&self) -> &'static str {
        "direct scan of {-1,0,1} matrices (n <= 4)"
    }

    fn admit(&self, n: u32, _s: u32) -> Result<()> {
        if n > BRUTE_FORCE_MAX_N {
            return Err(Error::Guard(format!(
                "brute force is limited to n <= {BRUTE_FORCE_MAX_N}; got n={n}"
            )));
        }
        Ok(())
    }

    fn count(&self, n: u32, s: u32) -> Result<ExactInteger> {
        brute_force_frozen(n, s)
    }
}

/// Knobs shared by the standard counters.
#[derive(Clone, Debug)]
pub struct MethodOptions {
    /// Lift the oracle and mir size guards.
    pub allow_large: bool,
    pub oracle_max_n: u32,
    pub memo: MemoMode,
    pub route: EntryRoute,
    pub mir: MirConfig,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions {
            allow_large: false,
            oracle_max_n: ORACLE_DEFAULT_MAX_N,
            memo: MemoMode::Enabled,
            route: EntryRoute::default(),
            mir: MirConfig::default(),
        }
    }
}

#[derive(Default)]
pub struct Registry {
    counters: BTreeMap<&'static str, Box<dyn FrozenCounter>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// oracle, conjecture, mir and brute.
    pub fn standard(opts: &MethodOptions) -> Self {
        let mut r = Self::empty();
        r.register(Box::new(OracleCounter {
            memo: opts.memo,
            max_n: if opts.allow_large {
                u32::MAX
            } else {
                opts.oracle_max_n
            },
        }));
        r.register(Box::new(ConjectureCounter { route: opts.route }));
        r.register(Box::new(MirCounter {
            config: MirConfig {
                allow_large: opts.allow_large || opts.mir.allow_large,
                ..opts.mir.clone()
            },
        }));
        r.register(Box::new(BruteCounter));
        r
    }

    /// Adds a counter, replacing any previous one with the same name.
    pub fn register(&mut self, counter: Box<dyn FrozenCounter>) -> Option<Box<dyn FrozenCounter>> {
        self.counters.insert(counter.name(), counter)
    }

    pub fn get(&self, name: &str) -> Result<&dyn FrozenCounter> {
        self.counters.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::Usage(format!(
                "unknown method {name:?}; available: {}",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.counters.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn FrozenCounter> {
        self.counters.values().map(|b| b.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_registry_lookup() {
        let r = Registry::standard(&MethodOptions::default());
        assert_eq!(
            r.names().collect::<Vec<_>>(),
            ["brute", "conjecture", "mir", "oracle"]
        );
        for name in ["oracle", "conjecture", "mir", "brute"] {
            assert_eq!(r.get(name).unwrap().count(4, 2).unwrap(), 4, "{name}");
        }
        assert!(matches!(r.get("nope"), Err(Error::Usage(_))));
    }

    #[test]
    fn guards_apply() {
        let r = Registry::standard(&MethodOptions::default());
        assert!(matches!(
            r.get("brute").unwrap().admit(5, 1),
            Err(Error::Guard(_))
        ));
        assert!(matches!(
            r.get("mir").unwrap().admit(8, 5),
            Err(Error::Guard(_))
        ));
        assert!(matches!(
            r.get("oracle").unwrap().admit(15, 1),
            Err(Error::Guard(_))
        ));
        assert!(r.get("conjecture").unwrap().admit(40, 20).is_ok());
        let big = Registry::standard(&MethodOptions {
            allow_large: true,
            ..MethodOptions::default()
        });
        assert!(big.get("oracle").unwrap().admit(15, 1).is_ok());
        assert!(big.get("mir").unwrap().admit(8, 5).is_ok());
    }

    struct Constant;

    impl FrozenCounter for Constant {
        fn name(&self) -> &'static str {
            "conjecture"
        }
        fn summary(&self) -> &'static str {
            "test double"
        }
        fn count(&self, _n: u32, _s: u32) -> Result<ExactInteger> {
            Ok(ExactInteger::from(7))
        }
    }

    #[test]
    fn register_replaces_by_name() {
        let mut r = Registry::standard(&MethodOptions::default());
        assert!(r.register(Box::new(Constant)).is_some());
        assert_eq!(r.get("conjecture").unwrap().count(4, 2).unwrap(), 7);
    }
}
