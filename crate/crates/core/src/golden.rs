//! Published frozen-corner counts, embedded as a versioned data file.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::numkit::ExactInteger;

const GOLDEN_CSV: &str = include_str!("../data/golden_v1.csv");

/// Largest size with tabulated values.
pub const GOLDEN_MAX_N: u32 = 20;

/// Sizes up to this one come from the short table; larger ones from the
/// extended table.
pub const SHORT_TABLE_MAX_N: u32 = 12;

#[derive(Debug)]
pub struct GoldenTable {
    pub version: u32,
    entries: BTreeMap<(u32, u32), ExactInteger>,
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "n,s,value" {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let bad = || Error::Validation(format!("golden table line {}: {line:?}", lineno + 1));
            match fields.as_slice() {
                ["version", v] => version = Some(v.parse().map_err(|_| bad())?),
                [n, s, v] => {
                    let key = (n.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?);
                    let value = ExactInteger::from_str_radix(v, 10).map_err(|_| bad())?;
                    if entries.insert(key, value).is_some() {
                        return Err(bad());
                    }
                }
                _ => return Err(bad()),
            }
        }
        let version =
            version.ok_or_else(|| Error::Validation("golden table has no version".into()))?;
        Ok(GoldenTable { version, entries })
    }

    /// The tabulated `B(n, s)`, including the implied zeros for
    /// `s > floor(n/2)`. `None` outside the table.
    pub fn get(&self, n: u32, s: u32) -> Option<ExactInteger> {
        if let Some(v) = self.entries.get(&(n, s)) {
            return Some(v.clone());
        }
        ((1..=GOLDEN_MAX_N).contains(&n) && s > n / 2 && s <= n).then(ExactInteger::new)
    }

    /// Explicit (nonzero) entries in `(n, s)` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &ExactInteger)> {
        self.entries.iter().map(|(&(n, s), v)| (n, s, v))
    }
}

pub fn golden() -> &'static GoldenTable {
    static TABLE: LazyLock<GoldenTable> =
        LazyLock::new(|| GoldenTable::parse(GOLDEN_CSV).expect("embedded golden table parses"));
    &TABLE
}

pub fn golden_value(n: u32, s: u32) -> Option<ExactInteger> {
    golden().get(n, s)
}
