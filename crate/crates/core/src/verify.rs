//! Cross-checks between the counters, the embedded tables and the
//! structural identities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::asm_enum::{verify_properties, PropertyReport};
use crate::conjecture::conjecture_count;
use crate::error::Error;
use crate::golden::golden_value;
use crate::method::{MethodOptions, Registry, ORACLE_DEFAULT_MAX_N};
use crate::numkit::ExactInteger;

/// Oracle limit under `slow`.
pub const ORACLE_SLOW_MAX_N: u32 = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every applicable counter against every other, the golden table and
    /// the identities.
    #[default]
    Full,
    /// Every applicable counter against the golden table only.
    GoldenOnly,
    /// The determinant route alone against the golden table.
    ConjectureVsGolden,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub n_max: u32,
    pub mode: VerifyMode,
    /// Let the oracle run up to [`ORACLE_SLOW_MAX_N`].
    pub slow: bool,
}

/// A value from outside the registry, e.g. a cached record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalValue {
    pub n: u32,
    pub s: u32,
    pub label: String,
    pub value: ExactInteger,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Failure {
    Mismatch {
        n: u32,
        s: u32,
        left: String,
        right: String,
        left_value: ExactInteger,
        right_value: ExactInteger,
    },
    MethodError {
        n: u32,
        s: u32,
        method: String,
        message: String,
    },
    Property {
        n: u32,
        s: u32,
        identity: String,
        detail: String,
    },
}

impl Failure {
    fn key(&self) -> (u32, u32, String) {
        match self {
            Failure::Mismatch {
                n, s, left, right, ..
            } => (*n, *s, format!("{left}/{right}")),
            Failure::MethodError { n, s, method, .. } => (*n, *s, method.clone()),
            Failure::Property { n, s, identity, .. } => (*n, *s, identity.clone()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Failure::Mismatch {
                n,
                s,
                left,
                right,
                left_value,
                right_value,
            } => {
                format!("n={n} s={s} {left}={left_value} {right}={right_value}")
            }
            Failure::MethodError {
                n,
                s,
                method,
                message,
            } => format!("n={n} s={s} {method}: {message}"),
            Failure::Property {
                n,
                s,
                identity,
                detail,
            } => format!("n={n} s={s} {identity}: {detail}"),
        }
    }
}

/// Values gathered for one `(n, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellResult {
    pub n: u32,
    pub s: u32,
    pub values: BTreeMap<String, ExactInteger>,
    pub failures: Vec<Failure>,
}

impl CellResult {
    /// At least two sources and no failure.
    pub fn confirmed(&self) -> bool {
        self.failures.is_empty() && self.values.len() >= 2
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub cells: Vec<CellResult>,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    /// Every failure, sorted by `(n, s, method pair)`.
    pub fn failures(&self) -> Vec<Failure> {
        let mut out: Vec<Failure> = self
            .cells
            .iter()
            .flat_map(|c| c.failures.iter().cloned())
            .collect();
        for r in &self.properties {
            for c in r.checks.iter().filter(|c| !c.passed()) {
                out.push(Failure::Property {
                    n: r.n,
                    s: c.s,
                    identity: c.identity.label().to_string(),
                    detail: match &c.actual {
                        Ok(v) => format!("expected {} got {v}", c.expected),
                        Err(e) => e.clone(),
                    },
                });
            }
        }
        out.sort_by_key(|f| f.key());
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Smallest failure by `(n, s, method pair)`.
    pub fn minimal_failure(&self) -> Option<Failure> {
        self.failures().into_iter().next()
    }

    /// Plain-text report. Contains no timings, so equal inputs give equal
    /// bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let o = &self.options;
        let _ = writeln!(
            out,
            "verify n_max={} mode={:?} slow={}",
            o.n_max, o.mode, o.slow
        );
        let _ = writeln!(
            out,
            "legend: . confirmed by >= 2 sources, o single source, X failure"
        );
        let mut by_n: BTreeMap<u32, Vec<&CellResult>> = BTreeMap::new();
        for c in &self.cells {
            by_n.entry(c.n).or_default().push(c);
        }
        for (n, cells) in &by_n {
            let marks: String = cells
                .iter()
                .map(|c| {
                    if !c.failures.is_empty() {
                        'X'
                    } else if c.confirmed() {
                        '.'
                    } else {
                        'o'
                    }
                })
                .collect();
            let mut sources: Vec<&str> = cells
                .iter()
                .flat_map(|c| c.values.keys().map(String::as_str))
                .collect();
            sources.sort_unstable();
            sources.dedup();
            let _ = writeln!(
                out,
                "n={n:>3} s=0..{:<3} {marks:<24} [{}]",
                cells.len() - 1,
                sources.join(",")
            );
        }
        for r in &self.properties {
            let ok = r.checks.iter().filter(|c| c.passed()).count();
            let status = if r.all_passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "properties n={:>3}: {ok}/{} {status}",
                r.n,
                r.checks.len()
            );
        }
        let failures = self.failures();
        let checked = self.cells.len();
        if failures.is_empty() {
            let _ = writeln!(
                out,
                "PASS: {checked} cells, {} property sets",
                self.properties.len()
            );
        } else {
            let _ = writeln!(
                out,
                "FAIL: {} failure(s) in {checked} cells",
                failures.len()
            );
            for f in &failures {
                let _ = writeln!(out, "  {}", f.describe());
            }
            let _ = writeln!(out, "minimal failure: {}", failures[0].describe());
        }
        out
    }
}

fn registry_for(opts: &VerifyOptions) -> Registry {
    Registry::standard(&MethodOptions {
        oracle_max_n: if opts.slow {
            ORACLE_SLOW_MAX_N
        } else {
            ORACLE_DEFAULT_MAX_N
        },
        ..MethodOptions::default()
    })
}

fn methods_for(mode: VerifyMode) -> &'static [&'static str] {
    match mode {
        VerifyMode::Full | VerifyMode::GoldenOnly => &["brute", "conjecture", "mir", "oracle"],
        VerifyMode::ConjectureVsGolden => &["conjecture"],
    }
}

fn check_cell(
    n: u32,
    s: u32,
    reg: &Registry,
    opts: &VerifyOptions,
    extra: &[&ExternalValue],
) -> CellResult {
    let mut values = BTreeMap::new();
    let mut failures = Vec::new();
    for &name in methods_for(opts.mode) {
        let counter = reg.get(name).expect("standard counter");
        if counter.admit(n, s).is_err() {
            continue;
        }
        match counter.count(n, s) {
            Ok(v) => {
                values.insert(name.to_string(), v);
            }
            Err(Error::Guard(_)) => {}
            Err(e) => failures.push(Failure::MethodError {
                n,
                s,
                method: name.to_string(),
                message: e.to_string(),
            }),
        }
    }
    let golden = golden_value(n, s);
    if let Some(g) = &golden {
        values.insert("golden".to_string(), g.clone());
    }
    for e in extra {
        values.insert(e.label.clone(), e.value.clone());
    }
    let names: Vec<&String> = values.keys().collect();
    let pairs: Vec<(usize, usize)> = match opts.mode {
        VerifyMode::Full => (0..names.len())
            .flat_map(|a| (a + 1..names.len()).map(move |b| (a, b)))
            .collect(),
        _ => {
            let g = names.iter().position(|k| k.as_str() == "golden");
            (0..names.len())
                .filter(|&a| Some(a) != g)
                .filter_map(|a| g.map(|g| (a.min(g), a.max(g))))
                .collect()
        }
    };
    for (a, b) in pairs {
        let (va, vb) = (&values[names[a]], &values[names[b]]);
        if va != vb {
            failures.push(Failure::Mismatch {
                n,
                s,
                left: names[a].clone(),
                right: names[b].clone(),
                left_value: va.clone(),
                right_value: vb.clone(),
            });
        }
    }
    failures.sort_by_key(|f| f.key());
    CellResult {
        n,
        s,
        values,
        failures,
    }
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    run_verify_with(opts, &[])
}

/// Like [`run_verify`], with extra values folded into the matching cells.
pub fn run_verify_with(opts: &VerifyOptions, extra: &[ExternalValue]) -> VerifyReport {
    let reg = registry_for(opts);
    let grid: Vec<(u32, u32)> = (1..=opts.n_max)
        .flat_map(|n| (0..=n).map(move |s| (n, s)))
        .filter(|&(n, s)| opts.mode == VerifyMode::Full || golden_value(n, s).is_some())
        .collect();
    // Largest n first: the oracle shares its memo across cells.
    let mut cells: Vec<CellResult> = grid
        .par_iter()
        .rev()
        .map(|&(n, s)| {
            let mine: Vec<&ExternalValue> = extra.iter().filter(|e| e.n == n && e.s == s).collect();
            check_cell(n, s, &reg, opts, &mine)
        })
        .collect();
    cells.retain(|c| !c.values.is_empty() || !c.failures.is_empty());
    cells.sort_by_key(|c| (c.n, c.s));
    let properties = if opts.mode == VerifyMode::Full {
        (1..=opts.n_max)
            .into_par_iter()
            .map(|n| verify_properties(n, conjecture_count))
            .collect()
    } else {
        Vec::new()
    };
    VerifyReport {
        options: opts.clone(),
        cells,
        properties,
    }
}
