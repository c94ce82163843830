//! Ground-truth frozen-corner counts.
//!
//! An `n x n` ASM with an `s x s` block of zeros in a corner corresponds to
//! a monotone triangle whose first `s` rows have no entry above `n - s`.
//! [`count_frozen`] counts those triangles by memoized top-down growth;
//! [`brute_force_frozen`] scans matrices directly from the ASM definition
//! and exists only to validate it at tiny sizes.

use std::collections::HashMap;

use crate::asm_enum::asm_count;
use crate::error::{Error, Result};
use crate::numkit::ExactInteger;

/// A strictly increasing row of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row(Vec<u32>);

impl Row {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.first() == Some(&0) {
            return Err(Error::Validation("row entries must be positive".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "row {entries:?} is not strictly increasing"
            )));
        }
        Ok(Row(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &e| m | 1 << (e - 1))
    }
}

/// Calls `f` on every strictly increasing row `b` of length `row.len() + 1`
/// with entries in `[1, cap]` that weakly interlaces `row`:
/// `b_j <= row_j <= b_{j+1}`.
fn for_each_successor(row: &[u32], cap: u32, f: &mut impl FnMut(&[u32])) {
    fn fill(row: &[u32], cap: u32, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        let j = buf.len();
        if j == row.len() + 1 {
            f(buf);
            return;
        }
        let lo = match (j.checked_sub(1).map(|p| row[p]), buf.last()) {
            (Some(r), Some(&b)) => r.max(b + 1),
            _ => 1,
        };
        let hi = if j < row.len() { row[j].min(cap) } else { cap };
        for v in lo..=hi {
            buf.push(v);
            fill(row, cap, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(row.len() + 1);
    fill(row, cap, &mut buf, f);
}

/// All rows that may sit directly below `r` in a monotone triangle of size `n`.
pub fn successors(r: &Row, n: u32) -> Vec<Row> {
    let mut out = Vec::new();
    if r.len() >= n as usize || r.entries().last().is_some_and(|&e| e > n) {
        return out;
    }
    for_each_successor(r.entries(), n, &mut |b| out.push(Row(b.to_vec())));
    out
}

/// Memoized subtree counts for one `(n, s)` instance.
///
/// The key is the row (as a bitmask) together with whether the next row is
/// still capped at `n - s`. For a fixed instance the flag is a function of
/// the row length, but keeping it in the key makes the dependence explicit.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: HashMap<(u64, bool), ExactInteger>,
}

impl MemoTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: &Row, capped: bool) -> Option<&ExactInteger> {
        self.entries.get(&(row.mask(), capped))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemoMode {
    Enabled,
    Disabled,
}

struct TriangleCounter {
    n: u32,
    s: u32,
    memo: Option<MemoTable>,
}

impl TriangleCounter {
    fn count_below(&mut self, row: &[u32]) -> ExactInteger {
        // A row of length n-1 always has exactly one completion: 1..n.
        if row.len() + 1 >= self.n as usize {
            return ExactInteger::from(1);
        }
        let capped = row.len() < self.s as usize;
        let key = (row.iter().fold(0u64, |m, &e| m | 1 << (e - 1)), capped);
        if let Some(v) = self.memo.as_ref().and_then(|m| m.entries.get(&key)) {
            return v.clone();
        }
        let cap = if capped { self.n - self.s } else { self.n };
        let mut next = Vec::new();
        for_each_successor(row, cap, &mut |b| next.push(b.to_vec()));
        let mut total = ExactInteger::new();
        for b in next {
            total += self.count_below(&b);
        }
        if let Some(memo) = self.memo.as_mut() {
            memo.entries.insert(key, total.clone());
        }
        total
    }
}

/// `B(n, s)` by counting monotone triangles with rows `1..=s` capped at `n - s`.
pub fn count_frozen(n: u32, s: u32) -> Result<ExactInteger> {
    count_frozen_with(n, s, MemoMode::Enabled)
}

pub fn count_frozen_with(n: u32, s: u32, mode: MemoMode) -> Result<ExactInteger> {
    if n == 0 {
        return Err(Error::Domain("matrix size must be positive".into()));
    }
    if s > n {
        return Err(Error::Domain(format!("frozen square {s} exceeds size {n}")));
    }
    if n > 64 {
        return Err(Error::Guard(format!(
            "row bitmasks support n <= 64, got {n}"
        )));
    }
    if s == 0 {
        return Ok(asm_count(n));
    }
    let mut counter = TriangleCounter {
        n,
        s,
        memo: (mode == MemoMode::Enabled).then(MemoTable::default),
    };
    let mut total = ExactInteger::new();
    for top in 1..=n - s {
        total += counter.count_below(&[top]);
    }
    Ok(total)
}

/// A square matrix over `{-1, 0, 1}` satisfying the ASM conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AsmMatrix {
    n: usize,
    entries: Vec<i8>,
}

fn alternates(mut line: impl Iterator<Item = i8>) -> bool {
    let mut partial = 0i8;
    line.all(|a| {
        partial += a;
        (0..=1).contains(&partial) && (-1..=1).contains(&a)
    }) && partial == 1
}

impl AsmMatrix {
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Validation(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let m = AsmMatrix { n, entries };
        for i in 0..n {
            if !alternates((0..n).map(|j| m.get(i, j))) {
                return Err(Error::Validation(format!(
                    "row {} is not alternating",
                    i + 1
                )));
            }
            if !alternates((0..n).map(|j| m.get(j, i))) {
                return Err(Error::Validation(format!(
                    "column {} is not alternating",
                    i + 1
                )));
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    /// True when the top-left `s x s` block is all zeros.
    pub fn has_frozen_corner(&self, s: usize) -> bool {
        (0..s).all(|i| (0..s).all(|j| self.get(i, j) == 0))
    }
}

/// Rows `t_{i,*}` of a monotone triangle, row `i` having `i` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneTriangle {
    rows: Vec<Row>,
}

impl MonotoneTriangle {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len() as u32;
        let rows = rows.into_iter().map(Row::new).collect::<Result<Vec<_>>>()?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != i + 1 {
                return Err(Error::Validation(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    r.len(),
                    i + 1
                )));
            }
            if r.entries().iter().any(|&e| e > n) {
                return Err(Error::Validation(format!("row {} exceeds {n}", i + 1)));
            }
        }
        for (i, pair) in rows.windows(2).enumerate() {
            let (up, down) = (pair[0].entries(), pair[1].entries());
            if (0..up.len()).any(|j| !(down[j] <= up[j] && up[j] <= down[j + 1])) {
                return Err(Error::Validation(format!(
                    "rows {} and {} do not interlace",
                    i + 1,
                    i + 2
                )));
            }
        }
        if let Some(last) = rows.last() {
            if last.entries().iter().copied().ne(1..=n) {
                return Err(Error::Validation("bottom row must be 1..n".into()));
            }
        }
        Ok(MonotoneTriangle { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }
}

/// Undoes the column partial sums: row `i` of the 0/1 matrix has its ones at
/// `t_{i,*}`, and the ASM is the difference of consecutive rows.
pub fn monotone_to_asm(t: &MonotoneTriangle) -> Result<AsmMatrix> {
    let n = t.size();
    let mut entries = vec![0i8; n * n];
    let mut prev = vec![0i8; n];
    for (i, row) in t.rows().iter().enumerate() {
        let mut cur = vec![0i8; n];
        for &e in row.entries() {
            cur[(e - 1) as usize] = 1;
        }
        for j in 0..n {
            entries[i * n + j] = cur[j] - prev[j];
        }
        prev = cur;
    }
    AsmMatrix::new(n, entries)
}

/// Column partial sums of an ASM, read off as a monotone triangle.
pub fn asm_to_monotone(a: &AsmMatrix) -> MonotoneTriangle {
    let n = a.size();
    let mut partial = vec![0i8; n];
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        for (j, p) in partial.iter_mut().enumerate() {
            *p += a.get(i, j);
        }
        rows.push(Row((1..=n as u32)
            .filter(|&j| partial[(j - 1) as usize] == 1)
            .collect()));
    }
    MonotoneTriangle { rows }
}

/// Every monotone triangle of size `n`; exponential, for tests and tools.
pub fn enumerate_triangles(n: u32) -> Vec<MonotoneTriangle> {
    fn grow(n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<MonotoneTriangle>) {
        if rows.len() == n as usize {
            out.push(MonotoneTriangle::new(rows.clone()).expect("grown rows are valid"));
            return;
        }
        let last = rows.last().cloned().unwrap_or_default();
        let mut next = Vec::new();
        for_each_successor(&last, n, &mut |b| next.push(b.to_vec()));
        for b in next {
            if rows.len() + 1 == n as usize && b.iter().copied().ne(1..=n) {
                continue;
            }
            rows.push(b);
            grow(n, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        grow(n, &mut Vec::new(), &mut out);
    }
    out
}

pub const BRUTE_FORCE_MAX_N: u32 = 4;

/// Counts `n x n` matrices over `{-1, 0, 1}` meeting the ASM definition with
/// a zero top-left `s x s` block. Rows are generated one at a time and
/// column partial sums are pruned as they go, so `n = 4` takes milliseconds.
pub fn brute_force_frozen(n: u32, s: u32) -> Result<ExactInteger> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Guard(format!(
            "brute force scans 3^(n^2) matrices; n = {n} exceeds the limit {BRUTE_FORCE_MAX_N}"
        )));
    }
    if n == 0 || s > n {
        return Err(Error::Domain(format!(
            "need 1 <= n and s <= n, got n={n}, s={s}"
        )));
    }
    let n = n as usize;
    let s = s as usize;
    let all_rows: Vec<Vec<i8>> = (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = (code % 3) as i8 - 1;
                    code /= 3;
                    d
                })
                .collect()
        })
        .filter(|r: &Vec<i8>| alternates(r.iter().copied()))
        .collect();

    fn place(i: usize, n: usize, s: usize, rows: &[Vec<i8>], cols: &mut [i8]) -> u64 {
        if i == n {
            return u64::from(cols.iter().all(|&c| c == 1));
        }
        let mut total = 0;
        for r in rows {
            if i < s && r[..s].iter().any(|&a| a != 0) {
                continue;
            }
            if r.iter()
                .zip(cols.iter())
                .any(|(&a, &c)| !(0..=1).contains(&(a + c)))
            {
                continue;
            }
            for (c, &a) in cols.iter_mut().zip(r) {
                *c += a;
            }
            total += place(i + 1, n, s, rows, cols);
            for (c, &a) in cols.iter_mut().zip(r) {
                *c -= a;
            }
        }
        total
    }

    Ok(ExactInteger::from(place(
        0,
        n,
        s,
        &all_rows,
        &mut vec![0; n],
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn row(v: &[u32]) -> Row {
        Row::new(v.to_vec()).unwrap()
    }

    #[test]
    fn successor_examples() {
        assert_eq!(successors(&row(&[1]), 2), vec![row(&[1, 2])]);
        assert_eq!(
            successors(&row(&[2]), 3),
            vec![row(&[1, 2]), row(&[1, 3]), row(&[2, 3])]
        );
        assert!(successors(&row(&[1, 2]), 2).is_empty());
    }

    #[test]
    fn successors_agree_with_definition() {
        for n in 1..=5u32 {
            for len in 1..n as usize {
                for mask in 0u32..1 << n {
                    if mask.count_ones() as usize != len {
                        continue;
                    }
                    let r: Vec<u32> = (1..=n).filter(|e| mask >> (e - 1) & 1 == 1).collect();
                    let got: HashSet<Row> = successors(&row(&r), n).into_iter().collect();
                    let expect: HashSet<Row> = (0u32..1 << n)
                        .filter(|m| m.count_ones() as usize == len + 1)
                        .map(|m| {
                            (1..=n)
                                .filter(|e| m >> (e - 1) & 1 == 1)
                                .collect::<Vec<_>>()
                        })
                        .filter(|b| (0..len).all(|j| b[j] <= r[j] && r[j] <= b[j + 1]))
                        .map(Row)
                        .collect();
                    assert_eq!(got, expect, "row {r:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn row_validation() {
        assert!(Row::new(vec![2, 2]).is_err());
        assert!(Row::new(vec![0, 1]).is_err());
        assert!(Row::new(vec![]).is_ok());
    }

    #[test]
    fn full_triangles_from_tops() {
        assert_eq!(enumerate_triangles(3).len(), 7);
        assert_eq!(enumerate_triangles(4).len(), 42);
    }

    #[test]
    fn frozen_counts_small() {
        assert_eq!(count_frozen(2, 1).unwrap(), 1);
        assert_eq!(count_frozen(3, 1).unwrap(), 5);
        assert_eq!(count_frozen(4, 2).unwrap(), 4);
        assert_eq!(count_frozen(9, 5).unwrap(), 0);
        assert_eq!(count_frozen(1, 1).unwrap(), 0);
        assert_eq!(count_frozen(5, 5).unwrap(), 0);
        assert!(matches!(count_frozen(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn s_zero_is_plain_count() {
        for n in 1..=10 {
            assert_eq!(count_frozen(n, 0).unwrap(), asm_count(n));
        }
    }

    #[test]
    fn memo_does_not_change_results() {
        for n in 1..=8 {
            for s in 0..=n {
                assert_eq!(
                    count_frozen_with(n, s, MemoMode::Enabled).unwrap(),
                    count_frozen_with(n, s, MemoMode::Disabled).unwrap(),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn non_increasing_in_s() {
        for n in 1..=10 {
            let v: Vec<_> = (0..=n).map(|s| count_frozen(n, s).unwrap()).collect();
            assert!(v.windows(2).all(|w| w[0] >= w[1]), "n={n}: {v:?}");
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_frozen(2, 1).unwrap(), 1);
        assert_eq!(brute_force_frozen(4, 2).unwrap(), 4);
        assert_eq!(brute_force_frozen(3, 0).unwrap(), 7);
        assert_eq!(brute_force_frozen(4, 0).unwrap(), 42);
        assert!(matches!(brute_force_frozen(5, 1), Err(Error::Guard(_))));
    }

    #[test]
    fn brute_force_matches_oracle() {
        for n in 1..=4 {
            for s in 0..=n {
                assert_eq!(
                    brute_force_frozen(n, s).unwrap(),
                    count_frozen(n, s).unwrap(),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn triangle_to_asm_examples() {
        let t1 = MonotoneTriangle::new(vec![vec![1]]).unwrap();
        assert_eq!(
            monotone_to_asm(&t1).unwrap(),
            AsmMatrix::new(1, vec![1]).unwrap()
        );
        let t3 = MonotoneTriangle::new(vec![vec![2], vec![1, 3], vec![1, 2, 3]]).unwrap();
        let expect = AsmMatrix::new(3, vec![0, 1, 0, 1, -1, 1, 0, 1, 0]).unwrap();
        assert_eq!(monotone_to_asm(&t3).unwrap(), expect);
    }

    #[test]
    fn invalid_triangles_rejected() {
        assert!(MonotoneTriangle::new(vec![vec![3], vec![1, 2], vec![1, 2, 3]]).is_err());
        assert!(MonotoneTriangle::new(vec![vec![1], vec![1, 3]]).is_err());
        assert!(MonotoneTriangle::new(vec![vec![1], vec![1]]).is_err());
        assert!(AsmMatrix::new(2, vec![1, 1, 0, 0]).is_err());
        assert!(AsmMatrix::new(2, vec![1, 0, 0]).is_err());
    }

    #[test]
    fn bijection_round_trips_at_size_four() {
        let triangles = enumerate_triangles(4);
        let asms: HashSet<AsmMatrix> = triangles
            .iter()
            .map(|t| {
                let a = monotone_to_asm(t).unwrap();
                assert_eq!(&asm_to_monotone(&a), t);
                a
            })
            .collect();
        assert_eq!(asms.len(), 42);
        for a in &asms {
            assert_eq!(monotone_to_asm(&asm_to_monotone(a)).unwrap(), *a);
        }
        let frozen = asms.iter().filter(|a| a.has_frozen_corner(2)).count();
        assert_eq!(frozen, 4);
    }
}
