//! Partitions and Young-diagram calculus.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the partition of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("partition {parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ₁`, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts }
    }

    /// Cells `(row, col)`, zero-based, row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c))).collect()
    }

    /// Rows whose last cell is a removable corner.
    pub fn corner_rows(&self) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&r| r + 1 == self.parts.len() || self.parts[r + 1] < self.parts[r])
            .collect()
    }

    /// Rows where a box can be added (including the new row at the bottom).
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.parts.len())
            .filter(|&r| r == 0 || self.part(r) < self.parts[r - 1])
            .collect()
    }

    /// `λ_r` with zero past the last row.
    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn remove_box(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn add_box(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition { parts }
    }

    /// Product of hook lengths.
    pub fn hook_product(&self) -> u128 {
        let conj = self.conjugate();
        self.cells()
            .into_iter()
            .map(|(r, c)| (self.parts[r] - c + conj.parts[c] - r - 1) as u128)
            .product()
    }

    /// Parenthesised display, `(2,1)`, used as a key in decomposition output.
    pub fn paren(&self) -> String {
        format!("({})", self.to_text_parts())
    }

    fn to_text_parts(&self) -> String {
        self.parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; `0` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.to_text_parts())
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("bad partition {s:?}")));
        }
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reverse-lexicographic order: `(3) < (2,1) < (1,1,1)`.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.size().cmp(&self.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of injections `[m] → [n]`.
pub fn falling_factorial(n: usize, m: usize) -> u128 {
    if m > n {
        0
    } else {
        ((n - m + 1)..=n).map(|x| x as u128).product()
    }
}

/// `f^λ`, the number of standard Young tableaux, by the hook-length formula.
pub fn hook_dimension(lambda: &Partition) -> u128 {
    factorial(lambda.size()) / lambda.hook_product()
}

/// Partitions obtained from `λ` by adding `k` boxes, no two in one column.
pub fn add_boxes_distinct_columns(lambda: &Partition, k: usize) -> Vec<Partition> {
    // Row r can grow by at most λ_{r-1} - λ_r boxes; the first row is free.
    fn rec(lambda: &Partition, r: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if r > lambda.len() {
            if left == 0 {
                let mut parts = acc.clone();
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                out.push(Partition { parts });
            }
            return;
        }
        let cap = if r == 0 { left } else { (lambda.part(r - 1) - lambda.part(r)).min(left) };
        for add in 0..=cap {
            acc.push(lambda.part(r) + add);
            rec(lambda, r + 1, left - add, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 0, k, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Partitions obtained by deleting one removable corner.
pub fn remove_one_box(lambda: &Partition) -> Result<Vec<Partition>> {
    if lambda.is_empty() {
        return Err(Error::Invalid("the empty partition has no removable box".into()));
    }
    let mut out: Vec<Partition> = lambda.corner_rows().into_iter().map(|r| lambda.remove_box(r)).collect();
    out.sort();
    Ok(out)
}

/// The uniform partition `(n − |λ|, λ₁, λ₂, …)`, present iff `n ≥ |λ| + λ₁`.
pub fn pad_uniform(lambda: &Partition, n: usize) -> Option<Partition> {
    if n < lambda.size() + lambda.first() {
        return None;
    }
    let mut parts = vec![n - lambda.size()];
    parts.extend_from_slice(&lambda.parts);
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Some(Partition { parts })
}

/// True when the literal first part `n − λ₁` differs from `n − |λ|`.
pub fn uniform_readings_differ(lambda: &Partition) -> bool {
    lambda.len() > 1
}

/// Standard Young tableaux of shape `λ` in last-letter order.
///
/// A tableau is stored as the row of each letter: `rows[k]` is the row of
/// letter `k + 1`. Tableaux with the largest letter in a higher row come
/// first, recursively.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<usize>> {
    if lambda.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for r in lambda.corner_rows() {
        for mut t in standard_tableaux(&lambda.remove_box(r)) {
            t.push(r);
            out.push(t);
        }
    }
    out
}

/// Content `col − row` of each letter of a tableau given as letter rows.
pub fn tableau_contents(rows: &[usize]) -> Vec<i64> {
    let mut len = Vec::<usize>::new();
    rows.iter()
        .map(|&r| {
            if len.len() <= r {
                len.resize(r + 1, 0);
            }
            let c = len[r];
            len[r] += 1;
            c as i64 - r as i64
        })
        .collect()
}
