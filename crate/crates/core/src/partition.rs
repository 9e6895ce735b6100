//! Integer partitions and the combinatorics the rest of the crate is indexed by:
//! hook lengths, p-cores, add/remove-a-node neighbours and p-adic digit relations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive, found 0 at position {0}")]
    ZeroPart(usize),
    #[error("parts must be weakly decreasing, found {0} before {1}")]
    NotDecreasing(usize, usize),
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A partition `λ = (λ_1 ≥ λ_2 ≥ … ≥ λ_l ≥ 1)`.
///
/// The derived ordering is lexicographic on the part list, which for a fixed
/// `n` lists `(1^n)` first and `(n)` last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(PartitionError::ZeroPart(i));
            }
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(w[0], w[1]));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
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

    /// The hook `(n-j, 1^j)`; `None` unless `j < n`.
    pub fn hook(n: usize, j: usize) -> Option<Self> {
        if j >= n {
            return None;
        }
        let mut parts = vec![n - j];
        parts.extend(std::iter::repeat_n(1, j));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn is_row(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Column lengths, left to right.
    pub fn column_lengths(&self) -> Vec<usize> {
        self.conjugate().parts
    }

    pub fn hook_length(&self, row: usize, col: usize) -> usize {
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..].iter().take_while(|&&p| p > col).count();
        arm + leg + 1
    }

    /// All hook lengths in row-major order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push(self.hook_length(i, j));
            }
        }
        out
    }

    /// Number of standard Young tableaux of this shape, `n! / ∏ hooks`.
    ///
    /// This is the rank `k` of the Specht lattice. The empty partition gives 1.
    pub fn standard_tableau_count(&self) -> u64 {
        // n! fits in u128 up to n = 34.
        assert!(self.n() <= 34, "partition too large for an exact tableau count");
        let mut num: u128 = 1;
        for i in 2..=self.n() as u128 {
            num *= i;
        }
        let den: u128 = self.hook_lengths().iter().map(|&h| h as u128).product();
        (num / den) as u64
    }

    /// Beta-numbers (first-column hook lengths) for `beads` beads, largest first.
    pub fn beta_numbers(&self, beads: usize) -> Vec<usize> {
        assert!(beads >= self.len());
        (0..beads).map(|i| self.part(i) + beads - 1 - i).collect()
    }

    fn from_beta_numbers(mut beta: Vec<usize>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let beads = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (beads - 1 - i))
            .collect();
        Partition::from_unsorted(parts)
    }

    /// The p-core, computed on an abacus with `l(λ) + p` beads.
    pub fn p_core(&self, p: usize) -> Partition {
        assert!(p >= 2, "p-core needs p >= 2");
        let beads = self.len() + p;
        let beta = self.beta_numbers(beads);
        let mut per_runner = vec![0usize; p];
        for b in &beta {
            per_runner[b % p] += 1;
        }
        let mut pushed = Vec::with_capacity(beads);
        for (runner, &count) in per_runner.iter().enumerate() {
            for level in 0..count {
                pushed.push(runner + level * p);
            }
        }
        Partition::from_beta_numbers(pushed)
    }

    /// The p-weight: number of rim p-hooks removed to reach the core.
    pub fn p_weight(&self, p: usize) -> usize {
        (self.n() - self.p_core(p).n()) / p
    }

    /// True iff no part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        let mut i = 0;
        while i < self.parts.len() {
            let run = self.parts[i..].iter().take_while(|&&x| x == self.parts[i]).count();
            if run >= p {
                return false;
            }
            i += run;
        }
        true
    }

    /// Partitions obtained by adding one box, in lexicographic order.
    pub fn successors(&self) -> BTreeSet<Partition> {
        let mut out = BTreeSet::new();
        for i in 0..=self.len() {
            if i == 0 || self.parts[i - 1] > self.part(i) {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.insert(Partition { parts });
            }
        }
        out
    }

    /// Partitions obtained by removing one box.
    pub fn predecessors(&self) -> BTreeSet<Partition> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            if self.parts[i] > self.part(i + 1) {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.insert(Partition { parts });
            }
        }
        out
    }

    /// Dominance order: `self ⊵ other` iff every partial sum of `self` is at least
    /// the corresponding one of `other`. Only meaningful for equal `n`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, lexicographically increasing.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(rem: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: current.clone() });
                return;
            }
            for part in 1..=rem.min(max) {
                current.push(part);
                rec(rem - part, part, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out.sort();
        out
    }

    /// Exponent notation without parentheses, e.g. `3^2,1^2`.
    pub fn to_exponent_string(&self) -> String {
        let mut items = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&x| x == v).count();
            if run == 1 {
                items.push(v.to_string());
            } else {
                items.push(format!("{v}^{run}"));
            }
            i += run;
        }
        items.join(",")
    }
}

impl fmt::Display for Partition {
    /// Plain comma-separated parts; the empty partition prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_exponent_string())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `3,1,1`, `3,1^2`, `(3, 1^2)` and `()` / empty for the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PartitionError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body.trim_start_matches('(').trim_end_matches(')');
        let body = body.replace(['{', '}'], "");
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for item in body.split(',') {
            let (value, times) = match item.split_once('^') {
                Some((v, e)) => (v, e.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (item, 1),
            };
            let value = value.parse::<usize>().map_err(|_| err("bad part"))?;
            parts.extend(std::iter::repeat_n(value, times));
        }
        Partition::new(parts).map_err(|e| err(&e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Base-`p` digits of a nonnegative integer, least significant first, no
/// trailing zeros (so zero has no digits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicDigits {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn new(mut value: u64, base: u64) -> Self {
        assert!(base >= 2);
        let mut digits = Vec::new();
        while value > 0 {
            digits.push(value % base);
            value /= base;
        }
        PAdicDigits { base, digits }
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }

    /// Index of the leading digit; `None` for zero.
    pub fn top(&self) -> Option<usize> {
        self.digits.len().checked_sub(1)
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }
}

/// The digit containment relation `a ⊂_p b`: `a`'s top digit index is below
/// `b`'s, and every digit of `a` is either zero or equal to `b`'s digit in the
/// same place. `a = 0` is contained in every positive `b`.
pub fn subset_p(a: u64, b: u64, p: u64) -> bool {
    if b == 0 {
        return false;
    }
    if a == 0 {
        return true;
    }
    let da = PAdicDigits::new(a, p);
    let db = PAdicDigits::new(b, p);
    let (r, s) = (da.top().unwrap(), db.top().unwrap());
    r < s && (0..=r).all(|i| da.digit(i) == 0 || da.digit(i) == db.digit(i))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// `v_p(n!)` by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u64) -> u32 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += (n / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// Orders partitions first by size, then lexicographically.
pub fn by_size_then_lex(a: &Partition, b: &Partition) -> Ordering {
    a.n().cmp(&b.n()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("3,1^2"), p("3,1,1"));
        assert_eq!(p("( 3^2, 1^2 )").parts(), &[3, 3, 1, 1]);
        assert_eq!(p("3,3,1,1").to_exponent_string(), "3^2,1^2");
        assert_eq!(p("3,1,1").to_string(), "3,1,1");
        assert!(p("").is_empty());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(p("7").standard_tableau_count(), 1);
        assert_eq!(p("3,1,1").standard_tableau_count(), 6);
        assert_eq!(p("3,2,1").standard_tableau_count(), 16);
        assert_eq!(Partition::empty().standard_tableau_count(), 1);
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 1..=8u64 {
            let total: u64 = Partition::all(n as usize)
                .iter()
                .map(|l| l.standard_tableau_count().pow(2))
                .sum();
            assert_eq!(total, (1..=n).product::<u64>());
        }
    }

    #[test]
    fn cores() {
        assert_eq!(p("9,2,1").p_core(5), p("4,2,1"));
        assert_eq!(p("3,2,1").p_core(5), p("1"));
        assert_eq!(p("2").p_core(3), p("2"));
        assert_eq!(p("3,2,1").p_core(2), p("3,2,1"));
        assert_eq!(p("4").p_core(2), Partition::empty());
    }

    #[test]
    fn neighbours() {
        let succ: Vec<_> = p("2,1").successors().into_iter().collect();
        assert_eq!(succ, vec![p("2,1,1"), p("2,2"), p("3,1")]);
        let n = 9;
        let pred: BTreeSet<_> = p(&format!("{},1,1", n - 2)).predecessors();
        assert_eq!(pred, [p("6,1,1"), p("7,1")].into_iter().collect());
        assert_eq!(p("1").predecessors().into_iter().collect::<Vec<_>>(), vec![Partition::empty()]);
        assert!(Partition::empty().predecessors().is_empty());
    }

    #[test]
    fn regularity() {
        assert!(p("3,2,1").is_p_regular(2));
        assert!(!p("1,1").is_p_regular(2));
        assert!(p("2,2,1").is_p_regular(3));
    }

    #[test]
    fn digit_relation() {
        assert!(subset_p(2, 5, 3));
        assert!(!subset_p(1, 5, 3));
        assert!(!subset_p(3, 9, 3));
        assert!(subset_p(0, 1, 3));
        assert_eq!(PAdicDigits::new(15, 3).digits, vec![0, 2, 1]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=9).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        let all5 = Partition::all(5);
        assert_eq!(all5.first().unwrap(), &Partition::column(5));
        assert_eq!(all5.last().unwrap(), &Partition::row(5));
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(10, 2), 8);
        assert_eq!(factorial_valuation(9, 3), 4);
        assert_eq!(factorial_valuation(4, 5), 0);
    }
}
