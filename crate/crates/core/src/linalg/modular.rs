//! Elimination over `Z/p^e`: ranks over prime fields and the p-parts of
//! elementary divisors.
//!
//! Over the local ring `Z/p^e` every entry is a unit times a power of `p`, so
//! pivoting on an entry of minimal valuation clears its column exactly. The
//! valuations of the pivots are the p-adic valuations of the elementary
//! divisors, as long as each of them is below `e`.

use super::{IntMatrix, LinalgError};

/// Result of one elimination pass over `Z/p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicReduction {
    pub p: u64,
    /// Exponent the pass ran at.
    pub exponent: u32,
    /// Valuations of the pivots found, ascending. With a known rational rank
    /// `r`, a complete pass has exactly `r` entries.
    pub valuations: Vec<u32>,
}

impl PAdicReduction {
    /// Rank of the matrix over `F_p`: the number of unit pivots.
    pub fn rank_mod_p(&self) -> usize {
        self.valuations.iter().filter(|&&v| v == 0).count()
    }

    /// The p-power parts `p^v` of the divisors.
    pub fn powers(&self) -> Vec<u64> {
        self.valuations.iter().map(|&v| self.p.pow(v)).collect()
    }

    /// Number of divisors divisible by `p`.
    pub fn p_rank(&self) -> usize {
        self.valuations.iter().filter(|&&v| v > 0).count()
    }
}

/// Rank of `m` over `F_p`, for a prime `p < 2^32`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    LocalElimination::new(m, p, 1).run(None).len()
}

/// p-parts of the nonzero elementary divisors of `m`, given its rational rank.
///
/// Starts at exponent `start_exponent` (at least 1) and doubles it until all
/// `rank` divisors have been seen.
pub fn p_part_elementary_divisors(
    m: &IntMatrix,
    p: u64,
    rank: usize,
    start_exponent: u32,
) -> Result<PAdicReduction, LinalgError> {
    let mut e = start_exponent.max(1);
    loop {
        if modulus(p, e).is_none() {
            return Err(LinalgError::PrecisionExhausted { p, exponent: e });
        }
        let valuations = LocalElimination::new(m, p, e).run(Some(rank));
        match valuations.len().cmp(&rank) {
            std::cmp::Ordering::Equal => {
                return Ok(PAdicReduction { p, exponent: e, valuations });
            }
            std::cmp::Ordering::Greater => {
                return Err(LinalgError::RankMismatch { p, claimed: rank, found: valuations.len() })
            }
            std::cmp::Ordering::Less => e *= 2,
        }
    }
}

/// `p^e` if it is small enough for 64-bit products of residues.
fn modulus(p: u64, e: u32) -> Option<u64> {
    let q = p.checked_pow(e)?;
    (q <= 1 << 32).then_some(q)
}

struct LocalElimination {
    p: u64,
    e: u32,
    q: u64,
    cols: usize,
    rows: Vec<Row>,
    /// Number of lazy additions a row may absorb before it must be reduced.
    lazy_limit: u32,
}

struct Row {
    data: Vec<u64>,
    pending: u32,
}

impl LocalElimination {
    fn new(m: &IntMatrix, p: u64, e: u32) -> Self {
        let q = modulus(p, e).expect("modulus must fit in 32 bits");
        let qi = q as i64;
        let rows = (0..m.rows())
            .map(|i| Row {
                data: m.row(i).iter().map(|&x| x.rem_euclid(qi) as u64).collect(),
                pending: 0,
            })
            .filter(|r| r.data.iter().any(|&x| x != 0))
            .collect();
        // Each lazy addition contributes less than q^2; keep the total below 2^64.
        let step = (q - 1) * (q - 1);
        let lazy_limit = ((u64::MAX - (q - 1)) / step.max(1)).min(u32::MAX as u64) as u32;
        LocalElimination { p, e, q, cols: m.cols(), rows, lazy_limit: lazy_limit.max(1) }
    }

    fn reduce(&self, row: &mut Row) {
        if row.pending > 0 {
            for x in row.data.iter_mut() {
                *x %= self.q;
            }
            row.pending = 0;
        }
    }

    fn run(mut self, stop_at: Option<usize>) -> Vec<u32> {
        let mut valuations = Vec::new();
        let mut p_pow = 1u64;
        for v in 0..self.e {
            let mut idx = 0;
            while idx < self.rows.len() {
                if stop_at.is_some_and(|r| valuations.len() >= r) {
                    return valuations;
                }
                let mut row = std::mem::replace(&mut self.rows[idx], Row { data: Vec::new(), pending: 0 });
                self.reduce(&mut row);
                if row.data.iter().all(|&x| x == 0) {
                    self.rows.swap_remove(idx);
                    continue;
                }
                // Every entry is divisible by p^v here; look for valuation exactly v.
                let pivot_col = row.data.iter().position(|&x| x != 0 && !(x / p_pow).is_multiple_of(self.p));
                match pivot_col {
                    None => {
                        self.rows[idx] = row;
                        idx += 1;
                    }
                    Some(c) => {
                        self.rows.swap_remove(idx);
                        valuations.push(v);
                        self.eliminate(&row.data, c, p_pow);
                    }
                }
            }
            if self.rows.is_empty() {
                break;
            }
            p_pow *= self.p;
        }
        valuations
    }

    /// Clears column `c` from every remaining row using `pivot_row`.
    fn eliminate(&mut self, pivot_row: &[u64], c: usize, p_pow: u64) {
        let q = self.q;
        let unit = pivot_row[c] / p_pow;
        let inv = mod_inverse(unit % q, q);
        let support: Vec<usize> = (0..self.cols).filter(|&j| pivot_row[j] != 0).collect();
        let dense = support.len() * 4 > self.cols;
        let lazy_limit = self.lazy_limit;
        for row in self.rows.iter_mut() {
            let x = row.data[c] % q;
            if x == 0 {
                row.data[c] = 0;
                continue;
            }
            if row.pending >= lazy_limit {
                for y in row.data.iter_mut() {
                    *y %= q;
                }
                row.pending = 0;
            }
            // x = p^v * x', multiplier m = x' * unit^{-1}; add (q - m) * pivot.
            let m = mul_mod(x / p_pow, inv, q);
            let neg = (q - m) % q;
            if dense {
                for (y, &pv) in row.data.iter_mut().zip(pivot_row) {
                    *y += neg * pv;
                }
            } else {
                for &j in &support {
                    row.data[j] += neg * pivot_row[j];
                }
            }
            row.data[c] = 0;
            row.pending += 1;
        }
    }
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Inverse of a unit modulo `q`.
fn mod_inverse(a: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    assert_eq!(old_r, 1, "{a} is not a unit modulo {q}");
    old_s.rem_euclid(q as i128) as u64
}
