//! Exact integer linear algebra: Smith normal form, ranks over prime fields and
//! over the rationals, and p-adic elementary divisors for large matrices.

mod matrix;
mod modular;
mod rank;
mod snf;

pub use matrix::IntMatrix;
pub use modular::{p_part_elementary_divisors, rank_mod_p, PAdicReduction};
pub use rank::{exact_rank, random_probe_prime, rational_rank, RankCertificate, RankMethod, RankProbe};
pub use snf::{smith_elementary_divisors, smith_elementary_divisors_i64};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("matrix text format: {0}")]
    Format(String),
    #[error("p-adic precision exhausted for p = {p} (needed more than {exponent} digits)")]
    PrecisionExhausted { p: u64, exponent: u32 },
    #[error("rank {claimed} is inconsistent with the {found} p-adic pivots found for p = {p}")]
    RankMismatch { p: u64, claimed: usize, found: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Nonzero elementary divisors `d_1 | d_2 | …` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ElemDivisors {
    divisors: Vec<BigUint>,
}

impl ElemDivisors {
    /// Panics unless `divisors` is a positive divisibility chain.
    pub fn new(divisors: Vec<BigUint>) -> Self {
        for d in &divisors {
            assert!(*d > BigUint::from(0u32), "elementary divisors are positive");
        }
        for w in divisors.windows(2) {
            assert!(
                (&w[1] % &w[0]) == BigUint::from(0u32),
                "not a divisibility chain: {} does not divide {}",
                w[0],
                w[1]
            );
        }
        ElemDivisors { divisors }
    }

    pub fn from_u64(divisors: &[u64]) -> Self {
        Self::new(divisors.iter().map(|&d| BigUint::from(d)).collect())
    }

    /// Assembles divisors from per-prime valuation lists of equal length `rank`.
    ///
    /// Each list is sorted ascending so the i-th divisor takes the i-th smallest
    /// valuation of every prime.
    pub fn from_p_parts(rank: usize, parts: &[PAdicReduction]) -> Self {
        let mut divisors = vec![BigUint::one(); rank];
        for part in parts {
            assert_eq!(part.valuations.len(), rank, "p-part length must equal the rank");
            let mut vals = part.valuations.clone();
            vals.sort_unstable();
            for (d, v) in divisors.iter_mut().zip(vals) {
                *d *= BigUint::from(part.p).pow(v);
            }
        }
        ElemDivisors::new(divisors)
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn divisors(&self) -> &[BigUint] {
        &self.divisors
    }

    /// The divisors greater than one.
    pub fn nontrivial(&self) -> Vec<BigUint> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Nontrivial divisors as machine integers; `None` if any exceeds `u64`.
    pub fn nontrivial_u64(&self) -> Option<Vec<u64>> {
        self.nontrivial().iter().map(|d| d.to_u64()).collect()
    }

    /// Number of divisors divisible by `p`: the p-rank of the cokernel torsion.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.divisors.iter().filter(|d| (*d % &p) == BigUint::from(0u32)).count()
    }

    /// The p-adic valuations of the divisors, ascending.
    pub fn valuations(&self, p: u64) -> Vec<u32> {
        let p = BigUint::from(p);
        self.divisors
            .iter()
            .map(|d| {
                let mut d = d.clone();
                let mut v = 0;
                while (&d % &p) == BigUint::from(0u32) {
                    d /= &p;
                    v += 1;
                }
                v
            })
            .collect()
    }
}
