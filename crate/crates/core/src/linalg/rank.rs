use rand::Rng;
use serde::{Deserialize, Serialize};

use super::modular::rank_mod_p;
use super::{smith_elementary_divisors, IntMatrix};
use crate::partition::is_prime;

/// Structural upper bound: `rank(m) + rank(partner) <= total`, e.g. because
/// `m * partner = 0` and `total` is the column count of `m`.
///
/// The caller is responsible for the bound actually holding.
pub struct RankCertificate<'a> {
    pub partner: &'a IntMatrix,
    pub total: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// A modular lower bound met a structural upper bound.
    Certified,
    /// Exact integer elimination.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProbe {
    pub rank: usize,
    pub method: RankMethod,
    /// Number of random primes tried.
    pub probes: usize,
}

const PROBES: usize = 3;

/// A random prime in `[2^29, 2^30)`.
pub fn random_probe_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 29)..(1u64 << 30)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Rank over the rationals.
///
/// Ranks modulo random 30-bit primes are lower bounds. They are accepted only
/// when they meet an upper bound: `min(rows, cols)`, or `total - rank_q(partner)`
/// when a certificate is supplied. Otherwise the rank is computed exactly.
pub fn rational_rank(m: &IntMatrix, certificate: Option<&RankCertificate<'_>>) -> RankProbe {
    let mut rng = rand::thread_rng();
    let trivial_upper = m.rows().min(m.cols());
    if m.is_zero() {
        return RankProbe { rank: 0, method: RankMethod::Certified, probes: 0 };
    }
    let mut lower = 0;
    let mut upper = trivial_upper;
    for probe in 1..=PROBES {
        let q = random_probe_prime(&mut rng);
        lower = lower.max(rank_mod_p(m, q));
        if let Some(cert) = certificate {
            let partner_lower = rank_mod_p(cert.partner, q);
            upper = upper.min(cert.total.saturating_sub(partner_lower));
        }
        if lower == upper {
            return RankProbe { rank: lower, method: RankMethod::Certified, probes: probe };
        }
    }
    RankProbe { rank: exact_rank(m), method: RankMethod::Exact, probes: PROBES }
}

/// Exact rank by integer elimination (the number of nonzero Smith invariants).
pub fn exact_rank(m: &IntMatrix) -> usize {
    smith_elementary_divisors(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity() {
        assert_eq!(rational_rank(&IntMatrix::zeros(3, 3), None).rank, 0);
        let probe = rational_rank(&IntMatrix::identity(4), None);
        assert_eq!(probe.rank, 4);
        assert_eq!(probe.method, RankMethod::Certified);
    }

    #[test]
    fn deficient_rank_without_certificate_is_exact() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let probe = rational_rank(&m, None);
        assert_eq!(probe.rank, 2);
        assert_eq!(probe.method, RankMethod::Exact);
    }

    #[test]
    fn certificate_closes_the_gap() {
        // m * partner = 0 with cols(m) = 3.
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![2, 2, 0]]);
        let partner = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert!(m.checked_mul(&partner).unwrap().is_zero());
        let cert = RankCertificate { partner: &partner, total: 3 };
        let probe = rational_rank(&m, Some(&cert));
        assert_eq!(probe.rank, 1);
        assert_eq!(probe.method, RankMethod::Certified);
    }
}
