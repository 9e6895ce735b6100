//! Cocycle and coboundary matrices of a finitely presented group acting on
//! `Z^k`, and the first two cohomology groups they determine.
//!
//! With the left action `f(gh) = f(g) + ρ(g) f(h)`, a 1-cocycle is determined
//! by its values on the generators. `Z` expresses `f(w) = 0` for each relator
//! `w`, and the columns of `B` are the coboundaries `((ρ(x) - 1) v)_x`. Then
//! `H¹ ≅ ker Z / im B`, whose torsion comes from the elementary divisors of `B`,
//! and `H²` with coefficients in `Z^k` is the torsion read off the nonzero
//! elementary divisors of `Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    p_part_elementary_divisors, rank_mod_p, rational_rank, smith_elementary_divisors, ElemDivisors,
    IntMatrix, LinalgError, PAdicReduction, RankCertificate, RankMethod,
};
use crate::partition::{factorial_valuation, primes_up_to, Partition};
use crate::presentation::{presentation_for, Generator, Presentation, PresentationError};
use crate::specht::{generator_matrices, SpechtRep};

#[derive(Debug, Error)]
pub enum ZassenhausError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("relator {0} does not evaluate to the identity")]
    RelatorFailed(String),
    #[error("Z * B is not zero")]
    CocycleIdentity,
    #[error("divisor {divisor} of H^{degree} for {lambda} does not divide n!")]
    DivisorBound { lambda: Partition, degree: u8, divisor: BigUint },
    #[error("rank identity failed for {lambda}: rank Z = {rank_z}, rank B = {rank_b}, g*k = {total}")]
    RankIdentity { lambda: Partition, rank_z: usize, rank_b: usize, total: usize },
}

/// The matrices `B` ((g·k) × k) and `Z` ((r·k) × (g·k)) for one module.
#[derive(Debug, Clone)]
pub struct ZassenhausSystem {
    pub lambda: Partition,
    pub g: usize,
    pub k: usize,
    pub r: usize,
    pub b_mat: IntMatrix,
    pub z_mat: IntMatrix,
}

impl ZassenhausSystem {
    pub fn n(&self) -> usize {
        self.lambda.n()
    }
}

/// Assembles `B` and `Z` for the presentation of `Σ_n` acting through `rep`.
pub fn build_system(rep: &SpechtRep) -> Result<ZassenhausSystem, ZassenhausError> {
    let pres = presentation_for(rep.lambda.n())?;
    build_system_for(&pres, rep)
}

pub fn build_system_for(pres: &Presentation, rep: &SpechtRep) -> Result<ZassenhausSystem, ZassenhausError> {
    let k = rep.k;
    for m in [&rep.a, &rep.b] {
        if m.rows() != k || m.cols() != k {
            return Err(LinalgError::Dimension(format!("generator matrix must be {k}x{k}")).into());
        }
    }
    let g = pres.generator_count();
    let r = pres.relator_count();
    let slot = |x: Generator| pres.generators.iter().position(|&y| y == x).expect("generator in presentation");

    let blocks: Vec<IntMatrix> = pres.generators.iter().map(|&x| rep.matrix(x).minus_identity()).collect::<Result<_, _>>()?;
    let b_mat = IntMatrix::vstack(&blocks)?;

    let mut z_mat = IntMatrix::zeros(r * k, g * k);
    for (ri, w) in pres.relators.iter().enumerate() {
        let mut prefix = IntMatrix::identity(k);
        for &x in w.letters() {
            z_mat.add_block(ri * k, slot(x) * k, &prefix)?;
            prefix = prefix.checked_mul(rep.matrix(x))?;
        }
        if !prefix.is_identity() {
            return Err(ZassenhausError::RelatorFailed(w.to_string()));
        }
    }
    if !z_mat.checked_mul(&b_mat)?.is_zero() {
        return Err(ZassenhausError::CocycleIdentity);
    }
    Ok(ZassenhausSystem { lambda: rep.lambda.clone(), g, k, r, b_mat, z_mat })
}

/// How elementary divisors are extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnfStrategy {
    /// Dense below the size threshold, p-adic above it.
    #[default]
    Auto,
    Dense,
    Modular,
}

impl fmt::Display for SnfStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SnfStrategy::Auto => "auto",
            SnfStrategy::Dense => "dense",
            SnfStrategy::Modular => "modular",
        })
    }
}

impl std::str::FromStr for SnfStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(SnfStrategy::Auto),
            "dense" => Ok(SnfStrategy::Dense),
            "modular" => Ok(SnfStrategy::Modular),
            _ => Err(format!("unknown strategy {s:?}; expected auto, dense or modular")),
        }
    }
}

pub const DEFAULT_DENSE_LIMIT: usize = 200_000;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub strategy: SnfStrategy,
    /// Largest entry count handled densely under `Auto`.
    pub dense_limit: usize,
    /// Matrices with more entries are reported as not computed.
    pub max_entries: Option<usize>,
    /// Primes for the p-adic path; all primes up to `n` if unset.
    pub primes: Option<Vec<u64>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { strategy: SnfStrategy::Auto, dense_limit: DEFAULT_DENSE_LIMIT, max_entries: None, primes: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralType {
    /// The infinite cyclic group (only `H⁰` of the trivial module).
    Z,
    /// `⊕ Z/e_i` over the listed divisors, all greater than one.
    Torsion(#[serde(with = "decimal_list")] Vec<BigUint>),
}

/// Divisors as decimal strings in JSON.
mod decimal_list {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse::<BigUint>().map_err(D::Error::custom))
            .collect()
    }
}

impl IntegralType {
    pub fn trivial() -> Self {
        IntegralType::Torsion(Vec::new())
    }

    pub fn from_divisors(d: &ElemDivisors) -> Self {
        IntegralType::Torsion(d.nontrivial())
    }

    pub fn torsion(&self) -> Option<&[BigUint]> {
        match self {
            IntegralType::Z => None,
            IntegralType::Torsion(d) => Some(d),
        }
    }

    /// Number of cyclic factors of order divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.torsion().map_or(0, |d| d.iter().filter(|e| (*e % &p).is_zero()).count())
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion().is_some_and(|d| d.is_empty())
    }

    /// Group notation: `Z`, `0`, `Z/10` or `Z/2 ⊕ Z/10`.
    pub fn group_notation(&self) -> String {
        match self {
            IntegralType::Z => "Z".into(),
            IntegralType::Torsion(d) if d.is_empty() => "0".into(),
            IntegralType::Torsion(d) => d.iter().map(|e| format!("Z/{e}")).collect::<Vec<_>>().join(" ⊕ "),
        }
    }
}

impl fmt::Display for IntegralType {
    /// `Z`, `1` for the trivial group, or the divisors as `2, 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralType::Z => f.write_str("Z"),
            IntegralType::Torsion(d) if d.is_empty() => f.write_str("1"),
            IntegralType::Torsion(d) => {
                let s: Vec<String> = d.iter().map(|e| e.to_string()).collect();
                f.write_str(&s.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Predicted,
    Golden,
}

/// How a computed record was obtained.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeMeta {
    pub k: usize,
    pub strategy: Option<SnfStrategy>,
    pub rank_b: Option<usize>,
    pub rank_z: Option<usize>,
    pub rank_method: Option<RankMethod>,
    /// Primes used by the p-adic path.
    pub primes: Vec<u64>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRecord {
    pub lambda: Partition,
    pub degree: u8,
    /// `None` when the computation was not carried out.
    pub integral: Option<IntegralType>,
    pub modp_dims: BTreeMap<u64, usize>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub meta: ComputeMeta,
}

impl CohomologyRecord {
    fn computed(lambda: &Partition, degree: u8, integral: IntegralType, meta: ComputeMeta) -> Self {
        CohomologyRecord {
            lambda: lambda.clone(),
            degree,
            integral: Some(integral),
            modp_dims: BTreeMap::new(),
            provenance: Provenance::Computed,
            note: None,
            meta,
        }
    }

    pub fn not_computed(lambda: &Partition, degree: u8, reason: impl Into<String>) -> Self {
        CohomologyRecord {
            lambda: lambda.clone(),
            degree,
            integral: None,
            modp_dims: BTreeMap::new(),
            provenance: Provenance::Computed,
            note: Some(reason.into()),
            meta: ComputeMeta::default(),
        }
    }

    pub fn is_computed(&self) -> bool {
        self.integral.is_some()
    }
}

/// Builds the representation and the system for `λ ⊢ n ≥ 2`.
pub fn system_for(lambda: &Partition) -> Result<ZassenhausSystem, ZassenhausError> {
    build_system(&generator_matrices(lambda))
}

/// `H⁰`: `Z` for the trivial module and zero otherwise.
pub fn h0_integral(lambda: &Partition) -> CohomologyRecord {
    let integral = if lambda.is_row() { IntegralType::Z } else { IntegralType::trivial() };
    let meta = ComputeMeta { k: lambda.standard_tableau_count() as usize, ..Default::default() };
    CohomologyRecord::computed(lambda, 0, integral, meta)
}

pub fn h1_integral(lambda: &Partition, opts: &SolveOptions) -> Result<CohomologyRecord, ZassenhausError> {
    if lambda.n() <= 1 || lambda.is_row() {
        let meta = ComputeMeta { k: 1, ..Default::default() };
        return Ok(CohomologyRecord::computed(lambda, 1, IntegralType::trivial(), meta));
    }
    let sys = system_for(lambda)?;
    sys.h1(opts)
}

pub fn h2_integral(lambda: &Partition, opts: &SolveOptions) -> Result<CohomologyRecord, ZassenhausError> {
    if lambda.n() <= 1 {
        let meta = ComputeMeta { k: 1, ..Default::default() };
        return Ok(CohomologyRecord::computed(lambda, 2, IntegralType::trivial(), meta));
    }
    let sys = system_for(lambda)?;
    sys.h2(opts)
}

/// `(d_0, d_1)`: dimensions of `H⁰` and `H¹` with coefficients in `S^λ ⊗ F_p`.
pub fn dims_mod_p(lambda: &Partition, p: u64) -> Result<(usize, usize), ZassenhausError> {
    if lambda.n() <= 1 {
        return Ok((1, 0));
    }
    Ok(system_for(lambda)?.dims_mod_p(p))
}

enum Extracted {
    Done { divisors: ElemDivisors, strategy: SnfStrategy, primes: Vec<u64> },
    Skipped(String),
}

impl ZassenhausSystem {
    /// `H¹` from the elementary divisors of `B`.
    pub fn h1(&self, opts: &SolveOptions) -> Result<CohomologyRecord, ZassenhausError> {
        let start = Instant::now();
        if self.lambda.is_row() {
            let meta = ComputeMeta { k: self.k, ..Default::default() };
            return Ok(CohomologyRecord::computed(&self.lambda, 1, IntegralType::trivial(), meta));
        }
        let probe = rational_rank(&self.b_mat, None);
        let mut meta = ComputeMeta { k: self.k, rank_b: Some(probe.rank), rank_method: Some(probe.method), ..Default::default() };
        match self.extract(&self.b_mat, probe.rank, opts)? {
            Extracted::Skipped(reason) => Ok(CohomologyRecord::not_computed(&self.lambda, 1, reason)),
            Extracted::Done { divisors, strategy, primes } => {
                self.check_divisors(1, &divisors)?;
                meta.strategy = Some(strategy);
                meta.primes = primes;
                meta.wall_ms = start.elapsed().as_millis() as u64;
                Ok(CohomologyRecord::computed(&self.lambda, 1, IntegralType::from_divisors(&divisors), meta))
            }
        }
    }

    /// `H²` from the nonzero elementary divisors of `Z`.
    pub fn h2(&self, opts: &SolveOptions) -> Result<CohomologyRecord, ZassenhausError> {
        let start = Instant::now();
        let (rank_b, rank_z, method) = self.ranks()?;
        let mut meta = ComputeMeta {
            k: self.k,
            rank_b: Some(rank_b),
            rank_z: Some(rank_z),
            rank_method: Some(method),
            ..Default::default()
        };
        match self.extract(&self.z_mat, rank_z, opts)? {
            Extracted::Skipped(reason) => Ok(CohomologyRecord::not_computed(&self.lambda, 2, reason)),
            Extracted::Done { divisors, strategy, primes } => {
                if divisors.rank() != rank_z {
                    return Err(ZassenhausError::RankIdentity {
                        lambda: self.lambda.clone(),
                        rank_z: divisors.rank(),
                        rank_b,
                        total: self.g * self.k,
                    });
                }
                self.check_divisors(2, &divisors)?;
                meta.strategy = Some(strategy);
                meta.primes = primes;
                meta.wall_ms = start.elapsed().as_millis() as u64;
                Ok(CohomologyRecord::computed(&self.lambda, 2, IntegralType::from_divisors(&divisors), meta))
            }
        }
    }

    /// `rank B`, and `rank Z = g·k - rank B`, with the method that certified
    /// `rank B`.
    ///
    /// `Z·B = 0` gives `rank Z ≤ g·k - rank B`; equality holds because the
    /// rational first cohomology of a finite group vanishes.
    pub fn ranks(&self) -> Result<(usize, usize, RankMethod), ZassenhausError> {
        let total = self.g * self.k;
        let probe = rational_rank(&self.b_mat, None);
        Ok((probe.rank, total - probe.rank, probe.method))
    }

    /// `rank Z` certified independently of the rank identity.
    pub fn certified_rank_z(&self) -> usize {
        let cert = RankCertificate { partner: &self.b_mat, total: self.g * self.k };
        rational_rank(&self.z_mat, Some(&cert)).rank
    }

    pub fn dims_mod_p(&self, p: u64) -> (usize, usize) {
        let rb = rank_mod_p(&self.b_mat, p);
        let rz = rank_mod_p(&self.z_mat, p);
        (self.k - rb, self.g * self.k - rz - rb)
    }

    fn primes(&self, opts: &SolveOptions) -> Vec<u64> {
        let mut primes = opts.primes.clone().unwrap_or_else(|| primes_up_to(self.n() as u64));
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    fn extract(&self, m: &IntMatrix, rank: usize, opts: &SolveOptions) -> Result<Extracted, ZassenhausError> {
        let entries = m.entry_count();
        if let Some(limit) = opts.max_entries {
            if entries > limit {
                return Ok(Extracted::Skipped(format!("matrix has {entries} entries, above the limit {limit}")));
            }
        }
        let dense = match opts.strategy {
            SnfStrategy::Dense => true,
            SnfStrategy::Modular => false,
            SnfStrategy::Auto => entries <= opts.dense_limit,
        };
        if dense {
            let divisors = smith_elementary_divisors(m);
            return Ok(Extracted::Done { divisors, strategy: SnfStrategy::Dense, primes: Vec::new() });
        }
        let primes = self.primes(opts);
        let parts = primes
            .iter()
            .map(|&p| {
                let e = factorial_valuation(self.n() as u64, p) + 1;
                p_part_elementary_divisors(m, p, rank, e)
            })
            .collect::<Result<Vec<PAdicReduction>, _>>()?;
        let divisors = ElemDivisors::from_p_parts(rank, &parts);
        Ok(Extracted::Done { divisors, strategy: SnfStrategy::Modular, primes })
    }

    fn check_divisors(&self, degree: u8, d: &ElemDivisors) -> Result<(), ZassenhausError> {
        let fact: BigUint = (1..=self.n() as u64).fold(BigUint::one(), |acc, i| acc * i);
        match d.divisors().iter().find(|e| !(&fact % *e).is_zero()) {
            Some(e) => Err(ZassenhausError::DivisorBound { lambda: self.lambda.clone(), degree, divisor: e.clone() }),
            None => Ok(()),
        }
    }
}
