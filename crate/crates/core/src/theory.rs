//! Closed-form statements about the cohomology of Specht modules: block
//! filters, the trivial-submodule criterion, hook and two-part predictions,
//! known groups and conjectured values. Each prediction carries a short
//! source tag, and out-of-hypothesis inputs give `Unknown`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{is_prime, primes_up_to, subset_p, Partition};
use crate::zassenhaus::IntegralType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("two-part statements need n >= 2p (n = {n}, p = {p}) and n > 4 when p = 2")]
    TwoPartRange { n: usize, p: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    D0,
    D1,
    D2,
    X2,
    H1,
    H2,
    Membership,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::D0 => "d0",
            Quantity::D1 => "d1",
            Quantity::D2 => "d2",
            Quantity::X2 => "x2",
            Quantity::H1 => "H1",
            Quantity::H2 => "H2",
            Quantity::Membership => "membership",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum PredValue {
    Exact(u64),
    AtMost(u64),
    AtLeast(u64),
    Group(IntegralType),
    Member(bool),
    Unknown,
}

impl PredValue {
    /// Whether `x` is consistent with the prediction; `None` if the
    /// prediction is not numeric.
    pub fn admits(&self, x: u64) -> Option<bool> {
        match *self {
            PredValue::Exact(v) => Some(x == v),
            PredValue::AtMost(v) => Some(x <= v),
            PredValue::AtLeast(v) => Some(x >= v),
            PredValue::Unknown => Some(true),
            PredValue::Group(_) | PredValue::Member(_) => None,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            PredValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, PredValue::Unknown)
    }
}

impl fmt::Display for PredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredValue::Exact(v) => write!(f, "= {v}"),
            PredValue::AtMost(v) => write!(f, "<= {v}"),
            PredValue::AtLeast(v) => write!(f, ">= {v}"),
            PredValue::Group(g) => write!(f, "{g}"),
            PredValue::Member(b) => write!(f, "{}", if *b { "member" } else { "not a member" }),
            PredValue::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub quantity: Quantity,
    /// The prime for mod-p quantities and memberships.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub value: PredValue,
    pub source: String,
    #[serde(default)]
    pub conjecture: bool,
}

impl Prediction {
    fn new(quantity: Quantity, prime: Option<u64>, value: PredValue, source: &str) -> Self {
        Prediction { quantity, prime, value, source: source.to_string(), conjecture: false }
    }

    fn unknown(quantity: Quantity, prime: Option<u64>, source: &str) -> Self {
        Prediction::new(quantity, prime, PredValue::Unknown, source)
    }
}

/// True iff `λ` lies in the principal `p`-block, i.e. its `p`-core has at
/// most one row.
pub fn principal_block(lambda: &Partition, p: u64) -> bool {
    lambda.p_core(p as usize).len() <= 1
}

/// Primes `p ≤ n` with `λ` in the principal `p`-block. Only these can divide
/// the order of `H¹` or `H²`.
pub fn candidate_primes(lambda: &Partition) -> Vec<u64> {
    primes_up_to(lambda.n() as u64).into_iter().filter(|&p| principal_block(lambda, p)).collect()
}

/// James' criterion for a trivial submodule of `S^λ ⊗ F_p`:
/// `λ_i ≡ -1 (mod p^{z_i})` with `z_i = min{r : p^r > λ_{i+1}}`.
pub fn trivial_submodule_criterion(lambda: &Partition, p: u64) -> bool {
    (0..lambda.len()).all(|i| {
        let next = lambda.part(i + 1) as u64;
        let mut modulus = 1u64;
        while modulus <= next {
            modulus *= p;
        }
        (lambda.part(i) as u64 + 1).is_multiple_of(modulus)
    })
}

/// `p` divides `|H¹(Σ_n, S^λ_Z)|`.
pub fn cp1_membership(lambda: &Partition, p: u64) -> bool {
    !lambda.is_row() && trivial_submodule_criterion(lambda, p)
}

/// Predictions for `d_0, d_1, d_2` of the hook `(n-j, 1^j)` and an odd prime
/// `p | n`.
pub fn hook_dims(p: u64, n: usize, j: usize) -> [Prediction; 3] {
    let pr = Some(p);
    let in_range = p % 2 == 1 && is_prime(p) && (n as u64).is_multiple_of(p) && j >= 1 && j + 2 <= n;
    if !in_range || (p == 3 && n == 3 && j == 2) {
        return [
            Prediction::unknown(Quantity::D0, pr, "hook-d0"),
            Prediction::unknown(Quantity::D1, pr, "hook-d1"),
            Prediction::unknown(Quantity::D2, pr, "hook-d2"),
        ];
    }
    let d0 = PredValue::Exact(u64::from(j == 1));
    let d1 = if p == 3 && j == 3 {
        PredValue::AtMost(1)
    } else {
        PredValue::Exact(u64::from(j == 1 || j == 2 || (p == 3 && j == 4)))
    };
    let d2 = if p > 3 {
        PredValue::Exact(u64::from(j == 2 || j == 3))
    } else if j >= 8 || (n > 3 && j == 1) {
        PredValue::Exact(0)
    } else if j == 6 || (n == 3 && j == 1) {
        PredValue::AtMost(1)
    } else if matches!(j, 2 | 5 | 7) {
        PredValue::Exact(1)
    } else {
        PredValue::Unknown
    };
    [
        Prediction::new(Quantity::D0, pr, d0, "hook-d0"),
        Prediction::new(Quantity::D1, pr, d1, "hook-d1"),
        Prediction::new(Quantity::D2, pr, d2, "hook-d2"),
    ]
}

/// The four shapes of a composition series of `S^{(n-p,p)} ⊗ F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoPartCase {
    A,
    B,
    C,
    D,
}

impl fmt::Display for TwoPartCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoPartCase::A => "a",
            TwoPartCase::B => "b",
            TwoPartCase::C => "c",
            TwoPartCase::D => "d",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPartSeries {
    pub case: TwoPartCase,
    /// `(n+1) mod p`.
    pub j: u64,
    /// Labels of the composition factors `D^μ`, bottom to top.
    pub factors: Vec<Partition>,
}

fn two_part_check(p: u64, n: usize) -> Result<u64, TheoryError> {
    if !is_prime(p) {
        return Err(TheoryError::NotPrime(p));
    }
    if (n as u64) < 2 * p || (p == 2 && n <= 4) {
        return Err(TheoryError::TwoPartRange { n, p });
    }
    Ok((n as u64 + 1) % p)
}

/// Composition series of `S^{(n-p,p)} ⊗ F_p` for `n ≥ 2p`.
pub fn two_part_comp_series(p: u64, n: usize) -> Result<TwoPartSeries, TheoryError> {
    let j = two_part_check(p, n)?;
    let pu = p as usize;
    let top = Partition::new(vec![n - pu, pu]).expect("n >= 2p");
    let low = Partition::new(vec![n - j as usize, j as usize].into_iter().filter(|&x| x > 0).collect())
        .expect("valid two-part partition");
    let r = (n as u64 + 1) % (p * p);
    let (case, factors) = match (j == 0, r == p + j) {
        (true, false) => (TwoPartCase::A, vec![top]),
        (true, true) => (TwoPartCase::B, vec![Partition::row(n), top]),
        (false, false) => (TwoPartCase::C, vec![low, top]),
        (false, true) => (TwoPartCase::D, vec![low, Partition::row(n), top]),
    };
    Ok(TwoPartSeries { case, j, factors })
}

/// Composition factors `D^{(n-i,i)}` of `S^{(n-m,m)} ⊗ F_p`, each with
/// multiplicity one, by James' rule `m - i ⊂_p n - 2i + 1`.
pub fn two_row_composition_factors(n: usize, m: usize, p: u64) -> Vec<Partition> {
    (0..=m)
        .filter(|&i| subset_p((m - i) as u64, (n - 2 * i + 1) as u64, p))
        .map(|i| Partition::from_unsorted(vec![n - i, i]))
        .collect()
}

/// `d_0, d_1, d_2` and, when forced, `x_2` for `λ = (n-p, p)` and odd `p`.
pub fn two_part_dims(p: u64, n: usize) -> Result<Vec<Prediction>, TheoryError> {
    let j = two_part_check(p, n)?;
    let pr = Some(p);
    let tag = "two-part-dims";
    if p == 2 {
        return Ok([Quantity::D0, Quantity::D1, Quantity::D2].map(|q| Prediction::unknown(q, pr, tag)).to_vec());
    }
    if j == 0 {
        let b = u64::from((n as u64 + 1) % (p * p) == p);
        Ok(vec![
            Prediction::new(Quantity::D0, pr, PredValue::Exact(b), tag),
            Prediction::new(Quantity::D1, pr, PredValue::Exact(b), tag),
            Prediction::new(Quantity::D2, pr, PredValue::Exact(0), tag),
            Prediction::new(Quantity::X2, pr, PredValue::Exact(0), tag),
        ])
    } else {
        Ok(vec![
            Prediction::new(Quantity::D0, pr, PredValue::Exact(0), tag),
            Prediction::new(Quantity::D1, pr, PredValue::Exact(1), tag),
            Prediction::new(Quantity::D2, pr, PredValue::AtLeast(1), tag),
            Prediction::new(Quantity::X2, pr, PredValue::Exact(1), tag),
        ])
    }
}

fn group(divisors: &[u64]) -> PredValue {
    PredValue::Group(IntegralType::Torsion(
        divisors.iter().filter(|&&d| d > 1).map(|&d| BigUint::from(d)).collect(),
    ))
}

/// Proven integral `H¹` and `H²` for `(n)`, `(1ⁿ)` and `(n-1,1)`.
pub fn known_integral(lambda: &Partition) -> [Prediction; 2] {
    let n = lambda.n() as u64;
    let tag = "known-groups";
    let (h1, h2) = if n < 2 {
        (PredValue::Unknown, PredValue::Unknown)
    } else if lambda.is_row() {
        (group(&[]), group(&[2]))
    } else if lambda.parts().iter().all(|&x| x == 1) {
        (group(&[2]), if n == 3 || n == 4 { group(&[3]) } else { group(&[]) })
    } else if lambda.len() == 2 && lambda.part(1) == 1 && n >= 3 {
        (group(&[n]), if n.is_multiple_of(2) { group(&[2]) } else { group(&[]) })
    } else {
        (PredValue::Unknown, PredValue::Unknown)
    };
    [
        Prediction::new(Quantity::H1, None, h1, tag),
        Prediction::new(Quantity::H2, None, h2, tag),
    ]
}

/// Conjectured `H²` for `(n-2,1,1)` and `(n-3,2,1)`, and conjectured
/// membership of `(2l,2,1^q)` in `C_2²`.
pub fn conjecture_values(lambda: &Partition) -> Prediction {
    let n = lambda.n() as u64;
    let parts = lambda.parts();
    let mut pred = if n >= 4 && parts.len() == 3 && parts[1] == 1 && parts[2] == 1 {
        let v = if n % 2 == 1 { group(&[2 * n]) } else { group(&[n / 2]) };
        Prediction::new(Quantity::H2, None, v, "conjecture-hook-two")
    } else if n >= 5 && parts.len() == 3 && parts[1] == 2 && parts[2] == 1 {
        let v = if !(n - 1).is_multiple_of(3) { group(&[n - 1]) } else { group(&[(n - 1) / 3]) };
        Prediction::new(Quantity::H2, None, v, "conjecture-three-two-one")
    } else if parts.len() >= 2 && parts[0].is_multiple_of(2) && parts[1] == 2 && parts[2..].iter().all(|&x| x == 1) {
        Prediction::new(Quantity::Membership, Some(2), PredValue::Member(true), "conjecture-even-two-ones")
    } else {
        Prediction::unknown(Quantity::H2, None, "conjecture")
    };
    pred.conjecture = !pred.value.is_unknown();
    pred
}

/// Every prediction that applies to `(λ, p)`.
pub fn predictions_for(lambda: &Partition, p: u64) -> Vec<Prediction> {
    let n = lambda.n();
    let pr = Some(p);
    let mut out = vec![
        Prediction::new(Quantity::Membership, pr, PredValue::Member(principal_block(lambda, p)), "principal-block"),
        Prediction::new(
            Quantity::D0,
            pr,
            PredValue::Exact(u64::from(trivial_submodule_criterion(lambda, p))),
            "trivial-submodule",
        ),
        Prediction::new(Quantity::Membership, pr, PredValue::Member(cp1_membership(lambda, p)), "first-degree-membership"),
    ];
    if !principal_block(lambda, p) {
        for q in [Quantity::D0, Quantity::D1, Quantity::D2] {
            out.push(Prediction::new(q, pr, PredValue::Exact(0), "block-vanishing"));
        }
    }
    let parts = lambda.parts();
    if parts.len() >= 2 && parts[1..].iter().all(|&x| x == 1) || parts.iter().all(|&x| x == 1) {
        let j = parts.len() - 1;
        if j >= 1 && j + 2 <= n {
            out.extend(hook_dims(p, n, j).into_iter().filter(|pr| !pr.value.is_unknown()));
        }
    }
    if parts.len() == 2 && parts[1] as u64 == p && p % 2 == 1 {
        if let Ok(preds) = two_part_dims(p, n) {
            out.extend(preds);
        }
    }
    out.extend(known_integral(lambda).into_iter().filter(|pr| !pr.value.is_unknown()));
    let conj = conjecture_values(lambda);
    if conj.conjecture {
        out.push(conj);
    }
    out
}

/// Bockstein bookkeeping for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BocksteinReport {
    pub lambda: Partition,
    pub p: u64,
    pub d0: usize,
    pub d1: usize,
    pub x1: usize,
    pub x2: usize,
    /// `d_0 = x_1` (for `λ ≠ (n)`) and `d_1 = x_1 + x_2`.
    pub consistent: bool,
    /// `x_3 = d_2 - d_1 + d_0` when a definite `d_2` prediction exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x3: Option<i64>,
    /// Whether `x_2 ≤ d_2` holds against the strongest applicable bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x2_within_d2: Option<bool>,
}

pub fn bockstein_report(
    lambda: &Partition,
    p: u64,
    h1: &IntegralType,
    h2: &IntegralType,
    dims: (usize, usize),
) -> BocksteinReport {
    let (d0, d1) = dims;
    let x1 = h1.p_rank(p);
    let x2 = h2.p_rank(p);
    let consistent = (lambda.is_row() || d0 == x1) && d1 == x1 + x2;
    let d2 = predictions_for(lambda, p).into_iter().find(|pr| pr.quantity == Quantity::D2).map(|pr| pr.value);
    let x3 = d2.as_ref().and_then(PredValue::exact).map(|d2| d2 as i64 - d1 as i64 + d0 as i64);
    let x2_within_d2 = d2.as_ref().and_then(|v| match v {
        PredValue::Exact(d) | PredValue::AtMost(d) => Some(x2 as u64 <= *d),
        _ => None,
    });
    BocksteinReport { lambda: lambda.clone(), p, d0, d1, x1, x2, consistent, x3, x2_within_d2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn blocks() {
        for n in [5usize, 10] {
            for j in 0..n {
                assert!(principal_block(&Partition::hook(n, j).unwrap(), 5));
            }
        }
        // Predecessors (n-2,1) and (n-3,1,1) of (n-2,1,1) with p | n.
        for (n, q) in [(10usize, 5u64), (9, 3), (14, 7), (6, 3)] {
            assert!(!principal_block(&Partition::new(vec![n - 2, 1]).unwrap(), q));
            assert!(!principal_block(&Partition::new(vec![n - 3, 1, 1]).unwrap(), q));
        }
        assert!(principal_block(&p("7"), 7));
        let c = candidate_primes(&p("3,1,1"));
        assert!(c.contains(&2) && c.contains(&5));
        assert_eq!(candidate_primes(&p("6")), vec![2, 3, 5]);
    }

    #[test]
    fn trivial_submodule() {
        for n in 2..30usize {
            for q in [2u64, 3, 5, 7] {
                assert!(trivial_submodule_criterion(&Partition::row(n), q));
                let hook = Partition::new(vec![n - 1, 1]).unwrap();
                assert_eq!(trivial_submodule_criterion(&hook, q), (n as u64).is_multiple_of(q), "n={n} p={q}");
                assert_eq!(trivial_submodule_criterion(&Partition::column(n), q), q == 2);
                assert!(!cp1_membership(&Partition::row(n), q));
            }
        }
    }

    #[test]
    fn hook_examples() {
        let [d0, d1, _] = hook_dims(5, 10, 2);
        assert_eq!((d0.value, d1.value), (PredValue::Exact(0), PredValue::Exact(1)));
        assert_eq!(hook_dims(3, 9, 5)[2].value, PredValue::Exact(1));
        assert_eq!(hook_dims(5, 10, 4)[2].value, PredValue::Exact(0));
        assert_eq!(hook_dims(3, 9, 3)[1].value, PredValue::AtMost(1));
        assert_eq!(hook_dims(3, 9, 4)[1].value, PredValue::Exact(1));
        assert!(hook_dims(3, 9, 3)[2].value.is_unknown());
        assert!(hook_dims(3, 9, 4)[2].value.is_unknown());
        assert_eq!(hook_dims(3, 3, 1)[2].value, PredValue::AtMost(1));
        assert!(hook_dims(5, 9, 2)[0].value.is_unknown());
        assert!(hook_dims(2, 8, 2)[0].value.is_unknown());
    }

    #[test]
    fn two_part_examples() {
        assert_eq!(two_part_comp_series(3, 9).unwrap().case, TwoPartCase::C);
        assert_eq!(two_part_comp_series(3, 11).unwrap().case, TwoPartCase::B);
        assert_eq!(two_part_comp_series(5, 14).unwrap().case, TwoPartCase::A);
        assert!(two_part_comp_series(3, 5).is_err());
        assert!(two_part_comp_series(2, 4).is_err());
        assert!(two_part_comp_series(4, 10).is_err());
        let d = two_part_dims(3, 11).unwrap();
        assert_eq!(d[0].value, PredValue::Exact(1));
        assert_eq!(d[2].value, PredValue::Exact(0));
        let d = two_part_dims(3, 9).unwrap();
        assert_eq!(d[3].value, PredValue::Exact(1));
    }

    #[test]
    fn composition_factors_match_cases() {
        for q in [2u64, 3, 5, 7] {
            for n in (2 * q as usize)..60 {
                let Ok(series) = two_part_comp_series(q, n) else { continue };
                let mut expected = series.factors.clone();
                expected.sort();
                let mut james = two_row_composition_factors(n, q as usize, q);
                james.sort();
                assert_eq!(james, expected, "p={q} n={n}");
            }
        }
    }

    #[test]
    fn known_and_conjectured() {
        let [_, h2] = known_integral(&p("1^4"));
        assert_eq!(h2.value.to_string(), "3");
        assert_eq!(known_integral(&p("5,1"))[1].value.to_string(), "2");
        assert_eq!(known_integral(&p("6,1"))[1].value.to_string(), "1");
        assert_eq!(known_integral(&p("6,1"))[0].value.to_string(), "7");
        assert!(known_integral(&p("3,2"))[0].value.is_unknown());
        assert_eq!(conjecture_values(&p("3,1,1")).value.to_string(), "10");
        assert_eq!(conjecture_values(&p("4,1,1")).value.to_string(), "3");
        assert_eq!(conjecture_values(&p("4,2,1")).value.to_string(), "2");
        assert_eq!(conjecture_values(&p("4,2,1,1")).value, PredValue::Member(true));
        assert!(!conjecture_values(&p("3,3")).conjecture);
    }

    #[test]
    fn bockstein_bookkeeping() {
        let h1 = IntegralType::trivial();
        let h2 = IntegralType::Torsion(vec![BigUint::from(10u32)]);
        let r = bockstein_report(&p("3,1,1"), 5, &h1, &h2, (0, 1));
        assert!(r.consistent);
        assert_eq!((r.x1, r.x2), (0, 1));
        // d_2 = 1 for j = 2 and p > 3.
        assert_eq!(r.x3, Some(0));
        let bad = bockstein_report(&p("3,1,1"), 5, &h1, &h2, (0, 2));
        assert!(!bad.consistent);
    }
}
