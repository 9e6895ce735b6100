//! Comparisons of predictions with computed data, and text reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::store::ResultStore;
use crate::theory::{conjecture_values, PredValue, Prediction, Quantity};
use crate::zassenhaus::IntegralType;

/// Computed data for one partition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observed {
    pub h1: Option<IntegralType>,
    pub h2: Option<IntegralType>,
    /// `p -> (d_0, d_1)`.
    pub dims: BTreeMap<u64, (usize, usize)>,
}

impl Observed {
    pub fn from_store(store: &ResultStore, lambda: &Partition) -> Self {
        let integral = |d| store.get(lambda, d).and_then(|r| r.integral.clone());
        let mut dims = BTreeMap::new();
        if let (Some(r0), Some(r1)) = (store.get(lambda, 0), store.get(lambda, 1)) {
            for (p, d1) in &r1.modp_dims {
                if let Some(d0) = r0.modp_dims.get(p) {
                    dims.insert(*p, (*d0, *d1));
                }
            }
        }
        Observed { h1: integral(1), h2: integral(2), dims }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agrees,
    Violated,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionCheck {
    pub prediction: Prediction,
    pub observed: Option<String>,
    pub verdict: Verdict,
}

fn verdict(b: Option<bool>) -> Verdict {
    match b {
        Some(true) => Verdict::Agrees,
        Some(false) => Verdict::Violated,
        None => Verdict::Undetermined,
    }
}

/// Tests one prediction against computed data.
///
/// `d_2` is not computed; a definite bound `v` on it is checked through the
/// necessary condition `x_2 ≤ v`.
pub fn evaluate(pred: &Prediction, obs: &Observed) -> PredictionCheck {
    let p = pred.prime;
    let dims = p.and_then(|p| obs.dims.get(&p).copied());
    let x = |g: &Option<IntegralType>| -> Option<u64> { Some(g.as_ref()?.p_rank(p?) as u64) };
    let (observed, ok): (Option<String>, Option<bool>) = match (pred.quantity, &pred.value) {
        (_, PredValue::Unknown) => (None, None),
        (Quantity::D0, v) => (dims.map(|d| d.0.to_string()), dims.and_then(|d| v.admits(d.0 as u64))),
        (Quantity::D1, v) => (dims.map(|d| d.1.to_string()), dims.and_then(|d| v.admits(d.1 as u64))),
        (Quantity::D2, PredValue::Exact(b) | PredValue::AtMost(b)) => {
            let x2 = x(&obs.h2);
            (x2.map(|x2| format!("x2 = {x2}")), x2.map(|x2| x2 <= *b))
        }
        (Quantity::D2, _) => (None, None),
        (Quantity::X2, v) => {
            let x2 = x(&obs.h2);
            (x2.map(|x2| x2.to_string()), x2.and_then(|x2| v.admits(x2)))
        }
        (Quantity::H1, PredValue::Group(g)) => (obs.h1.as_ref().map(|h| h.to_string()), obs.h1.as_ref().map(|h| h == g)),
        (Quantity::H2, PredValue::Group(g)) => (obs.h2.as_ref().map(|h| h.to_string()), obs.h2.as_ref().map(|h| h == g)),
        (Quantity::Membership, PredValue::Member(m)) => match pred.source.as_str() {
            "first-degree-membership" => {
                let x1 = x(&obs.h1);
                (x1.map(|x1| format!("x1 = {x1}")), x1.map(|x1| (x1 > 0) == *m))
            }
            // Outside the principal block everything vanishes at p.
            "principal-block" if !*m => {
                let (x1, x2) = (x(&obs.h1), x(&obs.h2));
                let parts = [x1, x2, dims.map(|d| d.0 as u64), dims.map(|d| d.1 as u64)];
                let known: Vec<u64> = parts.iter().flatten().copied().collect();
                let text = format!("x1 = {x1:?}, x2 = {x2:?}, dims = {dims:?}");
                (Some(text), (!known.is_empty()).then(|| known.iter().all(|&v| v == 0)))
            }
            "principal-block" => (None, None),
            _ => {
                let prime = p.unwrap_or(2);
                let x2 = obs.h2.as_ref().map(|h| h.p_rank(prime) as u64);
                (x2.map(|x2| format!("x2 = {x2}")), x2.map(|x2| (x2 > 0) == *m))
            }
        },
        _ => (None, None),
    };
    PredictionCheck { prediction: pred.clone(), observed, verdict: verdict(ok) }
}

/// Degree-2 records in reference-table layout: `n`, `lambda`, `k`, divisors.
/// Records without a value print `?`.
pub fn table_tsv(store: &ResultStore) -> String {
    let mut out = String::from("# n\tlambda\tk\tdivisors\n");
    for r in store.records_of_degree(2) {
        let value = match &r.integral {
            Some(g) => g.to_string().replace(", ", ","),
            None => "?".into(),
        };
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.lambda.n(), r.lambda.to_exponent_string(), r.meta.k, value);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    Match,
    Mismatch,
    NotComputed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub lambda: Partition,
    pub source: String,
    pub predicted: String,
    pub observed: Option<String>,
    pub status: ConjectureStatus,
}

/// Every partition of size at most `max_n` covered by a conjecture, compared
/// with its degree-2 record where present.
pub fn conjecture_rows(store: &ResultStore, max_n: usize) -> Vec<ConjectureRow> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for lambda in Partition::all(n) {
            let pred = conjecture_values(&lambda);
            if !pred.conjecture {
                continue;
            }
            let obs = Observed::from_store(store, &lambda);
            let check = evaluate(&pred, &obs);
            let status = match check.verdict {
                Verdict::Agrees => ConjectureStatus::Match,
                Verdict::Violated => ConjectureStatus::Mismatch,
                Verdict::Undetermined => ConjectureStatus::NotComputed,
            };
            let observed = match pred.quantity {
                Quantity::H2 => obs.h2.as_ref().map(|h| h.group_notation()),
                _ => check.observed,
            };
            let predicted = match &pred.value {
                PredValue::Group(g) => g.group_notation(),
                v => format!("{v} of C_2^2"),
            };
            rows.push(ConjectureRow { lambda, source: pred.source, predicted, observed, status });
        }
    }
    rows
}

pub fn conjecture_table(rows: &[ConjectureRow]) -> String {
    let mut out = String::from("lambda\tfamily\tpredicted\tcomputed\tstatus\n");
    for r in rows {
        let status = match r.status {
            ConjectureStatus::Match => "match",
            ConjectureStatus::Mismatch => "MISMATCH",
            ConjectureStatus::NotComputed => "not computed",
        };
        let _ = writeln!(
            out,
            "({})\t{}\t{}\t{}\t{}",
            r.lambda.to_exponent_string(),
            r.source,
            r.predicted,
            r.observed.as_deref().unwrap_or("-"),
            status
        );
    }
    out
}
