//! Batch computation over all partitions in a size range, cached in a
//! [`ResultStore`].

use std::collections::VecDeque;
use std::sync::mpsc;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::presentation::presentation_for;
use crate::store::{ResultStore, StoreError};
use crate::theory::candidate_primes;
use crate::zassenhaus::{h0_integral, system_for, CohomologyRecord, SolveOptions};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub min_n: usize,
    pub max_n: usize,
    /// Any of 0, 1, 2.
    pub degrees: Vec<u8>,
    pub solve: SolveOptions,
    /// Partitions whose relation matrix would have more entries are marked
    /// as not computed without building it.
    pub size_limit: Option<usize>,
    pub jobs: usize,
    /// Attach `d_0`, `d_1` over `F_p` for the candidate primes.
    pub mod_p: bool,
    /// Replaces the candidate primes used for `d_0`, `d_1`.
    pub primes: Option<Vec<u64>>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            min_n: 2,
            max_n: 2,
            degrees: vec![2],
            solve: SolveOptions::default(),
            size_limit: None,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            mod_p: false,
            primes: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub computed: usize,
    pub cached: usize,
    pub skipped: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn is_partial(&self) -> bool {
        self.skipped + self.failed > 0
    }
}

/// Entries of the degree-2 relation matrix for `λ`, without building it.
pub fn predicted_entries(lambda: &Partition) -> usize {
    let n = lambda.n();
    if n < 2 {
        return 0;
    }
    let pres = presentation_for(n).expect("n >= 2");
    let k = lambda.standard_tableau_count() as usize;
    pres.relator_count() * k * pres.generator_count() * k
}

fn dims_primes(lambda: &Partition, opts: &SweepOptions) -> Vec<u64> {
    match &opts.primes {
        Some(p) => p.clone(),
        None => candidate_primes(lambda),
    }
}

fn cached(store: &ResultStore, lambda: &Partition, degree: u8, opts: &SweepOptions) -> bool {
    match store.get(lambda, degree) {
        Some(r) if r.is_computed() => {
            !opts.mod_p
                || degree == 2
                || lambda.n() < 2
                || dims_primes(lambda, opts).iter().all(|p| r.modp_dims.contains_key(p))
        }
        _ => false,
    }
}

/// All degrees requested for one partition.
fn compute_one(lambda: &Partition, degrees: &[u8], opts: &SweepOptions) -> Vec<CohomologyRecord> {
    let mut out = Vec::new();
    let needs_system = lambda.n() >= 2 && degrees.iter().any(|&d| d > 0 || opts.mod_p);
    let entries = predicted_entries(lambda);
    if let Some(limit) = opts.size_limit.filter(|&l| needs_system && entries > l) {
        let reason = format!("skipped: relation matrix has {entries} entries, above the limit {limit}");
        for &d in degrees {
            out.push(if d == 0 { h0_integral(lambda) } else { CohomologyRecord::not_computed(lambda, d, reason.clone()) });
        }
        return out;
    }
    let system = if needs_system {
        match system_for(lambda) {
            Ok(s) => Some(s),
            Err(e) => {
                let reason = format!("error: {e}");
                return degrees.iter().map(|&d| CohomologyRecord::not_computed(lambda, d, reason.clone())).collect();
            }
        }
    } else {
        None
    };
    let dims: Vec<(u64, (usize, usize))> = match (&system, opts.mod_p) {
        (Some(sys), true) => dims_primes(lambda, opts).into_iter().map(|p| (p, sys.dims_mod_p(p))).collect(),
        _ => Vec::new(),
    };
    for &d in degrees {
        let result = match (d, &system) {
            (0, _) => Ok(h0_integral(lambda)),
            (1, Some(sys)) => sys.h1(&opts.solve),
            (2, Some(sys)) => sys.h2(&opts.solve),
            (1, None) => crate::zassenhaus::h1_integral(lambda, &opts.solve),
            (_, None) => crate::zassenhaus::h2_integral(lambda, &opts.solve),
            _ => unreachable!("degrees are validated by the caller"),
        };
        let mut rec = result.unwrap_or_else(|e| CohomologyRecord::not_computed(lambda, d, format!("error: {e}")));
        if rec.is_computed() && d < 2 {
            for &(p, (d0, d1)) in &dims {
                rec.modp_dims.insert(p, if d == 0 { d0 } else { d1 });
            }
        }
        out.push(rec);
    }
    out
}

/// Processes every `λ ⊢ n` for `min_n ≤ n ≤ max_n`, reading cached records
/// and appending new ones. Work is spread over `opts.jobs` threads; the
/// calling thread is the only writer.
pub fn run_sweep(store: &mut ResultStore, opts: &SweepOptions) -> Result<SweepSummary, StoreError> {
    let partitions: Vec<Partition> = (opts.min_n..=opts.max_n).flat_map(Partition::all).collect();
    run_partitions(store, &partitions, opts)
}

/// Like [`run_sweep`] over an explicit list; `min_n` and `max_n` are ignored.
pub fn run_partitions(
    store: &mut ResultStore,
    partitions: &[Partition],
    opts: &SweepOptions,
) -> Result<SweepSummary, StoreError> {
    assert!(opts.degrees.iter().all(|&d| d <= 2), "degrees must be 0, 1 or 2");
    let mut summary = SweepSummary::default();
    let mut queue = VecDeque::new();
    for lambda in partitions {
        let todo: Vec<u8> = opts.degrees.iter().copied().filter(|&d| !cached(store, lambda, d, opts)).collect();
        summary.cached += opts.degrees.len() - todo.len();
        if !todo.is_empty() {
            queue.push_back((lambda.clone(), todo));
        }
    }
    let queue = Mutex::new(queue);
    let (tx, rx) = mpsc::channel::<Vec<CohomologyRecord>>();
    let mut write_error = None;
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.max(1) {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let Some((lambda, todo)) = queue.lock().expect("queue lock").pop_front() else { break };
                if tx.send(compute_one(&lambda, &todo, opts)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for batch in rx {
            for rec in batch {
                match &rec.note {
                    _ if rec.is_computed() => summary.computed += 1,
                    Some(note) if note.starts_with("skipped") => summary.skipped += 1,
                    note => {
                        summary.failed += 1;
                        summary.failures.push(format!("{} degree {}: {}", rec.lambda, rec.degree, note.as_deref().unwrap_or("")));
                    }
                }
                if write_error.is_none() {
                    if let Err(e) = store.insert(rec) {
                        write_error = Some(e);
                        queue.lock().expect("queue lock").clear();
                    }
                }
            }
        }
    });
    match write_error {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}
