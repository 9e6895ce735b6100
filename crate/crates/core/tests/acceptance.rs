//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if a blocking criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use specht_coho::golden::{compare, verify, GoldenTable, RowCheck};
use specht_coho::graph::{build_graph, check_structure, verify_path_lemmas, CheckOutcome, GraphKind};
use specht_coho::linalg::{p_part_elementary_divisors, smith_elementary_divisors, ElemDivisors, IntMatrix, PAdicReduction};
use specht_coho::partition::{factorial_valuation, primes_up_to, Partition};
use specht_coho::presentation::Generator;
use specht_coho::report::{evaluate, Observed, Verdict};
use specht_coho::specht::{generator_matrices, tabloid_oracle};
use specht_coho::perm::Permutation;
use specht_coho::store::ResultStore;
use specht_coho::sweep::{run_partitions, run_sweep, SweepOptions};
use specht_coho::theory::{bockstein_report, candidate_primes, known_integral, predictions_for};
use specht_coho::zassenhaus::{system_for, IntegralType, SnfStrategy, SolveOptions};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Non-blocking criterion that was not run.
    Skip(String),
}

type Criterion = Result<String, String>;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn sweep_opts(min_n: usize, max_n: usize, degrees: Vec<u8>, mod_p: bool) -> SweepOptions {
    SweepOptions {
        min_n,
        max_n,
        degrees,
        mod_p,
        primes: mod_p.then(|| primes_up_to(max_n as u64)),
        ..Default::default()
    }
}

fn check_failures(failures: Vec<String>, ok: String) -> Criterion {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<String> = failures.iter().take(8).cloned().collect();
        Err(format!("{} failures: {}", failures.len(), shown.join("; ")))
    }
}

fn golden_small(store: &mut ResultStore, golden: &GoldenTable) -> Criterion {
    let summary = run_sweep(store, &sweep_opts(2, 9, vec![0, 1, 2], true)).map_err(|e| e.to_string())?;
    if summary.is_partial() {
        return Err(format!("sweep incomplete: {:?}", summary.failures));
    }
    let at_nine = store.records_of_degree(2).iter().filter(|r| r.lambda.n() == 9).count();
    if at_nine != 30 {
        return Err(format!("{at_nine} records at n = 9"));
    }
    let report = verify(golden, store, 2..=9);
    if report.ok() && report.missing.is_empty() && report.skipped.is_empty() {
        Ok(report.summary())
    } else {
        Err(format!("{} {:?}", report.summary(), report.mismatches))
    }
}

fn golden_extended(store: &mut ResultStore, golden: &GoldenTable) -> Criterion {
    let summary = run_sweep(store, &sweep_opts(10, 10, vec![0, 1, 2], true)).map_err(|e| e.to_string())?;
    if summary.is_partial() {
        return Err(format!("n = 10 sweep incomplete: {:?}", summary.failures));
    }
    let ten = verify(golden, store, 10..=10);
    if !ten.ok() || !ten.missing.is_empty() || ten.matched != 42 {
        return Err(format!("n = 10: {} {:?}", ten.summary(), ten.mismatches));
    }
    let mut eleven: Vec<Partition> = golden.rows_for(11).filter(|r| r.k <= 700).map(|r| r.lambda.clone()).collect();
    for must in ["7,3,1", "5,3^2"] {
        if !eleven.contains(&part(must)) {
            eleven.push(part(must));
        }
    }
    let opts = SweepOptions { solve: SolveOptions { strategy: SnfStrategy::Modular, ..Default::default() }, ..Default::default() };
    let mut eleven_store = ResultStore::in_memory();
    run_partitions(&mut eleven_store, &eleven, &opts).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for lambda in &eleven {
        let row = golden.get(lambda).expect("row exists");
        match eleven_store.get(lambda, 2).map(|r| compare(row, r)) {
            Some(RowCheck::Match) => {}
            other => failures.push(format!("({lambda}): {other:?}")),
        }
    }
    let show = |l: &str| eleven_store.get(&part(l), 2).and_then(|r| r.integral.clone()).map(|g| g.to_string());
    check_failures(
        failures,
        format!(
            "n = 10: {}; n = 11: {} partitions matched, (7,3,1) -> {}, (5,3^2) -> {}",
            ten.summary(),
            eleven.len(),
            show("7,3,1").unwrap_or_default(),
            show("5,3^2").unwrap_or_default()
        ),
    )
}

fn known_values() -> Criterion {
    let mut store = ResultStore::in_memory();
    let mut family = Vec::new();
    for n in 2..=12 {
        family.push(Partition::row(n));
        family.push(Partition::column(n));
        family.push(Partition::hook(n, 1).unwrap());
    }
    family.sort();
    family.dedup();
    run_partitions(&mut store, &family, &sweep_opts(0, 0, vec![1, 2], false)).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for lambda in &family {
        let obs = Observed::from_store(&store, lambda);
        for pred in known_integral(lambda).iter().filter(|p| !p.value.is_unknown()) {
            checked += 1;
            let c = evaluate(pred, &obs);
            if c.verdict != Verdict::Agrees {
                failures.push(format!("({lambda}) {}: predicted {}, got {:?}", pred.quantity, pred.value, c.observed));
            }
        }
    }
    check_failures(failures, format!("{checked} values for n = 2..12"))
}

fn structural(store: &ResultStore) -> Criterion {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=10 {
        let fact: BigUint = (1..=n as u64).fold(BigUint::one(), |a, i| a * i);
        for lambda in Partition::all(n) {
            count += 1;
            let sys = match system_for(&lambda) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("({lambda}): {e}"));
                    continue;
                }
            };
            if !sys.z_mat.checked_mul(&sys.b_mat).map(|m| m.is_zero()).unwrap_or(false) {
                failures.push(format!("({lambda}): Z·B != 0"));
            }
            let (rank_b, _, _) = sys.ranks().map_err(|e| e.to_string())?;
            let rank_z = sys.certified_rank_z();
            if rank_b + rank_z != sys.g * sys.k {
                failures.push(format!("({lambda}): rank Z {rank_z} + rank B {rank_b} != {}", sys.g * sys.k));
            }
            if n >= 3 && !lambda.is_row() && (rank_b != sys.k || rank_z != sys.k) {
                failures.push(format!("({lambda}): ranks {rank_b}, {rank_z} with k = {}", sys.k));
            }
            for d in [1, 2] {
                let torsion = store.get(&lambda, d).and_then(|r| r.integral.clone());
                match torsion.as_ref().and_then(|g| g.torsion().map(|t| t.to_vec())) {
                    Some(t) if t.iter().all(|e| (&fact % e).is_zero()) => {}
                    other => failures.push(format!("({lambda}) H{d}: {other:?}")),
                }
            }
        }
    }
    check_failures(failures, format!("{count} partitions"))
}

fn bockstein(store: &ResultStore) -> Criterion {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=9 {
        for lambda in Partition::all(n) {
            let obs = Observed::from_store(store, &lambda);
            let (Some(h1), Some(h2)) = (obs.h1.as_ref(), obs.h2.as_ref()) else {
                failures.push(format!("({lambda}) missing"));
                continue;
            };
            for p in candidate_primes(&lambda) {
                let Some(&dims) = obs.dims.get(&p) else {
                    failures.push(format!("({lambda}) p = {p}: no dimensions"));
                    continue;
                };
                checked += 1;
                let r = bockstein_report(&lambda, p, h1, h2, dims);
                if !r.consistent || r.x2_within_d2 == Some(false) || r.x3.is_some_and(|x| x < 0) {
                    failures.push(format!("({lambda}) p = {p}: {r:?}"));
                }
            }
        }
    }
    check_failures(failures, format!("{checked} (partition, prime) pairs"))
}

fn theory_vs_computation(store: &ResultStore) -> Criterion {
    let mut failures = Vec::new();
    let (mut agreed, mut undetermined) = (0, 0);
    for n in 2..=10 {
        for lambda in Partition::all(n) {
            let obs = Observed::from_store(store, &lambda);
            for p in primes_up_to(n as u64).into_iter().filter(|&p| p > 2) {
                for pred in predictions_for(&lambda, p).iter().filter(|p| !p.conjecture) {
                    let c = evaluate(pred, &obs);
                    match c.verdict {
                        Verdict::Agrees => agreed += 1,
                        Verdict::Undetermined => undetermined += 1,
                        Verdict::Violated => failures.push(format!(
                            "({lambda}) p = {p} {} [{}]: predicted {}, got {:?}",
                            pred.quantity, pred.source, pred.value, c.observed
                        )),
                    }
                }
            }
        }
    }
    check_failures(failures, format!("{agreed} predictions agree, {undetermined} not checkable"))
}

/// 2-part of `H²` for one partition, from the 2-adic elimination alone.
fn two_rank_of_h2(lambda: &Partition) -> Result<usize, String> {
    let sys = system_for(lambda).map_err(|e| e.to_string())?;
    let opts = SolveOptions { strategy: SnfStrategy::Modular, primes: Some(vec![2]), ..Default::default() };
    let rec = sys.h2(&opts).map_err(|e| e.to_string())?;
    Ok(rec.integral.map_or(0, |g| g.p_rank(2)))
}

fn graphs(store: &ResultStore) -> Criterion {
    let records: Vec<_> = store.records().into_iter().cloned().collect();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let g = build_graph(&records, p, 2, 9, GraphKind::Integral).map_err(|e| e.to_string())?;
        if !g.unknown.is_empty() {
            failures.push(format!("p = {p}: {} unknown vertices", g.unknown.len()));
        }
        let s = check_structure(&g);
        for v in &s.violations {
            failures.push(format!("p = {p}: ({}) {:?}", v.lambda, v.kind));
        }
        let paths = verify_path_lemmas(&g);
        for c in paths.checks.iter().filter(|c| c.outcome == CheckOutcome::Fail) {
            failures.push(format!("p = {p}: {}: {}", c.name, c.detail));
        }
        if p > 2 && paths.passed() == 0 {
            failures.push(format!("p = {p}: no path segment in range"));
        }
        notes.push(format!("p={p}: {} vertices, {} path checks", g.vertices.len(), paths.passed()));
    }
    // (11,4) is checked through its 2-part alone; (11,5) is beyond desk scale.
    match two_rank_of_h2(&part("11,4")) {
        Ok(0) => notes.push("(11,4) not in C_2^2".into()),
        Ok(x) => failures.push(format!("(11,4) has x2 = {x} at p = 2")),
        Err(e) => failures.push(format!("(11,4): {e}")),
    }
    notes.push("(11,5) not computed".into());
    check_failures(failures, notes.join(", "))
}

fn conjectures() -> Criterion {
    let mut family = Vec::new();
    for n in 4..=12 {
        family.push(Partition::new(vec![n - 2, 1, 1]).unwrap());
        if n >= 5 {
            family.push(Partition::from_unsorted(vec![n - 3, 2, 1]));
        }
    }
    let mut store = ResultStore::in_memory();
    run_partitions(&mut store, &family, &sweep_opts(0, 0, vec![2], false)).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for lambda in &family {
        let n = lambda.n() as u64;
        let want = if lambda.part(1) == 1 {
            if n % 2 == 1 { 2 * n } else { n / 2 }
        } else if !(n - 1).is_multiple_of(3) {
            n - 1
        } else {
            (n - 1) / 3
        };
        let want = if want == 1 { IntegralType::trivial() } else { IntegralType::Torsion(vec![BigUint::from(want)]) };
        let got = store.get(lambda, 2).and_then(|r| r.integral.clone());
        if got.as_ref() != Some(&want) {
            failures.push(format!("({lambda}): want {want}, got {got:?}"));
        }
    }
    check_failures(failures, format!("{} family members for n <= 12", family.len()))
}

fn reconstruct(m: &IntMatrix, rank: usize, primes: &[u64], start: impl Fn(u64) -> u32) -> Result<ElemDivisors, String> {
    let parts = primes
        .iter()
        .map(|&p| p_part_elementary_divisors(m, p, rank, start(p)))
        .collect::<Result<Vec<PAdicReduction>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(ElemDivisors::from_p_parts(rank, &parts))
}

fn oracle_and_engines() -> Criterion {
    let mut failures = Vec::new();
    for n in 2..=6 {
        for lambda in Partition::all(n) {
            let rep = generator_matrices(&lambda);
            let a = tabloid_oracle(&lambda, &Permutation::transposition_12(n)).map_err(|e| e.to_string())?;
            let b = tabloid_oracle(&lambda, &Permutation::long_cycle(n)).map_err(|e| e.to_string())?;
            if &a != rep.matrix(Generator::A) || &b != rep.matrix(Generator::B) {
                failures.push(format!("({lambda}): oracle differs"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let primes = primes_up_to(13);
    for i in 0..200 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let m = IntMatrix::from_vec(r, c, data).unwrap();
        let dense = smith_elementary_divisors(&m);
        for &p in &primes {
            match p_part_elementary_divisors(&m, p, dense.rank(), 1) {
                Ok(part) => {
                    let mut v = part.valuations;
                    v.sort_unstable();
                    if v != dense.valuations(p) {
                        failures.push(format!("random matrix {i}, p = {p}"));
                    }
                }
                Err(e) => failures.push(format!("random matrix {i}, p = {p}: {e}")),
            }
        }
    }
    for lambda in Partition::all(7) {
        let sys = system_for(&lambda).map_err(|e| e.to_string())?;
        let dense = smith_elementary_divisors(&sys.z_mat);
        let modular = reconstruct(&sys.z_mat, dense.rank(), &primes_up_to(7), |p| factorial_valuation(7, p) + 1)?;
        if dense != modular {
            failures.push(format!("Z for ({lambda}): dense {:?} vs modular {:?}", dense.nontrivial(), modular.nontrivial()));
        }
    }
    check_failures(failures, "oracle for n <= 6, 200 random matrices, Z for all partitions of 7".into())
}

fn bracketed(golden: &GoldenTable) -> Outcome {
    let rows: Vec<String> = golden
        .rows
        .iter()
        .filter(|r| matches!(r.entry, specht_coho::golden::GoldenEntry::Primes(_)))
        .map(|r| format!("({}) k={}", r.lambda.to_exponent_string(), r.k))
        .collect();
    Outcome::Skip(format!(
        "stretch goal, not run: {} bracketed rows, smallest k = {}",
        rows.len(),
        golden.rows.iter().filter(|r| matches!(r.entry, specht_coho::golden::GoldenEntry::Primes(_))).map(|r| r.k).min().unwrap_or(0)
    ))
}

fn main() {
    let golden = GoldenTable::reference();
    let mut store = ResultStore::in_memory();
    let mut results: BTreeMap<u32, (&str, Outcome, f64)> = BTreeMap::new();
    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        let (tag, msg) = match &outcome {
            Outcome::Pass(m) => ("PASS", m),
            Outcome::Fail(m) => ("FAIL", m),
            Outcome::Skip(m) => ("SKIP", m),
        };
        println!("criterion {id:>2} [{name}]: {tag} ({secs:.1}s) {msg}");
        results.insert(id, (name, outcome, secs));
    };
    let wrap = |r: Criterion| match r {
        Ok(m) => Outcome::Pass(m),
        Err(m) => Outcome::Fail(m),
    };
    run(1, "reference table n <= 9", &mut || wrap(golden_small(&mut store, &golden)));
    run(2, "reference table n = 10, 11", &mut || wrap(golden_extended(&mut store, &golden)));
    run(3, "bracketed rows", &mut || bracketed(&golden));
    run(4, "known groups", &mut || wrap(known_values()));
    run(5, "structural identities", &mut || wrap(structural(&store)));
    run(6, "Bockstein consistency", &mut || wrap(bockstein(&store)));
    run(7, "theory vs computation", &mut || wrap(theory_vs_computation(&store)));
    run(8, "graph structure", &mut || wrap(graphs(&store)));
    run(9, "conjectured families", &mut || wrap(conjectures()));
    run(10, "oracle and engine cross-check", &mut || wrap(oracle_and_engines()));
    let failed: Vec<u32> =
        results.iter().filter(|(_, (_, o, _))| matches!(o, Outcome::Fail(_))).map(|(id, _)| *id).collect();
    if failed.is_empty() {
        println!("acceptance: all blocking criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
