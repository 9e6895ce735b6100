//! Membership graphs: partitions `λ` with `p | |H^i(Σ_n, S^λ_Z)|` (or with
//! nonzero mod-p cohomology), joined by add-a-node arrows.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{by_size_then_lex, Partition};
use crate::theory::{cp1_membership, principal_block};
use crate::zassenhaus::CohomologyRecord;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("mod-p membership in degree {0} needs H^{} data, which is not computed", .0 + 1)]
    UnsupportedDegree(u8),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// `C_p^i`: `p` divides the order of the integral group.
    Integral,
    /// `C^i(F_p)`: nonzero cohomology with coefficients in `S^λ ⊗ F_p`.
    ModP,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGraph {
    pub p: u64,
    pub degree: u8,
    pub kind: GraphKind,
    pub max_n: usize,
    pub vertices: BTreeSet<Partition>,
    pub edges: BTreeSet<(Partition, Partition)>,
    /// Members of size `max_n`, whose successors are not computed.
    pub frontier: BTreeSet<Partition>,
    /// In-block partitions without a usable record.
    pub unknown: BTreeSet<Partition>,
}

/// Records keyed by partition and degree.
#[derive(Debug, Default, Clone)]
pub struct ResultIndex {
    map: HashMap<(Partition, u8), CohomologyRecord>,
}

impl ResultIndex {
    pub fn new<'a>(records: impl IntoIterator<Item = &'a CohomologyRecord>) -> Self {
        let mut map = HashMap::new();
        for r in records {
            map.insert((r.lambda.clone(), r.degree), r.clone());
        }
        ResultIndex { map }
    }

    pub fn get(&self, lambda: &Partition, degree: u8) -> Option<&CohomologyRecord> {
        self.map.get(&(lambda.clone(), degree))
    }
}

impl CohomologyGraph {
    pub fn is_member(&self, lambda: &Partition) -> bool {
        self.vertices.contains(lambda)
    }

    pub fn successors_in(&self, lambda: &Partition) -> BTreeSet<Partition> {
        lambda.successors().into_iter().filter(|m| self.is_member(m)).collect()
    }

    pub fn predecessors_in(&self, lambda: &Partition) -> BTreeSet<Partition> {
        lambda.predecessors().into_iter().filter(|m| self.is_member(m)).collect()
    }

    pub fn has_edge(&self, from: &Partition, to: &Partition) -> bool {
        self.edges.contains(&(from.clone(), to.clone()))
    }

    /// Vertices ordered by size, then lexicographically.
    pub fn sorted_vertices(&self) -> Vec<&Partition> {
        let mut v: Vec<&Partition> = self.vertices.iter().collect();
        v.sort_by(|a, b| by_size_then_lex(a, b));
        v
    }

    pub fn title(&self) -> String {
        match self.kind {
            GraphKind::Integral => format!("C_{}^{}", self.p, self.degree),
            GraphKind::ModP => format!("C^{}(F_{})", self.degree, self.p),
        }
    }
}

/// Membership of `λ`: `Some(bool)` when decided, `None` when data is missing.
fn membership(index: &ResultIndex, lambda: &Partition, p: u64, degree: u8, kind: GraphKind) -> Option<bool> {
    if lambda.n() <= 1 || !principal_block(lambda, p) {
        return Some(false);
    }
    match (kind, degree) {
        (GraphKind::Integral, 1) => Some(cp1_membership(lambda, p)),
        (GraphKind::Integral, d) => index.get(lambda, d)?.integral.as_ref().map(|g| g.p_rank(p) > 0),
        (GraphKind::ModP, d) => index.get(lambda, d)?.modp_dims.get(&p).map(|&dim| dim > 0),
    }
}

/// Induced subgraph on the members of size at most `max_n`.
pub fn build_graph(
    records: &[CohomologyRecord],
    p: u64,
    degree: u8,
    max_n: usize,
    kind: GraphKind,
) -> Result<CohomologyGraph, GraphError> {
    if kind == GraphKind::ModP && degree >= 2 {
        return Err(GraphError::UnsupportedDegree(degree));
    }
    let index = ResultIndex::new(records);
    let mut vertices = BTreeSet::new();
    let mut unknown = BTreeSet::new();
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            match membership(&index, &lambda, p, degree, kind) {
                Some(true) => {
                    vertices.insert(lambda);
                }
                Some(false) => {}
                None => {
                    unknown.insert(lambda);
                }
            }
        }
    }
    let mut edges = BTreeSet::new();
    for lambda in &vertices {
        for mu in lambda.successors() {
            if vertices.contains(&mu) {
                edges.insert((lambda.clone(), mu));
            }
        }
    }
    let frontier = vertices.iter().filter(|l| l.n() == max_n).cloned().collect();
    Ok(CohomologyGraph { p, degree, kind, max_n, vertices, edges, frontier, unknown })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NoSuccessor,
    NoPredecessor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub lambda: Partition,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub violations: Vec<Violation>,
    /// Checks that could not be decided because a neighbour is unknown.
    pub undecided: Vec<Violation>,
    /// Members with no predecessor in the graph.
    pub sources: Vec<Partition>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every member below the frontier has a successor, and every member with
/// `p ∤ n` has a predecessor.
pub fn check_structure(graph: &CohomologyGraph) -> StructureReport {
    let mut report = StructureReport::default();
    for lambda in graph.sorted_vertices() {
        let unknown_near = |set: BTreeSet<Partition>| set.iter().any(|m| graph.unknown.contains(m));
        let preds = graph.predecessors_in(lambda);
        if preds.is_empty() {
            report.sources.push(lambda.clone());
        }
        if lambda.n() < graph.max_n && graph.successors_in(lambda).is_empty() {
            let v = Violation { lambda: lambda.clone(), kind: ViolationKind::NoSuccessor };
            if unknown_near(lambda.successors()) {
                report.undecided.push(v);
            } else {
                report.violations.push(v);
            }
        }
        if !(lambda.n() as u64).is_multiple_of(graph.p) && preds.is_empty() {
            let v = Violation { lambda: lambda.clone(), kind: ViolationKind::NoPredecessor };
            if unknown_near(lambda.predecessors()) {
                report.undecided.push(v);
            } else {
                report.violations.push(v);
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// Outside the computed range or depending on unknown vertices.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCheck {
    pub name: String,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub checks: Vec<PathCheck>,
}

impl PathReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == CheckOutcome::Pass).count()
    }

    fn push(&mut self, name: String, outcome: CheckOutcome, detail: String) {
        self.checks.push(PathCheck { name, outcome, detail });
    }
}

fn part(v: &[usize]) -> Partition {
    Partition::from_unsorted(v.to_vec())
}

/// Checks a chain of add-a-node steps. With `only`, each step must be the
/// unique successor in the graph. The chain is cut at the computed range.
fn check_chain(graph: &CohomologyGraph, name: &str, chain: &[Partition], only: bool, report: &mut PathReport) {
    let chain: Vec<&Partition> = chain.iter().take_while(|l| l.n() <= graph.max_n).collect();
    if chain.len() < 2 || chain.iter().any(|l| graph.unknown.contains(*l)) {
        report.push(name.to_string(), CheckOutcome::Skipped, "outside computed range".into());
        return;
    }
    let text: Vec<String> = chain.iter().map(|l| format!("({l})")).collect();
    let text = text.join(" -> ");
    for l in &chain {
        if !graph.is_member(l) {
            report.push(name.to_string(), CheckOutcome::Fail, format!("{text}: ({l}) is not a member"));
            return;
        }
    }
    for w in chain.windows(2) {
        if only {
            let succ = graph.successors_in(w[0]);
            if succ.iter().any(|m| graph.unknown.contains(m)) {
                report.push(name.to_string(), CheckOutcome::Skipped, format!("{text}: unknown successors"));
                return;
            }
            if succ.len() != 1 || !succ.contains(w[1]) {
                let s: Vec<String> = succ.iter().map(|m| format!("({m})")).collect();
                report.push(
                    name.to_string(),
                    CheckOutcome::Fail,
                    format!("{text}: successors of ({}) are {}", w[0], s.join(", ")),
                );
                return;
            }
        } else if !graph.has_edge(w[0], w[1]) {
            report.push(name.to_string(), CheckOutcome::Fail, format!("{text}: missing edge ({}) -> ({})", w[0], w[1]));
            return;
        }
    }
    report.push(name.to_string(), CheckOutcome::Pass, text);
}

fn check_source(graph: &CohomologyGraph, name: &str, lambda: &Partition, report: &mut PathReport) {
    if lambda.n() > graph.max_n || graph.unknown.contains(lambda) {
        report.push(name.to_string(), CheckOutcome::Skipped, "outside computed range".into());
        return;
    }
    if !graph.is_member(lambda) {
        report.push(name.to_string(), CheckOutcome::Fail, format!("({lambda}) is not a member"));
        return;
    }
    let preds = graph.predecessors_in(lambda);
    if preds.is_empty() {
        report.push(name.to_string(), CheckOutcome::Pass, format!("({lambda}) has no predecessor"));
    } else if lambda.predecessors().iter().any(|m| graph.unknown.contains(m)) {
        report.push(name.to_string(), CheckOutcome::Skipped, "unknown predecessors".into());
    } else {
        report.push(name.to_string(), CheckOutcome::Fail, format!("({lambda}) has predecessors"));
    }
}

/// Initial path segments and sources predicted for degree-2 integral graphs.
pub fn verify_path_lemmas(graph: &CohomologyGraph) -> PathReport {
    let mut report = PathReport::default();
    if graph.kind != GraphKind::Integral || graph.degree != 2 {
        return report;
    }
    let p = graph.p as usize;
    let max_n = graph.max_n;

    if p > 3 {
        for m in 1.. {
            let start = m * p;
            if start > max_n {
                break;
            }
            // (mp-2,1,1) -> (mp-2,2,1) -> ... -> (mp-2,p-2,1), each step unique.
            let chain: Vec<Partition> = (1..=p - 2).map(|i| part(&[start - 2, i, 1])).collect();
            check_chain(graph, &format!("hook-two-path p={p} m={m}"), &chain, true, &mut report);
            if m == 1 {
                let tail = vec![part(&[p - 2, p - 2, 1]), part(&[p - 2, p - 2, 1, 1]), part(&[p - 1, p - 2, 1, 1])];
                check_chain(graph, &format!("hook-two-path-tail p={p}"), &tail, true, &mut report);
            }
        }
    }
    if p == 3 {
        for m in 1.. {
            if 3 * m > max_n {
                break;
            }
            let chain = vec![
                part(&[3 * m - 2, 1, 1]),
                part(&[3 * m - 2, 1, 1, 1]),
                part(&[3 * m - 1, 1, 1, 1]),
                part(&[3 * m - 1, 1, 1, 1, 1]),
                part(&[3 * m - 1, 2, 1, 1, 1]),
            ];
            check_chain(graph, &format!("three-hook-path m={m}"), &chain, false, &mut report);
        }
    }
    if p % 2 == 1 {
        // (n-2,1,1) is a member exactly when p | n, and then has no predecessor.
        for n in 3..=max_n {
            let lambda = part(&[n - 2, 1, 1]);
            if graph.unknown.contains(&lambda) {
                continue;
            }
            let member = graph.is_member(&lambda);
            let name = format!("hook-two-membership n={n}");
            if member != (n % p == 0) {
                report.push(name, CheckOutcome::Fail, format!("({lambda}) membership is {member}"));
            } else if member {
                check_source(graph, &format!("hook-two-source n={n}"), &lambda, &mut report);
            } else {
                report.push(name, CheckOutcome::Pass, format!("({lambda}) not a member"));
            }
        }
        for m in 1.. {
            let n = (m + 1) * p;
            if n > max_n {
                break;
            }
            check_source(graph, &format!("two-part-source n={n}"), &part(&[n - p, p]), &mut report);
        }
        // (mp,p) -> (mp+1,p) -> ... -> (mp+p-2,p) -> (mp+p-2,p,1).
        for m in 1.. {
            if m * p + p > max_n {
                break;
            }
            let mut chain: Vec<Partition> = (0..=p - 2).map(|i| part(&[m * p + i, p])).collect();
            chain.push(part(&[m * p + p - 2, p, 1]));
            check_chain(graph, &format!("two-part-path p={p} m={m}"), &chain, true, &mut report);
        }
    }
    if p == 2 {
        for lambda in [part(&[11, 4]), part(&[11, 5])] {
            let name = format!("exception ({lambda})");
            if lambda.n() > max_n || graph.unknown.contains(&lambda) {
                report.push(name, CheckOutcome::Skipped, "no record".into());
            } else if graph.is_member(&lambda) {
                report.push(name, CheckOutcome::Fail, format!("({lambda}) is a member"));
            } else {
                report.push(name, CheckOutcome::Pass, format!("({lambda}) is not a member"));
            }
        }
    }
    report
}

/// Deterministic DOT text; one rank per `n`.
pub fn to_dot(graph: &CohomologyGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", graph.title());
    if !graph.vertices.is_empty() {
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=plaintext];");
        let mut by_n: BTreeMap<usize, Vec<&Partition>> = BTreeMap::new();
        for v in graph.sorted_vertices() {
            by_n.entry(v.n()).or_default().push(v);
        }
        for (n, vs) in &by_n {
            let ids: Vec<String> = vs.iter().map(|v| format!("\"{v}\"")).collect();
            let _ = writeln!(out, "  {{ rank=same; /* n={n} */ {}; }}", ids.join("; "));
        }
        for v in graph.sorted_vertices() {
            let _ = writeln!(out, "  \"{v}\" [label=\"({})\"];", v.to_exponent_string());
        }
        let mut edges: Vec<&(Partition, Partition)> = graph.edges.iter().collect();
        edges.sort_by(|a, b| by_size_then_lex(&a.0, &b.0).then_with(|| by_size_then_lex(&a.1, &b.1)));
        for (a, b) in edges {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(graph: &CohomologyGraph, path: &Path) -> Result<(), GraphError> {
    std::fs::write(path, to_dot(graph))?;
    Ok(())
}

/// JSON adjacency dump `{p, degree, kind, max_n, vertices, edges, frontier, unknown}`.
pub fn to_json(graph: &CohomologyGraph) -> serde_json::Value {
    let list = |s: &BTreeSet<Partition>| {
        let mut v: Vec<&Partition> = s.iter().collect();
        v.sort_by(|a, b| by_size_then_lex(a, b));
        v.iter().map(|l| l.to_string()).collect::<Vec<_>>()
    };
    let mut edges: Vec<&(Partition, Partition)> = graph.edges.iter().collect();
    edges.sort_by(|a, b| by_size_then_lex(&a.0, &b.0).then_with(|| by_size_then_lex(&a.1, &b.1)));
    serde_json::json!({
        "p": graph.p,
        "degree": graph.degree,
        "kind": graph.kind,
        "max_n": graph.max_n,
        "vertices": list(&graph.vertices),
        "edges": edges.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        "frontier": list(&graph.frontier),
        "unknown": list(&graph.unknown),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zassenhaus::{IntegralType, Provenance};
    use num_bigint::BigUint;

    fn record(lambda: &str, divisors: &[u64]) -> CohomologyRecord {
        CohomologyRecord {
            lambda: lambda.parse().unwrap(),
            degree: 2,
            integral: Some(IntegralType::Torsion(divisors.iter().map(|&d| BigUint::from(d)).collect())),
            modp_dims: BTreeMap::new(),
            provenance: Provenance::Golden,
            note: None,
            meta: Default::default(),
        }
    }

    fn small_table() -> Vec<CohomologyRecord> {
        vec![
            record("2", &[2]),
            record("1,1", &[]),
            record("3", &[2]),
            record("2,1", &[]),
            record("1,1,1", &[3]),
            record("4", &[2]),
            record("3,1", &[2]),
            record("2,2", &[]),
            record("2,1,1", &[2]),
            record("1^4", &[3]),
        ]
    }

    #[test]
    fn memberships_and_edges() {
        let g = build_graph(&small_table(), 2, 2, 3, GraphKind::Integral).unwrap();
        assert!(g.is_member(&"2".parse().unwrap()) && g.is_member(&"3".parse().unwrap()));
        assert!(g.has_edge(&"2".parse().unwrap(), &"3".parse().unwrap()));
        let g3 = build_graph(&small_table(), 3, 2, 4, GraphKind::Integral).unwrap();
        assert!(g3.is_member(&"1,1,1".parse().unwrap()) && g3.is_member(&"1^4".parse().unwrap()));
        assert!(g3.unknown.is_empty());
        for (a, b) in &g3.edges {
            assert!(a.successors().contains(b));
        }
    }

    #[test]
    fn missing_records_are_unknown() {
        let g = build_graph(&small_table(), 2, 2, 5, GraphKind::Integral).unwrap();
        assert!(g.unknown.contains(&"5".parse().unwrap()));
        let report = check_structure(&g);
        assert!(report.violations.iter().all(|v| v.lambda.n() < 4));
    }

    #[test]
    fn dot_is_deterministic() {
        let empty = build_graph(&[], 5, 2, 0, GraphKind::Integral).unwrap();
        assert_eq!(to_dot(&empty), "digraph \"C_5^2\" {\n}\n");
        let g = build_graph(&small_table(), 3, 2, 4, GraphKind::Integral).unwrap();
        let a = to_dot(&g);
        assert_eq!(a, to_dot(&g.clone()));
        assert!(a.contains("\"1,1,1\" -> \"1,1,1,1\";"));
        let json = to_json(&g);
        assert_eq!(json["edges"][0][0], "1,1,1");
    }

    #[test]
    fn mod_p_degree_two_is_rejected() {
        assert!(build_graph(&[], 3, 2, 4, GraphKind::ModP).is_err());
    }
}
