//! The integral Specht lattice `S^λ` as a pair of matrices for the generators
//! `(1,2)` and `(1,…,n)`, in the basis of standard polytabloids.
//!
//! Tableaux are stored column by column. `e_T` only depends on `T` up to
//! column sorting (with sign), so every intermediate tableau is kept column
//! sorted and straightened by Garnir relations until all terms are standard.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{IntMatrix, LinalgError};
use crate::partition::Partition;
use crate::perm::{sorting_sign, Permutation};
use crate::presentation::{evaluate_word, presentation_for, Generator};

#[derive(Debug, Error)]
pub enum SpechtError {
    #[error("tableau rows {0:?} are not a standard filling")]
    NotStandard(Vec<Vec<usize>>),
    #[error("tabloid module for {lambda} has {size} tabloids, above the limit {limit}")]
    TooLarge { lambda: Partition, size: u128, limit: u128 },
    #[error("oracle system for {0} is inconsistent")]
    Inconsistent(Partition),
    #[error("oracle solution for {0} is not integral")]
    NotIntegral(Partition),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Cell layout of a Young diagram in column-major order.
#[derive(Debug, Clone)]
struct Layout {
    rows: Vec<usize>,
    col_len: Vec<usize>,
    col_start: Vec<usize>,
}

impl Layout {
    fn new(shape: &Partition) -> Self {
        let col_len = shape.column_lengths();
        let mut col_start = Vec::with_capacity(col_len.len());
        let mut acc = 0;
        for &c in &col_len {
            col_start.push(acc);
            acc += c;
        }
        Layout { rows: shape.parts().to_vec(), col_len, col_start }
    }

    fn at(&self, row: usize, col: usize) -> usize {
        self.col_start[col] + row
    }

    fn column<'a>(&self, t: &'a [u8], col: usize) -> &'a [u8] {
        &t[self.col_start[col]..self.col_start[col] + self.col_len[col]]
    }

    /// Sorts every column in place and returns the sign of the permutation.
    fn sort_columns(&self, t: &mut [u8]) -> i64 {
        let mut sign = 1;
        for col in 0..self.col_len.len() {
            let seg = &mut t[self.col_start[col]..self.col_start[col] + self.col_len[col]];
            sign *= sorting_sign(seg);
            seg.sort_unstable();
        }
        sign
    }

    /// Row descents `T(i,j) > T(i,j+1)` of a column-sorted tableau, top to
    /// bottom and left to right.
    fn descents(&self, t: &[u8]) -> impl Iterator<Item = (usize, usize)> + '_ {
        let t = t.to_vec();
        self.rows.iter().enumerate().flat_map(move |(i, &len)| {
            let t = t.clone();
            (0..len.saturating_sub(1))
                .filter(move |&j| t[self.at(i, j)] > t[self.at(i, j + 1)])
                .map(move |j| (i, j))
        })
    }

    fn first_descent(&self, t: &[u8]) -> Option<(usize, usize)> {
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 0..len.saturating_sub(1) {
                if t[self.at(i, j)] > t[self.at(i, j + 1)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn to_rows(&self, t: &[u8]) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| t[self.at(i, j)] as usize).collect())
            .collect()
    }
}

/// A standard Young tableau, stored as its column reading word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    shape: Partition,
    entries: Vec<u8>,
}

impl StandardTableau {
    /// From rows of 1-based entries.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, SpechtError> {
        let bad = || SpechtError::NotStandard(rows.clone());
        let shape = Partition::new(rows.iter().map(Vec::len).collect()).map_err(|_| bad())?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(bad());
            }
            seen[x] = true;
        }
        let layout = Layout::new(&shape);
        let mut entries = vec![0u8; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                entries[layout.at(i, j)] = x as u8;
            }
        }
        let cols_sorted = (0..layout.col_len.len())
            .all(|c| layout.column(&entries, c).windows(2).all(|w| w[0] < w[1]));
        if !cols_sorted || layout.first_descent(&entries).is_some() {
            return Err(bad());
        }
        Ok(StandardTableau { shape, entries })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Entries read down each column, left to right.
    pub fn column_word(&self) -> &[u8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        Layout::new(&self.shape).to_rows(&self.entries)
    }
}

impl fmt::Display for StandardTableau {
    /// Rows separated by `/`, e.g. `1,3/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join("/"))
    }
}

/// All standard tableaux of shape `lambda`, sorted by column reading word.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    let layout = Layout::new(lambda);
    let mut out = Vec::new();
    let mut filling = vec![0u8; lambda.n()];
    let mut row_fill = vec![0usize; lambda.len()];
    fill(&layout, 1, &mut row_fill, &mut filling, &mut out);
    out.sort_unstable();
    out.into_iter()
        .map(|entries| StandardTableau { shape: lambda.clone(), entries })
        .collect()
}

// Places `next` at the end of any row whose new cell has a filled cell above.
fn fill(layout: &Layout, next: usize, row_fill: &mut [usize], t: &mut [u8], out: &mut Vec<Vec<u8>>) {
    if next > t.len() {
        out.push(t.to_vec());
        return;
    }
    for i in 0..row_fill.len() {
        let j = row_fill[i];
        if j < layout.rows[i] && (i == 0 || row_fill[i - 1] > j) {
            t[layout.at(i, j)] = next as u8;
            row_fill[i] += 1;
            fill(layout, next + 1, row_fill, t, out);
            row_fill[i] -= 1;
        }
    }
}

/// Sparse coefficient vector over the standard basis, sorted by index.
pub type BasisVector = Vec<(usize, i64)>;

/// Which row descent a Garnir relation is applied to.
#[derive(Debug, Clone, Copy)]
pub enum GarnirChoice {
    /// The top-most, then left-most descent.
    First,
    /// A uniformly random descent, from a seeded generator.
    Random(u64),
}

/// Memoizing straightener for one shape.
pub struct Straightener {
    shape: Partition,
    layout: Layout,
    basis: Vec<StandardTableau>,
    index: HashMap<Box<[u8]>, usize>,
    memo: HashMap<Box<[u8]>, Rc<BasisVector>>,
    rng: Option<StdRng>,
}

struct Frame {
    key: Box<[u8]>,
    terms: Vec<(i64, Box<[u8]>)>,
    next: usize,
    acc: HashMap<usize, i64>,
}

impl Straightener {
    pub fn new(shape: &Partition, choice: GarnirChoice) -> Self {
        let basis = standard_tableaux(shape);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.entries.clone().into_boxed_slice(), i))
            .collect();
        let rng = match choice {
            GarnirChoice::First => None,
            GarnirChoice::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        };
        Straightener { shape: shape.clone(), layout: Layout::new(shape), basis, index, memo: HashMap::new(), rng }
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    /// Number of non-standard tableaux straightened so far.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Coefficients of `σ · e_t`.
    pub fn act(&mut self, sigma: &Permutation, t: &StandardTableau) -> BasisVector {
        assert_eq!(sigma.degree(), self.shape.n());
        let mut image: Vec<u8> = t.entries.iter().map(|&x| sigma.apply(x as usize - 1) as u8 + 1).collect();
        let sign = self.layout.sort_columns(&mut image);
        if let Some(&i) = self.index.get(image.as_slice()) {
            return vec![(i, sign)];
        }
        let v = self.straighten(image.into_boxed_slice());
        v.iter().map(|&(i, c)| (i, c * sign)).collect()
    }

    /// Expresses `e_T` for a column-sorted, non-standard `T` in the basis.
    fn straighten(&mut self, key: Box<[u8]>) -> Rc<BasisVector> {
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut stack = vec![self.frame(key)];
        loop {
            let top = stack.last_mut().expect("stack is nonempty");
            if top.next < top.terms.len() {
                let (coef, child) = &top.terms[top.next];
                let coef = *coef;
                if let Some(&i) = self.index.get(child) {
                    add(&mut top.acc, i, coef);
                } else if let Some(v) = self.memo.get(child) {
                    for &(i, c) in v.iter() {
                        add(&mut top.acc, i, coef * c);
                    }
                } else {
                    let child = child.clone();
                    assert!(
                        stack.iter().all(|f| f.key != child),
                        "straightening revisited a tableau; the Garnir order is broken"
                    );
                    let frame = self.frame(child);
                    stack.push(frame);
                    continue;
                }
                top.next += 1;
                continue;
            }
            let done = stack.pop().expect("stack is nonempty");
            let mut v: BasisVector = done.acc.into_iter().filter(|&(_, c)| c != 0).collect();
            v.sort_unstable();
            let v = Rc::new(v);
            self.memo.insert(done.key, v.clone());
            if stack.is_empty() {
                return v;
            }
        }
    }

    fn frame(&mut self, key: Box<[u8]>) -> Frame {
        let (i, j) = match self.rng.as_mut() {
            None => self.layout.first_descent(&key),
            Some(rng) => {
                let all: Vec<_> = self.layout.descents(&key).collect();
                (!all.is_empty()).then(|| all[rng.gen_range(0..all.len())])
            }
        }
        .expect("a non-standard column-sorted tableau has a row descent");
        let terms = self.garnir_terms(&key, i, j);
        Frame { key, terms, next: 0, acc: HashMap::new() }
    }

    /// `e_T = -Σ sgn(π) e_{πT}` over the non-identity coset representatives
    /// of the Garnir element for the descent at `(i, j)`, each term column
    /// sorted.
    fn garnir_terms(&self, t: &[u8], i: usize, j: usize) -> Vec<(i64, Box<[u8]>)> {
        let l = &self.layout;
        let positions: Vec<usize> = (i..l.col_len[j])
            .map(|r| l.at(r, j))
            .chain((0..=i).map(|r| l.at(r, j + 1)))
            .collect();
        let a_len = l.col_len[j] - i;
        let values: Vec<u8> = positions.iter().map(|&p| t[p]).collect();
        let base_sign = sorting_sign(&values);
        let mut pool = values.clone();
        pool.sort_unstable();

        let mut terms = Vec::new();
        let mut chosen: Vec<usize> = (0..a_len).collect();
        loop {
            let mut w: Vec<u8> = chosen.iter().map(|&c| pool[c]).collect();
            if w[..] != values[..a_len] {
                w.extend((0..pool.len()).filter(|c| !chosen.contains(c)).map(|c| pool[c]));
                let mut child = t.to_vec();
                for (&p, &x) in positions.iter().zip(&w) {
                    child[p] = x;
                }
                let mut sign = base_sign * sorting_sign(&w);
                for col in [j, j + 1] {
                    let seg = &mut child[l.col_start[col]..l.col_start[col] + l.col_len[col]];
                    sign *= sorting_sign(seg);
                    seg.sort_unstable();
                }
                terms.push((-sign, child.into_boxed_slice()));
            }
            if !next_combination(&mut chosen, pool.len()) {
                break;
            }
        }
        terms
    }
}

fn add(acc: &mut HashMap<usize, i64>, i: usize, c: i64) {
    let e = acc.entry(i).or_insert(0);
    *e = e.checked_add(c).expect("straightening coefficient overflow");
}

/// Advances a sorted index set to the next one in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Coefficients of `σ · e_t` in the standard polytabloid basis.
pub fn act_and_straighten(sigma: &Permutation, t: &StandardTableau) -> BasisVector {
    Straightener::new(t.shape(), GarnirChoice::First).act(sigma, t)
}

/// Integral matrices of `a = (1,2)` and `b = (1,…,n)` on `S^λ`.
#[derive(Debug, Clone)]
pub struct SpechtRep {
    pub lambda: Partition,
    pub k: usize,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub basis: Vec<StandardTableau>,
}

impl SpechtRep {
    pub fn matrix(&self, g: Generator) -> &IntMatrix {
        match g {
            Generator::A => &self.a,
            Generator::B => &self.b,
        }
    }

    pub fn assignment(&self) -> BTreeMap<Generator, IntMatrix> {
        BTreeMap::from([(Generator::A, self.a.clone()), (Generator::B, self.b.clone())])
    }

    /// True iff every relator of the presentation evaluates to the identity.
    pub fn satisfies_relators(&self) -> bool {
        let Ok(pres) = presentation_for(self.lambda.n()) else {
            return true;
        };
        let assign = self.assignment();
        pres.relators
            .iter()
            .all(|w| evaluate_word(w, &assign).map(|m| m.is_identity()).unwrap_or(false))
    }

    /// Writes `<lambda>.a.txt` and `<lambda>.b.txt` under `dir`.
    pub fn dump(&self, dir: &Path, sparse: bool) -> Result<Vec<PathBuf>, LinalgError> {
        std::fs::create_dir_all(dir)?;
        let stem = self.lambda.parts().iter().map(usize::to_string).collect::<Vec<_>>().join("_");
        let mut paths = Vec::new();
        for (name, m) in [("a", &self.a), ("b", &self.b)] {
            let path = dir.join(format!("{stem}.{name}.txt"));
            m.write_text(BufWriter::new(std::fs::File::create(&path)?), sparse)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// Builds the representation; column `t` of each matrix is `g · e_t`.
pub fn generator_matrices(lambda: &Partition) -> SpechtRep {
    generator_matrices_with(lambda, GarnirChoice::First)
}

pub fn generator_matrices_with(lambda: &Partition, choice: GarnirChoice) -> SpechtRep {
    assert!(!lambda.is_empty(), "the empty partition has no Specht module");
    let n = lambda.n();
    let mut st = Straightener::new(lambda, choice);
    let basis = st.basis().to_vec();
    let k = basis.len();
    let build = |st: &mut Straightener, sigma: &Permutation| {
        let mut m = IntMatrix::zeros(k, k);
        for (col, t) in basis.iter().enumerate() {
            for (row, c) in st.act(sigma, t) {
                m.set(row, col, c);
            }
        }
        m
    };
    let a = if n >= 2 { build(&mut st, &Permutation::transposition_12(n)) } else { IntMatrix::identity(1) };
    let b = build(&mut st, &Permutation::long_cycle(n));
    SpechtRep { lambda: lambda.clone(), k, a, b, basis }
}

/// Tabloids of shape `λ`, `n! / ∏ λ_i!`.
pub fn tabloid_count(lambda: &Partition) -> u128 {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    fact(lambda.n()) / lambda.parts().iter().map(|&p| fact(p)).product::<u128>()
}

pub const DEFAULT_ORACLE_LIMIT: u128 = 100_000;

/// Matrix of `σ` on `S^λ`, computed inside the permutation module `M^λ` by
/// exact rational elimination, independently of straightening.
pub fn tabloid_oracle(lambda: &Partition, sigma: &Permutation) -> Result<IntMatrix, SpechtError> {
    tabloid_oracle_with_limit(lambda, sigma, DEFAULT_ORACLE_LIMIT)
}

pub fn tabloid_oracle_with_limit(
    lambda: &Partition,
    sigma: &Permutation,
    limit: u128,
) -> Result<IntMatrix, SpechtError> {
    let size = tabloid_count(lambda);
    if size > limit {
        return Err(SpechtError::TooLarge { lambda: lambda.clone(), size, limit });
    }
    let layout = Layout::new(lambda);
    let basis = standard_tableaux(lambda);
    let k = basis.len();

    // A tabloid is the row index of each value 1..n.
    let mut rows_of: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut system: Vec<Vec<BigRational>> = Vec::new();
    let mut put = |tabloid: Vec<u8>, col: usize, c: i64| {
        let r = *rows_of.entry(tabloid).or_insert_with(|| {
            system.push(vec![BigRational::zero(); 2 * k]);
            system.len() - 1
        });
        system[r][col] += BigRational::from_integer(BigInt::from(c));
    };
    for (s, t) in basis.iter().enumerate() {
        for (sign, filling) in column_group_orbit(&layout, &t.entries) {
            let mut tabloid = vec![0u8; lambda.n()];
            let mut moved = vec![0u8; lambda.n()];
            for (i, &len) in layout.rows.iter().enumerate() {
                for j in 0..len {
                    let v = filling[layout.at(i, j)] as usize - 1;
                    tabloid[v] = i as u8;
                    moved[sigma.apply(v)] = i as u8;
                }
            }
            put(tabloid, s, sign);
            put(moved, k + s, sign);
        }
    }

    // Gauss-Jordan on the first k columns.
    let mut pivot_rows = Vec::with_capacity(k);
    let mut r0 = 0;
    for c in 0..k {
        let Some(p) = (r0..system.len()).find(|&r| !system[r][c].is_zero()) else {
            return Err(SpechtError::Inconsistent(lambda.clone()));
        };
        system.swap(r0, p);
        let inv = system[r0][c].recip();
        for x in system[r0].iter_mut() {
            *x *= &inv;
        }
        let pivot = system[r0].clone();
        for (r, row) in system.iter_mut().enumerate() {
            if r != r0 && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    if system[r0..].iter().any(|row| row[k..].iter().any(|x| !x.is_zero())) {
        return Err(SpechtError::Inconsistent(lambda.clone()));
    }
    let mut m = IntMatrix::zeros(k, k);
    for (row, &r) in pivot_rows.iter().enumerate() {
        for col in 0..k {
            let x = &system[r][k + col];
            if !x.is_integer() {
                return Err(SpechtError::NotIntegral(lambda.clone()));
            }
            let v = x.to_integer().to_i64().filter(|v| v.abs() < i64::MAX);
            m.set(row, col, v.ok_or(LinalgError::Overflow("tabloid oracle"))?);
        }
    }
    Ok(m)
}

/// All `(sgn π, πT)` for `π` in the column group of `T`.
fn column_group_orbit(layout: &Layout, t: &[u8]) -> Vec<(i64, Vec<u8>)> {
    let mut out = vec![(1i64, t.to_vec())];
    for col in 0..layout.col_len.len() {
        let start = layout.col_start[col];
        let len = layout.col_len[col];
        let mut next = Vec::with_capacity(out.len());
        for (sign, filling) in &out {
            for perm in permutations(len) {
                let mut f = filling.clone();
                for (i, &src) in perm.iter().enumerate() {
                    f[start + i] = filling[start + src];
                }
                next.push((sign * sorting_sign(&perm), f));
            }
        }
        out = next;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    let mut cur: Vec<usize> = (0..n).collect();
    // Lexicographic successor.
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn tableau_enumeration() {
        let t = standard_tableaux(&p("2,1"));
        assert_eq!(t.len(), 2);
        // Column words 123 and 132.
        assert_eq!(t[0].rows(), vec![vec![1, 3], vec![2]]);
        assert_eq!(t[1].rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t[0].to_string(), "1,3/2");
        assert_eq!(standard_tableaux(&p("5")).len(), 1);
        assert_eq!(standard_tableaux(&p("3,1,1")).len(), 6);
        for n in 1..=8 {
            for lambda in Partition::all(n) {
                let tabs = standard_tableaux(&lambda);
                assert_eq!(tabs.len() as u64, lambda.standard_tableau_count());
                assert!(tabs.windows(2).all(|w| w[0].column_word() < w[1].column_word()));
            }
        }
    }

    #[test]
    fn from_rows_validates() {
        assert!(StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::from_rows(vec![vec![2, 1], vec![3]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 2], vec![2]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![2, 3], vec![1]]).is_err());
    }

    #[test]
    fn identity_and_column_stabilizer() {
        let lambda = p("3,2");
        let basis = standard_tableaux(&lambda);
        for (i, t) in basis.iter().enumerate() {
            assert_eq!(act_and_straighten(&Permutation::identity(5), t), vec![(i, 1)]);
        }
        // Swapping the two entries of the first column negates e_t.
        let t = StandardTableau::from_rows(vec![vec![1, 2, 5], vec![3, 4]]).unwrap();
        let i = basis.iter().position(|s| *s == t).unwrap();
        let swap = Permutation::cycle(5, &[1, 3]);
        assert_eq!(act_and_straighten(&swap, &t), vec![(i, -1)]);
    }

    #[test]
    fn small_representations() {
        let rep = generator_matrices(&p("4"));
        assert_eq!(rep.a, IntMatrix::identity(1));
        assert_eq!(rep.b, IntMatrix::identity(1));
        let rep = generator_matrices(&p("1,1"));
        assert_eq!(rep.a, IntMatrix::from_rows(&[vec![-1]]));
        let rep = generator_matrices(&p("2,1"));
        assert_eq!(rep.k, 2);
        assert!(rep.a.checked_mul(&rep.a).unwrap().is_identity());
        let b3 = rep.b.checked_mul(&rep.b).unwrap().checked_mul(&rep.b).unwrap();
        assert!(b3.is_identity());
        let ab = rep.a.checked_mul(&rep.b).unwrap();
        assert!(ab.checked_mul(&ab).unwrap().is_identity());
    }

    #[test]
    fn oracle_agrees_up_to_six() {
        for n in 2..=6 {
            for lambda in Partition::all(n) {
                let rep = generator_matrices(&lambda);
                let a = tabloid_oracle(&lambda, &Permutation::transposition_12(n)).unwrap();
                let b = tabloid_oracle(&lambda, &Permutation::long_cycle(n)).unwrap();
                assert_eq!(a, rep.a, "A for {lambda}");
                assert_eq!(b, rep.b, "B for {lambda}");
            }
        }
    }

    #[test]
    fn oracle_trivial_and_sign() {
        let sigma = Permutation::cycle(5, &[1, 4, 2]);
        assert_eq!(tabloid_oracle(&p("5"), &sigma).unwrap(), IntMatrix::identity(1));
        let odd = Permutation::cycle(5, &[2, 5]);
        assert_eq!(tabloid_oracle(&p("1^5"), &odd).unwrap(), IntMatrix::from_rows(&[vec![-1]]));
        assert!(tabloid_oracle_with_limit(&p("2,2"), &Permutation::cycle(4, &[2, 4]), 3).is_err());
    }

    #[test]
    fn representations_are_unimodular_and_satisfy_relators() {
        for n in 2..=7 {
            for lambda in Partition::all(n) {
                let rep = generator_matrices(&lambda);
                assert_eq!(rep.k as u64, lambda.standard_tableau_count());
                assert!(rep.a.is_unimodular() && rep.b.is_unimodular(), "{lambda}");
                assert!(rep.satisfies_relators(), "{lambda}");
            }
        }
    }

    #[test]
    fn straightening_is_order_independent() {
        for lambda in [p("3,2,1"), p("2,2,2"), p("4,2,1"), p("3,3,1")] {
            let first = generator_matrices(&lambda);
            for seed in 0..3 {
                let random = generator_matrices_with(&lambda, GarnirChoice::Random(seed));
                assert_eq!(first.a, random.a);
                assert_eq!(first.b, random.b);
            }
        }
    }

    #[test]
    fn dump_writes_both_generators() {
        let dir = tempfile::tempdir().unwrap();
        let rep = generator_matrices(&p("2,1"));
        let paths = rep.dump(dir.path(), false).unwrap();
        assert_eq!(paths.len(), 2);
        let back = IntMatrix::read_text(std::io::BufReader::new(std::fs::File::open(&paths[1]).unwrap())).unwrap();
        assert_eq!(back, rep.b);
    }
}
