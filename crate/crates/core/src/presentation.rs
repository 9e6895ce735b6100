//! Finite presentations of `Σ_n` on two generators and evaluation of relator
//! words in matrix representations.
//!
//! For `n ≥ 3` the generators are `a ↦ (1,2)` and `b ↦ (1,2,…,n)` with relators
//! `a²`, `bⁿ`, `(ab)^{n-1}` and `(a b^j a b^{n-j})²` for `2 ≤ j ≤ n/2`. For
//! `n = 2` the group is generated by `a` alone with the single relator `a²`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{IntMatrix, LinalgError};
use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("no presentation for n = {0}; the group is trivial for n < 2")]
    DegreeTooSmall(usize),
    #[error("generator {0} has no assigned matrix")]
    Unassigned(Generator),
    #[error("assigned matrices must be square of one common size")]
    ShapeMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::A => "a",
            Generator::B => "b",
        })
    }
}

/// A positive word in the generators, powers expanded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn power(&self, e: usize) -> Word {
        Word(self.0.repeat(e))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    fn letter(g: Generator) -> Word {
        Word(vec![g])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    /// Run-length form, e.g. `ab^2ab^3ab^2ab^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == g).count();
            if run == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n: usize,
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// The number of relators `r`.
    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Permutation images of the generators.
    pub fn generator_permutation(&self, g: Generator) -> Permutation {
        match g {
            Generator::A => Permutation::transposition_12(self.n),
            Generator::B => Permutation::long_cycle(self.n),
        }
    }
}

pub fn presentation_for(n: usize) -> Result<Presentation, PresentationError> {
    use Generator::{A, B};
    if n < 2 {
        return Err(PresentationError::DegreeTooSmall(n));
    }
    let a = Word::letter(A);
    let b = Word::letter(B);
    if n == 2 {
        return Ok(Presentation { n, generators: vec![A], relators: vec![a.power(2)] });
    }
    let mut relators = vec![a.power(2), b.power(n), a.concat(&b).power(n - 1)];
    for j in 2..=n / 2 {
        let w = a.concat(&b.power(j)).concat(&a).concat(&b.power(n - j));
        relators.push(w.power(2));
    }
    Ok(Presentation { n, generators: vec![A, B], relators })
}

/// Ordered product of the assigned matrices, left to right in letter order.
/// The empty word evaluates to the identity of the common size.
pub fn evaluate_word(
    word: &Word,
    assignment: &BTreeMap<Generator, IntMatrix>,
) -> Result<IntMatrix, PresentationError> {
    let dim = match assignment.values().next() {
        Some(m) => m.rows(),
        None if word.is_empty() => 0,
        None => return Err(PresentationError::Unassigned(word.letters()[0])),
    };
    if assignment.values().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(PresentationError::ShapeMismatch);
    }
    let mut acc = IntMatrix::identity(dim);
    for g in word.letters() {
        let m = assignment.get(g).ok_or(PresentationError::Unassigned(*g))?;
        acc = acc.checked_mul(m)?;
    }
    Ok(acc)
}

/// How a word `x_1 … x_m` is read as a product of permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    /// `x_1 ∘ x_2 ∘ … ∘ x_m`: the rightmost letter acts first. This is the
    /// convention used throughout the crate, matching `ρ(gh) = ρ(g)ρ(h)` for
    /// matrices acting on column vectors.
    RightmostFirst,
    /// `x_m ∘ … ∘ x_1`: the leftmost letter acts first.
    LeftmostFirst,
}

pub fn evaluate_permutation(
    word: &Word,
    presentation: &Presentation,
    convention: Composition,
) -> Permutation {
    let mut acc = Permutation::identity(presentation.n);
    for &g in word.letters() {
        let x = presentation.generator_permutation(g);
        acc = match convention {
            Composition::RightmostFirst => acc.compose(&x),
            Composition::LeftmostFirst => x.compose(&acc),
        };
    }
    acc
}

/// True iff every relator of the presentation for `n` evaluates to the
/// identity permutation under `convention`.
pub fn relator_check(n: usize, convention: Composition) -> bool {
    match presentation_for(n) {
        Ok(pres) => pres
            .relators
            .iter()
            .all(|w| evaluate_permutation(w, &pres, convention).is_identity()),
        Err(_) => false,
    }
}
