use std::fmt;

/// A permutation of `{1, …, n}`, stored 0-based as the image list.
///
/// Composition is function composition: `a.compose(&b)` maps `x` to `a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images; panics unless `images` is a bijection of `0..n`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
        }
        Permutation { images }
    }

    /// A cycle given with 1-based points, acting on `{1, …, n}`.
    pub fn cycle(n: usize, points: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &x) in points.iter().enumerate() {
            let y = points[(i + 1) % points.len()];
            images[x - 1] = y - 1;
        }
        Permutation::from_images(images)
    }

    /// The transposition `(1,2)`.
    pub fn transposition_12(n: usize) -> Self {
        Permutation::cycle(n, &[1, 2])
    }

    /// The long cycle `(1, 2, …, n)`.
    pub fn long_cycle(n: usize) -> Self {
        Permutation::cycle(n, &(1..=n).collect::<Vec<_>>())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|x| x + 1).collect();
        write!(f, "Perm{one_based:?}")
    }
}

/// Sign of the permutation sorting `values` (distinct) into increasing order.
pub fn sorting_sign<T: Ord>(values: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
