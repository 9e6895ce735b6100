//! Dense Smith normal form.
//!
//! The elimination runs first on checked `i64` entries and restarts on
//! arbitrary-precision integers if anything overflows.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ElemDivisors, IntMatrix};

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Nearest-integer quotient `a / b`, `b != 0`.
    fn round_div(a: &Self, b: &Self) -> Result<Self, Overflow>;
    /// `self -= q * b`
    fn sub_mul(&mut self, q: &Self, b: &Self) -> Result<(), Overflow>;
    fn add(&mut self, b: &Self) -> Result<(), Overflow>;
    /// `self | other` for nonzero `self`.
    fn divides(&self, other: &Self) -> bool;
    fn abs_big(&self) -> BigUint;
}

impl Scalar for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn round_div(a: &Self, b: &Self) -> Result<Self, Overflow> {
        let (a, b) = (*a as i128, *b as i128);
        let mut q = a / b;
        let r = a - q * b;
        if 2 * r.abs() > b.abs() {
            q += r.signum() * b.signum();
        }
        i64::try_from(q).map_err(|_| Overflow)
    }
    fn sub_mul(&mut self, q: &Self, b: &Self) -> Result<(), Overflow> {
        let prod = q.checked_mul(*b).ok_or(Overflow)?;
        *self = self.checked_sub(prod).ok_or(Overflow)?;
        Ok(())
    }
    fn add(&mut self, b: &Self) -> Result<(), Overflow> {
        *self = self.checked_add(*b).ok_or(Overflow)?;
        Ok(())
    }
    fn divides(&self, other: &Self) -> bool {
        (*other as i128) % (*self as i128) == 0
    }
    fn abs_big(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn round_div(a: &Self, b: &Self) -> Result<Self, Overflow> {
        let (mut q, r) = a.div_rem(b);
        if (r.abs() * 2u32) > b.abs() {
            q += r.signum() * b.signum();
        }
        Ok(q)
    }
    fn sub_mul(&mut self, q: &Self, b: &Self) -> Result<(), Overflow> {
        *self -= q * b;
        Ok(())
    }
    fn add(&mut self, b: &Self) -> Result<(), Overflow> {
        *self += b;
        Ok(())
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn abs_big(&self) -> BigUint {
        self.magnitude().clone()
    }
}

/// Nonzero diagonal of the Smith normal form of `m`.
///
/// Pivots on the smallest nonzero absolute value of the remaining block and
/// re-checks that the pivot divides the whole block before accepting it, so the
/// output is a divisibility chain.
pub fn smith_elementary_divisors(m: &IntMatrix) -> ElemDivisors {
    if let Some(d) = smith_elementary_divisors_i64(m) {
        return d;
    }
    ElemDivisors::new(
        eliminate::<BigInt>(m, Pivoting::Markowitz).expect("arbitrary precision elimination cannot overflow"),
    )
}

/// The same elimination on machine integers only; `None` if an entry would
/// overflow.
pub fn smith_elementary_divisors_i64(m: &IntMatrix) -> Option<ElemDivisors> {
    eliminate::<i64>(m, Pivoting::FirstUnit)
        .or_else(|_| eliminate::<i64>(m, Pivoting::Markowitz))
        .ok()
        .map(ElemDivisors::new)
}

#[derive(Clone, Copy)]
enum Pivoting {
    /// Stop the search at the first unit.
    FirstUnit,
    /// Among entries of least absolute value, minimize fill-in.
    Markowitz,
}

fn eliminate<T: Scalar>(m: &IntMatrix, pivoting: Pivoting) -> Result<Vec<BigUint>, Overflow> {
    let cols = m.cols();
    let mut rows: Vec<Vec<T>> = (0..m.rows())
        .filter(|&i| m.row(i).iter().any(|&x| x != 0))
        .map(|i| m.row(i).iter().map(|&x| T::from_i64(x)).collect())
        .collect();
    let mut divisors = Vec::new();

    while !rows.is_empty() {
        let (mut r, mut c) = smallest_entry(&rows, pivoting).expect("nonzero rows remain");
        loop {
            // Clear column c by row operations.
            let support: Vec<usize> = (0..cols).filter(|&j| !rows[r][j].is_zero()).collect();
            let pivot_row = rows[r].clone();
            let pivot = pivot_row[c].clone();
            let mut remainder = false;
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let q = T::round_div(&row[c], &pivot)?;
                for &j in &support {
                    row[j].sub_mul(&q, &pivot_row[j])?;
                }
                remainder |= !row[c].is_zero();
            }
            if remainder {
                // The smallest remainder in the column becomes the next pivot.
                r = (0..rows.len())
                    .filter(|&k| k != r && !rows[k][c].is_zero())
                    .min_by(|&a, &b| rows[a][c].cmp_abs(&rows[b][c]))
                    .expect("a remainder exists");
                continue;
            }

            // Column c is clean, so column operations only touch row r.
            let pivot = rows[r][c].clone();
            let mut smallest: Option<usize> = None;
            for j in 0..cols {
                if j == c || rows[r][j].is_zero() {
                    continue;
                }
                let q = T::round_div(&rows[r][j], &pivot)?;
                let mut e = rows[r][j].clone();
                e.sub_mul(&q, &pivot)?;
                rows[r][j] = e;
                if !rows[r][j].is_zero()
                    && smallest.is_none_or(|s| rows[r][j].cmp_abs(&rows[r][s]) == Ordering::Less)
                {
                    smallest = Some(j);
                }
            }
            if let Some(j) = smallest {
                c = j;
                continue;
            }

            // Divisibility check on the rest of the block.
            if !pivot.is_unit() {
                let offender = (0..rows.len())
                    .find(|&i| i != r && rows[i].iter().any(|x| !x.is_zero() && !pivot.divides(x)));
                if let Some(i) = offender {
                    let (src, dst) = if i < r {
                        let (a, b) = rows.split_at_mut(r);
                        (&a[i], &mut b[0])
                    } else {
                        let (a, b) = rows.split_at_mut(i);
                        (&b[0], &mut a[r])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        d.add(s)?;
                    }
                    continue;
                }
            }
            break;
        }
        divisors.push(rows[r][c].abs_big());
        rows.swap_remove(r);
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    }
    Ok(divisors)
}

/// Entry of least absolute value. Under `Markowitz`, ties go to the least
/// `(row nnz - 1) * (col nnz - 1)`.
fn smallest_entry<T: Scalar>(rows: &[Vec<T>], pivoting: Pivoting) -> Option<(usize, usize)> {
    let cols = rows.first()?.len();
    let (row_nnz, col_nnz) = match pivoting {
        Pivoting::FirstUnit => (Vec::new(), Vec::new()),
        Pivoting::Markowitz => {
            let mut col_nnz = vec![0usize; cols];
            let mut row_nnz = Vec::with_capacity(rows.len());
            for row in rows {
                let mut c = 0;
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        col_nnz[j] += 1;
                        c += 1;
                    }
                }
                row_nnz.push(c);
            }
            (row_nnz, col_nnz)
        }
    };
    let cost = |i: usize, j: usize| match pivoting {
        Pivoting::FirstUnit => 0,
        Pivoting::Markowitz => (row_nnz[i] - 1) * (col_nnz[j] - 1),
    };
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let c = cost(i, j);
            let better = match best {
                None => true,
                Some((bi, bj, bc)) => match x.cmp_abs(&rows[bi][bj]) {
                    Ordering::Less => true,
                    Ordering::Equal => c < bc,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((i, j, c));
                if c == 0 && x.is_unit() {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divs(rows: &[Vec<i64>]) -> Vec<u64> {
        smith_elementary_divisors(&IntMatrix::from_rows(rows))
            .divisors()
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(divs(&[vec![2]]), vec![2]);
        assert!(divs(&[vec![0]]).is_empty());
        assert_eq!(divs(&[vec![6, 0], vec![0, 4]]), vec![2, 12]);
        assert!(divs(&[]).is_empty());
        assert_eq!(divs(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        let m = IntMatrix::from_rows(&[vec![big, 0], vec![0, big + 2]]);
        let d = smith_elementary_divisors(&m);
        // gcd(2^40, 2^40 + 2) = 2; lcm = 2^40 (2^40 + 2) / 2
        let expected_last = BigUint::from(1u64 << 40) * BigUint::from((1u64 << 40) + 2) / 2u32;
        assert_eq!(d.divisors(), &[BigUint::from(2u32), expected_last]);
    }
}
