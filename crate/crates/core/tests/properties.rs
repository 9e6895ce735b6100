use num_bigint::BigUint;
use proptest::prelude::*;

use specht_coho::linalg::{exact_rank, p_part_elementary_divisors, rank_mod_p, smith_elementary_divisors, IntMatrix};
use specht_coho::partition::{primes_up_to, Partition};
use specht_coho::presentation::{evaluate_permutation, evaluate_word, presentation_for, Composition, Generator, Word};
use specht_coho::specht::{generator_matrices, tabloid_oracle};

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        let all = Partition::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |data| IntMatrix::from_vec(r, c, data).unwrap())
    })
}

/// Row operations `(target, source, factor)` or swaps (`factor == 0`).
fn apply_row_ops(m: &IntMatrix, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = m.clone();
    let r = m.rows();
    for &(t, s, f) in ops {
        let (t, s) = (t % r, s % r);
        if t == s {
            continue;
        }
        for j in 0..m.cols() {
            let (a, b) = (m.get(t, j), m.get(s, j));
            if f == 0 {
                m.set(t, j, b);
                m.set(s, j, a);
            } else {
                m.set(t, j, a + f * b);
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_is_an_involution(lambda in partition_strategy(14)) {
        let c = lambda.conjugate();
        prop_assert_eq!(c.n(), lambda.n());
        prop_assert_eq!(c.conjugate(), lambda.clone());
        prop_assert_eq!(c.len(), lambda.part(0));
    }

    #[test]
    fn successors_and_predecessors_are_inverse(lambda in partition_strategy(12)) {
        for mu in lambda.successors() {
            prop_assert_eq!(mu.n(), lambda.n() + 1);
            prop_assert!(mu.predecessors().contains(&lambda));
        }
        for mu in lambda.predecessors() {
            prop_assert!(mu.successors().contains(&lambda));
        }
    }

    #[test]
    fn core_and_weight_account_for_size(lambda in partition_strategy(16), p in prop::sample::select(vec![2usize, 3, 5, 7])) {
        let core = lambda.p_core(p);
        prop_assert_eq!(core.n() + p * lambda.p_weight(p), lambda.n());
        prop_assert_eq!(core.p_core(p), core.clone());
    }

    #[test]
    fn standard_tableau_count_sums_to_factorial(n in 1usize..=9) {
        let total: u64 = Partition::all(n).iter().map(|l| l.standard_tableau_count().pow(2)).sum();
        prop_assert_eq!(total, (1..=n as u64).product::<u64>());
    }

    #[test]
    fn smith_form_is_invariant_under_row_and_column_operations(
        m in matrix_strategy(7, 9),
        row_ops in prop::collection::vec((0usize..7, 0usize..7, -3i64..=3), 0..12),
        col_ops in prop::collection::vec((0usize..7, 0usize..7, -3i64..=3), 0..12),
    ) {
        let before = smith_elementary_divisors(&m);
        let moved = apply_row_ops(&m, &row_ops);
        let moved = apply_row_ops(&moved.transpose(), &col_ops).transpose();
        prop_assert_eq!(smith_elementary_divisors(&moved), before);
    }

    #[test]
    fn p_parts_match_smith_form(m in matrix_strategy(12, 9)) {
        let dense = smith_elementary_divisors(&m);
        let rank = dense.rank();
        prop_assert_eq!(exact_rank(&m), rank);
        for p in primes_up_to(13) {
            let part = p_part_elementary_divisors(&m, p, rank, 1).unwrap();
            let mut got = part.valuations.clone();
            got.sort_unstable();
            prop_assert_eq!(got, dense.valuations(p), "p = {}", p);
        }
    }

    #[test]
    fn rank_mod_p_is_at_most_rational_rank(m in matrix_strategy(10, 20), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let r = exact_rank(&m);
        prop_assert!(rank_mod_p(&m, p) <= r);
        let divisible = smith_elementary_divisors(&m).p_rank(p);
        prop_assert_eq!(rank_mod_p(&m, p), r - divisible);
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(
        lambda in partition_strategy(5).prop_filter("n >= 2", |l| l.n() >= 2),
        u in prop::collection::vec(prop::bool::ANY, 0..8),
        v in prop::collection::vec(prop::bool::ANY, 0..8),
    ) {
        let word = |bits: &[bool]| Word(bits.iter().map(|&b| if b { Generator::A } else { Generator::B }).collect());
        let (u, v) = (word(&u), word(&v));
        let rep = generator_matrices(&lambda);
        let assignment = rep.assignment();
        let uv = evaluate_word(&u.concat(&v), &assignment).unwrap();
        let product = evaluate_word(&u, &assignment).unwrap().checked_mul(&evaluate_word(&v, &assignment).unwrap()).unwrap();
        prop_assert_eq!(&uv, &product);
        let pres = presentation_for(lambda.n()).unwrap();
        let sigma = evaluate_permutation(&u.concat(&v), &pres, Composition::RightmostFirst);
        prop_assert_eq!(uv, tabloid_oracle(&lambda, &sigma).unwrap());
    }
}

#[test]
fn elementary_divisors_of_a_diagonal_matrix() {
    let m = IntMatrix::diagonal(&[4, 6, 0]);
    let d = smith_elementary_divisors(&m);
    assert_eq!(d.divisors(), &[BigUint::from(2u32), BigUint::from(12u32)]);
}
