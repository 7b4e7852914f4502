//! Cross-module identities: closed forms against the definition-level
//! oracle, and the structural invariants tying reduction, rank, and
//! splitting types together.

use kn_divisors::{
    dhar_reduce, equivalent, general_dhar_reduce, rank, rank_oracle, reduce_at, reduced_form,
    splitting_type, Divisor, GenericDivisor, GenericGraph, SplittingType,
};

fn d(coeffs: &[i64]) -> Divisor {
    Divisor::new(coeffs.to_vec()).unwrap()
}

// Every divisor on K_4 with coefficients in a small box.
fn k4_box(lo: i64, hi: i64) -> impl Iterator<Item = Divisor> {
    let range = move || lo..=hi;
    range().flat_map(move |a| {
        range().flat_map(move |b| {
            range().flat_map(move |c| range().map(move |e| d(&[a, b, c, e])))
        })
    })
}

#[test]
fn generic_reduction_specializes_to_kn_exhaustively_on_k4() {
    let k4 = GenericGraph::complete(4).unwrap();
    for dv in k4_box(-2, 3) {
        let fast = reduced_form(&dv).unwrap();
        let oracle =
            general_dhar_reduce(&k4, &GenericDivisor::new(dv.coeffs().to_vec()), 4).unwrap();
        assert_eq!(oracle.coeffs(), fast.coeffs(), "{dv}");
    }
}

#[test]
fn dhar_fixed_points_are_exactly_the_parking_divisors() {
    // Lemma agreement on K_4: effective-away inputs are unchanged by
    // burning iff the parking predicate holds.
    for a in 0..=8i64 {
        for b in 0..=8i64 {
            for c in 0..=8i64 {
                for tail in [-3i64, 0, 5] {
                    let dv = d(&[a, b, c, tail]);
                    let (out, trace) = dhar_reduce(&dv).unwrap();
                    assert_eq!(dv.is_vn_reduced(), trace.is_empty(), "{dv}");
                    assert!(out.is_vn_reduced());
                }
            }
        }
    }
}

#[test]
fn line_is_equivalent_to_n_chips_on_any_vertex() {
    for n in 2..=6usize {
        let line = Divisor::line(n).unwrap();
        for j in 1..=n {
            let mut coeffs = vec![0i64; n];
            coeffs[j - 1] = n as i64;
            assert!(equivalent(&line, &Divisor::new(coeffs).unwrap()).unwrap());
        }
    }
}

#[test]
fn reduce_at_agrees_with_the_oracle() {
    let cases = [
        (3usize, vec![2i64, 0, 1], 2usize),
        (5, vec![1, 1, 1, 1, 1], 1),
        (4, vec![-2, 5, 0, 3], 3),
    ];
    for (n, coeffs, q) in cases {
        let graph = GenericGraph::complete(n).unwrap();
        let fast = reduce_at(&Divisor::new(coeffs.clone()).unwrap(), q).unwrap();
        let oracle = general_dhar_reduce(&graph, &GenericDivisor::new(coeffs), q).unwrap();
        assert_eq!(oracle.coeffs(), fast.coeffs());
    }
}

#[test]
fn rank_oracle_confirms_derived_rank_examples() {
    let k5 = GenericGraph::complete(5).unwrap();
    assert_eq!(
        rank_oracle(&k5, &GenericDivisor::new(vec![1, 1, 1, 1, 1])).unwrap(),
        2
    );
    assert_eq!(rank(&Divisor::line(5).unwrap()).unwrap(), 2);
    let k3 = GenericGraph::complete(3).unwrap();
    let dv = d(&[1, 0, 0]);
    assert_eq!(
        rank_oracle(&k3, &GenericDivisor::new(dv.coeffs().to_vec())).unwrap(),
        rank(&dv).unwrap()
    );
}

#[test]
fn splitting_type_shift_equivariance() {
    let line = Divisor::line(5).unwrap();
    let cases = [d(&[0, 2, 0, 6, 1]), d(&[-1, 3, 0, 2, 2]), d(&[0, 0, 0, 0, 0])];
    for dv in cases {
        let base = splitting_type(&dv).unwrap();
        for m in -3..=3i64 {
            let shifted = dv.linear_combination(1, &line, m).unwrap();
            let expected: Vec<i64> = base.entries().iter().map(|&e| e + m).collect();
            assert_eq!(
                splitting_type(&shifted).unwrap(),
                SplittingType::new(expected).unwrap(),
                "{dv} shifted by {m}L"
            );
        }
    }
}

#[test]
fn equivalent_agrees_with_the_generic_oracle_on_random_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
    let k5 = GenericGraph::complete(5).unwrap();
    for _ in 0..1000 {
        let a: Vec<i64> = (0..5).map(|_| rng.gen_range(-4..=6)).collect();
        let b: Vec<i64> = (0..5).map(|_| rng.gen_range(-4..=6)).collect();
        let fast = equivalent(
            &Divisor::new(a.clone()).unwrap(),
            &Divisor::new(b.clone()).unwrap(),
        )
        .unwrap();
        let slow = kn_divisors::generic_equivalent(
            &k5,
            &GenericDivisor::new(a),
            &GenericDivisor::new(b),
        )
        .unwrap();
        assert_eq!(fast, slow);
    }
}

#[test]
fn splitting_identity_result_is_independent_of_sharding() {
    // Evaluating the family in two halves must reproduce the one-shot run.
    let family = kn_divisors::verify::concentrated_family(4);
    let line = Divisor::line(4).unwrap();
    let evaluate = |chunk: &[Divisor]| -> Vec<i64> {
        let mut out = Vec::new();
        for dv in chunk {
            for k in -6..=6i64 {
                out.push(rank(&dv.linear_combination(1, &line, k).unwrap()).unwrap());
            }
        }
        out
    };
    let whole = evaluate(&family);
    let (left, right) = family.split_at(family.len() / 2);
    let mut pieces = evaluate(left);
    pieces.extend(evaluate(right));
    assert_eq!(whole, pieces);
}
