//! Verification harness: pits the closed-form rank and splitting-type
//! machinery against the definition-level oracle and the identities that
//! must hold between modules. Shared by the `verify` CLI command and the
//! acceptance suite.
//!
//! Every suite is deterministic under a fixed seed, and results do not
//! depend on how a caller shards the input space.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::Divisor;
use crate::enumerate::{enumerate_splitting_types, is_feasible_splitting, witness_divisor};
use crate::error::Result;
use crate::oracle::{general_dhar_reduce, rank_oracle, GenericDivisor, GenericGraph};
use crate::rank::{rank, rank_from_splitting, rank_nonspecial_check, riemann_roch_residual, splitting_type};
use crate::reduce::reduced_form;

const MAX_REPORTED_FAILURES: usize = 5;

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, failure: Option<String>) {
        self.cases += 1;
        if let Some(msg) = failure {
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(msg);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            format!(
                "FAIL {} ({} cases, first counterexample: {})",
                self.name, self.cases, self.failures[0]
            )
        }
    }
}

// All permutations of 1..=n (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    heap(&mut items, k, &mut out);
    out
}

fn apply_perm(coeffs: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut out = vec![0; coeffs.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p - 1] = coeffs[i];
    }
    out
}

// Random divisor on K_n with entries in [lo, hi] and degree capped, so
// oracle calls stay inside their guard.
fn random_divisor(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, max_degree: i64) -> Divisor {
    loop {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if coeffs.iter().sum::<i64>() <= max_degree {
            return Divisor::new(coeffs).unwrap();
        }
    }
}

/// All divisors on K_n with `0 <= a_i <= i-1`. Every member is
/// concentrated with minimum coefficient 0; there are `n!` of them
/// (120 on K_5).
pub fn concentrated_family(n: usize) -> Vec<Divisor> {
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::new();
    fn rec(prefix: &mut Vec<i64>, n: usize, out: &mut Vec<Divisor>) {
        if prefix.len() == n {
            out.push(Divisor::new(prefix.clone()).unwrap());
            return;
        }
        let hi = prefix.len() as i64;
        for a in 0..=hi {
            prefix.push(a);
            rec(prefix, n, out);
            prefix.pop();
        }
    }
    rec(&mut prefix, n, &mut out);
    out
}

/// Exhaustive K_4 agreement of the closed-form rank with the
/// Baker-Norine definition: every sorted parking prefix `(a_1,a_2,a_3)`
/// with `0 <= a_i <= i-1`, every `a_4` in `[-4, 14]`, and every
/// coefficient permutation.
pub fn rank_vs_oracle_exhaustive_k4() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("rank-oracle K_4 exhaustive");
    let k4 = GenericGraph::complete(4)?;
    let perms = permutations(4);
    for a1 in 0..=0i64 {
        for a2 in a1..=1 {
            for a3 in a2..=2 {
                for a4 in -4..=14i64 {
                    let base = [a1, a2, a3, a4];
                    for perm in &perms {
                        let coeffs = apply_perm(&base, perm);
                        let d = Divisor::new(coeffs.clone())?;
                        let formula = rank(&d)?;
                        let oracle = rank_oracle(&k4, &GenericDivisor::new(coeffs.clone()))?;
                        let failure = (formula != oracle)
                            .then(|| format!("{d}: formula {formula}, oracle {oracle}"));
                        report.record(failure);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Randomized agreement of the closed-form rank with the oracle on `K_n`.
pub fn rank_vs_oracle_sampled(n: usize, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(&format!("rank-oracle K_{n} sampled"));
    let graph = GenericGraph::complete(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let d = random_divisor(&mut rng, n, -3, 4, 12);
        let formula = rank(&d)?;
        let oracle = rank_oracle(&graph, &GenericDivisor::new(d.coeffs().to_vec()))?;
        let failure =
            (formula != oracle).then(|| format!("{d}: formula {formula}, oracle {oracle}"));
        report.record(failure);
    }
    Ok(report)
}

/// The defining identity of splitting types on the full family of
/// concentrated divisors on `K_n` with `0 <= a_i <= i-1`: for every
/// twist `k` in `[-6, 6]`, `rk(D + kL)` equals the splitting-type
/// evaluation, where the type is read off the super sorted form as
/// `e_i = a_i - i + 1`. A seeded sample of the family is additionally
/// spot-checked against the oracle for `k` in `[-2, 2]`.
///
/// The window `[-6, 6]` suffices because both sides are eventually linear
/// in `k`: for `k > max_i(-e_i) - 1` every term of the sum is active and
/// both sides grow by `n` per step (Riemann-Roch forces this on the rank
/// side), and for `k < -1 - max_i(e_i)` both sides are constant at `-1`.
/// With `a_1 = 0` on `K_n`, all entries lie in `[1-n, n-1]`, so `[-6, 6]`
/// crosses both thresholds for `n <= 5` and samples the linear tails.
pub fn splitting_identity(n: usize, spot_samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(&format!("splitting-identity K_{n}"));
    let family = concentrated_family(n);
    let line = Divisor::line(n)?;
    for d in &family {
        let s = splitting_type(d)?;
        if d.is_super_sorted() {
            // Theorem hypothesis holds directly: e_i = a_i - i + 1.
            let direct: Vec<i64> = d
                .coeffs()
                .iter()
                .enumerate()
                .map(|(idx, &a)| a - idx as i64)
                .collect();
            let direct = crate::rank::SplittingType::new(direct)?;
            report.record(
                (direct != s).then(|| format!("{d}: direct type {direct}, computed {s}")),
            );
        }
        for k in -6..=6i64 {
            let twisted = d.linear_combination(1, &line, k)?;
            let direct = rank(&twisted)?;
            let via_splitting = rank_from_splitting(&s, k)?;
            let failure = (direct != via_splitting).then(|| {
                format!("{d} at k = {k}: rank {direct}, splitting gives {via_splitting}")
            });
            report.record(failure);
        }
    }
    // Oracle spot check on a seeded sample of the same family.
    let graph = GenericGraph::complete(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spot_samples {
        let d = &family[rng.gen_range(0..family.len())];
        let s = splitting_type(d)?;
        for k in -2..=2i64 {
            let twisted = d.linear_combination(1, &line, k)?;
            let oracle = rank_oracle(&graph, &GenericDivisor::new(twisted.coeffs().to_vec()))?;
            let via_splitting = rank_from_splitting(&s, k)?;
            let failure = (oracle != via_splitting).then(|| {
                format!("{d} at k = {k}: oracle {oracle}, splitting gives {via_splitting}")
            });
            report.record(failure);
        }
    }
    Ok(report)
}

/// Riemann-Roch residual is zero on seeded random divisors across a range
/// of `n`, and the nonspecial shortcut always agrees with the rank when
/// it fires.
pub fn riemann_roch(ns: RangeInclusive<usize>, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("riemann-roch");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ns: Vec<usize> = ns.collect();
    for i in 0..samples {
        let n = ns[i % ns.len()];
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=10)).collect();
        let d = Divisor::new(coeffs)?;
        let residual = riemann_roch_residual(&d)?;
        let mut failure =
            (residual != 0).then(|| format!("{d} on K_{n}: residual {residual}"));
        if failure.is_none() {
            if let Some(forced) = rank_nonspecial_check(&d)? {
                let actual = rank(&d)?;
                if forced != actual {
                    failure = Some(format!(
                        "{d} on K_{n}: nonspecial check {forced}, rank {actual}"
                    ));
                }
            }
        }
        report.record(failure);
    }
    Ok(report)
}

/// Uniqueness of reduced representatives: translating by a random
/// Laplacian lattice vector never changes the reduced form, and the
/// generic-graph oracle agrees with the `K_n` specialization.
pub fn reduction_uniqueness(ns: &[usize], cases_per_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("reduction-uniqueness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &n in ns {
        let graph = GenericGraph::complete(n)?;
        for _ in 0..cases_per_n {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=8)).collect();
            let d = Divisor::new(coeffs.clone())?;
            let reduced = reduced_form(&d)?;

            // K_n Laplacian translate: (Lx)_i = n x_i - sum(x).
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let total: i64 = x.iter().sum();
            let translated: Vec<i64> = coeffs
                .iter()
                .zip(&x)
                .map(|(&a, &xi)| a + (n as i64) * xi - total)
                .collect();
            let translated = Divisor::new(translated)?;
            let reduced_translate = reduced_form(&translated)?;
            let mut failure = (reduced != reduced_translate).then(|| {
                format!("{d} vs translate {translated}: {reduced} != {reduced_translate}")
            });

            if failure.is_none() {
                let oracle =
                    general_dhar_reduce(&graph, &GenericDivisor::new(coeffs.clone()), n)?;
                if oracle.coeffs() != reduced.coeffs() {
                    failure = Some(format!(
                        "{d}: oracle reduction disagrees with K_n reduction"
                    ));
                }
            }
            report.record(failure);
        }
    }
    Ok(report)
}

/// Both directions of the feasibility classification: random splitting
/// types on `K_5` are always feasible, and every enumerated feasible type
/// round-trips through its witness divisor.
pub fn splitting_roundtrip(samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("splitting-roundtrip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-5..=10)).collect();
        let d = Divisor::new(coeffs)?;
        let s = splitting_type(&d)?;
        let failure =
            (!is_feasible_splitting(&s)).then(|| format!("{d}: infeasible type {s}"));
        report.record(failure);
    }
    for n in 2..=6usize {
        for degree in -15..=15i64 {
            for s in enumerate_splitting_types(n, degree)? {
                let witness = witness_divisor(&s)?;
                let round = splitting_type(&witness)?;
                let failure = (round != s || witness.degree()? != degree)
                    .then(|| format!("type {s} (n = {n}, d = {degree}): witness {witness} gives {round}"));
                report.record(failure);
            }
        }
    }
    Ok(report)
}

/// Computed splitting types always satisfy the gap-1 feasibility rule and
/// the sum rule; seeded random divisors on small `K_n`.
pub fn splitting_structure(samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("splitting-structure");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let n = 3 + i % 4;
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=10)).collect();
        let d = Divisor::new(coeffs)?;
        let s = splitting_type(&d)?;
        let sum_target = d.degree()? - (n as i64) * (n as i64 - 1) / 2;
        let mut failure = None;
        if !is_feasible_splitting(&s) {
            failure = Some(format!("{d}: infeasible type {s}"));
        } else if s.sum()? != sum_target {
            failure = Some(format!("{d}: sum {} != {sum_target}", s.sum()?));
        }
        report.record(failure);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_size_on_k5_is_120() {
        assert_eq!(concentrated_family(5).len(), 120);
        for d in concentrated_family(5) {
            assert!(d.is_concentrated());
            assert_eq!(d.coeffs()[0], 0);
        }
    }

    #[test]
    fn suites_pass_at_small_scale() {
        assert!(rank_vs_oracle_sampled(5, 20, 11).unwrap().passed());
        assert!(riemann_roch(3..=6, 40, 7).unwrap().passed());
        assert!(reduction_uniqueness(&[3, 4], 25, 3).unwrap().passed());
        assert!(splitting_structure(40, 5).unwrap().passed());
    }

    #[test]
    fn reports_are_seed_deterministic() {
        let a = riemann_roch(3..=5, 30, 42).unwrap();
        let b = riemann_roch(3..=5, 30, 42).unwrap();
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.failures, b.failures);
    }
}
