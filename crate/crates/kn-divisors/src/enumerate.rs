//! Feasibility, witnesses, and exhaustive generation of splitting types.
//!
//! A tuple arranged in non-increasing order is realizable on `K_n` iff
//! consecutive entries drop by at most 1. Each feasible tuple is then
//! determined by its leading entry and the set of positions where it
//! drops, which makes complete enumeration at fixed length and degree a
//! walk over `2^(n-1)` drop patterns.

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rank::SplittingType;

/// True iff the non-increasing arrangement has all gaps at most 1.
pub fn is_feasible_splitting(s: &SplittingType) -> bool {
    s.entries().windows(2).all(|w| w[0] <= w[1] + 1)
}

/// The super sorted concentrated divisor `a_i = e_i + i - 1` (entries
/// read in non-increasing order) whose splitting type is `s`.
pub fn witness_divisor(s: &SplittingType) -> Result<Divisor> {
    if !is_feasible_splitting(s) {
        return Err(Error::InfeasibleSplittingType(s.entries().to_vec()));
    }
    let coeffs: Result<Vec<i64>> = s
        .entries()
        .iter()
        .enumerate()
        .map(|(idx, &e)| e.checked_add(idx as i64).ok_or(Error::Overflow))
        .collect();
    let witness = Divisor::new(coeffs?)?;
    debug_assert!(witness.is_super_sorted());
    debug_assert!(witness.is_concentrated());
    Ok(witness)
}

const MAX_ENUMERATION_N: usize = 16;

/// All feasible splitting types of length `n` realized by divisors of
/// degree `d`, i.e. with entry sum `d - n(n-1)/2`. Complete,
/// duplicate-free, ordered lexicographically on the non-increasing
/// representation.
pub fn enumerate_splitting_types(n: usize, d: i64) -> Result<Vec<SplittingType>> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::GuardExceeded(format!(
            "enumerate_splitting_types supports at most {MAX_ENUMERATION_N} vertices (got {n})"
        )));
    }
    let n_i = n as i64;
    let target = d
        .checked_sub(n_i * (n_i - 1) / 2)
        .ok_or(Error::Overflow)?;
    let mut out = Vec::new();
    // A feasible tuple satisfies e_{i+1} in {e_i, e_i - 1}; pick the drop
    // positions, then the leading entry is forced by the sum rule.
    for pattern in 0u32..(1 << (n - 1)) {
        // Offsets below the leading entry, and their total.
        let mut offsets = Vec::with_capacity(n);
        let mut drop = 0i64;
        offsets.push(0i64);
        for gap in 0..n - 1 {
            if pattern & (1 << gap) != 0 {
                drop += 1;
            }
            offsets.push(drop);
        }
        let weight: i64 = offsets.iter().sum();
        // sum = n * lead - weight must hit the target.
        let numerator = target.checked_add(weight).ok_or(Error::Overflow)?;
        if numerator.rem_euclid(n_i) != 0 {
            continue;
        }
        let lead = numerator.div_euclid(n_i);
        let entries: Result<Vec<i64>> = offsets
            .iter()
            .map(|&off| lead.checked_sub(off).ok_or(Error::Overflow))
            .collect();
        out.push(SplittingType::new(entries?)?);
    }
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out.dedup();
    Ok(out)
}
