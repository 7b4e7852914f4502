//! Canonical forms on `K_n`: Dhar's burning algorithm specialized to the
//! complete graph, `v_n`-reduced representatives, equivalence testing, and
//! the concentration algorithm.

use crate::divisor::{Divisor, ReductionTrace, TraceStep};
use crate::error::{Error, Result};

/// Fires `v_n` until the divisor is effective away from `v_n`. Exactly
/// `max(0, -min of the first n-1 coefficients)` firings are needed, each
/// one adding a chip to every other vertex. Only legal firing moves are
/// used, so the trace stays interpretable.
pub fn make_effective_away(d: &Divisor) -> Result<(Divisor, ReductionTrace)> {
    let n = d.n();
    let min_head = *d.coeffs()[..n - 1].iter().min().expect("n >= 2");
    let mut trace = ReductionTrace::default();
    let mut current = d.clone();
    let mut remaining = (-min_head).max(0);
    while remaining > 0 {
        current = current.fire_vertex(n)?;
        trace.steps.push(TraceStep {
            fired: vec![n],
            result: current.clone(),
        });
        remaining -= 1;
    }
    debug_assert!(current.is_effective_away(n).unwrap());
    Ok((current, trace))
}

// One Dhar step on K_n: the maximum i <= n-1 with
// #{ j <= n-1 | a_j <= i-1 } <= i-1, if any. When it exists, the set
// A = { v_j | j <= n-1, a_j >= i } is a legal firing set.
fn dhar_threshold(d: &Divisor) -> Option<usize> {
    let n = d.n();
    let head = &d.coeffs()[..n - 1];
    (1..n)
        .rev()
        .find(|&i| head.iter().filter(|&&a| a < i as i64).count() < i)
}

/// Dhar's burning algorithm on `K_n`: repeatedly fires the maximal
/// unburnt set until the divisor is `v_n`-reduced. The input must already
/// be effective away from `v_n`.
pub fn dhar_reduce(d: &Divisor) -> Result<(Divisor, ReductionTrace)> {
    let n = d.n();
    if !d.is_effective_away(n)? {
        return Err(Error::NotEffectiveAway(n));
    }
    let mut current = d.clone();
    let mut trace = ReductionTrace::default();
    while let Some(i) = dhar_threshold(&current) {
        let set: Vec<usize> = (1..n)
            .filter(|&j| current.coeffs()[j - 1] >= i as i64)
            .collect();
        let off_chips: i64 = current.coeffs()[..n - 1].iter().sum();
        current = current.fire_set(&set)?;
        // Termination: the chip count off v_n strictly decreases.
        let new_off: i64 = current.coeffs()[..n - 1].iter().sum();
        assert!(new_off < off_chips, "Dhar step did not make progress");
        assert!(current.is_effective_away(n)?);
        trace.steps.push(TraceStep {
            fired: set,
            result: current.clone(),
        });
    }
    debug_assert!(current.is_vn_reduced());
    Ok((current, trace))
}

/// The unique `v_n`-reduced divisor equivalent to `d`, with the full
/// firing trace (effective-away preprocessing followed by Dhar burning).
pub fn reduce_with_trace(d: &Divisor) -> Result<(Divisor, ReductionTrace)> {
    let (effective, mut trace) = make_effective_away(d)?;
    let (reduced, dhar_trace) = dhar_reduce(&effective)?;
    trace.steps.extend(dhar_trace.steps);
    Ok((reduced, trace))
}

/// The unique `v_n`-reduced divisor equivalent to `d`.
pub fn reduced_form(d: &Divisor) -> Result<Divisor> {
    reduce_with_trace(d).map(|(r, _)| r)
}

/// The unique `q`-reduced divisor equivalent to `d`. `K_n` is
/// vertex-transitive, so this swaps labels `q` and `n`, reduces, and
/// swaps back.
pub fn reduce_at(d: &Divisor, q: usize) -> Result<Divisor> {
    let n = d.n();
    if q == 0 || q > n {
        return Err(Error::VertexOutOfRange { index: q, n });
    }
    if q == n {
        return reduced_form(d);
    }
    let mut coeffs = d.coeffs().to_vec();
    coeffs.swap(q - 1, n - 1);
    let reduced = reduced_form(&Divisor::new(coeffs)?)?;
    let mut out = reduced.coeffs().to_vec();
    out.swap(q - 1, n - 1);
    Divisor::new(out)
}

/// Two divisors are equivalent iff their `v_n`-reduced forms coincide.
pub fn equivalent(d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if d1.n() != d2.n() {
        return Err(Error::SizeMismatch(d1.n(), d2.n()));
    }
    Ok(reduced_form(d1)? == reduced_form(d2)?)
}

/// Produces a concentrated divisor equivalent to `d`: with `R` the
/// reduced form and `m = floor(R_n / n)`, returns
/// `(R_1 + m, ..., R_{n-1} + m, R_n - m(n-1))`, i.e. `(R - mn v_n) + mL`.
/// The output is algorithm-determined, not canonical in the equivalence
/// class. For negative `R_n` the same floor rule is extended and the
/// concentration postcondition is checked rather than assumed.
pub fn concentrate(d: &Divisor) -> Result<Divisor> {
    let n = d.n();
    let reduced = reduced_form(d)?;
    let m = reduced.coeffs()[n - 1].div_euclid(n as i64);
    let mut coeffs = Vec::with_capacity(n);
    for (i, &a) in reduced.coeffs().iter().enumerate() {
        let value = if i + 1 < n {
            a.checked_add(m)
        } else {
            m.checked_mul(n as i64 - 1).and_then(|x| a.checked_sub(x))
        };
        coeffs.push(value.ok_or(Error::Overflow)?);
    }
    let out = Divisor::new(coeffs)?;
    if !out.is_concentrated() {
        return Err(Error::ConcentrationFailed(out.coeffs().to_vec()));
    }
    Ok(out)
}
