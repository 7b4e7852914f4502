//! Closed-form rank and splitting types on `K_n`, the splitting-type rank
//! evaluator, and the Riemann-Roch cross-check.

use serde::{Deserialize, Serialize};

use crate::divisor::{genus, Divisor};
use crate::error::{Error, Result};
use crate::reduce::{concentrate, reduced_form};

/// The splitting type of a divisor `D`: the integers `(e_1, ..., e_n)`,
/// stored non-increasing, such that
/// `rk(D + kL) = sum_i max(0, e_i + k + 1) - 1` for every integer `k`.
/// Attached to divisors up to coefficient permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingType {
    entries: Vec<i64>,
}

impl SplittingType {
    /// Builds a splitting type from entries in any order; they are stored
    /// non-increasing.
    pub fn new(mut entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooFewVertices(entries.len()));
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplittingType { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entries in non-increasing order.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn sum(&self) -> Result<i64> {
        self.entries
            .iter()
            .try_fold(0i64, |acc, &e| acc.checked_add(e).ok_or(Error::Overflow))
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Rank of a divisor on `K_n` by the Cori-Le Borgne closed form.
///
/// Pipeline: take the `v_n`-reduced representative, sort its first `n-1`
/// coefficients ascending (a relabeling fixing `v_n`), write
/// `a_n + 1 = q(n-1) + r` with `0 <= r <= n-2` (`q` may be negative), and
/// return `sum_{i=1}^{n-1} max(0, q - i + 1 + a_i + [i <= r]) - 1`.
/// The formula is applied uniformly, including when the reduced `a_n` is
/// negative; exhaustive oracle agreement certifies that regime.
pub fn rank(d: &Divisor) -> Result<i64> {
    let n = d.n();
    let reduced = reduced_form(d)?;
    let mut head: Vec<i64> = reduced.coeffs()[..n - 1].to_vec();
    head.sort_unstable();
    let a_n = reduced.coeffs()[n - 1];
    let divisor = n as i64 - 1;
    let shifted = a_n.checked_add(1).ok_or(Error::Overflow)?;
    let q = shifted.div_euclid(divisor);
    let r = shifted.rem_euclid(divisor);
    let mut sum: i64 = 0;
    for (idx, &a_i) in head.iter().enumerate() {
        let i = idx as i64 + 1;
        let chi = i64::from(i <= r);
        let term = q
            .checked_sub(i)
            .and_then(|x| x.checked_add(1))
            .and_then(|x| x.checked_add(a_i))
            .and_then(|x| x.checked_add(chi))
            .ok_or(Error::Overflow)?;
        sum = sum.checked_add(term.max(0)).ok_or(Error::Overflow)?;
    }
    Ok(sum - 1)
}

/// Splitting type of a divisor: concentrate, super sort, and read off
/// `e_i = a_i - i + 1`.
pub fn splitting_type(d: &Divisor) -> Result<SplittingType> {
    let concentrated = concentrate(d)?;
    let (sorted, _) = concentrated.super_sort();
    let entries: Result<Vec<i64>> = sorted
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, &a)| a.checked_sub(idx as i64).ok_or(Error::Overflow))
        .collect();
    SplittingType::new(entries?)
}

/// Evaluates the defining identity of a splitting type at twist `k`:
/// `sum_i max(0, e_i + k + 1) - 1`.
pub fn rank_from_splitting(s: &SplittingType, k: i64) -> Result<i64> {
    let mut sum: i64 = 0;
    for &e in s.entries() {
        let term = e
            .checked_add(k)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow)?;
        sum = sum.checked_add(term.max(0)).ok_or(Error::Overflow)?;
    }
    Ok(sum - 1)
}

/// `rk(D) - rk(K - D) - (deg(D) - g + 1)` with `K = (n-3)L` and
/// `g = (n-1)(n-2)/2`. Riemann-Roch says this is always zero.
pub fn riemann_roch_residual(d: &Divisor) -> Result<i64> {
    let n = d.n();
    let k = Divisor::canonical(n)?;
    let lhs = rank(d)?
        .checked_sub(rank(&k.minus(d)?)?)
        .ok_or(Error::Overflow)?;
    let rhs = d
        .degree()?
        .checked_sub(genus(n))
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow)?;
    lhs.checked_sub(rhs).ok_or(Error::Overflow)
}

/// When `D - K` is equivalent to a nonzero effective divisor, the rank is
/// forced to `deg(D) - g`; returns that value, or `None` when the
/// nonspecial shortcut does not apply.
pub fn rank_nonspecial_check(d: &Divisor) -> Result<Option<i64>> {
    let n = d.n();
    let k = Divisor::canonical(n)?;
    let reduced = reduced_form(&d.minus(&k)?)?;
    if reduced.is_effective() && reduced.degree()? > 0 {
        let value = d
            .degree()?
            .checked_sub(genus(n))
            .ok_or(Error::Overflow)?;
        Ok(Some(value))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(coeffs: &[i64]) -> Divisor {
        Divisor::new(coeffs.to_vec()).unwrap()
    }

    fn st(entries: &[i64]) -> SplittingType {
        SplittingType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&d(&[0, 2, 0, 6, 1])).unwrap(), 3);
        assert_eq!(rank(&Divisor::line(5).unwrap()).unwrap(), 2);
        assert_eq!(rank(&d(&[-1, 0, 0, 0, 0])).unwrap(), -1);
        for n in 2..=7 {
            assert_eq!(rank(&Divisor::zero(n).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn rank_of_canonical_is_genus_minus_one() {
        for n in 3..=7 {
            assert_eq!(rank(&Divisor::canonical(n).unwrap()).unwrap(), genus(n) - 1);
        }
    }

    #[test]
    fn splitting_type_examples() {
        assert_eq!(splitting_type(&d(&[0, 2, 0, 6, 1])).unwrap(), st(&[1, 0, 0, -1, -1]));
        for n in 2..=6usize {
            let expected: Vec<i64> = (0..n).map(|i| -(i as i64)).collect();
            assert_eq!(
                splitting_type(&Divisor::zero(n).unwrap()).unwrap(),
                st(&expected)
            );
        }
        assert_eq!(
            splitting_type(&Divisor::line(5).unwrap()).unwrap(),
            st(&[1, 0, -1, -2, -3])
        );
    }

    #[test]
    fn splitting_entries_are_stored_non_increasing() {
        let s = SplittingType::new(vec![-1, 2, 0, 2]).unwrap();
        assert_eq!(s.entries(), &[2, 2, 0, -1]);
    }

    #[test]
    fn rank_from_splitting_examples() {
        let s = st(&[1, 0, 0, -1, -1]);
        assert_eq!(rank_from_splitting(&s, 0).unwrap(), 3);
        assert_eq!(rank_from_splitting(&s, -1).unwrap(), 0);
        assert_eq!(rank_from_splitting(&s, -3).unwrap(), -1);
        // Very negative twists kill every term.
        for k in -10..=-3 {
            assert_eq!(rank_from_splitting(&s, k).unwrap(), -1);
        }
    }

    #[test]
    fn line_splitting_matches_twisted_ranks() {
        let l = Divisor::line(5).unwrap();
        let s = splitting_type(&l).unwrap();
        for k in -2..=4i64 {
            let twisted = l.linear_combination(1, &l, k).unwrap();
            assert_eq!(rank(&twisted).unwrap(), rank_from_splitting(&s, k).unwrap());
        }
    }

    #[test]
    fn sum_rule() {
        for dv in [d(&[0, 2, 0, 6, 1]), d(&[1, 1, 1, 1, 1]), d(&[-2, 5, 0, 3, 1])] {
            let s = splitting_type(&dv).unwrap();
            assert_eq!(s.sum().unwrap(), dv.degree().unwrap() - 10);
        }
        let s = splitting_type(&d(&[0, 2, 0, 6, 1])).unwrap();
        assert_eq!(s.sum().unwrap(), -1);
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(riemann_roch_residual(&d(&[0, 2, 0, 6, 1])).unwrap(), 0);
        for n in 3..=6 {
            assert_eq!(riemann_roch_residual(&Divisor::zero(n).unwrap()).unwrap(), 0);
        }
        assert_eq!(riemann_roch_residual(&d(&[1, 0, 0])).unwrap(), 0);
    }

    #[test]
    fn nonspecial_check_examples() {
        let l = Divisor::line(5).unwrap();
        let three_l = l.linear_combination(3, &l, 0).unwrap();
        assert_eq!(rank_nonspecial_check(&three_l).unwrap(), Some(9));
        assert_eq!(rank(&three_l).unwrap(), 9);
        assert_eq!(rank_nonspecial_check(&Divisor::zero(5).unwrap()).unwrap(), None);

        let l4 = Divisor::line(4).unwrap();
        let two_l = l4.linear_combination(2, &l4, 0).unwrap();
        assert_eq!(rank_nonspecial_check(&two_l).unwrap(), Some(5));
        assert_eq!(rank(&two_l).unwrap(), 5);
    }

    #[test]
    fn rank_and_splitting_are_permutation_invariant() {
        let base = d(&[0, 2, 0, 6, 1]);
        let perms = [
            vec![2, 1, 3, 4, 5],
            vec![5, 4, 3, 2, 1],
            vec![3, 5, 1, 2, 4],
        ];
        for map in perms {
            let p = crate::divisor::Permutation::new(map).unwrap();
            let permuted = base.permute(&p).unwrap();
            assert_eq!(rank(&permuted).unwrap(), 3);
            assert_eq!(splitting_type(&permuted).unwrap(), st(&[1, 0, 0, -1, -1]));
        }
    }

    #[test]
    fn rank_monotonicity_under_adding_a_chip() {
        let cases = [d(&[0, 2, 0, 6, 1]), d(&[-2, 1, 0, 3, 1]), d(&[0, 0, 0, 0, 0])];
        for dv in cases {
            let base = rank(&dv).unwrap();
            for v in 1..=5usize {
                let mut coeffs = dv.coeffs().to_vec();
                coeffs[v - 1] += 1;
                let bumped = rank(&Divisor::new(coeffs).unwrap()).unwrap();
                assert!(bumped >= base && base >= bumped - 1);
            }
        }
    }
}
