//! Divisors on the complete graph `K_n`: chip configurations, firing moves,
//! and the structural predicates the reduction and splitting machinery
//! is built on.
//!
//! Vertex indices are 1-based throughout the public interface.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A divisor on `K_n`: an integer number of chips on each of the `n`
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor {
    coeffs: Vec<i64>,
}

/// A relabeling of the vertices `{1..n}`, recorded when a divisor is
/// sorted so the move can be undone or replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    // map[i - 1] is the image of vertex i.
    map: Vec<usize>,
}

/// One firing move: the set of vertices fired and the divisor it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub fired: Vec<usize>,
    pub result: Divisor,
}

/// Ordered log of the firing moves taken by a reduction algorithm.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

impl Divisor {
    /// Builds a divisor from its coefficient list. Requires at least two
    /// vertices.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::TooFewVertices(coeffs.len()));
        }
        Ok(Divisor { coeffs })
    }

    /// The divisor `L = v_1 + ... + v_n`, all ones.
    pub fn line(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        Divisor::new(vec![1; n])
    }

    /// The canonical divisor `(n-3)L` of `K_n`; its degree is `2g - 2`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        Divisor::new(vec![n as i64 - 3; n])
    }

    /// The zero divisor on `n` vertices.
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        Divisor::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Chips on vertex `v` (1-based).
    pub fn coeff(&self, v: usize) -> Result<i64> {
        self.check_vertex(v)?;
        Ok(self.coeffs[v - 1])
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange {
                index: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Total number of chips.
    pub fn degree(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, &c| checked_add(acc, c))
    }

    /// Fires vertex `v`: it loses `n - 1` chips and every other vertex
    /// gains one.
    pub fn fire_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let n = self.n() as i64;
        let mut coeffs = Vec::with_capacity(self.n());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let delta = if i + 1 == v { -(n - 1) } else { 1 };
            coeffs.push(checked_add(c, delta)?);
        }
        Ok(Divisor { coeffs })
    }

    /// Fires every vertex of `set` once. With `|set| = j`, members lose
    /// `n - j` chips and non-members gain `j`. The set must be a nonempty
    /// proper subset of the vertices; firing all of `K_n` is the identity
    /// move and signals a caller bug.
    pub fn fire_set(&self, set: &[usize]) -> Result<Self> {
        let n = self.n();
        if set.is_empty() || set.len() >= n {
            return Err(Error::InvalidFiringSet);
        }
        let mut member = vec![false; n];
        for &v in set {
            self.check_vertex(v)?;
            if member[v - 1] {
                return Err(Error::InvalidFiringSet);
            }
            member[v - 1] = true;
        }
        let j = set.len() as i64;
        let loss = n as i64 - j;
        let mut coeffs = Vec::with_capacity(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let delta = if member[i] { -loss } else { j };
            coeffs.push(checked_add(c, delta)?);
        }
        Ok(Divisor { coeffs })
    }

    /// All coefficients nonnegative.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// All coefficients nonnegative except possibly at `v`.
    pub fn is_effective_away(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| i + 1 == v || c >= 0))
    }

    /// The parking characterization of `v_n`-reduced divisors on `K_n`:
    /// effective away from `v_n`, and for every `i <= n-1` at least `i` of
    /// the first `n-1` coefficients are `<= i-1`. The `min = 0` clause of
    /// the parking definition is implied by the `i = 1` count together
    /// with nonnegativity, so it is not checked separately.
    pub fn is_vn_reduced(&self) -> bool {
        let n = self.n();
        if !self.is_effective_away(n).unwrap_or(false) {
            return false;
        }
        let head = &self.coeffs[..n - 1];
        for i in 1..n {
            let count = head.iter().filter(|&&a| a < i as i64).count();
            if count < i {
                return false;
            }
        }
        true
    }

    /// A divisor is concentrated when, for every `i <= n`, at least `i`
    /// coefficients lie within `i - 1` of the minimum. Permutation
    /// invariant.
    pub fn is_concentrated(&self) -> bool {
        let min = *self.coeffs.iter().min().expect("n >= 2");
        for i in 1..=self.n() {
            let count = self
                .coeffs
                .iter()
                .filter(|&&a| a - min < i as i64)
                .count();
            if count < i {
                return false;
            }
        }
        true
    }

    /// All `n` coefficients non-decreasing.
    pub fn is_super_sorted(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] <= w[1])
    }

    /// Stable ascending sort of the coefficients. The returned permutation
    /// maps each original vertex to its position in the sorted divisor.
    pub fn super_sort(&self) -> (Self, Permutation) {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&i| self.coeffs[i]);
        let coeffs = order.iter().map(|&i| self.coeffs[i]).collect();
        let mut map = vec![0; self.n()];
        for (pos, &orig) in order.iter().enumerate() {
            map[orig] = pos + 1;
        }
        (Divisor { coeffs }, Permutation { map })
    }

    /// Coefficient-wise `c1 * self + c2 * other`.
    pub fn linear_combination(&self, c1: i64, other: &Divisor, c2: i64) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let mut coeffs = Vec::with_capacity(self.n());
        for (&a, &b) in self.coeffs.iter().zip(&other.coeffs) {
            coeffs.push(checked_add(checked_mul(c1, a)?, checked_mul(c2, b)?)?);
        }
        Ok(Divisor { coeffs })
    }

    /// `self + other`.
    pub fn plus(&self, other: &Divisor) -> Result<Self> {
        self.linear_combination(1, other, 1)
    }

    /// `self - other`.
    pub fn minus(&self, other: &Divisor) -> Result<Self> {
        self.linear_combination(1, other, -1)
    }

    /// Applies `perm` to the vertex labels: chips on vertex `i` move to
    /// vertex `perm(i)`.
    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        if perm.n() != self.n() {
            return Err(Error::SizeMismatch(self.n(), perm.n()));
        }
        let mut coeffs = vec![0; self.n()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[perm.map[i] - 1] = c;
        }
        Ok(Divisor { coeffs })
    }
}

/// The genus (first Betti number) of `K_n`: `(n-1)(n-2)/2`.
pub fn genus(n: usize) -> i64 {
    let n = n as i64;
    (n - 1) * (n - 2) / 2
}

impl Permutation {
    /// Builds a permutation from the images of `1..n`. Each index must
    /// appear exactly once.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// Image of vertex `v`.
    pub fn image(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange {
                index: v,
                n: self.n(),
            });
        }
        Ok(self.map[v - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

impl std::fmt::Display for Divisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
