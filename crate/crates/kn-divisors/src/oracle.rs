//! Definition-level brute force on arbitrary loopless multigraphs:
//! general Dhar burning, q-reduced forms, equivalence, and Baker-Norine
//! rank by direct search. Deliberately exponential; guards make misuse
//! loud. Its only job is ground truth at desk scale.

use crate::error::{Error, Result};

/// A connected loopless multigraph given by its symmetric edge
/// multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGraph {
    mult: Vec<Vec<u64>>,
}

/// A divisor on a [`GenericGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDivisor {
    coeffs: Vec<i64>,
}

impl GenericDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        GenericDivisor { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .try_fold(0i64, |acc, &c| acc.checked_add(c).ok_or(Error::Overflow))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl GenericGraph {
    /// Validates symmetry, zero diagonal, and connectedness.
    pub fn new(mult: Vec<Vec<u64>>) -> Result<Self> {
        let m = mult.len();
        if m < 2 {
            return Err(Error::TooFewVertices(m));
        }
        for (u, row) in mult.iter().enumerate() {
            if row.len() != m || row[u] != 0 {
                return Err(Error::MalformedGraph);
            }
            for (v, &w) in row.iter().enumerate() {
                if w != mult[v][u] {
                    return Err(Error::MalformedGraph);
                }
            }
        }
        let graph = GenericGraph { mult };
        if graph.bfs_order(1).len() != m {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    /// The complete graph `K_n`: all off-diagonal multiplicities 1.
    pub fn complete(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let mult = (0..n)
            .map(|u| (0..n).map(|v| u64::from(u != v)).collect())
            .collect();
        GenericGraph::new(mult)
    }

    pub fn vertex_count(&self) -> usize {
        self.mult.len()
    }

    /// Edge multiplicity between 1-based vertices `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.mult[u - 1][v - 1]
    }

    /// Valence of 1-based vertex `v`.
    pub fn valence(&self, v: usize) -> u64 {
        self.mult[v - 1].iter().sum()
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.mult.iter().flatten().sum();
        total / 2
    }

    /// First Betti number `e - v + 1`.
    pub fn genus(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                index: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    fn check_divisor(&self, d: &GenericDivisor) -> Result<()> {
        if d.coeffs.len() != self.vertex_count() {
            return Err(Error::SizeMismatch(self.vertex_count(), d.coeffs.len()));
        }
        Ok(())
    }

    // BFS order from a 1-based root; every vertex after the root has a
    // neighbor earlier in the order.
    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let m = self.vertex_count();
        let mut order = vec![root - 1];
        let mut seen = vec![false; m];
        seen[root - 1] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for (v, visited) in seen.iter_mut().enumerate() {
                if !*visited && self.mult[u][v] > 0 {
                    *visited = true;
                    order.push(v);
                }
            }
        }
        order
    }

    // Fires the 0-based vertex set `set` (as a membership mask) `times`
    // times: each vertex loses `times * (edges leaving the set)` and each
    // outside vertex gains `times * (edges into the set)`.
    fn fire_mask(&self, coeffs: &mut [i64], mask: &[bool], times: i64) -> Result<()> {
        let m = self.vertex_count();
        for v in 0..m {
            let crossing: u64 = (0..m)
                .filter(|&u| mask[u] != mask[v])
                .map(|u| self.mult[u][v])
                .sum();
            let delta = (crossing as i64)
                .checked_mul(times)
                .ok_or(Error::Overflow)?;
            let signed = if mask[v] { -delta } else { delta };
            coeffs[v] = coeffs[v].checked_add(signed).ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

/// The unique `q`-reduced divisor equivalent to `d`: effective away from
/// `q`, and no subset avoiding `q` can fire without losing that.
///
/// Phase 1 walks the BFS order outward-in, firing prefixes of the order
/// until every vertex other than `q` is nonnegative. Phase 2 is the
/// general burning algorithm: grow the burnt set from `q` (a vertex burns
/// when its chips are fewer than its edges to the burnt set) and fire the
/// unburnt remainder until everything burns.
pub fn general_dhar_reduce(g: &GenericGraph, d: &GenericDivisor, q: usize) -> Result<GenericDivisor> {
    g.check_vertex(q)?;
    g.check_divisor(d)?;
    let m = g.vertex_count();
    let order = g.bfs_order(q);
    let mut coeffs = d.coeffs.clone();

    // Phase 1: for k from the far end inward, firing the prefix before
    // position k only adds chips to vertices at position >= k, so earlier
    // fixes are never undone.
    for k in (1..m).rev() {
        let v = order[k];
        if coeffs[v] >= 0 {
            continue;
        }
        let mut mask = vec![false; m];
        for &u in &order[..k] {
            mask[u] = true;
        }
        let gain: u64 = order[..k].iter().map(|&u| g.mult[u][v]).sum();
        debug_assert!(gain > 0, "BFS order guarantees an earlier neighbor");
        let times = (-coeffs[v] + gain as i64 - 1) / gain as i64;
        g.fire_mask(&mut coeffs, &mask, times)?;
    }

    // Phase 2: burn from q; fire whatever refuses to burn.
    loop {
        let mut burnt = vec![false; m];
        burnt[q - 1] = true;
        loop {
            let mut changed = false;
            for v in 0..m {
                if burnt[v] {
                    continue;
                }
                let incoming: u64 = (0..m)
                    .filter(|&u| burnt[u])
                    .map(|u| g.mult[u][v])
                    .sum();
                if coeffs[v] < incoming as i64 {
                    burnt[v] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if burnt.iter().all(|&b| b) {
            break;
        }
        let unburnt: Vec<bool> = burnt.iter().map(|&b| !b).collect();
        g.fire_mask(&mut coeffs, &unburnt, 1)?;
    }
    Ok(GenericDivisor::new(coeffs))
}

/// Equivalence decided by comparing `q`-reduced forms at `q = 1`.
pub fn generic_equivalent(g: &GenericGraph, d1: &GenericDivisor, d2: &GenericDivisor) -> Result<bool> {
    g.check_divisor(d1)?;
    g.check_divisor(d2)?;
    if d1.degree()? != d2.degree()? {
        return Ok(false);
    }
    Ok(general_dhar_reduce(g, d1, 1)? == general_dhar_reduce(g, d2, 1)?)
}

// True iff `d` is equivalent to an effective divisor: its 1-reduced form
// is effective away from vertex 1, so only the chip count there matters.
fn equivalent_to_effective(g: &GenericGraph, d: &GenericDivisor) -> Result<bool> {
    Ok(general_dhar_reduce(g, d, 1)?.coeffs[0] >= 0)
}

const MAX_ORACLE_VERTICES: usize = 7;
const MAX_ORACLE_DEGREE: i64 = 20;

/// Baker-Norine rank by definition: the largest `r` such that `d - e` is
/// equivalent to effective for every effective `e` of degree `r`, with
/// `e` ranging over all multisets of vertices; `-1` if `d` itself is not
/// equivalent to effective. Guarded to desk scale.
pub fn rank_oracle(g: &GenericGraph, d: &GenericDivisor) -> Result<i64> {
    g.check_divisor(d)?;
    let degree = d.degree()?;
    if degree < 0 {
        return Ok(-1);
    }
    let m = g.vertex_count();
    if m > MAX_ORACLE_VERTICES {
        return Err(Error::GuardExceeded(format!(
            "rank_oracle supports at most {MAX_ORACLE_VERTICES} vertices (got {m})"
        )));
    }
    if degree > MAX_ORACLE_DEGREE {
        return Err(Error::GuardExceeded(format!(
            "rank_oracle supports degree at most {MAX_ORACLE_DEGREE} (got {degree})"
        )));
    }
    if !equivalent_to_effective(g, d)? {
        return Ok(-1);
    }
    let mut r: i64 = 1;
    while r <= degree + 1 {
        let mut all_pass = true;
        let mut chips = vec![0i64; m];
        if !for_each_multiset(&mut chips, 0, r, &mut |e| {
            let diff: Vec<i64> = d
                .coeffs
                .iter()
                .zip(e)
                .map(|(&a, &b)| a - b)
                .collect();
            equivalent_to_effective(g, &GenericDivisor::new(diff))
        })? {
            all_pass = false;
        }
        if !all_pass {
            return Ok(r - 1);
        }
        r += 1;
    }
    // Unreachable: removing deg(d) + 1 chips always fails somewhere.
    Ok(degree)
}

// Enumerates all ways to place `remaining` chips on vertices `from..`,
// calling `check` on each complete placement. Returns false as soon as
// any placement fails.
fn for_each_multiset(
    chips: &mut Vec<i64>,
    from: usize,
    remaining: i64,
    check: &mut dyn FnMut(&[i64]) -> Result<bool>,
) -> Result<bool> {
    if from == chips.len() - 1 {
        chips[from] = remaining;
        let ok = check(chips)?;
        chips[from] = 0;
        return Ok(ok);
    }
    for here in 0..=remaining {
        chips[from] = here;
        let ok = for_each_multiset(chips, from + 1, remaining - here, check)?;
        if !ok {
            chips[from] = 0;
            return Ok(false);
        }
    }
    chips[from] = 0;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gd(coeffs: &[i64]) -> GenericDivisor {
        GenericDivisor::new(coeffs.to_vec())
    }

    fn path3() -> GenericGraph {
        GenericGraph::new(vec![
            vec![0, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn complete_graph_shapes() {
        let k3 = GenericGraph::complete(3).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.genus(), 1);
        let k5 = GenericGraph::complete(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.genus(), 6);
        let k2 = GenericGraph::complete(2).unwrap();
        assert_eq!(k2.genus(), 0);
        assert!(GenericGraph::complete(1).is_err());
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            GenericGraph::new(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::MalformedGraph)
        );
        assert_eq!(
            GenericGraph::new(vec![vec![1, 1], vec![1, 0]]),
            Err(Error::MalformedGraph)
        );
        assert_eq!(
            GenericGraph::new(vec![
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 0, 0],
            ]),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn reduce_matches_figure_on_k5() {
        let k5 = GenericGraph::complete(5).unwrap();
        let out = general_dhar_reduce(&k5, &gd(&[0, 2, 0, 6, 1]), 5).unwrap();
        assert_eq!(out, gd(&[0, 2, 0, 1, 6]));
    }

    #[test]
    fn reduce_fixes_reduced_inputs() {
        let k5 = GenericGraph::complete(5).unwrap();
        let reduced = gd(&[0, 2, 0, 1, 6]);
        assert_eq!(general_dhar_reduce(&k5, &reduced, 5).unwrap(), reduced);
        let p = path3();
        let out = general_dhar_reduce(&p, &gd(&[0, 0, 2], ), 1).unwrap();
        assert_eq!(general_dhar_reduce(&p, &out, 1).unwrap(), out);
    }

    // Certificate of q-reducedness: effective away from q and no nonempty
    // subset avoiding q can fire while staying effective away from q.
    fn assert_q_reduced(g: &GenericGraph, d: &GenericDivisor, q: usize) {
        let m = g.vertex_count();
        assert!(d
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, &c)| i + 1 == q || c >= 0));
        for bits in 1u32..(1 << m) {
            if bits & (1 << (q - 1)) != 0 {
                continue;
            }
            let mask: Vec<bool> = (0..m).map(|v| bits & (1 << v) != 0).collect();
            let mut coeffs = d.coeffs().to_vec();
            g.fire_mask(&mut coeffs, &mask, 1).unwrap();
            let still_ok = coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| i + 1 == q || c >= 0);
            assert!(!still_ok, "subset {bits:b} can still fire");
        }
    }

    #[test]
    fn path_graph_reduction_is_certified() {
        let p = path3();
        let out = general_dhar_reduce(&p, &gd(&[0, 0, 2]), 1).unwrap();
        assert_eq!(out.degree().unwrap(), 2);
        assert_q_reduced(&p, &out, 1);
    }

    #[test]
    fn reduction_from_negative_chips_is_certified() {
        let cases = [
            (GenericGraph::complete(4).unwrap(), gd(&[-3, 5, 0, 1]), 2),
            (path3(), gd(&[4, -2, -1]), 3),
            (GenericGraph::complete(5).unwrap(), gd(&[-1, -1, -1, -1, 10]), 1),
        ];
        for (g, d, q) in cases {
            let out = general_dhar_reduce(&g, &d, q).unwrap();
            assert_eq!(out.degree().unwrap(), d.degree().unwrap());
            assert_q_reduced(&g, &out, q);
            assert!(generic_equivalent(&g, &out, &d).unwrap());
        }
    }

    #[test]
    fn equivalence_examples() {
        let k4 = GenericGraph::complete(4).unwrap();
        // A single firing of vertex 2.
        let d = gd(&[1, 4, 0, 2]);
        let fired = gd(&[2, 1, 1, 3]);
        assert!(generic_equivalent(&k4, &d, &fired).unwrap());
        assert!(!generic_equivalent(&k4, &d, &gd(&[0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn rank_oracle_examples() {
        let k5 = GenericGraph::complete(5).unwrap();
        assert_eq!(rank_oracle(&k5, &gd(&[0, 2, 0, 6, 1])).unwrap(), 3);
        assert_eq!(rank_oracle(&k5, &gd(&[-1, 0, 0, 0, 0])).unwrap(), -1);
        let k4 = GenericGraph::complete(4).unwrap();
        assert_eq!(rank_oracle(&k4, &gd(&[1, 1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn rank_oracle_bounded_by_degree() {
        let p = path3();
        for d in [gd(&[0, 0, 0]), gd(&[1, 0, 1]), gd(&[0, 3, 0])] {
            let r = rank_oracle(&p, &d).unwrap();
            assert!(r <= d.degree().unwrap());
        }
    }

    #[test]
    fn rank_oracle_guards() {
        let k5 = GenericGraph::complete(5).unwrap();
        assert!(matches!(
            rank_oracle(&k5, &gd(&[21, 0, 0, 0, 0])),
            Err(Error::GuardExceeded(_))
        ));
        let k8 = GenericGraph::complete(8).unwrap();
        assert!(matches!(
            rank_oracle(&k8, &GenericDivisor::new(vec![0; 8])),
            Err(Error::GuardExceeded(_))
        ));
        // Negative degree short-circuits before any guard.
        assert_eq!(rank_oracle(&k8, &GenericDivisor::new(vec![-1; 8])).unwrap(), -1);
    }

    #[test]
    fn rank_oracle_satisfies_riemann_roch_on_small_graphs() {
        let graphs = [GenericGraph::complete(3).unwrap(), path3(), {
            // Multigraph: doubled triangle edge.
            GenericGraph::new(vec![
                vec![0, 2, 1],
                vec![2, 0, 1],
                vec![1, 1, 0],
            ])
            .unwrap()
        }];
        for g in &graphs {
            let m = g.vertex_count();
            let canonical: Vec<i64> = (1..=m).map(|v| g.valence(v) as i64 - 2).collect();
            let genus = g.genus();
            let samples = [
                vec![0i64; m],
                vec![1, 0, 2],
                vec![-1, 2, 1],
                canonical.clone(),
            ];
            for coeffs in samples {
                let d = GenericDivisor::new(coeffs);
                let kd = GenericDivisor::new(
                    canonical
                        .iter()
                        .zip(d.coeffs())
                        .map(|(&k, &a)| k - a)
                        .collect(),
                );
                let lhs = rank_oracle(g, &d).unwrap() - rank_oracle(g, &kd).unwrap();
                assert_eq!(lhs, d.degree().unwrap() - genus + 1);
            }
        }
    }
}
