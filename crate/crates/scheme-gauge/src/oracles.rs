//! Exhaustive and LP ground truth on small instances: maximum cut, the
//! fractional cut-cover LP, the two-graph quadratic program, and MAX 2-SAT.
//! Every bound in the crate is validated against these.

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::lp::{LinearProgram, LpStatus, Rel};
use crate::max2sat::Max2SatInstance;

/// Enumeration cap for maxcut / qp (2^(n-1) assignments).
pub const MAX_CUT_VERTICES: usize = 26;
/// Enumeration cap for the cut-cover LP (2^(n-1) columns).
pub const MAX_FCC_VERTICES: usize = 16;
/// Enumeration cap for MAX 2-SAT (2^n assignments).
pub const MAX_SAT_VARS: usize = 26;

/// Lexicographic order on side vectors stored as bit masks (bit v = entry
/// v): the first differing entry decides, false before true.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a >> d.trailing_zeros() & 1 == 0
}

/// Exact maximum cut by gray-code enumeration with vertex 0 pinned to one
/// side. Returns the optimum and the lexicographically smallest side vector
/// attaining it (as the sorted set of vertices opposite vertex 0).
pub fn maxcut_bruteforce(g: &Graph) -> Result<(i64, Vec<usize>)> {
    maxcut_bruteforce_limited(g, MAX_CUT_VERTICES)
}

/// Same enumeration with a caller-chosen size gate (hard cap 64 from the
/// bit-mask representation).
pub fn maxcut_bruteforce_limited(g: &Graph, limit: usize) -> Result<(i64, Vec<usize>)> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(Error::TooLarge(format!(
            "maxcut enumeration needs n <= {}, got {n}",
            limit.min(64)
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let mut side = vec![false; n]; // true = opposite side from vertex 0
    let mut cut: i64 = 0;
    let mut best: i64 = 0;
    let mut best_mask: u64 = 0;
    let mut mask: u64 = 0;
    for s in 1u64..1 << (n - 1) {
        // gray-code step: flip the vertex indexed by the changed bit
        let gray = s ^ (s >> 1);
        let bit = (gray ^ (mask)).trailing_zeros() as usize;
        let v = bit + 1;
        let delta: i64 = (0..n)
            .filter(|&u| g.has_edge(u, v))
            .map(|u| if side[u] == side[v] { 1 } else { -1 })
            .sum();
        side[v] = !side[v];
        cut += delta;
        mask = gray;
        if cut > best || (cut == best && lex_less(mask, best_mask)) {
            best = cut;
            best_mask = mask;
        }
    }
    let cut_set: Vec<usize> = (1..n).filter(|&v| best_mask >> (v - 1) & 1 == 1).collect();
    Ok((best, cut_set))
}

/// Fractional cut cover: min 1^T y over nonnegative cut weights with every
/// edge covered at least once.
#[derive(Clone, Debug)]
pub struct CutCoverSolution {
    pub value: f64,
    /// Nonzero cut weights, keyed by the cut's side mask over vertices 1..n
    /// (vertex 0 always on side 0).
    pub weights: Vec<(u64, f64)>,
    /// Per-edge coverage totals, aligned with `Graph::edges` order.
    pub covered: Vec<f64>,
}

/// Solves the cut-cover LP by enumerating all 2^(n-1) - 1 nontrivial cuts
/// as covering columns.
pub fn fcc_lp(g: &Graph) -> Result<CutCoverSolution> {
    fcc_lp_limited(g, MAX_FCC_VERTICES)
}

/// Same LP with a caller-chosen size gate (hard cap 24: the column count is
/// 2^(n-1) - 1).
pub fn fcc_lp_limited(g: &Graph, limit: usize) -> Result<CutCoverSolution> {
    let n = g.n();
    if n > limit.min(24) {
        return Err(Error::TooLarge(format!(
            "cut-cover LP needs n <= {}, got {n}",
            limit.min(24)
        )));
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Ok(CutCoverSolution { value: 0.0, weights: Vec::new(), covered: Vec::new() });
    }
    let ncuts = (1usize << (n - 1)) - 1;
    // rows: one >= 1 constraint per edge; columns: cuts
    let mut rows = vec![vec![0.0; ncuts]; edges.len()];
    for mask in 1..=ncuts as u64 {
        for (e, &(u, v)) in edges.iter().enumerate() {
            let su = u > 0 && mask >> (u - 1) & 1 == 1;
            let sv = v > 0 && mask >> (v - 1) & 1 == 1;
            if su != sv {
                rows[e][mask as usize - 1] = 1.0;
            }
        }
    }
    let mut lp = LinearProgram::minimize(vec![1.0; ncuts]);
    for row in rows {
        lp.constraint(row, Rel::Ge, 1.0);
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("cut-cover LP not optimal: {:?}", sol.status)));
    }
    let weights: Vec<(u64, f64)> = sol
        .point
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 1e-12)
        .map(|(i, &w)| (i as u64 + 1, w))
        .collect();
    let covered: Vec<f64> = edges
        .iter()
        .map(|&(u, v)| {
            weights
                .iter()
                .filter(|&&(mask, _)| {
                    let su = u > 0 && mask >> (u - 1) & 1 == 1;
                    let sv = v > 0 && mask >> (v - 1) & 1 == 1;
                    su != sv
                })
                .map(|&(_, w)| w)
                .sum()
        })
        .collect();
    Ok(CutCoverSolution { value: sol.value, weights, covered })
}

/// Exact optimum of sum over E_1 of (1 - x_i x_j) plus sum over E_2 of
/// (1 + x_i x_j) over +-1 assignments, with x_0 pinned to +1. Returns the
/// value and the lexicographically smallest optimizer.
pub fn qp_bruteforce(g1: &Graph, g2: &Graph) -> Result<(i64, Vec<i8>)> {
    qp_bruteforce_limited(g1, g2, MAX_CUT_VERTICES)
}

/// Same enumeration with a caller-chosen size gate (hard cap 64 from the
/// bit-mask representation).
pub fn qp_bruteforce_limited(g1: &Graph, g2: &Graph, limit: usize) -> Result<(i64, Vec<i8>)> {
    let n = g1.n();
    if g2.n() != n {
        return Err(Error::Dimension(format!(
            "vertex sets differ: {n} vs {}",
            g2.n()
        )));
    }
    if n > limit.min(64) {
        return Err(Error::TooLarge(format!(
            "qp enumeration needs n <= {}, got {n}",
            limit.min(64)
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let e2 = g2.edge_count() as i64;
    let mut side = vec![false; n];
    let mut cut1: i64 = 0;
    let mut cut2: i64 = 0;
    let value = |cut1: i64, cut2: i64| 2 * cut1 + 2 * (e2 - cut2);
    let mut best = value(0, 0);
    let mut best_mask: u64 = 0;
    let mut mask: u64 = 0;
    for s in 1u64..1 << (n - 1) {
        let gray = s ^ (s >> 1);
        let bit = (gray ^ mask).trailing_zeros() as usize;
        let v = bit + 1;
        for (g, cut) in [(g1, &mut cut1), (g2, &mut cut2)] {
            let delta: i64 = (0..n)
                .filter(|&u| g.has_edge(u, v))
                .map(|u| if side[u] == side[v] { 1 } else { -1 })
                .sum();
            *cut += delta;
        }
        side[v] = !side[v];
        mask = gray;
        let val = value(cut1, cut2);
        if val > best || (val == best && lex_less(mask, best_mask)) {
            best = val;
            best_mask = mask;
        }
    }
    let assignment: Vec<i8> = (0..n)
        .map(|v| {
            if v > 0 && best_mask >> (v - 1) & 1 == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    Ok((best, assignment))
}

/// Exact MAX 2-SAT optimum by truth-assignment enumeration; ties break to
/// the lexicographically smallest assignment (false before true).
pub fn max2sat_bruteforce(inst: &Max2SatInstance) -> Result<(usize, Vec<bool>)> {
    max2sat_bruteforce_limited(inst, MAX_SAT_VARS)
}

/// Same enumeration with a caller-chosen size gate (hard cap 63 from the
/// bit-mask representation).
pub fn max2sat_bruteforce_limited(
    inst: &Max2SatInstance,
    limit: usize,
) -> Result<(usize, Vec<bool>)> {
    let n = inst.n_vars;
    if n > limit.min(63) {
        return Err(Error::TooLarge(format!(
            "MAX 2-SAT enumeration needs <= {} variables, got {n}",
            limit.min(63)
        )));
    }
    let mut best = 0usize;
    let mut best_mask = 0u64;
    let mut assignment = vec![false; n];
    for mask in 0u64..1 << n {
        for (v, a) in assignment.iter_mut().enumerate() {
            *a = mask >> v & 1 == 1;
        }
        let sat = inst.satisfied(&assignment);
        if sat > best || (sat == best && lex_less(mask, best_mask)) {
            best = sat;
            best_mask = mask;
        }
    }
    for (v, a) in assignment.iter_mut().enumerate() {
        *a = best_mask >> v & 1 == 1;
    }
    Ok((best, assignment))
}

/// mc * fcc against |E|, with the equality/strict classification.
#[derive(Clone, Debug)]
pub struct CombinatorialGaugeReport {
    pub mc: i64,
    pub fcc: f64,
    pub product: f64,
    pub edges: usize,
    pub equality: bool,
}

pub fn combinatorial_gauge_check(g: &Graph) -> Result<CombinatorialGaugeReport> {
    let (mc, _) = maxcut_bruteforce(g)?;
    let fcc = fcc_lp(g)?.value;
    let edges = g.edge_count();
    let product = mc as f64 * fcc;
    if product < edges as f64 - 1e-6 {
        return Err(Error::Lp(format!(
            "combinatorial weak duality violated: {product} < {edges}"
        )));
    }
    Ok(CombinatorialGaugeReport {
        mc,
        fcc,
        product,
        edges,
        equality: (product - edges as f64).abs() <= 1e-6 * (1.0 + edges as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named_graph;
    use crate::rng::SplitMix64;

    fn random_graph(rng: &mut SplitMix64, n: usize, p_num: usize, p_den: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.below(p_den) < p_num {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn maxcut_known_values() {
        assert_eq!(maxcut_bruteforce(&named_graph("complete(4)").unwrap()).unwrap().0, 4);
        assert_eq!(maxcut_bruteforce(&named_graph("petersen").unwrap()).unwrap().0, 12);
        assert_eq!(maxcut_bruteforce(&named_graph("cycle(5)").unwrap()).unwrap().0, 4);
        assert_eq!(maxcut_bruteforce(&named_graph("cycle(6)").unwrap()).unwrap().0, 6);
    }

    #[test]
    fn maxcut_returned_cut_attains_value() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let n = 3 + rng.below(8);
            let g = random_graph(&mut rng, n, 1, 2);
            let (value, cut) = maxcut_bruteforce(&g).unwrap();
            assert_eq!(g.cut_edges(&cut).len() as i64, value);
        }
    }

    #[test]
    fn maxcut_size_limit() {
        let g = Graph::empty(27);
        assert!(matches!(maxcut_bruteforce(&g), Err(Error::TooLarge(_))));
    }

    #[test]
    fn fcc_known_values() {
        assert!((fcc_lp(&named_graph("complete(2)").unwrap()).unwrap().value - 1.0).abs() < 1e-9);
        assert!((fcc_lp(&named_graph("cycle(4)").unwrap()).unwrap().value - 1.0).abs() < 1e-9);
        let petersen = fcc_lp(&named_graph("petersen").unwrap()).unwrap().value;
        assert!(petersen >= 15.0 / 12.0 - 1e-9, "fcc(petersen) = {petersen}");
        assert!(petersen >= 1.2 - 1e-9 && petersen <= 1.2 / 0.878 + 1e-9);
    }

    #[test]
    fn fcc_solution_certificates() {
        for spec in ["cycle(5)", "complete(4)", "petersen"] {
            let g = named_graph(spec).unwrap();
            let sol = fcc_lp(&g).unwrap();
            let total: f64 = sol.weights.iter().map(|&(_, w)| w).sum();
            assert!((total - sol.value).abs() < 1e-8, "{spec}: weights sum");
            for (e, &c) in sol.covered.iter().enumerate() {
                assert!(c >= 1.0 - 1e-8, "{spec}: edge {e} covered {c}");
            }
        }
    }

    #[test]
    fn fcc_empty_and_oversize() {
        let sol = fcc_lp(&Graph::empty(4)).unwrap();
        assert_eq!(sol.value, 0.0);
        assert!(matches!(fcc_lp(&Graph::empty(17)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn qp_reduces_to_double_maxcut() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..30 {
            let n = 2 + rng.below(11);
            let g = random_graph(&mut rng, n, 1, 2);
            let (mc, _) = maxcut_bruteforce(&g).unwrap();
            let (qp, _) = qp_bruteforce(&g, &Graph::empty(n)).unwrap();
            assert_eq!(qp, 2 * mc);
        }
    }

    #[test]
    fn qp_small_cases() {
        let k2 = named_graph("complete(2)").unwrap();
        let (v, _) = qp_bruteforce(&k2, &k2).unwrap();
        assert_eq!(v, 2);

        let paley9 = named_graph("paley(9)").unwrap();
        let (v, x) = qp_bruteforce(&paley9, &paley9.complement()).unwrap();
        assert!(v as f64 <= 49.5);
        // optimizer attains the reported value
        let mut check = 0i64;
        for (u, w) in paley9.edges() {
            check += i64::from(1 - x[u] * x[w]) as i64;
        }
        for (u, w) in paley9.complement().edges() {
            check += i64::from(1 + x[u] * x[w]) as i64;
        }
        assert_eq!(check, v);
    }

    #[test]
    fn qp_vertex_mismatch() {
        let g1 = Graph::empty(3);
        let g2 = Graph::empty(4);
        assert!(matches!(qp_bruteforce(&g1, &g2), Err(Error::Dimension(_))));
    }

    #[test]
    fn max2sat_known_values() {
        let inst = Max2SatInstance::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(max2sat_bruteforce(&inst).unwrap().0, 1);

        let inst =
            Max2SatInstance::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]])
                .unwrap();
        let (best, a) = max2sat_bruteforce(&inst).unwrap();
        assert_eq!(best, 3);
        assert_eq!(inst.satisfied(&a), 3);

        // satisfiable instance attains all clauses
        let inst = Max2SatInstance::new(3, vec![vec![1, 2], vec![-1, 3], vec![2]]).unwrap();
        assert_eq!(max2sat_bruteforce(&inst).unwrap().0, 3);
    }

    #[test]
    fn combinatorial_gauge_known_cases() {
        let r = combinatorial_gauge_check(&named_graph("cycle(6)").unwrap()).unwrap();
        assert_eq!(r.mc, 6);
        assert!((r.fcc - 1.0).abs() < 1e-9);
        assert!(r.equality);

        let r = combinatorial_gauge_check(&named_graph("petersen").unwrap()).unwrap();
        assert!(r.product >= 15.0 - 1e-9);

        let r = combinatorial_gauge_check(&named_graph("complete(5)").unwrap()).unwrap();
        assert_eq!(r.mc, 6);
        assert!(r.product >= 10.0 - 1e-9);
    }

    #[test]
    fn relaxation_dominates_oracle() {
        use crate::coherent::coherent_closure;
        use crate::schemes::scheme_from_configuration;
        for spec in ["petersen", "cycle(5)", "cycle(7)", "paley(9)", "complete(6)"] {
            let g = named_graph(spec).unwrap();
            let cfg = coherent_closure(&[g.adjacency_bin()]).unwrap();
            let s = scheme_from_configuration(&cfg).unwrap();
            let eta = crate::bounds::eta_scheme(&s, 1).unwrap().eta;
            let (mc, _) = maxcut_bruteforce(&g).unwrap();
            assert!(eta >= mc as f64 - 1e-9, "{spec}");
            if s.class_count() >= 2 {
                let gamma = crate::bounds::gamma_scheme(&s, 1, 2).unwrap().value;
                let g2 = s.class_graph(2);
                let (qp, _) = qp_bruteforce(&g, &g2).unwrap();
                assert!(gamma >= qp as f64 - 1e-9, "{spec}");
            }
        }
    }
}
