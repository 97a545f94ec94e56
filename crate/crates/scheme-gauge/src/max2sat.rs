//! MAX 2-SAT: DIMACS CNF parsing, the quadratic +-1 encoding with an
//! auxiliary truth variable, extraction of the graph pair (G_1, G_2) from
//! the encoding's coefficient supports, and the spectral-bound pipeline.
//!
//! A clause over literals l_i = s_i z_{v_i} (s_i = +-1) has value
//!   v(l_i)        = (1 + s_i x_0 x_{v_i}) / 2,
//!   v(l_i | l_j)  = 1 - v(~l_i) v(~l_j)
//!                 = [(1 + s_i x_0 x_{v_i}) + (1 + s_j x_0 x_{v_j})
//!                    + (1 - s_i s_j x_{v_i} x_{v_j})] / 4,
//! where x_0 encodes truth (z_i true iff x_i = x_0). Coefficients are kept
//! in exact quarter units so aggregation and uniformity detection are free
//! of float drift; the identities are validated exhaustively in tests.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::{self, ALPHA_GW};
use crate::coherent::{coherent_closure, Membership};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::schemes::scheme_from_configuration;

/// A 1- or 2-literal clause; literals are signed 1-based variable indices.
pub type Clause = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Max2SatInstance {
    pub n_vars: usize,
    pub clauses: Vec<Clause>,
}

impl Max2SatInstance {
    pub fn new(n_vars: usize, clauses: Vec<Clause>) -> Result<Max2SatInstance> {
        for (idx, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 2 {
                return Err(Error::InvalidArgument(format!(
                    "clause {idx} has {} literals (must be 1 or 2)",
                    clause.len()
                )));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(Error::InvalidArgument(format!(
                        "clause {idx}: literal {lit} out of range"
                    )));
                }
            }
        }
        Ok(Max2SatInstance { n_vars, clauses })
    }

    /// Number of clauses satisfied by a truth assignment.
    pub fn satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|clause| {
                clause.iter().any(|&lit| {
                    let v = lit.unsigned_abs() as usize - 1;
                    assignment[v] == (lit > 0)
                })
            })
            .count()
    }
}

/// Parses DIMACS CNF ("p cnf <vars> <clauses>", clauses 0-terminated,
/// possibly spanning lines). Weighted CNF and clauses with more than two
/// literals are rejected, with the offending line number reported.
pub fn parse_dimacs(text: &str) -> Result<Max2SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let err = |line: usize, msg: String| Error::Dimacs { line, msg };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate problem line".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.first() == Some(&"wcnf") {
                return Err(err(line_no, "weighted CNF is not supported".into()));
            }
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(err(line_no, format!("malformed problem line {line:?}")));
            }
            let n_vars = fields[1]
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad variable count {:?}", fields[1])))?;
            let n_clauses = fields[2]
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad clause count {:?}", fields[2])))?;
            header = Some((n_vars, n_clauses));
            continue;
        }
        let (n_vars, _) = header.ok_or_else(|| err(line_no, "clause before problem line".into()))?;
        for tok in line.split_whitespace() {
            let lit = tok
                .parse::<i32>()
                .map_err(|_| err(line_no, format!("bad token {tok:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(err(line_no, "empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > n_vars {
                    return Err(err(line_no, format!("variable {lit} out of range")));
                }
                if current.len() == 2 {
                    return Err(err(line_no, "clause exceeds 2 literals".into()));
                }
                current.push(lit);
            }
        }
    }
    let (n_vars, n_clauses) = header.ok_or_else(|| err(0, "missing problem line".into()))?;
    if !current.is_empty() {
        return Err(err(text.lines().count(), "unterminated clause".into()));
    }
    if clauses.len() != n_clauses {
        return Err(err(
            text.lines().count(),
            format!("expected {n_clauses} clauses, found {}", clauses.len()),
        ));
    }
    Max2SatInstance::new(n_vars, clauses)
}

/// The quadratic +-1 form of an instance over variables x_0..x_n, with
/// coefficients in exact quarter units: value at any assignment equals
/// `constant_q/4 + sum alpha (1-x_i x_j) + sum beta (1+x_i x_j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticForm {
    /// Number of original variables; the form has n_vars + 1 vertices.
    pub n_vars: usize,
    /// Quarter-unit coefficients of the 1 - x_i x_j terms, keyed (i < j).
    pub alpha_q: BTreeMap<(usize, usize), u64>,
    /// Quarter-unit coefficients of the 1 + x_i x_j terms, keyed (i < j).
    pub beta_q: BTreeMap<(usize, usize), u64>,
    /// Constant quarter units (tautological clauses).
    pub constant_q: u64,
}

impl QuadraticForm {
    /// Value of the form at a +-1 assignment of x_0..x_n, in quarter units
    /// (always divisible by 4 for an encoding of a SAT instance).
    pub fn evaluate_quarters(&self, x: &[i8]) -> u64 {
        debug_assert_eq!(x.len(), self.n_vars + 1);
        let mut total = self.constant_q;
        for (&(i, j), &w) in &self.alpha_q {
            if x[i] != x[j] {
                total += 2 * w;
            }
        }
        for (&(i, j), &w) in &self.beta_q {
            if x[i] == x[j] {
                total += 2 * w;
            }
        }
        total
    }

    pub fn evaluate(&self, x: &[i8]) -> f64 {
        self.evaluate_quarters(x) as f64 / 4.0
    }

    /// Value at a truth assignment (x_0 fixed to +1).
    pub fn evaluate_truth(&self, assignment: &[bool]) -> f64 {
        let x: Vec<i8> = std::iter::once(1i8)
            .chain(assignment.iter().map(|&b| if b { 1 } else { -1 }))
            .collect();
        self.evaluate(&x)
    }
}

fn bump(map: &mut BTreeMap<(usize, usize), u64>, i: usize, j: usize, quarters: u64) {
    let key = if i < j { (i, j) } else { (j, i) };
    *map.entry(key).or_insert(0) += quarters;
}

/// Encodes an instance as a quadratic form; exact and aggregating, so the
/// value at any +-1 assignment equals the satisfied-clause count.
pub fn encode(inst: &Max2SatInstance) -> QuadraticForm {
    let mut q = QuadraticForm { n_vars: inst.n_vars, ..Default::default() };
    // half-unit literal term (1 + s x_0 x_v)/2 in quarter units
    let literal = |q: &mut QuadraticForm, lit: i32, quarters: u64| {
        let v = lit.unsigned_abs() as usize;
        if lit > 0 {
            bump(&mut q.beta_q, 0, v, quarters);
        } else {
            bump(&mut q.alpha_q, 0, v, quarters);
        }
    };
    for clause in &inst.clauses {
        match clause.as_slice() {
            [lit] => literal(&mut q, *lit, 2),
            [a, b] if a == b => literal(&mut q, *a, 2),
            [a, b] if *a == -*b => q.constant_q += 4, // tautology
            [a, b] => {
                literal(&mut q, *a, 1);
                literal(&mut q, *b, 1);
                let (va, vb) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
                if a.signum() == b.signum() {
                    bump(&mut q.alpha_q, va, vb, 1);
                } else {
                    bump(&mut q.beta_q, va, vb, 1);
                }
            }
            _ => unreachable!("instances are validated to 1 or 2 literals"),
        }
    }
    q
}

/// The graph pair extracted from a quadratic form's coefficient supports.
#[derive(Clone, Debug)]
pub struct GraphPair {
    pub g1: Graph,
    pub g2: Graph,
    /// True when all nonzero alpha and beta coefficients equal one common
    /// constant, so the pair fits the uniform-weight framework.
    pub uniform: bool,
    /// The common weight when uniform.
    pub weight: Option<f64>,
    /// True when some pair carries both an alpha and a beta coefficient;
    /// such instances are excluded from the scheme pipeline.
    pub overlapping: bool,
}

pub fn to_graph_pair(q: &QuadraticForm) -> Result<GraphPair> {
    let n = q.n_vars + 1;
    let e1: Vec<(usize, usize)> = q.alpha_q.keys().copied().collect();
    let e2: Vec<(usize, usize)> = q.beta_q.keys().copied().collect();
    let overlapping = q.alpha_q.keys().any(|k| q.beta_q.contains_key(k));
    let weights: Vec<u64> = q.alpha_q.values().chain(q.beta_q.values()).copied().collect();
    let uniform = !weights.is_empty() && weights.iter().all(|&w| w == weights[0]);
    Ok(GraphPair {
        g1: Graph::from_edges(n, &e1)?,
        g2: Graph::from_edges(n, &e2)?,
        uniform,
        weight: uniform.then(|| weights[0] as f64 / 4.0),
        overlapping,
    })
}

/// Full pipeline report for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n_vars: usize,
    pub n_clauses: usize,
    pub uniform: bool,
    pub overlapping: bool,
    pub weight: Option<f64>,
    /// Tautological-clause constant contribution.
    pub constant: f64,
    /// Why scheme bounds are unavailable, when they are.
    pub bounds_unavailable: Option<String>,
    /// Upper bound w * gamma on the quadratic objective (scheme case).
    pub gamma_scaled: Option<f64>,
    /// Gauge dual when G_1 is distance-regular with G_2 its distance-2 graph.
    pub gamma_dual: Option<f64>,
    /// Exact optimum from the oracle when the instance is small enough.
    pub oracle_optimum: Option<usize>,
    /// qp oracle value of the extracted pair, scaled by w.
    pub qp_scaled: Option<f64>,
    /// qp_scaled / gamma_scaled, in [alpha_GW, 1] when both are present.
    pub sandwich_ratio: Option<f64>,
}

/// Runs encode -> graph pair -> coherent closure -> scheme bounds, plus the
/// brute-force oracle when the instance is small; scheme-detection failures
/// leave the bounds fields empty but keep oracle results.
pub fn bound_pipeline(inst: &Max2SatInstance, oracle_limit: usize) -> Result<PipelineReport> {
    let q = encode(inst);
    let pair = to_graph_pair(&q)?;
    let mut report = PipelineReport {
        n_vars: inst.n_vars,
        n_clauses: inst.clauses.len(),
        uniform: pair.uniform,
        overlapping: pair.overlapping,
        weight: pair.weight,
        constant: q.constant_q as f64 / 4.0,
        bounds_unavailable: None,
        gamma_scaled: None,
        gamma_dual: None,
        oracle_optimum: None,
        qp_scaled: None,
        sandwich_ratio: None,
    };

    if inst.n_vars <= oracle_limit {
        let (best, _) = crate::oracles::max2sat_bruteforce_limited(inst, oracle_limit)?;
        report.oracle_optimum = Some(best);
        if let Some(w) = pair.weight {
            if !pair.overlapping {
                // the pair graphs carry one extra vertex for the constant term
                let (qp, _) =
                    crate::oracles::qp_bruteforce_limited(&pair.g1, &pair.g2, oracle_limit + 1)?;
                report.qp_scaled = Some(w * qp as f64);
            }
        }
    }

    report.bounds_unavailable = match scheme_pair_bounds(&pair) {
        Ok(b) => {
            let w = pair.weight.unwrap();
            report.gamma_scaled = Some(w * b.gamma);
            report.gamma_dual = b.gamma_dual;
            if let Some(qp) = report.qp_scaled {
                let ratio = qp / (w * b.gamma);
                if !(ALPHA_GW - 1e-7..=1.0 + 1e-7).contains(&ratio) {
                    return Err(Error::Certificate(format!(
                        "sandwich violated: qp/gamma = {ratio}"
                    )));
                }
                report.sandwich_ratio = Some(ratio);
            }
            None
        }
        Err(e) => Some(e.to_string()),
    };
    Ok(report)
}

/// Scheme detection result for a uniform disjoint graph pair.
#[derive(Clone, Debug)]
pub struct SchemePairBounds {
    pub scheme: crate::schemes::AssociationScheme,
    pub i1: usize,
    pub i2: usize,
    /// Unscaled quadratic-relaxation value of the pair.
    pub gamma: f64,
    /// Gauge dual when the distance-regular + distance-2 hypothesis holds.
    pub gamma_dual: Option<f64>,
}

/// Detects an association scheme containing both adjacency matrices via the
/// coherent closure of the pair and computes the scheme bounds.
pub fn scheme_pair_bounds(pair: &GraphPair) -> Result<SchemePairBounds> {
    if !pair.uniform {
        return Err(Error::NotScheme("edge weights are not uniform".into()));
    }
    if pair.overlapping {
        return Err(Error::NotScheme(
            "alpha and beta supports overlap".into(),
        ));
    }
    if pair.g1.edge_count() == 0 || pair.g2.edge_count() == 0 {
        return Err(Error::NotScheme("a graph of the pair is edgeless".into()));
    }
    let a1 = pair.g1.adjacency_bin();
    let a2 = pair.g2.adjacency_bin();
    let cfg = coherent_closure(&[a1.clone(), a2.clone()])?;
    let s = scheme_from_configuration(&cfg)?;
    let class_of = |a: &crate::graphs::BinMatrix| -> Result<usize> {
        match cfg.membership(a)? {
            Membership::Belongs(c) => Ok(c),
            other => Err(Error::NotScheme(format!(
                "adjacency matrix is not a single class ({other:?})"
            ))),
        }
    };
    // class indices in the closure, then relocated to the scheme's
    // renumbering (identity class moved to 0)
    let c1 = class_of(&a1)?;
    let c2 = class_of(&a2)?;
    let find = |c: usize| -> Result<usize> {
        let (u, v) = (0..s.n())
            .flat_map(|u| (0..s.n()).map(move |v| (u, v)))
            .find(|&(u, v)| cfg.color(u, v) == c)
            .ok_or_else(|| Error::NotScheme("empty class".into()))?;
        Ok(s.color(u, v))
    };
    let (i1, i2) = (find(c1)?, find(c2)?);
    let gamma = bounds::gamma_scheme(&s, i1, i2)?.value;

    // gauge dual only under the distance-regular + distance-2 hypothesis
    let dual = match crate::schemes::scheme_from_drg(&pair.g1) {
        Ok(_) => {
            // distance_graphs is [G_1, ..., G_diam]
            let dist2 = pair
                .g1
                .distance_graphs()
                .ok()
                .and_then(|ds| ds.get(1).cloned());
            match dist2 {
                Some(d2) if d2.adjacency_bin() == pair.g2.adjacency_bin() => {
                    Some(bounds::gamma_dual_drg(&pair.g1)?.value)
                }
                _ => None,
            }
        }
        Err(_) => None,
    };
    Ok(SchemePairBounds { scheme: s, i1, i2, gamma, gamma_dual: dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..1usize << n).map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    #[test]
    fn dimacs_basic() {
        let inst = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        assert_eq!(inst.n_vars, 2);
        assert_eq!(inst.clauses, vec![vec![1, 2]]);

        let inst = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(inst.clauses, vec![vec![1], vec![-1]]);

        // clauses may span lines
        let inst = parse_dimacs("p cnf 2 2\n1\n2 0 -1 -2 0\n").unwrap();
        assert_eq!(inst.clauses, vec![vec![1, 2], vec![-1, -2]]);
    }

    #[test]
    fn dimacs_errors() {
        for (text, needle) in [
            ("p cnf 3 1\n1 2 3 0\n", "exceeds 2 literals"),
            ("p cnf 1 1\n2 0\n", "out of range"),
            ("p wcnf 1 1 2\n2 1 0\n", "weighted"),
            ("1 0\n", "before problem line"),
            ("p cnf 1 2\n1 0\n", "expected 2 clauses"),
            ("p cnf 1 1\n1\n", "unterminated"),
            ("p cnf 1 1\nx 0\n", "bad token"),
        ] {
            match parse_dimacs(text) {
                Err(Error::Dimacs { msg, .. }) => {
                    assert!(msg.contains(needle), "{text:?}: {msg}")
                }
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
        // line numbers reported
        match parse_dimacs("p cnf 3 1\nc filler\n1 2 3 0\n") {
            Err(Error::Dimacs { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn encoding_examples() {
        // (z1): beta_01 = 1/2
        let q = encode(&Max2SatInstance::new(1, vec![vec![1]]).unwrap());
        assert_eq!(q.beta_q.get(&(0, 1)), Some(&2));
        assert!(q.alpha_q.is_empty());

        // (z1 | z2): beta_01 = beta_02 = 1/4, alpha_12 = 1/4
        let q = encode(&Max2SatInstance::new(2, vec![vec![1, 2]]).unwrap());
        assert_eq!(q.beta_q.get(&(0, 1)), Some(&1));
        assert_eq!(q.beta_q.get(&(0, 2)), Some(&1));
        assert_eq!(q.alpha_q.get(&(1, 2)), Some(&1));

        // (~z1 | ~z2): alpha_01 = alpha_02 = 1/4 and a quarter on pair {1,2}
        // whose side (alpha) is fixed by the truth-table identity below
        let q = encode(&Max2SatInstance::new(2, vec![vec![-1, -2]]).unwrap());
        assert_eq!(q.alpha_q.get(&(0, 1)), Some(&1));
        assert_eq!(q.alpha_q.get(&(0, 2)), Some(&1));
        assert_eq!(q.alpha_q.get(&(1, 2)), Some(&1));

        // tautology
        let q = encode(&Max2SatInstance::new(1, vec![vec![1, -1]]).unwrap());
        assert_eq!(q.constant_q, 4);
        assert!(q.alpha_q.is_empty() && q.beta_q.is_empty());

        // duplicate literal collapses to a unit clause
        let q = encode(&Max2SatInstance::new(1, vec![vec![1, 1]]).unwrap());
        assert_eq!(q.beta_q.get(&(0, 1)), Some(&2));
    }

    #[test]
    fn encoding_is_exact_on_all_assignments() {
        let cases: Vec<Max2SatInstance> = vec![
            Max2SatInstance::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]])
                .unwrap(),
            Max2SatInstance::new(3, vec![vec![1], vec![-1], vec![2, 3], vec![-2, -3], vec![1, -3]])
                .unwrap(),
            Max2SatInstance::new(1, vec![vec![1, -1], vec![1]]).unwrap(),
        ];
        for inst in &cases {
            let q = encode(inst);
            for a in assignments(inst.n_vars) {
                assert_eq!(
                    inst.satisfied(&a) as f64,
                    q.evaluate_truth(&a),
                    "{inst:?} at {a:?}"
                );
            }
        }
    }

    #[test]
    fn encoding_exact_on_random_instances() {
        let mut rng = crate::rng::SplitMix64::new(2024);
        for _ in 0..100 {
            let n = 2 + rng.below(7);
            let m = 1 + rng.below(20);
            let clauses: Vec<Clause> = (0..m)
                .map(|_| {
                    let len = 1 + rng.below(2);
                    (0..len)
                        .map(|_| {
                            let v = 1 + rng.below(n) as i32;
                            if rng.below(2) == 0 { v } else { -v }
                        })
                        .collect()
                })
                .collect();
            let inst = Max2SatInstance::new(n, clauses).unwrap();
            let q = encode(&inst);
            for a in assignments(n) {
                let sat = inst.satisfied(&a);
                let x: Vec<i8> = std::iter::once(1i8)
                    .chain(a.iter().map(|&b| if b { 1 } else { -1 }))
                    .collect();
                assert_eq!(q.evaluate_quarters(&x), 4 * sat as u64);
                // global sign flip leaves the form unchanged
                let neg: Vec<i8> = x.iter().map(|&v| -v).collect();
                assert_eq!(q.evaluate_quarters(&neg), q.evaluate_quarters(&x));
            }
        }
    }

    #[test]
    fn graph_pair_extraction() {
        // all four sign patterns on two variables: alpha and beta aggregate
        // to weight 1/2 on every pair, so the supports coincide
        let inst =
            Max2SatInstance::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]])
                .unwrap();
        let pair = to_graph_pair(&encode(&inst)).unwrap();
        assert!(pair.uniform);
        assert_eq!(pair.weight, Some(0.5));
        assert!(pair.overlapping);
        assert_eq!(pair.g1.edge_count(), 3);
        assert_eq!(pair.g2.edge_count(), 3);

        // single clause: uniform at 1/4
        let inst = Max2SatInstance::new(2, vec![vec![1, 2]]).unwrap();
        let pair = to_graph_pair(&encode(&inst)).unwrap();
        assert!(pair.uniform);
        assert_eq!(pair.weight, Some(0.25));

        // empty instance: edgeless pair, not uniform (no weights at all)
        let inst = Max2SatInstance::new(3, vec![]).unwrap();
        let pair = to_graph_pair(&encode(&inst)).unwrap();
        assert_eq!(pair.g1.edge_count(), 0);
        assert_eq!(pair.g2.edge_count(), 0);
        assert!(!pair.uniform);

        // overlap: (z1 | z2) and (~z1 | z2) put quarters on {1,2} in both maps
        let inst = Max2SatInstance::new(2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
        let pair = to_graph_pair(&encode(&inst)).unwrap();
        assert!(pair.overlapping);
    }

    #[test]
    fn pipeline_satisfiable_instance() {
        let inst = Max2SatInstance::new(3, vec![vec![1, 2], vec![-1, 3], vec![2, 3]]).unwrap();
        let report = bound_pipeline(&inst, 26).unwrap();
        assert_eq!(report.oracle_optimum, Some(3));
    }

    #[test]
    fn pipeline_empty_instance() {
        let inst = Max2SatInstance::new(2, vec![]).unwrap();
        let report = bound_pipeline(&inst, 26).unwrap();
        assert_eq!(report.oracle_optimum, Some(0));
        assert!(report.bounds_unavailable.is_some());
    }

    #[test]
    fn pipeline_complete_two_variable_instance() {
        let inst =
            Max2SatInstance::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]])
                .unwrap();
        let report = bound_pipeline(&inst, 26).unwrap();
        assert_eq!(report.oracle_optimum, Some(3));
        // alpha/beta supports coincide, so scheme bounds are unavailable
        assert!(report.overlapping);
        assert!(report.bounds_unavailable.is_some());
    }
}
