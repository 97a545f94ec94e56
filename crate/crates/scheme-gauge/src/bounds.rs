//! The cut-relaxation value eta, its gauge dual, and the quadratic-program
//! pair gamma / gamma-dual, computed in closed form over scheme
//! eigenmatrices with LP cross-checks and explicit certificates.
//!
//! All programs are stated for the graph given by one class of an
//! association scheme (or a pair of classes for gamma). The vector
//! relaxation of maximum cut is
//!   eta  = max { <L, M>/4 : M psd, diag(M) = 1 },
//! its gauge dual is
//!   eta° = min { mu : N psd, diag(N) = mu 1, L*(N) >= 4 on edges },
//! and the SDP dual is min { rho : Diag(x) - L/4 psd, rho >= 1^T x }.
//! For graphs in schemes, eta = (n/4)(k - lambda_min) and
//! eta° = 2k/(k - lambda_min), and eta * eta° = |E|.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{Graph, SymMatrix};
use crate::linalg::is_psd;
use crate::lp::{LinearProgram, LpStatus, Rel};
use crate::schemes::AssociationScheme;

/// The Goemans-Williamson constant, min over theta of (2/pi) theta/(1-cos theta).
pub const ALPHA_GW: f64 = 0.8785672057834233;

/// Tolerance for closed form vs. LP agreement.
const CROSS_TOL: f64 = 1e-7;
/// Certificate feasibility tolerance.
const FEAS_TOL: f64 = 1e-8;

fn check_class(s: &AssociationScheme, i: usize) -> Result<()> {
    if i == 0 || i > s.class_count() {
        return Err(Error::InvalidArgument(format!(
            "class index {i} must name a nontrivial class (1..={})",
            s.class_count()
        )));
    }
    Ok(())
}

fn cross_check(label: &str, closed: f64, lp: f64) -> Result<()> {
    if (closed - lp).abs() > CROSS_TOL * (1.0 + closed.abs()) {
        return Err(Error::Lp(format!(
            "{label}: closed form {closed} disagrees with LP value {lp}"
        )));
    }
    Ok(())
}

/// Matching primal/dual/gauge-dual certificates for the relaxation value of
/// one scheme class.
#[derive(Clone, Debug)]
pub struct EtaCertificates {
    pub eta: f64,
    /// Optimal relaxation solution, unit diagonal, psd.
    pub m: SymMatrix,
    /// SDP dual point with Diag(x) - L/4 psd.
    pub x: Vec<f64>,
    /// SDP dual objective, rho >= 1^T x.
    pub rho: f64,
    /// Gauge-dual matrix N = mu M.
    pub n_dual: SymMatrix,
    /// Gauge-dual objective mu = |E| / eta.
    pub mu: f64,
}

impl EtaCertificates {
    /// Checks every certificate against its feasibility predicate and the
    /// agreement of primal and dual objectives, without trusting the
    /// closed-form derivation.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let l = g.laplacian();
        let fail = |msg: String| Err(Error::Certificate(msg));

        for i in 0..n {
            if (self.m.get(i, i) - 1.0).abs() > FEAS_TOL {
                return fail(format!("diag(M)[{i}] != 1"));
            }
            if (self.n_dual.get(i, i) - self.mu).abs() > FEAS_TOL {
                return fail(format!("diag(N)[{i}] != mu"));
            }
        }
        if !is_psd(&self.m, FEAS_TOL)? {
            return fail("M is not psd".into());
        }
        if !is_psd(&self.n_dual, FEAS_TOL)? {
            return fail("N is not psd".into());
        }
        let primal = l.inner(&self.m) / 4.0;
        if (primal - self.eta).abs() > 1e-7 * (1.0 + self.eta.abs()) {
            return fail(format!("primal objective {primal} != eta {}", self.eta));
        }
        // Diag(x) - L/4 psd and rho >= 1^T x, with rho matching eta
        let slack = SymMatrix::from_fn(n, |i, j| {
            f64::from(i == j) * self.x[i] - l.get(i, j) / 4.0
        });
        if !is_psd(&slack, FEAS_TOL)? {
            return fail("Diag(x) - L/4 is not psd".into());
        }
        let xsum: f64 = self.x.iter().sum();
        if self.rho < xsum - FEAS_TOL {
            return fail(format!("rho {} < 1^T x {xsum}", self.rho));
        }
        if (self.rho - self.eta).abs() > 1e-7 * (1.0 + self.eta.abs()) {
            return fail(format!("dual objective {} != eta {}", self.rho, self.eta));
        }
        // L*(N) >= 4 on edges
        for (u, v) in g.edges() {
            let lstar =
                self.n_dual.get(u, u) + self.n_dual.get(v, v) - 2.0 * self.n_dual.get(u, v);
            if lstar < 4.0 - FEAS_TOL {
                return fail(format!("L*(N)[{u},{v}] = {lstar} < 4"));
            }
        }
        let gauge = self.mu * self.eta;
        let edges = g.edge_count() as f64;
        if (gauge - edges).abs() > 1e-7 * (1.0 + edges) {
            return fail(format!("mu * eta = {gauge} != |E| = {edges}"));
        }
        Ok(())
    }
}

/// Relaxation value of scheme class `i` with verified certificates:
/// eta = (n/4)(k - lambda_min), primal M = (n/m_j) E_j at the minimizing
/// eigenspace j, dual x = ((k - lambda_min)/4) 1, gauge dual N = (|E|/eta) M.
pub fn eta_scheme(s: &AssociationScheme, i: usize) -> Result<EtaCertificates> {
    check_class(s, i)?;
    let g = s.class_graph(i);
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = s.n() as f64;
    let k = s.degrees()[i] as f64;
    let p = s.p();
    let j = (0..p.len())
        .min_by(|&a, &b| p[a][i].partial_cmp(&p[b][i]).unwrap())
        .unwrap();
    let lambda_min = p[j][i];
    let eta = n / 4.0 * (k - lambda_min);
    let m_j = s.multiplicities()[j];
    let m = s.idempotents()[j].scale(n / m_j);
    let x = vec![(k - lambda_min) / 4.0; s.n()];
    let mu = g.edge_count() as f64 / eta;
    let certs = EtaCertificates {
        eta,
        n_dual: m.scale(mu),
        m,
        x,
        rho: eta,
        mu,
    };
    certs.verify(&g)?;
    Ok(certs)
}

/// Gauge-dual value of class `i` with its LP cross-check and dual witness.
#[derive(Clone, Debug)]
pub struct EtaDualResult {
    /// Closed form 2k / (k - lambda_min).
    pub value: f64,
    /// Independent LP optimum of min{x_0 : Px >= 0, x_0 >= 0, x_0 - x_i >= 2}.
    pub lp_value: f64,
    /// Dual-LP witness multiplier b = k/(k - lambda_min) (with a = 0).
    pub b: f64,
    /// Dual-LP witness y_l = ((b P_li / k + 1 - b) m_l) / n, nonnegative.
    pub y: Vec<f64>,
}

pub fn eta_dual_scheme(s: &AssociationScheme, i: usize) -> Result<EtaDualResult> {
    check_class(s, i)?;
    let n = s.n() as f64;
    let d1 = s.class_count() + 1;
    let k = s.degrees()[i] as f64;
    let lambda_min = s.lambda_min(i);
    let value = 2.0 * k / (k - lambda_min);

    // min x_0 : Px >= 0, x_0 >= 0, x_0 - x_i >= 2
    let mut obj = vec![0.0; d1];
    obj[0] = 1.0;
    let mut lp = LinearProgram::minimize(obj);
    for row in s.p() {
        lp.constraint(row.clone(), Rel::Ge, 0.0);
    }
    let mut edge_row = vec![0.0; d1];
    edge_row[0] = 1.0;
    edge_row[i] = -1.0;
    lp.constraint(edge_row, Rel::Ge, 2.0);
    for j in 1..d1 {
        lp.free(j);
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("gauge-dual LP not optimal: {:?}", sol.status)));
    }
    cross_check("eta dual", value, sol.value)?;

    let b = k / (k - lambda_min);
    let y: Vec<f64> = s
        .p()
        .iter()
        .zip(s.multiplicities())
        .map(|(row, &m_l)| (b * row[i] / k + 1.0 - b) * m_l / n)
        .collect();
    // witness feasibility: y >= 0 and P^T y = b e_i + (1 - b) e_0
    for (l, &yl) in y.iter().enumerate() {
        if yl < -FEAS_TOL {
            return Err(Error::Lp(format!("dual witness y_{l} = {yl} is negative")));
        }
    }
    for col in 0..d1 {
        let lhs: f64 = s.p().iter().zip(&y).map(|(row, yl)| row[col] * yl).sum();
        let rhs = if col == i {
            b
        } else if col == 0 {
            1.0 - b
        } else {
            0.0
        };
        if (lhs - rhs).abs() > 1e-7 * (1.0 + rhs.abs()) {
            return Err(Error::Lp(format!(
                "dual witness violates column {col}: {lhs} != {rhs}"
            )));
        }
    }
    Ok(EtaDualResult { value, lp_value: sol.value, b, y })
}

/// Checks eta * eta° = |E| for class `i`; returns (equality flag, product).
pub fn eta_product_check(s: &AssociationScheme, i: usize) -> Result<(bool, f64)> {
    let eta = eta_scheme(s, i)?.eta;
    let dual = eta_dual_scheme(s, i)?.value;
    let product = eta * dual;
    let edges = s.class_graph(i).edge_count() as f64;
    Ok(((product - edges).abs() <= 1e-6 * edges, product))
}

/// Both sides of the scaling equivalence for a matrix in the scheme's span:
/// `dual_feasible` is feasibility of N = mu M for the gauge dual, and
/// `primal_feasible` is feasibility of M for the relaxation with objective
/// at least |E|/mu. The equivalence predicts the two always agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalingEquivalence {
    pub dual_feasible: bool,
    pub primal_feasible: bool,
}

impl ScalingEquivalence {
    pub fn agree(&self) -> bool {
        self.dual_feasible == self.primal_feasible
    }
}

pub fn scaling_equivalence_check(
    s: &AssociationScheme,
    i: usize,
    m: &SymMatrix,
    mu: f64,
) -> Result<ScalingEquivalence> {
    check_class(s, i)?;
    if mu <= 0.0 {
        return Err(Error::InvalidArgument("mu must be positive".into()));
    }
    if m.n() != s.n() {
        return Err(Error::Dimension("matrix size differs from scheme".into()));
    }
    let residue = s.project(m)?.sub(m).max_abs();
    if residue > 1e-8 {
        return Err(Error::InvalidArgument(format!(
            "matrix is not in the scheme's span (projection residue {residue:.3e})"
        )));
    }
    let g = s.class_graph(i);
    let l = g.laplacian();
    let n = s.n();
    let psd = is_psd(m, FEAS_TOL)?;

    let unit_diag = (0..n).all(|u| (m.get(u, u) - 1.0).abs() <= FEAS_TOL);
    let primal_feasible =
        psd && unit_diag && l.inner(m) / 4.0 >= g.edge_count() as f64 / mu - FEAS_TOL;

    let const_diag = (0..n).all(|u| (mu * m.get(u, u) - mu).abs() <= FEAS_TOL);
    let edge_ok = g.edges().iter().all(|&(u, v)| {
        mu * (m.get(u, u) + m.get(v, v) - 2.0 * m.get(u, v)) >= 4.0 - FEAS_TOL
    });
    let dual_feasible = psd && const_diag && edge_ok;

    Ok(ScalingEquivalence { dual_feasible, primal_feasible })
}

/// Quadratic-relaxation value for the class pair (i1, i2): closed form
/// gamma = (n/2)((k1 + k2) + max_l (P_{l,i2} - P_{l,i1})), LP cross-check,
/// and the feasible covering witness y.
#[derive(Clone, Debug)]
pub struct GammaResult {
    pub value: f64,
    pub lp_value: f64,
    /// Feasible point of min{1^T y : R^T y = k1 e_{i1} - k2 e_{i2}, y >= 0}
    /// with objective max_l (P_{l,i2} - P_{l,i1}).
    pub witness_y: Vec<f64>,
}

fn check_pair(s: &AssociationScheme, i1: usize, i2: usize) -> Result<()> {
    check_class(s, i1)?;
    check_class(s, i2)?;
    if i1 == i2 {
        return Err(Error::InvalidArgument("classes must be distinct".into()));
    }
    Ok(())
}

pub fn gamma_scheme(s: &AssociationScheme, i1: usize, i2: usize) -> Result<GammaResult> {
    check_pair(s, i1, i2)?;
    let n = s.n() as f64;
    let d1 = s.class_count() + 1;
    let p = s.p();
    let k1 = s.degrees()[i1] as f64;
    let k2 = s.degrees()[i2] as f64;
    let alpha_star = p
        .iter()
        .map(|row| row[i2] - row[i1])
        .fold(f64::NEG_INFINITY, f64::max);
    let value = n / 2.0 * ((k1 + k2) + alpha_star);

    // covering form: min 1^T y over y >= 0 with (R^T y)_j = k1 [j=i1] - k2 [j=i2]
    let mut lp = LinearProgram::minimize(vec![1.0; d1]);
    for j in 1..d1 {
        let col: Vec<f64> = p.iter().map(|row| row[j]).collect();
        let rhs = if j == i1 {
            k1
        } else if j == i2 {
            -k2
        } else {
            0.0
        };
        lp.constraint(col, Rel::Eq, rhs);
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("gamma LP not optimal: {:?}", sol.status)));
    }
    let lp_value = n / 2.0 * ((k1 + k2) + sol.value);
    cross_check("gamma", value, lp_value)?;

    // witness y = y' + (alpha*/n) z, with y'_l = (P_{l,i1} - P_{l,i2}) m_l / n
    // and z the multiplicity vector
    let y: Vec<f64> = p
        .iter()
        .zip(s.multiplicities())
        .map(|(row, &m_l)| ((row[i1] - row[i2]) + alpha_star) * m_l / n)
        .collect();
    for (l, &yl) in y.iter().enumerate() {
        if yl < -FEAS_TOL {
            return Err(Error::Lp(format!("gamma witness y_{l} = {yl} is negative")));
        }
    }
    for j in 1..d1 {
        let lhs: f64 = p.iter().zip(&y).map(|(row, yl)| row[j] * yl).sum();
        let rhs = if j == i1 {
            k1
        } else if j == i2 {
            -k2
        } else {
            0.0
        };
        if (lhs - rhs).abs() > 1e-7 * (1.0 + rhs.abs()) {
            return Err(Error::Lp(format!(
                "gamma witness violates column {j}: {lhs} != {rhs}"
            )));
        }
    }
    Ok(GammaResult { value, lp_value, witness_y: y })
}

/// Optimal unit-diagonal psd point of the quadratic relaxation for the
/// class pair, from the LP over algebra coefficients:
/// M = I + sum x_j A_j with Rx >= -1 maximizing k2 x_{i2} - k1 x_{i1}.
pub fn gamma_primal_point(
    s: &AssociationScheme,
    i1: usize,
    i2: usize,
) -> Result<(SymMatrix, f64)> {
    check_pair(s, i1, i2)?;
    let n = s.n() as f64;
    let d1 = s.class_count() + 1;
    let p = s.p();
    let k1 = s.degrees()[i1] as f64;
    let k2 = s.degrees()[i2] as f64;
    // variables x_1..x_d
    let mut obj = vec![0.0; d1 - 1];
    obj[i1 - 1] = -k1;
    obj[i2 - 1] = k2;
    let mut lp = LinearProgram::maximize(obj);
    for row in p {
        lp.constraint(row[1..].to_vec(), Rel::Ge, -1.0);
    }
    for j in 0..d1 - 1 {
        lp.free(j);
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!(
            "gamma primal LP not optimal: {:?}",
            sol.status
        )));
    }
    let value = n / 2.0 * ((k1 + k2) + sol.value);
    let m = SymMatrix::from_fn(s.n(), |u, v| {
        let c = s.color(u, v);
        if c == 0 {
            1.0
        } else {
            sol.point[c - 1]
        }
    });
    if !is_psd(&m, FEAS_TOL)? {
        return Err(Error::Lp("gamma primal point is not psd".into()));
    }
    Ok((m, value))
}

/// Degenerate quadratic relaxation with an empty second edge set, which
/// reduces to twice the cut relaxation of the first graph.
pub fn gamma_empty_second(s: &AssociationScheme, i1: usize) -> Result<f64> {
    Ok(2.0 * eta_scheme(s, i1)?.eta)
}

/// Gauge dual of the quadratic relaxation by LP, both as the covering
/// minimum and the packing maximum, with the packing witness (y, a, b, c).
#[derive(Clone, Debug)]
pub struct GammaDualResult {
    pub value: f64,
    /// min { x_0 : Px >= 0, x_0 - x_{i1} >= 1, x_0 + x_{i2} >= 1, x_0 >= 0 }.
    pub min_value: f64,
    /// max { b + c : P^T y = b e_{i1} - c e_{i2} + (1-a-b-c) e_0, all >= 0 }.
    pub max_value: f64,
    pub witness_y: Vec<f64>,
    pub witness_a: f64,
    pub witness_b: f64,
    pub witness_c: f64,
}

pub fn gamma_dual_lp(s: &AssociationScheme, i1: usize, i2: usize) -> Result<GammaDualResult> {
    check_pair(s, i1, i2)?;
    let d1 = s.class_count() + 1;
    let p = s.p();

    let mut obj = vec![0.0; d1];
    obj[0] = 1.0;
    let mut min_lp = LinearProgram::minimize(obj);
    for row in p {
        min_lp.constraint(row.clone(), Rel::Ge, 0.0);
    }
    let mut r1 = vec![0.0; d1];
    r1[0] = 1.0;
    r1[i1] = -1.0;
    min_lp.constraint(r1, Rel::Ge, 1.0);
    let mut r2 = vec![0.0; d1];
    r2[0] = 1.0;
    r2[i2] = 1.0;
    min_lp.constraint(r2, Rel::Ge, 1.0);
    for j in 1..d1 {
        min_lp.free(j);
    }
    let min_sol = min_lp.solve()?;
    if min_sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!(
            "gauge-dual min LP not optimal: {:?}",
            min_sol.status
        )));
    }

    // variables y_0..y_d, a, b, c
    let nv = d1 + 3;
    let mut obj = vec![0.0; nv];
    obj[d1 + 1] = 1.0;
    obj[d1 + 2] = 1.0;
    let mut max_lp = LinearProgram::maximize(obj);
    for col in 0..d1 {
        let mut coeffs = vec![0.0; nv];
        for (l, row) in p.iter().enumerate() {
            coeffs[l] = row[col];
        }
        // right side b [col=i1] - c [col=i2] + (1-a-b-c) [col=0]
        let mut rhs = 0.0;
        if col == 0 {
            coeffs[d1] += 1.0; // a
            coeffs[d1 + 1] += 1.0; // b
            coeffs[d1 + 2] += 1.0; // c
            rhs = 1.0;
        }
        if col == i1 {
            coeffs[d1 + 1] -= 1.0;
        }
        if col == i2 {
            coeffs[d1 + 2] += 1.0;
        }
        max_lp.constraint(coeffs, Rel::Eq, rhs);
    }
    let max_sol = max_lp.solve()?;
    if max_sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!(
            "gauge-dual max LP not optimal: {:?}",
            max_sol.status
        )));
    }
    cross_check("gamma dual strong duality", min_sol.value, max_sol.value)?;

    Ok(GammaDualResult {
        value: min_sol.value,
        min_value: min_sol.value,
        max_value: max_sol.value,
        witness_y: max_sol.point[..d1].to_vec(),
        witness_a: max_sol.point[d1],
        witness_b: max_sol.point[d1 + 1],
        witness_c: max_sol.point[d1 + 2],
    })
}

/// Checks a flattened (y_0..y_d, a, b, c) point against the packing form of
/// the gauge dual and returns its objective value b + c.
pub fn gamma_dual_witness_value(
    s: &AssociationScheme,
    i1: usize,
    i2: usize,
    point: &[f64],
) -> Result<f64> {
    check_pair(s, i1, i2)?;
    let d1 = s.class_count() + 1;
    if point.len() != d1 + 3 {
        return Err(Error::Dimension(format!(
            "expected {} entries (y_0..y_{}, a, b, c)",
            d1 + 3,
            d1 - 1
        )));
    }
    if point.iter().any(|&v| v < -FEAS_TOL) {
        return Err(Error::InvalidArgument("negative entry in witness".into()));
    }
    let (y, abc) = point.split_at(d1);
    let (a, b, c) = (abc[0], abc[1], abc[2]);
    for col in 0..d1 {
        let lhs: f64 = s.p().iter().zip(y).map(|(row, yl)| row[col] * yl).sum();
        let mut rhs = 0.0;
        if col == 0 {
            rhs += 1.0 - a - b - c;
        }
        if col == i1 {
            rhs += b;
        }
        if col == i2 {
            rhs -= c;
        }
        if (lhs - rhs).abs() > 1e-7 * (1.0 + rhs.abs()) {
            return Err(Error::InvalidArgument(format!(
                "witness infeasible in column {col}: {lhs} != {rhs}"
            )));
        }
    }
    Ok(b + c)
}

/// Candidate gauge-dual value at eigenspace row `l` and mixing weight `c`:
/// k1/(k1 - P_{l,i1}) - c (k1 P_{l,i2} + k2 P_{l,i1}) / ((k1 - P_{l,i1}) k2).
/// The minimum over l is attained at the last row for distance-regular
/// graphs paired with their distance-2 graph.
pub fn gamma_dual_candidate(
    s: &AssociationScheme,
    i1: usize,
    i2: usize,
    l: usize,
    c: f64,
) -> f64 {
    let p = s.p();
    let k1 = s.degrees()[i1] as f64;
    let k2 = s.degrees()[i2] as f64;
    k1 / (k1 - p[l][i1]) - c * (k1 * p[l][i2] + k2 * p[l][i1]) / ((k1 - p[l][i1]) * k2)
}

/// Closed-form gauge dual for a distance-regular graph paired with its
/// distance-2 graph, cross-checked against the LP.
#[derive(Clone, Debug)]
pub struct GammaDualDrgResult {
    pub value: f64,
    pub lp: GammaDualResult,
}

pub fn gamma_dual_drg(g1: &Graph) -> Result<GammaDualDrgResult> {
    let (s, _) = crate::schemes::scheme_from_drg(g1)?;
    let d = s.class_count();
    if d < 2 {
        return Err(Error::InvalidArgument(
            "distance-regular graph must have diameter >= 2".into(),
        ));
    }
    let p = s.p();
    let k1 = s.degrees()[1] as f64;
    let k2 = s.degrees()[2] as f64;
    // rows are ordered by decreasing P_l1, so the last row carries lambda_min
    let pd1 = p[d][1];
    let pd2 = p[d][2];
    let value = if k2 * pd1 + k1 * pd2 > 0.0 {
        k1 / (k1 - pd1)
    } else {
        k1 / (k1 - pd1) - (k2 * pd1 + k1 * pd2) / (2.0 * k2 * (k1 - pd1))
    };
    let lp = gamma_dual_lp(&s, 1, 2)?;
    cross_check("gamma dual drg", value, lp.value)?;
    Ok(GammaDualDrgResult { value, lp })
}

/// Whether gamma * gamma-dual equals |E_1| + |E_2| for the class pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeClass {
    Equality,
    Strict,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeClassification {
    pub gamma: f64,
    pub gamma_dual: f64,
    pub product: f64,
    pub pair_edges: usize,
    pub gap: f64,
    pub class: GaugeClass,
}

pub fn gauge_classification(
    s: &AssociationScheme,
    i1: usize,
    i2: usize,
) -> Result<GaugeClassification> {
    let gamma = gamma_scheme(s, i1, i2)?.value;
    let dual = gamma_dual_lp(s, i1, i2)?.value;
    let pair_edges = s.n() * (s.degrees()[i1] + s.degrees()[i2]) as usize / 2;
    let product = gamma * dual;
    let gap = product - pair_edges as f64;
    if gap < -1e-6 * pair_edges as f64 {
        return Err(Error::Lp(format!(
            "weak gauge duality violated: product {product} < {pair_edges}"
        )));
    }
    let class = if gap.abs() <= 1e-6 * pair_edges as f64 {
        GaugeClass::Equality
    } else {
        GaugeClass::Strict
    };
    Ok(GaugeClassification { gamma, gamma_dual: dual, product, pair_edges, gap, class })
}

/// Per-instance summary of bounds, oracle values, products and sandwich
/// ratios, serialized into reports.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundsReport {
    pub graph: String,
    pub second_graph: Option<String>,
    pub edges: usize,
    pub eta: Option<f64>,
    pub eta_dual: Option<f64>,
    pub eta_product: Option<f64>,
    pub eta_equality: Option<bool>,
    pub gamma: Option<f64>,
    pub gamma_dual: Option<f64>,
    pub pair_edges: Option<usize>,
    pub gamma_product: Option<f64>,
    pub gamma_equality: Option<bool>,
    pub mc: Option<i64>,
    pub fcc: Option<f64>,
    pub qp: Option<i64>,
    /// fcc / eta_dual, between 1 and 1/alpha_GW for scheme graphs.
    pub fcc_ratio: Option<f64>,
    /// qp / gamma, between alpha_GW and 1 for scheme pairs.
    pub qp_ratio: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::coherent_closure;
    use crate::graphs::named_graph;
    use crate::schemes::{scheme_from_configuration, scheme_from_drg};

    fn scheme_of(spec: &str) -> AssociationScheme {
        let g = named_graph(spec).unwrap();
        let cfg = coherent_closure(&[g.adjacency_bin()]).unwrap();
        scheme_from_configuration(&cfg).unwrap()
    }

    #[test]
    fn eta_petersen() {
        let g = named_graph("petersen").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        let certs = eta_scheme(&s, 1).unwrap();
        assert!((certs.eta - 12.5).abs() < 1e-9);
        for (u, v) in g.edges() {
            assert!((certs.m.get(u, v) + 2.0 / 3.0).abs() < 1e-9);
        }
        assert!((certs.mu - 1.2).abs() < 1e-9);
        certs.verify(&g).unwrap();
    }

    #[test]
    fn eta_complete_graphs() {
        for n in [2usize, 3, 4, 6] {
            let s = scheme_of(&format!("complete({n})"));
            let certs = eta_scheme(&s, 1).unwrap();
            assert!((certs.eta - (n * n) as f64 / 4.0).abs() < 1e-9, "K_{n}");
        }
    }

    #[test]
    fn eta_cycle5() {
        let g = named_graph("cycle(5)").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        let certs = eta_scheme(&s, 1).unwrap();
        let expect = 5.0 / 4.0 * (2.0 - 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos());
        assert!((certs.eta - expect).abs() < 1e-9);
        assert!((certs.eta - 4.5225424859).abs() < 1e-9);
        certs.verify(&g).unwrap();
    }

    #[test]
    fn eta_rejects_identity_class_and_disconnected() {
        let s = scheme_of("petersen");
        assert!(eta_scheme(&s, 0).is_err());
        // distance-2 class of the 4-cycle is a perfect matching
        let g = named_graph("cycle(4)").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        match eta_scheme(&s, 2) {
            Err(Error::Disconnected) => {}
            other => panic!("expected Disconnected, got {other:?}"),
        }
    }

    #[test]
    fn eta_dual_values() {
        let s = scheme_of("petersen");
        let r = eta_dual_scheme(&s, 1).unwrap();
        assert!((r.value - 1.2).abs() < 1e-9);
        assert!((r.lp_value - 1.2).abs() < 1e-7);
        assert!((r.b - 0.6).abs() < 1e-9);

        for n in [2usize, 3, 5, 7] {
            let s = scheme_of(&format!("complete({n})"));
            let r = eta_dual_scheme(&s, 1).unwrap();
            assert!((r.value - 2.0 * (n - 1) as f64 / n as f64).abs() < 1e-9);
        }

        let s = scheme_of("paley(9)");
        let r = eta_dual_scheme(&s, 1).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn eta_product_equality() {
        for spec in ["petersen", "cycle(5)", "paley(9)", "paley(13)", "complete(6)", "hypercube(3)", "hamming(2,3)"] {
            let s = scheme_of(spec);
            let (eq, product) = eta_product_check(&s, 1).unwrap();
            assert!(eq, "{spec}: product {product}");
        }
    }

    #[test]
    fn scaling_equivalence_cases() {
        let s = scheme_of("petersen");
        let certs = eta_scheme(&s, 1).unwrap();
        let r = scaling_equivalence_check(&s, 1, &certs.m, 1.2).unwrap();
        assert_eq!(r, ScalingEquivalence { dual_feasible: true, primal_feasible: true });

        let r = scaling_equivalence_check(&s, 1, &SymMatrix::identity(10), 1.0).unwrap();
        assert_eq!(r, ScalingEquivalence { dual_feasible: false, primal_feasible: false });

        let s = scheme_of("complete(2)");
        let r = scaling_equivalence_check(&s, 1, &SymMatrix::all_ones(2), 1.0).unwrap();
        assert_eq!(r, ScalingEquivalence { dual_feasible: false, primal_feasible: false });
        assert!(r.agree());

        // not in the span
        let s = scheme_of("petersen");
        let spike = SymMatrix::from_fn(10, |i, j| f64::from(i == 0 && j == 1 || i == 1 && j == 0));
        assert!(scaling_equivalence_check(&s, 1, &spike, 1.0).is_err());
    }

    #[test]
    fn gamma_values() {
        let s = scheme_of("paley(9)");
        let r = gamma_scheme(&s, 1, 2).unwrap();
        assert!((r.value - 49.5).abs() < 1e-9);
        assert!((r.lp_value - 49.5).abs() < 1e-6);

        let s = scheme_of("petersen");
        let r = gamma_scheme(&s, 1, 2).unwrap();
        assert!((r.value - 60.0).abs() < 1e-9);

        // empty second edge set reduces to 2 eta
        let s = scheme_of("complete(3)");
        let v = gamma_empty_second(&s, 1).unwrap();
        assert!((v - 4.5).abs() < 1e-9);
    }

    #[test]
    fn gamma_primal_point_attains_value() {
        for spec in ["petersen", "paley(9)", "hamming(2,3)"] {
            let s = scheme_of(spec);
            let (m, value) = gamma_primal_point(&s, 1, 2).unwrap();
            let closed = gamma_scheme(&s, 1, 2).unwrap().value;
            assert!((value - closed).abs() < 1e-6 * (1.0 + closed), "{spec}");
            let g1 = s.class_graph(1);
            let g2 = s.class_graph(2);
            let obj = g1.laplacian().add(&g2.signless_laplacian()).inner(&m) / 2.0;
            assert!((obj - closed).abs() < 1e-6 * (1.0 + closed), "{spec}: {obj}");
            for u in 0..s.n() {
                assert!((m.get(u, u) - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn gamma_rejects_identity_class() {
        let s = scheme_of("petersen");
        assert!(gamma_scheme(&s, 0, 1).is_err());
        assert!(gamma_scheme(&s, 1, 0).is_err());
        assert!(gamma_scheme(&s, 1, 1).is_err());
    }

    #[test]
    fn gamma_dual_lp_values() {
        let s = scheme_of("paley(9)");
        let r = gamma_dual_lp(&s, 1, 2).unwrap();
        assert!((r.value - 0.75).abs() < 1e-7, "paley(9): {}", r.value);
        // optimal packing point (y_0, y_1, y_2, a, b, c): the c = 1/2
        // branch is active, so b = 1/4 and y_1 = 1/4
        let v = gamma_dual_witness_value(&s, 1, 2, &[0.0, 0.25, 0.0, 0.0, 0.25, 0.5]).unwrap();
        assert!((v - 0.75).abs() < 1e-12);
        // the b/c-swapped variant violates the equality constraints
        assert!(gamma_dual_witness_value(&s, 1, 2, &[0.0, 0.5, 0.0, 0.0, 0.5, 0.25]).is_err());

        let s = scheme_of("petersen");
        let r = gamma_dual_lp(&s, 1, 2).unwrap();
        assert!((r.value - 0.75).abs() < 1e-7);

        // 4-cycle: LP agrees with the distance-regular closed form
        let c4 = named_graph("cycle(4)").unwrap();
        let drg = gamma_dual_drg(&c4).unwrap();
        let (s, _) = scheme_from_drg(&c4).unwrap();
        let lp = gamma_dual_lp(&s, 1, 2).unwrap();
        assert!((drg.value - lp.value).abs() < 1e-7);
    }

    #[test]
    fn gamma_dual_drg_values() {
        let paley9 = named_graph("paley(9)").unwrap();
        let r = gamma_dual_drg(&paley9).unwrap();
        assert!((r.value - 0.75).abs() < 1e-9);

        let petersen = named_graph("petersen").unwrap();
        let r = gamma_dual_drg(&petersen).unwrap();
        assert!((r.value - 0.75).abs() < 1e-9);

        // 5-cycle: numeric sign test, LP agreement enforced internally
        let c5 = named_graph("cycle(5)").unwrap();
        let r = gamma_dual_drg(&c5).unwrap();
        assert!(r.value > 0.0);
    }

    #[test]
    fn gamma_dual_minimizing_row_is_last() {
        for spec in ["petersen", "cycle(5)", "cycle(8)", "hamming(2,3)", "paley(9)", "paley(13)", "hypercube(3)"] {
            let g = named_graph(spec).unwrap();
            let (s, _) = scheme_from_drg(&g).unwrap();
            let d = s.class_count();
            if d < 2 {
                continue;
            }
            for &c in &[0.0, 0.25, 0.5] {
                let argmin = (1..=d)
                    .min_by(|&a, &b| {
                        gamma_dual_candidate(&s, 1, 2, a, c)
                            .partial_cmp(&gamma_dual_candidate(&s, 1, 2, b, c))
                            .unwrap()
                    })
                    .unwrap();
                assert_eq!(argmin, d, "{spec} at c = {c}");
            }
        }
    }

    #[test]
    fn gauge_classification_cases() {
        let s = scheme_of("paley(9)");
        let r = gauge_classification(&s, 1, 2).unwrap();
        assert_eq!(r.class, GaugeClass::Strict);
        assert!((r.product - 37.125).abs() < 1e-6);
        assert_eq!(r.pair_edges, 36);

        let s = scheme_of("petersen");
        let r = gauge_classification(&s, 1, 2).unwrap();
        assert_eq!(r.class, GaugeClass::Equality);
        assert!((r.product - 45.0).abs() < 1e-6);

        let s = scheme_of("hamming(2,3)");
        let r = gauge_classification(&s, 1, 2).unwrap();
        let lp_product =
            gamma_scheme(&s, 1, 2).unwrap().lp_value * gamma_dual_lp(&s, 1, 2).unwrap().value;
        assert!((r.product - lp_product).abs() < 1e-6);
    }

    #[test]
    fn weak_gauge_duality_everywhere() {
        for spec in ["petersen", "cycle(5)", "cycle(7)", "paley(9)", "paley(13)", "hamming(2,3)", "hypercube(3)", "complete_bipartite(3,3)"] {
            let g = named_graph(spec).unwrap();
            let cfg = coherent_closure(&[g.adjacency_bin()]).unwrap();
            let s = scheme_from_configuration(&cfg).unwrap();
            let edges = s.class_graph(1).edge_count() as f64;
            let eta = eta_scheme(&s, 1).map(|c| c.eta);
            let dual = eta_dual_scheme(&s, 1).map(|r| r.value);
            if let (Ok(eta), Ok(dual)) = (eta, dual) {
                assert!(eta * dual >= edges - 1e-6, "{spec}");
            }
            if s.class_count() >= 2 {
                let gc = gauge_classification(&s, 1, 2).unwrap();
                assert!(gc.product >= gc.pair_edges as f64 - 1e-6, "{spec}");
            }
        }
    }

    #[test]
    fn fcc_sandwich_bounds_for_schemes() {
        // 1 <= fcc / eta_dual <= 1/alpha_GW on oracle-sized scheme graphs
        for spec in ["petersen", "cycle(5)", "cycle(6)", "complete(5)", "paley(9)", "hypercube(3)"] {
            let g = named_graph(spec).unwrap();
            let s = scheme_of(spec);
            let dual = eta_dual_scheme(&s, 1).unwrap().value;
            let fcc = crate::oracles::fcc_lp(&g).unwrap().value;
            let ratio = fcc / dual;
            assert!(ratio >= 1.0 - 1e-7, "{spec}: ratio {ratio}");
            assert!(ratio <= 1.0 / ALPHA_GW + 1e-7, "{spec}: ratio {ratio}");
        }
    }
}
