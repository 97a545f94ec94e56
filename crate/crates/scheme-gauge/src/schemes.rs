//! Association schemes: eigenmatrices P and Q, multiplicities, primitive
//! idempotents, intersection arrays of distance-regular graphs, and
//! walk-regularity tests.
//!
//! Eigenstructure is computed from the (d+1)-dimensional intersection
//! matrices B_i rather than by diagonalizing n-dimensional class matrices.
//! For a symmetric scheme, conjugating B_i^T by diag(sqrt(k_l)) gives a
//! symmetric matrix (k_l p_ij^l = k_j p_il^j), so the common eigenvectors
//! come out of the symmetric Jacobi solver, with degeneracies resolved by
//! the later B_i.

use serde::Serialize;

use crate::coherent::{configuration_from_coloring, CoherentConfiguration, PTensor};
use crate::error::{Error, Result};
use crate::graphs::{BinMatrix, Graph, SymMatrix};
use crate::linalg::{eig_sym, invert};

/// Eigenvalue-grouping base tolerance for identifying common eigenspaces.
const GROUP_TOL: f64 = 1e-7;

/// A (symmetric) association scheme with full eigenstructure.
#[derive(Clone, Debug)]
pub struct AssociationScheme {
    n: usize,
    d: usize,
    /// Pair coloring with class 0 = identity.
    color: Vec<u32>,
    p_tensor: PTensor,
    degrees: Vec<i64>,
    /// First eigenmatrix, rows in canonical order (row 0 = degrees).
    pmat: Vec<Vec<f64>>,
    /// Second eigenmatrix, Q = n P^{-1}.
    qmat: Vec<Vec<f64>>,
    /// Multiplicities m_l (first row of Q).
    mult: Vec<f64>,
}

impl AssociationScheme {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of nontrivial classes (classes are 0..=d).
    pub fn class_count(&self) -> usize {
        self.d
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        self.color[u * self.n + v] as usize
    }

    pub fn class_matrix(&self, i: usize) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| f64::from(self.color(u, v) == i))
    }

    pub fn class_matrix_bin(&self, i: usize) -> BinMatrix {
        BinMatrix::from_fn(self.n, |u, v| self.color(u, v) == i)
    }

    /// Class i as a graph (i >= 1).
    pub fn class_graph(&self, i: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|u| {
                ((u + 1)..self.n)
                    .filter(move |&v| self.color(u, v) == i)
                    .map(move |v| (u, v))
            })
            .collect();
        Graph::from_edges(self.n, &edges).expect("class matrix is a simple graph")
    }

    pub fn intersection_numbers(&self) -> &PTensor {
        &self.p_tensor
    }

    /// Degrees k_i = p_ii^0.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// First eigenmatrix P; rows are eigenspaces in canonical order
    /// (row 0 = (1, k_1, ..., k_d), then strictly decreasing P_l1 with a
    /// full-row lexicographic fallback on ties).
    pub fn p(&self) -> &[Vec<f64>] {
        &self.pmat
    }

    /// Second eigenmatrix Q = n P^{-1}.
    pub fn q(&self) -> &[Vec<f64>] {
        &self.qmat
    }

    /// Multiplicities m_l = trace(E_l) (first row of Q).
    pub fn multiplicities(&self) -> &[f64] {
        &self.mult
    }

    /// Primitive idempotents E_0..E_d, with E_i = (1/n) sum_l Q_li A_l.
    pub fn idempotents(&self) -> Vec<SymMatrix> {
        let n = self.n;
        (0..=self.d)
            .map(|i| {
                SymMatrix::from_fn(n, |u, v| self.qmat[self.color(u, v)][i] / n as f64)
            })
            .collect()
    }

    /// Orthogonal projection onto the Bose-Mesner algebra.
    pub fn project(&self, m: &SymMatrix) -> Result<SymMatrix> {
        self.to_configuration().project(m)
    }

    pub fn to_configuration(&self) -> CoherentConfiguration {
        configuration_from_coloring(self.n, self.color.clone())
            .expect("scheme coloring is coherent")
    }

    /// Smallest eigenvalue of class i, min over rows of P_li.
    pub fn lambda_min(&self, i: usize) -> f64 {
        self.pmat
            .iter()
            .map(|row| row[i])
            .fold(f64::INFINITY, f64::min)
    }

    /// Per-row residuals of the distance-regular eigenvalue relation
    /// P_l2 = (k_2/(b_1 k_1)) (P_l1^2 - (k_1 - b_1 - 1) P_l1 - k_1).
    pub fn drg_eigenvalue_relation(&self, ia: &IntersectionArray) -> Result<RelationReport> {
        if self.d < 2 {
            return Err(Error::InvalidArgument(
                "eigenvalue relation needs d >= 2".into(),
            ));
        }
        let k1 = self.degrees[1] as f64;
        let k2 = self.degrees[2] as f64;
        let b1 = ia.b[1] as f64;
        let residuals: Vec<f64> = self
            .pmat
            .iter()
            .map(|row| {
                let p1 = row[1];
                let rhs = k2 / (b1 * k1) * (p1 * p1 - (k1 - b1 - 1.0) * p1 - k1);
                (row[2] - rhs).abs()
            })
            .collect();
        let max = residuals.iter().fold(0.0f64, |a, &b| a.max(b));
        Ok(RelationReport {
            residuals,
            pass: max <= 1e-7,
        })
    }

    /// JSON-serializable summary.
    pub fn summary(&self) -> SchemeSummary {
        SchemeSummary {
            n: self.n,
            classes: self.d + 1,
            color: (0..self.n)
                .map(|u| (0..self.n).map(|v| self.color(u, v) as u32).collect())
                .collect(),
            degrees: self.degrees.clone(),
            p: self.pmat.clone(),
            q: self.qmat.clone(),
            multiplicities: self.mult.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeSummary {
    pub n: usize,
    pub classes: usize,
    pub color: Vec<Vec<u32>>,
    pub degrees: Vec<i64>,
    pub p: Vec<Vec<f64>>,
    pub q: Vec<Vec<f64>>,
    pub multiplicities: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub residuals: Vec<f64>,
    pub pass: bool,
}

/// Intersection array {b_0, ..., b_{d-1}; c_1, ..., c_d} of a
/// distance-regular graph. `b[0]` is the valency; `c[0]` is unused and
/// stored as 0 to keep indices aligned with the literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

/// Builds the scheme of a distance-regular graph from its distance
/// partition, verifying distance regularity pair by pair.
pub fn scheme_from_drg(g: &Graph) -> Result<(AssociationScheme, IntersectionArray)> {
    let n = g.n();
    if g.regularity().is_none() {
        return Err(Error::InvalidArgument("graph is not regular".into()));
    }
    let dist = g.distance_matrix()?; // errors when disconnected
    let diam = dist.iter().flatten().copied().max().unwrap_or(0);

    // distance-regularity: the neighbor counts one step closer (c_i) and one
    // step farther (b_i) must be constant over all pairs at distance i
    let mut b = vec![-1i64; diam + 1];
    let mut c = vec![-1i64; diam + 1];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let i = dist[u][v];
            let closer = (0..n)
                .filter(|&w| g.has_edge(v, w) && dist[u][w] == i - 1)
                .count() as i64;
            let farther = (0..n)
                .filter(|&w| g.has_edge(v, w) && dist[u][w] == i + 1)
                .count() as i64;
            for (slot, val) in [(&mut c[i], closer), (&mut b[i], farther)] {
                if *slot < 0 {
                    *slot = val;
                } else if *slot != val {
                    return Err(Error::NotDistanceRegular { u, v, dist: i });
                }
            }
        }
    }
    let ia = IntersectionArray {
        b: {
            let mut out = vec![g.degree(0) as i64];
            out.extend(b[1..diam].iter().copied());
            out
        },
        c: {
            let mut out = vec![0i64];
            out.extend(c[1..=diam].iter().copied());
            out
        },
    };

    let color: Vec<u32> = (0..n * n)
        .map(|idx| dist[idx / n][idx % n] as u32)
        .collect();
    let cfg = configuration_from_coloring(n, color)?;
    let scheme = scheme_from_configuration(&cfg)?;
    Ok((scheme, ia))
}

/// Builds a scheme from a homogeneous commutative symmetric configuration.
pub fn scheme_from_configuration(cfg: &CoherentConfiguration) -> Result<AssociationScheme> {
    let flags = cfg.classify()?;
    let mut failed = Vec::new();
    if !flags.homogeneous {
        failed.push("homogeneous");
    }
    if !flags.commutative {
        failed.push("commutative");
    }
    if !flags.symmetric {
        failed.push("symmetric");
    }
    if !failed.is_empty() {
        return Err(Error::NotScheme(format!(
            "configuration is not {}",
            failed.join(", ")
        )));
    }

    let n = cfg.n();
    let d1 = cfg.class_count();
    let d = d1 - 1;

    // renumber classes so the identity class is 0
    let fiber = cfg.fibers()[0];
    let mut remap = vec![0usize; d1];
    let mut next = 1;
    for old in 0..d1 {
        if old == fiber {
            remap[old] = 0;
        } else {
            remap[old] = next;
            next += 1;
        }
    }
    let color: Vec<u32> = cfg
        .color_matrix()
        .iter()
        .map(|&c| remap[c as usize] as u32)
        .collect();
    let cfg = configuration_from_coloring(n, color.clone())?;
    let p_tensor = cfg.intersection_numbers()?;
    let degrees: Vec<i64> = (0..d1).map(|i| p_tensor.get(i, i, 0)).collect();

    let pmat = eigenmatrix_from_intersection(&p_tensor, &degrees)?;
    let (pmat, qmat, mult) = canonicalize(n, &degrees, pmat)?;

    Ok(AssociationScheme {
        n,
        d,
        color,
        p_tensor,
        degrees,
        pmat,
        qmat,
        mult,
    })
}

/// Common eigenvectors of all intersection matrices, as unordered rows of P.
fn eigenmatrix_from_intersection(p: &PTensor, degrees: &[i64]) -> Result<Vec<Vec<f64>>> {
    let d1 = p.class_count();
    if d1 == 1 {
        return Ok(vec![vec![1.0]]);
    }
    let sqrt_k: Vec<f64> = degrees.iter().map(|&k| (k as f64).sqrt()).collect();
    let max_entry = (0..d1)
        .flat_map(|i| (0..d1).flat_map(move |j| (0..d1).map(move |l| (i, j, l))))
        .map(|(i, j, l)| p.get(i, j, l))
        .max()
        .unwrap_or(1) as f64;
    let tol = GROUP_TOL * (1.0 + max_entry);

    // symmetrized intersection matrix S_i = D^-1 B_i^T D, D = diag(sqrt k)
    let sym_b = |i: usize| -> Result<SymMatrix> {
        let mut rows = vec![0.0; d1 * d1];
        for l in 0..d1 {
            for j in 0..d1 {
                // (B_i^T)_{jl} = p_{ij}^l
                rows[j * d1 + l] = p.get(i, j, l) as f64 * sqrt_k[l] / sqrt_k[j];
            }
        }
        SymMatrix::from_rows(d1, &rows, 1e-9 * (1.0 + max_entry))
    };

    // groups of w-space vectors, refined by each S_i in turn
    let mut groups: Vec<Vec<Vec<f64>>> = vec![(0..d1)
        .map(|j| {
            let mut e = vec![0.0; d1];
            e[j] = 1.0;
            e
        })
        .collect()];
    for i in 1..d1 {
        if groups.iter().all(|g| g.len() == 1) {
            break;
        }
        let s = sym_b(i)?;
        let mut next_groups = Vec::new();
        for group in groups {
            if group.len() == 1 {
                next_groups.push(group);
                continue;
            }
            let g = group.len();
            // restriction of S_i to the group subspace
            let restricted = SymMatrix::from_fn(g, |a, b| {
                let mut acc = 0.0;
                for x in 0..d1 {
                    for y in 0..d1 {
                        acc += group[a][x] * s.get(x, y) * group[b][y];
                    }
                }
                acc
            });
            let eig = eig_sym(&restricted)?;
            let rotated: Vec<Vec<f64>> = (0..g)
                .map(|col| {
                    (0..d1)
                        .map(|x| {
                            (0..g).map(|a| eig.vectors[col][a] * group[a][x]).sum()
                        })
                        .collect()
                })
                .collect();
            for (_, idx) in eig.grouped(tol) {
                next_groups.push(idx.iter().map(|&c| rotated[c].clone()).collect());
            }
        }
        groups = next_groups;
    }
    if groups.len() != d1 {
        return Err(Error::NotScheme(format!(
            "could not separate {d1} common eigenspaces (got {})",
            groups.len()
        )));
    }

    // w -> u = D w, normalized to u_0 = 1; the row of P is u itself
    let mut rows = Vec::with_capacity(d1);
    for group in groups {
        let w = &group[0];
        let mut u: Vec<f64> = (0..d1).map(|j| sqrt_k[j] * w[j]).collect();
        let u0 = u[0];
        if u0.abs() < 1e-12 {
            return Err(Error::NotScheme(
                "eigenvector with vanishing first coordinate".into(),
            ));
        }
        for x in &mut u {
            *x /= u0;
        }
        rows.push(u);
    }
    Ok(rows)
}

/// Orders P rows canonically, inverts for Q and extracts multiplicities.
fn canonicalize(
    n: usize,
    degrees: &[i64],
    mut rows: Vec<Vec<f64>>,
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<f64>)> {
    let d1 = rows.len();
    // the degree row goes first
    let deg_pos = rows
        .iter()
        .position(|r| {
            r.iter()
                .zip(degrees)
                .all(|(x, &k)| (x - k as f64).abs() < 1e-6 * (1.0 + k as f64))
        })
        .ok_or_else(|| Error::NotScheme("missing degree eigenvector".into()))?;
    rows.swap(0, deg_pos);
    if d1 > 1 {
        rows[1..].sort_by(|a, b| {
            match b[1].partial_cmp(&a[1]).unwrap() {
                std::cmp::Ordering::Equal => {
                    // deterministic fallback on (numerically) tied P_l1
                    for (x, y) in a.iter().zip(b.iter()) {
                        if (x - y).abs() > 1e-9 {
                            return y.partial_cmp(x).unwrap();
                        }
                    }
                    std::cmp::Ordering::Equal
                }
                ord => ord,
            }
        });
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    let inv = invert(d1, &flat)?;
    let qmat: Vec<Vec<f64>> = (0..d1)
        .map(|l| (0..d1).map(|i| n as f64 * inv[l * d1 + i]).collect())
        .collect();
    let mult = qmat[0].clone();
    Ok((rows, qmat, mult))
}

/// Walk-regularity report for a graph.
#[derive(Clone, Debug)]
pub struct WalkRegularityReport {
    pub is_walk_regular: bool,
    pub is_one_walk_regular: bool,
    /// a_l with A^l o I = a_l I, for l up to the minimal polynomial degree
    /// (exclusive); None when the diagonal is not constant.
    pub diag_constants: Vec<Option<i64>>,
    /// b_l with A^l o A = b_l A; None when edges are not constant.
    pub edge_constants: Vec<Option<i64>>,
    /// Orthogonal adjacency-algebra basis {I, A, A_2, ...} with zero
    /// diagonal and zero edge entries from index 2 on; present only for
    /// 1-walk-regular graphs.
    pub basis: Option<Vec<SymMatrix>>,
}

/// Tests walk-regularity and 1-walk-regularity using exact integer powers
/// of the adjacency matrix up to the minimal polynomial degree.
pub fn walk_regularity(g: &Graph) -> Result<WalkRegularityReport> {
    let n = g.n();
    let a = g.adjacency();
    let deg = if n == 0 {
        0
    } else {
        eig_sym(&a)?.grouped(GROUP_TOL * (1.0 + a.max_abs())).len()
    };

    let mut powers: Vec<Vec<i64>> = Vec::with_capacity(deg);
    let mut cur: Vec<i64> = (0..n * n).map(|idx| i64::from(idx / n == idx % n)).collect();
    let adj: Vec<i64> = (0..n * n)
        .map(|idx| i64::from(g.has_edge(idx / n, idx % n)))
        .collect();
    for _ in 0..deg {
        powers.push(cur.clone());
        let mut next = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let c = cur[i * n + k];
                if c != 0 {
                    for j in 0..n {
                        next[i * n + j] += c * adj[k * n + j];
                    }
                }
            }
        }
        cur = next;
    }

    let mut diag_constants = Vec::with_capacity(deg);
    let mut edge_constants = Vec::with_capacity(deg);
    let edges = g.edges();
    for pw in &powers {
        let a0 = pw[0];
        diag_constants.push((0..n).all(|i| pw[i * n + i] == a0).then_some(a0));
        if edges.is_empty() {
            edge_constants.push(Some(0));
        } else {
            let (u0, v0) = edges[0];
            let b0 = pw[u0 * n + v0];
            edge_constants
                .push(edges.iter().all(|&(u, v)| pw[u * n + v] == b0).then_some(b0));
        }
    }
    let is_walk_regular = diag_constants.iter().all(|c| c.is_some());
    let is_one_walk_regular =
        is_walk_regular && edge_constants.iter().all(|c| c.is_some());

    let basis = if is_one_walk_regular && deg >= 1 {
        let mut basis: Vec<SymMatrix> = vec![SymMatrix::identity(n)];
        if deg >= 2 {
            basis.push(a.clone());
        }
        for l in 2..deg {
            let a_l = diag_constants[l].unwrap() as f64;
            let b_l = edge_constants[l].unwrap() as f64;
            let mut m = SymMatrix::from_fn(n, |i, j| powers[l][i * n + j] as f64)
                .sub(&SymMatrix::identity(n).scale(a_l))
                .sub(&a.scale(b_l));
            // Gram-Schmidt against the earlier zero-diagonal zero-edge terms
            for prev in basis.iter().skip(2) {
                let coef = m.inner(prev) / prev.inner(prev);
                m = m.sub(&prev.scale(coef));
            }
            basis.push(m);
        }
        Some(basis)
    } else {
        None
    };

    Ok(WalkRegularityReport {
        is_walk_regular,
        is_one_walk_regular,
        diag_constants,
        edge_constants,
        basis,
    })
}
