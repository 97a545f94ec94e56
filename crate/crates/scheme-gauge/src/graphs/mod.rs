//! Graph representation, graph6 parsing, named-graph constructors and
//! Laplacian operators.
//!
//! Vertices are 0-based integers. Only simple, undirected, loopless graphs
//! are representable; the constructors reject loops and multi-edges.

mod graph6;
mod named;

pub use graph6::{parse_graph6, to_graph6};
pub use named::named_graph;

use crate::error::{Error, Result};

/// Simple undirected graph backed by a dense symmetric adjacency relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>, // row-major n*n, symmetric, zero diagonal
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, multi-edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if g.adj[u * n + v] {
                return Err(Error::InvalidGraph(format!("multi-edge ({u},{v})")));
            }
            g.adj[u * n + v] = true;
            g.adj[v * n + u] = true;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    /// Unordered edge pairs (u, v) with u < v, lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let mut m = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    m += 1;
                }
            }
        }
        m
    }

    /// Common degree if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let k = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj[u * n + v] = !self.adj[u * n + v];
                }
            }
        }
        Graph { n, adj }
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if self.has_edge(u, v) && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// All-pairs distance matrix; requires a connected graph.
    pub fn distance_matrix(&self) -> Result<Vec<Vec<usize>>> {
        let rows: Vec<Vec<usize>> = (0..self.n).map(|u| self.bfs_distances(u)).collect();
        if rows.iter().flatten().any(|&d| d == usize::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(rows)
    }

    pub fn diameter(&self) -> Result<usize> {
        let dist = self.distance_matrix()?;
        Ok(dist.iter().flatten().copied().max().unwrap_or(0))
    }

    /// Adjacency matrix as a real symmetric matrix.
    pub fn adjacency(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| if self.has_edge(u, v) { 1.0 } else { 0.0 })
    }

    /// Adjacency matrix as an exact 0/1 matrix.
    pub fn adjacency_bin(&self) -> BinMatrix {
        BinMatrix::from_fn(self.n, |u, v| self.has_edge(u, v))
    }

    /// Laplacian L = D - A.
    pub fn laplacian(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| {
            if u == v {
                self.degree(u) as f64
            } else if self.has_edge(u, v) {
                -1.0
            } else {
                0.0
            }
        })
    }

    /// Signless Laplacian K = D + A.
    pub fn signless_laplacian(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |u, v| {
            if u == v {
                self.degree(u) as f64
            } else if self.has_edge(u, v) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Edges delta(S) with exactly one endpoint in `s`.
    pub fn cut_edges(&self, s: &[usize]) -> Vec<(usize, usize)> {
        let mut side = vec![false; self.n];
        for &u in s {
            side[u] = true;
        }
        self.edges()
            .into_iter()
            .filter(|&(u, v)| side[u] != side[v])
            .collect()
    }

    /// Distance graphs [G_1, ..., G_diam]; G_i joins vertices at distance
    /// exactly i. Errors on disconnected input.
    pub fn distance_graphs(&self) -> Result<Vec<Graph>> {
        let dist = self.distance_matrix()?;
        let diam = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut out = Vec::with_capacity(diam);
        for i in 1..=diam {
            let n = self.n;
            let mut adj = vec![false; n * n];
            for u in 0..n {
                for v in 0..n {
                    if u != v && dist[u][v] == i {
                        adj[u * n + v] = true;
                    }
                }
            }
            out.push(Graph { n, adj });
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Dense real symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>, // row-major
}

impl SymMatrix {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    /// Builds from a generator; entries are symmetrized by averaging and the
    /// inputs must agree within 1e-12.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> SymMatrix {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                let y = f(j, i);
                debug_assert!(
                    (x - y).abs() <= Self::SYMMETRY_TOL * (1.0 + x.abs().max(y.abs())),
                    "asymmetric generator at ({i},{j})"
                );
                let v = 0.5 * (x + y);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        SymMatrix { n, a }
    }

    /// Builds from row-major entries, failing if the asymmetry exceeds `tol`.
    pub fn from_rows(n: usize, rows: &[f64], tol: f64) -> Result<SymMatrix> {
        if rows.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                n * n,
                rows.len()
            )));
        }
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                asym = asym.max((rows[i * n + j] - rows[j * n + i]).abs());
            }
        }
        if asym > tol {
            return Err(Error::NotSymmetric(asym));
        }
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = 0.5 * (rows[i * n + j] + rows[j * n + i]);
            }
        }
        Ok(SymMatrix { n, a })
    }

    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn all_ones(n: usize) -> SymMatrix {
        SymMatrix {
            n,
            a: vec![1.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn entries(&self) -> &[f64] {
        &self.a
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Trace inner product <A, B> = sum of entrywise products.
    pub fn inner(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.a.iter().zip(&other.a).map(|(x, y)| x * y).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    /// Matrix product; the result is only symmetric when the factors commute,
    /// so the raw row-major entries are returned.
    pub fn mul_raw(&self, other: &SymMatrix) -> Vec<f64> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.a[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * other.a[k * n + j];
                }
            }
        }
        out
    }

    /// Product of two commuting symmetric matrices, symmetrized with a loose
    /// tolerance check.
    pub fn mul_commuting(&self, other: &SymMatrix) -> Result<SymMatrix> {
        let raw = self.mul_raw(other);
        let scale = 1.0 + self.max_abs() * other.max_abs() * self.n as f64;
        SymMatrix::from_rows(self.n, &raw, 1e-8 * scale)
    }
}

/// Dense 0/1 matrix, not necessarily symmetric. Used for coherent
/// configuration classes and closure seeds.
#[derive(Clone, PartialEq, Eq)]
pub struct BinMatrix {
    n: usize,
    a: Vec<u8>,
}

impl BinMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> BinMatrix {
        let mut a = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = f(i, j) as u8;
            }
        }
        BinMatrix { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.a[i * self.n + j] != 0
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> BinMatrix {
        BinMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn to_sym(&self) -> Result<SymMatrix> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric(1.0));
        }
        Ok(SymMatrix::from_fn(self.n, |i, j| {
            if self.get(i, j) {
                1.0
            } else {
                0.0
            }
        }))
    }
}

impl std::fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinMatrix(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", self.a[i * self.n + j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named::named_graph;

    #[test]
    fn laplacians_of_k2() {
        let g = named_graph("complete(2)").unwrap();
        let l = g.laplacian();
        assert_eq!(l.entries(), &[1.0, -1.0, -1.0, 1.0]);
        let k = g.signless_laplacian();
        assert_eq!(k.entries(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn laplacian_row_sums() {
        for spec in ["petersen", "paley(9)", "cycle(7)", "complete_bipartite(2,3)"] {
            let g = named_graph(spec).unwrap();
            let l = g.laplacian();
            let k = g.signless_laplacian();
            for u in 0..g.n() {
                let lsum: f64 = (0..g.n()).map(|v| l.get(u, v)).sum();
                let ksum: f64 = (0..g.n()).map(|v| k.get(u, v)).sum();
                assert_eq!(lsum, 0.0);
                assert_eq!(ksum, 2.0 * g.degree(u) as f64);
            }
            // L + K = 2D, L - K = -2A, both exact
            let a = g.adjacency();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    let d = if u == v { g.degree(u) as f64 } else { 0.0 };
                    assert_eq!(l.get(u, v) + k.get(u, v), 2.0 * d);
                    assert_eq!(l.get(u, v) - k.get(u, v), -2.0 * a.get(u, v));
                }
            }
        }
    }

    #[test]
    fn cut_edges_cases() {
        let g = named_graph("complete(3)").unwrap();
        assert!(g.cut_edges(&[]).is_empty());
        assert_eq!(g.cut_edges(&[0]), vec![(0, 1), (0, 2)]);
        let c4 = named_graph("cycle(4)").unwrap();
        assert_eq!(c4.cut_edges(&[0, 2]).len(), 4);
    }

    #[test]
    fn distance_graphs_cases() {
        let p = named_graph("petersen").unwrap();
        let dgs = p.distance_graphs().unwrap();
        assert_eq!(dgs.len(), 2);
        assert_eq!(dgs[0], p);
        assert_eq!(dgs[1].regularity(), Some(6));

        let k4 = named_graph("complete(4)").unwrap();
        assert_eq!(k4.distance_graphs().unwrap(), vec![k4.clone()]);

        let c5 = named_graph("cycle(5)").unwrap();
        let dgs = c5.distance_graphs().unwrap();
        assert_eq!(dgs.len(), 2);
        assert_eq!(dgs[1].regularity(), Some(2));
        assert_eq!(dgs[1].edge_count(), 5);

        // sum of distance graphs + I = J for connected graphs
        for spec in ["petersen", "cycle(6)", "hamming(2,3)"] {
            let g = named_graph(spec).unwrap();
            let dgs = g.distance_graphs().unwrap();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    let covered = dgs.iter().filter(|d| d.has_edge(u, v)).count();
                    assert_eq!(covered, usize::from(u != v), "pair ({u},{v})");
                }
            }
        }

        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(disconnected.distance_graphs().is_err());
    }

    #[test]
    fn adjacency_is_symmetric_traceless() {
        let g = named_graph("paley(13)").unwrap();
        let a = g.adjacency();
        assert_eq!(a.trace(), 0.0);
        for i in 0..g.n() {
            for j in 0..g.n() {
                assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
    }

    #[test]
    fn rejects_loops_and_multiedges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 5)]).is_err());
    }
}
