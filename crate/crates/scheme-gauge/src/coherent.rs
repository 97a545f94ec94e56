//! Coherent configurations: closure by two-dimensional Weisfeiler-Leman
//! refinement, axiom checks, membership/split testing and orthogonal
//! projection onto the coherent algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graphs::{BinMatrix, SymMatrix};

/// Structure flags of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigFlags {
    pub homogeneous: bool,
    pub commutative: bool,
    pub symmetric: bool,
}

/// Result of testing a 0/1 matrix against a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Equal to class i.
    Belongs(usize),
    /// Equal to A_i + A_i^T for a non-symmetric class i.
    Splits(usize),
    Neither,
}

/// A coherent configuration as a stable edge-coloring of V x V.
#[derive(Clone, Debug)]
pub struct CoherentConfiguration {
    n: usize,
    color: Vec<u32>, // row-major n*n class indices
    num_classes: usize,
    transpose_perm: Vec<usize>,
    class_sizes: Vec<usize>,
    fibers: Vec<usize>,
}

impl CoherentConfiguration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.num_classes
    }

    pub fn color(&self, i: usize, j: usize) -> usize {
        self.color[i * self.n + j] as usize
    }

    pub fn color_matrix(&self) -> &[u32] {
        &self.color
    }

    /// Index of the transpose class of class i.
    pub fn transpose_class(&self, i: usize) -> usize {
        self.transpose_perm[i]
    }

    /// Diagonal class indices.
    pub fn fibers(&self) -> &[usize] {
        &self.fibers
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.class_sizes[i]
    }

    pub fn class_matrix(&self, i: usize) -> BinMatrix {
        BinMatrix::from_fn(self.n, |a, b| self.color(a, b) == i)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() == 1
    }

    pub fn is_symmetric_config(&self) -> bool {
        (0..self.num_classes).all(|i| self.transpose_perm[i] == i)
    }

    /// Flags per the configuration definitions: homogeneous (I is a class),
    /// commutative (all products commute), symmetric (all classes symmetric).
    pub fn classify(&self) -> Result<ConfigFlags> {
        let homogeneous = self.is_homogeneous();
        let symmetric = self.is_symmetric_config();
        let commutative = if symmetric {
            true // symmetric classes commute: (A_i A_j)^T = A_j A_i lies in the span
        } else {
            let p = self.intersection_numbers()?;
            let d1 = self.num_classes;
            let mut comm = true;
            'outer: for i in 0..d1 {
                for j in 0..d1 {
                    for l in 0..d1 {
                        if p.get(i, j, l) != p.get(j, i, l) {
                            comm = false;
                            break 'outer;
                        }
                    }
                }
            }
            comm
        };
        Ok(ConfigFlags {
            homogeneous,
            commutative,
            symmetric,
        })
    }

    /// Tests whether `a` belongs to or splits in the configuration.
    pub fn membership(&self, a: &BinMatrix) -> Result<Membership> {
        if a.n() != self.n {
            return Err(Error::Dimension("membership dimension mismatch".into()));
        }
        let n = self.n;
        let first = (0..n * n).find(|&idx| a.get(idx / n, idx % n));
        let Some(idx) = first else {
            return Ok(Membership::Neither);
        };
        let i = self.color(idx / n, idx % n);
        let ti = self.transpose_perm[i];
        let belongs = (0..n).all(|u| (0..n).all(|v| a.get(u, v) == (self.color(u, v) == i)));
        if belongs {
            return Ok(Membership::Belongs(i));
        }
        if ti != i {
            let splits = (0..n).all(|u| {
                (0..n).all(|v| {
                    let c = self.color(u, v);
                    a.get(u, v) == (c == i || c == ti)
                })
            });
            if splits {
                return Ok(Membership::Splits(i.min(ti)));
            }
        }
        Ok(Membership::Neither)
    }

    /// Orthogonal projection onto the span of the class matrices: each entry
    /// is replaced by the mean of its color class.
    pub fn project(&self, m: &SymMatrix) -> Result<SymMatrix> {
        if m.n() != self.n {
            return Err(Error::Dimension("project dimension mismatch".into()));
        }
        let n = self.n;
        let mut sums = vec![0.0; self.num_classes];
        for u in 0..n {
            for v in 0..n {
                sums[self.color(u, v)] += m.get(u, v);
            }
        }
        let means: Vec<f64> = sums
            .iter()
            .zip(&self.class_sizes)
            .map(|(s, &c)| s / c as f64)
            .collect();
        // symmetric input and transpose-closed classes give a symmetric result
        Ok(SymMatrix::from_fn(n, |u, v| means[self.color(u, v)]))
    }

    /// Intersection numbers p_ij^l, verified to be constant over every pair
    /// of each class (axiom 4).
    pub fn intersection_numbers(&self) -> Result<PTensor> {
        let n = self.n;
        let d1 = self.num_classes;
        let mut p = vec![-1i64; d1 * d1 * d1];
        for a in 0..n {
            for b in 0..n {
                let l = self.color(a, b);
                let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
                for k in 0..n {
                    *counts
                        .entry((self.color(a, k), self.color(k, b)))
                        .or_insert(0) += 1;
                }
                for i in 0..d1 {
                    for j in 0..d1 {
                        let c = counts.get(&(i, j)).copied().unwrap_or(0);
                        let slot = &mut p[(i * d1 + j) * d1 + l];
                        if *slot < 0 {
                            *slot = c;
                        } else if *slot != c {
                            return Err(Error::NotCoherent(format!(
                                "p_{{{i},{j}}}^{l} is not constant: {} vs {c} at pair ({a},{b})",
                                *slot
                            )));
                        }
                    }
                }
            }
        }
        for x in &mut p {
            if *x < 0 {
                *x = 0; // class l empty cannot happen, but keep the tensor total
            }
        }
        Ok(PTensor { d1, p })
    }

    /// Runs all four configuration axioms, erroring on the first violation.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.n;
        // axiom 1: colors partition J by construction; check sizes for sanity
        if self.class_sizes.iter().sum::<usize>() != n * n {
            return Err(Error::NotCoherent("classes do not partition J".into()));
        }
        // axiom 2: transpose-closed
        for u in 0..n {
            for v in 0..n {
                if self.transpose_perm[self.color(u, v)] != self.color(v, u) {
                    return Err(Error::NotCoherent(format!(
                        "transpose of class {} is inconsistent at ({u},{v})",
                        self.color(u, v)
                    )));
                }
            }
        }
        // axiom 3: classes touching the diagonal are diagonal
        for u in 0..n {
            let c = self.color(u, u);
            if !self.fibers.contains(&c) {
                return Err(Error::NotCoherent(format!(
                    "diagonal color {c} appears off-diagonal"
                )));
            }
        }
        // axiom 4: constant intersection numbers
        self.intersection_numbers()?;
        Ok(())
    }
}

/// Intersection-number tensor p_ij^l of a configuration.
#[derive(Clone, Debug)]
pub struct PTensor {
    d1: usize, // number of classes
    p: Vec<i64>,
}

impl PTensor {
    pub fn class_count(&self) -> usize {
        self.d1
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> i64 {
        self.p[(i * self.d1 + j) * self.d1 + l]
    }
}

/// Builds a configuration from an explicit pair coloring with classes
/// 0..num, verifying all four axioms.
pub fn configuration_from_coloring(n: usize, color: Vec<u32>) -> Result<CoherentConfiguration> {
    if color.len() != n * n {
        return Err(Error::Dimension("coloring has wrong size".into()));
    }
    let num = 1 + color.iter().max().map(|&c| c as usize).unwrap_or(0);
    let mut transpose_perm = vec![usize::MAX; num];
    let mut class_sizes = vec![0usize; num];
    let mut is_fiber = vec![false; num];
    for u in 0..n {
        for v in 0..n {
            let c = color[u * n + v] as usize;
            class_sizes[c] += 1;
            let t = color[v * n + u] as usize;
            if transpose_perm[c] == usize::MAX {
                transpose_perm[c] = t;
            } else if transpose_perm[c] != t {
                return Err(Error::NotCoherent("coloring not transpose-closed".into()));
            }
            if u == v {
                is_fiber[c] = true;
            }
        }
    }
    if class_sizes.contains(&0) {
        return Err(Error::NotCoherent("coloring skips a class index".into()));
    }
    let fibers: Vec<usize> = (0..num).filter(|&c| is_fiber[c]).collect();
    let cfg = CoherentConfiguration {
        n,
        color,
        num_classes: num,
        transpose_perm,
        class_sizes,
        fibers,
    };
    cfg.verify_axioms()?;
    Ok(cfg)
}

/// Coherent closure of a set of 0/1 seed matrices: the coarsest coherent
/// configuration refining the seed pattern, computed by 2-dimensional
/// Weisfeiler-Leman refinement.
///
/// Initial colors separate diagonal from off-diagonal pairs and distinguish
/// the (seed, transpose-seed) membership pattern of each pair. After each
/// round, colors are renumbered by first occurrence in a row-major scan, so
/// the result is deterministic.
pub fn coherent_closure(seeds: &[BinMatrix]) -> Result<CoherentConfiguration> {
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("no closure seeds".into()));
    }
    let n = seeds[0].n();
    if seeds.iter().any(|s| s.n() != n) {
        return Err(Error::Dimension("closure seeds differ in dimension".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty ground set".into()));
    }

    // initial coloring
    let mut color = vec![0u32; n * n];
    {
        let mut keys: HashMap<Vec<u8>, u32> = HashMap::new();
        for u in 0..n {
            for v in 0..n {
                let mut key = vec![(u == v) as u8];
                for s in seeds {
                    key.push(s.get(u, v) as u8);
                    key.push(s.get(v, u) as u8);
                }
                let next = keys.len() as u32;
                let c = *keys.entry(key).or_insert(next);
                color[u * n + v] = c;
            }
        }
    }
    let mut num = 1 + color.iter().max().map(|&c| c as usize).unwrap_or(0);

    // refinement rounds; class count strictly increases until stable
    let round_cap = n * n + 1;
    for _ in 0..round_cap {
        let mut keys: HashMap<(u32, Vec<(u32, u32)>), u32> = HashMap::new();
        let mut next_color = vec![0u32; n * n];
        for u in 0..n {
            for v in 0..n {
                let mut sig: Vec<(u32, u32)> = (0..n)
                    .map(|k| (color[u * n + k], color[k * n + v]))
                    .collect();
                sig.sort_unstable();
                let key = (color[u * n + v], sig);
                let next = keys.len() as u32;
                let c = *keys.entry(key).or_insert(next);
                next_color[u * n + v] = c;
            }
        }
        let new_num = keys.len();
        color = next_color;
        if new_num == num {
            break;
        }
        num = new_num;
    }

    // transpose permutation, sizes, fibers
    let mut transpose_perm = vec![usize::MAX; num];
    let mut class_sizes = vec![0usize; num];
    let mut is_fiber = vec![false; num];
    for u in 0..n {
        for v in 0..n {
            let c = color[u * n + v] as usize;
            class_sizes[c] += 1;
            let t = color[v * n + u] as usize;
            if transpose_perm[c] == usize::MAX {
                transpose_perm[c] = t;
            } else if transpose_perm[c] != t {
                return Err(Error::NotCoherent(
                    "refinement produced a non-transpose-closed coloring".into(),
                ));
            }
            if u == v {
                is_fiber[c] = true;
            }
        }
    }
    let fibers: Vec<usize> = (0..num).filter(|&c| is_fiber[c]).collect();

    let cfg = CoherentConfiguration {
        n,
        color,
        num_classes: num,
        transpose_perm,
        class_sizes,
        fibers,
    };
    debug_assert!(cfg.verify_axioms().is_ok());
    Ok(cfg)
}
