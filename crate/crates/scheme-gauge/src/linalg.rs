//! Dense symmetric eigendecomposition (cyclic Jacobi), PSD testing and Gram
//! factorization.

use crate::error::{Error, Result};
use crate::graphs::SymMatrix;

/// Default PSD tolerance.
pub const PSD_TOL: f64 = 1e-8;

/// Eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues ascending; `vectors[j]` is the eigenvector for `values[j]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn lambda_min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn lambda_max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Groups eigenvalues that agree within `tol`, returning (value, indices)
    /// per group in ascending order. The representative value is the group
    /// mean.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, Vec<usize>)> {
        let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            match groups.last_mut() {
                Some((rep, idx)) if (v - *rep).abs() <= tol => {
                    idx.push(i);
                    let k = idx.len() as f64;
                    *rep += (v - *rep) / k;
                }
                _ => groups.push((v, vec![i])),
            }
        }
        groups
    }
}

fn check_symmetric(m: &SymMatrix) -> Result<()> {
    // SymMatrix enforces symmetry at construction; this guards callers that
    // assembled entries through from_rows with a loose tolerance.
    let n = m.n();
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((m.get(i, j) - m.get(j, i)).abs());
        }
    }
    if asym > 1e-9 {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps continue until the off-diagonal Frobenius norm falls below
/// 1e-12 times the Frobenius norm of the input.
pub fn eig_sym(m: &SymMatrix) -> Result<EigenDecomposition> {
    check_symmetric(m)?;
    let n = m.n();
    let mut a: Vec<f64> = m.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fnorm = m.frobenius_norm();
    let target = 1e-12 * fnorm;

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let max_sweeps = 100;
    for _ in 0..max_sweeps {
        if off(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // rotation angle per Golub & Van Loan 8.4
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- J^T A J on rows/columns p, q
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// True iff lambda_min(m) >= -tol.
pub fn is_psd(m: &SymMatrix, tol: f64) -> Result<bool> {
    assert!(tol >= 0.0);
    Ok(eig_sym(m)?.lambda_min() >= -tol)
}

/// Gram factorization of a PSD matrix with unit diagonal: returns unit-length
/// vectors v_i of dimension rank(m) with <v_i, v_j> = m_ij.
///
/// Eigenvalues in [-tol, 0) are clipped to zero; anything below -tol is a
/// "not PSD" error.
pub fn gram_factor(m: &SymMatrix, tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = m.n();
    for i in 0..n {
        if (m.get(i, i) - 1.0).abs() > tol.max(1e-9) {
            return Err(Error::InvalidArgument(format!(
                "gram_factor requires unit diagonal, entry ({i},{i}) = {}",
                m.get(i, i)
            )));
        }
    }
    let eig = eig_sym(m)?;
    if eig.lambda_min() < -tol {
        return Err(Error::NotPsd(eig.lambda_min()));
    }
    let clipped: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
    let kept: Vec<usize> = (0..n).filter(|&j| clipped[j] > tol).collect();
    let r = kept.len().max(1);
    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<f64> = kept
            .iter()
            .map(|&j| clipped[j].sqrt() * eig.vectors[j][i])
            .collect();
        v.resize(r, 0.0);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in &mut v {
                *x /= norm;
            }
        }
        vectors.push(v);
    }
    Ok(vectors)
}

/// Row-major dense product helper for n x n matrices.
pub fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Inverse of a small dense matrix by Gauss-Jordan with partial pivoting.
pub fn invert(n: usize, a: &[f64]) -> Result<Vec<f64>> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i * n + col]
                    .abs()
                    .partial_cmp(&m[j * n + col].abs())
                    .unwrap()
            })
            .unwrap();
        if m[pivot * n + col].abs() < 1e-12 {
            return Err(Error::Dimension("singular matrix".into()));
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
        }
        let d = m[col * n + col];
        for j in 0..n {
            m[col * n + j] /= d;
            inv[col * n + j] /= d;
        }
        for i in 0..n {
            if i != col {
                let f = m[i * n + col];
                if f != 0.0 {
                    for j in 0..n {
                        m[i * n + j] -= f * m[col * n + j];
                        inv[i * n + j] -= f * inv[col * n + j];
                    }
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named_graph;

    fn residuals(m: &SymMatrix, eig: &EigenDecomposition) -> f64 {
        let n = m.n();
        let mut worst: f64 = 0.0;
        for (l, vec) in eig.values.iter().zip(&eig.vectors) {
            for i in 0..n {
                let mv: f64 = (0..n).map(|j| m.get(i, j) * vec[j]).sum();
                worst = worst.max((mv - l * vec[i]).abs());
            }
        }
        worst
    }

    #[test]
    fn identity_spectrum() {
        let eig = eig_sym(&SymMatrix::identity(3)).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn petersen_spectrum() {
        // Petersen adjacency: eigenvalues -2 (x4), 1 (x5), 3 (x1)
        let a = named_graph("petersen").unwrap().adjacency();
        let eig = eig_sym(&a).unwrap();
        let tol = 1e-9;
        assert!(residuals(&a, &eig) <= 1e-9 * (1.0 + a.max_abs()));
        let groups = eig.grouped(1e-7);
        assert_eq!(groups.len(), 3);
        assert!((groups[0].0 + 2.0).abs() < tol && groups[0].1.len() == 4);
        assert!((groups[1].0 - 1.0).abs() < tol && groups[1].1.len() == 5);
        assert!((groups[2].0 - 3.0).abs() < tol && groups[2].1.len() == 1);
    }

    #[test]
    fn cycle5_lambda_min() {
        // circulant eigenvalues 2cos(2 pi j / 5)
        let a = named_graph("cycle(5)").unwrap().adjacency();
        let eig = eig_sym(&a).unwrap();
        let expect = 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!((eig.lambda_min() - expect).abs() < 1e-9);
        assert!((eig.lambda_min() + 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn eigenvalue_sum_is_trace() {
        for spec in ["petersen", "paley(13)", "hamming(2,3)"] {
            let a = named_graph(spec).unwrap().adjacency();
            let eig = eig_sym(&a).unwrap();
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - a.trace()).abs() <= 1e-9 * a.n() as f64 * (1.0 + a.max_abs()));
        }
    }

    #[test]
    fn orthonormal_vectors() {
        let a = named_graph("paley(9)").unwrap().adjacency();
        let eig = eig_sym(&a).unwrap();
        for i in 0..a.n() {
            for j in 0..a.n() {
                let dot: f64 = eig.vectors[i]
                    .iter()
                    .zip(&eig.vectors[j])
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn psd_cases() {
        assert!(is_psd(&SymMatrix::identity(3), 0.0).unwrap());
        let swap = SymMatrix::from_rows(2, &[0.0, 1.0, 1.0, 0.0], 0.0).unwrap();
        assert!(!is_psd(&swap, 1e-9).unwrap());
        assert!(is_psd(&SymMatrix::all_ones(5), 1e-9).unwrap());
    }

    #[test]
    fn gram_factor_cases() {
        let vs = gram_factor(&SymMatrix::identity(2), PSD_TOL).unwrap();
        assert_eq!(vs.len(), 2);
        let dot: f64 = vs[0].iter().zip(&vs[1]).map(|(x, y)| x * y).sum();
        assert!(dot.abs() < 1e-9);

        let vs = gram_factor(&SymMatrix::all_ones(3), PSD_TOL).unwrap();
        assert_eq!(vs[0].len(), 1);
        for v in &vs {
            assert!((v[0] - vs[0][0]).abs() < 1e-9);
        }

        let swap = SymMatrix::from_rows(2, &[1.0, 2.0, 2.0, 1.0], 0.0).unwrap();
        assert!(gram_factor(&swap, PSD_TOL).is_err());
    }

    #[test]
    fn gram_factor_roundtrip() {
        // random unit-diagonal PSD matrix reassembles within 1e-6
        let mut rng = crate::rng::SplitMix64::new(11);
        let n = 8;
        let r = 3;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let v: Vec<f64> = (0..r).map(|_| rng.gaussian()).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / norm).collect()
            })
            .collect();
        let m = SymMatrix::from_fn(n, |i, j| {
            rows[i].iter().zip(&rows[j]).map(|(x, y)| x * y).sum()
        });
        let vs = gram_factor(&m, PSD_TOL).unwrap();
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = vs[i].iter().zip(&vs[j]).map(|(x, y)| x * y).sum();
                assert!((dot - m.get(i, j)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn invert_small() {
        let a = vec![1.0, 2.0, 3.0, 4.0];
        let inv = invert(2, &a).unwrap();
        let prod = mat_mul(2, &a, &inv);
        assert!((prod[0] - 1.0).abs() < 1e-12 && prod[1].abs() < 1e-12);
        assert!(prod[2].abs() < 1e-12 && (prod[3] - 1.0).abs() < 1e-12);
    }
}
