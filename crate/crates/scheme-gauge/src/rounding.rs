//! Random-hyperplane rounding of Gram vectors from a feasible relaxation
//! solution: sample a gaussian normal, sign each vector by its side of the
//! hyperplane, and evaluate the cut (or quadratic) objective.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::SymMatrix;
use crate::rng::SplitMix64;

#[derive(Clone, Debug, Serialize)]
pub struct RoundingResult {
    pub trials: usize,
    pub best_value: f64,
    pub best_assignment: Vec<i8>,
    pub sample_mean: f64,
    pub seed: u64,
}

/// Rounds unit Gram vectors through `trials` random hyperplanes. The
/// objective is <L, xx^T>/4, or <(L+K)/2, xx^T> when the signless Laplacian
/// `K` of a second graph is given. Trial `t` draws its normal from a
/// generator seeded with `seed + t`, so results are reproducible and
/// independent of evaluation order. Exact zero dot products sign to +1.
pub fn round_hyperplane(
    vectors: &[Vec<f64>],
    l: &SymMatrix,
    k: Option<&SymMatrix>,
    trials: usize,
    seed: u64,
) -> Result<RoundingResult> {
    let n = vectors.len();
    if n != l.n() || k.is_some_and(|k| k.n() != n) {
        return Err(Error::Dimension("vector count differs from matrix size".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let dim = vectors.first().map_or(0, Vec::len);
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Dimension(format!("vector {i} has mixed dimension")));
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidArgument(format!(
                "vector {i} is not unit (norm {norm})"
            )));
        }
    }

    let objective = |x: &[i8]| -> f64 {
        let mut val = 0.0;
        for i in 0..n {
            for j in 0..n {
                let xx = f64::from(x[i] * x[j]);
                val += match k {
                    None => l.get(i, j) * xx / 4.0,
                    Some(k) => (l.get(i, j) + k.get(i, j)) / 2.0 * xx,
                };
            }
        }
        val
    };

    let mut best_value = f64::NEG_INFINITY;
    let mut best_assignment = vec![1i8; n];
    let mut total = 0.0;
    for t in 0..trials {
        let mut rng = SplitMix64::new(seed.wrapping_add(t as u64));
        let normal: Vec<f64> = (0..dim).map(|_| rng.gaussian()).collect();
        let x: Vec<i8> = vectors
            .iter()
            .map(|v| {
                let dot: f64 = v.iter().zip(&normal).map(|(a, b)| a * b).sum();
                if dot < 0.0 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        let val = objective(&x);
        total += val;
        if val > best_value {
            best_value = val;
            best_assignment = x;
        }
    }
    Ok(RoundingResult {
        trials,
        best_value,
        best_assignment,
        sample_mean: total / trials as f64,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{eta_scheme, ALPHA_GW};
    use crate::graphs::named_graph;
    use crate::linalg::gram_factor;
    use crate::schemes::scheme_from_drg;

    #[test]
    fn antipodal_pair_always_cuts() {
        let g = named_graph("complete(2)").unwrap();
        let vectors = vec![vec![1.0, 0.0], vec![-1.0, 0.0]];
        let r = round_hyperplane(&vectors, &g.laplacian(), None, 50, 7).unwrap();
        assert_eq!(r.best_value, 1.0);
        assert_eq!(r.sample_mean, 1.0);
    }

    #[test]
    fn deterministic_given_seed() {
        let g = named_graph("cycle(5)").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        let m = eta_scheme(&s, 1).unwrap().m;
        let vectors = gram_factor(&m, 1e-8).unwrap();
        let a = round_hyperplane(&vectors, &g.laplacian(), None, 200, 42).unwrap();
        let b = round_hyperplane(&vectors, &g.laplacian(), None, 200, 42).unwrap();
        assert_eq!(a.best_value, b.best_value);
        assert_eq!(a.sample_mean, b.sample_mean);
        assert_eq!(a.best_assignment, b.best_assignment);
    }

    #[test]
    fn petersen_reaches_maxcut() {
        let g = named_graph("petersen").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        let m = eta_scheme(&s, 1).unwrap().m;
        let vectors = gram_factor(&m, 1e-8).unwrap();
        let best = [1u64, 2, 3]
            .iter()
            .map(|&seed| {
                round_hyperplane(&vectors, &g.laplacian(), None, 2000, seed)
                    .unwrap()
                    .best_value
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(best, 12.0);
    }

    #[test]
    fn sample_mean_meets_gw_guarantee() {
        let g = named_graph("cycle(5)").unwrap();
        let (s, _) = scheme_from_drg(&g).unwrap();
        let certs = eta_scheme(&s, 1).unwrap();
        let vectors = gram_factor(&certs.m, 1e-8).unwrap();
        let trials = 5000;
        let r = round_hyperplane(&vectors, &g.laplacian(), None, trials, 11).unwrap();
        // crude bound on the standard error: cut values lie in [0, 5]
        let se = 5.0 / (trials as f64).sqrt();
        assert!(
            r.sample_mean >= ALPHA_GW * certs.eta - 3.0 * se,
            "mean {} vs {}",
            r.sample_mean,
            ALPHA_GW * certs.eta
        );
        // every sampled value is at most the oracle optimum
        let (mc, _) = crate::oracles::maxcut_bruteforce(&g).unwrap();
        assert!(r.best_value <= mc as f64 + 1e-9);
    }

    #[test]
    fn quadratic_objective_with_second_graph() {
        let g1 = named_graph("paley(9)").unwrap();
        let g2 = g1.complement();
        let (s, _) = scheme_from_drg(&g1).unwrap();
        // any feasible unit-diagonal psd point works; use the eta optimum
        let m = eta_scheme(&s, 1).unwrap().m;
        let vectors = gram_factor(&m, 1e-8).unwrap();
        let r = round_hyperplane(
            &vectors,
            &g1.laplacian(),
            Some(&g2.signless_laplacian()),
            500,
            5,
        )
        .unwrap();
        let (qp, _) = crate::oracles::qp_bruteforce(&g1, &g2).unwrap();
        assert!(r.best_value <= qp as f64 + 1e-9);
        // rounded assignments evaluate consistently with the +-1 objective
        let x = &r.best_assignment;
        let mut direct = 0.0;
        for (u, v) in g1.edges() {
            direct += f64::from(1 - x[u] * x[v]);
        }
        for (u, v) in g2.edges() {
            direct += f64::from(1 + x[u] * x[v]);
        }
        assert!((direct - r.best_value).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = named_graph("complete(2)").unwrap();
        let long = vec![vec![2.0, 0.0], vec![1.0, 0.0]];
        assert!(round_hyperplane(&long, &g.laplacian(), None, 10, 0).is_err());
        let ok = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(round_hyperplane(&ok, &g.laplacian(), None, 0, 0).is_err());
        assert!(round_hyperplane(&ok[..1], &g.laplacian(), None, 10, 0).is_err());
    }
}
