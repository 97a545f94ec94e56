//! Randomized hyperplane rounding of the optimal relaxation solution of the
//! Petersen graph: recovers the exact maximum cut of 12 and a sample mean
//! above the 0.878 approximation guarantee.

use scheme_gauge::bounds::{eta_scheme, ALPHA_GW};
use scheme_gauge::graphs::named_graph;
use scheme_gauge::linalg::gram_factor;
use scheme_gauge::oracles::maxcut_bruteforce;
use scheme_gauge::rounding::round_hyperplane;
use scheme_gauge::schemes::scheme_from_drg;

fn main() -> scheme_gauge::Result<()> {
    let g = named_graph("petersen")?;
    let (s, _) = scheme_from_drg(&g)?;
    let certs = eta_scheme(&s, 1)?;

    // unit vectors whose Gram matrix is the optimal relaxation solution
    let vectors = gram_factor(&certs.m, 1e-6)?;
    let result = round_hyperplane(&vectors, &g.laplacian(), None, 2000, 1)?;
    println!("best rounded cut: {}", result.best_value);
    println!("sample mean: {:.4}", result.sample_mean);
    println!("guarantee floor: {:.4}", ALPHA_GW * certs.eta);

    let (exact, _) = maxcut_bruteforce(&g)?;
    println!("exact maximum cut: {exact}");
    assert_eq!(result.best_value, exact as f64);
    Ok(())
}
