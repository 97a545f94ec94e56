//! The exact combinatorial oracles: brute-force maximum cut, the fractional
//! cut-cover linear program, and the quadratic program over a graph pair.

use scheme_gauge::graphs::named_graph;
use scheme_gauge::oracles::{combinatorial_gauge_check, fcc_lp, maxcut_bruteforce, qp_bruteforce};

fn main() -> scheme_gauge::Result<()> {
    let g = named_graph("petersen")?;
    let (mc, side) = maxcut_bruteforce(&g)?;
    println!("max cut: {mc}, one side: {side:?}");

    let cover = fcc_lp(&g)?;
    println!("fractional cut cover: {} using {} cuts", cover.value, cover.weights.len());

    // quadratic program over the pair (graph, distance-2 graph)
    let dist2 = g.distance_graphs()?.remove(1);
    let (qp, x) = qp_bruteforce(&g, &dist2)?;
    println!("quadratic program optimum: {qp} at {x:?}");

    // mc <= |E| * fcc-value relation summarized in one report
    let report = combinatorial_gauge_check(&g)?;
    println!("combinatorial gauge check: {report:?}");
    Ok(())
}
