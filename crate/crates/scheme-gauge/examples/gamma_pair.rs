//! Pair bounds for the Paley graph on 9 vertices and its distance-2 graph:
//! the relaxation value gamma, the gauge dual, and the strict/equality
//! classification of the product against |E_1| + |E_2|.

use scheme_gauge::bounds::{
    gamma_dual_drg, gamma_dual_witness_value, gamma_scheme, gauge_classification, GaugeClass,
};
use scheme_gauge::graphs::named_graph;
use scheme_gauge::schemes::scheme_from_drg;

fn main() -> scheme_gauge::Result<()> {
    let g = named_graph("paley(9)")?;
    let (s, ia) = scheme_from_drg(&g)?;
    println!("intersection array: {:?} {:?}", ia.b, ia.c);

    let gamma = gamma_scheme(&s, 1, 2)?;
    println!("gamma = {} (closed form), {} (LP)", gamma.value, gamma.lp_value);

    let dual = gamma_dual_drg(&g)?;
    println!("gamma-dual = {} (closed form), {} (LP)", dual.value, dual.lp.value);

    // an explicit optimal packing point (y_0, y_1, y_2, a, b, c) for the
    // maximization form, checked coordinate by coordinate
    let witness = [0.0, 0.25, 0.0, 0.0, 0.25, 0.5];
    let v = gamma_dual_witness_value(&s, 1, 2, &witness)?;
    println!("verified witness value: {v}");

    let class = gauge_classification(&s, 1, 2)?;
    println!(
        "product = {} vs |E_1| + |E_2| = {}: {:?}",
        class.product, class.pair_edges, class.class
    );
    assert_eq!(class.class, GaugeClass::Strict);

    // the Petersen graph attains equality instead
    let petersen = named_graph("petersen")?;
    let (s, _) = scheme_from_drg(&petersen)?;
    let class = gauge_classification(&s, 1, 2)?;
    println!(
        "petersen: product = {} vs {}: {:?}",
        class.product, class.pair_edges, class.class
    );
    assert_eq!(class.class, GaugeClass::Equality);
    Ok(())
}
