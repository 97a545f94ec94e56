//! Relaxation value and gauge dual of the Petersen graph, with verified
//! certificates and the strong-duality product eta * eta-dual = |E|.

use scheme_gauge::bounds::{eta_dual_scheme, eta_product_check, eta_scheme};
use scheme_gauge::coherent::coherent_closure;
use scheme_gauge::graphs::named_graph;
use scheme_gauge::schemes::scheme_from_configuration;

fn main() -> scheme_gauge::Result<()> {
    let g = named_graph("petersen")?;
    let cfg = coherent_closure(&[g.adjacency_bin()])?;
    let s = scheme_from_configuration(&cfg)?;
    println!("scheme: {} vertices, {} classes", s.n(), s.class_count());
    println!("eigenmatrix rows: {:?}", s.p());

    // class 1 is the adjacency relation of the graph itself
    let certs = eta_scheme(&s, 1)?;
    println!("eta = {}", certs.eta);
    println!("optimal Gram entries on edges: {}", certs.m.get(0, 1));

    // every certificate is re-checked against its feasibility predicate
    certs.verify(&g)?;
    println!("certificates verified (primal psd, dual psd, gauge dual)");

    let dual = eta_dual_scheme(&s, 1)?;
    println!("eta-dual = {} (closed form), {} (LP)", dual.value, dual.lp_value);

    let (equal, product) = eta_product_check(&s, 1)?;
    println!("eta * eta-dual = {product}, |E| = {}, equal: {equal}", g.edge_count());
    assert!(equal);
    Ok(())
}
