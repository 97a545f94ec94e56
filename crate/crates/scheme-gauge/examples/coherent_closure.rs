//! Coherent closure of a graph: the coarsest coherent configuration whose
//! algebra contains the adjacency matrix, plus membership testing and the
//! walk-regularity report.

use scheme_gauge::coherent::{coherent_closure, Membership};
use scheme_gauge::graphs::{named_graph, Graph};
use scheme_gauge::schemes::walk_regularity;

fn main() -> scheme_gauge::Result<()> {
    // a strongly regular graph closes into a 2-class scheme
    let g = named_graph("paley(13)")?;
    let a = g.adjacency_bin();
    let cfg = coherent_closure(&[a.clone()])?;
    let flags = cfg.classify()?;
    println!(
        "paley(13): {} classes, {} fibers, homogeneous {}, commutative {}, symmetric {}",
        cfg.class_count(),
        cfg.fibers().len(),
        flags.homogeneous,
        flags.commutative,
        flags.symmetric
    );
    match cfg.membership(&a)? {
        Membership::Belongs(i) => println!("adjacency matrix is class {i}"),
        other => println!("membership: {other:?}"),
    }

    // an irregular graph fractures into many classes and fibers
    let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)])?;
    let cfg = coherent_closure(&[path.adjacency_bin()])?;
    println!(
        "path on 4 vertices: {} classes, {} fibers",
        cfg.class_count(),
        cfg.fibers().len()
    );

    // walk regularity: constancy of A^k diagonals and edge entries
    let report = walk_regularity(&named_graph("petersen")?)?;
    println!(
        "petersen walk-regular: {}, one-walk-regular: {}",
        report.is_walk_regular, report.is_one_walk_regular
    );
    Ok(())
}
