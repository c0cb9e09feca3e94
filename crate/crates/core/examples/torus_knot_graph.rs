//! Embedded resolution graphs of torus knots with their multiplicity
//! systems.

use plumbing_sw::builders::{torus_knot_graph, KnotSpec};
use plumbing_sw::format::serialize_graph;

fn main() -> plumbing_sw::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>());
    let (a, b) = match (args.next(), args.next()) {
        (Some(Ok(a)), Some(Ok(b))) => (a, b),
        _ => (3, 4),
    };
    let r = torus_knot_graph(KnotSpec::new(a, b)?);
    let g = r.graph();
    println!("T({a},{b}): {} vertices, arrow at vertex {}", g.len(), g.id(r.arrow_vertex()));
    for v in 0..g.len() {
        println!("  vertex {} e = {:>3} m = {}", g.id(v), g.euler(v), r.multiplicities()[v]);
    }
    println!("orthogonality residuals: {:?}", r.orthogonality_residuals());
    println!("{}", serialize_graph(g));
    Ok(())
}
