//! Cyclic branched covers: the graph of f + z^p from the graph of f.

use plumbing_sw::builders::{blow_down, det_i64, torus_knot_graph, KnotSpec};
use plumbing_sw::covers::suspension_graph;
use plumbing_sw::sw::{alexander_polynomial, suspension_pg, SwEngine};

fn main() -> plumbing_sw::Result<()> {
    let mut engine = SwEngine::new();
    for (a, b, p) in [(2, 3, 5), (2, 3, 6), (2, 3, 7), (3, 4, 5), (2, 5, 8)] {
        let f = torus_knot_graph(KnotSpec::new(a, b)?);
        let s = match suspension_graph(&f, p) {
            Ok(s) => s,
            Err(e) => {
                println!("T({a},{b}), p = {p}: {e}");
                continue;
            }
        };
        let minimal = blow_down(&s.graph);
        println!(
            "T({a},{b}), p = {p}: {} vertices ({} after blowing down), det {}, n_w = {}",
            s.graph.len(),
            minimal.len(),
            det_i64(&s.graph)?,
            s.n_w()
        );
        println!(
            "   s_0 = {}, Σ χ(-⌊h(f)/p⌋) = {}, Δ of z = 0: {}",
            engine.s_class(&s.graph, 0)?,
            suspension_pg(&f, p)?,
            alexander_polynomial(&s.graph, s.w)?
        );
    }
    Ok(())
}
