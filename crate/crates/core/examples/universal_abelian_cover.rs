//! Universal abelian covers of graphs with cyclic H, general and
//! surgery forms.

use std::path::PathBuf;

use plumbing_sw::builders::{blow_down, det_i64, parse_knots, torus_surgery_graph};
use plumbing_sw::covers::{uac_graph, uac_surgery};
use plumbing_sw::format::parse_graph;

fn main() -> plumbing_sw::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/cap_holds_base.json")));
    let g = parse_graph(&path)?;
    let cover = uac_graph(&g)?;
    println!("base det {}, cover: {} vertices, det {}", det_i64(&g)?, cover.graph.len(), det_i64(&cover.graph)?);
    for (v, fiber) in cover.fibers.iter().enumerate() {
        println!("  base vertex {} lifts to {:?}", g.id(v), fiber);
    }
    let minimal = blow_down(&cover.graph);
    let eulers: Vec<i64> = minimal.vertices().iter().map(|v| v.euler).collect();
    println!("after blowing down: Euler numbers {eulers:?}, edges {:?}", minimal.edges());

    let sg = torus_surgery_graph(&parse_knots("(2,3)+(2,5)")?, 5, 2)?;
    let u = uac_surgery(&sg)?;
    let block_dets: Vec<i64> = u.suspensions.iter().map(|s| det_i64(&s.graph)).collect::<Result<_, _>>()?;
    println!(
        "surgery form: {} vertices, det {} = product of {block_dets:?}, e_w = {}",
        u.graph.len(),
        det_i64(&u.graph)?,
        u.graph.euler(u.w)
    );
    Ok(())
}
