//! The table r_h, i_h, s_h, sw_h of a graph file (default: a Z_2 example).

use std::path::PathBuf;

use plumbing_sw::format::parse_graph;
use plumbing_sw::sw::sw_table;

fn main() -> plumbing_sw::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/cap_failure_base.json"))
    });
    let g = parse_graph(&path)?;
    let report = sw_table(&g)?;
    println!("invariant factors {:?}", report.factors);
    for row in &report.rows {
        println!("h = {:?}: i_h = {}, s_h = {}, sw_h = {}", row.residues, row.i, row.s, row.sw);
    }
    println!("Σ s_h = {}", report.total);
    Ok(())
}
