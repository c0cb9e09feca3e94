//! s_h does not change under blowing up a vertex or an edge.

use plumbing_sw::builders::{blow_up, BlowUpSite};
use plumbing_sw::sw::sw_table;
use plumbing_sw::PlumbingGraph;

fn main() -> plumbing_sw::Result<()> {
    let g = PlumbingGraph::new(&[-1, -2, -3, -9], &[(0, 1), (0, 2), (0, 3)])?;
    let show = |label: &str, g: &PlumbingGraph| -> plumbing_sw::Result<()> {
        let r = sw_table(g)?;
        let s: Vec<String> = r.rows.iter().map(|x| x.s.to_string()).collect();
        println!("{label:>10}: {} vertices, H = {:?}, s_h = {}", g.len(), r.factors, s.join(" "));
        Ok(())
    };
    show("original", &g)?;
    show("vertex 2", &blow_up(&g, BlowUpSite::Vertex(2))?)?;
    show("edge (0,3)", &blow_up(&g, BlowUpSite::Edge(0, 3))?)?;
    Ok(())
}
