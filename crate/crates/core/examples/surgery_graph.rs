//! The plumbing graph of -p/q surgery along a connected sum of torus knots,
//! with its distinguished vertices and the branch divisor of its cover.

use plumbing_sw::builders::{det_i64, parse_knots, torus_surgery_graph};

fn main() -> plumbing_sw::Result<()> {
    let knots = parse_knots("(2,3)+(2,5)")?;
    let sg = torus_surgery_graph(&knots, 7, 3)?;
    let g = &sg.graph;
    println!("p/q = {}/{} = {:?}", sg.p, sg.q, sg.continued_fraction);
    println!("det = {}", det_i64(g)?);
    println!("u = {}, u' = {}, u_j = {:?}, chain = {:?}", sg.u, sg.u_prime, sg.u_j, sg.chain);
    for (j, block) in sg.blocks.iter().enumerate() {
        let eulers: Vec<i64> = block.iter().map(|&v| g.euler(v)).collect();
        println!("block {}: Euler numbers {eulers:?}", j + 1);
    }
    println!("branch divisor D = {:?} plus an arrow of multiplicity {} at u'", sg.branch, sg.p);
    Ok(())
}
