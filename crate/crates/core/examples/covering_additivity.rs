//! Σ_h s_h of a base against s_0 of its universal abelian cover.

use plumbing_sw::builders::{parse_knots, torus_surgery_graph};
use plumbing_sw::covers::{uac_graph, uac_surgery};
use plumbing_sw::selftest::{cap_failure_base, cap_success_base};
use plumbing_sw::sw::{cap_check, SwEngine};

fn main() -> plumbing_sw::Result<()> {
    let mut engine = SwEngine::new();
    for (knots, p, q) in [("(3,4)", 4, 1), ("(2,7)", 4, 1), ("(2,3)+(2,3)", 5, 2)] {
        let sg = torus_surgery_graph(&parse_knots(knots)?, p, q)?;
        let cover = uac_surgery(&sg)?;
        let r = cap_check(&mut engine, &sg.graph, &cover.graph)?;
        println!("{knots}, -{p}/{q}: Σ s_h = {}, s_0(cover) = {}, holds: {}", r.base_total, r.cover_s0, r.holds);
    }
    for (name, g) in [("failure", cap_failure_base()), ("success", cap_success_base())] {
        let cover = uac_graph(&g)?;
        let r = cap_check(&mut engine, &g, &cover.graph)?;
        println!("{name}: s_h = {:?}, s_0(cover) = {}, holds: {}", r.base_values, r.cover_s0, r.holds);
    }
    Ok(())
}
