//! The lattice cohomology Euler characteristic against the recursion.

use plumbing_sw::latcoh::{lattice_eu, EuConfig, WeightedBox};
use plumbing_sw::sw::SwEngine;
use plumbing_sw::{Lattice, PlumbingGraph};

fn main() -> plumbing_sw::Result<()> {
    let g = PlumbingGraph::new(&[-2, -3, -5, -2, -2], &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
    let lat = Lattice::new(&g)?;
    let mut engine = SwEngine::new();
    for h in 0..lat.order() as usize {
        let r = lat.minimal_representative(h);
        let eu = lattice_eu(&g, &r, EuConfig::default())?;
        println!(
            "class {h}: eu = {:?}, s_h = {}, min w = {}, b0 profile {:?}",
            eu.eu.map(|x| x.to_string()),
            engine.s_class(&g, h)?,
            eu.min_weight,
            eu.b0_profile
        );
    }
    let b = WeightedBox::new(&lat, &lat.minimal_representative(0), &[2, 2, 2, 2, 2])?;
    for n in b.min_weight()..b.min_weight() + 3 {
        println!("S_{n} in [0,2]^5: Betti {:?}", b.sublevel_betti(n));
    }
    Ok(())
}
