//! Intersection form, anti-duals, canonical class, χ and the homology
//! classes of a small star-shaped graph.

use plumbing_sw::lattice::intersection_form;
use plumbing_sw::{Lattice, PlumbingGraph};

fn main() -> plumbing_sw::Result<()> {
    let g = PlumbingGraph::new(&[-2, -3, -7, -2], &[(0, 1), (0, 2), (0, 3)])?;
    for row in intersection_form(&g) {
        println!("{row:?}");
    }
    let lat = Lattice::new(&g)?;
    println!("det = {}, H = {:?}", lat.det(), lat.homology().group().factors());
    for v in 0..g.len() {
        let coords: Vec<String> = lat.dual(v).coords.iter().map(ToString::to_string).collect();
        println!("E_{v}^* = ({})", coords.join(", "));
    }
    let k = lat.canonical();
    println!("k = {:?}", k.coords.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("χ(k) = {}, k^2 + #V = {}", lat.chi(k), lat.pair(k, k) + plumbing_sw::lattice::integer(g.len() as i64));
    for h in 0..lat.order() as usize {
        let r = lat.minimal_representative(h);
        println!(
            "class {:?}: r_h = {:?}, χ(r_h) = {}",
            lat.homology().group().element(h),
            r.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
            lat.chi(&r)
        );
    }
    Ok(())
}
