//! Hirzebruch–Jung expansions and the lens-space chains they describe.

use plumbing_sw::builders::{det_i64, hj_continued_fraction, hj_evaluate};
use plumbing_sw::PlumbingGraph;

fn main() -> plumbing_sw::Result<()> {
    for (p, q) in [(8, 5), (7, 2), (13, 5), (5, 7), (30, 7)] {
        let ks = hj_continued_fraction(p, q)?;
        let chain = PlumbingGraph::chain(&ks.iter().map(|k| -k).collect::<Vec<_>>());
        println!("{p}/{q} = {ks:?}  evaluates to {}", hj_evaluate(&ks));
        if ks.len() > 1 {
            let tail = PlumbingGraph::chain(&ks[1..].iter().map(|k| -k).collect::<Vec<_>>());
            println!("   chain without k_0: det {}", det_i64(&tail)?);
        } else {
            println!("   single vertex, det {}", det_i64(&chain)?);
        }
    }
    Ok(())
}
