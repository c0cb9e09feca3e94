//! The integral-surgery shortcut: s_h from the coefficients of Q where
//! Δ = 1 + δ(t-1) + (t-1)^2 Q, checked against the recursion.

use plumbing_sw::builders::{parse_knots, torus_surgery_graph};
use plumbing_sw::sw::{integral_surgery_table, surgery_s_values, SwEngine};

fn main() -> plumbing_sw::Result<()> {
    let knots = parse_knots("(6,7)+(2,9)+(2,5)")?;
    let sg = torus_surgery_graph(&knots, 8, 1)?;
    let t = integral_surgery_table(&sg)?;
    println!("Δ(t) = {}", t.alexander);
    println!("δ = {}, Q(1) = {}, Σ c_h = {}, Σ s_h = {}", t.delta, t.q_at_one, t.c_total, t.total);
    let direct = surgery_s_values(&mut SwEngine::new(), &sg)?;
    for (h, d) in direct.iter().enumerate() {
        println!(
            "h = {h}: s_(s_h) = {:>3}  c_h = {:>3}  s_h = {:>3}  recursion {d:>3}",
            t.s_shifted[h], t.c_chi[h], t.s[h]
        );
    }
    Ok(())
}
