//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use common::{oracle_det, oracle_torus_alexander, random_definite_tree_with};
use plumbing_sw::builders::{
    blow_down, blow_up, hj_continued_fraction, torus_knot_graph, torus_surgery_graph, BlowUpSite, KnotSpec,
    SurgeryGraph,
};
use plumbing_sw::covers::{suspension_graph, uac_graph, uac_surgery};
use plumbing_sw::latcoh::{lattice_eu, EuConfig};
use plumbing_sw::selftest::{cap_failure_base, cap_failure_cover, cap_success_base, cap_success_cover};
use plumbing_sw::sw::{
    alexander_polynomial, cap_check, class_series, integral_surgery_table, knot_alexander, summed_series,
    surgery_s_values, suspension_pg, SwEngine, VertexChoice,
};
use plumbing_sw::{Error, Lattice, PlumbingGraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T>(r: plumbing_sw::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn knots(pairs: &[(i64, i64)]) -> Vec<KnotSpec> {
    pairs.iter().map(|&(a, b)| KnotSpec::new(a, b).unwrap()).collect()
}

fn sum(values: &[BigInt]) -> BigInt {
    values.iter().sum()
}

fn three_knot_surgery() -> Outcome {
    let mut engine = SwEngine::new();
    let sg = lib(torus_surgery_graph(&knots(&[(6, 7), (2, 9), (2, 5)]), 8, 1))?;
    let lat = lib(engine.lattice(&sg.graph))?;
    let h_u = summed_series(&lat, sg.u);
    let pol = h_u.polynomial_part().eval_at_one();
    ensure!(pol == big(293), "H_u^pol(1) = {pol}");
    let table = lib(integral_surgery_table(&sg))?;
    ensure!(table.c_total == big(34), "Σ c_h = {}", table.c_total);
    let s = sum(&lib(surgery_s_values(&mut engine, &sg))?);
    ensure!(s == big(327), "Σ s_h = {s}");
    let uac = lib(uac_surgery(&sg))?;
    let gamma = lib(engine.lattice(&uac.graph))?;
    let mut factors: Vec<BigInt> = uac.suspensions.iter().map(|b| oracle_det(&b.graph).into()).collect();
    factors.sort();
    ensure!(gamma.order() == 315, "|J| = {}", gamma.order());
    ensure!(factors == [big(5), big(7), big(9)], "block determinants {factors:?}");
    let s0 = lib(engine.s_class(&uac.graph, 0))?;
    ensure!(s0 == big(327), "s_0(Γ) = {s0}");
    let f_w0 = lib(class_series(&gamma, uac.w, 0))?;
    ensure!(h_u.substitute_power(315).equals(&f_w0), "H_u(t^315) ≠ F_w,0(t)");
    Ok("293 + 34 = 327 = s_0(Γ), |J| = 315 = 5·7·9, series identity exact".into())
}

fn cap_case(
    base: PlumbingGraph,
    published: PlumbingGraph,
    expected: [i64; 2],
    expected_s0: i64,
    expect_hold: bool,
) -> Outcome {
    let mut engine = SwEngine::new();
    ensure!(oracle_det(&base) == 2, "det(G) = {}", oracle_det(&base));
    let cover = lib(uac_graph(&base))?;
    ensure!(
        blow_down(&cover.graph).is_isomorphic(&published),
        "computed cover {} is not the published graph",
        cover.graph.canonical_form()
    );
    let report = lib(cap_check(&mut engine, &base, &published))?;
    ensure!(report.base_values == [big(expected[0]), big(expected[1])], "s_h = {:?}", report.base_values);
    ensure!(report.cover_s0 == big(expected_s0), "s_0(Γ) = {}", report.cover_s0);
    let own = lib(engine.s_class(&cover.graph, 0))?;
    ensure!(own == report.cover_s0, "s_0 of the computed cover = {own}");
    ensure!(report.holds == expect_hold, "CAP verdict {}", report.holds);
    Ok(format!(
        "{} + {} = {} {} {} = s_0(Γ), CAP {}",
        expected[0],
        expected[1],
        expected[0] + expected[1],
        if expect_hold { "=" } else { "≠" },
        expected_s0,
        if expect_hold { "holds" } else { "fails" }
    ))
}

fn single_knot(a: i64, b: i64, d: i64, expected: i64) -> Result<(), String> {
    let mut engine = SwEngine::new();
    let sg = lib(torus_surgery_graph(&knots(&[(a, b)]), d, 1))?;
    let s = sum(&lib(surgery_s_values(&mut engine, &sg))?);
    ensure!(s == big(expected), "Σ s_h = {s}");
    let uac = lib(uac_surgery(&sg))?;
    let s0 = lib(engine.s_class(&uac.graph, 0))?;
    ensure!(s0 == big(expected), "s_0(Σ) = {s0}");
    Ok(())
}

fn trefoil_family_three_four() -> Outcome {
    single_knot(3, 4, 4, 9)?;
    let pg = lib(suspension_pg(&torus_knot_graph(KnotSpec::new(3, 4).unwrap()), 16))?;
    ensure!(pg == big(9), "suspension p_g = {pg}");
    Ok("Σ s_h = 9 = s_0(Σ), p_g(T(3,4), 16) = 9".into())
}

fn two_seven() -> Outcome {
    single_knot(2, 7, 4, 10)?;
    Ok("Σ s_h = 10 = s_0(Σ)".into())
}

fn lens_chains() -> Outcome {
    let mut rng = common::rng(6);
    let mut engine = SwEngine::new();
    let mut classes = 0;
    for _ in 0..50 {
        let p: i64 = rng.gen_range(2..=60);
        let q = loop {
            let q = rng.gen_range(1..p.max(2));
            if q.gcd(&p) == 1 {
                break q;
            }
        };
        let ks = lib(hj_continued_fraction(p, q))?;
        let g = PlumbingGraph::chain(&ks.iter().map(|k| -k).collect::<Vec<_>>());
        ensure!(oracle_det(&g) == p as i128, "chain of {p}/{q} has det {}", oracle_det(&g));
        for h in 0..p as usize {
            let s = lib(engine.s_class(&g, h))?;
            ensure!(s.is_zero(), "s_{h} = {s} on the chain of {p}/{q}");
            classes += 1;
        }
    }
    Ok(format!("50 chains, {classes} classes, all s_h = 0"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = common::rng(7);
    let mut engine = SwEngine::new();
    let config = EuConfig::default();
    let (mut checked, mut inconclusive, mut trees, mut nonzero, mut branched) =
        (0usize, 0usize, 0usize, 0usize, 0usize);
    while trees < 24 {
        let node = if trees % 2 == 0 { Some(-1) } else { None };
        let g = random_definite_tree_with(&mut rng, 6, -7, 40, node);
        if g.is_chain() && (g.len() < 3 || trees % 4 != 0) {
            continue;
        }
        trees += 1;
        branched += usize::from(!g.is_chain());
        let lat = lib(Lattice::new(&g))?;
        let site = if g.edges().is_empty() || rng.gen_bool(0.5) {
            BlowUpSite::Vertex(rng.gen_range(0..g.len()))
        } else {
            let (a, b) = g.edges()[rng.gen_range(0..g.edges().len())];
            BlowUpSite::Edge(a, b)
        };
        let blown = lib(blow_up(&g, site))?;
        let blown_lat = lib(Lattice::new(&blown))?;
        for h in 0..lat.order() as usize {
            let s = lib(engine.s_class(&g, h))?;
            nonzero += usize::from(!s.is_zero());
            for v in 0..g.len() {
                let alt = lib(engine.s_class_with(&g, h, VertexChoice::At(v)))?;
                ensure!(
                    alt == s,
                    "tree {}: class {h} gives {s} at the default vertex, {alt} at {v}",
                    g.canonical_form()
                );
            }
            let r = lat.minimal_representative(h);
            let mut coords = lib(lat.to_dual_coords(&r))?;
            coords.push(BigInt::zero());
            let lifted = blown_lat.from_dual_coords(&coords);
            let after = lib(engine.s_invariant(&blown, &lifted))?;
            ensure!(after == s, "tree {}: class {h} changes from {s} to {after} under {site:?}", g.canonical_form());
            let eu = lib(lattice_eu(&g, &r, config))?;
            checked += 1;
            match eu.eu {
                Some(e) => ensure!(e == s, "tree {}: class {h} has s = {s}, eu = {e}", g.canonical_form()),
                None => inconclusive += 1,
            }
        }
    }
    ensure!(inconclusive * 10 < checked, "{inconclusive} of {checked} lattice computations inconclusive");
    Ok(format!(
        "{trees} trees ({branched} with a node), {checked} classes ({nonzero} with s ≠ 0), {inconclusive} inconclusive"
    ))
}

fn shortcut_case(engine: &mut SwEngine, sg: &SurgeryGraph) -> Result<(), String> {
    let table = lib(integral_surgery_table(sg))?;
    let values = lib(surgery_s_values(engine, sg))?;
    let lat = lib(engine.lattice(&sg.graph))?;
    for (h, value) in values.iter().enumerate() {
        let shifted = lat.dual(sg.u).scale_int(h as i64);
        let direct = lib(engine.s_invariant(&sg.graph, &shifted))?;
        ensure!(table.s_shifted[h] == direct, "p = {}, h = {h}: s_(s_h) {} vs {direct}", sg.p, table.s_shifted[h]);
        ensure!(table.s[h] == *value, "p = {}, h = {h}: table {} vs recursion {value}", sg.p, table.s[h]);
        ensure!(table.c_chi[h] == table.c_floor[h], "p = {}, h = {h}: c_h formulas differ", sg.p);
    }
    Ok(())
}

fn shortcut_consistency() -> Outcome {
    let mut engine = SwEngine::new();
    let fixed: [(&[(i64, i64)], i64); 3] = [(&[(6, 7), (2, 9), (2, 5)], 8), (&[(3, 4)], 4), (&[(2, 7)], 4)];
    for (ks, d) in fixed {
        shortcut_case(&mut engine, &lib(torus_surgery_graph(&knots(ks), d, 1))?)?;
    }
    let mut rng = common::rng(8);
    let mut cases = Vec::new();
    while cases.len() < 10 {
        let a: i64 = rng.gen_range(2..=5);
        let b: i64 = rng.gen_range(a + 1..=9);
        if a.gcd(&b) != 1 {
            continue;
        }
        let d: i64 = rng.gen_range(2..=10);
        shortcut_case(&mut engine, &lib(torus_surgery_graph(&knots(&[(a, b)]), d, 1))?)?;
        cases.push(format!("T({a},{b})/{d}"));
    }
    Ok(format!("3 fixed and 10 random cases ({})", cases.join(" ")))
}

fn alexander_identities() -> Outcome {
    for (a, b) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (6, 7)] {
        let delta = lib(knot_alexander(&torus_knot_graph(KnotSpec::new(a, b).unwrap())))?;
        let coeffs = delta.to_i64_vec().ok_or("coefficients overflow")?;
        ensure!(coeffs == oracle_torus_alexander(a as usize, b as usize), "T({a},{b}): {delta}");
        ensure!(delta.eval_at_one().is_one(), "Δ(1) = {} for T({a},{b})", delta.eval_at_one());
    }
    for (a, b) in [(6, 7), (2, 9), (2, 5)] {
        let block = lib(suspension_graph(&torus_knot_graph(KnotSpec::new(a, b).unwrap()), 8))?;
        let lifted = lib(alexander_polynomial(&block.graph, block.w))?;
        let coeffs = lifted.to_i64_vec().ok_or("coefficients overflow")?;
        ensure!(coeffs == oracle_torus_alexander(a as usize, b as usize), "block of T({a},{b}): {lifted}");
    }
    Ok("six closed forms, Δ(1) = 1, three suspension blocks unchanged".into())
}

fn coef(lat: &Lattice, a: usize, b: usize) -> BigRational {
    lat.dual_coefficient(a, b).clone()
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(big(x))
}

fn structural_instance(engine: &mut SwEngine, sg: &SurgeryGraph) -> Result<bool, String> {
    let (p, q) = (sg.p, sg.q);
    let tag = format!("p/q = {p}/{q}, {} knots", sg.knots.len());
    ensure!(oracle_det(&sg.graph) == p as i128, "{tag}: det(G) = {}", oracle_det(&sg.graph));
    let lat = lib(engine.lattice(&sg.graph))?;
    ensure!(int(p) * coef(&lat, sg.u, sg.u) == int(q), "{tag}: (a) fails on (E_u*, E_u*)");
    ensure!(int(p) * coef(&lat, sg.u_prime, sg.u) == int(1), "{tag}: (a) fails on (E_u'*, E_u*)");
    for (block, &uj) in sg.blocks.iter().zip(&sg.u_j) {
        let (sub, map) = lib(sg.graph.induced(block))?;
        let sub_lat = lib(Lattice::new(&sub))?;
        let local_u = map.iter().position(|&x| x == uj).unwrap();
        for (i, &v) in map.iter().enumerate() {
            ensure!(
                int(q) * coef(&sub_lat, local_u, i) == int(p) * coef(&lat, sg.u, v),
                "{tag}: (b) fails at vertex {v}"
            );
        }
    }
    for h in 0..lat.order() as usize {
        lib(engine.s_class(&sg.graph, h))?;
    }
    let uac = match uac_surgery(sg) {
        Ok(u) => u,
        Err(Error::NotRationalHomologySphere(_)) => return Ok(false),
        Err(e) => return Err(format!("{tag}: {e}")),
    };
    let gamma = match Lattice::new(&uac.graph) {
        Ok(l) => l,
        Err(Error::NotNegativeDefinite) => return Ok(false),
        Err(e) => return Err(format!("{tag}: {e}")),
    };
    let mut product = BigInt::one();
    for s in &uac.suspensions {
        product *= lib(Lattice::new(&s.graph))?.det().clone();
    }
    ensure!(*gamma.det() == product, "{tag}: det(Γ) = {} but Π det(Γ_j) = {product}", gamma.det());
    ensure!(coef(&gamma, uac.w, uac.w) == int(q), "{tag}: (c) fails on (F_w*, F_w*)");
    ensure!(coef(&gamma, uac.w_prime, uac.w) == int(1), "{tag}: (c) fails on (F_w'*, F_w*)");
    for (block, &wj) in uac.blocks.iter().zip(&uac.w_j) {
        let (sub, map) = lib(uac.graph.induced(block))?;
        let sub_lat = lib(Lattice::new(&sub))?;
        let local_w = map.iter().position(|&x| x == wj).unwrap();
        for (i, &v) in map.iter().enumerate() {
            ensure!(int(q) * coef(&sub_lat, local_w, i) == coef(&gamma, uac.w, v), "{tag}: (d) fails at vertex {v}");
        }
    }
    Ok(true)
}

fn structural_invariants() -> Outcome {
    let mut engine = SwEngine::new();
    let families: [&[(i64, i64)]; 4] = [&[(2, 3)], &[(2, 5)], &[(3, 4)], &[(2, 3), (2, 5)]];
    let mut rng = common::rng(10);
    let (mut instances, mut with_cover) = (0, 0);
    for ks in families {
        for p in 1..=20i64 {
            let mut qs = vec![1];
            let coprime: Vec<i64> = (2..=p + 3).filter(|q| q.gcd(&p) == 1).collect();
            if !coprime.is_empty() {
                qs.push(coprime[rng.gen_range(0..coprime.len())]);
            }
            for q in qs {
                let sg = lib(torus_surgery_graph(&knots(ks), p, q))?;
                instances += 1;
                if structural_instance(&mut engine, &sg)? {
                    with_cover += 1;
                }
            }
        }
    }
    Ok(format!("{instances} instances, covers checked on {with_cover} (the rest are not rational homology spheres)"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("d=8 surgery on T(6,7)#T(2,9)#T(2,5)", Duration::from_secs(60), three_knot_surgery),
        ("additivity fails on a Z_2 graph", Duration::from_secs(10), || {
            cap_case(cap_failure_base(), cap_failure_cover(), [15, 14], 21, false)
        }),
        ("additivity holds on a Z_2 graph", Duration::from_secs(10), || {
            cap_case(cap_success_base(), cap_success_cover(), [147, 132], 279, true)
        }),
        ("d=4 surgery on T(3,4)", Duration::from_secs(10), trefoil_family_three_four),
        ("d=4 surgery on T(2,7)", Duration::from_secs(10), two_seven),
        ("lens spaces have vanishing s_h", Duration::MAX, lens_chains),
        ("recursion agrees with lattice cohomology", Duration::MAX, oracle_equivalence),
        ("integral-surgery shortcut", Duration::MAX, shortcut_consistency),
        ("Alexander polynomial identities", Duration::MAX, alexander_identities),
        ("structural invariants of surgery graphs", Duration::MAX, structural_invariants),
    ];
    let mut failures = 0;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *budget {
            outcome = Err(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), budget.as_secs()));
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("[{tag}] criterion {:>2}: {title}: {detail} ({:.2} s)", i + 1, elapsed.as_secs_f64());
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
