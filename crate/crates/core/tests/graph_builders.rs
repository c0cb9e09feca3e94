mod common;

use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;

use common::{oracle_det, oracle_hj_value, random_tree_edges};
use plumbing_sw::builders::{
    blow_down, blow_up, hj_continued_fraction, hj_evaluate, parse_knots, superisolated_compat, torus_knot_graph,
    torus_surgery_graph, BlowUpSite, KnotSpec,
};
use plumbing_sw::format::{parse_graph_str, serialize_graph};
use plumbing_sw::graph::Arrow;
use plumbing_sw::{Lattice, PlumbingGraph};

proptest! {
    #[test]
    fn continued_fractions_round_trip(p in 1i64..5000, q in 1i64..5000) {
        prop_assume!(p.gcd(&q) == 1);
        let ks = hj_continued_fraction(p, q).unwrap();
        prop_assert!(ks[0] >= 1 && ks[1..].iter().all(|&k| k >= 2));
        prop_assert_eq!(oracle_hj_value(&ks), (p as i128, q as i128));
        prop_assert_eq!(hj_evaluate(&ks), num_rational::BigRational::new(p.into(), q.into()));
    }

    #[test]
    fn lens_chains_have_determinant_p(p in 2i64..400, q in 1i64..400) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let ks = hj_continued_fraction(p, q).unwrap();
        let g = PlumbingGraph::chain(&ks.iter().map(|k| -k).collect::<Vec<_>>());
        prop_assert_eq!(oracle_det(&g), p as i128);
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = 10;
        let edges = random_tree_edges(&mut rng, n);
        let eulers: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=-1)).collect();
        let mut g = PlumbingGraph::new(&eulers, &edges).unwrap();
        if rng.gen_bool(0.5) {
            let m: Vec<i64> = (0..n).map(|_| rng.gen_range(1..50)).collect();
            g.set_multiplicities(Some(m)).unwrap();
            g.set_arrows(vec![Arrow { vertex: rng.gen_range(0..n), multiplicity: rng.gen_range(1..9) }]).unwrap();
        }
        let text = serialize_graph(&g);
        let back = parse_graph_str(&text).unwrap();
        prop_assert!(back.is_isomorphic(&g));
        prop_assert_eq!(serialize_graph(&back), text);
    }
}

#[test]
fn known_continued_fractions() {
    assert_eq!(hj_continued_fraction(8, 5).unwrap(), vec![2, 3, 2]);
    assert_eq!(hj_continued_fraction(7, 1).unwrap(), vec![7]);
    assert_eq!(hj_continued_fraction(2, 3).unwrap(), vec![1, 3]);
    assert!(hj_continued_fraction(6, 4).is_err());
    assert!(hj_continued_fraction(0, 1).is_err());
}

#[test]
fn torus_knot_graphs() {
    for (a, b) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5), (4, 7), (5, 8), (6, 7)] {
        let r = torus_knot_graph(KnotSpec::new(a, b).unwrap());
        let g = r.graph();
        assert_eq!(oracle_det(&g.bare()), 1, "T({a},{b})");
        assert!(r.orthogonality_residuals().iter().all(|&x| x == 0));
        assert_eq!(r.arrow_multiplicity(), a * b);
        assert_eq!(g.euler(r.arrow_vertex()), -1);
        assert_eq!(g.degree(r.arrow_vertex()), 2);
        assert!(r.multiplicities().iter().all(|&m| m > 0));
    }
}

#[test]
fn knot_specs_are_validated() {
    assert!(KnotSpec::new(2, 4).is_err());
    assert!(KnotSpec::new(1, 4).is_err());
    assert_eq!(KnotSpec::new(6, 7).unwrap().delta(), 15);
    let ks = parse_knots("(6,7)+(2,9)+(2,5)").unwrap();
    assert_eq!(ks.iter().map(|k| (k.a, k.b)).collect::<Vec<_>>(), vec![(6, 7), (2, 9), (2, 5)]);
    assert!(parse_knots("(6,7)+").is_err());
}

#[test]
fn surgery_graphs_have_cyclic_homology_of_order_p() {
    let families: [&[(i64, i64)]; 3] = [&[(2, 3)], &[(3, 4), (2, 5)], &[(6, 7), (2, 9), (2, 5)]];
    for ks in families {
        let specs: Vec<KnotSpec> = ks.iter().map(|&(a, b)| KnotSpec::new(a, b).unwrap()).collect();
        for p in 1..=15 {
            for q in 1..=6 {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let sg = torus_surgery_graph(&specs, p, q).unwrap();
                assert_eq!(oracle_det(&sg.graph), p as i128);
                assert!(sg.graph.is_tree());
                assert_eq!(sg.blocks.len(), ks.len());
                for block in &sg.blocks {
                    let (sub, _) = sg.graph.induced(block).unwrap();
                    assert_eq!(oracle_det(&sub), 1);
                }
                let chain: Vec<usize> = std::iter::once(sg.u).chain(sg.chain.iter().copied()).collect();
                let (g0, _) = sg.graph.induced(&sg.chain).unwrap();
                assert_eq!(oracle_det(&g0), q as i128);
                assert_eq!(*chain.last().unwrap(), sg.u_prime);
                let lat = Lattice::new(&sg.graph).unwrap();
                assert_eq!(lat.homology().group().order_of(lat.dual_class(sg.u_prime)), p as u64);
            }
        }
    }
}

#[test]
fn branch_divisor_is_orthogonal_to_the_graph() {
    let specs = [KnotSpec::new(2, 3).unwrap(), KnotSpec::new(3, 5).unwrap()];
    for (p, q) in [(3, 1), (7, 2), (10, 3), (13, 8)] {
        let sg = torus_surgery_graph(&specs, p, q).unwrap();
        let g = sg.branch_graph();
        let m = g.multiplicities().unwrap();
        for v in 0..g.len() {
            let mut s = g.euler(v) * m[v] + g.neighbors(v).iter().map(|&w| m[w]).sum::<i64>();
            s += g.arrows().iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).sum::<i64>();
            assert_eq!(s, 0, "p/q = {p}/{q}, vertex {v}");
        }
    }
}

#[test]
fn blow_ups_preserve_determinant_and_blow_down_undoes_them() {
    let mut rng = common::rng(21);
    for _ in 0..40 {
        let g = loop {
            let n = rng.gen_range(2..=7);
            let edges = random_tree_edges(&mut rng, n);
            let eulers: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=-2)).collect();
            let g = PlumbingGraph::new(&eulers, &edges).unwrap();
            if common::oracle_negative_definite(&g) {
                break g;
            }
        };
        let site = if rng.gen_bool(0.5) {
            BlowUpSite::Vertex(rng.gen_range(0..g.len()))
        } else {
            let (a, b) = g.edges()[rng.gen_range(0..g.edges().len())];
            BlowUpSite::Edge(a, b)
        };
        let blown = blow_up(&g, site).unwrap();
        assert_eq!(blown.len(), g.len() + 1);
        assert_eq!(oracle_det(&blown), oracle_det(&g));
        assert!(blow_down(&blown).is_isomorphic(&g));
    }
    assert!(blow_up(&PlumbingGraph::chain(&[-2, -2]), BlowUpSite::Edge(0, 0)).is_err());
    assert!(blow_up(&PlumbingGraph::chain(&[-2]), BlowUpSite::Vertex(3)).is_err());
}

#[test]
fn blow_down_keeps_vertices_with_arrows() {
    let mut g = PlumbingGraph::chain(&[-2, -1, -3]);
    g.set_arrows(vec![Arrow { vertex: 1, multiplicity: 1 }]).unwrap();
    assert_eq!(blow_down(&g).len(), 3);
    assert!(blow_down(&g.bare()).is_isomorphic(&PlumbingGraph::chain(&[-1])));
}

#[test]
fn genus_condition_for_cuspidal_curves() {
    assert!(superisolated_compat(&[15, 4, 2], 8));
    assert!(!superisolated_compat(&[15, 4, 2], 7));
    assert!(superisolated_compat(&[3], 4));
    assert!(superisolated_compat(&[1], 3));
}

#[test]
fn graph_file_errors() {
    assert!(parse_graph_str("{").is_err());
    assert!(parse_graph_str(r#"{"vertices": []}"#).is_err());
    let disconnected = r#"{"vertices": [{"id": 0, "euler": -2}, {"id": 1, "euler": -2}]}"#;
    assert!(parse_graph_str(disconnected).is_err());
    let genus = r#"{"vertices": [{"id": 0, "euler": -2, "genus": 1}]}"#;
    assert!(parse_graph_str(genus).is_err());
    let dangling = r#"{"vertices": [{"id": 0, "euler": -2}], "edges": [[0, 4]]}"#;
    assert!(parse_graph_str(dangling).is_err());
    let cycle = r#"{"vertices": [{"id": 0, "euler": -3}, {"id": 1, "euler": -3}, {"id": 2, "euler": -3}],
                    "edges": [[0, 1], [1, 2], [2, 0]]}"#;
    assert!(parse_graph_str(cycle).is_err());
}
