//! Hirzebruch–Jung chains, torus knot resolution graphs, surgery graphs of
//! `S^3_{-p/q}(K_1 # ... # K_ν)` and blow-ups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Arrow, PlumbingGraph};
use crate::lattice::{determinant, Lattice};

/// `p/q = k_0 - 1/(k_1 - 1/(... - 1/k_s))` with `k_0 ≥ 1`, `k_i ≥ 2`.
pub fn hj_continued_fraction(p: i64, q: i64) -> Result<Vec<i64>> {
    if p <= 0 || q <= 0 {
        return Err(Error::Input(format!("continued fraction needs positive p, q (got {p}/{q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Input(format!("gcd({p}, {q}) = {} is not 1", p.gcd(&q))));
    }
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    loop {
        let k = Integer::div_ceil(&p, &q);
        out.push(k);
        let r = k * q - p;
        if r == 0 {
            break;
        }
        (p, q) = (q, r);
    }
    Ok(out)
}

/// Evaluates `[k_0, ..., k_s]` exactly.
pub fn hj_evaluate(ks: &[i64]) -> BigRational {
    let mut iter = ks.iter().rev();
    let Some(&last) = iter.next() else { return BigRational::zero() };
    let mut x = BigRational::from_integer(BigInt::from(last));
    for &k in iter {
        x = BigRational::from_integer(BigInt::from(k)) - x.recip();
    }
    x
}

/// Numerators `n_0 = 1, n_1, ..., n_{s+1}` of the partial fractions
/// `[k_0, ..., k_{i-1}]`, satisfying `n_{i+1} = k_i n_i - n_{i-1}`.
pub fn hj_numerators(ks: &[i64]) -> Vec<i64> {
    let mut n = vec![1i64, ks[0]];
    for i in 1..ks.len() {
        let next = ks[i] * n[i] - n[i - 1];
        n.push(next);
    }
    n
}

/// Parameters `(a, b)` of a torus knot, `2 ≤ a < b`, coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KnotSpec {
    pub a: i64,
    pub b: i64,
}

impl KnotSpec {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if a < 2 || a == b {
            return Err(Error::Input(format!("torus knot ({a},{b}) needs 2 ≤ a < b")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::Input(format!("torus knot ({a},{b}) needs coprime parameters")));
        }
        Ok(Self { a, b })
    }

    /// Delta invariant `(a-1)(b-1)/2`.
    pub fn delta(&self) -> i64 {
        (self.a - 1) * (self.b - 1) / 2
    }
}

impl std::fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Parses `"(6,7)+(2,9)"` or `"6,7"` style knot lists.
pub fn parse_knots(s: &str) -> Result<Vec<KnotSpec>> {
    s.split('+')
        .map(|part| {
            let t = part.trim().trim_start_matches('(').trim_end_matches(')');
            let nums: Vec<&str> = t.split(',').map(str::trim).collect();
            if nums.len() != 2 {
                return Err(Error::Input(format!("cannot read knot '{part}'; expected a,b")));
            }
            let a = nums[0].parse().map_err(|_| Error::Input(format!("bad integer '{}'", nums[0])))?;
            let b = nums[1].parse().map_err(|_| Error::Input(format!("bad integer '{}'", nums[1])))?;
            KnotSpec::new(a, b)
        })
        .collect()
}

/// Embedded resolution graph of an irreducible plane curve germ `f`: one
/// arrow (the strict transform) and the multiplicities of `f` along every
/// exceptional curve.
#[derive(Clone, Debug)]
pub struct ResolutionGraph {
    graph: PlumbingGraph,
    arrow_vertex: usize,
}

impl ResolutionGraph {
    /// Validates a graph carrying one arrow of multiplicity 1 and a
    /// multiplicity system; fills the multiplicities in when absent.
    pub fn new(mut graph: PlumbingGraph) -> Result<Self> {
        if graph.arrows().len() != 1 || graph.arrows()[0].multiplicity != 1 {
            return Err(Error::Input("a resolution graph needs exactly one arrow of multiplicity 1".into()));
        }
        if !graph.is_connected() {
            return Err(Error::Structure("resolution graph is not connected".into()));
        }
        let arrow_vertex = graph.arrows()[0].vertex;
        let lat = Lattice::new(&graph)?;
        if !lat.det().is_one() {
            return Err(Error::Input(format!("resolution graph has determinant {} (expected 1)", lat.det())));
        }
        let solved: Vec<i64> = lat
            .dual(arrow_vertex)
            .integer_coords()
            .expect("unimodular lattice")
            .iter()
            .map(|c| c.to_i64().expect("multiplicity fits i64"))
            .collect();
        match graph.multiplicities() {
            Some(m) if m != solved.as_slice() => {
                return Err(Error::Input("multiplicities are not orthogonal to every vertex".into()));
            }
            Some(_) => {}
            None => graph.set_multiplicities(Some(solved))?,
        }
        Ok(Self { graph, arrow_vertex })
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn arrow_vertex(&self) -> usize {
        self.arrow_vertex
    }

    /// `(f) = Σ m_v E_v`.
    pub fn multiplicities(&self) -> &[i64] {
        self.graph.multiplicities().expect("validated")
    }

    pub fn arrow_multiplicity(&self) -> i64 {
        self.multiplicities()[self.arrow_vertex]
    }

    /// `(div f, E_v)` for every vertex; all zero for a valid graph.
    pub fn orthogonality_residuals(&self) -> Vec<i64> {
        let g = &self.graph;
        let m = self.multiplicities();
        (0..g.len())
            .map(|v| {
                let mut s = g.euler(v) * m[v] + g.neighbors(v).iter().map(|&w| m[w]).sum::<i64>();
                s += g.arrows().iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).sum::<i64>();
                s
            })
            .collect()
    }
}

/// The lattice vector `(f)` of a resolution graph.
pub fn divisor_of_f(g: &ResolutionGraph) -> Vec<i64> {
    g.multiplicities().to_vec()
}

/// Minimal embedded resolution graph of `x^a + y^b`: a `(-1)` node carrying
/// the arrow with two Hirzebruch–Jung legs of types `a/ω_a` and `b/ω_b`,
/// where `b ω_a + a ω_b = ab - 1`.
pub fn torus_knot_graph(spec: KnotSpec) -> ResolutionGraph {
    let KnotSpec { a, b } = spec;
    let wa = (-mod_inverse(b, a)).rem_euclid(a);
    let wb = (-mod_inverse(a, b)).rem_euclid(b);
    let mut eulers = vec![-1i64];
    let mut edges = Vec::new();
    for (n, w) in [(a, wa), (b, wb)] {
        let ks = hj_continued_fraction(n, w.max(1)).expect("coprime leg data");
        let mut prev = 0;
        for k in ks {
            eulers.push(-k);
            let idx = eulers.len() - 1;
            edges.push((prev, idx));
            prev = idx;
        }
    }
    let mut g = PlumbingGraph::new(&eulers, &edges).expect("tree");
    g.set_arrows(vec![Arrow { vertex: 0, multiplicity: 1 }]).expect("valid arrow");
    ResolutionGraph::new(g).expect("torus knot graph is unimodular")
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = num_integer::Integer::extended_gcd(&x.rem_euclid(m), &m);
    assert_eq!(e.gcd, 1, "not invertible");
    e.x.rem_euclid(m)
}

/// The surgery graph `G` of `S^3_{-p/q}(K_1 # ... # K_ν)` with its
/// distinguished vertices and blocks.
#[derive(Clone, Debug)]
pub struct SurgeryGraph {
    pub graph: PlumbingGraph,
    pub p: i64,
    pub q: i64,
    /// Central vertex `u`.
    pub u: usize,
    /// End of the chain `G_0` (equal to `u` when `q = 1`).
    pub u_prime: usize,
    /// `u_j` in each block.
    pub u_j: Vec<usize>,
    /// Vertex sets of `G_1, ..., G_ν` (in the order of the knots).
    pub blocks: Vec<Vec<usize>>,
    /// Vertex sequence `ū_1, ..., ū_s` of `G_0`, starting next to `u`.
    pub chain: Vec<usize>,
    /// The knots used to build the blocks.
    pub knots: Vec<ResolutionGraph>,
    /// The divisor `D` with `D/p = E_{u'}^*`, excluding its arrow of
    /// multiplicity `p` at `u'`.
    pub branch: Vec<i64>,
    /// `[k_0, ..., k_s]` of `p/q`.
    pub continued_fraction: Vec<i64>,
}

impl SurgeryGraph {
    /// The graph decorated with the branch divisor `D` (multiplicities and
    /// an arrow of multiplicity `p` at `u'`).
    pub fn branch_graph(&self) -> PlumbingGraph {
        let mut g = self.graph.clone();
        g.set_multiplicities(Some(self.branch.clone())).expect("sizes match");
        g.set_arrows(vec![Arrow { vertex: self.u_prime, multiplicity: self.p }]).expect("valid arrow");
        g
    }
}

pub fn surgery_graph(knots: &[ResolutionGraph], p: i64, q: i64) -> Result<SurgeryGraph> {
    if knots.is_empty() {
        return Err(Error::Input("at least one knot is required".into()));
    }
    let ks = hj_continued_fraction(p, q)?;
    let nums = hj_numerators(&ks);
    let mut graph = PlumbingGraph::empty();
    let mut branch = Vec::new();
    let mut u_j = Vec::new();
    let mut blocks = Vec::new();
    for knot in knots {
        let offset = graph.len();
        graph = graph.disjoint_union(&knot.graph().bare());
        blocks.push((offset..graph.len()).collect::<Vec<_>>());
        u_j.push(offset + knot.arrow_vertex());
        branch.extend_from_slice(knot.multiplicities());
    }
    let sum_m: i64 = knots.iter().map(|k| k.arrow_multiplicity()).sum();
    let u = graph.add_vertex(-ks[0] - sum_m);
    branch.push(1);
    for &x in &u_j {
        graph.add_edge(u, x)?;
    }
    let mut chain = Vec::new();
    let mut prev = u;
    for (i, &k) in ks.iter().enumerate().skip(1) {
        let v = graph.add_vertex(-k);
        graph.add_edge(prev, v)?;
        chain.push(v);
        branch.push(nums[i]);
        prev = v;
    }
    let graph = graph.relabeled();
    debug_assert_eq!(*nums.last().unwrap(), p);
    Ok(SurgeryGraph {
        graph,
        p,
        q,
        u,
        u_prime: prev,
        u_j,
        blocks,
        chain,
        knots: knots.to_vec(),
        branch,
        continued_fraction: ks,
    })
}

/// Surgery graph along a connected sum of torus knots.
pub fn torus_surgery_graph(knots: &[KnotSpec], p: i64, q: i64) -> Result<SurgeryGraph> {
    let graphs: Vec<ResolutionGraph> = knots.iter().map(|&k| torus_knot_graph(k)).collect();
    surgery_graph(&graphs, p, q)
}

/// Site of a blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowUpSite {
    Vertex(usize),
    Edge(usize, usize),
}

/// Blow-up of a vertex (new `(-1)` leaf, `e_v` decreased) or of an edge
/// (new `(-1)` vertex on the edge, both ends decreased). Arrows and
/// multiplicities are dropped.
pub fn blow_up(g: &PlumbingGraph, site: BlowUpSite) -> Result<PlumbingGraph> {
    let mut out = g.bare();
    match site {
        BlowUpSite::Vertex(v) => {
            if v >= g.len() {
                return Err(Error::Input(format!("no vertex with index {v}")));
            }
            out.set_euler(v, g.euler(v) - 1);
            let w = out.add_vertex(-1);
            out.add_edge(v, w)?;
        }
        BlowUpSite::Edge(a, b) => {
            if !g.neighbors(a).contains(&b) {
                return Err(Error::Input(format!("no edge between {a} and {b}")));
            }
            out = out.without_edge(a, b);
            out.set_euler(a, g.euler(a) - 1);
            out.set_euler(b, g.euler(b) - 1);
            let w = out.add_vertex(-1);
            out.add_edge(a, w)?;
            out.add_edge(w, b)?;
        }
    }
    Ok(out.relabeled())
}

/// Repeatedly blows down `(-1)` vertices of degree at most 2 that carry no
/// arrow, keeping at least one vertex. Multiplicities are dropped.
pub fn blow_down(g: &PlumbingGraph) -> PlumbingGraph {
    let mut cur = g.clone();
    cur.set_multiplicities(None).expect("clearing multiplicities");
    loop {
        let site = (0..cur.len())
            .find(|&v| cur.len() > 1 && cur.euler(v) == -1 && cur.degree(v) <= 2 && cur.arrow_count(v) == 0);
        let Some(v) = site else { return cur };
        let nbrs = cur.neighbors(v).to_vec();
        let map = |x: usize| if x > v { x - 1 } else { x };
        let mut vertices = cur.vertices().to_vec();
        for &w in &nbrs {
            vertices[w].euler += 1;
        }
        vertices.remove(v);
        let mut edges: Vec<(usize, usize)> =
            cur.edges().iter().filter(|&&(a, b)| a != v && b != v).map(|&(a, b)| (map(a), map(b))).collect();
        if let [a, b] = nbrs[..] {
            edges.push((map(a), map(b)));
        }
        let arrows =
            cur.arrows().iter().map(|a| Arrow { vertex: map(a.vertex), multiplicity: a.multiplicity }).collect();
        cur = PlumbingGraph::from_parts(vertices, edges, arrows, None).expect("blow-down keeps a tree");
    }
}

/// Whether `(d-1)(d-2) = 2 Σ δ_j`, the genus condition for a plane curve of
/// degree `d` with these singularities to be rational and cuspidal.
pub fn superisolated_compat(deltas: &[i64], d: i64) -> bool {
    (d - 1) * (d - 2) == 2 * deltas.iter().sum::<i64>()
}

/// `det(G)` as `i64`, for negative definite graphs.
pub fn det_i64(g: &PlumbingGraph) -> Result<i64> {
    determinant(g)?.to_i64().ok_or_else(|| Error::Unsupported("determinant too large".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fractions() {
        assert_eq!(hj_continued_fraction(5, 1).unwrap(), vec![5]);
        assert_eq!(hj_continued_fraction(7, 2).unwrap(), vec![4, 2]);
        assert_eq!(hj_continued_fraction(8, 5).unwrap(), vec![2, 3, 2]);
        assert!(hj_continued_fraction(6, 4).is_err());
        assert_eq!(hj_evaluate(&[2, 3, 2]), BigRational::new(BigInt::from(8), BigInt::from(5)));
        assert_eq!(hj_numerators(&[2, 3, 2]), vec![1, 2, 5, 8]);
    }

    #[test]
    fn trefoil_graph() {
        let g = torus_knot_graph(KnotSpec::new(2, 3).unwrap());
        assert_eq!(g.graph().len(), 3);
        let av = g.arrow_vertex();
        assert_eq!(g.graph().euler(av), -1);
        assert_eq!(g.arrow_multiplicity(), 6);
        let mut pairs: Vec<(i64, i64)> = (0..3).map(|v| (g.graph().euler(v), g.multiplicities()[v])).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(-3, 2), (-2, 3), (-1, 6)]);
        assert!(g.orthogonality_residuals().iter().all(|&r| r == 0));
    }

    #[test]
    fn torus_graphs_are_unimodular_with_product_multiplicity() {
        for (a, b) in [(2, 5), (2, 7), (3, 4), (3, 5), (6, 7), (2, 9), (4, 9)] {
            let g = torus_knot_graph(KnotSpec::new(a, b).unwrap());
            assert_eq!(g.arrow_multiplicity(), a * b);
            assert_eq!(det_i64(g.graph()).unwrap(), 1);
        }
    }

    #[test]
    fn surgery_determinant_is_p() {
        let trefoil = KnotSpec::new(2, 3).unwrap();
        for (p, q) in [(1, 1), (5, 1), (7, 2), (8, 5), (13, 4)] {
            let s = torus_surgery_graph(&[trefoil], p, q).unwrap();
            assert_eq!(det_i64(&s.graph).unwrap(), p);
            assert_eq!(s.chain.len() + 1, s.continued_fraction.len());
            if q == 1 {
                assert_eq!(s.u, s.u_prime);
            }
        }
    }

    #[test]
    fn branch_divisor_is_function_like() {
        let s = torus_surgery_graph(&[KnotSpec::new(2, 3).unwrap(), KnotSpec::new(2, 5).unwrap()], 8, 3).unwrap();
        let g = s.branch_graph();
        let m = g.multiplicities().unwrap();
        for v in 0..g.len() {
            let mut r = g.euler(v) * m[v] + g.neighbors(v).iter().map(|&w| m[w]).sum::<i64>();
            if v == s.u_prime {
                r += s.p;
            }
            assert_eq!(r, 0);
        }
    }

    #[test]
    fn blow_ups_keep_determinant() {
        let g = PlumbingGraph::chain(&[-1]);
        let b = blow_up(&g, BlowUpSite::Vertex(0)).unwrap();
        assert_eq!(b.vertices().iter().map(|v| v.euler).collect::<Vec<_>>(), vec![-2, -1]);
        assert_eq!(det_i64(&b).unwrap(), 1);
        let g = PlumbingGraph::chain(&[-2, -3]);
        let b = blow_up(&g, BlowUpSite::Edge(0, 1)).unwrap();
        assert_eq!(det_i64(&b).unwrap(), 5);
    }

    #[test]
    fn genus_condition() {
        assert!(superisolated_compat(&[15, 4, 2], 8));
        assert!(superisolated_compat(&[3], 4));
        assert!(!superisolated_compat(&[1], 4));
    }

    #[test]
    fn knot_lists() {
        let ks = parse_knots("(6,7)+(2,9)+(2,5)").unwrap();
        assert_eq!(ks.len(), 3);
        assert_eq!(ks[1], KnotSpec { a: 2, b: 9 });
        assert!(parse_knots("(2,4)").is_err());
    }
}
