//! Cyclic branched covers of plumbed 4-manifolds, suspension graphs and
//! universal abelian cover graphs.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::builders::{hj_continued_fraction, ResolutionGraph, SurgeryGraph};
use crate::error::{Error, Result};
use crate::graph::{Arrow, PlumbingGraph, Vertex};
use crate::lattice::Lattice;

/// A base graph with a function-like divisor `Σ m_v E_v + arrows` and the
/// degree of the cover.
#[derive(Clone, Debug)]
pub struct BranchData {
    pub graph: PlumbingGraph,
    pub multiplicities: Vec<i64>,
    pub arrows: Vec<Arrow>,
    pub degree: i64,
}

impl BranchData {
    /// Uses the multiplicities and arrows stored on the graph.
    pub fn from_graph(graph: &PlumbingGraph, degree: i64) -> Result<Self> {
        let m = graph
            .multiplicities()
            .ok_or_else(|| Error::Input("branch data needs a multiplicity system".into()))?
            .to_vec();
        Ok(Self { graph: graph.bare(), multiplicities: m, arrows: graph.arrows().to_vec(), degree })
    }

    /// `(D, E_v)` for every vertex.
    pub fn residuals(&self) -> Vec<i64> {
        let g = &self.graph;
        let m = &self.multiplicities;
        (0..g.len())
            .map(|v| {
                g.euler(v) * m[v]
                    + g.neighbors(v).iter().map(|&w| m[w]).sum::<i64>()
                    + self.arrows.iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).sum::<i64>()
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Input("covering degree must be positive".into()));
        }
        if self.multiplicities.len() != self.graph.len() {
            return Err(Error::Input("multiplicity system has the wrong length".into()));
        }
        if self.multiplicities.iter().any(|&m| m <= 0) || self.arrows.iter().any(|a| a.multiplicity <= 0) {
            return Err(Error::Input("branch multiplicities must be positive".into()));
        }
        if self.arrows.iter().any(|a| a.vertex >= self.graph.len()) {
            return Err(Error::Input("arrow on a missing vertex".into()));
        }
        if let Some(v) = self.residuals().iter().position(|&r| r != 0) {
            return Err(Error::Input(format!(
                "branch divisor is not the divisor of a function: (D, E_v) ≠ 0 at vertex {}",
                self.graph.id(v)
            )));
        }
        Ok(())
    }
}

/// A lifted arrow of the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftedArrow {
    /// Index of the base arrow.
    pub base: usize,
    pub vertex: usize,
    pub multiplicity: i64,
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    /// The cover graph (no arrows); multiplicities of `div(z)` attached.
    pub graph: PlumbingGraph,
    /// `fibers[v]`: cover vertices over base vertex `v`.
    pub fibers: Vec<Vec<usize>>,
    /// Multiplicities of `div(z)` on the cover vertices.
    pub multiplicities: Vec<i64>,
    pub arrows: Vec<LiftedArrow>,
}

impl CoverResult {
    /// `(div z, F_v)` for every cover vertex; all zero by construction.
    pub fn residuals(&self) -> Vec<i64> {
        let g = &self.graph;
        let m = &self.multiplicities;
        (0..g.len())
            .map(|v| {
                g.euler(v) * m[v]
                    + g.neighbors(v).iter().map(|&w| m[w]).sum::<i64>()
                    + self.arrows.iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).sum::<i64>()
            })
            .collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// The Hirzebruch–Jung string resolving a point of `z^n = x^a y^b`, listed
/// from the `x = 0` side, as `(Euler number, multiplicity of z)`.
pub fn edge_string(n: i64, a: i64, b: i64) -> Result<Vec<(i64, i64)>> {
    let c = gcd(gcd(n, a), b);
    let (n, a, b) = (n / c, a / c, b / c);
    let ga = gcd(a, n);
    let gb = gcd(b, n);
    let u1 = (n / ga, 0i64);
    let beta0 = ga / gcd(ga, b);
    // a·α ≡ -b·β0 (mod n), solvable since ga | b·β0.
    let modulus = n / ga;
    let rhs = (-b * beta0 / ga).rem_euclid(modulus.max(1));
    let inv = if modulus == 1 { 0 } else { mod_inverse(a / ga, modulus) };
    let c0 = (rhs * inv).rem_euclid(modulus.max(1));
    let f = (c0, beta0);
    let u2_beta = n / gb;
    if u2_beta % beta0 != 0 {
        return Err(Error::Consistency("edge lattice basis is inconsistent".into()));
    }
    let y = u2_beta / beta0;
    if (c0 * y) % u1.0 != 0 {
        return Err(Error::Consistency("edge lattice basis is inconsistent".into()));
    }
    let x = -c0 * y / u1.0;
    let lambda = y;
    if lambda == 1 {
        return Ok(Vec::new());
    }
    let lambda_p = (-x).rem_euclid(lambda);
    let k = (-lambda_p - x) / y;
    let ks = hj_continued_fraction(lambda, lambda_p)?;
    let val = |r: (i64, i64)| -> Result<i64> {
        let s = a * r.0 + b * r.1;
        if s % n != 0 || s <= 0 {
            return Err(Error::Consistency("non-integral multiplicity on a string".into()));
        }
        Ok(s / n)
    };
    let mut prev = u1;
    let mut cur = (f.0 - k * u1.0, f.1 - k * u1.1);
    let mut out = Vec::with_capacity(ks.len());
    for &bi in &ks {
        out.push((-bi, val(cur)?));
        let next = (bi * cur.0 - prev.0, bi * cur.1 - prev.1);
        prev = cur;
        cur = next;
    }
    if cur != (0, u2_beta) {
        return Err(Error::Consistency("string does not end at the second ray".into()));
    }
    Ok(out)
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    let e = x.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// The `n`-fold cyclic cover branched along the divisor.
pub fn cyclic_cover(data: &BranchData) -> Result<CoverResult> {
    data.validate()?;
    let g = &data.graph;
    let n = data.degree;
    let m = &data.multiplicities;
    let mut eulers: Vec<Option<i64>> = Vec::new();
    let mut mults: Vec<i64> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::with_capacity(g.len());
    let mut arrows = Vec::new();

    for x in 0..g.len() {
        let arrow_mults: Vec<i64> = data.arrows.iter().filter(|a| a.vertex == x).map(|a| a.multiplicity).collect();
        let nbr_mults: Vec<i64> = g.neighbors(x).iter().map(|&w| m[w]).chain(arrow_mults.iter().copied()).collect();
        let gx = gcd(n, m[x]);
        let nx = nbr_mults.iter().fold(gx, |acc, &y| gcd(acc, y));
        let delta = nbr_mults.len() as i64;
        let euler_char = gx * (2 - delta) + nbr_mults.iter().map(|&y| gcd(gx, y)).sum::<i64>();
        if euler_char % nx != 0 || euler_char / nx != 2 {
            let genus = (2 - euler_char / nx) / 2;
            return Err(Error::NotRationalHomologySphere(format!(
                "the cover has curves of genus {genus} over vertex {}",
                g.id(x)
            )));
        }
        let fiber: Vec<usize> = (0..nx as usize).map(|i| eulers.len() + i).collect();
        for _ in 0..nx {
            eulers.push(None);
            mults.push(m[x] / gx);
        }
        fibers.push(fiber);
    }

    let add_string = |start: usize,
                      string: &[(i64, i64)],
                      eulers: &mut Vec<Option<i64>>,
                      mults: &mut Vec<i64>,
                      edges: &mut Vec<(usize, usize)>| {
        let mut prev = start;
        for &(e, mu) in string {
            let v = eulers.len();
            eulers.push(Some(e));
            mults.push(mu);
            edges.push((prev, v));
            prev = v;
        }
        prev
    };

    for &(x, y) in g.edges() {
        let c = gcd(gcd(n, m[x]), m[y]);
        let string = edge_string(n, m[x], m[y])?;
        for j in 0..c as usize {
            let from = fibers[x][j % fibers[x].len()];
            let to = fibers[y][j % fibers[y].len()];
            let end = add_string(from, &string, &mut eulers, &mut mults, &mut edges);
            edges.push((end, to));
        }
    }
    for (ai, a) in data.arrows.iter().enumerate() {
        let x = a.vertex;
        let c = gcd(gcd(n, m[x]), a.multiplicity);
        let string = edge_string(n, m[x], a.multiplicity)?;
        let lifted = a.multiplicity / gcd(n, a.multiplicity);
        for j in 0..c as usize {
            let from = fibers[x][j % fibers[x].len()];
            let end = add_string(from, &string, &mut eulers, &mut mults, &mut edges);
            arrows.push(LiftedArrow { base: ai, vertex: end, multiplicity: lifted });
        }
    }

    let count = eulers.len();
    let mut adjacency = vec![Vec::new(); count];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut solved = Vec::with_capacity(count);
    for v in 0..count {
        match eulers[v] {
            Some(e) => solved.push(e),
            None => {
                let s: i64 = adjacency[v].iter().map(|&w| mults[w]).sum::<i64>()
                    + arrows.iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).sum::<i64>();
                if s % mults[v] != 0 {
                    return Err(Error::Consistency(
                        "lifted divisor does not determine an integral Euler number".into(),
                    ));
                }
                solved.push(-s / mults[v]);
            }
        }
    }
    let vertices: Vec<Vertex> = solved.iter().enumerate().map(|(i, &e)| Vertex { id: i as u32, euler: e }).collect();
    let graph = PlumbingGraph::from_parts(vertices, edges, Vec::new(), Some(mults.clone()))
        .map_err(|_| Error::NotRationalHomologySphere("the cover graph contains cycles".into()))?;
    if !graph.is_connected() {
        return Err(Error::Input("the cover is disconnected; the branch divisor is divisible".into()));
    }
    let result = CoverResult { graph, fibers, multiplicities: mults, arrows };
    debug_assert!(result.residuals().iter().all(|&r| r == 0));
    Ok(result)
}

/// Plumbing graph of `f(x,y) + z^p = 0` with the vertex `w_j` carrying the
/// strict transform of `{z = 0}`.
#[derive(Clone, Debug)]
pub struct SuspensionGraph {
    pub graph: PlumbingGraph,
    pub w: usize,
    /// Multiplicities of `div(z)`.
    pub divisor: Vec<i64>,
}

impl SuspensionGraph {
    /// Multiplicity of `div(z)` at `w_j`.
    pub fn n_w(&self) -> i64 {
        self.divisor[self.w]
    }
}

pub fn suspension_graph(f: &ResolutionGraph, p: i64) -> Result<SuspensionGraph> {
    let data = BranchData {
        graph: f.graph().bare(),
        multiplicities: f.multiplicities().to_vec(),
        arrows: vec![Arrow { vertex: f.arrow_vertex(), multiplicity: 1 }],
        degree: p,
    };
    let cover = cyclic_cover(&data)?;
    if cover.arrows.len() != 1 {
        return Err(Error::Consistency("the strict transform of f lifted to several components".into()));
    }
    let w = cover.arrows[0].vertex;
    let divisor = cover.multiplicities.clone();
    let mut graph = cover.graph;
    graph.set_multiplicities(None)?;
    Ok(SuspensionGraph { graph, w, divisor })
}

/// A generator class of a cyclic `H` as `l' = E_v^*`, or a sum of two
/// anti-duals when no single vertex generates.
fn generator_coefficients(lat: &Lattice) -> Result<Vec<i64>> {
    let group = lat.homology().group();
    if !group.is_cyclic() {
        return Err(Error::Unsupported(format!(
            "universal abelian covers are built only for cyclic H_1 (invariant factors {:?})",
            group.factors()
        )));
    }
    let order = group.order();
    let n = lat.len();
    for v in 0..n {
        if group.order_of(lat.dual_class(v)) == order {
            let mut a = vec![0; n];
            a[v] = 1;
            return Ok(a);
        }
    }
    for v in 0..n {
        for w in v + 1..n {
            if group.order_of(group.add(lat.dual_class(v), lat.dual_class(w))) == order {
                let mut a = vec![0; n];
                a[v] = 1;
                a[w] = 1;
                return Ok(a);
            }
        }
    }
    Err(Error::Unsupported("no generator of H found among sums of at most two anti-duals".into()))
}

/// The universal abelian cover graph of a graph with cyclic `H`, as the
/// `|H|`-fold cover branched along `|H| l'` for a generator `[l']` (with
/// arrows of multiplicity divisible by `|H|`, hence no branching there).
pub fn uac_graph(g: &PlumbingGraph) -> Result<CoverResult> {
    let base = g.bare();
    let lat = Lattice::new(&base)?;
    let order = lat.order() as i64;
    if order == 1 {
        let mut graph = base.clone();
        graph.set_multiplicities(None)?;
        return Ok(CoverResult {
            fibers: (0..base.len()).map(|v| vec![v]).collect(),
            multiplicities: vec![0; base.len()],
            arrows: Vec::new(),
            graph,
        });
    }
    let coeffs = generator_coefficients(&lat)?;
    let mut l = crate::lattice::DualVector::zero(base.len());
    for (v, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            l = &l + &lat.dual(v).scale_int(c);
        }
    }
    let d = l.scale_int(order);
    let mults: Vec<i64> = d
        .integer_coords()
        .ok_or_else(|| Error::Consistency("|H| l' is not integral".into()))?
        .iter()
        .map(|x| x.to_i64().expect("multiplicity fits i64"))
        .collect();
    let arrows: Vec<Arrow> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(v, &c)| Arrow { vertex: v, multiplicity: order * c })
        .collect();
    let data = BranchData { graph: base, multiplicities: mults, arrows, degree: order };
    let cover = cyclic_cover(&data)?;
    let det = Lattice::new(&cover.graph.bare())
        .map_err(|_| Error::NotRationalHomologySphere("the cover has a degenerate intersection form".into()))?;
    drop(det);
    Ok(cover)
}

/// The UAC graph `Γ` of a surgery manifold assembled from suspension blocks.
#[derive(Clone, Debug)]
pub struct UacSurgery {
    pub graph: PlumbingGraph,
    pub w: usize,
    pub w_prime: usize,
    pub w_j: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub chain: Vec<usize>,
    pub suspensions: Vec<SuspensionGraph>,
}

pub fn uac_surgery(sg: &SurgeryGraph) -> Result<UacSurgery> {
    let mut graph = PlumbingGraph::empty();
    let mut blocks = Vec::new();
    let mut w_j = Vec::new();
    let mut suspensions = Vec::new();
    for knot in &sg.knots {
        let s = suspension_graph(knot, sg.p)?;
        let offset = graph.len();
        graph = graph.disjoint_union(&s.graph);
        blocks.push((offset..graph.len()).collect::<Vec<_>>());
        w_j.push(offset + s.w);
        suspensions.push(s);
    }
    let e_w = -1 - suspensions.iter().map(SuspensionGraph::n_w).sum::<i64>();
    let w = graph.add_vertex(e_w);
    for &x in &w_j {
        graph.add_edge(w, x)?;
    }
    let mut chain = Vec::new();
    let mut prev = w;
    for _ in 1..sg.q {
        let v = graph.add_vertex(-2);
        graph.add_edge(prev, v)?;
        chain.push(v);
        prev = v;
    }
    Ok(UacSurgery { graph: graph.relabeled(), w, w_prime: prev, w_j, blocks, chain, suspensions })
}
