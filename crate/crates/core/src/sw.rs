//! Equivariant series, Alexander polynomials, the cut-and-paste recursion
//! for the normalized Seiberg–Witten invariants `s_h`, the integral-surgery
//! shortcut and the covering additivity check.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::builders::{ResolutionGraph, SurgeryGraph};
use crate::error::{Error, Result};
use crate::graph::{Arrow, PlumbingGraph};
use crate::lattice::{DualVector, Lattice, Rational};
use crate::series::{GroupPoly, GroupSeries, Poly, RationalFunction};

/// `Π_w (1 - [E_w^*] t^{a_w})^{δ_w - 2}` at vertex `v`, where
/// `a_w = |H| · (E_v-coefficient of E_w^*)` and `δ_w` counts edges, plus the
/// arrows of `w` when `count_arrows` is set.
pub fn equivariant_series(lat: &Lattice, v: usize, count_arrows: bool) -> GroupSeries {
    let g = lat.graph();
    let mut s = GroupSeries::new(lat.homology().group().clone());
    for w in 0..g.len() {
        let mut delta = g.degree(w) as i64;
        if count_arrows {
            delta += g.arrow_count(w) as i64;
        }
        if delta == 2 {
            continue;
        }
        let a = lat.scaled_dual_coefficient(v, w).to_usize().expect("positive exponent");
        s.push_factor(lat.dual_class(w), a, delta - 2);
    }
    s
}

/// The series at `v` summed over all classes (group elements set to 1).
pub fn summed_series(lat: &Lattice, v: usize) -> RationalFunction {
    equivariant_series(lat, v, false).augmentation()
}

/// The class-`h` component of the series at `v`.
pub fn class_series(lat: &Lattice, v: usize, h: usize) -> Result<RationalFunction> {
    equivariant_series(lat, v, false).component(h)
}

/// Alexander polynomial of the knot given by an extra arrow at `marked`,
/// normalized by `Δ(1) = 1`: `Δ(t)/(1-t)` is the class-zero part of the
/// series at `marked`, with `t^{|H|}` renamed `t`.
pub fn alexander_polynomial(g: &PlumbingGraph, marked: usize) -> Result<Poly> {
    let mut marked_graph = g.bare();
    marked_graph.set_arrows(vec![Arrow { vertex: marked, multiplicity: 1 }])?;
    let lat = Lattice::new(&marked_graph)?;
    let series = equivariant_series(&lat, marked, true);
    let comp = series.component(0)?;
    let order = lat.order() as usize;
    let num = comp.num.compress_power(order)?;
    let den = comp
        .den
        .iter()
        .map(|&b| {
            if b % order == 0 {
                Ok(b / order)
            } else {
                Err(Error::Consistency("class-zero denominator exponent not divisible by |H|".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_poly = RationalFunction::new(num.mul_one_minus(1), den).as_polynomial()?;
    normalize_alexander(delta_poly)
}

fn normalize_alexander(p: Poly) -> Result<Poly> {
    let v = p.eval_at_one();
    if v.is_one() {
        Ok(p)
    } else if (-&v).is_one() {
        Ok(p.scale(&BigInt::from(-1)))
    } else {
        Err(Error::Consistency(format!("Alexander polynomial has Δ(1) = {v}")))
    }
}

/// Alexander polynomial of the knot of a resolution graph.
pub fn knot_alexander(r: &ResolutionGraph) -> Result<Poly> {
    alexander_polynomial(r.graph(), r.arrow_vertex())
}

/// `(1 - t^{ab})(1 - t) / ((1 - t^a)(1 - t^b))`.
pub fn torus_alexander(a: usize, b: usize) -> Poly {
    RationalFunction::new(Poly::one().mul_one_minus(a * b).mul_one_minus(1), vec![a, b])
        .as_polynomial()
        .expect("torus knot Alexander polynomial is a polynomial")
}

/// `δ = Δ'(1)`.
pub fn delta_invariant(alexander: &Poly) -> BigInt {
    alexander.derivative_at_one()
}

/// Choice of the cut vertex at the top level of the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VertexChoice {
    /// Maximal degree, smallest index among ties.
    #[default]
    MaxDegree,
    At(usize),
}

fn default_vertex(g: &PlumbingGraph) -> usize {
    (0..g.len()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty graph")
}

type Rationalized = Rc<(GroupPoly, Vec<usize>)>;

/// Memoizing evaluator of the cut-and-paste recursion.
#[derive(Default)]
pub struct SwEngine {
    lattices: HashMap<String, Rc<Lattice>>,
    series: HashMap<(String, usize), Rationalized>,
    values: HashMap<(String, usize), BigInt>,
}

fn graph_key(g: &PlumbingGraph) -> String {
    let eulers: Vec<i64> = g.vertices().iter().map(|v| v.euler).collect();
    format!("{eulers:?}{:?}", g.edges())
}

impl SwEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lattice(&mut self, g: &PlumbingGraph) -> Result<Rc<Lattice>> {
        let key = graph_key(g);
        if let Some(l) = self.lattices.get(&key) {
            return Ok(l.clone());
        }
        let l = Rc::new(Lattice::new(&g.bare())?);
        self.lattices.insert(key, l.clone());
        Ok(l)
    }

    fn rationalized(&mut self, lat: &Lattice, v: usize) -> Result<Rationalized> {
        let key = (graph_key(lat.graph()), v);
        if let Some(r) = self.series.get(&key) {
            return Ok(r.clone());
        }
        let r = Rc::new(equivariant_series(lat, v, false).rationalize()?);
        self.series.insert(key, r.clone());
        Ok(r)
    }

    /// `H^{pol}_{v,h}(1)`.
    pub fn polynomial_part_at_one(&mut self, lat: &Lattice, v: usize, h: usize) -> Result<BigInt> {
        let r = self.rationalized(lat, v)?;
        Ok(RationalFunction::new(r.0.component(h), r.1.clone()).polynomial_part().eval_at_one())
    }

    /// `s_h` of a connected graph, `h` indexing the group of its lattice.
    pub fn s_class(&mut self, g: &PlumbingGraph, h: usize) -> Result<BigInt> {
        self.s_class_with(g, h, VertexChoice::MaxDegree)
    }

    pub fn s_class_with(&mut self, g: &PlumbingGraph, h: usize, choice: VertexChoice) -> Result<BigInt> {
        if !g.is_tree() {
            return Err(Error::Structure("s_h is computed on connected trees; split forests first".into()));
        }
        let lat = self.lattice(g)?;
        if h >= lat.order() as usize {
            return Err(Error::Input(format!("class {h} out of range for a group of order {}", lat.order())));
        }
        let key = (graph_key(g), h);
        if choice == VertexChoice::MaxDegree {
            if let Some(v) = self.values.get(&key) {
                return Ok(v.clone());
            }
        }
        let value = if g.is_chain() {
            BigInt::zero()
        } else {
            let v = match choice {
                VertexChoice::MaxDegree => default_vertex(g),
                VertexChoice::At(v) => v,
            };
            let rep = lat.minimal_representative(h);
            let mut total = self.polynomial_part_at_one(&lat, v, h)?;
            for (sub, map) in g.delete_vertices(&[v]) {
                let sub_lat = self.lattice(&sub)?;
                let x = lat.restrict(&rep, &sub_lat, &map)?;
                total += self.s_connected(&sub, &x)?;
            }
            total
        };
        if choice == VertexChoice::MaxDegree {
            self.values.insert(key, value.clone());
        }
        Ok(value)
    }

    /// `s_{l'}` of a connected graph via `s_{l'} = s_{[l']} + χ(l') - χ(r_{[l']})`.
    fn s_connected(&mut self, g: &PlumbingGraph, x: &DualVector) -> Result<BigInt> {
        let lat = self.lattice(g)?;
        let h = lat.class_of(x)?;
        let base = self.s_class(g, h)?;
        let shift = lat.chi(x) - lat.chi(&lat.minimal_representative(h));
        Ok(base + integral(&shift)?)
    }

    /// `s_{l'}` of a forest, summed over components.
    pub fn s_invariant(&mut self, g: &PlumbingGraph, x: &DualVector) -> Result<BigInt> {
        if g.is_empty() {
            return Ok(BigInt::zero());
        }
        if g.is_connected() {
            return self.s_connected(g, x);
        }
        let lat = Lattice::new(&g.bare())?;
        let mut total = BigInt::zero();
        for comp in g.components() {
            let (sub, map) = g.induced(&comp)?;
            let sub_lat = self.lattice(&sub)?;
            let y = lat.restrict(x, &sub_lat, &map)?;
            total += self.s_connected(&sub, &y)?;
        }
        Ok(total)
    }
}

fn integral(x: &Rational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Consistency(format!("expected an integer, got {x}")))
    }
}

/// `s_{l'}(G)` for a negative definite forest.
pub fn s_invariant(g: &PlumbingGraph, x: &DualVector) -> Result<BigInt> {
    SwEngine::new().s_invariant(g, x)
}

/// One row of an [`SwReport`].
#[derive(Clone, Debug)]
pub struct SwRow {
    /// Group element index.
    pub class: usize,
    /// Residues with respect to the invariant factors.
    pub residues: Vec<u64>,
    pub representative: DualVector,
    pub i: Rational,
    pub s: BigInt,
    pub sw: Rational,
}

#[derive(Clone, Debug)]
pub struct SwReport {
    pub factors: Vec<u64>,
    pub rows: Vec<SwRow>,
    pub total: BigInt,
}

impl SwReport {
    pub fn s(&self, class: usize) -> &BigInt {
        &self.rows[class].s
    }
}

/// `(r_h, i_h, s_h, sw_h = s_h + i_h)` for every class of a connected graph.
pub fn sw_table(g: &PlumbingGraph) -> Result<SwReport> {
    sw_table_with(&mut SwEngine::new(), g, None)
}

/// As [`sw_table`], optionally restricted to one class.
pub fn sw_table_with(engine: &mut SwEngine, g: &PlumbingGraph, only: Option<usize>) -> Result<SwReport> {
    let lat = engine.lattice(g)?;
    let group = lat.homology().group().clone();
    let classes: Vec<usize> = match only {
        Some(h) if h < group.order() as usize => vec![h],
        Some(h) => return Err(Error::Input(format!("class {h} out of range for a group of order {}", group.order()))),
        None => (0..group.order() as usize).collect(),
    };
    let mut rows = Vec::new();
    let mut total = BigInt::zero();
    for h in classes {
        let r = lat.minimal_representative(h);
        let i = lat.i_invariant(&r);
        let s = engine.s_class(g, h)?;
        total += &s;
        let sw = Rational::from_integer(s.clone()) + &i;
        rows.push(SwRow { class: h, residues: group.element(h), representative: r, i, s, sw });
    }
    Ok(SwReport { factors: group.factors().to_vec(), rows, total })
}

/// Group element of `h · E_{u'}^*` for `h = 0..p` on a surgery graph.
pub fn surgery_classes(sg: &SurgeryGraph, lat: &Lattice) -> Vec<usize> {
    let g = lat.homology().group();
    let gen = lat.dual_class(sg.u_prime);
    let mut out = Vec::with_capacity(sg.p as usize);
    let mut x = 0;
    for _ in 0..sg.p {
        out.push(x);
        x = g.add(x, gen);
    }
    out
}

/// `s_h` of a surgery graph indexed by `h` meaning `[h E_{u'}^*]`.
pub fn surgery_s_values(engine: &mut SwEngine, sg: &SurgeryGraph) -> Result<Vec<BigInt>> {
    let lat = engine.lattice(&sg.graph)?;
    surgery_classes(sg, &lat).into_iter().map(|c| engine.s_class(&sg.graph, c)).collect()
}

/// The integral-surgery data `Δ = 1 + δ(t-1) + (t-1)^2 Q`.
#[derive(Clone, Debug)]
pub struct IntegralSurgeryTable {
    pub d: i64,
    pub alexander: Poly,
    pub delta: BigInt,
    pub q_poly: Poly,
    pub q_at_one: BigInt,
    /// `s_{s_h}` from the coefficients of `Q`.
    pub s_shifted: Vec<BigInt>,
    /// `c_h = χ(r_h) - χ(s_h)`.
    pub c_chi: Vec<BigInt>,
    /// `c_h = Σ_j χ_j(-⌊h (f_j)/d⌋)`.
    pub c_floor: Vec<BigInt>,
    /// `s_h = s_{s_h} + c_h`.
    pub s: Vec<BigInt>,
    pub c_total: BigInt,
    pub total: BigInt,
}

pub fn integral_surgery_table(sg: &SurgeryGraph) -> Result<IntegralSurgeryTable> {
    if sg.q != 1 {
        return Err(Error::Input("the integral-surgery shortcut needs q = 1".into()));
    }
    let d = sg.p;
    let mut alexander = Poly::one();
    for k in &sg.knots {
        alexander = alexander.mul(&knot_alexander(k)?);
    }
    let delta = delta_invariant(&alexander);
    let linear = Poly::from_big(vec![BigInt::one() - &delta, delta.clone()]);
    let q_poly = alexander.sub(&linear).div_exact_one_minus(1)?.div_exact_one_minus(1)?;
    let q_at_one = q_poly.eval_at_one();
    let mut s_shifted = vec![BigInt::zero(); d as usize];
    for (n, c) in q_poly.coeffs().iter().enumerate() {
        s_shifted[n % d as usize] += c;
    }
    let lat = Lattice::new(&sg.graph)?;
    let knot_lattices: Vec<Lattice> =
        sg.knots.iter().map(|k| Lattice::new(&k.graph().bare())).collect::<Result<_>>()?;
    let mut c_chi = Vec::new();
    let mut c_floor = Vec::new();
    for h in 0..d {
        let s_h = lat.dual(sg.u).scale_int(h);
        let r_h = s_h.fractional();
        c_chi.push(integral(&(lat.chi(&r_h) - lat.chi(&s_h)))?);
        let mut c = Rational::zero();
        for (k, kl) in sg.knots.iter().zip(&knot_lattices) {
            c += kl.chi(&floor_divisor(k.multiplicities(), h, d));
        }
        c_floor.push(integral(&c)?);
    }
    let s: Vec<BigInt> = s_shifted.iter().zip(&c_chi).map(|(a, b)| a + b).collect();
    let c_total: BigInt = c_chi.iter().sum();
    let total = &q_at_one + &c_total;
    Ok(IntegralSurgeryTable { d, alexander, delta, q_poly, q_at_one, s_shifted, c_chi, c_floor, s, c_total, total })
}

/// `-⌊h (f)/p⌋` as a lattice vector.
fn floor_divisor(m: &[i64], h: i64, p: i64) -> DualVector {
    let coords: Vec<i64> = m.iter().map(|&x| -(h * x).div_euclid(p)).collect();
    DualVector::from_integers(&coords)
}

/// `Σ_{h<p} χ(-⌊h (f)/p⌋)` on the resolution graph of `f`.
pub fn suspension_pg(f: &ResolutionGraph, p: i64) -> Result<BigInt> {
    let lat = Lattice::new(&f.graph().bare())?;
    let mut total = Rational::zero();
    for h in 0..p {
        total += lat.chi(&floor_divisor(f.multiplicities(), h, p));
    }
    integral(&total)
}

/// Outcome of the covering additivity check.
#[derive(Clone, Debug)]
pub struct CapReport {
    /// `s_0` of the universal abelian cover.
    pub cover_s0: BigInt,
    /// `s_h` of the base for every class.
    pub base_values: Vec<BigInt>,
    pub base_total: BigInt,
    pub holds: bool,
    pub cover: PlumbingGraph,
}

/// Compares `s_0(Γ)` with `Σ_h s_h(G)`.
pub fn cap_check(engine: &mut SwEngine, base: &PlumbingGraph, cover: &PlumbingGraph) -> Result<CapReport> {
    let base_report = sw_table_with(engine, base, None)?;
    let base_values: Vec<BigInt> = base_report.rows.iter().map(|r| r.s.clone()).collect();
    let cover_s0 = engine.s_class(cover, 0)?;
    let holds = cover_s0 == base_report.total;
    Ok(CapReport { cover_s0, base_values, base_total: base_report.total, holds, cover: cover.clone() })
}
