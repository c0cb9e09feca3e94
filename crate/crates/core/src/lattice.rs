//! Exact linear algebra over the plumbing lattice `L = Z<E_v>` and its dual.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::homology::HomologyStructure;

pub type Rational = BigRational;

/// Intersection matrix: Euler numbers on the diagonal, 1 on edges.
pub fn intersection_form(g: &PlumbingGraph) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for v in 0..n {
        m[v][v] = g.euler(v);
    }
    for &(a, b) in g.edges() {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// Leading principal minors of `-I` by fraction-free elimination, stopping
/// at the first vanishing one.
fn leading_minors_of_negated(form: &[Vec<i64>]) -> Vec<BigInt> {
    let n = form.len();
    let mut a: Vec<Vec<BigInt>> = form.iter().map(|r| r.iter().map(|&x| BigInt::from(-x)).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// `det(-I)`, with every leading minor checked for positivity. Returns
/// `None` when the form is not negative definite.
fn definite_determinant(form: &[Vec<i64>]) -> Option<BigInt> {
    let minors = leading_minors_of_negated(form);
    if minors.len() < form.len() || minors.iter().any(|m| !m.is_positive()) {
        return None;
    }
    Some(minors.last().cloned().unwrap_or_else(BigInt::one))
}

pub fn is_negative_definite(g: &PlumbingGraph) -> bool {
    definite_determinant(&intersection_form(g)).is_some()
}

/// `det(G) = det(-I)` for a negative definite graph (1 for the empty graph).
pub fn determinant(g: &PlumbingGraph) -> Result<BigInt> {
    definite_determinant(&intersection_form(g)).ok_or(Error::NotNegativeDefinite)
}

/// `det(-I)` for an arbitrary forest, without the definiteness requirement.
pub fn signed_determinant(g: &PlumbingGraph) -> BigInt {
    let form = intersection_form(g);
    let n = form.len();
    let mut a: Vec<Vec<Rational>> =
        form.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(-x))).collect()).collect();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det.to_integer()
}

/// An element of `L ⊗ Q` in the `E`-basis; elements of `L'` are the ones
/// pairing integrally with every `E_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualVector {
    pub coords: Vec<Rational>,
}

impl DualVector {
    pub fn zero(n: usize) -> Self {
        Self { coords: vec![Rational::zero(); n] }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect() }
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        Self { coords: coords.iter().map(|c| Rational::from_integer(c.clone())).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Coordinatewise integer part.
    pub fn floor(&self) -> Vec<BigInt> {
        self.coords.iter().map(|c| c.floor().to_integer()).collect()
    }

    /// Coordinatewise fractional part.
    pub fn fractional(&self) -> Self {
        Self { coords: self.coords.iter().map(|c| c - c.floor()).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Integer coordinates if integral.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }
}

impl Add for &DualVector {
    type Output = DualVector;
    fn add(self, rhs: &DualVector) -> DualVector {
        DualVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DualVector {
    type Output = DualVector;
    fn sub(self, rhs: &DualVector) -> DualVector {
        DualVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &DualVector {
    type Output = DualVector;
    fn neg(self) -> DualVector {
        DualVector { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Mul<i64> for &DualVector {
    type Output = DualVector;
    fn mul(self, k: i64) -> DualVector {
        self.scale_int(k)
    }
}

/// A negative definite plumbing graph with its intersection form, anti-dual
/// basis, canonical class and discriminant group precomputed.
#[derive(Clone, Debug)]
pub struct Lattice {
    graph: PlumbingGraph,
    form: Vec<Vec<i64>>,
    det: BigInt,
    /// `duals[v]` is `E_v^*` in the `E`-basis (the columns of `-I^{-1}`).
    duals: Vec<DualVector>,
    canonical: DualVector,
    homology: HomologyStructure,
    dual_classes: Vec<usize>,
}

impl Lattice {
    pub fn new(graph: &PlumbingGraph) -> Result<Self> {
        let form = intersection_form(graph);
        let det = definite_determinant(&form).ok_or(Error::NotNegativeDefinite)?;
        let n = graph.len();
        let inverse = negated_inverse(&form);
        let duals: Vec<DualVector> =
            (0..n).map(|v| DualVector { coords: (0..n).map(|w| inverse[w][v].clone()).collect() }).collect();
        // k = Σ_v (k, E_v) · (-E_v^*) with (k, E_v) = -e_v - 2.
        let mut canonical = DualVector::zero(n);
        for v in 0..n {
            let c = graph.euler(v) + 2;
            canonical = &canonical + &duals[v].scale_int(c);
        }
        let homology = HomologyStructure::from_form(&form);
        let dual_classes = (0..n)
            .map(|v| {
                let mut e = vec![BigInt::zero(); n];
                e[v] = BigInt::one();
                homology.class_of_dual_coords(&e)
            })
            .collect();
        Ok(Self { graph: graph.clone(), form, det, duals, canonical, homology, dual_classes })
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn order(&self) -> u64 {
        self.homology.order()
    }

    pub fn homology(&self) -> &HomologyStructure {
        &self.homology
    }

    /// The anti-dual `E_v^*`: `(E_w, E_v^*) = -δ_{vw}`.
    pub fn dual(&self, v: usize) -> &DualVector {
        &self.duals[v]
    }

    /// `-(E_a^*, E_b^*)`, the `E_a`-coefficient of `E_b^*`.
    pub fn dual_coefficient(&self, a: usize, b: usize) -> &Rational {
        &self.duals[b].coords[a]
    }

    /// Canonical class `k_G`.
    pub fn canonical(&self) -> &DualVector {
        &self.canonical
    }

    pub fn pair(&self, x: &DualVector, y: &DualVector) -> Rational {
        let n = self.len();
        let mut s = Rational::zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                let f = self.form[i][j];
                if f != 0 {
                    row += &y.coords[j] * Rational::from_integer(BigInt::from(f));
                }
            }
            s += &x.coords[i] * row;
        }
        s
    }

    /// `(x, E_v)`.
    pub fn pair_basis(&self, x: &DualVector, v: usize) -> Rational {
        let mut s = Rational::zero();
        for (j, c) in x.coords.iter().enumerate() {
            let f = self.form[v][j];
            if f != 0 {
                s += c * Rational::from_integer(BigInt::from(f));
            }
        }
        s
    }

    pub fn is_dual_element(&self, x: &DualVector) -> bool {
        (0..self.len()).all(|v| self.pair_basis(x, v).is_integer())
    }

    /// Coordinates `c_v = -(x, E_v)` in the `E^*`-basis.
    pub fn to_dual_coords(&self, x: &DualVector) -> Result<Vec<BigInt>> {
        (0..self.len())
            .map(|v| {
                let p = self.pair_basis(x, v);
                if p.is_integer() {
                    Ok(-p.to_integer())
                } else {
                    Err(Error::Input("vector is not in the dual lattice".into()))
                }
            })
            .collect()
    }

    pub fn from_dual_coords(&self, coords: &[BigInt]) -> DualVector {
        let mut out = DualVector::zero(self.len());
        for (v, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = Rational::from_integer(c.clone());
            for (o, d) in out.coords.iter_mut().zip(&self.duals[v].coords) {
                *o += d * &c;
            }
        }
        out
    }

    /// `χ(x) = -(x, x + k_G)/2`.
    pub fn chi(&self, x: &DualVector) -> Rational {
        let xk = x + &self.canonical;
        -self.pair(x, &xk) / Rational::from_integer(BigInt::from(2))
    }

    /// `((k_G + 2x)^2 + #V) / 8`.
    pub fn i_invariant(&self, x: &DualVector) -> Rational {
        let v = &self.canonical + &x.scale_int(2);
        (self.pair(&v, &v) + Rational::from_integer(BigInt::from(self.len()))) / Rational::from_integer(BigInt::from(8))
    }

    pub fn class_of(&self, x: &DualVector) -> Result<usize> {
        Ok(self.homology.class_of_dual_coords(&self.to_dual_coords(x)?))
    }

    /// Class `[E_v^*]`.
    pub fn dual_class(&self, v: usize) -> usize {
        self.dual_classes[v]
    }

    /// The representative of `class` with all `E`-coordinates in `[0, 1)`.
    pub fn minimal_representative(&self, class: usize) -> DualVector {
        self.from_dual_coords(&self.homology.lift(class)).fractional()
    }

    /// Restriction `R` to the subgraph spanned by `map` (indices into this
    /// graph), whose own lattice is `sub`: keep the `E^*`-coordinates on the
    /// subgraph and re-read them in the subgraph's anti-dual basis.
    pub fn restrict(&self, x: &DualVector, sub: &Lattice, map: &[usize]) -> Result<DualVector> {
        if map.len() != sub.len() || map.iter().any(|&v| v >= self.len()) {
            return Err(Error::Structure("restriction target is not a subgraph".into()));
        }
        for (i, &v) in map.iter().enumerate() {
            if sub.graph.euler(i) != self.graph.euler(v) {
                return Err(Error::Structure("restriction target is not a subgraph".into()));
            }
        }
        let coords = self.to_dual_coords(x)?;
        let sub_coords: Vec<BigInt> = map.iter().map(|&v| coords[v].clone()).collect();
        Ok(sub.from_dual_coords(&sub_coords))
    }

    /// `|H| · (E_a-coefficient of E_b^*)`, an integer.
    pub fn scaled_dual_coefficient(&self, a: usize, b: usize) -> BigInt {
        let x = self.dual_coefficient(a, b) * Rational::from_integer(BigInt::from(self.order()));
        debug_assert!(x.is_integer());
        x.to_integer()
    }

    /// Checks `(E_w, E_v^*) = -δ_{vw}` for all pairs.
    pub fn verify_duals(&self) -> bool {
        (0..self.len()).all(|v| {
            (0..self.len()).all(|w| {
                let p = self.pair_basis(&self.duals[v], w);
                p == Rational::from_integer(BigInt::from(-((v == w) as i64)))
            })
        })
    }
}

/// `-I^{-1}` by Gauss–Jordan over the rationals.
fn negated_inverse(form: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = form.len();
    let mut a: Vec<Vec<Rational>> =
        form.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(BigInt::from(-((i == j) as i64)))).collect()).collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("nonsingular form");
        a.swap(p, k);
        inv.swap(p, k);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &pivot;
            inv[k][j] = &inv[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
                let t = &f * &inv[k][j];
                inv[i][j] -= t;
            }
        }
    }
    inv
}

/// Exact rational as `i64` pair (for display and tests).
pub fn rational_parts(x: &Rational) -> (i64, i64) {
    (x.numer().to_i64().expect("numerator fits i64"), x.denom().to_i64().expect("denominator fits i64"))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `gcd` of nonnegative integers, with `gcd(0, x) = x`.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn single_vertex_forms() {
        let g = PlumbingGraph::chain(&[-3]);
        assert_eq!(intersection_form(&g), vec![vec![-3]]);
        assert_eq!(determinant(&g).unwrap(), BigInt::from(3));
        let zero = PlumbingGraph::chain(&[0]);
        assert!(!is_negative_definite(&zero));
        assert!(matches!(Lattice::new(&zero), Err(Error::NotNegativeDefinite)));
    }

    #[test]
    fn a2_chain() {
        let g = PlumbingGraph::chain(&[-2, -2]);
        assert_eq!(intersection_form(&g), vec![vec![-2, 1], vec![1, -2]]);
        let lat = Lattice::new(&g).unwrap();
        assert_eq!(lat.det(), &BigInt::from(3));
        assert_eq!(lat.homology().group().factors(), &[3]);
        assert!(lat.canonical().is_zero());
        assert!(lat.verify_duals());
    }

    #[test]
    fn single_vertex_duals_and_canonical() {
        for d in 1..8 {
            let lat = Lattice::new(&PlumbingGraph::chain(&[-d])).unwrap();
            assert_eq!(lat.dual(0).coords[0], q(1, d));
            assert_eq!(lat.canonical().coords[0], q(-(d - 2), d));
        }
        // χ(2E) = 5 on a single (-3) vertex.
        let lat = Lattice::new(&PlumbingGraph::chain(&[-3])).unwrap();
        assert_eq!(lat.chi(&DualVector::from_integers(&[2])), integer(5));
        // i_0 = 0 on a single (-1) vertex.
        let lat = Lattice::new(&PlumbingGraph::chain(&[-1])).unwrap();
        assert_eq!(lat.i_invariant(&DualVector::zero(1)), integer(0));
    }

    #[test]
    fn unimodular_e8_has_integral_duals() {
        // E8: chain of seven (-2) with a (-2) leg on the third vertex.
        let mut edges: Vec<(usize, usize)> = (1..7).map(|i| (i - 1, i)).collect();
        edges.push((2, 7));
        let g = PlumbingGraph::new(&[-2; 8], &edges).unwrap();
        let lat = Lattice::new(&g).unwrap();
        assert_eq!(lat.det(), &BigInt::one());
        assert!((0..8).all(|v| lat.dual(v).is_integral()));
        assert_eq!(lat.i_invariant(&DualVector::zero(8)), integer(1));
    }

    #[test]
    fn trefoil_star_canonical_class_resubstitutes() {
        let g = PlumbingGraph::new(&[-3, -2, -1], &[(0, 2), (1, 2)]).unwrap();
        let lat = Lattice::new(&g).unwrap();
        for v in 0..3 {
            assert_eq!(lat.pair_basis(lat.canonical(), v), integer(-g.euler(v) - 2));
        }
    }

    #[test]
    fn chi_of_basis_vectors_is_one() {
        let g = PlumbingGraph::new(&[-3, -2, -1, -7], &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let lat = Lattice::new(&g).unwrap();
        for v in 0..4 {
            let mut e = vec![0; 4];
            e[v] = 1;
            assert_eq!(lat.chi(&DualVector::from_integers(&e)), integer(1));
        }
        assert_eq!(lat.chi(&DualVector::zero(4)), integer(0));
    }

    #[test]
    fn minimal_representatives_lie_in_unit_cube() {
        let g = PlumbingGraph::new(&[-2, -3, -2, -5], &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let lat = Lattice::new(&g).unwrap();
        assert!(lat.minimal_representative(0).is_zero());
        for h in 0..lat.order() as usize {
            let r = lat.minimal_representative(h);
            assert!(r.coords.iter().all(|c| !c.is_negative() && c < &integer(1)));
            assert_eq!(lat.class_of(&r).unwrap(), h);
        }
    }

    #[test]
    fn restriction_of_canonical_class() {
        let g = PlumbingGraph::new(&[-2, -3, -2, -2, -5], &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let lat = Lattice::new(&g).unwrap();
        for (sub, map) in g.delete_vertices(&[2]) {
            let sub_lat = Lattice::new(&sub).unwrap();
            let r = lat.restrict(lat.canonical(), &sub_lat, &map).unwrap();
            assert_eq!(&r, sub_lat.canonical());
        }
    }
}
