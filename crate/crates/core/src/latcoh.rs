//! Lattice cohomology of a weighted box: sublevel cubical complexes, their
//! Betti numbers and the normalized Euler characteristic `eu`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::{DualVector, Lattice};

/// Weights `w(l) = -(l, l + k + 2l')/2` on the lattice points of `[0, B]`.
#[derive(Clone, Debug)]
pub struct WeightedBox {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    weights: Vec<i64>,
}

impl WeightedBox {
    /// Weighted box for `l'` (whose class fixes the characteristic element
    /// `k + 2l'`) on `[0, bounds]`.
    pub fn new(lat: &Lattice, l_prime: &DualVector, bounds: &[usize]) -> Result<Self> {
        let g = lat.graph();
        let n = g.len();
        if bounds.len() != n {
            return Err(Error::Input("box dimension does not match the graph".into()));
        }
        let char_vec = lat.canonical() + &l_prime.scale_int(2);
        let linear: Vec<i64> = (0..n)
            .map(|v| {
                let c = lat.pair_basis(&char_vec, v);
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| Error::Unsupported("weight coefficient too large".into()))
                } else {
                    Err(Error::Input("l' is not in the dual lattice".into()))
                }
            })
            .collect::<Result<_>>()?;
        let mut strides = vec![1usize; n];
        for v in (0..n.saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * (bounds[v + 1] + 1);
        }
        let total: usize = bounds.iter().map(|b| b + 1).product();
        let mut weights = Vec::with_capacity(total);
        let mut l = vec![0i64; n];
        for _ in 0..total {
            let mut q = 0i64;
            for v in 0..n {
                q += g.euler(v) * l[v] * l[v] + linear[v] * l[v];
            }
            for &(a, b) in g.edges() {
                q += 2 * l[a] * l[b];
            }
            if q % 2 != 0 {
                return Err(Error::Consistency("weight function is not integral".into()));
            }
            weights.push(-q / 2);
            for v in (0..n).rev() {
                l[v] += 1;
                if l[v] as usize <= bounds[v] {
                    break;
                }
                l[v] = 0;
            }
        }
        Ok(Self { bounds: bounds.to_vec(), strides, weights })
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn point_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_at(&self, l: &[usize]) -> i64 {
        self.weights[self.index(l)]
    }

    fn index(&self, l: &[usize]) -> usize {
        l.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    fn coords(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let c = idx / s;
                idx %= s;
                c
            })
            .collect()
    }

    pub fn min_weight(&self) -> i64 {
        *self.weights.iter().min().expect("nonempty box")
    }

    pub fn max_weight(&self) -> i64 {
        *self.weights.iter().max().expect("nonempty box")
    }

    /// Calls `f(point index, direction mask, cube weight)` for every cube
    /// of the box.
    fn for_each_cube(&self, mut f: impl FnMut(usize, usize, i64)) {
        let s = self.dim();
        let full = 1usize << s;
        let mut corner = vec![0i64; full];
        let mut best = vec![0i64; full];
        for idx in 0..self.weights.len() {
            let l = self.coords(idx);
            let free: usize = (0..s).filter(|&i| l[i] < self.bounds[i]).fold(0, |m, i| m | (1 << i));
            // Corner weights w(l + e_J) for J ⊆ free, then subset maxima.
            let mut j = free;
            loop {
                let offset: usize = (0..s).filter(|&i| j >> i & 1 == 1).map(|i| self.strides[i]).sum();
                corner[j] = self.weights[idx + offset];
                if j == 0 {
                    break;
                }
                j = (j - 1) & free;
            }
            let mut sub = free;
            let mut masks = Vec::new();
            loop {
                masks.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            masks.reverse();
            for &m in &masks {
                let mut b = corner[m];
                let mut rest = m;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    b = b.max(best[m ^ bit]);
                    rest ^= bit;
                }
                best[m] = b;
                f(idx, m, b);
            }
        }
    }

    /// `eu = -min w + Σ_q (-1)^q rank H^q_red`, which for a box equals
    /// `-Σ_□ (-1)^{dim □} w(□)` summed over all cubes.
    pub fn euler_characteristic_eu(&self) -> i64 {
        let mut total = 0i64;
        self.for_each_cube(|_, m, w| {
            if m.count_ones() % 2 == 0 {
                total -= w;
            } else {
                total += w;
            }
        });
        total
    }

    /// `b_0(S_n ∩ box)` at every level where it changes, from `min w` on,
    /// by incremental union-find over vertices and edges.
    pub fn b0_profile(&self) -> Vec<(i64, usize)> {
        let s = self.dim();
        let mut events: Vec<(i64, usize, usize)> = Vec::new();
        for (idx, &w) in self.weights.iter().enumerate() {
            events.push((w, idx, usize::MAX));
        }
        for idx in 0..self.weights.len() {
            let l = self.coords(idx);
            for i in 0..s {
                if l[i] < self.bounds[i] {
                    let j = idx + self.strides[i];
                    events.push((self.weights[idx].max(self.weights[j]), idx, j));
                }
            }
        }
        // Vertices before edges at equal level.
        events.sort_unstable_by_key(|&(w, a, b)| (w, b != usize::MAX, a, b));
        let mut uf = UnionFind::new(self.weights.len());
        let mut present = vec![false; self.weights.len()];
        let mut comps = 0usize;
        let mut profile: Vec<(i64, usize)> = Vec::new();
        let mut i = 0;
        while i < events.len() {
            let level = events[i].0;
            while i < events.len() && events[i].0 == level {
                let (_, a, b) = events[i];
                if b == usize::MAX {
                    present[a] = true;
                    comps += 1;
                } else if uf.union(a, b) {
                    comps -= 1;
                }
                i += 1;
            }
            if profile.last().is_none_or(|&(_, c)| c != comps) {
                profile.push((level, comps));
            }
        }
        profile
    }

    /// Betti numbers of `S_n ∩ box` over a prime field of large
    /// characteristic (equal to the rational ones unless the homology has
    /// torsion of that order), for `q = 0..=dim`.
    pub fn sublevel_betti(&self, n: i64) -> Vec<usize> {
        let s = self.dim();
        let mut cubes: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new(); s + 1];
        self.for_each_cube(|idx, m, w| {
            if w <= n {
                let q = m.count_ones() as usize;
                let k = cubes[q].len();
                cubes[q].insert((idx, m), k);
            }
        });
        let counts: Vec<usize> = cubes.iter().map(HashMap::len).collect();
        // rank of ∂_q : C_q -> C_{q-1}
        let mut ranks = vec![0usize; s + 2];
        for q in 1..=s {
            let mut rows: Vec<Vec<(usize, u64)>> = Vec::new();
            for &(idx, m) in cubes[q].keys() {
                let mut row = Vec::new();
                let mut k = 0;
                for i in 0..s {
                    if m >> i & 1 == 0 {
                        continue;
                    }
                    let face = m ^ (1 << i);
                    let sign_plus = k % 2 == 0;
                    let far = cubes[q - 1][&(idx + self.strides[i], face)];
                    let near = cubes[q - 1][&(idx, face)];
                    row.push((far, if sign_plus { 1 } else { PRIME - 1 }));
                    row.push((near, if sign_plus { PRIME - 1 } else { 1 }));
                    k += 1;
                }
                rows.push(row);
            }
            ranks[q] = rank_mod_prime(rows, counts[q - 1]);
        }
        (0..=s).map(|q| counts[q] - ranks[q] - ranks[q + 1]).collect()
    }
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Rank of a sparse matrix (rows of `(column, value)`) over `F_PRIME`.
fn rank_mod_prime(rows: Vec<Vec<(usize, u64)>>, ncols: usize) -> usize {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut dense = vec![0u64; ncols];
        for (c, v) in row {
            dense[c] = (dense[c] + v) % PRIME;
        }
        for c in 0..ncols {
            if dense[c] == 0 {
                continue;
            }
            match &pivots[c] {
                Some(p) => {
                    let f = dense[c];
                    for (d, &x) in dense.iter_mut().zip(p.iter()).skip(c) {
                        *d = (*d + PRIME - mul_mod(f, x)) % PRIME;
                    }
                }
                None => {
                    let inv = pow_mod(dense[c], PRIME - 2);
                    for d in dense.iter_mut().skip(c) {
                        *d = mul_mod(*d, inv);
                    }
                    pivots[c] = Some(dense);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Limits for the box growth in [`lattice_eu`].
#[derive(Clone, Copy, Debug)]
pub struct EuConfig {
    pub max_vertices: usize,
    pub max_axis: usize,
    pub max_points: usize,
}

impl Default for EuConfig {
    fn default() -> Self {
        Self { max_vertices: 7, max_axis: 1 << 10, max_points: 4_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EuStatus {
    /// Two consecutive boxes agreed; the smaller one is reported.
    Converged { bounds: Vec<usize> },
    /// The limits were hit before two boxes agreed.
    Inconclusive { last_bounds: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct EuResult {
    pub eu: Option<BigInt>,
    pub min_weight: i64,
    pub b0_profile: Vec<(i64, usize)>,
    pub status: EuStatus,
}

impl EuResult {
    pub fn is_conclusive(&self) -> bool {
        matches!(self.status, EuStatus::Converged { .. })
    }
}

struct BoxSummary {
    eu: i64,
    min_weight: i64,
    profile: Vec<(i64, usize)>,
}

fn summarize(lat: &Lattice, r: &DualVector, bounds: &[usize]) -> Result<BoxSummary> {
    let b = WeightedBox::new(lat, r, bounds)?;
    Ok(BoxSummary { eu: b.euler_characteristic_eu(), min_weight: b.min_weight(), profile: b.b0_profile() })
}

/// `eu H^*(G; k + 2l')` on a growing box, starting from the larger of 2 and
/// `⌈Z_K⌉` on every axis and doubling until two consecutive boxes agree on
/// `eu`, `min w` and the `b_0` profile of the sublevel sets.
pub fn lattice_eu(g: &PlumbingGraph, l_prime: &DualVector, config: EuConfig) -> Result<EuResult> {
    if g.len() > config.max_vertices {
        return Err(Error::Unsupported(format!(
            "lattice cohomology limited to {} vertices (graph has {})",
            config.max_vertices,
            g.len()
        )));
    }
    if !g.is_tree() {
        return Err(Error::Structure("lattice cohomology needs a connected tree".into()));
    }
    let lat = Lattice::new(&g.bare())?;
    let h = lat.class_of(l_prime)?;
    let r = lat.minimal_representative(h);
    // w_{l'}(l) = w_r(l + x) - w_r(x) with x = l' - r, so eu shifts by w_r(x).
    let shift = lat.chi(l_prime) - lat.chi(&r);
    let shift = shift.to_integer();
    let mut bounds: Vec<usize> = lat
        .canonical()
        .coords
        .iter()
        .map(|c| {
            let z = -c;
            z.ceil().to_integer().to_usize().unwrap_or(0).max(2)
        })
        .collect();
    let fits = |b: &[usize]| {
        b.iter().all(|&x| x <= config.max_axis)
            && b.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x + 1)).is_some_and(|p| p <= config.max_points)
    };
    if !fits(&bounds) {
        return Ok(EuResult {
            eu: None,
            min_weight: 0,
            b0_profile: Vec::new(),
            status: EuStatus::Inconclusive { last_bounds: bounds },
        });
    }
    let mut current = summarize(&lat, &r, &bounds)?;
    loop {
        let next_bounds: Vec<usize> = bounds.iter().map(|b| b * 2).collect();
        if !fits(&next_bounds) {
            return Ok(EuResult {
                eu: None,
                min_weight: current.min_weight,
                b0_profile: current.profile,
                status: EuStatus::Inconclusive { last_bounds: bounds },
            });
        }
        let next = summarize(&lat, &r, &next_bounds)?;
        if next.eu == current.eu && next.min_weight == current.min_weight && next.profile == current.profile {
            return Ok(EuResult {
                eu: Some(BigInt::from(current.eu) + shift),
                min_weight: current.min_weight,
                b0_profile: current.profile,
                status: EuStatus::Converged { bounds },
            });
        }
        bounds = next_bounds;
        current = next;
    }
}

/// `eu` for every class `h` (as `l' = r_h`).
pub fn lattice_eu_table(g: &PlumbingGraph, config: EuConfig) -> Result<Vec<EuResult>> {
    let lat = Lattice::new(&g.bare())?;
    (0..lat.order() as usize).map(|h| lattice_eu(g, &lat.minimal_representative(h), config)).collect()
}

/// Reduced ranks `rank H^q_red` summed over levels, for a small box:
/// `q = 0` counts `b_0 - 1`, higher `q` count `b_q`.
pub fn reduced_ranks(b: &WeightedBox) -> Vec<usize> {
    let mut out = vec![0usize; b.dim() + 1];
    for n in b.min_weight()..=b.max_weight() {
        let betti = b.sublevel_betti(n);
        out[0] += betti[0].saturating_sub(1);
        for q in 1..betti.len() {
            out[q] += betti[q];
        }
    }
    out
}

/// `-min w + Σ_q (-1)^q rank H^q_red` from explicit ranks; slow reference.
pub fn eu_from_ranks(b: &WeightedBox) -> i64 {
    let ranks = reduced_ranks(b);
    let alt: i64 = ranks.iter().enumerate().map(|(q, &r)| if q % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
    -b.min_weight() + alt
}
