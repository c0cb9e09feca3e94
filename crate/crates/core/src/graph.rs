//! Decorated plumbing graphs (trees, or forests during recursion).

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: u32,
    pub euler: i64,
}

/// An arrowhead (a non-compact curve) attached to a vertex, with its
/// multiplicity in a divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub vertex: usize,
    pub multiplicity: i64,
}

/// A plumbing graph. Vertices are addressed by their index `0..len()`;
/// the `id` of a vertex is only a label used for files and reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
    multiplicities: Option<Vec<i64>>,
    adjacency: Vec<Vec<usize>>,
}

impl PlumbingGraph {
    /// Graph with ids `0..n` from Euler numbers and index pairs.
    pub fn new(eulers: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = eulers.iter().enumerate().map(|(i, &euler)| Vertex { id: i as u32, euler }).collect();
        Self::from_parts(vertices, edges.to_vec(), Vec::new(), None)
    }

    /// A chain with the given Euler numbers, in order.
    pub fn chain(eulers: &[i64]) -> Self {
        let edges: Vec<_> = (1..eulers.len()).map(|i| (i - 1, i)).collect();
        Self::new(eulers, &edges).expect("a chain is a tree")
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new(), None).unwrap()
    }

    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        arrows: Vec<Arrow>,
        multiplicities: Option<Vec<i64>>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut ids: Vec<u32> = vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structure("duplicate vertex id".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut uf = UnionFind::new(n);
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::Structure(format!("edge ({a},{b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::Structure(format!("loop at vertex {}", vertices[a].id)));
            }
            if !uf.union(a, b) {
                return Err(Error::Structure(format!(
                    "edge ({},{}) closes a cycle; plumbing graphs must be trees",
                    vertices[a].id, vertices[b].id
                )));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for arrow in &arrows {
            if arrow.vertex >= n {
                return Err(Error::Structure("arrow on a missing vertex".into()));
            }
        }
        if let Some(m) = &multiplicities {
            if m.len() != n {
                return Err(Error::Structure("multiplicity system has the wrong length".into()));
            }
        }
        Ok(Self { vertices, edges, arrows, multiplicities, adjacency })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.vertices[v].euler
    }

    pub fn id(&self, v: usize) -> u32 {
        self.vertices[v].id
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn multiplicities(&self) -> Option<&[i64]> {
        self.multiplicities.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Number of adjacent edges; arrows are not counted.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn arrow_count(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.vertex == v).count()
    }

    pub fn set_multiplicities(&mut self, m: Option<Vec<i64>>) -> Result<()> {
        if let Some(m) = &m {
            if m.len() != self.len() {
                return Err(Error::Structure("multiplicity system has the wrong length".into()));
            }
        }
        self.multiplicities = m;
        Ok(())
    }

    pub fn set_arrows(&mut self, arrows: Vec<Arrow>) -> Result<()> {
        if arrows.iter().any(|a| a.vertex >= self.len()) {
            return Err(Error::Structure("arrow on a missing vertex".into()));
        }
        self.arrows = arrows;
        Ok(())
    }

    pub fn set_euler(&mut self, v: usize, euler: i64) {
        self.vertices[v].euler = euler;
    }

    /// Copy without arrows and multiplicities.
    pub fn bare(&self) -> Self {
        Self { arrows: Vec::new(), multiplicities: None, ..self.clone() }
    }

    /// Connected components as sorted vertex index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected()
    }

    /// Every component is a path (this includes isolated vertices).
    pub fn is_chain(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() <= 2)
    }

    /// Induced subgraph on `subset` (in the given order) together with the
    /// map from new indices to old ones. Arrows and multiplicities are
    /// carried over.
    pub fn induced(&self, subset: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &v) in subset.iter().enumerate() {
            if v >= self.len() {
                return Err(Error::Structure(format!("vertex index {v} is not in the graph")));
            }
            if new_index[v] != usize::MAX {
                return Err(Error::Structure("repeated vertex in subset".into()));
            }
            new_index[v] = i;
        }
        let vertices = subset.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| new_index[*a] != usize::MAX && new_index[*b] != usize::MAX)
            .map(|&(a, b)| (new_index[a], new_index[b]))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| new_index[a.vertex] != usize::MAX)
            .map(|a| Arrow { vertex: new_index[a.vertex], multiplicity: a.multiplicity })
            .collect();
        let multiplicities = self.multiplicities.as_ref().map(|m| subset.iter().map(|&v| m[v]).collect());
        Ok((Self::from_parts(vertices, edges, arrows, multiplicities)?, subset.to_vec()))
    }

    /// Components left after deleting `removed` and its adjacent edges.
    pub fn delete_vertices(&self, removed: &[usize]) -> Vec<(Self, Vec<usize>)> {
        let mut keep = vec![true; self.len()];
        for &v in removed {
            keep[v] = false;
        }
        let kept: Vec<usize> = (0..self.len()).filter(|&v| keep[v]).collect();
        let (rest, map) = self.induced(&kept).expect("subset of own vertices");
        rest.components()
            .into_iter()
            .map(|comp| {
                let (g, inner) = rest.induced(&comp).expect("component");
                (g, inner.into_iter().map(|i| map[i]).collect())
            })
            .collect()
    }

    /// Graph with one edge removed (a forest).
    pub fn without_edge(&self, a: usize, b: usize) -> Self {
        let edges = self.edges.iter().copied().filter(|&(x, y)| !((x == a && y == b) || (x == b && y == a))).collect();
        Self::from_parts(self.vertices.clone(), edges, self.arrows.clone(), self.multiplicities.clone())
            .expect("removing an edge keeps a forest")
    }

    /// Vertices on the unique path from `a` to `b`, inclusive.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &w in &self.adjacency[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent[b] == usize::MAX {
            return None;
        }
        let mut path = vec![b];
        let mut v = b;
        while v != a {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// Disjoint union; the second graph's ids are shifted past the first's.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        let n = self.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| Vertex { id: v.id + shift, euler: v.euler }));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + n, b + n)));
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| Arrow { vertex: a.vertex + n, ..*a }));
        let multiplicities = match (&self.multiplicities, &other.multiplicities) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Self::from_parts(vertices, edges, arrows, multiplicities).expect("union of forests")
    }

    /// Adds an edge between two vertices of different components.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let mut edges = self.edges.clone();
        edges.push((a, b));
        *self = Self::from_parts(self.vertices.clone(), edges, self.arrows.clone(), self.multiplicities.clone())?;
        Ok(())
    }

    /// Appends a vertex with a fresh id and returns its index.
    pub fn add_vertex(&mut self, euler: i64) -> usize {
        let id = self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        self.vertices.push(Vertex { id, euler });
        self.adjacency.push(Vec::new());
        if let Some(m) = &mut self.multiplicities {
            m.push(0);
        }
        self.len() - 1
    }

    /// Renumbers ids to `0..n` in index order.
    pub fn relabeled(&self) -> Self {
        let mut g = self.clone();
        for (i, v) in g.vertices.iter_mut().enumerate() {
            v.id = i as u32;
        }
        g
    }

    /// Isomorphism-invariant string of the decorated forest (Euler numbers,
    /// arrow multiplicities and, when present, the multiplicity system).
    pub fn canonical_form(&self) -> String {
        self.canonical_with(true)
    }

    /// Isomorphism-invariant string using the Euler numbers only.
    pub fn shape_form(&self) -> String {
        self.canonical_with(false)
    }

    /// Decorated-tree isomorphism on Euler numbers.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.len() == other.len() && self.shape_form() == other.shape_form()
    }

    fn canonical_with(&self, full: bool) -> String {
        let labels: Vec<String> = (0..self.len())
            .map(|v| {
                let mut s = self.vertices[v].euler.to_string();
                if full {
                    let mut arrows: Vec<i64> =
                        self.arrows.iter().filter(|a| a.vertex == v).map(|a| a.multiplicity).collect();
                    arrows.sort_unstable();
                    for a in arrows {
                        s.push_str(&format!(">{a}"));
                    }
                    if let Some(m) = &self.multiplicities {
                        s.push_str(&format!("m{}", m[v]));
                    }
                }
                s
            })
            .collect();
        let mut parts: Vec<String> = self
            .components()
            .iter()
            .map(|comp| self.tree_centers(comp).into_iter().map(|c| self.encode(c, usize::MAX, &labels)).min().unwrap())
            .collect();
        parts.sort();
        parts.join("+")
    }

    fn encode(&self, v: usize, parent: usize, labels: &[String]) -> String {
        let mut children: Vec<String> =
            self.adjacency[v].iter().filter(|&&w| w != parent).map(|&w| self.encode(w, v, labels)).collect();
        children.sort();
        format!("({}{})", labels[v], children.concat())
    }

    fn tree_centers(&self, comp: &[usize]) -> Vec<usize> {
        if comp.len() <= 2 {
            return comp.to_vec();
        }
        let mut degree: Vec<usize> = (0..self.len()).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = comp.iter().copied().filter(|&v| degree[v] <= 1).collect();
        let mut remaining = comp.len();
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &w in &self.adjacency[leaf] {
                    if degree[w] > 0 {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
                degree[leaf] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer.dedup();
        layer
    }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        let err = PlumbingGraph::new(&[-2, -2, -2], &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn degrees_ignore_arrows() {
        let mut g = PlumbingGraph::chain(&[-3, -1, -2]);
        g.set_arrows(vec![Arrow { vertex: 1, multiplicity: 1 }]).unwrap();
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.arrow_count(1), 1);
    }

    #[test]
    fn deleting_center_of_star() {
        let g = PlumbingGraph::new(&[-1, -2, -3, -7], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let parts = g.delete_vertices(&[0]);
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|(c, _)| c.len() == 1));
    }

    #[test]
    fn isomorphism_ignores_vertex_order() {
        let a = PlumbingGraph::new(&[-1, -2, -3, -7], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let b = PlumbingGraph::new(&[-7, -3, -2, -1], &[(3, 0), (3, 1), (3, 2)]).unwrap();
        let c = PlumbingGraph::chain(&[-2, -1, -3, -7]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn path_between_leaves() {
        let g = PlumbingGraph::chain(&[-2, -2, -2, -2]);
        assert_eq!(g.path(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(g.path(2, 2).unwrap(), vec![2]);
    }
}
