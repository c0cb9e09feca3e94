#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use plumbing_sw::PlumbingGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random labelled tree on `n` vertices (random parent for each vertex).
pub fn random_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect()
}

/// Determinant of an integer matrix by fraction-free elimination in i128.
pub fn bareiss_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `det(-I)` of a graph, computed without the library.
pub fn oracle_det(g: &PlumbingGraph) -> i128 {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for v in 0..n {
        m[v][v] = -g.euler(v);
    }
    for &(a, b) in g.edges() {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    bareiss_det(&m)
}

/// Negative definiteness through the leading minors of `-I`.
pub fn oracle_negative_definite(g: &PlumbingGraph) -> bool {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for v in 0..n {
        m[v][v] = -g.euler(v);
    }
    for &(a, b) in g.edges() {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    (1..=n).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        bareiss_det(&minor) > 0
    })
}

/// Random negative definite tree with at most `max_n` vertices and
/// determinant at most `max_det`.
pub fn random_definite_tree(rng: &mut impl Rng, max_n: usize, min_euler: i64, max_det: i128) -> PlumbingGraph {
    random_definite_tree_with(rng, max_n, min_euler, max_det, None)
}

/// As [`random_definite_tree`], optionally forcing the Euler number of
/// every vertex of degree at least 3.
pub fn random_definite_tree_with(
    rng: &mut impl Rng,
    max_n: usize,
    min_euler: i64,
    max_det: i128,
    node_euler: Option<i64>,
) -> PlumbingGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let edges = random_tree_edges(rng, n);
        let mut eulers: Vec<i64> = (0..n).map(|_| rng.gen_range(min_euler..=-1)).collect();
        if let Some(e) = node_euler {
            for (v, x) in eulers.iter_mut().enumerate() {
                if edges.iter().filter(|&&(a, b)| a == v || b == v).count() >= 3 {
                    *x = e;
                }
            }
        }
        let g = PlumbingGraph::new(&eulers, &edges).expect("tree");
        if oracle_negative_definite(&g) && oracle_det(&g) <= max_det {
            return g;
        }
    }
}

/// `a/b` evaluated as `k_0 - 1/(k_1 - ...)` in reduced integer pairs.
pub fn oracle_hj_value(ks: &[i64]) -> (i128, i128) {
    let (mut num, mut den) = (ks[ks.len() - 1] as i128, 1i128);
    for &k in ks[..ks.len() - 1].iter().rev() {
        // k - den/num
        let n2 = k as i128 * num - den;
        den = num;
        num = n2;
    }
    let g = gcd(num, den);
    (num / g, den / g)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Coefficients of `(1 - t^{ab})(1 - t) / ((1 - t^a)(1 - t^b))` by long
/// division, independent of the library polynomial type.
pub fn oracle_torus_alexander(a: usize, b: usize) -> Vec<i64> {
    let mut num = vec![0i64; a * b + 2];
    // (1 - t^{ab})(1 - t) = 1 - t - t^{ab} + t^{ab+1}
    num[0] += 1;
    num[1] -= 1;
    num[a * b] -= 1;
    num[a * b + 1] += 1;
    for d in [a, b] {
        // divide by 1 - t^d: q_i = n_i + q_{i-d}
        let mut q = vec![0i64; num.len()];
        for i in 0..num.len() {
            q[i] = num[i] + if i >= d { q[i - d] } else { 0 };
        }
        let deg = num.iter().rposition(|&c| c != 0).unwrap();
        q.truncate(deg + 1 - d);
        num = q;
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    num
}
