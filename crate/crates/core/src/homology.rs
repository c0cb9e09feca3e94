//! Finite abelian groups and the discriminant group `H = L'/L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Z_{d_1} x ... x Z_{d_k}` with `1 < d_1 | d_2 | ... | d_k`. Elements are
/// residue tuples; they are also numbered `0..order()` in mixed radix with
/// the last factor varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    factors: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(factors: Vec<u64>) -> Self {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d > 1).collect();
        Self { factors }
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn index(&self, elem: &[u64]) -> usize {
        let mut idx = 0u64;
        for (r, d) in elem.iter().zip(&self.factors) {
            idx = idx * d + (r % d);
        }
        idx as usize
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx as u64 % d;
            idx /= *d as usize;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.factors.len() == 1 {
            let d = self.factors[0] as usize;
            return (a + b) % d;
        }
        let (ea, eb) = (self.element(a), self.element(b));
        let sum: Vec<u64> = ea.iter().zip(&eb).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let e = self.element(a);
        let n: Vec<u64> = e.iter().zip(&self.factors).map(|(x, d)| (d - x) % d).collect();
        self.index(&n)
    }

    pub fn mul(&self, k: u64, a: usize) -> usize {
        let e = self.element(a);
        let m: Vec<u64> = e.iter().zip(&self.factors).map(|(x, d)| (x * (k % d)) % d).collect();
        self.index(&m)
    }

    pub fn order_of(&self, a: usize) -> u64 {
        self.element(a).iter().zip(&self.factors).map(|(&x, &d)| d / x.gcd(&d)).fold(1, |acc, o| acc.lcm(&o))
    }
}

/// Smith normal form `U * A * V = diag(d_1, ..., d_n)` of a square integer
/// matrix; only the left transform and its inverse are kept.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub left_inverse: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(matrix: &[Vec<i64>]) -> SmithForm {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u = identity(n);
    let mut uinv = identity(n);

    for k in 0..n {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != k {
                a.swap(pi, k);
                u.swap(pi, k);
                for row in uinv.iter_mut() {
                    row.swap(pi, k);
                }
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
            }
            let mut clean = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[k][k]);
                row_add(&mut a, &mut u, &mut uinv, i, k, &(-&q));
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor(&a[k][k]);
                for row in a.iter_mut() {
                    let t = &row[k] * &q;
                    row[j] -= t;
                }
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row k and retry.
            let mut offending = None;
            'search: for i in k + 1..n {
                for j in k + 1..n {
                    if !(&a[i][j] % &a[k][k]).is_zero() {
                        offending = Some(i);
                        break 'search;
                    }
                }
            }
            match offending {
                Some(i) => row_add(&mut a, &mut u, &mut uinv, k, i, &BigInt::one()),
                None => break,
            }
        }
        if a[k][k].is_negative() {
            for x in a[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
            for row in uinv.iter_mut() {
                row[k] = -&row[k];
            }
        }
    }
    SmithForm { diagonal: (0..n).map(|i| a[i][i].clone()).collect(), left: u, left_inverse: uinv }
}

/// `row[target] += factor * row[source]`, mirrored on the transforms.
fn row_add(
    a: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    uinv: &mut [Vec<BigInt>],
    target: usize,
    source: usize,
    factor: &BigInt,
) {
    for m in [&mut *a, &mut *u] {
        let src = m[source].clone();
        for (x, s) in m[target].iter_mut().zip(src) {
            *x += factor * s;
        }
    }
    // Inverse update: column[source] -= factor * column[target].
    for row in uinv.iter_mut() {
        let t = factor * &row[target];
        row[source] -= t;
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// The group `H = L'/L` of a negative definite plumbing together with the
/// class map on anti-dual coordinates.
#[derive(Clone, Debug)]
pub struct HomologyStructure {
    group: FiniteGroup,
    /// Rows of the left Smith transform belonging to nontrivial factors.
    class_rows: Vec<Vec<BigInt>>,
    /// Columns of its inverse for the same factors.
    lift_columns: Vec<Vec<BigInt>>,
}

impl HomologyStructure {
    pub fn from_form(form: &[Vec<i64>]) -> Self {
        let snf = smith_normal_form(form);
        let mut factors = Vec::new();
        let mut class_rows = Vec::new();
        let mut lift_columns = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            let d = d.to_u64().expect("invariant factor fits in u64");
            assert!(d != 0, "degenerate intersection form");
            if d > 1 {
                factors.push(d);
                class_rows.push(snf.left[i].clone());
                lift_columns.push(snf.left_inverse.iter().map(|row| row[i].clone()).collect());
            }
        }
        Self { group: FiniteGroup { factors }, class_rows, lift_columns }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Class of the element with the given anti-dual (`E*`-basis) coordinates.
    pub fn class_of_dual_coords(&self, coords: &[BigInt]) -> usize {
        let residues: Vec<u64> = self
            .class_rows
            .iter()
            .zip(self.group.factors())
            .map(|(row, &d)| {
                let s: BigInt = row.iter().zip(coords).map(|(a, b)| a * b).sum();
                s.mod_floor(&BigInt::from(d)).to_u64().unwrap()
            })
            .collect();
        self.group.index(&residues)
    }

    /// Some anti-dual coordinate vector representing the class.
    pub fn lift(&self, class: usize) -> Vec<BigInt> {
        let n = self.lift_columns.first().map_or(0, |c| c.len());
        let elem = self.group.element(class);
        let mut out = vec![BigInt::zero(); n];
        for (col, r) in self.lift_columns.iter().zip(elem) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * BigInt::from(r);
            }
        }
        out
    }
}
