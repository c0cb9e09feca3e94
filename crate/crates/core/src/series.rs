//! Integer polynomials, rational functions with cyclotomic-type
//! denominators, and series with coefficients in a group ring `Z[H]`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homology::FiniteGroup;

/// Dense integer polynomial in `t`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        Self::from_big(coeffs)
    }

    /// `c_0 + c_1 t + ...`
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_big((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_big((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_big(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_big(out)
    }

    /// `self · (1 - t^b)`.
    pub fn mul_one_minus(&self, b: usize) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + b];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + b] -= c;
        }
        Self::from_big(out)
    }

    /// Quotient and remainder of division by `1 - t^b` (remainder of degree
    /// below `b`).
    pub fn div_rem_one_minus(&self, b: usize) -> (Self, Self) {
        assert!(b > 0, "division by 1 - t^0");
        let mut c = self.coeffs.clone();
        if c.len() <= b {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); c.len() - b];
        for k in (b..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let x = std::mem::take(&mut c[k]);
            c[k - b] += &x;
            q[k - b] = -x;
        }
        c.truncate(b);
        (Self::from_big(q), Self::from_big(c))
    }

    /// Exact division by `1 - t^b`.
    pub fn div_exact_one_minus(&self, b: usize) -> Result<Self> {
        let (q, r) = self.div_rem_one_minus(b);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Consistency(format!("polynomial not divisible by 1 - t^{b}")))
        }
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::from_big(out)
    }

    /// `p(t^{1/k})`, requiring every exponent to be divisible by `k`.
    pub fn compress_power(&self, k: usize) -> Result<Self> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return Err(Error::Consistency(format!("exponent {i} not divisible by {k}")));
            }
        }
        Ok(Self::from_big(out))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p'(1)`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs.iter().enumerate().map(|(i, c)| c * BigInt::from(i)).sum()
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match e {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// `num(t) / Π_b (1 - t^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Vec<usize>,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Vec<usize>) -> Self {
        Self { num, den }
    }

    pub fn polynomial(p: Poly) -> Self {
        Self { num: p, den: Vec::new() }
    }

    /// Polynomial part: the quotient leaving a remainder of negative degree.
    pub fn polynomial_part(&self) -> Poly {
        let mut q = self.num.clone();
        for &b in &self.den {
            q = q.div_rem_one_minus(b).0;
        }
        q
    }

    pub fn substitute_power(&self, k: usize) -> Self {
        Self { num: self.num.substitute_power(k), den: self.den.iter().map(|b| b * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        den.extend(&other.den);
        Self { num: self.num.mul(&other.num), den }
    }

    /// Divide by `1 - t^b` formally.
    pub fn divide_one_minus(&self, b: usize) -> Self {
        let mut den = self.den.clone();
        den.push(b);
        Self { num: self.num.clone(), den }
    }

    /// Multiplies by `1 - t^b`, cancelling a matching denominator factor
    /// when there is one.
    pub fn mul_one_minus(&self, b: usize) -> Self {
        let mut den = self.den.clone();
        if let Some(i) = den.iter().position(|&x| x == b) {
            den.swap_remove(i);
            Self { num: self.num.clone(), den }
        } else {
            Self { num: self.num.mul_one_minus(b), den }
        }
    }

    /// The numerator after clearing the denominator exactly, if possible.
    pub fn as_polynomial(&self) -> Result<Poly> {
        let mut q = self.num.clone();
        for &b in &self.den {
            q = q.div_exact_one_minus(b)?;
        }
        Ok(q)
    }

    /// Equality as rational functions by cross multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        let (mut da, mut db) = (self.den.clone(), other.den.clone());
        da.sort_unstable();
        db.sort_unstable();
        // Cancel common denominator factors before multiplying out.
        let (mut i, mut j) = (0, 0);
        let (mut ra, mut rb) = (Vec::new(), Vec::new());
        while i < da.len() || j < db.len() {
            match (da.get(i), db.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    ra.push(*x);
                    i += 1;
                }
                (Some(x), None) => {
                    ra.push(*x);
                    i += 1;
                }
                (_, Some(y)) => {
                    rb.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        for &x in &rb {
            a = a.mul_one_minus(x);
        }
        for &x in &ra {
            b = b.mul_one_minus(x);
        }
        a == b
    }
}

/// Element of `Z[H][t]` stored sparsely as `(group element, exponent) ->
/// coefficient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPoly {
    terms: HashMap<(usize, usize), i128>,
}

impl GroupPoly {
    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(g: usize, e: usize, c: i128) -> Self {
        let mut terms = HashMap::new();
        if c != 0 {
            terms.insert((g, e), c);
        }
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &i128)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Self, group: &FiniteGroup) -> Result<Self> {
        let mut terms: HashMap<(usize, usize), i128> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (&(g1, e1), &c1) in &self.terms {
            for (&(g2, e2), &c2) in &other.terms {
                let key = (group.add(g1, g2), e1 + e2);
                let prod = c1.checked_mul(c2).ok_or_else(overflow)?;
                let slot = terms.entry(key).or_insert(0);
                *slot = slot.checked_add(prod).ok_or_else(overflow)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self { terms })
    }

    /// The coefficient polynomial of group element `h`.
    pub fn component(&self, h: usize) -> Poly {
        let deg = self.terms.keys().filter(|k| k.0 == h).map(|k| k.1).max();
        let Some(deg) = deg else { return Poly::zero() };
        let mut c = vec![BigInt::zero(); deg + 1];
        for (&(g, e), &v) in &self.terms {
            if g == h {
                c[e] += BigInt::from(v);
            }
        }
        Poly::from_big(c)
    }

    /// Image under the augmentation `Z[H] -> Z`.
    pub fn augmentation(&self) -> Poly {
        let deg = self.terms.keys().map(|k| k.1).max();
        let Some(deg) = deg else { return Poly::zero() };
        let mut c = vec![BigInt::zero(); deg + 1];
        for (&(_, e), &v) in &self.terms {
            c[e] += BigInt::from(v);
        }
        Poly::from_big(c)
    }
}

fn overflow() -> Error {
    Error::Consistency("group ring coefficient overflow".into())
}

/// A product `Π (1 - g_i t^{a_i})^{k_i}` over `Z[H]`, kept in factored
/// form: numerator factors with multiplicity and denominator factors.
#[derive(Clone, Debug)]
pub struct GroupSeries {
    group: FiniteGroup,
    /// `(g, a, k)` with `k > 0`: `(1 - g t^a)^k` in the numerator.
    numerator: Vec<(usize, usize, u32)>,
    /// `(g, a, k)` with `k > 0`: `(1 - g t^a)^k` in the denominator.
    denominator: Vec<(usize, usize, u32)>,
}

impl GroupSeries {
    pub fn new(group: FiniteGroup) -> Self {
        Self { group, numerator: Vec::new(), denominator: Vec::new() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Multiplies by `(1 - g t^a)^k` for any integer `k`.
    pub fn push_factor(&mut self, g: usize, a: usize, k: i64) {
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => self.numerator.push((g, a, k as u32)),
            std::cmp::Ordering::Less => self.denominator.push((g, a, (-k) as u32)),
            std::cmp::Ordering::Equal => {}
        }
    }

    pub fn numerator_factors(&self) -> &[(usize, usize, u32)] {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[(usize, usize, u32)] {
        &self.denominator
    }

    /// The image in `Z[t]` under the augmentation: `Π (1 - t^a)^k`.
    pub fn augmentation(&self) -> RationalFunction {
        let mut num = Poly::one();
        for &(_, a, k) in &self.numerator {
            for _ in 0..k {
                num = num.mul_one_minus(a);
            }
        }
        let mut den = Vec::new();
        for &(_, a, k) in &self.denominator {
            den.extend(std::iter::repeat_n(a, k as usize));
        }
        RationalFunction::new(num, den)
    }

    /// Rationalized numerator in `Z[H][t]` and the integer denominator
    /// exponents, using `(1 - g t^a) Σ_{i<ord g} g^i t^{ai} = 1 - t^{a ord g}`.
    pub fn rationalize(&self) -> Result<(GroupPoly, Vec<usize>)> {
        let group = &self.group;
        let mut factors: Vec<GroupPoly> = Vec::new();
        for &(g, a, k) in &self.numerator {
            let mut f = GroupPoly::one();
            f.terms.insert((g, a), -1);
            if g == 0 && a == 0 {
                return Err(Error::Consistency("vanishing series factor".into()));
            }
            for _ in 0..k {
                factors.push(f.clone());
            }
        }
        let mut den = Vec::new();
        for &(g, a, k) in &self.denominator {
            let ord = group.order_of(g) as usize;
            let mut f = GroupPoly { terms: HashMap::new() };
            let mut x = 0;
            for i in 0..ord {
                f.terms.insert((x, a * i), 1);
                x = group.add(x, g);
            }
            for _ in 0..k {
                factors.push(f.clone());
                den.push(a * ord);
            }
        }
        // Multiply the short factors first to keep intermediate products small.
        factors.sort_by_key(|f| f.len());
        let mut acc = GroupPoly::one();
        for f in &factors {
            acc = acc.mul(f, group)?;
        }
        Ok((acc, den))
    }

    /// The `h`-component as a rational function with integer coefficients.
    pub fn component(&self, h: usize) -> Result<RationalFunction> {
        let (num, den) = self.rationalize()?;
        Ok(RationalFunction::new(num.component(h), den))
    }

    /// All components at once, indexed by group element.
    pub fn components(&self) -> Result<Vec<RationalFunction>> {
        let (num, den) = self.rationalize()?;
        Ok((0..self.group.order() as usize).map(|h| RationalFunction::new(num.component(h), den.clone())).collect())
    }
}
