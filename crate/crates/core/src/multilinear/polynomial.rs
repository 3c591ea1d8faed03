//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::rational::Rational;
use super::MAX_DIM;

/// Exponent vector `x^a = x_1^{a_1} ... x_n^{a_n}`, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_DIM],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_DIM] };

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_DIM, "too many variables");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent too large");
        }
        m
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, dim: usize) -> Vec<u32> {
        self.exps[..dim].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m
    }

    /// `x^a / x_i`, or `None` when `a_i = 0`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        Some(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// All monomials in `dim` variables of total degree `deg`, ascending.
    pub fn all_of_degree(dim: usize, deg: u32) -> Vec<Monomial> {
        fn rec(dim: usize, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i + 1 == dim {
                cur.exps[i] = left as u8;
                out.push(*cur);
                cur.exps[i] = 0;
                return;
            }
            for e in 0..=left {
                cur.exps[i] = e as u8;
                rec(dim, i + 1, left - e, cur, out);
            }
            cur.exps[i] = 0;
        }
        if dim == 0 {
            return if deg == 0 { vec![Monomial::ONE] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut start = Monomial::ONE;
        rec(dim, 0, deg, &mut start, &mut out);
        out.sort();
        out
    }

    /// Number of monomials of degree `deg` in `dim` variables.
    pub fn count(dim: usize, deg: u32) -> usize {
        if dim == 0 {
            return usize::from(deg == 0);
        }
        binomial(deg as usize + dim - 1, dim - 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x^{:?}", &self.exps[..d])
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A polynomial in `dim` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::term(dim, Monomial::ONE, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn term(dim: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        Self::term(dim, Monomial::var(i), Rational::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * x^m * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational, m: &Monomial) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(oc * c));
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(other, &-Rational::one(), &Monomial::ONE);
        p
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            p.add_scaled(other, c, m);
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// `d/dx_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(i) {
                p.add_term(q, &(c * &Rational::from_int(m.exponent(i) as i64)));
            }
        }
        p
    }

    /// Value at the origin (the constant term).
    pub fn eval_origin(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                t = &t * &x.pow(m.exponent(i));
            }
            acc += &t;
        }
        acc
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// `Some(d)` when every term has degree `d`; zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let lo = self.min_degree()?;
        (Some(lo) == self.degree()).then_some(lo)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for i in 0..self.dim {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    e => factors.push(format!("x{}^{e}", i + 1)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    #[test]
    fn eval_and_components() {
        let three = Polynomial::constant(2, Rational::from_int(3));
        let p = three.add(&x(0).mul(&x(0)));
        assert_eq!(p.eval_origin(), Rational::from_int(3));

        let q = x(0).add(&x(0).mul(&x(1)));
        assert_eq!(q.homogeneous_component(2), x(0).mul(&x(1)));
        assert!(Polynomial::zero(2).homogeneous_component(4).is_zero());
    }

    #[test]
    fn components_sum_back() {
        let p = Polynomial::one(2).add(&x(0)).add(&x(0).mul(&x(1)).scale(&Rational::new(-1, 2)));
        let mut sum = Polynomial::zero(2);
        for d in 0..=p.degree().unwrap() {
            let c = p.homogeneous_component(d);
            assert_eq!(c.homogeneous_component(d), c);
            sum.add_assign(&c);
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn derivative_product_rule() {
        let p = x(0).mul(&x(0)).add(&x(1));
        let q = x(0).mul(&x(1)).add(&Polynomial::one(2));
        let lhs = p.mul(&q).derivative(0);
        let rhs = p.derivative(0).mul(&q).add(&p.mul(&q.derivative(0)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::count(4, 5), 56);
        assert_eq!(Monomial::all_of_degree(4, 5).len(), 56);
        let ms = Monomial::all_of_degree(2, 1);
        // grlex: x1 > x2, so x2 sorts first in ascending order
        assert_eq!(ms, vec![Monomial::var(1), Monomial::var(0)]);
    }

    #[test]
    fn display() {
        let p = x(0).mul(&x(1)).sub(&x(1).scale(&Rational::from_int(2)));
        assert_eq!(p.to_string(), "x1*x2 - 2*x2");
    }
}

/// One term `c · x^e` in the serialized form `{"c": "num/den", "e": [e₁, …, e_n]}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TermRecord {
    pub c: Rational,
    pub e: Vec<u32>,
}

impl Polynomial {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms().map(|(m, c)| TermRecord { c: c.clone(), e: m.exponents(self.dim) }).collect()
    }

    /// Rebuilds a polynomial in `dim` variables; `None` if an exponent list has the wrong
    /// length or an exponent exceeds 255.
    pub fn from_records(dim: usize, records: &[TermRecord]) -> Option<Polynomial> {
        if dim > MAX_DIM {
            return None;
        }
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            if r.e.len() != dim || r.e.iter().any(|&e| e > u8::MAX as u32) {
                return None;
            }
            terms.push((Monomial::from_exponents(&r.e), r.c.clone()));
        }
        Some(Polynomial::from_terms(dim, terms))
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}
