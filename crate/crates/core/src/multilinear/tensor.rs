//! Sparse elements of `Λ^p V* ⊗ T` with polynomial coefficients.
//!
//! `T` is one of `ℝ`, `V` or `Λ^q V*`. Both the form part and the target part
//! of a basis element are encoded as a [`Blade`] (a set of basis indices), so a
//! vector `e_j` is the one-element blade `{j}` and a scalar is the empty blade.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::polynomial::{binomial, Monomial, Polynomial};
use super::rational::Rational;
use super::{MultilinearError, MAX_DIM};

/// A strictly increasing index tuple, stored as a bit set (bit `i` = index `i`, 0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u16);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Blade {
        let mut b = 0u16;
        for &i in idx {
            assert!(b & (1 << i) == 0, "repeated index {i}");
            b |= 1 << i;
        }
        Blade(b)
    }

    /// Full blade `{0, ..., n-1}`.
    pub fn full(n: usize) -> Blade {
        Blade(((1u32 << n) - 1) as u16)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..16).filter(move |i| bits & (1 << i) != 0)
    }

    /// Index of the single element of a one-element blade.
    pub fn sole(self) -> usize {
        debug_assert_eq!(self.len(), 1);
        self.0.trailing_zeros() as usize
    }

    /// Number of elements strictly below `i`.
    fn below(self, i: usize) -> u32 {
        (self.0 & ((1u16 << i) - 1)).count_ones()
    }

    /// `e^self ∧ e^other = sign · e^{self ∪ other}`, `None` when the sets meet.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (a in self, b in other) with a > b
        let mut inv = 0u32;
        for b in other.indices() {
            inv += (self.0 >> (b + 1)).count_ones();
        }
        Some((if inv % 2 == 0 { 1 } else { -1 }, Blade(self.0 | other.0)))
    }

    /// `ι_{e_i} e^self`, `None` when `i` is absent.
    pub fn contract(self, i: usize) -> Option<(i32, Blade)> {
        if !self.contains(i) {
            return None;
        }
        let s = if self.below(i) % 2 == 0 { 1 } else { -1 };
        Some((s, Blade(self.0 & !(1 << i))))
    }

    /// All `k`-subsets of `{0..n-1}` in lexicographic order of their tuples.
    pub fn all(n: usize, k: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1u32 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| Blade(m as u16))
            .collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    /// Lexicographic order on the increasing index tuples.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                let low = diff & diff.wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.indices().map(|i| i + 1).collect();
        write!(f, "{v:?}")
    }
}

/// The coefficient space `T` of `Λ^p V* ⊗ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Scalar,
    Vector,
    /// `Λ^q V*`
    Form(u8),
}

impl Target {
    pub fn rank(self, n: usize) -> usize {
        match self {
            Target::Scalar => 1,
            Target::Vector => n,
            Target::Form(q) => binomial(n, q as usize),
        }
    }

    pub fn basis(self, n: usize) -> Vec<Blade> {
        match self {
            Target::Scalar => vec![Blade::EMPTY],
            Target::Vector => (0..n).map(Blade::single).collect(),
            Target::Form(q) => Blade::all(n, q as usize),
        }
    }

    fn admits(self, n: usize, b: Blade) -> bool {
        if b.0 as u32 >= 1 << n {
            return false;
        }
        match self {
            Target::Scalar => b.is_empty(),
            Target::Vector => b.len() == 1,
            Target::Form(q) => b.len() == q as usize,
        }
    }
}

/// A basis element `e^{form} ⊗ t_{target}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BasisIndex {
    pub form: Blade,
    pub target: Blade,
}

impl BasisIndex {
    pub fn new(form: Blade, target: Blade) -> Self {
        BasisIndex { form, target }
    }

    /// `e^{form} ⊗ e_j`.
    pub fn vector(form: &[usize], j: usize) -> Self {
        BasisIndex { form: Blade::from_indices(form), target: Blade::single(j) }
    }

    /// `e^{form}` with scalar target.
    pub fn scalar(form: &[usize]) -> Self {
        BasisIndex { form: Blade::from_indices(form), target: Blade::EMPTY }
    }
}

/// A homogeneous space `Γ(Λ^p V* ⊗ T)` over `n`-dimensional `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub dim: usize,
    pub form_degree: usize,
    pub target: Target,
}

impl Space {
    pub fn new(dim: usize, form_degree: usize, target: Target) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Space { dim, form_degree, target }
    }

    /// Rank as a free module (number of constant basis elements).
    pub fn rank(&self) -> usize {
        if self.form_degree > self.dim {
            return 0;
        }
        binomial(self.dim, self.form_degree) * self.target.rank(self.dim)
    }

    /// Constant basis in canonical order: form blade first, then target.
    pub fn basis(&self) -> Vec<BasisIndex> {
        if self.form_degree > self.dim {
            return Vec::new();
        }
        let tb = self.target.basis(self.dim);
        Blade::all(self.dim, self.form_degree)
            .into_iter()
            .flat_map(|f| tb.iter().map(move |&t| BasisIndex::new(f, t)))
            .collect()
    }

    pub fn zero(&self) -> ExteriorTensor {
        ExteriorTensor::zero(self.dim, self.form_degree, self.target)
    }

    pub fn contains(&self, t: &ExteriorTensor) -> bool {
        t.dim == self.dim && t.form_degree == self.form_degree && t.target == self.target
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.target {
            Target::Scalar => String::new(),
            Target::Vector => "⊗V".into(),
            Target::Form(q) => format!("⊗Λ^{q}V*"),
        };
        write!(f, "Λ^{}V*{t} (n={})", self.form_degree, self.dim)
    }
}

/// An element of `Γ(Λ^p V* ⊗ T)` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorTensor {
    dim: usize,
    form_degree: usize,
    target: Target,
    coeffs: BTreeMap<BasisIndex, Polynomial>,
}

impl ExteriorTensor {
    pub fn zero(dim: usize, form_degree: usize, target: Target) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        ExteriorTensor { dim, form_degree, target, coeffs: BTreeMap::new() }
    }

    pub fn zero_in(space: Space) -> Self {
        space.zero()
    }

    /// `coeff · b` in the given space.
    pub fn basis_element(space: Space, b: BasisIndex, coeff: Polynomial) -> Self {
        let mut t = space.zero();
        t.add_term(b, &coeff);
        t
    }

    /// Constant basis element with coefficient 1.
    pub fn unit(space: Space, b: BasisIndex) -> Self {
        Self::basis_element(space, b, Polynomial::one(space.dim))
    }

    pub fn from_terms(
        space: Space,
        terms: impl IntoIterator<Item = (BasisIndex, Polynomial)>,
    ) -> Self {
        let mut t = space.zero();
        for (b, p) in terms {
            t.add_term(b, &p);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn space(&self) -> Space {
        Space { dim: self.dim, form_degree: self.form_degree, target: self.target }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, b: &BasisIndex) -> Polynomial {
        self.coeffs.get(b).cloned().unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    /// `self += p · b`.
    pub fn add_term(&mut self, b: BasisIndex, p: &Polynomial) {
        debug_assert!(
            b.form.len() == self.form_degree && self.target.admits(self.dim, b.target),
            "basis index {b:?} not in {}",
            self.space()
        );
        if p.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · x^m · p · b`.
    pub fn add_scaled_term(&mut self, b: BasisIndex, p: &Polynomial, c: &Rational, m: &Monomial) {
        if c.is_zero() || p.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b).or_insert_with(|| Polynomial::zero(self.dim));
        entry.add_scaled(p, c, m);
        if entry.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &ExteriorTensor, c: &Rational) {
        self.check_same_space(other);
        for (b, p) in &other.coeffs {
            self.add_scaled_term(*b, p, c, &Monomial::ONE);
        }
    }

    /// `self += f · other`.
    pub fn add_mul_poly(&mut self, f: &Polynomial, other: &ExteriorTensor) {
        self.check_same_space(other);
        for (b, p) in &other.coeffs {
            for (m, c) in f.terms() {
                self.add_scaled_term(*b, p, c, m);
            }
        }
    }

    fn check_same_space(&self, other: &ExteriorTensor) {
        assert!(
            self.space() == other.space(),
            "space mismatch: {} vs {}",
            self.space(),
            other.space()
        );
    }

    pub fn add(&self, other: &ExteriorTensor) -> ExteriorTensor {
        let mut t = self.clone();
        t.add_scaled(other, &Rational::one());
        t
    }

    pub fn sub(&self, other: &ExteriorTensor) -> ExteriorTensor {
        let mut t = self.clone();
        t.add_scaled(other, &-Rational::one());
        t
    }

    pub fn neg(&self) -> ExteriorTensor {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ExteriorTensor {
        let mut t = self.space().zero();
        if c.is_zero() {
            return t;
        }
        t.coeffs = self.coeffs.iter().map(|(b, p)| (*b, p.scale(c))).collect();
        t
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ExteriorTensor {
        let mut t = self.space().zero();
        t.add_mul_poly(f, self);
        t
    }

    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> ExteriorTensor {
        let mut t = self.space().zero();
        for (b, p) in &self.coeffs {
            t.add_term(*b, &f(p));
        }
        t
    }

    /// Degree-`d` homogeneous part of every coefficient.
    pub fn homogeneous_component(&self, d: u32) -> ExteriorTensor {
        self.map_coeffs(|p| p.homogeneous_component(d))
    }

    /// Common homogeneous degree of all coefficients, if there is one.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut deg = None;
        for p in self.coeffs.values() {
            let d = p.homogeneous_degree()?;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    pub fn max_coefficient_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Polynomial::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.values().all(Polynomial::is_constant)
    }

    /// Value at the origin: every coefficient replaced by its constant term.
    pub fn eval_origin(&self) -> ExteriorTensor {
        self.homogeneous_component(0)
    }

    /// `a ∧ b` for a scalar-valued form `a`; the target of `b` is carried along.
    pub fn wedge(&self, b: &ExteriorTensor) -> Result<ExteriorTensor, MultilinearError> {
        if self.dim != b.dim {
            return Err(MultilinearError::DimensionMismatch(self.dim, b.dim));
        }
        if self.target != Target::Scalar {
            return Err(MultilinearError::TargetMismatch {
                expected: "scalar-valued left factor",
                found: self.target,
            });
        }
        let deg = self.form_degree + b.form_degree;
        let mut out = ExteriorTensor::zero(self.dim, deg, b.target);
        if deg > self.dim {
            return Ok(out);
        }
        for (ba, pa) in &self.coeffs {
            for (bb, pb) in &b.coeffs {
                if let Some((s, f)) = ba.form.wedge(bb.form) {
                    let c = pa.mul(pb);
                    out.add_scaled_term(BasisIndex::new(f, bb.target), &c, &Rational::from(s), &Monomial::ONE);
                }
            }
        }
        Ok(out)
    }

    /// `ι_{e_i}` on the form part. A 0-form contracts to zero.
    pub fn contract(&self, i: usize) -> ExteriorTensor {
        assert!(i < self.dim, "basis vector index out of range");
        if self.form_degree == 0 {
            return self.space().zero();
        }
        let mut out = ExteriorTensor::zero(self.dim, self.form_degree - 1, self.target);
        for (b, p) in &self.coeffs {
            if let Some((s, f)) = b.form.contract(i) {
                out.add_scaled_term(BasisIndex::new(f, b.target), p, &Rational::from(s), &Monomial::ONE);
            }
        }
        out
    }

    /// Contraction with a vector field `Σ X^i e_i` with polynomial components.
    pub fn contract_field(&self, x: &[Polynomial]) -> ExteriorTensor {
        assert_eq!(x.len(), self.dim);
        let mut out = ExteriorTensor::zero(self.dim, self.form_degree.saturating_sub(1), self.target);
        if self.form_degree == 0 {
            return out;
        }
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out.add_mul_poly(xi, &self.contract(i));
            }
        }
        out
    }

    /// Re-tag a tensor into another space with identical basis encoding
    /// (used when moving between isomorphic descriptions).
    pub fn relabel(&self, space: Space) -> ExteriorTensor {
        let mut t = space.zero();
        for (b, p) in &self.coeffs {
            t.add_term(*b, p);
        }
        t
    }
}

impl fmt::Display for ExteriorTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, p) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let form = if b.form.is_empty() {
                "1".to_string()
            } else {
                b.form.indices().map(|i| format!("e^{}", i + 1)).collect::<Vec<_>>().join("∧")
            };
            let tgt = match self.target {
                Target::Scalar => String::new(),
                Target::Vector => format!("⊗e_{}", b.target.sole() + 1),
                Target::Form(_) => format!(
                    "⊗{}",
                    b.target.indices().map(|i| format!("e^{}", i + 1)).collect::<Vec<_>>().join("∧")
                ),
            };
            write!(f, "({p}) {form}{tgt}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.space(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, idx: &[usize]) -> ExteriorTensor {
        let s = Space::new(n, idx.len(), Target::Scalar);
        ExteriorTensor::unit(s, BasisIndex::scalar(idx))
    }

    #[test]
    fn wedge_signs() {
        let e1 = form(2, &[0]);
        let e2 = form(2, &[1]);
        assert!(e1.wedge(&e1).unwrap().is_zero());
        assert_eq!(e1.wedge(&e2).unwrap(), form(2, &[0, 1]));
        assert_eq!(e2.wedge(&e1).unwrap(), form(2, &[0, 1]).neg());
    }

    #[test]
    fn wedge_carries_target_and_coefficients() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let a = form(2, &[0]).mul_poly(&x);
        let sv = Space::new(2, 1, Target::Vector);
        let b = ExteriorTensor::basis_element(sv, BasisIndex::vector(&[1], 0), y.clone());
        let got = a.wedge(&b).unwrap();
        let want = ExteriorTensor::basis_element(
            Space::new(2, 2, Target::Vector),
            BasisIndex::vector(&[0, 1], 0),
            x.mul(&y),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn wedge_requires_scalar_left() {
        let sv = Space::new(2, 1, Target::Vector);
        let b = ExteriorTensor::unit(sv, BasisIndex::vector(&[1], 0));
        assert!(matches!(b.wedge(&b), Err(MultilinearError::TargetMismatch { .. })));
        assert!(matches!(
            form(2, &[0]).wedge(&form(3, &[0])),
            Err(MultilinearError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn contraction_signs() {
        let e12 = form(2, &[0, 1]);
        assert_eq!(e12.contract(0), form(2, &[1]));
        assert_eq!(e12.contract(1), form(2, &[0]).neg());
        let v = e12.contract(1).contract(0);
        assert_eq!(v, form(2, &[]).neg());
        assert!(form(2, &[]).contract(0).is_zero());
    }

    #[test]
    fn blade_order_is_lexicographic() {
        let b = Blade::all(4, 2);
        let tuples: Vec<Vec<usize>> = b.iter().map(|x| x.indices().collect()).collect();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}

/// Serialized as its 1-based indices.
impl serde::Serialize for Blade {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.indices().map(|i| i + 1))
    }
}

/// Serialized as `[form indices, target indices]`.
impl serde::Serialize for BasisIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.form, self.target).serialize(s)
    }
}

#[derive(serde::Serialize)]
struct TermRef<'a> {
    basis: &'a BasisIndex,
    coeff: &'a Polynomial,
}

/// Serialized as a list of `{"basis", "coeff"}` terms.
impl serde::Serialize for ExteriorTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(basis, coeff)| TermRef { basis, coeff }))
    }
}
