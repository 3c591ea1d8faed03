//! `C^∞`-linear maps between homogeneous tensor spaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::linalg::{RationalMatrix, SparseVector};
use crate::multilinear::{BasisIndex, ExteriorTensor, Monomial, Polynomial, Rational, Space};

/// A map determined by its values on the constant basis.
///
/// Every image has homogeneous coefficients of degree `shift`, so the map sends
/// coefficient degree `d` to `d + shift`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedLinearMap {
    name: String,
    source: Space,
    target: Space,
    shift: u32,
    table: BTreeMap<BasisIndex, ExteriorTensor>,
}

impl GradedLinearMap {
    /// Builds the map from its values on basis elements.
    ///
    /// Panics if an image is not homogeneous of degree `shift` or lies in the wrong space.
    pub fn from_fn(
        name: impl Into<String>,
        source: Space,
        target: Space,
        shift: u32,
        f: impl Fn(BasisIndex) -> ExteriorTensor,
    ) -> Self {
        let name = name.into();
        let mut table = BTreeMap::new();
        for b in source.basis() {
            let img = f(b);
            assert!(target.contains(&img), "{name}: image of {b:?} lies in {} not {target}", img.space());
            assert!(
                img.is_zero() || img.coefficient_degree() == Some(shift),
                "{name}: image of {b:?} is not homogeneous of degree {shift}"
            );
            if !img.is_zero() {
                table.insert(b, img);
            }
        }
        GradedLinearMap { name, source, target, shift, table }
    }

    pub fn zero(name: impl Into<String>, source: Space, target: Space, shift: u32) -> Self {
        GradedLinearMap { name: name.into(), source, target, shift, table: BTreeMap::new() }
    }

    pub fn identity(space: Space) -> Self {
        Self::from_fn("id", space, space, 0, |b| ExteriorTensor::unit(space, b))
    }

    /// The constant map with matrix `m` (columns indexed by `source.basis()`).
    pub fn from_constant_matrix(name: impl Into<String>, source: Space, target: Space, m: &RationalMatrix) -> Self {
        let sb = source.basis();
        let tb = target.basis();
        assert_eq!((m.nrows(), m.ncols()), (tb.len(), sb.len()), "matrix shape does not match spaces");
        let cols = m.columns();
        let n = source.dim;
        Self::from_fn(name, source, target, 0, |b| {
            let j = sb.iter().position(|x| *x == b).expect("basis element");
            ExteriorTensor::from_terms(
                target,
                cols[j].entries().iter().map(|(i, v)| (tb[*i], Polynomial::constant(n, v.clone()))),
            )
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> Space {
        self.source
    }

    pub fn target(&self) -> Space {
        self.target
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Image of a constant basis element.
    pub fn on_basis(&self, b: &BasisIndex) -> ExteriorTensor {
        self.table.get(b).cloned().unwrap_or_else(|| self.target.zero())
    }

    pub fn apply(&self, t: &ExteriorTensor) -> ExteriorTensor {
        assert!(
            self.source.contains(t),
            "{}: argument in {} but map is defined on {}",
            self.name,
            t.space(),
            self.source
        );
        let mut out = self.target.zero();
        for (b, f) in t.terms() {
            if let Some(img) = self.table.get(b) {
                out.add_mul_poly(f, img);
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedLinearMap) -> GradedLinearMap {
        assert_eq!(inner.target, self.source, "cannot compose {} after {}", self.name, inner.name);
        let table = inner
            .table
            .iter()
            .map(|(b, t)| (*b, self.apply(t)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        GradedLinearMap {
            name: format!("{}∘{}", self.name, inner.name),
            source: inner.source,
            target: self.target,
            shift: self.shift + inner.shift,
            table,
        }
    }

    fn combine(&self, other: &GradedLinearMap, c: &Rational) -> GradedLinearMap {
        assert_eq!((self.source, self.target), (other.source, other.target), "map spaces differ");
        assert!(
            self.is_zero() || other.is_zero() || self.shift == other.shift,
            "maps have different degree shifts"
        );
        let shift = if self.is_zero() { other.shift } else { self.shift };
        let mut table = self.table.clone();
        for (b, t) in &other.table {
            let e = table.entry(*b).or_insert_with(|| self.target.zero());
            e.add_scaled(t, c);
        }
        table.retain(|_, t| !t.is_zero());
        GradedLinearMap { name: self.name.clone(), source: self.source, target: self.target, shift, table }
    }

    pub fn add(&self, other: &GradedLinearMap) -> GradedLinearMap {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &GradedLinearMap) -> GradedLinearMap {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> GradedLinearMap {
        let table = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.table.iter().map(|(b, t)| (*b, t.scale(c))).collect()
        };
        GradedLinearMap { table, ..self.clone() }
    }

    /// Matrix of the map from coefficient degree `d` to degree `d + shift`.
    pub fn graded_piece_matrix(&self, d: u32) -> RationalMatrix {
        let src = GradedBasis::new(self.source, d);
        let tgt = GradedBasis::new(self.target, d + self.shift);
        let mut cols = Vec::with_capacity(src.len());
        for b in src.basis() {
            let img = self.table.get(b);
            for m in src.monomials() {
                cols.push(match img {
                    Some(t) => tgt.vector_of_shifted(t, m),
                    None => SparseVector::new(),
                });
            }
        }
        RationalMatrix::from_columns(tgt.len(), &cols)
    }

    /// Matrix on constant sections (`d = 0`), for shift-0 maps.
    pub fn constant_matrix(&self) -> RationalMatrix {
        self.graded_piece_matrix(0)
    }
}

impl fmt::Debug for GradedLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} -> {} (shift {})", self.name, self.source, self.target, self.shift)?;
        for (b, t) in &self.table {
            writeln!(f, "  {b:?} ↦ {t}")?;
        }
        Ok(())
    }
}

/// Coordinates on the coefficient-degree-`d` part of a space: basis-major, then monomials.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    space: Space,
    degree: u32,
    basis: Vec<BasisIndex>,
    monomials: Vec<Monomial>,
    basis_pos: HashMap<BasisIndex, usize>,
    mon_pos: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(space: Space, degree: u32) -> Self {
        let basis = space.basis();
        let monomials = Monomial::all_of_degree(space.dim, degree);
        let basis_pos = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mon_pos = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        GradedBasis { space, degree, basis, monomials, basis_pos, mon_pos }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.basis.len() * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index(&self, b: &BasisIndex, m: &Monomial) -> usize {
        self.basis_pos[b] * self.monomials.len() + self.mon_pos[m]
    }

    /// Coordinates of the degree-`d` part of `t`.
    pub fn vector_of(&self, t: &ExteriorTensor) -> SparseVector {
        self.vector_of_shifted(t, &Monomial::ONE)
    }

    /// Coordinates of the degree-`d` part of `x^m · t`.
    pub fn vector_of_shifted(&self, t: &ExteriorTensor, shift: &Monomial) -> SparseVector {
        let mut pairs = Vec::new();
        for (b, p) in t.terms() {
            for (m, c) in p.terms() {
                let mm = m.mul(shift);
                if mm.degree() == self.degree {
                    pairs.push((self.index(b, &mm), c.clone()));
                }
            }
        }
        SparseVector::from_pairs(pairs)
    }

    pub fn tensor_of(&self, v: &SparseVector) -> ExteriorTensor {
        let nm = self.monomials.len();
        let n = self.space.dim;
        ExteriorTensor::from_terms(
            self.space,
            v.entries()
                .iter()
                .map(|(i, c)| (self.basis[i / nm], Polynomial::term(n, self.monomials[i % nm], c.clone()))),
        )
    }
}
