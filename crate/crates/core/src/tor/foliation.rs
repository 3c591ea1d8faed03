use std::collections::HashMap;

use crate::brackets::anchor;
use crate::families::FamilySpec;
use crate::koszul::GradedBasis;
use crate::linalg::{Echelon, RationalMatrix, SparseVector};
use crate::multilinear::{vf_bracket, ExteriorTensor, Monomial, Polynomial, Rational, Space, Target, VectorField};

use super::TorError;

/// A submodule of polynomial vector fields given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    dim: usize,
    generators: Vec<VectorField>,
}

/// Result of the involutivity check `[X_a, X_b] ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involutivity {
    pub holds: bool,
    pub pairs_checked: usize,
    /// First failing pair and its bracket.
    pub witness: Option<(usize, usize, VectorField)>,
}

impl Foliation {
    pub fn new(dim: usize, generators: Vec<VectorField>) -> Result<Self, TorError> {
        if dim == 0 || dim > crate::multilinear::MAX_DIM {
            return Err(TorError::UnsupportedDimension(dim));
        }
        if generators.is_empty() {
            return Err(TorError::Empty);
        }
        for (a, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(TorError::GeneratorDimension { index: a, expected: dim, found: g.dim() });
            }
            if g.is_zero() {
                return Err(TorError::ZeroGenerator(a));
            }
        }
        Ok(Foliation { dim, generators })
    }

    /// `⟨x^i ∂_j⟩`, all linear vector fields vanishing at the origin.
    pub fn gl(n: usize) -> Result<Self, TorError> {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                gens.push(VectorField::directional(n, j, Polynomial::var(n, i)));
            }
        }
        Foliation::new(n, gens)
    }

    /// The anchor images of the degree-0 generators of a family's resolution.
    pub fn from_family(f: &FamilySpec) -> Result<Self, TorError> {
        let gens = f.generators();
        let deg0 = gens.last().ok_or(TorError::Empty)?;
        let fields = deg0.iter().map(anchor).collect::<Result<Vec<_>, _>>()?;
        Foliation::new(f.dim(), fields)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    pub fn is_linear(&self) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree() == Some(1))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree().is_some())
    }

    /// Coefficient degree of each generator.
    pub fn degrees(&self) -> Result<Vec<u32>, TorError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(a, g)| g.homogeneous_degree().ok_or(TorError::Inhomogeneous(a)))
            .collect()
    }

    /// The products `m·X_a` spanning `F_s`, with their labels `(a, m)`.
    pub(crate) fn spanning_set(&self, s: u32) -> Result<Vec<(usize, Monomial, VectorField)>, TorError> {
        let degs = self.degrees()?;
        let mut out = Vec::new();
        for (a, (g, &da)) in self.generators.iter().zip(&degs).enumerate() {
            if da > s {
                continue;
            }
            for m in Monomial::all_of_degree(self.dim, s - da) {
                out.push((a, m, g.map(|p| p.mul_monomial(&m))));
            }
        }
        Ok(out)
    }

    /// Canonical (reduced echelon) basis of the degree-`s` piece `F_s`, as `Λ⁰V*⊗V` tensors.
    pub fn module_basis(&self, s: u32) -> Result<Vec<ExteriorTensor>, TorError> {
        let gb = GradedBasis::new(Space::new(self.dim, 0, Target::Vector), s);
        let mut ech = Echelon::new();
        for (_, _, v) in self.spanning_set(s)? {
            ech.insert(gb.vector_of(&v.to_tensor()));
        }
        Ok(ech.into_rref().iter().map(|v| gb.tensor_of(v)).collect())
    }

    /// Whether a homogeneous vector field lies in `F`.
    pub fn contains(&self, v: &VectorField) -> Result<bool, TorError> {
        let Some(s) = v.homogeneous_degree() else {
            return Ok(v.is_zero());
        };
        let gb = GradedBasis::new(Space::new(self.dim, 0, Target::Vector), s);
        let mut ech = Echelon::new();
        for (_, _, w) in self.spanning_set(s)? {
            ech.insert(gb.vector_of(&w.to_tensor()));
        }
        Ok(ech.contains(&gb.vector_of(&v.to_tensor())))
    }

    /// Writes a homogeneous `v ∈ F` as `Σ g_a X_a`.
    pub fn express(&self, v: &VectorField) -> Result<Option<Vec<Polynomial>>, TorError> {
        let mut coeffs = vec![Polynomial::zero(self.dim); self.generators.len()];
        let Some(s) = v.homogeneous_degree() else {
            return Ok(v.is_zero().then_some(coeffs));
        };
        let gb = GradedBasis::new(Space::new(self.dim, 0, Target::Vector), s);
        let span = self.spanning_set(s)?;
        let cols: Vec<SparseVector> = span.iter().map(|(_, _, w)| gb.vector_of(&w.to_tensor())).collect();
        let m = RationalMatrix::from_columns(gb.len(), &cols);
        let Some(x) = m.solve(&gb.vector_of(&v.to_tensor())) else {
            return Ok(None);
        };
        for (j, c) in x.entries() {
            let (a, mono, _) = &span[*j];
            coeffs[*a].add_term(*mono, c);
        }
        Ok(Some(coeffs))
    }

    /// `[X_a, X_b] ∈ F` for all pairs (homogeneous generators: an exact graded membership test).
    pub fn involutivity(&self) -> Result<Involutivity, TorError> {
        let r = self.generators.len();
        let mut checked = 0;
        for a in 0..r {
            for b in a + 1..r {
                let br = vf_bracket(&self.generators[a], &self.generators[b])?;
                checked += 1;
                if !self.contains(&br)? {
                    return Ok(Involutivity { holds: false, pairs_checked: checked, witness: Some((a, b, br)) });
                }
            }
        }
        Ok(Involutivity { holds: true, pairs_checked: checked, witness: None })
    }
}

/// Basis of the relations `Σ g_a X_a = 0` with `g_a` homogeneous of degree `d − deg X_a`.
pub fn syzygies_by_degree(f: &Foliation, d: u32) -> Result<Vec<Vec<Polynomial>>, TorError> {
    let gb = GradedBasis::new(Space::new(f.dim, 0, Target::Vector), d);
    let span = f.spanning_set(d)?;
    let cols: Vec<SparseVector> = span.iter().map(|(_, _, w)| gb.vector_of(&w.to_tensor())).collect();
    let kernel = RationalMatrix::from_columns(gb.len(), &cols).kernel();
    Ok(kernel.iter().map(|k| relation(f, &span, k)).collect())
}

fn relation(f: &Foliation, span: &[(usize, Monomial, VectorField)], k: &SparseVector) -> Vec<Polynomial> {
    let mut g = vec![Polynomial::zero(f.dim); f.generators.len()];
    for (j, c) in k.entries() {
        let (a, m, _) = &span[*j];
        g[*a].add_term(*m, c);
    }
    g
}

/// Relations `Σ g_a X_a = 0` with `deg g_a ≤ d`, for arbitrary (possibly
/// inhomogeneous) generators.
pub fn syzygies_up_to(f: &Foliation, d: u32) -> Vec<Vec<Polynomial>> {
    let n = f.dim;
    let top = d + f.generators.iter().filter_map(|g| g.components().iter().filter_map(|p| p.degree()).max()).max().unwrap_or(0);
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    for deg in 0..=top {
        for m in Monomial::all_of_degree(n, deg) {
            for j in 0..n {
                let k = index.len();
                index.insert((j, m), k);
            }
        }
    }
    let mut span = Vec::new();
    let mut cols = Vec::new();
    for (a, g) in f.generators.iter().enumerate() {
        for deg in 0..=d {
            for m in Monomial::all_of_degree(n, deg) {
                let v = g.map(|p| p.mul_monomial(&m));
                let entries = v
                    .components()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, p)| p.terms().map(move |(mm, c)| (j, *mm, c.clone())).collect::<Vec<_>>())
                    .map(|(j, mm, c)| (index[&(j, mm)], c));
                cols.push(SparseVector::from_pairs(entries));
                span.push((a, m, v));
            }
        }
    }
    let kernel = RationalMatrix::from_columns(index.len(), &cols).kernel();
    kernel.iter().map(|k| relation(f, &span, k)).collect()
}

impl Foliation {
    /// Values of the linear parts as matrices `A` with `X = (Ax)^j ∂_j`.
    pub fn linear_matrices(&self) -> Result<Vec<Vec<Vec<Rational>>>, TorError> {
        self.generators.iter().map(|g| Ok(g.linear_matrix()?)).collect()
    }
}
