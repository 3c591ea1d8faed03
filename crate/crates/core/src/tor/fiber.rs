use rayon::prelude::*;

use crate::koszul::{euler_contract, maps::form_tensor_vector, GradedBasis};
use crate::linalg::{Echelon, RationalMatrix, SparseVector};
use crate::multilinear::{binomial, Blade, ExteriorTensor, Polynomial, Rational, Space, Target, VectorField};

use super::{Foliation, Involutivity, TorError};

/// One summand `e^I ⊗ g·X_a` of a representative written through the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTerm {
    pub form: Blade,
    pub generator: usize,
    pub coefficient: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorRepresentative {
    /// Internal degree `t = (coefficient degree) + i`.
    pub degree: u32,
    /// The class as an element of `Γ(Λ^i V*⊗V)`.
    pub tensor: ExteriorTensor,
    pub expansion: Vec<GeneratorTerm>,
}

/// `(E_i)_p`, graded by internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorEntry {
    pub i: usize,
    /// Dimension in internal degree `t = 0..=cutoff`.
    pub dims_by_degree: Vec<usize>,
    pub total: usize,
    /// The last two checked degrees are zero.
    pub stabilized: bool,
    pub representatives: Vec<TorRepresentative>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorReport {
    pub dim: usize,
    pub cutoff: u32,
    pub involutivity: Involutivity,
    pub entries: Vec<TorEntry>,
    /// Per internal degree, the alternating sums of chain and cohomology dimensions agree.
    pub euler_consistent: bool,
}

impl TorReport {
    pub fn totals(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.total).collect()
    }
}

/// The complex `Γ(Λ^•V*) ⊗ F` with `d ⊗ id`, embedded in `Γ(Λ^•V*⊗V)` and
/// split by internal degree `t`: position `k` holds `Λ^k V*⊗F_{t−k}`.
#[derive(Clone, Debug)]
pub struct TorComplex {
    foliation: Foliation,
    cutoff: u32,
    /// Basis of `F_s`, `s = 0..=cutoff`.
    module: Vec<Vec<ExteriorTensor>>,
}

/// Cohomology of one `(k, t)` cell.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub dim: usize,
    pub basis: GradedBasis,
    pub representatives: Vec<SparseVector>,
    pub incoming: Vec<SparseVector>,
}

impl TorComplex {
    pub fn new(foliation: &Foliation, cutoff: u32) -> Result<Self, TorError> {
        foliation.degrees()?;
        let module =
            (0..=cutoff).into_par_iter().map(|s| foliation.module_basis(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(TorComplex { foliation: foliation.clone(), cutoff, module })
    }

    pub fn foliation(&self) -> &Foliation {
        &self.foliation
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn n(&self) -> usize {
        self.foliation.dim()
    }

    /// Generators `e^I ⊗ f` of `Λ^k V*⊗F_{t−k}`.
    fn chain(&self, k: usize, t: u32) -> Vec<ExteriorTensor> {
        let n = self.n();
        if (t as usize) < k || k > n {
            return Vec::new();
        }
        let s = t - k as u32;
        let scalar = Space::new(n, k, Target::Scalar);
        let mut out = Vec::new();
        for blade in Blade::all(n, k) {
            let e = ExteriorTensor::unit(scalar, crate::multilinear::BasisIndex::new(blade, Blade::EMPTY));
            for f in &self.module[s as usize] {
                let v = VectorField::from_tensor(f).expect("Λ⁰⊗V");
                out.push(form_tensor_vector(&e, v.components()));
            }
        }
        out
    }

    pub(crate) fn cell(&self, k: usize, t: u32) -> Cell {
        let n = self.n();
        let s = t.saturating_sub(k as u32);
        let gb = GradedBasis::new(Space::new(n, k, Target::Vector), s);
        let chain: Vec<SparseVector> = self.chain(k, t).iter().map(|c| gb.vector_of(c)).collect();
        // kernel of d_k on the chain group, in ambient coordinates
        let kernel: Vec<SparseVector> = if k == 0 || chain.is_empty() {
            chain.clone()
        } else {
            let tb = GradedBasis::new(Space::new(n, k - 1, Target::Vector), s + 1);
            let imgs: Vec<SparseVector> =
                self.chain(k, t).iter().map(|c| tb.vector_of(&euler_contract(c))).collect();
            RationalMatrix::from_columns(tb.len(), &imgs)
                .kernel()
                .iter()
                .map(|kv| {
                    let mut amb = SparseVector::new();
                    for (j, c) in kv.entries() {
                        amb = SparseVector::combine(&amb, &Rational::one(), &chain[*j], c);
                    }
                    amb
                })
                .collect()
        };
        let incoming: Vec<SparseVector> = if s == 0 {
            Vec::new()
        } else {
            self.chain(k + 1, t).iter().map(|c| gb.vector_of(&euler_contract(c))).collect()
        };
        let mut ech = Echelon::new();
        for v in &incoming {
            ech.insert(v.clone());
        }
        let mut reps = Vec::new();
        for v in kernel {
            if ech.insert(v.clone()).is_some() {
                reps.push(v);
            }
        }
        Cell { dim: reps.len(), basis: gb, representatives: reps, incoming }
    }

    /// `c` with `a − c·b ∈ im(d ⊗ id)`, for homogeneous `a, b ∈ Γ(Λ^k V*⊗V)` of the
    /// same coefficient degree; `None` if no such `c` exists.
    pub fn proportional_mod_boundaries(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Option<Rational> {
        let k = a.form_degree();
        let s = a.coefficient_degree().or(b.coefficient_degree())?;
        let cell = self.cell(k, s + k as u32);
        let mut cols = vec![cell.basis.vector_of(b)];
        cols.extend(cell.incoming.iter().cloned());
        let sol = RationalMatrix::from_columns(cell.basis.len(), &cols).solve(&cell.basis.vector_of(a))?;
        Some(sol.get(0))
    }

    fn expansion(&self, t: &ExteriorTensor) -> Result<Vec<GeneratorTerm>, TorError> {
        let n = self.n();
        let mut by_form: std::collections::BTreeMap<Blade, Vec<Polynomial>> = Default::default();
        for (b, p) in t.terms() {
            by_form.entry(b.form).or_insert_with(|| vec![Polynomial::zero(n); n])[b.target.sole()] = p.clone();
        }
        let mut out = Vec::new();
        for (form, comps) in by_form {
            let v = VectorField::new(comps)?;
            let g = self.foliation.express(&v)?.ok_or_else(|| TorError::Internal(format!("{v} ∉ F")))?;
            for (a, c) in g.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push(GeneratorTerm { form, generator: a, coefficient: c });
                }
            }
        }
        Ok(out)
    }

    /// `(E_i)_p` up to the cutoff.
    pub fn entry(&self, i: usize) -> Result<TorEntry, TorError> {
        let n = self.n();
        if i > n {
            return Err(TorError::IndexOutOfRange { i, n });
        }
        let cells: Vec<Cell> = (0..=self.cutoff).into_par_iter().map(|t| self.cell(i, t)).collect();
        let dims: Vec<usize> = cells.iter().map(|c| c.dim).collect();
        let mut reps = Vec::new();
        for (t, c) in cells.iter().enumerate() {
            for v in &c.representatives {
                let tensor = c.basis.tensor_of(v);
                let expansion = self.expansion(&tensor)?;
                reps.push(TorRepresentative { degree: t as u32, tensor, expansion });
            }
        }
        let k = dims.len();
        let stabilized = k >= 2 && dims[k - 1] == 0 && dims[k - 2] == 0;
        Ok(TorEntry { i, total: dims.iter().sum(), dims_by_degree: dims, stabilized, representatives: reps })
    }

    /// `Σ_k (−1)^k dim C_k(t) = Σ_k (−1)^k dim H_k(t)` for every `t`.
    pub fn euler_consistent(&self, entries: &[TorEntry]) -> bool {
        let n = self.n();
        (0..=self.cutoff).all(|t| {
            let mut chi_c: i64 = 0;
            let mut chi_h: i64 = 0;
            for k in 0..=n {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let s = t as i64 - k as i64;
                if s >= 0 {
                    chi_c += sign * (binomial(n, k) * self.module[s as usize].len()) as i64;
                }
                chi_h += sign * entries[k].dims_by_degree[t as usize] as i64;
            }
            chi_c == chi_h
        })
    }
}

/// `(E_i)_p` of a homogeneous foliation, up to internal degree `cutoff`.
pub fn tor_fiber(f: &Foliation, i: usize, cutoff: u32) -> Result<TorEntry, TorError> {
    TorComplex::new(f, cutoff)?.entry(i)
}

/// All fibers `i = 0..=n` with the involutivity and Euler-characteristic checks.
pub fn tor_report(f: &Foliation, cutoff: u32) -> Result<TorReport, TorError> {
    let c = TorComplex::new(f, cutoff)?;
    let entries = (0..=f.dim()).map(|i| c.entry(i)).collect::<Result<Vec<_>, _>>()?;
    let euler_consistent = c.euler_consistent(&entries);
    Ok(TorReport { dim: f.dim(), cutoff, involutivity: f.involutivity()?, entries, euler_consistent })
}
