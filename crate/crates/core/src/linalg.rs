//! Exact sparse linear algebra over ℚ.
//!
//! Ranks come from a fraction-free echelon form (rows are kept primitive
//! integer vectors). Kernels, solutions and inverses go through the reduced
//! row echelon form, whose leftmost-pivot basis is canonical.

use std::collections::BTreeMap;
use std::fmt;

use crate::multilinear::Rational;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector { entries: Vec::new() }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            *m.entry(i).or_default() += &v;
        }
        SparseVector { entries: m.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVector {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVector { entries: vec![(i, Rational::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// `ca · a + cb · b`.
    pub fn combine(a: &SparseVector, ca: &Rational, b: &SparseVector, cb: &Rational) -> SparseVector {
        let mut out = Vec::with_capacity(a.entries.len() + b.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < a.entries.len() || j < b.entries.len() {
            let ai = a.entries.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let bj = b.entries.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ai < bj {
                let v = ca * &a.entries[i].1;
                if !v.is_zero() {
                    out.push((ai, v));
                }
                i += 1;
            } else if bj < ai {
                let v = cb * &b.entries[j].1;
                if !v.is_zero() {
                    out.push((bj, v));
                }
                j += 1;
            } else {
                let v = &(ca * &a.entries[i].1) + &(cb * &b.entries[j].1);
                if !v.is_zero() {
                    out.push((ai, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        Self::combine(self, &Rational::one(), other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        Self::combine(self, &Rational::one(), other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> SparseVector {
        if c.is_zero() {
            return SparseVector::new();
        }
        SparseVector { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (mut i, mut j) = (0, 0);
        let mut acc = Rational::zero();
        while i < self.entries.len() && j < other.entries.len() {
            match self.entries[i].0.cmp(&other.entries[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&self.entries[i].1 * &other.entries[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Scales to a primitive integer vector with positive leading entry.
    fn make_primitive(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut l = Rational::one();
        for (_, v) in &self.entries {
            l = l.lcm_with_denom(v);
        }
        if !l.is_one() {
            for (_, v) in &mut self.entries {
                *v *= &l;
            }
        }
        let mut g = Rational::zero();
        for (_, v) in &self.entries {
            g = g.int_gcd(v);
            if g.is_one() {
                break;
            }
        }
        if self.entries[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            let inv = g.recip();
            for (_, v) in &mut self.entries {
                *v *= &inv;
            }
        }
    }

    /// Scales so that the leading entry is 1.
    fn make_monic(&mut self) {
        if let Some((_, lead)) = self.lead() {
            if !lead.is_one() {
                let inv = lead.recip();
                for (_, v) in &mut self.entries {
                    *v *= &inv;
                }
            }
        }
    }

    /// Reindexes through `f`, which must be strictly increasing on the support.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVector {
        SparseVector { entries: self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect() }
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Incremental row echelon form keyed by leading column.
///
/// Rows are stored as primitive integer vectors and only the leading entry is
/// eliminated on insertion (fraction-free: `p_c · v − v_c · p`).
#[derive(Clone, Default, Debug)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_leading(&self, mut v: SparseVector) -> SparseVector {
        v.make_primitive();
        while let Some((c, vc)) = v.lead() {
            let Some(p) = self.pivots.get(&c) else { break };
            let pc = p.entries[0].1.clone();
            let vc = vc.clone();
            v = SparseVector::combine(&v, &pc, p, &-vc);
            v.make_primitive();
        }
        v
    }

    /// Inserts `v`; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: SparseVector) -> Option<usize> {
        let r = self.reduce_leading(v);
        let (c, _) = r.lead()?;
        self.pivots.insert(c, r);
        Some(c)
    }

    /// Whether `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Full remainder of `v` modulo the span, up to a nonzero scalar.
    pub fn remainder(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        let mut start = 0usize;
        loop {
            let next = v
                .entries
                .iter()
                .map(|e| e.0)
                .filter(|&c| c >= start)
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let p = &self.pivots[&c];
            let f = &v.get(c) / &p.entries[0].1;
            v = SparseVector::combine(&v, &Rational::one(), p, &-f);
            start = c + 1;
        }
        v
    }

    /// Reduced row echelon rows (monic leads), sorted by pivot column.
    pub fn into_rref(self) -> Vec<SparseVector> {
        let mut done: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for (c, mut row) in self.pivots.into_iter().rev() {
            row.make_monic();
            // eliminate later pivot columns from this row
            let cols: Vec<usize> = row.entries.iter().skip(1).map(|e| e.0).filter(|k| done.contains_key(k)).collect();
            for k in cols {
                let f = row.get(k);
                if !f.is_zero() {
                    row = SparseVector::combine(&row, &Rational::one(), &done[&k], &-f);
                }
            }
            done.insert(c, row);
        }
        done.into_values().collect()
    }
}

/// Exact rational matrix stored as sparse rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![SparseVector::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix { rows: n, cols: n, data: (0..n).map(SparseVector::unit).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.entries.last().is_none_or(|e| e.0 < cols)));
        RationalMatrix { rows: rows.len(), cols, data: rows }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in &col.entries {
                buckets[*i].push((j, v.clone()));
            }
        }
        RationalMatrix {
            rows,
            cols: columns.len(),
            data: buckets.into_iter().map(|entries| SparseVector { entries }).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVector::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let row = &mut self.data[i].entries;
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVector::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVector::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn columns(&self) -> Vec<SparseVector> {
        self.transpose().data
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in &r.entries {
                buckets[*j].push((i, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(|entries| SparseVector { entries }).collect(),
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in &r.entries {
                    for (j, b) in &other.data[*k].entries {
                        *acc.entry(*j).or_default() += &(a * b);
                    }
                }
                SparseVector { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
            })
            .collect();
        RationalMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        SparseVector {
            entries: self
                .data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &RationalMatrix, c: &Rational) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| SparseVector::combine(a, &Rational::one(), b, c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == RationalMatrix::identity(self.rows)
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.data {
            if !r.is_zero() {
                e.insert(r.clone());
            }
        }
        e
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows <= self.cols {
            self.echelon().rank()
        } else {
            self.transpose().echelon().rank()
        }
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<SparseVector>, Vec<usize>) {
        let rows = self.echelon().into_rref();
        let pivots = rows.iter().map(|r| r.entries[0].0).collect();
        (rows, pivots)
    }

    /// Canonical kernel basis: one vector per free column, read off the RREF.
    pub fn kernel(&self) -> Vec<SparseVector> {
        let (rows, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        // column -> [(pivot column, entry)]
        let mut by_col: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (r, &p) in rows.iter().zip(&pivots) {
            for (j, v) in r.entries.iter().skip(1) {
                by_col.entry(*j).or_default().push((p, v.clone()));
            }
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let pairs = by_col
                    .get(&f)
                    .into_iter()
                    .flatten()
                    .map(|(p, v)| (*p, -v.clone()))
                    .chain(std::iter::once((f, Rational::one())));
                SparseVector::from_pairs(pairs)
            })
            .collect()
    }

    /// Some `x` with `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &SparseVector) -> Option<SparseVector> {
        let aug = self.augment_column(b);
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        Some(SparseVector::from_pairs(
            rows.iter().zip(&pivots).map(|(r, &p)| (p, r.get(self.cols))),
        ))
    }

    fn augment_column(&self, b: &SparseVector) -> RationalMatrix {
        let mut m = self.clone();
        m.cols += 1;
        for (i, v) in &b.entries {
            m.data[*i].entries.push((self.cols, v.clone()));
        }
        m
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = RationalMatrix {
            rows: n,
            cols: 2 * n,
            data: self
                .data
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut e = r.entries.clone();
                    e.push((n + i, Rational::one()));
                    SparseVector { entries: e }
                })
                .collect(),
        };
        let (rows, pivots) = aug.rref();
        if rows.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RationalMatrix {
            rows: n,
            cols: n,
            data: rows
                .into_iter()
                .map(|r| SparseVector { entries: r.entries.into_iter().filter(|e| e.0 >= n).map(|(j, v)| (j - n, v)).collect() })
                .collect(),
        })
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_columns(&self, idx: &[usize]) -> RationalMatrix {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        RationalMatrix {
            rows: self.rows,
            cols: idx.len(),
            data: self
                .data
                .iter()
                .map(|r| {
                    SparseVector::from_pairs(
                        r.entries.iter().filter_map(|(j, v)| pos.get(j).map(|&k| (k, v.clone()))),
                    )
                })
                .collect(),
        }
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.to_dense();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            let inv = piv.recip();
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= &t;
                }
            }
        }
        det
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for r in &self.data {
            let row: Vec<String> = r.to_dense(self.cols).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
        assert_eq!(k[0].to_dense(3), vec![q(-1), q(-1), q(1)]);
    }

    #[test]
    fn solve_and_inverse() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let x = m.solve(&SparseVector::from_dense(&[q(3), q(4)])).unwrap();
        assert_eq!(x.to_dense(2), vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.determinant(), q(5));
        let sing = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&SparseVector::from_dense(&[q(1), q(0)])).is_none());
    }

    #[test]
    fn echelon_membership_and_remainder() {
        let mut e = Echelon::new();
        e.insert(SparseVector::from_dense(&[q(1), q(1), q(0)]));
        e.insert(SparseVector::from_dense(&[q(0), q(2), q(2)]));
        assert!(e.contains(&SparseVector::from_dense(&[q(1), q(3), q(2)])));
        assert!(!e.contains(&SparseVector::unit(2)));
        let r = e.remainder(&SparseVector::from_dense(&[q(1), q(1), q(5)]));
        assert_eq!(r, SparseVector::from_dense(&[q(0), q(0), q(5)]));
        assert!(e.remainder(&SparseVector::from_dense(&[q(1), q(6), q(5)])).is_zero());
        let rref = e.into_rref();
        assert_eq!(rref[0].to_dense(3), vec![q(1), q(0), q(-1)]);
        assert_eq!(rref[1].to_dense(3), vec![q(0), q(1), q(1)]);
    }

    #[test]
    fn zero_matrix() {
        let z = RationalMatrix::zeros(3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
    }
}
