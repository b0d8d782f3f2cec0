//! Exact linear algebra over Q(zeta_n): Bareiss rank, an incremental row
//! basis that records how each inserted vector decomposes, and a sparse
//! echelon form used for nullspaces and linear solves.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{CycScalar, CyclotomicField};

/// Rank of a dense matrix by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(matrix: &[Vec<CycScalar>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<CycScalar>> = matrix.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let field = m[0].first().map(|x| x.field().clone());
    let Some(field) = field else { return 0 };
    let mut prev = CycScalar::one(&field);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let prev_inv = prev.inv().expect("nonzero previous pivot");
        for r in rank + 1..rows {
            let factor = m[r][c].clone();
            for j in c..cols {
                let v = &(&pivot * &m[r][j]) - &(&factor * &m[rank][j]);
                m[r][j] = &v * &prev_inv;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank by ordinary Gaussian elimination; an independent oracle for `rank_bareiss`.
pub fn rank_gauss(matrix: &[Vec<CycScalar>]) -> usize {
    let mut basis: Option<IncrementalBasis> = None;
    for row in matrix {
        let b = basis.get_or_insert_with(|| IncrementalBasis::new(row.first().map(|x| x.field().clone()).unwrap(), row.len()));
        b.insert(row);
    }
    basis.map_or(0, |b| b.len())
}

/// Outcome of reducing a vector against an [`IncrementalBasis`].
#[derive(Debug, Clone)]
pub enum Reduction {
    /// The vector is `sum coeffs[k] * basis_vector[k]`.
    Dependent(Vec<CycScalar>),
    /// The vector was independent and became basis vector number `index`.
    Added(usize),
}

/// An echelon basis of a growing set of dense vectors. Each echelon row keeps
/// its expression as a combination of the originally inserted independent vectors.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    field: Arc<CyclotomicField>,
    width: usize,
    rows: Vec<(usize, Vec<CycScalar>, Vec<CycScalar>)>,
    count: usize,
}

impl IncrementalBasis {
    pub fn new(field: Arc<CyclotomicField>, width: usize) -> Self {
        IncrementalBasis { field, width, rows: Vec::new(), count: 0 }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &[CycScalar]) -> (Vec<CycScalar>, Vec<CycScalar>) {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut v = v.to_vec();
        let mut comb = vec![CycScalar::zero(&self.field); self.count];
        for (pc, row, rc) in &self.rows {
            let c = v[*pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row).skip(*pc) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
            for (x, r) in comb.iter_mut().zip(rc) {
                if !r.is_zero() {
                    *x += &(&c * r);
                }
            }
        }
        (v, comb)
    }

    /// Coordinates of `v` in the inserted basis, if it lies in the span.
    pub fn coordinates(&self, v: &[CycScalar]) -> Option<Vec<CycScalar>> {
        let (rest, comb) = self.reduce(v);
        rest.iter().all(CycScalar::is_zero).then_some(comb)
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn insert(&mut self, v: &[CycScalar]) -> Reduction {
        let (rest, comb) = self.reduce(v);
        let Some(pc) = rest.iter().position(|x| !x.is_zero()) else {
            return Reduction::Dependent(comb);
        };
        let inv = rest[pc].inv().expect("nonzero pivot");
        let row: Vec<CycScalar> = rest.iter().map(|x| x * &inv).collect();
        let index = self.count;
        self.count += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(CycScalar::zero(&self.field));
        }
        // rest = v - sum comb_k b_k, so the new row is (e_index - comb) / pivot
        let mut rc: Vec<CycScalar> = comb.iter().map(|c| -&(c * &inv)).collect();
        rc.push(inv);
        // keep rows sorted by pivot column so reduction stays triangular
        let pos = self.rows.partition_point(|(p, _, _)| *p < pc);
        self.rows.insert(pos, (pc, row, rc));
        Reduction::Added(index)
    }
}

pub type SparseRow = BTreeMap<usize, CycScalar>;

fn axpy(target: &mut SparseRow, c: &CycScalar, row: &SparseRow) {
    for (k, v) in row {
        let add = c * v;
        match target.get_mut(k) {
            Some(x) => {
                *x += &add;
                if x.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(*k, add);
                }
            }
        }
    }
}

/// Sparse row echelon form; each stored row is normalized so that its
/// leading (smallest) column has coefficient 1.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut from = 0usize;
        loop {
            let next = row.range(from..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(c) = next else { return row };
            let coeff = row[&c].clone();
            axpy(&mut row, &-&coeff, &self.rows[&c]);
            from = c + 1;
        }
    }

    /// Adds a row; returns its new pivot column, or `None` if it was dependent.
    pub fn add_row(&mut self, row: SparseRow) -> Option<usize> {
        debug_assert!(row.keys().all(|&k| k < self.ncols));
        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let reduced = self.reduce(row);
        let (&pc, lead) = reduced.iter().next()?;
        let inv = lead.inv().expect("nonzero lead");
        let normalized = reduced.iter().map(|(k, v)| (*k, v * &inv)).collect();
        self.rows.insert(pc, normalized);
        Some(pc)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Brings the form to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(c) = row.get(&p).cloned() {
                    axpy(row, &-&c, &prow);
                }
            }
        }
    }

    /// Basis of {x : A x = 0}; requires reduced form. Vectors are sparse over columns.
    pub fn nullspace(&self, field: &Arc<CyclotomicField>) -> Vec<SparseRow> {
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(f, CycScalar::one(field));
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    v.insert(*p, -c);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }
}

/// Solves A x = b where `rows` are (sparse row of A, b entry). Returns the
/// solution with all free variables set to zero and the kernel dimension.
pub fn solve_sparse(
    field: &Arc<CyclotomicField>,
    ncols: usize,
    rows: impl IntoIterator<Item = (SparseRow, CycScalar)>,
) -> Result<(Vec<CycScalar>, usize)> {
    let rhs_col = ncols;
    let mut ech = SparseEchelon::new(ncols + 1);
    for (mut row, b) in rows {
        if !b.is_zero() {
            row.insert(rhs_col, b);
        }
        if ech.add_row(row) == Some(rhs_col) {
            return Err(Error::NoSolution("inconsistent linear system".into()));
        }
    }
    ech.make_reduced();
    let mut x = vec![CycScalar::zero(field); ncols];
    for (p, row) in ech.rows() {
        if let Some(b) = row.get(&rhs_col) {
            x[*p] = b.clone();
        }
    }
    let kernel = ncols - ech.rank();
    Ok((x, kernel))
}

/// Dense rank-revealing helper: the rank of the span of `vectors`.
pub fn span_rank(field: &Arc<CyclotomicField>, width: usize, vectors: &[Vec<CycScalar>]) -> usize {
    let mut b = IncrementalBasis::new(field.clone(), width);
    for v in vectors {
        b.insert(v);
    }
    b.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<CyclotomicField> {
        CyclotomicField::get(3).unwrap()
    }

    fn s(x: &str) -> CycScalar {
        CycScalar::parse(&f(), x).unwrap()
    }

    #[test]
    fn bareiss_examples() {
        let m = vec![vec![s("1"), s("z")], vec![s("z"), s("z^2")]];
        assert_eq!(rank_bareiss(&m), 1);
        let m = vec![vec![s("1"), s("z")], vec![s("z"), s("1")]];
        assert_eq!(rank_bareiss(&m), 2);
        let m = vec![vec![s("0"), s("0")], vec![s("0"), s("0")]];
        assert_eq!(rank_bareiss(&m), 0);
        let m = vec![vec![s("0"), s("1"), s("2")], vec![s("0"), s("2"), s("4")], vec![s("1"), s("0"), s("z")]];
        assert_eq!(rank_bareiss(&m), 2);
        assert_eq!(rank_gauss(&m), 2);
    }

    #[test]
    fn incremental_coordinates() {
        let mut b = IncrementalBasis::new(f(), 3);
        let v0 = vec![s("1"), s("z"), s("0")];
        let v1 = vec![s("0"), s("1"), s("1")];
        assert!(matches!(b.insert(&v0), Reduction::Added(0)));
        assert!(matches!(b.insert(&v1), Reduction::Added(1)));
        let w: Vec<CycScalar> = v0.iter().zip(&v1).map(|(a, c)| &(a * &s("2")) - &(c * &s("z"))).collect();
        match b.insert(&w) {
            Reduction::Dependent(c) => {
                assert_eq!(c, vec![s("2"), s("-z")]);
            }
            Reduction::Added(_) => panic!("should be dependent"),
        }
        assert!(!b.contains(&[s("0"), s("0"), s("1")]));
    }

    #[test]
    fn sparse_nullspace_and_solve() {
        let row = |pairs: &[(usize, &str)]| -> SparseRow { pairs.iter().map(|(k, v)| (*k, s(v))).collect() };
        let mut e = SparseEchelon::new(3);
        e.add_row(row(&[(0, "1"), (1, "1")]));
        e.add_row(row(&[(1, "1"), (2, "z")]));
        e.make_reduced();
        let ns = e.nullspace(&f());
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // x0 + x1 = 0, x1 + z x2 = 0 with x2 = 1
        assert_eq!(v[&2], s("1"));
        assert_eq!(v[&1], s("-z"));
        assert_eq!(v[&0], s("z"));

        let (x, k) = solve_sparse(&f(), 2, vec![(row(&[(0, "1"), (1, "1")]), s("3")), (row(&[(0, "1")]), s("1"))]).unwrap();
        assert_eq!(k, 0);
        assert_eq!(x, vec![s("1"), s("2")]);
        let bad = solve_sparse(&f(), 1, vec![(row(&[(0, "1")]), s("1")), (row(&[(0, "2")]), s("1"))]);
        assert!(bad.is_err());
    }
}
