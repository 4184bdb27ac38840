//! Exact linear algebra: nullspaces by row reduction.

use crate::error::{Error, Result};
use crate::field::Field;

/// Incremental row echelon form. Rows are reduced against the existing pivot
/// rows when they are inserted; pivots are the first nonzero column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: vec![], pivots: vec![], pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` against the current pivots (in insertion order).
    pub fn reduce(&self, row: &mut [F::Elem]) {
        let f = &self.field;
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for j in pc..self.ncols {
                if !f.is_zero(&r[j]) {
                    let t = f.mul(&c, &r[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
        }
    }

    /// Insert a row; returns true if the rank grew.
    pub fn insert(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.ncols);
        self.reduce(&mut row);
        let f = &self.field;
        let Some(pc) = row.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&row[pc]).unwrap();
        for c in row.iter_mut().skip(pc) {
            *c = f.mul(c, &inv);
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.pivots.push(pc);
        self.rows.push(row);
        true
    }

    /// Basis of the right nullspace, one vector per free column in
    /// increasing column order, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let rr = self.reduced_rows();
        let mut out = vec![];
        for c in 0..self.ncols {
            if self.pivot_row[c].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.ncols];
            v[c] = f.one();
            for (row, &pc) in rr.iter().zip(&self.pivots) {
                v[pc] = f.neg(&row[c]);
            }
            out.push(v);
        }
        out
    }

    /// Fully reduced rows (zeros above and below every pivot).
    fn reduced_rows(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            for j in i + 1..rows.len() {
                let pc = self.pivots[j];
                if f.is_zero(&rows[i][pc]) {
                    continue;
                }
                let c = rows[i][pc].clone();
                let (head, tail) = rows.split_at_mut(j);
                let rj = &tail[0];
                for k in pc..self.ncols {
                    if !f.is_zero(&rj[k]) {
                        let t = f.mul(&c, &rj[k]);
                        head[i][k] = f.sub(&head[i][k], &t);
                    }
                }
            }
        }
        rows
    }
}

/// Right nullspace of a matrix given as rows.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = rows[0].len();
    let mut e = Echelon::new(field.clone(), n);
    for r in rows {
        if r.len() != n {
            return Err(Error::invalid("ragged matrix"));
        }
        e.insert(r.clone());
    }
    Ok(e.nullspace())
}

/// Canonical basis of the span of `vectors`: reduced echelon form of the
/// vectors taken as rows, normalised so each leads with 1.
pub fn canonical_basis<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return vec![];
    }
    let n = vectors[0].len();
    let mut e = Echelon::new(field.clone(), n);
    for v in vectors {
        e.insert(v.clone());
    }
    e.reduced_rows()
}

/// Solve M·u = rhs. Returns one solution (free variables set to zero) and
/// the dimension of the homogeneous solution space, or None if inconsistent.
pub fn solve<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    rhs: &[F::Elem],
) -> Result<Option<(Vec<F::Elem>, usize)>> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = rows[0].len();
    let mut e = Echelon::new(field.clone(), n + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut row = r.clone();
        row.push(field.neg(b));
        e.insert(row);
    }
    // the augmented column must not carry a pivot
    if e.pivot_row[n].is_some() {
        return Ok(None);
    }
    let rr = e.reduced_rows();
    let mut u = vec![field.zero(); n];
    for (row, &pc) in rr.iter().zip(&e.pivots) {
        u[pc] = field.neg(&row[n]);
    }
    Ok(Some((u, n - e.rank())))
}

pub fn mat_vec<F: Field>(field: &F, rows: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|r| {
            r.iter().zip(v).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        })
        .collect()
}
