use std::collections::BTreeMap;

use klr_poly::Scalar;

/// A square sparse matrix stored by columns. Rows and columns are indexed
/// by the position of a permutation in the lexicographic enumeration of
/// `S_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<S> {
    dim: usize,
    cols: Vec<BTreeMap<usize, S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize, one: S) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.cols[i].insert(i, one.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        if value.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &S) {
        let slot = &mut self.cols[col];
        match slot.get_mut(&row) {
            Some(v) => {
                let s = v.add(value);
                if s.is_zero() {
                    slot.remove(&row);
                } else {
                    *v = s;
                }
            }
            None => {
                if !value.is_zero() {
                    slot.insert(row, value.clone());
                }
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&S> {
        self.cols[col].get(&row)
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, S> {
        &self.cols[col]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.dim, other.dim);
        let mut out = SparseMatrix::zero(self.dim);
        for (c, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    out.add_to(*r, c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, &v.neg());
        }
        out
    }

    /// `diag(d) * self`, with `d(row)` computed on demand.
    pub fn scale_rows<E>(
        &self,
        mut d: impl FnMut(usize) -> Result<S, E>,
    ) -> Result<SparseMatrix<S>, E> {
        let mut cache: BTreeMap<usize, S> = BTreeMap::new();
        let mut out = SparseMatrix::zero(self.dim);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                let f = match cache.get(r) {
                    Some(f) => f.clone(),
                    None => {
                        let f = d(*r)?;
                        cache.insert(*r, f.clone());
                        f
                    }
                };
                out.set(*r, c, f.mul(v));
            }
        }
        Ok(out)
    }

    /// Apply to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, S>) -> BTreeMap<usize, S> {
        let mut out: BTreeMap<usize, S> = BTreeMap::new();
        for (k, b) in v {
            for (r, a) in &self.cols[*k] {
                let p = a.mul(b);
                match out.get_mut(r) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        out.insert(*r, p);
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn try_map<T: Scalar, E>(
        &self,
        mut f: impl FnMut(&S) -> Result<T, E>,
    ) -> Result<SparseMatrix<T>, E> {
        let mut out = SparseMatrix::zero(self.dim);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v)?);
        }
        Ok(out)
    }

    /// First `(row, col)` in column-major order where the matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix<S>) -> Option<(usize, usize)> {
        for c in 0..self.dim {
            let a = &self.cols[c];
            let b = &other.cols[c];
            if a == b {
                continue;
            }
            let rows: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            for r in rows {
                if a.get(&r) != b.get(&r) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}
