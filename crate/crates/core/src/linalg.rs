//! Incremental row echelon form over `F_p`, used for ranks of spans.

use std::collections::BTreeMap;

use klr_poly::Fp;

/// A basis of the span of the vectors inserted so far, kept in reduced
/// echelon form keyed by pivot column.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    len: usize,
    rows: BTreeMap<usize, Vec<Fp>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    fn reduce(&self, v: &mut [Fp]) {
        for (&p, row) in &self.rows {
            let c = v[p];
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = *x - c * *r;
                }
            }
        }
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[Fp]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Fp]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = *x * inv;
        }
        for row in self.rows.values_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (r, x) in row.iter_mut().zip(&v) {
                    *r = *r - c * *x;
                }
            }
        }
        self.rows.insert(p, v);
        true
    }
}
