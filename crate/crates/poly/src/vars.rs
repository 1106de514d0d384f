use std::fmt;

/// The variable alphabet: `x_count` position variables followed by one
/// `hbar` per edge id, in declaration order. Variable index `k < x_count`
/// is `x{k+1}`; index `x_count + a` is `hbar[hbar_ids[a]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    x_count: usize,
    hbar_ids: Vec<String>,
}

impl VarTable {
    pub fn new(x_count: usize, hbar_ids: Vec<String>) -> Self {
        VarTable { x_count, hbar_ids }
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn hbar_ids(&self) -> &[String] {
        &self.hbar_ids
    }

    pub fn hbar_count(&self) -> usize {
        self.hbar_ids.len()
    }

    pub fn len(&self) -> usize {
        self.x_count + self.hbar_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Variable index of `x_k`, 1-based as in the usual notation.
    pub fn x_index(&self, k: usize) -> Option<usize> {
        (1..=self.x_count).contains(&k).then(|| k - 1)
    }

    pub fn hbar_index(&self, id: &str) -> Option<usize> {
        self.hbar_ids
            .iter()
            .position(|h| h == id)
            .map(|p| self.x_count + p)
    }

    pub fn is_x(&self, var: usize) -> bool {
        var < self.x_count
    }

    pub fn name(&self, var: usize) -> String {
        if var < self.x_count {
            format!("x{}", var + 1)
        } else {
            format!("hbar[{}]", self.hbar_ids[var - self.x_count])
        }
    }

    /// Same hbar alphabet with a different number of position variables.
    pub fn with_x_count(&self, x_count: usize) -> Self {
        VarTable {
            x_count,
            hbar_ids: self.hbar_ids.clone(),
        }
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|v| self.name(v)).collect();
        write!(f, "[{}]", names.join(", "))
    }
}
