use std::cmp::Ordering;

/// Exponent vector over a [`crate::VarTable`]. Ordered graded-lexicographically:
/// total degree first, then lexicographic with earlier variables heavier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    total: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            total: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let total = exps.iter().map(|&e| e as u32).sum();
        Monomial { total, exps }
    }

    pub fn var(nvars: usize, var: usize, exp: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = exp;
        Monomial {
            total: exp as u32,
            exps,
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            total: self.total + other.total,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Monomial {
            total: other.total - self.total,
            exps,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn with_exponent(&self, var: usize, exp: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] = exp;
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(3, 0, 1);
        let x2 = Monomial::var(3, 1, 1);
        let x3sq = Monomial::var(3, 2, 2);
        assert!(x1 > x2);
        assert!(x3sq > x1);
        assert!(Monomial::one(3) < x2);
    }
}
