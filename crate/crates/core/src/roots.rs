//! Elements of the positive root lattice and their color sequences.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::{CoreError, Quiver, Result};

/// Default refusal threshold for sequence enumeration.
pub const DEFAULT_HEIGHT_CAP: usize = 8;

/// A sequence `nu = (nu_1, ..., nu_m)` of vertex indices.
pub type ColorSequence = Vec<usize>;

/// `alpha = sum_i k_i alpha_i`, one coefficient per vertex of the quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    coeffs: Vec<usize>,
}

impl RootVector {
    pub fn new(coeffs: Vec<usize>) -> Self {
        RootVector { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        RootVector { coeffs: vec![0; n] }
    }

    /// `k * alpha_i` in a lattice with `n` simple roots.
    pub fn simple_multiple(n: usize, i: usize, k: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = k;
        RootVector { coeffs }
    }

    /// Parse `{"i":2,"j":1}` or the compact sum `2i+j` against the vertex
    /// names of `q`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let text = text.trim();
        if !text.starts_with('{') {
            return Self::parse_sum(q, text);
        }
        let map: BTreeMap<String, usize> =
            serde_json::from_str(text).map_err(|e| CoreError::Syntax {
                line: e.line(),
                column: e.column(),
                msg: e.to_string(),
            })?;
        Self::from_map(q, &map)
    }

    fn parse_sum(q: &Quiver, text: &str) -> Result<Self> {
        let mut coeffs = vec![0; q.vertex_count()];
        for part in text.split('+') {
            let part = part.trim();
            let split = part.find(|c: char| !c.is_ascii_digit()).unwrap_or(part.len());
            let (digits, name) = part.split_at(split);
            let k = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| CoreError::Invalid {
                    location: "alpha".into(),
                    msg: format!("bad coefficient in `{part}`"),
                })?
            };
            let name = name.trim_start_matches('*').trim();
            if name.is_empty() {
                return Err(CoreError::Invalid {
                    location: "alpha".into(),
                    msg: format!("missing vertex in `{part}`"),
                });
            }
            coeffs[q.vertex_index(name)?] += k;
        }
        Ok(RootVector { coeffs })
    }

    pub fn from_map(q: &Quiver, map: &BTreeMap<String, usize>) -> Result<Self> {
        let mut coeffs = vec![0; q.vertex_count()];
        for (name, &k) in map {
            coeffs[q.vertex_index(name)?] += k;
        }
        Ok(RootVector { coeffs })
    }

    /// The multiset of colors of `nu`.
    pub fn of_sequence(n: usize, nu: &[usize]) -> Self {
        let mut coeffs = vec![0; n];
        for &c in nu {
            coeffs[c] += 1;
        }
        RootVector { coeffs }
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn height(&self) -> usize {
        self.coeffs.iter().sum()
    }

    pub fn to_map(&self, q: &Quiver) -> BTreeMap<String, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (q.vertex_name(i).to_string(), k))
            .collect()
    }

    /// The lexicographically smallest sequence in `I^alpha`.
    pub fn base_sequence(&self) -> ColorSequence {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }

    pub fn contains(&self, nu: &[usize]) -> bool {
        nu.iter().all(|&c| c < self.coeffs.len())
            && Self::of_sequence(self.coeffs.len(), nu) == *self
    }

    pub fn check(&self, nu: &[usize]) -> Result<()> {
        if nu.len() != self.height() {
            return Err(CoreError::LengthMismatch {
                expected: self.height(),
                got: nu.len(),
            });
        }
        if self.contains(nu) {
            Ok(())
        } else {
            Err(CoreError::NotInClass)
        }
    }

    /// `|I^alpha| = m! / prod k_i!`.
    pub fn multinomial(&self) -> u128 {
        let mut out: u128 = 1;
        let mut n: u128 = 0;
        for &k in &self.coeffs {
            for j in 1..=k as u128 {
                n += 1;
                out = out * n / j;
            }
        }
        out
    }

    /// `I^alpha` in lexicographic order, refusing heights above `cap`.
    pub fn sequences(&self, cap: usize) -> Result<Vec<ColorSequence>> {
        let m = self.height();
        if m > cap {
            return Err(CoreError::HeightCap { height: m, cap });
        }
        let mut out = Vec::new();
        let mut remaining = self.coeffs.clone();
        let mut cur = Vec::with_capacity(m);
        fn rec(
            remaining: &mut [usize],
            cur: &mut Vec<usize>,
            m: usize,
            out: &mut Vec<ColorSequence>,
        ) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    cur.push(i);
                    rec(remaining, cur, m, out);
                    cur.pop();
                    remaining[i] += 1;
                }
            }
        }
        rec(&mut remaining, &mut cur, m, &mut out);
        Ok(out)
    }

    /// All nonzero root vectors of height at most `max_height`, by height
    /// then lexicographically.
    pub fn all_up_to(n: usize, max_height: usize) -> Vec<RootVector> {
        let mut out = Vec::new();
        for h in 1..=max_height {
            let mut cur = vec![0; n];
            fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<RootVector>) {
                if i + 1 == cur.len() {
                    cur[i] = left;
                    out.push(RootVector::new(cur.clone()));
                    return;
                }
                for k in (0..=left).rev() {
                    cur[i] = k;
                    rec(i + 1, left - k, cur, out);
                }
                cur[i] = 0;
            }
            rec(0, h, &mut cur, &mut out);
        }
        out
    }
}

/// Serialisable form of a color sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct NamedSequence(pub Vec<String>);

pub fn name_sequence(q: &Quiver, nu: &[usize]) -> NamedSequence {
    NamedSequence(nu.iter().map(|&c| q.vertex_name(c).to_string()).collect())
}

pub fn parse_sequence(q: &Quiver, names: &[String]) -> Result<ColorSequence> {
    names.iter().map(|n| q.vertex_index(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_examples() {
        let a = RootVector::new(vec![1, 1]);
        assert_eq!(a.sequences(8).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let b = RootVector::new(vec![2]);
        assert_eq!(b.sequences(8).unwrap(), vec![vec![0, 0]]);
        let c = RootVector::new(vec![2, 1]);
        assert_eq!(c.sequences(8).unwrap().len(), 3);
        assert_eq!(c.multinomial(), 3);
        assert!(matches!(
            RootVector::new(vec![9]).sequences(8),
            Err(CoreError::HeightCap { height: 9, cap: 8 })
        ));
    }

    #[test]
    fn base_is_lexicographically_first() {
        let a = RootVector::new(vec![1, 2, 1]);
        assert_eq!(a.base_sequence(), a.sequences(8).unwrap()[0]);
    }

    #[test]
    fn roots_up_to_height() {
        let all = RootVector::all_up_to(2, 2);
        assert_eq!(
            all,
            vec![
                RootVector::new(vec![1, 0]),
                RootVector::new(vec![0, 1]),
                RootVector::new(vec![2, 0]),
                RootVector::new(vec![1, 1]),
                RootVector::new(vec![0, 2]),
            ]
        );
    }

    #[test]
    fn compact_sum_syntax() {
        let q = crate::corpus::quiver("a2").unwrap();
        assert_eq!(RootVector::parse(&q, "2i+j").unwrap().coeffs(), &[2, 1]);
        assert_eq!(RootVector::parse(&q, " i + 3*j ").unwrap().coeffs(), &[1, 3]);
        assert_eq!(RootVector::parse(&q, r#"{"j":2}"#).unwrap().coeffs(), &[0, 2]);
        assert!(RootVector::parse(&q, "2").is_err());
        assert!(RootVector::parse(&q, "k").is_err());
    }
}
