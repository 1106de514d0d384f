//! Permutations of `{1..m}` in one-line notation, reduced words and the
//! Bruhat order.
//!
//! Internally a permutation stores 0-based images: `w.image(k) = w(k+1) - 1`.
//! Simple transpositions `s_j` are indexed from 1 as usual.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::{CoreError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m).collect())
    }

    /// From 0-based images; panics if not a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    /// From 1-based one-line notation `[w(1), ..., w(m)]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m];
        let mut images = Vec::with_capacity(m);
        for &v in one_line {
            if v == 0 || v > m || seen[v - 1] {
                return Err(CoreError::Invalid {
                    location: "permutation".into(),
                    msg: format!("{one_line:?} is not a permutation of 1..={m}"),
                });
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Perm(images))
    }

    /// `s_j` in `S_m`, 1-based `j`.
    pub fn simple(m: usize, j: usize) -> Self {
        assert!(j >= 1 && j < m, "s_{j} undefined in S_{m}");
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(j - 1, j);
        Perm(images)
    }

    /// Product `s_{j_1} s_{j_2} ... s_{j_l}`.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut w = Perm::identity(m);
        for &j in word {
            w = w.mul_simple_right(j);
        }
        w
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.size(), other.size());
        Perm(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.size()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Perm(inv)
    }

    /// `w s_j`: swap the entries in positions `j` and `j+1`.
    pub fn mul_simple_right(&self, j: usize) -> Perm {
        let mut images = self.0.clone();
        images.swap(j - 1, j);
        Perm(images)
    }

    /// `s_j w`: swap the values `j` and `j+1`.
    pub fn mul_simple_left(&self, j: usize) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&v| {
                    if v == j - 1 {
                        j
                    } else if v == j {
                        j - 1
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.size();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.0[a] > self.0[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `s_j w < w`, i.e. `w^{-1}(j) > w^{-1}(j+1)`.
    pub fn has_left_descent(&self, j: usize) -> bool {
        let inv = self.inverse();
        inv.0[j - 1] > inv.0[j]
    }

    /// Whether `w s_j < w`, i.e. `w(j) > w(j+1)`.
    pub fn has_right_descent(&self, j: usize) -> bool {
        self.0[j - 1] > self.0[j]
    }

    /// The lexicographically smallest reduced word `(j_1, ..., j_l)` with
    /// `w = s_{j_1} ... s_{j_l}`.
    pub fn canonical_reduced_word(&self) -> Vec<usize> {
        let m = self.size();
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let j = (1..m)
                .find(|&j| w.has_left_descent(j))
                .expect("non-identity permutation has a descent");
            word.push(j);
            w = w.mul_simple_left(j);
        }
        word
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        let m = self.size();
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in 1..m {
            if self.has_left_descent(j) {
                for mut tail in self.mul_simple_left(j).reduced_words() {
                    tail.insert(0, j);
                    out.push(tail);
                }
            }
        }
        out
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_le(&self, other: &Perm) -> bool {
        assert_eq!(self.size(), other.size());
        let n = self.size();
        for k in 1..n {
            let mut a: Vec<usize> = self.0[..k].to_vec();
            let mut b: Vec<usize> = other.0[..k].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// All permutations of `S_m` in lexicographic order of one-line notation.
    pub fn all(m: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The left action on sequences: `(w nu)_k = nu_{w^{-1}(k)}`.
    pub fn act<T: Clone>(&self, nu: &[T]) -> Result<Vec<T>> {
        if nu.len() != self.size() {
            return Err(CoreError::LengthMismatch {
                expected: self.size(),
                got: nu.len(),
            });
        }
        let mut out = nu.to_vec();
        for (k, &wk) in self.0.iter().enumerate() {
            out[wk] = nu[k].clone();
        }
        Ok(out)
    }

    /// `nu_w = (base_{w(1)}, ..., base_{w(m)})`, the colors seen at the
    /// fixed point indexed by `w`.
    pub fn pull<T: Clone>(&self, base: &[T]) -> Vec<T> {
        self.0.iter().map(|&k| base[k].clone()).collect()
    }
}

/// `s_t nu` for 1-based `t`.
pub fn swap_colors<T: Clone>(nu: &[T], t: usize) -> Vec<T> {
    let mut out = nu.to_vec();
    out.swap(t - 1, t);
    out
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.one_line().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn action_examples() {
        let nu = names(&["i", "j", "k"]);
        assert_eq!(Perm::simple(3, 1).act(&nu).unwrap(), names(&["j", "i", "k"]));
        assert_eq!(Perm::identity(3).act(&nu).unwrap(), nu);
        // The cycle 1 -> 2 -> 3 -> 1.
        let c = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(c.act(&nu).unwrap(), names(&["k", "i", "j"]));
        assert!(c.act(&nu[..2]).is_err());
    }

    #[test]
    fn canonical_words() {
        let w0 = Perm::from_one_line(&[3, 2, 1]).unwrap();
        assert_eq!(w0.canonical_reduced_word(), vec![1, 2, 1]);
        assert_eq!(w0.reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        for w in Perm::all(4) {
            let word = w.canonical_reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(4, &word), w);
        }
    }

    #[test]
    fn all_perms_sorted_and_complete() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn bruhat_examples() {
        let e = Perm::identity(3);
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        let w0 = Perm::from_one_line(&[3, 2, 1]).unwrap();
        assert!(e.bruhat_le(&s1));
        assert!(!s1.bruhat_le(&s2));
        assert!(s1.bruhat_le(&w0) && s2.bruhat_le(&w0));
        assert!(!w0.bruhat_le(&s1));
    }

    #[test]
    fn simple_multiplications() {
        let w = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(w.mul_simple_right(1), w.compose(&Perm::simple(3, 1)));
        assert_eq!(w.mul_simple_left(1), Perm::simple(3, 1).compose(&w));
    }
}
