//! Permutations in one-line notation.
//!
//! A [`Permutation`] of size `s` stores the image sequence `sigma(1), ...,
//! sigma(s)` with 1-based entries, matching the routing data of canonical
//! factorizations. Composition follows `(sigma o tau)(i) = sigma(tau(i))`,
//! so `compose` applies its right argument first, in step with morphism
//! composition elsewhere in this crate.

use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line notation must list each of 1..={size} exactly once")]
    NotBijective { size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(s: usize) -> Self {
        Permutation {
            map: (1..=s).collect(),
        }
    }

    /// Build from one-line notation `[sigma(1), ..., sigma(s)]`, 1-based.
    pub fn from_one_line(map: Vec<usize>) -> Result<Self, PermError> {
        let s = map.len();
        let mut seen = vec![false; s];
        for &v in &map {
            if v == 0 || v > s || seen[v - 1] {
                return Err(PermError::NotBijective { size: s });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { map })
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    /// Image of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// `(self o other)(i) = self(other(i))`; `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.size(),
            other.size(),
            "composing permutations of different sizes"
        );
        Permutation {
            map: other.map.iter().map(|&v| self.map[v - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (k, &v) in self.map.iter().enumerate() {
            map[v - 1] = k + 1;
        }
        Permutation { map }
    }

    /// Bubble-sort decomposition into adjacent transpositions.
    ///
    /// Returns swap positions `i` (meaning the transposition of `i` and
    /// `i+1`, 1-based) such that applying them in list order, first entry
    /// first, composes to `self`.
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        let mut swaps = Vec::new();
        let s = v.len();
        loop {
            let mut swapped = false;
            for i in 0..s.saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    swaps.push(i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let id = Permutation::identity(4);
        assert!(id.is_identity());
        assert_eq!(id.one_line(), &[1, 2, 3, 4]);
    }

    #[test]
    fn from_one_line_rejects_duplicates_and_range() {
        assert!(Permutation::from_one_line(vec![1, 1]).is_err());
        assert!(Permutation::from_one_line(vec![0, 2]).is_err());
        assert!(Permutation::from_one_line(vec![1, 3]).is_err());
        assert!(Permutation::from_one_line(vec![]).is_ok());
    }

    #[test]
    fn compose_applies_right_first() {
        // sigma = [2,3,1], tau = [2,1,3]: (sigma o tau)(1) = sigma(2) = 3.
        let sigma = perm(&[2, 3, 1]);
        let tau = perm(&[2, 1, 3]);
        assert_eq!(sigma.compose(&tau).one_line(), &[3, 2, 1]);
    }

    #[test]
    fn inverse_gives_identity_both_ways() {
        let sigma = perm(&[3, 1, 4, 2]);
        assert!(sigma.compose(&sigma.inverse()).is_identity());
        assert!(sigma.inverse().compose(&sigma).is_identity());
    }

    #[test]
    fn transpositions_compose_back_to_self() {
        for one_line in [
            vec![],
            vec![1],
            vec![2, 1],
            vec![2, 3, 1],
            vec![3, 1, 4, 2],
            vec![5, 4, 3, 2, 1],
        ] {
            let sigma = Permutation::from_one_line(one_line).unwrap();
            let mut acc = Permutation::identity(sigma.size());
            for i in sigma.adjacent_transpositions() {
                let mut t = Permutation::identity(sigma.size());
                t.map.swap(i - 1, i);
                // Applied in list order: first swap acts first.
                acc = t.compose(&acc);
            }
            assert_eq!(acc, sigma);
        }
    }

    #[test]
    fn display_is_compact_one_line() {
        assert_eq!(perm(&[2, 1]).to_string(), "[2,1]");
        assert_eq!(Permutation::identity(0).to_string(), "[]");
    }
}
