//! Reduced words in finitely generated free groups.
//!
//! A [`ReducedWord`] is an element of the free group F_n on generators
//! `x1, ..., xn`, stored as a freely reduced sequence of signed letters
//! together with the ambient rank `n`. The rank is part of the value's
//! identity: the letter string `x1` denotes different values at rank 1 and
//! rank 2, because hom-sets of the surrounding categories are rank-indexed
//! and composition preconditions depend on it.
//!
//! Exponents are stored letter by letter as signs rather than run-length
//! powers, so `len()` equals the number of antipode slots the word occupies
//! in a canonical factorization.

use std::fmt;
use thiserror::Error;

/// A single signed generator occurrence, `x_index` or `x_index^-1`.
///
/// The exponent is `(-1)^inv`; `inv` doubles as the e-bit of the antipode
/// layer in canonical factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index.
    pub index: usize,
    /// True for an inverse occurrence.
    pub inv: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, inv: false }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, inv: true }
    }

    /// The same generator with the exponent flipped.
    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inv: !self.inv,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inv != other.inv
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter x{index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("substitution expects {expected} replacement words, got {got}")]
    SubstitutionArity { expected: usize, got: usize },
}

pub type WordResult<T> = Result<T, WordError>;

/// A freely reduced word over generators `x1..x{rank}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

/// Freely reduce `raw` over the given rank.
///
/// Single left-to-right stack pass: each letter either cancels the current
/// top of the stack or is pushed. The result is the unique reduced word
/// representing the same group element, so `reduce` is idempotent.
pub fn reduce(rank: usize, raw: impl IntoIterator<Item = Letter>) -> WordResult<ReducedWord> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in raw {
        if l.index == 0 || l.index > rank {
            return Err(WordError::IndexOutOfRange { index: l.index, rank });
        }
        if stack.last().is_some_and(|top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(ReducedWord {
        rank,
        letters: stack,
    })
}

impl ReducedWord {
    pub fn empty(rank: usize) -> Self {
        ReducedWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The one-letter word `x_index`.
    pub fn generator(rank: usize, index: usize) -> WordResult<Self> {
        reduce(rank, [Letter::pos(index)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of letters; the word's contribution to canonical-form size.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group multiplication: reduced concatenation.
    ///
    /// Both inputs are reduced, so cancellation can only happen at the seam;
    /// we pop from the end of `self` while the head of `other` cancels it.
    pub fn mul(&self, other: &ReducedWord) -> WordResult<ReducedWord> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last().is_some_and(|top| top.cancels(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(ReducedWord {
            rank: self.rank,
            letters,
        })
    }

    /// Group inverse: reversed sequence with flipped signs.
    pub fn inv(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Replace each letter `x_j` by `ws[j]` (inverting where the letter is
    /// inverted) and reduce.
    ///
    /// `rank` is the common rank of the replacement words; it must be passed
    /// explicitly because `ws` may be empty (substitution out of F_0).
    pub fn substitute(&self, ws: &[ReducedWord], rank: usize) -> WordResult<ReducedWord> {
        if ws.len() != self.rank {
            return Err(WordError::SubstitutionArity {
                expected: self.rank,
                got: ws.len(),
            });
        }
        for w in ws {
            if w.rank != rank {
                return Err(WordError::RankMismatch {
                    left: rank,
                    right: w.rank,
                });
            }
        }
        let mut acc = ReducedWord::empty(rank);
        for &l in &self.letters {
            let piece = &ws[l.index - 1];
            let piece = if l.inv { piece.inv() } else { piece.clone() };
            acc = acc.mul(&piece)?;
        }
        Ok(acc)
    }

    /// The same letters viewed at rank `rank + extra` (index-preserving
    /// embedding into a larger free group).
    pub fn pad(&self, extra: usize) -> ReducedWord {
        ReducedWord {
            rank: self.rank + extra,
            letters: self.letters.clone(),
        }
    }

    /// Embed into a larger free group, sending `x_i` to `x_{i+n}`.
    pub fn shift(&self, n: usize) -> ReducedWord {
        ReducedWord {
            rank: self.rank + n,
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    index: l.index + n,
                    inv: l.inv,
                })
                .collect(),
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw(rank: usize, letters: &[(usize, bool)]) -> ReducedWord {
        reduce(rank, letters.iter().map(|&(i, inv)| Letter { index: i, inv })).unwrap()
    }

    #[test]
    fn reduce_cancels_inverse_pair() {
        let w = lw(2, &[(1, false), (1, true)]);
        assert!(w.is_empty());
        assert_eq!(w.rank(), 2);
    }

    #[test]
    fn reduce_cancels_inner_pair() {
        let w = lw(2, &[(1, false), (2, false), (2, true), (1, false)]);
        assert_eq!(w, lw(2, &[(1, false), (1, false)]));
    }

    #[test]
    fn reduce_fixes_reduced_word() {
        let w = lw(3, &[(1, false), (2, true), (3, false)]);
        assert_eq!(w.letters().len(), 3);
        assert_eq!(w.to_string(), "x1 x2^-1 x3");
    }

    #[test]
    fn reduce_handles_nested_cancellation() {
        // x1 x2 x2^-1 x1^-1 collapses completely.
        let w = lw(2, &[(1, false), (2, false), (2, true), (1, true)]);
        assert!(w.is_empty());
    }

    #[test]
    fn reduce_rejects_out_of_range_index() {
        let err = reduce(2, [Letter::pos(3)]).unwrap_err();
        assert_eq!(err, WordError::IndexOutOfRange { index: 3, rank: 2 });
        let err = reduce(2, [Letter::pos(0)]).unwrap_err();
        assert_eq!(err, WordError::IndexOutOfRange { index: 0, rank: 2 });
    }

    #[test]
    fn mul_cancels_at_seam() {
        let a = lw(2, &[(1, false), (2, false)]);
        let b = lw(2, &[(2, true)]);
        assert_eq!(a.mul(&b).unwrap(), lw(2, &[(1, false)]));
    }

    #[test]
    fn mul_concatenates_without_cancellation() {
        let a = lw(2, &[(1, false)]);
        let b = lw(2, &[(2, false)]);
        assert_eq!(a.mul(&b).unwrap().to_string(), "x1 x2");
    }

    #[test]
    fn mul_with_inverse_is_empty() {
        let w = lw(3, &[(1, false), (3, true), (2, false)]);
        assert!(w.mul(&w.inv()).unwrap().is_empty());
        assert!(w.inv().mul(&w).unwrap().is_empty());
    }

    #[test]
    fn mul_rejects_rank_mismatch() {
        let a = lw(1, &[(1, false)]);
        let b = lw(2, &[(1, false)]);
        assert_eq!(
            a.mul(&b).unwrap_err(),
            WordError::RankMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn inv_reverses_and_flips() {
        let w = lw(2, &[(1, false), (2, true)]);
        assert_eq!(w.inv().to_string(), "x2 x1^-1");
    }

    #[test]
    fn inv_of_empty_is_empty() {
        assert!(ReducedWord::empty(4).inv().is_empty());
    }

    #[test]
    fn inv_single_letter() {
        let w = lw(3, &[(3, false)]);
        assert_eq!(w.inv().to_string(), "x3^-1");
    }

    #[test]
    fn inv_is_involutive() {
        let w = lw(3, &[(1, false), (2, true), (1, false)]);
        assert_eq!(w.inv().inv(), w);
    }

    #[test]
    fn substitute_diagonal() {
        // x1 x2 with both slots x1 becomes x1 x1.
        let v = lw(2, &[(1, false), (2, false)]);
        let a = lw(1, &[(1, false)]);
        let out = v.substitute(&[a.clone(), a], 1).unwrap();
        assert_eq!(out, lw(1, &[(1, false), (1, false)]));
    }

    #[test]
    fn substitute_identity() {
        let w = lw(2, &[(1, false), (2, true)]);
        let v = lw(1, &[(1, false)]);
        assert_eq!(v.substitute(&[w.clone()], 2).unwrap(), w);
    }

    #[test]
    fn substitute_cancels_for_equal_slots() {
        // x1 x2^-1 with both slots equal reduces to the empty word.
        let v = lw(2, &[(1, false), (2, true)]);
        let a = lw(3, &[(2, false), (3, true), (1, false)]);
        let expected = a.mul(&a.inv()).unwrap();
        assert_eq!(v.substitute(&[a.clone(), a], 3).unwrap(), expected);
    }

    #[test]
    fn substitute_out_of_f0() {
        let v = ReducedWord::empty(0);
        let out = v.substitute(&[], 5).unwrap();
        assert_eq!(out, ReducedWord::empty(5));
    }

    #[test]
    fn substitute_rejects_arity_mismatch() {
        let v = lw(2, &[(1, false)]);
        let a = lw(1, &[(1, false)]);
        assert_eq!(
            v.substitute(&[a], 1).unwrap_err(),
            WordError::SubstitutionArity {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn shift_increments_indices_and_rank() {
        let w = lw(2, &[(1, false), (2, false)]);
        let s = w.shift(2);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.to_string(), "x3 x4");
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let w = lw(2, &[(1, false), (2, true)]);
        assert_eq!(w.shift(0), w);
    }

    #[test]
    fn shift_of_empty_pads_rank() {
        let s = ReducedWord::empty(0).shift(5);
        assert!(s.is_empty());
        assert_eq!(s.rank(), 5);
    }

    #[test]
    fn display_empty_word() {
        assert_eq!(ReducedWord::empty(3).to_string(), "1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_letter(rank: usize) -> impl Strategy<Value = Letter> {
            (1..=rank, any::<bool>()).prop_map(|(index, inv)| Letter { index, inv })
        }

        fn arb_raw(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
            prop::collection::vec(arb_letter(rank), 0..12)
        }

        fn arb_word(rank: usize) -> impl Strategy<Value = ReducedWord> {
            arb_raw(rank).prop_map(move |raw| reduce(rank, raw).unwrap())
        }

        proptest! {
            #[test]
            fn reduce_is_idempotent(raw in arb_raw(3)) {
                let once = reduce(3, raw).unwrap();
                let twice = reduce(3, once.letters().to_vec()).unwrap();
                prop_assert_eq!(once, twice);
            }

            #[test]
            fn reduce_output_has_no_adjacent_cancellation(raw in arb_raw(3)) {
                let w = reduce(3, raw).unwrap();
                for pair in w.letters().windows(2) {
                    prop_assert!(!(pair[0].index == pair[1].index && pair[0].inv != pair[1].inv));
                }
            }

            #[test]
            fn group_laws(u in arb_word(3), v in arb_word(3), w in arb_word(3)) {
                let left = u.mul(&v).unwrap().mul(&w).unwrap();
                let right = u.mul(&v.mul(&w).unwrap()).unwrap();
                prop_assert_eq!(left, right);

                let unit = ReducedWord::empty(3);
                prop_assert_eq!(u.mul(&unit).unwrap(), u.clone());
                prop_assert_eq!(unit.mul(&u).unwrap(), u.clone());

                prop_assert!(u.mul(&u.inv()).unwrap().is_empty());
                prop_assert!(u.inv().mul(&u).unwrap().is_empty());
            }

            #[test]
            fn substitute_is_multiplicative(
                u in arb_word(2),
                v in arb_word(2),
                a in arb_word(3),
                b in arb_word(3),
            ) {
                let ws = [a, b];
                let lhs = u.mul(&v).unwrap().substitute(&ws, 3).unwrap();
                let rhs = u
                    .substitute(&ws, 3)
                    .unwrap()
                    .mul(&v.substitute(&ws, 3).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn shift_is_multiplicative(u in arb_word(3), v in arb_word(3)) {
                let lhs = u.mul(&v).unwrap().shift(2);
                let rhs = u.shift(2).mul(&v.shift(2)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
