//! Reduced words over a free generating set.
//!
//! A token `g > 0` is the generator with index `g`; `-g` is its inverse.
//! The stored sequence is always reduced: no adjacent pair `(t, -t)`.

use super::GroupError;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A reduced word. The empty word is the group identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Box<[i64]>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Box::from([]) }
    }

    /// Wrap a token sequence that must already be reduced.
    pub fn from_reduced(tokens: impl Into<Vec<i64>>) -> Result<Self, GroupError> {
        let tokens = tokens.into();
        for (i, &t) in tokens.iter().enumerate() {
            if t == 0 {
                return Err(GroupError::ZeroToken);
            }
            if i > 0 && tokens[i - 1] == -t {
                return Err(GroupError::NotReduced { position: i });
            }
        }
        Ok(Word { letters: tokens.into_boxed_slice() })
    }

    /// Freely reduce a token sequence (stack cancellation).
    pub fn reduce(tokens: &[i64]) -> Result<Self, GroupError> {
        let mut stack: Vec<i64> = Vec::with_capacity(tokens.len());
        for &t in tokens {
            if t == 0 {
                return Err(GroupError::ZeroToken);
            }
            if stack.last() == Some(&-t) {
                stack.pop();
            } else {
                stack.push(t);
            }
        }
        Ok(Word { letters: stack.into_boxed_slice() })
    }

    pub(crate) fn from_box_unchecked(letters: Box<[i64]>) -> Self {
        debug_assert!(letters.iter().enumerate().all(|(i, &t)| {
            t != 0 && (i == 0 || letters[i - 1] != -t)
        }));
        Word { letters }
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    /// Reverse the sequence and negate each token.
    pub fn inverse(&self) -> Word {
        let letters: Box<[i64]> = self.letters.iter().rev().map(|&t| -t).collect();
        Word { letters }
    }

    /// Product with maximal cancellation across the junction. Both inputs
    /// are reduced, so cancelling the overlap leaves a reduced word.
    pub fn concat_reduced(&self, other: &Word) -> Word {
        let x = &self.letters;
        let y = &other.letters;
        let max_cancel = x.len().min(y.len());
        let mut t = 0usize;
        while t < max_cancel && x[x.len() - 1 - t] == -y[t] {
            t += 1;
        }
        let out_len = x.len() + y.len() - 2 * t;
        let mut out = Vec::with_capacity(out_len);
        out.extend_from_slice(&x[..x.len() - t]);
        out.extend_from_slice(&y[t..]);
        Word { letters: out.into_boxed_slice() }
    }

    /// Largest `j` with the first `j` letters equal. When one word is a
    /// prefix of the other this is `min(|x|, |y|)`.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Split into `(head, tail)` with `|head| = j`; both parts are reduced
    /// subwords and multiply back to `self`.
    pub fn split_at(&self, j: usize) -> Result<(Word, Word), GroupError> {
        if j > self.len() {
            return Err(GroupError::SplitOutOfRange { index: j, len: self.len() });
        }
        let head = Word { letters: self.letters[..j].into() };
        let tail = Word { letters: self.letters[j..].into() };
        Ok((head, tail))
    }

    /// Largest token magnitude, 0 for the identity. Used for rank checks.
    pub fn max_generator(&self) -> u64 {
        self.letters.iter().map(|t| t.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Canonical order: by length, then lexicographic on tokens.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Textual form: whitespace-separated tokens, the identity is `e`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        for (i, t) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::identity());
        }
        let mut tokens = Vec::new();
        for part in s.split_whitespace() {
            let t: i64 = part.parse().map_err(|e| GroupError::ParseElement {
                input: s.to_string(),
                reason: format!("token {part:?}: {e}"),
            })?;
            tokens.push(t);
        }
        Word::from_reduced(tokens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(tokens: &[i64]) -> Word {
        Word::from_reduced(tokens.to_vec()).unwrap()
    }

    #[test]
    fn multiply_cancels_overlap() {
        assert_eq!(w(&[1, 2]).concat_reduced(&w(&[-2, 1])), w(&[1, 1]));
        assert_eq!(w(&[1]).concat_reduced(&w(&[-1])), Word::identity());
        assert_eq!(w(&[1, 2]).concat_reduced(&w(&[-2, -1])), Word::identity());
    }

    #[test]
    fn inverse_reverses_and_negates() {
        assert_eq!(w(&[1, -2]).inverse(), w(&[2, -1]));
        assert_eq!(Word::identity().inverse(), Word::identity());
    }

    #[test]
    fn rejects_unreduced_and_zero() {
        assert_eq!(
            Word::from_reduced(vec![1, -1]),
            Err(GroupError::NotReduced { position: 1 })
        );
        assert_eq!(Word::from_reduced(vec![0]), Err(GroupError::ZeroToken));
    }

    #[test]
    fn reduce_is_stack_cancellation() {
        assert_eq!(Word::reduce(&[1, 2, -2, -1]).unwrap(), Word::identity());
        assert_eq!(Word::reduce(&[1, 2, -2, 1]).unwrap(), w(&[1, 1]));
    }

    #[test]
    fn common_prefix_examples() {
        assert_eq!(w(&[1, 2, 1]).common_prefix_len(&w(&[1, 2, -1])), 2);
        assert_eq!(w(&[1, 2]).common_prefix_len(&w(&[-1, 2])), 0);
        // prefix case: j = min of the lengths
        assert_eq!(w(&[1, 2, 1]).common_prefix_len(&w(&[1, 2])), 2);
    }

    #[test]
    fn split_examples() {
        assert_eq!(w(&[1, 2, 1]).split_at(1).unwrap(), (w(&[1]), w(&[2, 1])));
        assert_eq!(w(&[1, 2]).split_at(0).unwrap(), (Word::identity(), w(&[1, 2])));
        assert_eq!(w(&[1, 2]).split_at(2).unwrap(), (w(&[1, 2]), Word::identity()));
        assert!(w(&[1, 2]).split_at(3).is_err());
    }

    #[test]
    fn display_round_trips() {
        for word in [Word::identity(), w(&[1, -2, 1]), w(&[-3])] {
            let shown = word.to_string();
            assert_eq!(shown.parse::<Word>().unwrap(), word);
        }
        assert_eq!("e".parse::<Word>().unwrap(), Word::identity());
        assert!("1 -1".parse::<Word>().is_err());
    }

    #[test]
    fn order_is_length_then_lex() {
        let mut words = vec![w(&[1, 1]), w(&[-2]), Word::identity(), w(&[1])];
        words.sort();
        assert_eq!(words, vec![Word::identity(), w(&[-2]), w(&[1]), w(&[1, 1])]);
    }
}
