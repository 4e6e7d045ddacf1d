//! Free group of finite rank, elements stored as reduced words.

use super::{DiscreteGroup, GroupError, GroupKind, Word};
use rand::Rng;

/// Free group on `rank ≥ 1` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: u64,
}

impl FreeGroup {
    pub fn new(rank: u64) -> Self {
        assert!(rank >= 1, "free group needs at least one generator");
        FreeGroup { rank }
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// `|A_n|`: 1 for n = 0, else `2r(2r-1)^(n-1)`. `None` on overflow.
    pub fn sphere_size(&self, n: u64) -> Option<u128> {
        if n == 0 {
            return Some(1);
        }
        let branches = (2 * self.rank as u128).checked_sub(1)?;
        let mut size = 2 * self.rank as u128;
        for _ in 1..n {
            size = size.checked_mul(branches)?;
        }
        Some(size)
    }

    /// Stream every reduced word of length exactly `n`, in canonical
    /// (lexicographic) order, after checking the count against `budget`.
    pub fn enumerate_sphere(&self, n: u64, budget: u64) -> Result<SphereIter, GroupError> {
        let count = self.sphere_size(n).unwrap_or(u128::MAX);
        if count > budget as u128 {
            return Err(GroupError::SphereBudget { count, budget });
        }
        Ok(SphereIter::new(*self, n as usize))
    }

    fn token_in_range(&self, t: i64) -> bool {
        t != 0 && t.unsigned_abs() <= self.rank
    }

    /// Uniform non-backtracking step continuing a word whose last token is
    /// `prev` (0 when the word is empty).
    fn random_step<R: Rng + ?Sized>(&self, rng: &mut R, prev: i64) -> i64 {
        let alphabet = 2 * self.rank;
        loop {
            let idx = rng.random_range(0..alphabet);
            let t = if idx < self.rank {
                -((idx + 1) as i64)
            } else {
                (idx - self.rank + 1) as i64
            };
            if prev == 0 || t != -prev {
                return t;
            }
        }
    }
}

impl DiscreteGroup for FreeGroup {
    type Elem = Word;

    fn kind(&self) -> GroupKind {
        GroupKind::Free { rank: self.rank }
    }

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, x: &Word, y: &Word) -> Word {
        x.concat_reduced(y)
    }

    fn invert(&self, x: &Word) -> Word {
        x.inverse()
    }

    fn word_length(&self, x: &Word) -> u64 {
        x.len() as u64
    }

    fn validate(&self, x: &Word) -> Result<(), GroupError> {
        for &t in x.letters() {
            if !self.token_in_range(t) {
                return Err(GroupError::TokenOutOfRange { token: t, rank: self.rank });
            }
        }
        Ok(())
    }

    fn format_elem(&self, x: &Word) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<Word, GroupError> {
        let word: Word = s.parse()?;
        self.validate(&word)?;
        Ok(word)
    }

    fn ball_size(&self, max_len: u64) -> Option<u128> {
        let mut total: u128 = 0;
        for n in 0..=max_len {
            total = total.checked_add(self.sphere_size(n)?)?;
        }
        Some(total)
    }

    fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, max_len: u64) -> Word {
        let len = rng.random_range(0..=max_len) as usize;
        let mut tokens = Vec::with_capacity(len);
        let mut prev = 0i64;
        for _ in 0..len {
            let t = self.random_step(rng, prev);
            tokens.push(t);
            prev = t;
        }
        Word::from_box_unchecked(tokens.into_boxed_slice())
    }
}

/// Lexicographic odometer over the reduced words of one sphere.
pub struct SphereIter {
    group: FreeGroup,
    state: Option<Vec<i64>>,
    n: usize,
}

impl SphereIter {
    fn new(group: FreeGroup, n: usize) -> Self {
        let first = Self::smallest(&group, n, 0);
        SphereIter { group, state: Some(first), n }
    }

    /// Smallest valid suffix of length `n` following token `prev`.
    fn smallest(group: &FreeGroup, n: usize, prev: i64) -> Vec<i64> {
        let mut out = Vec::with_capacity(n);
        let mut last = prev;
        for _ in 0..n {
            let t = Self::first_token(group, last, None).expect("rank >= 1 sphere is nonempty");
            out.push(t);
            last = t;
        }
        out
    }

    /// Smallest token `> after` (or the overall smallest when `after` is
    /// `None`) that does not cancel against `prev`. Token order is plain
    /// integer order: -r < … < -1 < 1 < … < r.
    fn first_token(group: &FreeGroup, prev: i64, after: Option<i64>) -> Option<i64> {
        let r = group.rank as i64;
        let mut t = match after {
            None => -r,
            Some(a) => {
                let mut next = a + 1;
                if next == 0 {
                    next = 1;
                }
                next
            }
        };
        while t <= r {
            if t != 0 && t != -prev {
                return Some(t);
            }
            t += 1;
            if t == 0 {
                t = 1;
            }
        }
        None
    }
}

impl Iterator for SphereIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let state = self.state.as_mut()?;
        let word = Word::from_box_unchecked(state.clone().into_boxed_slice());

        // advance: increment the deepest position that still has headroom
        let mut pos = self.n;
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            let prev = if pos == 0 { 0 } else { state[pos - 1] };
            if let Some(t) = Self::first_token(&self.group, prev, Some(state[pos])) {
                state[pos] = t;
                let mut last = t;
                for i in pos + 1..self.n {
                    let s = Self::first_token(&self.group, last, None).expect("nonempty");
                    state[i] = s;
                    last = s;
                }
                break;
            }
        }
        Some(word)
    }
}
