//! The two abelian comparison groups: ℤ and ℤ_n.

use super::{DiscreteGroup, GroupError, GroupKind};
use rand::Rng;

/// The integers under addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntGroup;

impl DiscreteGroup for IntGroup {
    type Elem = i64;

    fn kind(&self) -> GroupKind {
        GroupKind::Int
    }

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, x: &i64, y: &i64) -> i64 {
        x.checked_add(*y).expect("integer group element overflow")
    }

    fn invert(&self, x: &i64) -> i64 {
        -x
    }

    fn word_length(&self, x: &i64) -> u64 {
        x.unsigned_abs()
    }

    fn validate(&self, _x: &i64) -> Result<(), GroupError> {
        Ok(())
    }

    fn elem_as_int(&self, x: &i64) -> Option<i64> {
        Some(*x)
    }

    fn format_elem(&self, x: &i64) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<i64, GroupError> {
        parse_int(s)
    }

    fn ball_size(&self, max_len: u64) -> Option<u128> {
        Some(2 * max_len as u128 + 1)
    }

    fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, max_len: u64) -> i64 {
        let m = max_len as i64;
        rng.random_range(-m..=m)
    }
}

/// ℤ_n under addition mod n, elements stored as canonical residues `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    modulus: u64,
}

impl CyclicGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "cyclic group needs positive order");
        CyclicGroup { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.modulus as i64)
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> {
        0..self.modulus as i64
    }
}

impl DiscreteGroup for CyclicGroup {
    type Elem = i64;

    fn kind(&self) -> GroupKind {
        GroupKind::Cyclic { modulus: self.modulus }
    }

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, x: &i64, y: &i64) -> i64 {
        self.reduce(x + y)
    }

    fn invert(&self, x: &i64) -> i64 {
        self.reduce(-x)
    }

    fn word_length(&self, x: &i64) -> u64 {
        let t = self.reduce(*x) as u64;
        t.min(self.modulus - t)
    }

    fn validate(&self, x: &i64) -> Result<(), GroupError> {
        if *x < 0 || *x >= self.modulus as i64 {
            return Err(GroupError::CyclicRange { element: *x, modulus: self.modulus });
        }
        Ok(())
    }

    fn elem_as_int(&self, x: &i64) -> Option<i64> {
        Some(*x)
    }

    fn format_elem(&self, x: &i64) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<i64, GroupError> {
        Ok(self.reduce(parse_int(s)?))
    }

    fn ball_size(&self, max_len: u64) -> Option<u128> {
        Some((self.modulus as u128).min(2 * max_len as u128 + 1))
    }

    fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, max_len: u64) -> i64 {
        if 2 * max_len + 1 >= self.modulus {
            return rng.random_range(0..self.modulus as i64);
        }
        let m = max_len as i64;
        self.reduce(rng.random_range(-m..=m))
    }
}

fn parse_int(s: &str) -> Result<i64, GroupError> {
    let s = s.trim();
    if s == "e" {
        return Ok(0);
    }
    s.parse().map_err(|e| GroupError::ParseElement {
        input: s.to_string(),
        reason: format!("{e}"),
    })
}
