//! Discrete groups behind one interface: free groups on a finite alphabet,
//! the integers, and finite cyclic groups.
//!
//! All three carry counting measure and are unimodular; the modular function
//! is kept as an explicit hook returning 1 so that the involution and weight
//! transforms spell out the general formulas.

mod free;
mod int;
mod word;

pub use free::{FreeGroup, SphereIter};
pub use int::{CyclicGroup, IntGroup};
pub use word::Word;

use rand::Rng;
use std::fmt;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("token 0 is not a generator")]
    ZeroToken,
    #[error("token {token} out of range for rank {rank}")]
    TokenOutOfRange { token: i64, rank: u64 },
    #[error("word is not reduced at position {position}")]
    NotReduced { position: usize },
    #[error("split index {index} out of range for word of length {len}")]
    SplitOutOfRange { index: usize, len: usize },
    #[error("sphere of {count} words exceeds enumeration budget {budget}")]
    SphereBudget { count: u128, budget: u64 },
    #[error("element {element} not in cyclic group of order {modulus}")]
    CyclicRange { element: i64, modulus: u64 },
    #[error("cannot parse group element from {input:?}: {reason}")]
    ParseElement { input: String, reason: String },
    #[error("cannot parse group kind from {0:?}")]
    ParseKind(String),
}

/// What a group element type must provide to live in a sparse function:
/// value semantics, a total order (canonical summation order), and hashing.
pub trait GroupElement: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {}
impl<T: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync> GroupElement for T {}

/// Group kind discriminant, used in file headers and report parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Free { rank: u64 },
    Int,
    Cyclic { modulus: u64 },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Free { rank } => write!(f, "free rank={rank}"),
            GroupKind::Int => write!(f, "int"),
            GroupKind::Cyclic { modulus } => write!(f, "cyclic n={modulus}"),
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if s == "int" {
            return Ok(GroupKind::Int);
        }
        if let Some(rest) = s.strip_prefix("free rank=") {
            let rank = rest.trim().parse().map_err(|_| GroupError::ParseKind(s.into()))?;
            return Ok(GroupKind::Free { rank });
        }
        if let Some(rest) = s.strip_prefix("cyclic n=") {
            let modulus = rest.trim().parse().map_err(|_| GroupError::ParseKind(s.into()))?;
            return Ok(GroupKind::Cyclic { modulus });
        }
        Err(GroupError::ParseKind(s.into()))
    }
}

/// A discrete group with counting measure.
///
/// `multiply`, `invert` and `identity` satisfy the group axioms (checked by
/// randomized tests, not by the type system). `word_length` is the natural
/// length function each instance carries: reduced word length on free
/// groups, `|t|` on the integers, `min(t, n-t)` on a cyclic group.
pub trait DiscreteGroup: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: GroupElement;

    fn kind(&self) -> GroupKind;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn invert(&self, x: &Self::Elem) -> Self::Elem;
    fn word_length(&self, x: &Self::Elem) -> u64;

    /// Haar-modular function Δ. Every group here is discrete, hence
    /// unimodular: the hook always returns 1 but is threaded through the
    /// involution and the tilde-weight transform on purpose.
    fn modular_function(&self, _x: &Self::Elem) -> u64 {
        1
    }

    fn validate(&self, x: &Self::Elem) -> Result<(), GroupError>;

    /// Signed integer view of an element, for weights defined on ℤ.
    fn elem_as_int(&self, _x: &Self::Elem) -> Option<i64> {
        None
    }

    fn format_elem(&self, x: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, GroupError>;

    /// Number of elements of word length ≤ `max_len`, `None` on overflow.
    fn ball_size(&self, max_len: u64) -> Option<u128>;

    /// Draw one element of word length ≤ `max_len`.
    fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, max_len: u64) -> Self::Elem;
}

/// Runtime-selected group, as named by CLI flags and file headers.
#[derive(Debug, Clone, PartialEq)]
pub enum DynGroup {
    Free(FreeGroup),
    Int(IntGroup),
    Cyclic(CyclicGroup),
}

impl DynGroup {
    pub fn from_kind(kind: GroupKind) -> Result<Self, GroupError> {
        Ok(match kind {
            GroupKind::Free { rank } => DynGroup::Free(FreeGroup::new(rank)),
            GroupKind::Int => DynGroup::Int(IntGroup),
            GroupKind::Cyclic { modulus } => DynGroup::Cyclic(CyclicGroup::new(modulus)),
        })
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            DynGroup::Free(g) => g.kind(),
            DynGroup::Int(g) => g.kind(),
            DynGroup::Cyclic(g) => g.kind(),
        }
    }
}
