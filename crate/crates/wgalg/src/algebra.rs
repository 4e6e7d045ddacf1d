//! Finitely supported functions on a discrete group: convolution, weighted
//! p-norms, involution, and the deterministic random generators the test
//! suites draw from.

use crate::groups::{DiscreteGroup, GroupError};
use crate::scalar::{RealScalar, Scalar};
use crate::weights::{Weight, WeightError, WeightEval};
use num_complex::Complex;
use num_traits::{One, Zero};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::collections::HashMap;
use thiserror::Error;

/// Default cap on scalar multiplications in one convolution.
pub const DEFAULT_MULT_BUDGET: u64 = 10_000_000;
/// Default cap on enumerated sphere words.
pub const DEFAULT_SPHERE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("functions live on different groups")]
    GroupMismatch,
    #[error("convolution needs {required} multiplications, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("weight is not positive at {element}")]
    NonPositiveWeight { element: String },
    #[error("operation requires nonnegative real values, found {value} at {element}")]
    NegativeEntry { element: String, value: String },
    #[error("exponent p must satisfy p >= 1, got {p}")]
    InvalidExponent { p: f64 },
    #[error("requested support {requested} exceeds the {available} elements available")]
    SupportUnavailable { requested: usize, available: u128 },
    #[error("value not representable on this scalar path: {0}")]
    NotRepresentable(String),
}

/// A Hölder exponent `p ≥ 1` with its conjugate `q`, `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent {
    p: f64,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self, AlgebraError> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(AlgebraError::InvalidExponent { p });
        }
        Ok(PExponent { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Conjugate exponent; `+∞` for p = 1.
    pub fn q(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    pub fn conjugate(&self) -> Result<Self, AlgebraError> {
        PExponent::new(self.q())
    }
}

/// A finitely supported function `group → S`. Zero values are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseFunction<G: DiscreteGroup, S: Scalar> {
    group: G,
    entries: HashMap<G::Elem, S>,
}

impl<G: DiscreteGroup, S: Scalar> SparseFunction<G, S> {
    pub fn zero(group: G) -> Self {
        SparseFunction { group, entries: HashMap::new() }
    }

    /// Point mass `value · δ_x`.
    pub fn delta(group: G, x: G::Elem, value: S) -> Result<Self, AlgebraError> {
        Self::from_entries(group, [(x, value)])
    }

    /// Build from `(element, value)` pairs; duplicates accumulate, zeros drop.
    pub fn from_entries(
        group: G,
        pairs: impl IntoIterator<Item = (G::Elem, S)>,
    ) -> Result<Self, AlgebraError> {
        let mut entries: HashMap<G::Elem, S> = HashMap::new();
        for (x, v) in pairs {
            group.validate(&x)?;
            match entries.entry(x) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + v;
                    *e.get_mut() = sum;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(SparseFunction { group, entries })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_fn(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value at `x`, zero off the support.
    pub fn value(&self, x: &G::Elem) -> S {
        self.entries.get(x).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&G::Elem, &S)> {
        self.entries.iter()
    }

    /// Entries in canonical element order. Every numeric reduction in the
    /// crate folds in this order, which is what makes results reproducible
    /// bit for bit.
    pub fn sorted_entries(&self) -> Vec<(&G::Elem, &S)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn support_sorted(&self) -> Vec<G::Elem> {
        let mut v: Vec<_> = self.entries.keys().cloned().collect();
        v.sort();
        v
    }

    fn same_group(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(AlgebraError::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_group(other)?;
        let mut entries = self.entries.clone();
        for (x, v) in &other.entries {
            match entries.entry(x.clone()) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + v.clone();
                    *e.get_mut() = sum;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(v.clone());
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(SparseFunction { group: self.group.clone(), entries })
    }

    pub fn scaled(&self, s: &S) -> Self {
        let mut entries: HashMap<G::Elem, S> = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let sv = v.clone() * s.clone();
            if !sv.is_zero() {
                entries.insert(x.clone(), sv);
            }
        }
        SparseFunction { group: self.group.clone(), entries }
    }

    pub fn map_values<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseFunction<G, T> {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let t = f(v);
            if !t.is_zero() {
                entries.insert(x.clone(), t);
            }
        }
        SparseFunction { group: self.group.clone(), entries }
    }

    /// `f^∇(x) = f(x^{-1})`.
    pub fn reflected(&self) -> Self {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            entries.insert(self.group.invert(x), v.clone());
        }
        SparseFunction { group: self.group.clone(), entries }
    }

    /// The involution `f*(t) = conj(f(t^{-1})) Δ(t^{-1})`; Δ ≡ 1 here but
    /// the hook is applied so the formula reads as in the general case.
    pub fn involution(&self) -> Self {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let t = self.group.invert(x);
            let delta = S::Real::from_u64(self.group.modular_function(x));
            entries.insert(t, v.conj().scale(&delta));
        }
        SparseFunction { group: self.group.clone(), entries }
    }

    /// Sparse convolution `(f∗g)(α) = Σ_β f(β) g(β^{-1}α)`, computed as the
    /// double loop over `supp f × supp g` accumulating at `βγ`. Inputs are
    /// walked in canonical order, so the accumulation order at every output
    /// point is fixed and the result is bit-reproducible.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.convolve_with_budget(other, DEFAULT_MULT_BUDGET)
    }

    pub fn convolve_with_budget(&self, other: &Self, budget: u64) -> Result<Self, AlgebraError> {
        self.same_group(other)?;
        let required = self.entries.len() as u128 * other.entries.len() as u128;
        if required > budget as u128 {
            return Err(AlgebraError::BudgetExceeded { required, budget });
        }
        let fs = self.sorted_entries();
        let gs = other.sorted_entries();
        let mut out: HashMap<G::Elem, S> =
            HashMap::with_capacity((required as usize).min(1 << 20));
        for (beta, fv) in &fs {
            for (gamma, gv) in &gs {
                let product = self.group.multiply(beta, gamma);
                let term = (*fv).clone() * (*gv).clone();
                match out.entry(product) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + term;
                        *e.get_mut() = sum;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(term);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(SparseFunction { group: self.group.clone(), entries: out })
    }

    /// Bilinear pairing `⟨f, g⟩ = Σ_t f(t) g(t)` (no conjugation).
    pub fn pairing(&self, other: &Self) -> Result<S, AlgebraError> {
        self.same_group(other)?;
        let (small, large) = if self.entries.len() <= other.entries.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = S::zero();
        for (x, v) in small.sorted_entries() {
            if let Some(w) = large.entries.get(x) {
                acc = acc + v.clone() * w.clone();
            }
        }
        Ok(acc)
    }

    /// Pointwise multiply or divide by a weight on the support.
    pub fn scale_by_weight(&self, w: &Weight, action: WeightAction) -> Result<Self, AlgebraError>
    where
        S::Real: WeightEval,
    {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let wx: S::Real = S::Real::weight_at(w, &self.group, x)?;
            if !(wx > S::Real::zero()) {
                return Err(AlgebraError::NonPositiveWeight {
                    element: self.group.format_elem(x),
                });
            }
            let factor = match action {
                WeightAction::Multiply => wx,
                WeightAction::Divide => S::Real::one() / wx,
            };
            let sv = v.scale(&factor);
            if !sv.is_zero() {
                entries.insert(x.clone(), sv);
            }
        }
        Ok(SparseFunction { group: self.group.clone(), entries })
    }

    /// `‖f‖_{p,w} = (Σ |f(x) w(x)|^p)^{1/p}`; 0 for the empty function.
    pub fn weighted_norm(&self, w: &Weight, p: PExponent) -> Result<f64, AlgebraError> {
        Ok(self.weighted_norm_pow(w, p)?.powf(1.0 / p.p()))
    }

    /// The root-free p-th power `Σ |f(x) w(x)|^p`.
    pub fn weighted_norm_pow(&self, w: &Weight, p: PExponent) -> Result<f64, AlgebraError> {
        let mut acc = 0.0f64;
        for (x, v) in self.sorted_entries() {
            let wx: f64 = f64::weight_at(w, &self.group, x)?;
            if !(wx > 0.0) {
                return Err(AlgebraError::NonPositiveWeight {
                    element: self.group.format_elem(x),
                });
            }
            let modulus = v.abs_sq().as_f64().sqrt();
            acc += (modulus * wx).powf(p.p());
        }
        Ok(acc)
    }

    /// Unweighted `‖f‖_p`.
    pub fn lp_norm(&self, p: PExponent) -> f64 {
        self.weighted_norm(&Weight::constant(1.0), p)
            .expect("constant weight 1 is total")
    }

    /// Exact squared 2-norm `Σ |f(x)|^2 w(x)^2` in the scalar's real field.
    /// This is the root-free comparison used wherever p = 2 inequalities
    /// are checked on the rational path.
    pub fn weighted_norm_sq(&self, w: &Weight) -> Result<S::Real, AlgebraError>
    where
        S::Real: WeightEval,
    {
        let mut acc = S::Real::zero();
        for (x, v) in self.sorted_entries() {
            let wx: S::Real = S::Real::weight_at(w, &self.group, x)?;
            if !(wx > S::Real::zero()) {
                return Err(AlgebraError::NonPositiveWeight {
                    element: self.group.format_elem(x),
                });
            }
            acc = acc + v.abs_sq() * wx.clone() * wx;
        }
        Ok(acc)
    }

    /// Pointwise `f(x)^e` for functions with nonnegative real values.
    pub fn pointwise_pow(&self, e: f64) -> Result<Self, AlgebraError> {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let r = v.try_nonneg_real().ok_or_else(|| AlgebraError::NegativeEntry {
                element: self.group.format_elem(x),
                value: format!("{v:?}"),
            })?;
            let powed = r.try_powf(e).ok_or_else(|| {
                AlgebraError::NotRepresentable(format!("x^{e} on the exact path"))
            })?;
            let sv = S::from_real(powed);
            if !sv.is_zero() {
                entries.insert(x.clone(), sv);
            }
        }
        Ok(SparseFunction { group: self.group.clone(), entries })
    }

    /// Check every value is a nonnegative real; returns the first offender.
    pub fn require_nonneg(&self) -> Result<(), AlgebraError> {
        for (x, v) in self.sorted_entries() {
            if v.try_nonneg_real().is_none() {
                return Err(AlgebraError::NegativeEntry {
                    element: self.group.format_elem(x),
                    value: format!("{v:?}"),
                });
            }
        }
        Ok(())
    }

    /// `|f|` as a float-valued function (route into the nonnegative
    /// machinery for arbitrary complex inputs).
    pub fn modulus(&self) -> SparseFunction<G, f64> {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (x, v) in &self.entries {
            let m = v.abs_sq().as_f64().sqrt();
            if m != 0.0 {
                entries.insert(x.clone(), m);
            }
        }
        SparseFunction { group: self.group.clone(), entries }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightAction {
    Multiply,
    Divide,
}

/// How random function values are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueLaw {
    NonnegUniform,
    ComplexGaussian,
    RationalSmall,
}

impl ValueLaw {
    pub fn name(&self) -> &'static str {
        match self {
            ValueLaw::NonnegUniform => "nonneg-uniform",
            ValueLaw::ComplexGaussian => "complex-gaussian",
            ValueLaw::RationalSmall => "rational-small",
        }
    }
}

/// Deterministic RNG for a (seed, stream) pair; all sampling in the crate
/// goes through ChaCha8, which is stable across platforms and versions.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent per-trial seed (splitmix64 step).
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ (trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draw `size` distinct elements of word length ≤ `max_len`, resampling on
/// collision. Deterministic in the RNG state.
pub fn random_support<G: DiscreteGroup, R: Rng + ?Sized>(
    group: &G,
    rng: &mut R,
    size: usize,
    max_len: u64,
) -> Result<Vec<G::Elem>, AlgebraError> {
    let available = group.ball_size(max_len).unwrap_or(u128::MAX);
    if (size as u128) > available {
        return Err(AlgebraError::SupportUnavailable { requested: size, available });
    }
    let mut seen = std::collections::HashSet::with_capacity(size);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let x = group.sample_ball(rng, max_len);
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Random nonnegative function: distinct support, values uniform in (0, 1].
pub fn random_nonneg<G: DiscreteGroup>(
    group: &G,
    seed: u64,
    size: usize,
    max_len: u64,
) -> Result<SparseFunction<G, f64>, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let support = random_support(group, &mut rng, size, max_len)?;
    let pairs = support.into_iter().map(|x| {
        let v: f64 = 1.0 - rng.random::<f64>();
        (x, v)
    });
    // collect to keep the rng borrow alive during iteration
    let pairs: Vec<_> = pairs.collect();
    SparseFunction::from_entries(group.clone(), pairs)
}

/// Random complex function with standard Gaussian real and imaginary parts.
pub fn random_complex<G: DiscreteGroup>(
    group: &G,
    seed: u64,
    size: usize,
    max_len: u64,
) -> Result<SparseFunction<G, Complex<f64>>, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let support = random_support(group, &mut rng, size, max_len)?;
    let pairs: Vec<_> = support
        .into_iter()
        .map(|x| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (x, Complex::new(re, im))
        })
        .collect();
    SparseFunction::from_entries(group.clone(), pairs)
}

/// Random exact-rational complex function with small numerators and
/// denominators; values are never zero.
pub fn random_rational<G: DiscreteGroup>(
    group: &G,
    seed: u64,
    size: usize,
    max_len: u64,
) -> Result<SparseFunction<G, Complex<BigRational>>, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let support = random_support(group, &mut rng, size, max_len)?;
    let small = |rng: &mut ChaCha8Rng| -> BigRational {
        BigRational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
    };
    let pairs: Vec<_> = support
        .into_iter()
        .map(|x| {
            let mut v = Complex::new(small(&mut rng), small(&mut rng));
            while v.is_zero() {
                v = Complex::new(small(&mut rng), small(&mut rng));
            }
            (x, v)
        })
        .collect();
    SparseFunction::from_entries(group.clone(), pairs)
}

/// Nonnegative rational-valued random function (exact Theorem 1.1 inputs).
pub fn random_nonneg_rational<G: DiscreteGroup>(
    group: &G,
    seed: u64,
    size: usize,
    max_len: u64,
) -> Result<SparseFunction<G, BigRational>, AlgebraError> {
    let mut rng = seeded_rng(seed);
    let support = random_support(group, &mut rng, size, max_len)?;
    let pairs: Vec<_> = support
        .into_iter()
        .map(|x| {
            let v = BigRational::from_ratio(rng.random_range(1..=9), rng.random_range(1..=9));
            (x, v)
        })
        .collect();
    SparseFunction::from_entries(group.clone(), pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeGroup, IntGroup, Word};

    fn w(tokens: &[i64]) -> Word {
        Word::from_reduced(tokens.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_exponent_identity() {
        for p in [1.5, 2.0, 1.25, 1.0 + 1e-6] {
            let pe = PExponent::new(p).unwrap();
            let err = (1.0 / pe.p() + 1.0 / pe.q() - 1.0).abs();
            assert!(err <= 1e-15, "p={p}: 1/p + 1/q off by {err}");
        }
        assert!(PExponent::new(0.5).is_err());
        assert_eq!(PExponent::new(1.0).unwrap().q(), f64::INFINITY);
    }

    #[test]
    fn delta_convolution_is_point_product() {
        let g = FreeGroup::new(2);
        let x = w(&[1, 2]);
        let y = w(&[-2, 1]);
        let dx = SparseFunction::delta(g, x.clone(), 1.0f64).unwrap();
        let dy = SparseFunction::delta(g, y.clone(), 1.0f64).unwrap();
        let conv = dx.convolve(&dy).unwrap();
        assert_eq!(conv.support_size(), 1);
        assert_eq!(conv.value(&w(&[1, 1])), 1.0);
    }

    #[test]
    fn two_point_convolution_example() {
        // (δ_a + δ_b) ∗ δ_{a^{-1}} = δ_e + δ_{ba^{-1}} in F_2
        let g = FreeGroup::new(2);
        let a = w(&[1]);
        let b = w(&[2]);
        let f = SparseFunction::from_entries(g, [(a.clone(), 1.0f64), (b.clone(), 1.0)]).unwrap();
        let h = SparseFunction::delta(g, a.inverse(), 1.0f64).unwrap();
        let conv = f.convolve(&h).unwrap();
        assert_eq!(conv.support_size(), 2);
        assert_eq!(conv.value(&Word::identity()), 1.0);
        assert_eq!(conv.value(&w(&[2, -1])), 1.0);
    }

    #[test]
    fn int_group_convolution_matches_polynomial_product() {
        let g = IntGroup;
        let f = SparseFunction::from_entries(g, [(0i64, 1.0f64), (1, 2.0)]).unwrap();
        let h = SparseFunction::from_entries(g, [(0i64, 3.0f64), (2, 1.0)]).unwrap();
        let conv = f.convolve(&h).unwrap();
        assert_eq!(conv.value(&0), 3.0);
        assert_eq!(conv.value(&1), 6.0);
        assert_eq!(conv.value(&2), 1.0);
        assert_eq!(conv.value(&3), 2.0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = IntGroup;
        let f = SparseFunction::from_entries(g, (0..100i64).map(|t| (t, 1.0f64))).unwrap();
        match f.convolve_with_budget(&f, 9999) {
            Err(AlgebraError::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 10_000);
                assert_eq!(budget, 9999);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn involution_flips_support_and_conjugates() {
        let g = FreeGroup::new(2);
        let a = w(&[1]);
        let i = Complex::new(0.0, 1.0);
        let f = SparseFunction::delta(g, a.clone(), i).unwrap();
        let star = f.involution();
        assert_eq!(star.value(&a.inverse()), Complex::new(0.0, -1.0));
        assert_eq!(star.involution(), f);
    }

    #[test]
    fn weighted_norm_examples() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let p2 = PExponent::new(2.0).unwrap();

        // f = 2δ_e: norm is 2 (w(e) = 1)
        let f = SparseFunction::delta(g, Word::identity(), 2.0f64).unwrap();
        assert_eq!(f.weighted_norm(&lp3, p2).unwrap(), 2.0);

        // two points on the unit sphere: (2 · (1·8)^2)^{1/2} = 8√2
        let f = SparseFunction::from_entries(
            g,
            [(w(&[1]), 1.0f64), (w(&[2]), 1.0)],
        )
        .unwrap();
        let got = f.weighted_norm(&lp3, p2).unwrap();
        assert!((got - 8.0 * 2.0f64.sqrt()).abs() < 1e-12);

        // single point: norm is w(α)
        let alpha = w(&[1, 2]);
        let f = SparseFunction::delta(g, alpha.clone(), 1.0f64).unwrap();
        assert_eq!(f.weighted_norm(&lp3, p2).unwrap(), 27.0);

        // empty function
        let z: SparseFunction<FreeGroup, f64> = SparseFunction::zero(g);
        assert_eq!(z.weighted_norm(&lp3, p2).unwrap(), 0.0);
    }

    #[test]
    fn scale_by_weight_examples() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let alpha = w(&[1, 2]);
        let f = SparseFunction::delta(g, alpha.clone(), 1.0f64).unwrap();
        let divided = f.scale_by_weight(&lp3, WeightAction::Divide).unwrap();
        assert_eq!(divided.value(&alpha), 1.0 / 27.0);

        let z: SparseFunction<FreeGroup, f64> = SparseFunction::zero(g);
        let scaled = z.scale_by_weight(&lp3, WeightAction::Multiply).unwrap();
        assert!(scaled.is_zero_fn());
    }

    #[test]
    fn divide_then_multiply_is_identity_exactly() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let f = random_rational(&g, 11, 20, 6).unwrap();
        let back = f
            .scale_by_weight(&lp3, WeightAction::Divide)
            .unwrap()
            .scale_by_weight(&lp3, WeightAction::Multiply)
            .unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn random_functions_are_deterministic() {
        let g = FreeGroup::new(2);
        let a = random_complex(&g, 99, 50, 12).unwrap();
        let b = random_complex(&g, 99, 50, 12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.support_size(), 50);
        let c = random_complex(&g, 100, 50, 12).unwrap();
        assert_ne!(a, c);
        for (x, _) in a.iter() {
            assert!(x.len() <= 12);
        }
        let e = random_nonneg(&g, 7, 0, 12).unwrap();
        assert!(e.is_zero_fn());
    }

    #[test]
    fn support_request_bounded_by_group_size() {
        let g = crate::groups::CyclicGroup::new(5);
        assert!(matches!(
            random_nonneg(&g, 1, 6, 10),
            Err(AlgebraError::SupportUnavailable { .. })
        ));
        let f = random_nonneg(&g, 1, 5, 10).unwrap();
        assert_eq!(f.support_size(), 5);
    }

    #[test]
    fn norm_monotone_in_p() {
        // ‖f‖_{p'} ≤ ‖f‖_p for p ≤ p' (used with q = conjugate in §1)
        let g = FreeGroup::new(2);
        for seed in 0..20u64 {
            let f = random_complex(&g, seed, 10, 6).unwrap();
            for (p, q) in [(1.5, 3.0), (2.0, 2.0), (1.25, 5.0)] {
                let np = f.lp_norm(PExponent::new(p).unwrap());
                let nq = f.lp_norm(PExponent::new(q).unwrap());
                assert!(nq <= np * (1.0 + 1e-12), "p={p} q={q}: {nq} > {np}");
            }
        }
    }
}
