//! Verifiers for the symmetric-algebra inequalities and their consequences
//! on amenable desk-scale groups: the dual-norm convolution bound, the
//! convolution-into-ℓ² bound with its proof steps, the product-set measure
//! inequality on ℤ_n, and summability of `w^{-q}` on ℤ with a certified
//! enclosure.

use crate::algebra::{AlgebraError, PExponent, SparseFunction, WeightAction};
use crate::groups::{CyclicGroup, DiscreteGroup, IntGroup};
use crate::scalar::{RealScalar, Scalar};
use crate::weights::{
    check_condition2_z, even_poly_neg_q, even_poly_parts, even_poly_tail_bound, DyadicBounds,
    Weight, WeightError, WeightEval,
};
use crate::{CRational, VerificationReport, Verdict};
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymcheckError {
    #[error("fixture is not certified: the lemmas need ‖f∗g‖ ≤ ‖f‖‖g‖ with constant exactly 1")]
    Uncertified,
    #[error("exhaustive subset sweep supports n ≤ {max}, got n = {n}")]
    TooLargeForExhaustive { n: u64, max: u64 },
    #[error("fixture weight must be even, but w({at}) differs from w(-{at})")]
    NotEven { at: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A group, an even weight and an exponent for which the unit-constant
/// norm bound `‖f∗g‖_{p,w} ≤ ‖f‖_{p,w}‖g‖_{p,w}` has been certified.
/// Every §2–§3 lemma checker refuses to run on an uncertified fixture —
/// the proofs consume that bound with constant exactly 1.
#[derive(Debug, Clone)]
pub struct SymmetricAlgebraFixture<G: DiscreteGroup> {
    pub group: G,
    pub weight: Weight,
    pub p: PExponent,
    pub certified_unit_norm_bound: bool,
    /// How certification was established (for report parameters).
    pub certification: String,
}

impl<G: DiscreteGroup> SymmetricAlgebraFixture<G> {
    pub fn q(&self) -> f64 {
        self.p.q()
    }

    fn require_certified(&self) -> Result<(), SymcheckError> {
        if self.certified_unit_norm_bound {
            Ok(())
        } else {
            Err(SymcheckError::Uncertified)
        }
    }

    /// Spot-check evenness of the weight, the Definition 2.1 symmetry
    /// condition on a unimodular group.
    pub fn check_evenness(&self, samples: u64, max_len: u64, seed: u64) -> Result<(), SymcheckError> {
        let mut rng = crate::algebra::seeded_rng(seed);
        for _ in 0..samples {
            let x = self.group.sample_ball(&mut rng, max_len);
            let wx = f64::weight_at(&self.weight, &self.group, &x)?;
            let winv = f64::weight_at(&self.weight, &self.group, &self.group.invert(&x))?;
            if (wx - winv).abs() > 1e-12 * wx.abs() {
                return Err(SymcheckError::NotEven { at: self.group.format_elem(&x) });
            }
        }
        Ok(())
    }
}

impl SymmetricAlgebraFixture<CyclicGroup> {
    /// ℤ_n with the constant weight `n^{1/q}`: condition (2) holds with
    /// equality (`n·c^{-2q} = c^{-q}` exactly by construction), which gives
    /// the unit-constant bound.
    pub fn cyclic_constant(n: u64, p: PExponent) -> Self {
        let q = p.q();
        assert!(q.is_finite(), "needs p > 1");
        let c = (n as f64).powf(1.0 / q);
        SymmetricAlgebraFixture {
            group: CyclicGroup::new(n),
            weight: Weight::constant(c),
            p,
            certified_unit_norm_bound: true,
            certification: format!("condition (2) equality: c^q = n = {n} by construction"),
        }
    }
}

impl SymmetricAlgebraFixture<IntGroup> {
    /// ℤ with the calibrated even polynomial weight: certification is the
    /// certified condition-(2) pass on the checked window.
    pub fn int_calibrated(
        degree: u32,
        p: PExponent,
        range_t: i64,
        trunc_n: i64,
    ) -> Result<(Self, VerificationReport), SymcheckError> {
        let q = p.q();
        let (weight, report) = crate::weights::calibrate_even_poly_z(degree, q, range_t, trunc_n)?;
        let fixture = SymmetricAlgebraFixture {
            group: IntGroup,
            weight,
            p,
            certified_unit_norm_bound: report.verdict == Verdict::Pass,
            certification: format!(
                "condition (2) certified on |t| <= {range_t} with truncation {trunc_n}"
            ),
        };
        Ok((fixture, report))
    }
}

/// Both sides of one norm inequality, with the slack-adjusted verdict left
/// to the caller's report assembly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityOutcome {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityOutcome {
    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 {
            if self.lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.lhs / self.rhs
        }
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.lhs <= self.rhs * (1.0 + tolerance) || (self.rhs == 0.0 && self.lhs == 0.0)
    }
}

/// `‖f ∗ g‖_{q,w^{-1}} ≤ ‖f‖_{p,w} · ‖g‖_{q,w^{-1}}` on one pair.
pub fn check_lemma25<G: DiscreteGroup, S: Scalar>(
    fx: &SymmetricAlgebraFixture<G>,
    f: &SparseFunction<G, S>,
    g: &SparseFunction<G, S>,
    budget: u64,
) -> Result<InequalityOutcome, SymcheckError> {
    fx.require_certified()?;
    let q = PExponent::new(fx.q())?;
    let w_inv = Weight::inverse(fx.weight.clone());
    let lhs = f.convolve_with_budget(g, budget)?.weighted_norm(&w_inv, q)?;
    let rhs = f.weighted_norm(&fx.weight, fx.p)? * g.weighted_norm(&w_inv, q)?;
    Ok(InequalityOutcome { lhs, rhs })
}

/// Everything the Theorem 2.6(1) check measures on one nonnegative pair.
#[derive(Debug, Clone)]
pub struct Thm26Outcome {
    /// `‖f∗g‖_2` vs `‖f‖_{p,w}‖g‖_2` — the headline inequality.
    pub headline: InequalityOutcome,
    /// max over supp(f∗g) of `(f∗g)(s) / √((f∗φ)(s)(f∗ψ)(s))` — ≤ 1 by
    /// Cauchy–Bunyakovskii.
    pub pointwise_max_ratio: f64,
    /// `(‖φ‖_{p,w}, ‖g‖_2^{2/p})` and `(‖ψ‖_{q,w^{-1}}, ‖g‖_2^{2/q})`:
    /// the factorization bookkeeping. At p = 2 both pairs collapse to
    /// `‖g‖_2` itself.
    pub phi_norm: (f64, f64),
    pub psi_norm: (f64, f64),
    pub violations: Vec<String>,
}

impl Thm26Outcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Theorem 2.6(1) on one nonnegative pair: the headline bound
/// `‖f∗g‖_2 ≤ ‖f‖_{p,w}‖g‖_2`, the pointwise Cauchy–Bunyakovskii step
/// through the factorization `g² = (g^{2/p})(g^{2/q})`, and the norm
/// bookkeeping `‖φ‖_{p,w} = ‖g‖_2^{2/p}`, `‖ψ‖_{q,w^{-1}} = ‖g‖_2^{2/q}`.
pub fn check_thm26_part1<G: DiscreteGroup>(
    fx: &SymmetricAlgebraFixture<G>,
    f: &SparseFunction<G, f64>,
    g: &SparseFunction<G, f64>,
    tolerance: f64,
    budget: u64,
) -> Result<Thm26Outcome, SymcheckError> {
    fx.require_certified()?;
    f.require_nonneg()?;
    g.require_nonneg()?;
    let p = fx.p;
    let q = PExponent::new(fx.q())?;
    let two = PExponent::new(2.0)?;
    let w_inv = Weight::inverse(fx.weight.clone());
    let mut violations = Vec::new();

    let fg = f.convolve_with_budget(g, budget)?;
    let headline = InequalityOutcome {
        lhs: fg.lp_norm(two),
        rhs: f.weighted_norm(&fx.weight, p)? * g.lp_norm(two),
    };
    if !headline.holds(tolerance) {
        violations.push(format!(
            "headline bound failed: {} > {}",
            headline.lhs, headline.rhs
        ));
    }

    // φ = g^{2/p}/w ∈ L_p^w, ψ = g^{2/q}·w ∈ L_q^{w^{-1}}, so g² = φψ
    let phi = g.pointwise_pow(2.0 / p.p())?.scale_by_weight(&fx.weight, WeightAction::Divide)?;
    let psi = g.pointwise_pow(2.0 / q.p())?.scale_by_weight(&fx.weight, WeightAction::Multiply)?;

    let f_phi = f.convolve_with_budget(&phi, budget)?;
    let f_psi = f.convolve_with_budget(&psi, budget)?;
    let mut pointwise_max_ratio: f64 = 0.0;
    for (s, v) in fg.sorted_entries() {
        let bound = (f_phi.value(s) * f_psi.value(s)).sqrt();
        let ratio = if bound > 0.0 { v / bound } else { f64::INFINITY };
        pointwise_max_ratio = pointwise_max_ratio.max(ratio);
        if *v > bound * (1.0 + tolerance) {
            violations.push(format!(
                "pointwise Cauchy-Bunyakovskii failed at {}: {} > {}",
                fg.group().format_elem(s),
                v,
                bound
            ));
        }
    }

    let g2 = g.lp_norm(two);
    let phi_norm = (phi.weighted_norm(&fx.weight, p)?, g2.powf(2.0 / p.p()));
    let psi_norm = (psi.weighted_norm(&w_inv, q)?, g2.powf(2.0 / q.p()));
    for (name, (got, want)) in [("phi", phi_norm), ("psi", psi_norm)] {
        if (got - want).abs() > tolerance * want.max(1.0) {
            violations.push(format!("{name} bookkeeping: {got} vs {want}"));
        }
    }

    Ok(Thm26Outcome { headline, pointwise_max_ratio, phi_norm, psi_norm, violations })
}

/// How to sweep subset pairs in the Lemma 3.1 check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// Every nonempty pair `(A, B)`; needs `n ≤ 20` bits of mask.
    Exhaustive,
    /// `pairs` uniformly random nonempty pairs.
    Sampled { pairs: u64, seed: u64 },
}

pub const EXHAUSTIVE_MAX_N: u64 = 12;

#[derive(Debug, Clone)]
pub struct Lemma31Outcome {
    pub pairs_checked: u64,
    /// minimal `lhs - rhs` over the sweep, with the pair realizing it
    pub min_margin: f64,
    pub worst_a: Vec<i64>,
    pub worst_b: Vec<i64>,
    pub violations: u64,
}

impl Lemma31Outcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `μ(AB) ≥ μ(B) ‖I_A‖²_{q,w^{-1}}` over subset pairs of ℤ_n.
///
/// For the constant weight `n^{1/q}` at q = 2 the comparison
/// `n·|AB| ≥ |A|·|B|` runs in exact integers; otherwise in f64 with `1e-9`
/// relative slack.
pub fn check_lemma31(
    fx: &SymmetricAlgebraFixture<CyclicGroup>,
    mode: SubsetMode,
) -> Result<Lemma31Outcome, SymcheckError> {
    fx.require_certified()?;
    let n = fx.group.modulus();
    if let SubsetMode::Exhaustive = mode {
        if n > EXHAUSTIVE_MAX_N {
            return Err(SymcheckError::TooLargeForExhaustive { n, max: EXHAUSTIVE_MAX_N });
        }
    }
    let q = fx.q();

    // ‖I_A‖²_{q,w^{-1}} per subset mask, precomputed; exact integer route
    // available when w ≡ n^{1/q} and q = 2
    let nbits = n as u32;
    let full: u32 = if nbits == 32 { u32::MAX } else { (1u32 << nbits) - 1 };
    let wq_by_elem: Vec<f64> = (0..n as i64)
        .map(|t| Ok(f64::weight_at(&fx.weight, &fx.group, &t)?.powf(-q)))
        .collect::<Result<_, WeightError>>()?;
    let exact_constant_route = matches!(&fx.weight, Weight::Constant { value }
        if q == 2.0 && (value * value - n as f64).abs() <= 1e-9 * n as f64);

    let product_size = |a: u32, b: u32| -> u32 {
        // AB = ∪_{x∈A} (B rotated by x), as n-bit cyclic masks
        let mut ab: u32 = 0;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            ab |= ((b << x) | (b >> (nbits - x).min(31))) & full;
            if x == 0 {
                ab |= b;
            }
        }
        ab.count_ones()
    };

    let mask_to_elems = |mask: u32| -> Vec<i64> {
        (0..n as i64).filter(|t| mask >> t & 1 == 1).collect()
    };

    let mut pairs_checked = 0u64;
    let mut violations = 0u64;
    let mut min_margin = f64::INFINITY;
    let mut worst: (u32, u32) = (0, 0);
    let mut check_pair = |a: u32, b: u32| {
        pairs_checked += 1;
        let ab = product_size(a, b);
        let (lhs, rhs, violated) = if exact_constant_route {
            let lhs_int = n * ab as u64;
            let rhs_int = a.count_ones() as u64 * b.count_ones() as u64;
            (lhs_int as f64 / n as f64, rhs_int as f64 / n as f64, lhs_int < rhs_int)
        } else {
            let norm_sq: f64 = (0..n as usize)
                .filter(|t| a >> t & 1 == 1)
                .map(|t| wq_by_elem[t])
                .sum::<f64>()
                .powf(2.0 / q);
            let lhs = ab as f64;
            let rhs = b.count_ones() as f64 * norm_sq;
            (lhs, rhs, lhs < rhs * (1.0 - 1e-9))
        };
        if violated {
            violations += 1;
        }
        let margin = lhs - rhs;
        if margin < min_margin {
            min_margin = margin;
            worst = (a, b);
        }
    };

    match mode {
        SubsetMode::Exhaustive => {
            for a in 1..=full {
                for b in 1..=full {
                    check_pair(a, b);
                }
            }
        }
        SubsetMode::Sampled { pairs, seed } => {
            let mut rng = crate::algebra::seeded_rng(seed);
            for _ in 0..pairs {
                let a = rand::Rng::random_range(&mut rng, 1..=full);
                let b = rand::Rng::random_range(&mut rng, 1..=full);
                check_pair(a, b);
            }
        }
    }

    Ok(Lemma31Outcome {
        pairs_checked,
        min_margin,
        worst_a: mask_to_elems(worst.0),
        worst_b: mask_to_elems(worst.1),
        violations,
    })
}

#[derive(Debug, Clone)]
pub struct Thm32Outcome {
    /// Certified enclosure `[lo, hi]` of `Σ_{t∈ℤ} w(t)^{-q}` (exact
    /// rationals rendered to f64, strings carry the exact values).
    pub lo: f64,
    pub hi: f64,
    pub exact_lo: String,
    pub exact_hi: String,
    pub truncation: i64,
    /// Window checks `Σ_{|t|≤m} w^{-q} ≤ 1`, one `(m, sum, ok)` per window.
    pub windows: Vec<(i64, f64, bool)>,
}

impl Thm32Outcome {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn windows_pass(&self) -> bool {
        self.windows.iter().all(|(_, _, ok)| *ok)
    }
}

/// Summability of `w^{-q}` on ℤ with a certified enclosure: dyadic-rounded
/// exact partial sums over `|t| ≤ N` bracket from below, plus the integral
/// tail bound from above, with `N` chosen from the requested width. Also
/// checks the normalization consequence `Σ_{|t|≤m} w^{-q} ≤ 1` on the
/// given windows (certified via the upper rounding).
pub fn check_thm32_summability(
    w: &Weight,
    q: f64,
    enclosure_width: f64,
    windows: &[i64],
) -> Result<Thm32Outcome, SymcheckError> {
    let (scale, degree) = even_poly_parts(w)?;
    if q.fract() != 0.0 || q < 1.0 {
        return Err(WeightError::NotExactlyRepresentable {
            what: format!("certified summability with q = {q}"),
        }
        .into());
    }
    let qi = q as u32;
    if degree * qi <= 1 {
        return Err(WeightError::NonSummable { degree, q }.into());
    }

    // tail(N) = 2 c^{-q} N^{1-dq}/(dq-1) ≤ width/2  ⇒  N from the width
    let dq = (degree * qi) as f64;
    let c_negq = scale.as_f64().powi(-(qi as i32));
    let n_min = (2.0 * c_negq / ((dq - 1.0) * 0.5 * enclosure_width)).powf(1.0 / (dq - 1.0));
    let trunc = (n_min.ceil() as i64).max(windows.iter().copied().max().unwrap_or(2)).max(2);

    let mut bounds = DyadicBounds::new(160);
    let mut window_sums: Vec<(i64, f64, bool)> = Vec::new();
    let mut remaining: Vec<i64> = windows.to_vec();
    remaining.sort_unstable();
    let mut next = 0usize;
    for t in 0..=trunc {
        let term = even_poly_neg_q(scale, degree, qi, t);
        if t == 0 {
            bounds.add(&term);
        } else {
            bounds.add(&term);
            bounds.add(&term);
        }
        while next < remaining.len() && remaining[next] == t {
            let upper = bounds.upper();
            window_sums.push((t, upper.as_f64(), upper <= BigRational::one()));
            next += 1;
        }
    }
    let tail = even_poly_tail_bound(scale, degree, qi, trunc);
    let lo = bounds.lower();
    let hi = bounds.upper() + tail;

    Ok(Thm32Outcome {
        lo: lo.as_f64(),
        hi: hi.as_f64(),
        exact_lo: lo.to_repr(),
        exact_hi: hi.to_repr(),
        truncation: trunc,
        windows: window_sums,
    })
}

/// Re-certify an int fixture's weight on a window (exposed so suites can
/// echo the certification into their reports).
pub fn recheck_int_fixture(
    fx: &SymmetricAlgebraFixture<IntGroup>,
    range_t: i64,
    trunc_n: i64,
) -> Result<VerificationReport, SymcheckError> {
    Ok(check_condition2_z(&fx.weight, fx.q(), range_t, trunc_n)?)
}

/// `(f*)* = f` and `(f∗g)* = g* ∗ f*`, exactly, on the rational path.
pub fn check_involution_identities<G: DiscreteGroup>(
    f: &SparseFunction<G, CRational>,
    g: &SparseFunction<G, CRational>,
    budget: u64,
) -> Result<bool, SymcheckError> {
    let double_star = f.involution().involution() == *f;
    let product_star = f.convolve_with_budget(g, budget)?.involution()
        == g.involution().convolve_with_budget(&f.involution(), budget)?;
    Ok(double_star && product_star)
}

/// The Lemma 2.5 proof's pairing transformation,
/// `⟨φ, f∗g⟩ = ⟨conj(f*)∗φ, g⟩`, exactly on the rational path.
pub fn check_duality_pairing<G: DiscreteGroup>(
    f: &SparseFunction<G, CRational>,
    phi: &SparseFunction<G, CRational>,
    g: &SparseFunction<G, CRational>,
    budget: u64,
) -> Result<bool, SymcheckError> {
    let lhs = phi.pairing(&f.convolve_with_budget(g, budget)?)?;
    let f_bar_star = f.involution().map_values(|v| v.conj());
    let rhs = f_bar_star.convolve_with_budget(phi, budget)?.pairing(g)?;
    Ok(lhs == rhs)
}

/// `(‖f*‖_{p,w}, ‖f‖_{p,w})` — equal for even weights (Definition 2.1).
pub fn norm_symmetry_pair<G: DiscreteGroup, S: Scalar>(
    fx: &SymmetricAlgebraFixture<G>,
    f: &SparseFunction<G, S>,
) -> Result<(f64, f64), SymcheckError> {
    let star = f.involution();
    Ok((
        star.weighted_norm(&fx.weight, fx.p)?,
        f.weighted_norm(&fx.weight, fx.p)?,
    ))
}

/// `‖f*‖_{p,w} = ‖f‖_{p,w̃}` with `w̃ = w∘inv`, the Definition 2.1
/// computation, valid for any weight on a unimodular group.
pub fn norm_tilde_pair<G: DiscreteGroup, S: Scalar>(
    weight: &Weight,
    p: PExponent,
    f: &SparseFunction<G, S>,
) -> Result<(f64, f64), SymcheckError> {
    let tilde = Weight::reflected(weight.clone());
    Ok((
        f.involution().weighted_norm(weight, p)?,
        f.weighted_norm(&tilde, p)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_complex, random_nonneg, random_rational};
    use crate::groups::IntGroup;
    use num_complex::Complex;

    fn z6_fixture() -> SymmetricAlgebraFixture<CyclicGroup> {
        SymmetricAlgebraFixture::cyclic_constant(6, PExponent::new(2.0).unwrap())
    }

    #[test]
    fn uncertified_fixture_is_refused() {
        let mut fx = z6_fixture();
        fx.certified_unit_norm_bound = false;
        let f = random_complex(&fx.group, 1, 4, 3).unwrap();
        assert!(matches!(
            check_lemma25(&fx, &f, &f, 1_000_000),
            Err(SymcheckError::Uncertified)
        ));
    }

    #[test]
    fn lemma25_identity_convolution_is_equality() {
        // f = δ_e: lhs = ‖g‖_{q,w^{-1}} and rhs = w(e)·‖g‖_{q,w^{-1}}
        let fx = z6_fixture();
        let de = SparseFunction::delta(fx.group, 0i64, Complex::new(1.0, 0.0)).unwrap();
        let g = random_complex(&fx.group, 3, 5, 3).unwrap();
        let out = check_lemma25(&fx, &de, &g, 1_000_000).unwrap();
        let we = f64::weight_at(&fx.weight, &fx.group, &0).unwrap();
        assert!((out.lhs * we - out.rhs).abs() <= 1e-12 * out.rhs);
        assert!(out.holds(1e-9));
    }

    #[test]
    fn lemma25_random_pairs_hold() {
        let fx = z6_fixture();
        for seed in 0..100u64 {
            let f = random_complex(&fx.group, seed, 6, 3).unwrap();
            let g = random_complex(&fx.group, seed + 1000, 6, 3).unwrap();
            let out = check_lemma25(&fx, &f, &g, 1_000_000).unwrap();
            assert!(out.holds(1e-9), "seed {seed}: {} > {}", out.lhs, out.rhs);
        }
    }

    #[test]
    fn thm26_part1_on_z6() {
        let fx = z6_fixture();
        for seed in 0..100u64 {
            let f = random_nonneg(&fx.group, seed, 6, 3).unwrap();
            let g = random_nonneg(&fx.group, seed + 500, 6, 3).unwrap();
            let out = check_thm26_part1(&fx, &f, &g, 1e-9, 1_000_000).unwrap();
            assert!(out.passed(), "seed {seed}: {:?}", out.violations);
            assert!(out.pointwise_max_ratio <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn thm26_single_point_g() {
        // g = δ_x: ‖f∗δ_x‖_2 = ‖f‖_2 ≤ ‖f‖_{p,w} when w ≥ 1
        let fx = z6_fixture();
        let g = SparseFunction::delta(fx.group, 2i64, 1.0f64).unwrap();
        let f = random_nonneg(&fx.group, 9, 6, 3).unwrap();
        let out = check_thm26_part1(&fx, &f, &g, 1e-9, 1_000_000).unwrap();
        assert!(out.passed(), "{:?}", out.violations);
        let two = PExponent::new(2.0).unwrap();
        assert!((out.headline.lhs - f.lp_norm(two)).abs() < 1e-12);
    }

    #[test]
    fn thm26_bookkeeping_exact_at_p2() {
        // ‖(g/w)·w‖_2 = ‖g‖_2 exactly on the rational path at p = 2
        let fx = z6_fixture();
        let g = random_rational(&fx.group, 17, 5, 3).unwrap();
        let phi = g
            .scale_by_weight(&fx.weight, WeightAction::Divide)
            .unwrap();
        let lhs = phi.weighted_norm_sq(&fx.weight).unwrap();
        let rhs = g.weighted_norm_sq(&Weight::constant(1.0)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lemma31_identity_and_full_subsets() {
        let fx = SymmetricAlgebraFixture::cyclic_constant(8, PExponent::new(2.0).unwrap());
        // A = {0}: AB = B, margin determined by w(0)
        let out = check_lemma31(&fx, SubsetMode::Sampled { pairs: 200, seed: 4 }).unwrap();
        assert!(out.passed());
        // A = B = ℤ_8 gives equality: |AB| = 8 = 8·(8/8)
        let exhaustive = check_lemma31(&fx, SubsetMode::Exhaustive).unwrap();
        assert!(exhaustive.passed());
        assert_eq!(exhaustive.pairs_checked, 255 * 255);
        assert!(exhaustive.min_margin <= 1e-12, "equality is attained");
    }

    #[test]
    fn lemma31_rejects_oversized_exhaustive() {
        let fx = SymmetricAlgebraFixture::cyclic_constant(16, PExponent::new(2.0).unwrap());
        assert!(matches!(
            check_lemma31(&fx, SubsetMode::Exhaustive),
            Err(SymcheckError::TooLargeForExhaustive { .. })
        ));
    }

    #[test]
    fn thm32_enclosure_for_unit_scale() {
        let w = Weight::even_poly_z(BigRational::one(), 2);
        let out = check_thm32_summability(&w, 2.0, 1e-6, &[]).unwrap();
        assert!(out.width() <= 1e-6, "width {}", out.width());
        // Σ (1+t²)^{-2} = 1.61367395084581738…, frozen from the
        // independent high-precision oracle
        assert!(out.contains(1.613_673_950_845_817_4), "[{}, {}]", out.lo, out.hi);
    }

    #[test]
    fn thm32_rejects_constant_weight() {
        let w = Weight::constant(2.0);
        assert!(check_thm32_summability(&w, 2.0, 1e-6, &[]).is_err());
    }

    #[test]
    fn thm32_calibrated_windows_stay_below_one() {
        let (fx, report) =
            SymmetricAlgebraFixture::int_calibrated(2, PExponent::new(2.0).unwrap(), 20, 400)
                .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        let windows: Vec<i64> = (1..=100).collect();
        let out = check_thm32_summability(&fx.weight, 2.0, 1e-6, &windows).unwrap();
        assert!(out.windows_pass());
        assert_eq!(out.windows.len(), 100);
    }

    #[test]
    fn involution_identities_exact() {
        let g = IntGroup;
        for seed in 0..20u64 {
            let f = random_rational(&g, seed, 12, 20).unwrap();
            let h = random_rational(&g, seed + 77, 12, 20).unwrap();
            assert!(check_involution_identities(&f, &h, 1_000_000).unwrap());
        }
    }

    #[test]
    fn duality_pairing_exact() {
        let group = crate::groups::FreeGroup::new(2);
        for seed in 0..10u64 {
            let f = random_rational(&group, seed, 8, 4).unwrap();
            let phi = random_rational(&group, seed + 30, 8, 4).unwrap();
            let g = random_rational(&group, seed + 60, 8, 4).unwrap();
            assert!(check_duality_pairing(&f, &phi, &g, 1_000_000).unwrap());
        }
    }

    #[test]
    fn norm_symmetry_on_even_fixture() {
        let fx = z6_fixture();
        fx.check_evenness(200, 10, 3).unwrap();
        for seed in 0..50u64 {
            let f = random_complex(&fx.group, seed, 6, 3).unwrap();
            let (star, plain) = norm_symmetry_pair(&fx, &f).unwrap();
            assert!((star - plain).abs() <= 1e-12 * plain.max(1.0));
        }
    }

    #[test]
    fn norm_tilde_identity_any_weight() {
        // ‖f*‖_{p,w} = ‖f‖_{p,w∘inv} holds for asymmetric weights too
        let w = Weight::table_z(
            [(1, BigRational::from_u64(2)), (-1, BigRational::from_u64(5))].into(),
            BigRational::one(),
        );
        let p = PExponent::new(1.5).unwrap();
        for seed in 0..50u64 {
            let f = random_complex(&IntGroup, seed, 10, 5).unwrap();
            let (lhs, rhs) = norm_tilde_pair(&w, p, &f).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0), "{lhs} vs {rhs}");
        }
    }
}
