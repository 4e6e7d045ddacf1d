//! Verification engine for the weighted-algebra bound on free groups with
//! the length weight `(|α|+1)^a`, `a > 2`, and for the `p > 2` obstruction.
//!
//! The chain being exercised, for nonnegative `f, g` and `1 < p ≤ 2`:
//! `h = w·(f/w ∗ g/w)` splits pointwise as `h ≤ 2^a(φ + ψ)`; `φ`
//! decomposes over spheres and common-prefix classes into blocks
//! `φ_kj` with `‖φ_kj‖_p ≤ ‖f‖_p‖g‖_p`; summing the triangle inequality
//! gives `‖h‖_p ≤ 2·2^a·C_a·‖f‖_p·‖g‖_p` with `C_a = Σ (k+1)^{1-a}`.

use crate::algebra::{AlgebraError, PExponent, SparseFunction, WeightAction};
use crate::groups::{DiscreteGroup, FreeGroup, Word};
use crate::report::{VerificationReport, Verdict, Witness};
use crate::scalar::{RealScalar, Scalar};
use crate::series::{c_constant_enclosure, Enclosure, SeriesError};
use crate::weights::{Weight, WeightEval, WeightError};
use num_rational::BigRational;
use serde_json::json;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Theorem1Error {
    #[error("exponent a = {a} must exceed 2 (the constant diverges otherwise)")]
    ExponentTooSmall { a: f64 },
    #[error("theorem 1.1 verification needs 1 < p <= 2, got {p}")]
    POutOfRange { p: f64 },
    #[error("no admissible alpha exists for p = {p}: the range (1/p, 1/2) is empty")]
    EmptyAdmissibleRange { p: f64 },
    #[error("alpha = {alpha} is outside (1/p, 1/2) = ({lo}, 0.5)", lo = 1.0 / *p)]
    AlphaOutOfRange { alpha: f64, p: f64 },
    #[error("schedule must be nonempty and strictly increasing")]
    BadSchedule,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Validated parameters plus the certified constant, computed once and
/// shared across a sweep.
#[derive(Debug, Clone)]
pub struct TheoremConfig {
    pub a: f64,
    pub p: PExponent,
    pub tolerance: f64,
    pub budget: u64,
    /// `2^a`, the case-split factor (8 for a = 3).
    pub factor: f64,
    /// Certified enclosure of `C_a = Σ (k+1)^{1-a}`.
    pub c_constant: Enclosure,
}

impl TheoremConfig {
    pub fn new(a: f64, p: PExponent, tolerance: f64, budget: u64) -> Result<Self, Theorem1Error> {
        if !(a > 2.0) {
            return Err(Theorem1Error::ExponentTooSmall { a });
        }
        if !(p.p() > 1.0 && p.p() <= 2.0) {
            return Err(Theorem1Error::POutOfRange { p: p.p() });
        }
        let c_constant = c_constant_enclosure(a, 1e-9)?;
        Ok(TheoremConfig {
            a,
            p,
            tolerance,
            budget,
            factor: 2f64.powf(a),
            c_constant,
        })
    }

    /// The bound constant `2 · 2^a · C_a`, taken at the certified lower end
    /// of the enclosure so a pass is the conservative outcome.
    pub fn total_constant(&self) -> f64 {
        2.0 * self.factor * self.c_constant.lo
    }

    pub fn weight(&self) -> Weight {
        Weight::length_poly(self.a)
    }
}

/// `h = w · (f/w ∗ g/w)`, the function Theorem 1.1 bounds.
pub fn build_h<G: DiscreteGroup, S: Scalar>(
    f: &SparseFunction<G, S>,
    g: &SparseFunction<G, S>,
    w: &Weight,
    budget: u64,
) -> Result<SparseFunction<G, S>, Theorem1Error>
where
    S::Real: WeightEval,
{
    let fw = f.scale_by_weight(w, WeightAction::Divide)?;
    let gw = g.scale_by_weight(w, WeightAction::Divide)?;
    Ok(fw.convolve_with_budget(&gw, budget)?.scale_by_weight(w, WeightAction::Multiply)?)
}

/// The two halves of the case split:
/// `φ(α) = Σ_β f(β) g(β^{-1}α)/w(β)` and
/// `ψ(α) = Σ_β f(β) g(β^{-1}α)/w(β^{-1}α)`.
/// Inputs must be nonnegative (the proof reduces to that case).
pub fn split_phi_psi<G: DiscreteGroup, S: Scalar>(
    f: &SparseFunction<G, S>,
    g: &SparseFunction<G, S>,
    w: &Weight,
    budget: u64,
) -> Result<(SparseFunction<G, S>, SparseFunction<G, S>), Theorem1Error>
where
    S::Real: WeightEval,
{
    f.require_nonneg()?;
    g.require_nonneg()?;
    let phi = f
        .scale_by_weight(w, WeightAction::Divide)?
        .convolve_with_budget(g, budget)?;
    let psi = f.convolve_with_budget(&g.scale_by_weight(w, WeightAction::Divide)?, budget)?;
    Ok((phi, psi))
}

/// The per-(k, j) pieces of `φ`: `φ_kj(α) = Σ_{β ∈ A_kj(α)} f(β) g(β^{-1}α)`,
/// where `A_kj(α)` is the set of length-k words sharing exactly a length-j
/// prefix with α. Keys are `(k, j)`; only nonzero blocks are stored.
pub struct PhiBlocks<S: Scalar> {
    pub blocks: BTreeMap<(u64, u64), SparseFunction<FreeGroup, S>>,
}

pub fn phi_kj_family<S: Scalar>(
    f: &SparseFunction<FreeGroup, S>,
    g: &SparseFunction<FreeGroup, S>,
    budget: u64,
) -> Result<PhiBlocks<S>, Theorem1Error> {
    f.require_nonneg()?;
    g.require_nonneg()?;
    if f.group() != g.group() {
        return Err(AlgebraError::GroupMismatch.into());
    }
    let group = *f.group();
    let required = f.support_size() as u128 * g.support_size() as u128;
    if required > budget as u128 {
        return Err(AlgebraError::BudgetExceeded { required, budget }.into());
    }

    let mut blocks: BTreeMap<(u64, u64), Vec<(Word, S)>> = BTreeMap::new();
    for (beta, fv) in f.sorted_entries() {
        let k = beta.len() as u64;
        for (gamma, gv) in g.sorted_entries() {
            let alpha = group.multiply(beta, gamma);
            let j = alpha.common_prefix_len(beta) as u64;
            blocks
                .entry((k, j))
                .or_default()
                .push((alpha, (*fv).clone() * (*gv).clone()));
        }
    }
    let blocks = blocks
        .into_iter()
        .map(|(kj, pairs)| Ok((kj, SparseFunction::from_entries(group, pairs)?)))
        .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
    Ok(PhiBlocks { blocks })
}

/// The ψ blocks, by the substitution `γ = β^{-1}α`: reuse the φ machinery
/// on the reflected pair `(g^∇, f^∇)` and reflect the result, so the prefix
/// matching effectively runs on suffixes. Requires an even weight, which
/// the length weight is.
pub fn psi_kj_family<S: Scalar>(
    f: &SparseFunction<FreeGroup, S>,
    g: &SparseFunction<FreeGroup, S>,
    budget: u64,
) -> Result<PhiBlocks<S>, Theorem1Error> {
    let swapped = phi_kj_family(&g.reflected(), &f.reflected(), budget)?;
    let blocks = swapped
        .blocks
        .into_iter()
        .map(|(kj, block)| (kj, block.reflected()))
        .collect();
    Ok(PhiBlocks { blocks })
}

/// Everything `verify_theorem1` measures for one input pair, kept for
/// reporting and for the acceptance suite to interrogate.
pub struct DecompositionTrace<S: Scalar> {
    pub h: SparseFunction<FreeGroup, S>,
    pub phi: SparseFunction<FreeGroup, S>,
    pub psi: SparseFunction<FreeGroup, S>,
    pub phi_blocks: PhiBlocks<S>,
    pub psi_blocks: PhiBlocks<S>,
    pub phi_block_norms: BTreeMap<(u64, u64), f64>,
    pub psi_block_norms: BTreeMap<(u64, u64), f64>,
    pub factor: f64,
    pub c_constant: Enclosure,
    pub total_constant: f64,
}

pub struct TheoremOutcome<S: Scalar> {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    /// max over supp h of `h(α) / (2^a (φ(α) + ψ(α)))` — the proof says ≤ 1.
    pub pointwise_max_ratio: f64,
    /// max over blocks of `‖block‖_p / (‖f‖_p ‖g‖_p)` — the proof says ≤ 1.
    pub block_max_ratio: f64,
    pub blocks_checked: usize,
    /// (‖φ‖_p, Σ_kj ‖φ_kj‖_p (k+1)^{-a}) — triangle inequality over blocks.
    pub triangle_phi: (f64, f64),
    pub triangle_psi: (f64, f64),
    pub violations: Vec<String>,
    pub trace: DecompositionTrace<S>,
}

impl<S: Scalar> TheoremOutcome<S> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Run the full chain on one nonnegative pair. Complex inputs should be
/// routed through [`SparseFunction::modulus`] first, which only increases
/// the left side.
pub fn verify_theorem1<S: Scalar>(
    f: &SparseFunction<FreeGroup, S>,
    g: &SparseFunction<FreeGroup, S>,
    cfg: &TheoremConfig,
) -> Result<TheoremOutcome<S>, Theorem1Error>
where
    S::Real: WeightEval,
{
    f.require_nonneg()?;
    g.require_nonneg()?;
    let w = cfg.weight();
    let tol = cfg.tolerance;
    let mut violations = Vec::new();

    let norm_f = f.lp_norm(cfg.p);
    let norm_g = g.lp_norm(cfg.p);

    let h = build_h(f, g, &w, cfg.budget)?;
    let lhs = h.lp_norm(cfg.p);
    let rhs = cfg.total_constant() * norm_f * norm_g;

    let (phi, psi) = split_phi_psi(f, g, &w, cfg.budget)?;

    // pointwise h ≤ 2^a (φ + ψ)
    let mut pointwise_max_ratio: f64 = 0.0;
    for (alpha, hv) in h.sorted_entries() {
        let hv = hv.abs_sq().as_f64().sqrt();
        let bound = cfg.factor
            * (phi.value(alpha).abs_sq().as_f64().sqrt()
                + psi.value(alpha).abs_sq().as_f64().sqrt());
        let ratio = if bound > 0.0 { hv / bound } else { f64::INFINITY };
        if ratio > pointwise_max_ratio {
            pointwise_max_ratio = ratio;
        }
        if hv > bound * (1.0 + tol) {
            violations.push(format!(
                "pointwise split failed at {alpha}: h = {hv} > {bound}"
            ));
        }
    }

    // per-block norms against ‖f‖_p ‖g‖_p
    let phi_blocks = phi_kj_family(f, g, cfg.budget)?;
    let psi_blocks = psi_kj_family(f, g, cfg.budget)?;
    let product = norm_f * norm_g;
    let mut block_max_ratio: f64 = 0.0;
    let mut blocks_checked = 0usize;
    let mut norms = |family: &PhiBlocks<S>, tag: &str| -> BTreeMap<(u64, u64), f64> {
        let mut out = BTreeMap::new();
        for ((k, j), block) in &family.blocks {
            let norm = block.lp_norm(cfg.p);
            blocks_checked += 1;
            if product > 0.0 {
                let ratio = norm / product;
                if ratio > block_max_ratio {
                    block_max_ratio = ratio;
                }
                if norm > product * (1.0 + tol) {
                    violations.push(format!(
                        "{tag} block ({k},{j}) norm {norm} exceeds {product}"
                    ));
                }
            }
            out.insert((*k, *j), norm);
        }
        out
    };
    let phi_block_norms = norms(&phi_blocks, "phi");
    let psi_block_norms = norms(&psi_blocks, "psi");

    // triangle inequality over the block sum
    let decay = |k: u64| ((k + 1) as f64).powf(-cfg.a);
    let phi_norm = phi.lp_norm(cfg.p);
    let psi_norm = psi.lp_norm(cfg.p);
    let phi_sum: f64 = phi_block_norms.iter().map(|((k, _), n)| n * decay(*k)).sum();
    let psi_sum: f64 = psi_block_norms.iter().map(|((k, _), n)| n * decay(*k)).sum();
    if phi_norm > phi_sum * (1.0 + tol) {
        violations.push(format!("triangle inequality failed for phi: {phi_norm} > {phi_sum}"));
    }
    if psi_norm > psi_sum * (1.0 + tol) {
        violations.push(format!("triangle inequality failed for psi: {psi_norm} > {psi_sum}"));
    }

    // the headline bound
    if lhs > rhs * (1.0 + tol) {
        violations.push(format!("final bound failed: {lhs} > {rhs}"));
    }

    let total_constant = cfg.total_constant();
    Ok(TheoremOutcome {
        lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        norm_f,
        norm_g,
        pointwise_max_ratio,
        block_max_ratio,
        blocks_checked,
        triangle_phi: (phi_norm, phi_sum),
        triangle_psi: (psi_norm, psi_sum),
        violations,
        trace: DecompositionTrace {
            h,
            phi,
            psi,
            phi_blocks,
            psi_blocks,
            phi_block_norms,
            psi_block_norms,
            factor: cfg.factor,
            c_constant: cfg.c_constant,
            total_constant,
        },
    })
}

/// Exact reconstruction `φ = Σ_{k,j} φ_kj (k+1)^{-a}` on the rational path.
/// The left side is computed by the scale-then-convolve route, the right by
/// the block decomposition; equality must be exact.
pub fn check_exact_reconstruction(
    f: &SparseFunction<FreeGroup, BigRational>,
    g: &SparseFunction<FreeGroup, BigRational>,
    a: u32,
    budget: u64,
) -> Result<bool, Theorem1Error> {
    let w = Weight::length_poly(a as f64);
    let phi = f
        .scale_by_weight(&w, WeightAction::Divide)?
        .convolve_with_budget(g, budget)?;
    let blocks = phi_kj_family(f, g, budget)?;
    let mut assembled = SparseFunction::zero(*f.group());
    for ((k, _), block) in &blocks.blocks {
        let coeff = BigRational::from_u64(k + 1).powi(-(a as i32));
        assembled = assembled.try_add(&block.scaled(&coeff))?;
    }
    Ok(assembled == phi)
}

/// Sample pairs (α, β) and verify the two cases behind the pointwise split:
/// if `k ≥ n/2` then `w(α)/w(β) ≤ 2^a`, else `|β^{-1}α| ≥ n-k` and
/// `w(α)/w(β^{-1}α) ≤ 2^a`.
pub fn case_split_factor_check(
    a: f64,
    group: &FreeGroup,
    trials: u64,
    max_len: u64,
    seed: u64,
) -> Result<VerificationReport, Theorem1Error> {
    if !(a > 0.0) {
        return Err(Theorem1Error::ExponentTooSmall { a });
    }
    let factor = 2f64.powf(a);
    let wlen = |len: u64| ((len + 1) as f64).powf(a);
    let mut rng = crate::algebra::seeded_rng(seed);
    let mut max_ratio: f64 = 0.0;
    let mut worst: Option<(Word, Word, &'static str)> = None;
    let mut violations = 0u64;

    for _ in 0..trials {
        let alpha = group.sample_ball(&mut rng, max_len);
        let beta = group.sample_ball(&mut rng, max_len);
        let n = alpha.len() as u64;
        let k = beta.len() as u64;
        let (ratio, case) = if 2 * k >= n {
            (wlen(n) / wlen(k), "k >= n/2")
        } else {
            let rest = group.multiply(&beta.inverse(), &alpha);
            if (rest.len() as u64) < n - k {
                violations += 1;
                (f64::INFINITY, "length floor")
            } else {
                (wlen(n) / wlen(rest.len() as u64), "k < n/2")
            }
        };
        if ratio > max_ratio {
            max_ratio = ratio;
            worst = Some((alpha, beta, case));
        }
        if ratio > factor * (1.0 + 1e-12) {
            violations += 1;
        }
    }

    let verdict = if violations == 0 { Verdict::Pass } else { Verdict::Fail };
    let mut report = VerificationReport::new(
        "theorem1.case_split",
        json!({"a": a, "rank": group.rank(), "max_len": max_len}),
    )
    .with_sides(max_ratio, factor)
    .with_verdict(verdict)
    .with_seed(seed)
    .with_trials(trials);
    if let Some((alpha, beta, case)) = worst {
        report = report.with_witness(
            Witness::new("worst_pair")
                .with_element("alpha", alpha.to_string())
                .with_element("beta", beta.to_string())
                .with_number("case", case),
        );
    }
    Ok(report)
}

/// One row of the Proposition 1.2 demonstration at truncation `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prop12Row {
    pub n: u64,
    /// `S_n = Σ_{m≤n} m^{-2α}` — the pairing sum that must diverge.
    pub pairing_sum: f64,
    /// `Σ_{m≤n} m^{-αp}` — the p-th power of the partial norm.
    pub p_norm_pow: f64,
    /// `P_n`, the partial p-norm itself.
    pub p_norm: f64,
}

#[derive(Debug, Clone)]
pub struct Prop12Outcome {
    pub rows: Vec<Prop12Row>,
    /// Integral-comparison lower bounds for each S increment between
    /// consecutive schedule points (certifies unbounded growth).
    pub growth_lower_bounds: Vec<f64>,
    /// Integral bound on the neglected norm tail `Σ_{m > n_last} m^{-αp}`
    /// (certifies convergence of the partial norms).
    pub p_tail_bound: f64,
    pub violations: Vec<String>,
}

impl Prop12Outcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The `p > 2` obstruction made concrete: `f(m) = m^{-α}` with
/// `1/p < α < 1/2` has convergent partial p-norms while the pairing sums
/// `Σ f(m) g(m^{-1})` diverge. Such an α exists precisely when p > 2.
pub fn prop12_divergence(
    p: f64,
    alpha: f64,
    schedule: &[u64],
) -> Result<Prop12Outcome, Theorem1Error> {
    if !(p > 2.0) {
        return Err(Theorem1Error::EmptyAdmissibleRange { p });
    }
    if !(alpha > 1.0 / p && alpha < 0.5) {
        return Err(Theorem1Error::AlphaOutOfRange { alpha, p });
    }
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
        return Err(Theorem1Error::BadSchedule);
    }

    let s_exp = 2.0 * alpha;
    let p_exp = alpha * p;
    let mut rows = Vec::with_capacity(schedule.len());
    let mut s_sum = 0.0f64;
    let mut s_carry = 0.0f64;
    let mut p_sum = 0.0f64;
    let mut p_carry = 0.0f64;
    let mut next = 0usize;
    for m in 1..=*schedule.last().expect("nonempty") {
        let mf = m as f64;
        let term = mf.powf(-s_exp);
        let y = term - s_carry;
        let t = s_sum + y;
        s_carry = (t - s_sum) - y;
        s_sum = t;

        let term = mf.powf(-p_exp);
        let y = term - p_carry;
        let t = p_sum + y;
        p_carry = (t - p_sum) - y;
        p_sum = t;

        if m == schedule[next] {
            rows.push(Prop12Row {
                n: m,
                pairing_sum: s_sum,
                p_norm_pow: p_sum,
                p_norm: p_sum.powf(1.0 / p),
            });
            next += 1;
        }
    }

    // integral comparison: for decreasing x^{-e},
    //   ∫_{N1+1}^{N2+1} x^{-e} dx ≤ Σ_{N1 < m ≤ N2} m^{-e} ≤ ∫_{N1}^{N2} x^{-e} dx
    let integral = |e: f64, a: f64, b: f64| (b.powf(1.0 - e) - a.powf(1.0 - e)) / (1.0 - e);
    let mut violations = Vec::new();
    let mut growth_lower_bounds = Vec::new();
    for pair in rows.windows(2) {
        let (n1, n2) = (pair[0].n as f64, pair[1].n as f64);
        let grew = pair[1].pairing_sum - pair[0].pairing_sum;
        let lower = integral(s_exp, n1 + 1.0, n2 + 1.0);
        growth_lower_bounds.push(lower);
        if grew < lower * (1.0 - 1e-9) {
            violations.push(format!(
                "pairing sum grew {grew} from n={n1} to n={n2}, below the certified {lower}"
            ));
        }
        let p_grew = pair[1].p_norm_pow - pair[0].p_norm_pow;
        let upper = integral(p_exp, n1, n2);
        if p_grew > upper * (1.0 + 1e-9) {
            violations.push(format!(
                "norm power grew {p_grew} from n={n1} to n={n2}, above the certified {upper}"
            ));
        }
    }
    let n_last = rows.last().expect("nonempty").n as f64;
    let p_tail_bound = n_last.powf(1.0 - p_exp) / (p_exp - 1.0);

    Ok(Prop12Outcome { rows, growth_lower_bounds, p_tail_bound, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_nonneg, random_nonneg_rational, SparseFunction};
    use crate::groups::Word;

    fn w(tokens: &[i64]) -> Word {
        Word::from_reduced(tokens.to_vec()).unwrap()
    }

    fn cfg(a: f64, p: f64) -> TheoremConfig {
        TheoremConfig::new(a, PExponent::new(p).unwrap(), 1e-9, 10_000_000).unwrap()
    }

    #[test]
    fn config_validates_ranges() {
        assert!(matches!(
            TheoremConfig::new(2.0, PExponent::new(2.0).unwrap(), 1e-9, 1000),
            Err(Theorem1Error::ExponentTooSmall { .. })
        ));
        assert!(matches!(
            TheoremConfig::new(3.0, PExponent::new(3.0).unwrap(), 1e-9, 1000),
            Err(Theorem1Error::POutOfRange { .. })
        ));
        assert!(matches!(
            TheoremConfig::new(3.0, PExponent::new(1.0).unwrap(), 1e-9, 1000),
            Err(Theorem1Error::POutOfRange { .. })
        ));
    }

    #[test]
    fn h_examples() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);

        // f = g = δ_e: w(e) = 1 cancels and h = δ_e
        let de = SparseFunction::delta(g, Word::identity(), 1.0f64).unwrap();
        let h = build_h(&de, &de, &lp3, 1_000_000).unwrap();
        assert_eq!(h, de);

        // f = δ_a, g = δ_b: h = (27/64) δ_ab
        let da = SparseFunction::delta(g, w(&[1]), 1.0f64).unwrap();
        let db = SparseFunction::delta(g, w(&[2]), 1.0f64).unwrap();
        let h = build_h(&da, &db, &lp3, 1_000_000).unwrap();
        assert_eq!(h.support_size(), 1);
        assert!((h.value(&w(&[1, 2])) - 27.0 / 64.0).abs() < 1e-15);

        // nonneg inputs give a nonneg h
        let f = random_nonneg(&g, 3, 40, 8).unwrap();
        let gg = random_nonneg(&g, 4, 40, 8).unwrap();
        let h = build_h(&f, &gg, &lp3, 10_000_000).unwrap();
        assert!(h.require_nonneg().is_ok());
    }

    #[test]
    fn phi_psi_single_pair() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let beta0 = w(&[1, 2]);
        let gamma0 = w(&[1]);
        let f = SparseFunction::delta(g, beta0.clone(), 1.0f64).unwrap();
        let gg = SparseFunction::delta(g, gamma0.clone(), 1.0f64).unwrap();
        let (phi, psi) = split_phi_psi(&f, &gg, &lp3, 1_000_000).unwrap();
        let product = w(&[1, 2, 1]);
        assert_eq!(phi.support_size(), 1);
        assert!((phi.value(&product) - 1.0 / 27.0).abs() < 1e-15); // 1/w(β₀)
        assert!((psi.value(&product) - 1.0 / 8.0).abs() < 1e-15); // 1/w(γ₀)
    }

    #[test]
    fn psi_is_phi_with_roles_swapped() {
        // ψ(f,g) = [φ(g^∇, f^∇)]∘inv for the (even) length weight — exact
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let f = random_nonneg_rational(&g, 21, 25, 6).unwrap();
        let gg = random_nonneg_rational(&g, 22, 25, 6).unwrap();
        let (_, psi) = split_phi_psi(&f, &gg, &lp3, 10_000_000).unwrap();
        let (phi_swapped, _) =
            split_phi_psi(&gg.reflected(), &f.reflected(), &lp3, 10_000_000).unwrap();
        assert_eq!(psi, phi_swapped.reflected());
    }

    #[test]
    fn pointwise_split_factor_eight() {
        let g = FreeGroup::new(2);
        let config = cfg(3.0, 2.0);
        for seed in 0..10u64 {
            let f = random_nonneg(&g, seed, 30, 8).unwrap();
            let gg = random_nonneg(&g, seed + 100, 30, 8).unwrap();
            let out = verify_theorem1(&f, &gg, &config).unwrap();
            assert!(out.passed(), "violations: {:?}", out.violations);
            assert!(out.pointwise_max_ratio <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn blocks_respect_sphere_support() {
        let g = FreeGroup::new(2);
        // f supported on A_1 only: blocks exist only at k = 1
        let f = SparseFunction::from_entries(
            g,
            [(w(&[1]), 1.0f64), (w(&[-2]), 2.0)],
        )
        .unwrap();
        let gg = random_nonneg(&g, 5, 20, 5).unwrap();
        let fam = phi_kj_family(&f, &gg, 1_000_000).unwrap();
        assert!(!fam.blocks.is_empty());
        assert!(fam.blocks.keys().all(|(k, _)| *k == 1));

        // single pair: exactly one (k, j) block, at the predicted key
        let beta0 = w(&[1, 2, 1]);
        let gamma0 = w(&[-1, 2]);
        let alpha = g.multiply(&beta0, &gamma0);
        let f = SparseFunction::delta(g, beta0.clone(), 1.0f64).unwrap();
        let gg = SparseFunction::delta(g, gamma0, 1.0f64).unwrap();
        let fam = phi_kj_family(&f, &gg, 1_000).unwrap();
        assert_eq!(fam.blocks.len(), 1);
        let key = (beta0.len() as u64, alpha.common_prefix_len(&beta0) as u64);
        assert!(fam.blocks.contains_key(&key));

        // φ_kj(α) = 0 whenever |α| < j, by construction of the classes
        for ((_, j), block) in &fam.blocks {
            for (alpha, _) in block.iter() {
                assert!(alpha.len() as u64 >= *j);
            }
        }
    }

    #[test]
    fn exact_reconstruction_small() {
        let g = FreeGroup::new(2);
        for seed in 0..5u64 {
            let f = random_nonneg_rational(&g, seed, 20, 6).unwrap();
            let gg = random_nonneg_rational(&g, seed + 50, 20, 6).unwrap();
            assert!(check_exact_reconstruction(&f, &gg, 3, 10_000_000).unwrap());
        }
    }

    #[test]
    fn delta_pair_final_bound_ratio() {
        // f = g = δ_e: lhs = 1, rhs = 16·C ≈ 26.3 — ratio ≈ 0.038
        let g = FreeGroup::new(2);
        let de = SparseFunction::delta(g, Word::identity(), 1.0f64).unwrap();
        let out = verify_theorem1(&de, &de, &cfg(3.0, 2.0)).unwrap();
        assert!(out.passed());
        assert!((out.lhs - 1.0).abs() < 1e-12);
        assert!((out.ratio - 0.038).abs() < 0.002, "ratio {}", out.ratio);
    }

    #[test]
    fn case_split_examples() {
        // direct evaluations from the two proof cases at a = 3
        let wlen = |len: f64| (len + 1.0).powi(3);
        assert!(wlen(4.0) / wlen(2.0) <= 8.0); // (5/3)^3 ≈ 4.63
        assert!(wlen(4.0) / wlen(3.0) <= 8.0); // (5/4)^3 ≈ 1.95

        let g = FreeGroup::new(2);
        let report = case_split_factor_check(3.0, &g, 20_000, 12, 9).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.lhs <= 8.0 * (1.0 + 1e-12));
    }

    #[test]
    fn norm_q_le_norm_p_needs_p_le_two() {
        // the proof's ‖x‖_q ≤ ‖x‖_p step: witness that it fails for p > 2
        let g = FreeGroup::new(2);
        let x = SparseFunction::from_entries(
            g,
            [(Word::identity(), 1.0f64), (w(&[1]), 1.0)],
        )
        .unwrap();
        let p = 3.0;
        let q = p / (p - 1.0); // 1.5 < 2 < p
        let norm_p = x.lp_norm(PExponent::new(p).unwrap());
        let norm_q = x.lp_norm(PExponent::new(q).unwrap());
        assert!(
            norm_q > norm_p * (1.0 + 1e-9),
            "witness failed: ‖x‖_q = {norm_q} vs ‖x‖_p = {norm_p}"
        );
    }

    #[test]
    fn prop12_rejects_bad_parameters() {
        assert!(matches!(
            prop12_divergence(2.0, 0.4, &[10, 100]),
            Err(Theorem1Error::EmptyAdmissibleRange { .. })
        ));
        assert!(matches!(
            prop12_divergence(3.0, 0.6, &[10, 100]),
            Err(Theorem1Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            prop12_divergence(3.0, 0.4, &[100, 10]),
            Err(Theorem1Error::BadSchedule)
        ));
    }

    #[test]
    fn prop12_certificates_hold() {
        let out = prop12_divergence(3.0, 0.4, &[1_000, 10_000, 100_000]).unwrap();
        assert!(out.passed(), "{:?}", out.violations);
        assert!(out.p_tail_bound.is_finite());
        // S grows, P stabilizes
        assert!(out.rows[2].pairing_sum > 2.0 * out.rows[0].pairing_sum);
        assert!(out.rows[2].p_norm - out.rows[0].p_norm < 0.2);
    }
}
