//! Weights on discrete groups and the classical algebra conditions:
//! submultiplicativity (condition (1)), the convolution condition
//! `w^{-q} ∗ w^{-q} ≤ w^{-q}` (condition (2)) with certified one-sided
//! checks, and the reflection/max transforms behind symmetric algebras.

use crate::groups::{DiscreteGroup, FreeGroup, GroupError, Word};
use crate::report::{VerificationReport, Verdict, Witness};
use crate::scalar::RealScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("{what} must be positive")]
    NonPositive { what: String },
    #[error("weight {weight} is not defined on group {group}")]
    NotApplicable { weight: String, group: String },
    #[error("{what} is not exactly representable on the rational path")]
    NotExactlyRepresentable { what: String },
    #[error("w^-q is not summable: degree {degree} times q {q} must exceed 1")]
    NonSummable { degree: u32, q: f64 },
    #[error("cannot parse weight spec {0:?}")]
    Parse(String),
    #[error("at least one trial is required")]
    TrialsRequired,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A strictly positive function on a group.
///
/// `LengthPoly` is the Theorem 1.1 weight `(|x|+1)^a`; `EvenPolyZ` is the
/// classical `c(1+|t|^d)` on ℤ; the remaining constructors are the
/// transforms of §2 (`Reflected` is `w∘inv`, the tilde weight for Δ ≡ 1)
/// plus the inverse weight that the `‖·‖_{q,w^{-1}}` norms need, and a
/// finitely-specified table weight on ℤ for fixtures that must be
/// asymmetric.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    LengthPoly { exponent: f64 },
    EvenPolyZ { scale: BigRational, degree: u32 },
    Constant { value: f64 },
    Max(Box<Weight>, Box<Weight>),
    Reflected(Box<Weight>),
    Inverse(Box<Weight>),
    TableZ { values: BTreeMap<i64, BigRational>, default: BigRational },
}

impl Weight {
    pub fn length_poly(exponent: f64) -> Weight {
        assert!(exponent > 0.0 && exponent.is_finite(), "length-poly exponent must be positive");
        Weight::LengthPoly { exponent }
    }

    pub fn even_poly_z(scale: BigRational, degree: u32) -> Weight {
        assert!(scale.is_positive(), "even-poly scale must be positive");
        assert!(degree >= 1, "even-poly degree must be at least 1");
        Weight::EvenPolyZ { scale, degree }
    }

    pub fn constant(value: f64) -> Weight {
        assert!(value > 0.0 && value.is_finite(), "constant weight must be positive");
        Weight::Constant { value }
    }

    pub fn max(a: Weight, b: Weight) -> Weight {
        Weight::Max(Box::new(a), Box::new(b))
    }

    pub fn reflected(w: Weight) -> Weight {
        Weight::Reflected(Box::new(w))
    }

    pub fn inverse(w: Weight) -> Weight {
        Weight::Inverse(Box::new(w))
    }

    pub fn table_z(values: BTreeMap<i64, BigRational>, default: BigRational) -> Weight {
        assert!(default.is_positive(), "table default must be positive");
        assert!(values.values().all(|v| v.is_positive()), "table values must be positive");
        Weight::TableZ { values, default }
    }
}

/// Real fields a weight can evaluate into. The f64 instance is total on
/// applicable groups; the rational instance refuses anything that would
/// round (fractional exponents, no more).
pub trait WeightEval: RealScalar {
    fn weight_at<G: DiscreteGroup>(
        w: &Weight,
        group: &G,
        x: &G::Elem,
    ) -> Result<Self, WeightError>;
}

fn int_view<G: DiscreteGroup>(group: &G, x: &G::Elem, w: &Weight) -> Result<i64, WeightError> {
    group.elem_as_int(x).ok_or_else(|| WeightError::NotApplicable {
        weight: w.to_string(),
        group: group.kind().to_string(),
    })
}

impl WeightEval for f64 {
    fn weight_at<G: DiscreteGroup>(w: &Weight, group: &G, x: &G::Elem) -> Result<f64, WeightError> {
        Ok(match w {
            Weight::LengthPoly { exponent } => {
                ((group.word_length(x) + 1) as f64).powf(*exponent)
            }
            Weight::EvenPolyZ { scale, degree } => {
                let t = int_view(group, x, w)?;
                scale.as_f64()
                    * (1.0 + (t.unsigned_abs() as f64).powi(*degree as i32))
            }
            Weight::Constant { value } => *value,
            Weight::Max(a, b) => {
                f64::weight_at(a, group, x)?.max(f64::weight_at(b, group, x)?)
            }
            Weight::Reflected(inner) => f64::weight_at(inner, group, &group.invert(x))?,
            Weight::Inverse(inner) => 1.0 / f64::weight_at(inner, group, x)?,
            Weight::TableZ { values, default } => {
                let t = int_view(group, x, w)?;
                values.get(&t).unwrap_or(default).as_f64()
            }
        })
    }
}

impl WeightEval for BigRational {
    fn weight_at<G: DiscreteGroup>(
        w: &Weight,
        group: &G,
        x: &G::Elem,
    ) -> Result<BigRational, WeightError> {
        Ok(match w {
            Weight::LengthPoly { exponent } => {
                if exponent.fract() != 0.0 {
                    return Err(WeightError::NotExactlyRepresentable {
                        what: format!("(n+1)^{exponent}"),
                    });
                }
                BigRational::from_u64(group.word_length(x) + 1).powi(*exponent as i32)
            }
            Weight::EvenPolyZ { scale, degree } => {
                let t = int_view(group, x, w)?;
                let body = BigInt::one() + BigInt::from(t.unsigned_abs()).pow(*degree);
                scale * BigRational::from_integer(body)
            }
            Weight::Constant { value } => {
                BigRational::from_float(*value).ok_or_else(|| {
                    WeightError::NotExactlyRepresentable { what: format!("constant {value}") }
                })?
            }
            Weight::Max(a, b) => {
                let va = BigRational::weight_at(a, group, x)?;
                let vb = BigRational::weight_at(b, group, x)?;
                va.max(vb)
            }
            Weight::Reflected(inner) => {
                BigRational::weight_at(inner, group, &group.invert(x))?
            }
            Weight::Inverse(inner) => {
                BigRational::one() / BigRational::weight_at(inner, group, x)?
            }
            Weight::TableZ { values, default } => {
                let t = int_view(group, x, w)?;
                values.get(&t).unwrap_or(default).clone()
            }
        })
    }
}

/// `w(x)^{-q}` exactly, when the combination of weight and exponent allows
/// it. For the length weight the combined exponent `a·q` only has to be
/// integral, which covers fractional `a` at integral `a·q`.
pub fn weight_pow_neg_q_exact<G: DiscreteGroup>(
    w: &Weight,
    group: &G,
    x: &G::Elem,
    q: f64,
) -> Option<BigRational> {
    if let Weight::LengthPoly { exponent } = w {
        let aq = exponent * q;
        if aq.fract() == 0.0 && aq.abs() <= i32::MAX as f64 {
            return Some(BigRational::from_u64(group.word_length(x) + 1).powi(-(aq as i32)));
        }
        return None;
    }
    if q.fract() != 0.0 || q.abs() > i32::MAX as f64 {
        return None;
    }
    let base = BigRational::weight_at(w, group, x).ok()?;
    Some(base.powi(-(q as i32)))
}

/// The §2 weight transforms for a given exponent. All implemented groups
/// are unimodular, so the factor Δ^{(p-1)/p} in the tilde weight is 1 and
/// the exponent never enters; the parameter records where it would.
pub struct WeightTransforms {
    /// `w̃ = Δ^{(p-1)/p} w∘inv`, here `w∘inv`.
    pub tilde: Weight,
    /// `max{w, w̃}` — even, hence a symmetric-algebra weight.
    pub symmetrized: Weight,
}

pub fn transform_weights(w: &Weight, _p: crate::algebra::PExponent) -> WeightTransforms {
    let tilde = Weight::reflected(w.clone());
    let symmetrized = Weight::max(w.clone(), tilde.clone());
    WeightTransforms { tilde, symmetrized }
}

/// Check condition (1), `w(st) ≤ w(s) w(t)`, on sampled pairs.
///
/// Runs exactly when the weight evaluates exactly, otherwise in f64 with
/// `1e-12` relative headroom before declaring a violation.
pub fn check_condition1<G: DiscreteGroup>(
    w: &Weight,
    group: &G,
    trials: u64,
    max_len: u64,
    seed: u64,
) -> Result<VerificationReport, WeightError> {
    if trials == 0 {
        return Err(WeightError::TrialsRequired);
    }
    let mut rng = crate::algebra::seeded_rng(seed);
    let mut max_ratio = f64::NEG_INFINITY;
    let mut worst: Option<(G::Elem, G::Elem, f64, f64)> = None;
    let mut violated_exactly = false;

    for _ in 0..trials {
        let s = group.sample_ball(&mut rng, max_len);
        let t = group.sample_ball(&mut rng, max_len);
        let st = group.multiply(&s, &t);

        let exact = (|| -> Option<(BigRational, BigRational)> {
            let lhs = BigRational::weight_at(w, group, &st).ok()?;
            let rhs = BigRational::weight_at(w, group, &s).ok()?
                * BigRational::weight_at(w, group, &t).ok()?;
            Some((lhs, rhs))
        })();

        let (lhs, rhs, exact_violation) = match exact {
            Some((l, r)) => {
                let viol = l > r;
                (l.as_f64(), r.as_f64(), Some(viol))
            }
            None => {
                let l = f64::weight_at(w, group, &st)?;
                let r = f64::weight_at(w, group, &s)? * f64::weight_at(w, group, &t)?;
                (l, r, None)
            }
        };
        let ratio = lhs / rhs;
        if ratio > max_ratio {
            max_ratio = ratio;
            worst = Some((s, t, lhs, rhs));
        }
        match exact_violation {
            Some(true) => violated_exactly = true,
            Some(false) => {}
            None => {
                if ratio > 1.0 + 1e-12 {
                    violated_exactly = true;
                }
            }
        }
    }

    let (s, t, lhs, rhs) = worst.expect("at least one trial ran");
    let verdict = if violated_exactly { Verdict::Fail } else { Verdict::Pass };
    let witness = Witness::new(if violated_exactly { "violating_pair" } else { "worst_pair" })
        .with_element("s", group.format_elem(&s))
        .with_element("t", group.format_elem(&t))
        .with_number("ratio", format!("{max_ratio}"));
    Ok(VerificationReport::new(
        "weights.condition1",
        json!({
            "weight": w.to_string(),
            "group": group.kind().to_string(),
            "max_len": max_len,
        }),
    )
    .with_sides(lhs, rhs)
    .with_verdict(verdict)
    .with_seed(seed)
    .with_trials(trials)
    .with_witness(witness))
}

/// One-sided condition-(2) check on a free group: the partial sum
/// `S_N(α) = Σ_{|β| ≤ N} w(β)^{-q} w(β^{-1}α)^{-q}` lower-bounds the left
/// side because every omitted term is positive, so `S_N > w(α)^{-q}`
/// certifies a violation. Holding can never be certified this way (spheres
/// grow exponentially), so the other verdict is INCONCLUSIVE.
pub fn condition2_witness(
    w: &Weight,
    group: &FreeGroup,
    q: f64,
    point: &Word,
    radius: u64,
    sphere_budget: u64,
) -> Result<VerificationReport, WeightError> {
    let mut exact_sum = Some(BigRational::zero());
    let mut float_sum = 0.0f64;
    let mut words_seen: u64 = 0;

    for n in 0..=radius {
        for beta in group.enumerate_sphere(n, sphere_budget)? {
            words_seen += 1;
            if words_seen > sphere_budget {
                return Err(GroupError::SphereBudget {
                    count: words_seen as u128,
                    budget: sphere_budget,
                }
                .into());
            }
            // |β^{-1}α| enters only through the weight, and the product
            // β^{-1}α cancels exactly the common prefix of β and α.
            let other = group.multiply(&beta.inverse(), point);
            match (
                exact_sum.take(),
                weight_pow_neg_q_exact(w, group, &beta, q),
                weight_pow_neg_q_exact(w, group, &other, q),
            ) {
                (Some(acc), Some(a), Some(b)) => {
                    float_sum += (a.clone() * b.clone()).as_f64();
                    exact_sum = Some(acc + a * b);
                }
                _ => {
                    let a = f64::weight_at(w, group, &beta)?.powf(-q);
                    let b = f64::weight_at(w, group, &other)?.powf(-q);
                    float_sum += a * b;
                    exact_sum = None;
                }
            }
        }
    }

    let rhs_exact = weight_pow_neg_q_exact(w, group, point, q);
    let rhs_float = f64::weight_at(w, group, point)?.powf(-q);

    let (violated, lhs_f64) = match (&exact_sum, &rhs_exact) {
        (Some(s), Some(r)) => (s > r, s.as_f64()),
        _ => (float_sum > rhs_float * (1.0 + 1e-9), float_sum),
    };

    let verdict = if violated { Verdict::Violated } else { Verdict::Inconclusive };
    let mut witness = Witness::new("partial_sum")
        .with_element("point", point.to_string())
        .with_number("radius", radius.to_string());
    if let (Some(s), Some(r)) = (&exact_sum, &rhs_exact) {
        witness = witness
            .with_number("partial_sum", s.to_repr())
            .with_number("rhs", r.to_repr());
    }
    let mut report = VerificationReport::new(
        "weights.condition2_witness",
        json!({
            "weight": w.to_string(),
            "group": group.kind().to_string(),
            "q": q,
            "point": point.to_string(),
            "radius": radius,
        }),
    )
    .with_sides(lhs_f64, rhs_exact.as_ref().map_or(rhs_float, |r| r.as_f64()))
    .with_verdict(verdict)
    .with_trials(words_seen)
    .with_witness(witness);
    if let (Some(s), Some(r)) = (&exact_sum, &rhs_exact) {
        report = report
            .with_exact("partial_sum", s.to_repr())
            .with_exact("rhs", r.to_repr());
    }
    Ok(report)
}

/// Certified two-sided bounds for sums of positive rationals: every term is
/// rounded down and up onto the common denominator `2^k`, so both
/// accumulators stay exact rationals bracketing the true sum. This
/// sidesteps the denominator blow-up of summing thousands of unrelated
/// rationals exactly.
pub(crate) struct DyadicBounds {
    k: u32,
    lo: BigInt,
    hi: BigInt,
}

impl DyadicBounds {
    pub(crate) fn new(k: u32) -> Self {
        DyadicBounds { k, lo: BigInt::zero(), hi: BigInt::zero() }
    }

    pub(crate) fn add(&mut self, v: &BigRational) {
        let shifted = v.numer() << self.k;
        let (q, r) = num_integer::Integer::div_rem(&shifted, v.denom());
        self.hi += if r.is_zero() { q.clone() } else { &q + 1 };
        self.lo += q;
    }

    pub(crate) fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.k)
    }

    pub(crate) fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.k)
    }
}

/// Upper-bound-only view, for the condition-(2) checks.
struct DyadicUpSum(DyadicBounds);

impl DyadicUpSum {
    fn new(k: u32) -> Self {
        DyadicUpSum(DyadicBounds::new(k))
    }

    fn add_rational_ceil(&mut self, v: &BigRational) {
        self.0.add(v);
    }

    fn value(&self) -> BigRational {
        self.0.upper()
    }
}

pub(crate) fn even_poly_parts(w: &Weight) -> Result<(&BigRational, u32), WeightError> {
    match w {
        Weight::EvenPolyZ { scale, degree } => Ok((scale, *degree)),
        _ => Err(WeightError::NotApplicable {
            weight: w.to_string(),
            group: "condition-2 certified check (needs evenpolyZ)".to_string(),
        }),
    }
}

/// `w(t)^{-q}` for the even poly weight as an exact positive rational.
pub(crate) fn even_poly_neg_q(scale: &BigRational, degree: u32, q: u32, t: i64) -> BigRational {
    let body = BigInt::one() + BigInt::from(t.unsigned_abs()).pow(degree);
    let w = scale * BigRational::from_integer(body);
    BigRational::one() / w.pow(q as i32)
}

/// Exact tail bound `Σ_{|s| > N} w(s)^{-q} ≤ 2 c^{-q} N^{1-dq} / (dq-1)`
/// by comparison with `∫_N^∞ x^{-dq} dx` (for c = 1, d = 2, q = 2 this is
/// the familiar `(2/3) N^{-3}`).
pub(crate) fn even_poly_tail_bound(scale: &BigRational, degree: u32, q: u32, n: i64) -> BigRational {
    let dq = degree * q;
    debug_assert!(dq > 1);
    let c_negq = BigRational::one() / scale.pow(q as i32);
    let n_pow = BigRational::from_u64(n as u64).powi(dq as i32 - 1);
    BigRational::from_ratio(2, (dq - 1) as u64) * c_negq / n_pow
}

/// Affirmative condition-(2) check on ℤ for the even polynomial weight,
/// with certified tails: for each `|t| ≤ range_t` the left side is bounded
/// above by an exact dyadic-rounded partial sum over `|s| ≤ trunc_n` plus
/// the integral tail bound, and compared exactly against `w(t)^{-q}`.
///
/// `q` must be a positive integer (every fixture in range has one); the
/// certified path has no sound way to take fractional powers.
pub fn check_condition2_z(
    w: &Weight,
    q: f64,
    range_t: i64,
    trunc_n: i64,
) -> Result<VerificationReport, WeightError> {
    let (scale, degree) = even_poly_parts(w)?;
    if q.fract() != 0.0 || q < 1.0 {
        return Err(WeightError::NotExactlyRepresentable {
            what: format!("certified condition-2 with q = {q}"),
        });
    }
    let qi = q as u32;
    if degree * qi <= 1 {
        return Err(WeightError::NonSummable { degree, q });
    }
    assert!(range_t >= 0 && trunc_n >= range_t, "need trunc_n >= range_t >= 0");

    let tail = even_poly_tail_bound(scale, degree, qi, trunc_n);
    // tail factor: the neglected |s| > N terms also carry w(t-s)^{-q} ≤ c^{-q}
    let tail_times_sup = &tail * (BigRational::one() / scale.pow(qi as i32));

    // w(s)^{-q} cached over the full window
    let cache: Vec<BigRational> =
        (0..=trunc_n + range_t).map(|s| even_poly_neg_q(scale, degree, qi, s)).collect();
    let wq = |s: i64| -> &BigRational { &cache[s.unsigned_abs() as usize] };

    let mut min_margin: Option<(i64, BigRational, BigRational)> = None;
    let mut all_pass = true;
    // U is even in t, so t ≥ 0 covers the window
    for t in 0..=range_t {
        let mut upper = DyadicUpSum::new(128);
        for s in -trunc_n..=trunc_n {
            let term = wq(s) * wq(t - s);
            upper.add_rational_ceil(&term);
        }
        upper.add_rational_ceil(&tail_times_sup);
        let u = upper.value();
        let rhs = wq(t).clone();
        if u > rhs {
            all_pass = false;
        }
        let margin = &rhs - &u;
        if min_margin.as_ref().is_none_or(|(_, m, _)| &margin < m) {
            min_margin = Some((t, margin, u));
        }
    }

    let (worst_t, margin, u) = min_margin.expect("range_t >= 0 checks t = 0");
    let rhs = wq(worst_t).clone();
    let verdict = if all_pass { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport::new(
        "weights.condition2_Z",
        json!({
            "weight": w.to_string(),
            "q": q,
            "range_t": range_t,
            "trunc_n": trunc_n,
            "tail_bound": tail.as_f64(),
        }),
    )
    .with_sides(u.as_f64(), rhs.as_f64())
    .with_verdict(verdict)
    .with_trials(2 * range_t as u64 + 1)
    .with_witness(
        Witness::new(if all_pass { "min_margin" } else { "violating_point" })
            .with_element("t", worst_t.to_string())
            .with_number("upper_bound", u.to_repr())
            .with_number("rhs", rhs.to_repr())
            .with_number("margin", margin.to_repr()),
    )
    .with_exact("upper_bound", u.to_repr())
    .with_exact("rhs", rhs.to_repr()))
}

/// Least scale (on a 10^-6 grid, rounded up) making `c · (1+|t|^d)` satisfy
/// condition (2) on the checked window: scaling multiplies the left side by
/// `c^{-2q}` and the right by `c^{-q}`, so the needed `c^q` is the sup of
/// `U_1(t) · w_1(t)^q` over the window, computed with certified upper
/// bounds. The returned weight re-verifies with `check_condition2_z`.
pub fn calibrate_even_poly_z(
    degree: u32,
    q: f64,
    range_t: i64,
    trunc_n: i64,
) -> Result<(Weight, VerificationReport), WeightError> {
    if q.fract() != 0.0 || q < 1.0 {
        return Err(WeightError::NotExactlyRepresentable {
            what: format!("calibration with q = {q}"),
        });
    }
    let qi = q as u32;
    if degree * qi <= 1 {
        return Err(WeightError::NonSummable { degree, q });
    }
    let one = BigRational::one();
    let tail = even_poly_tail_bound(&one, degree, qi, trunc_n);
    let cache: Vec<BigRational> =
        (0..=trunc_n + range_t).map(|s| even_poly_neg_q(&one, degree, qi, s)).collect();
    let wq = |s: i64| -> &BigRational { &cache[s.unsigned_abs() as usize] };

    let mut needed_cq = BigRational::zero();
    for t in 0..=range_t {
        let mut upper = DyadicUpSum::new(128);
        for s in -trunc_n..=trunc_n {
            upper.add_rational_ceil(&(wq(s) * wq(t - s)));
        }
        upper.add_rational_ceil(&tail);
        // U_1(t) / w_1(t)^{-q} = U_1(t) · w_1(t)^q
        let requirement = upper.value() / wq(t).clone();
        if requirement > needed_cq {
            needed_cq = requirement;
        }
    }

    // smallest micro-grid rational whose q-th power clears the requirement
    let grid = BigInt::from(1_000_000u64);
    let mut numer = BigInt::from(
        (needed_cq.as_f64().powf(1.0 / q) * 1e6).ceil() as i64,
    );
    while BigRational::new(numer.clone(), grid.clone()).pow(qi as i32) < needed_cq {
        numer += 1;
    }
    let c_star = BigRational::new(numer, grid);

    let weight = Weight::even_poly_z(c_star, degree);
    let report = check_condition2_z(&weight, q, range_t, trunc_n)?;
    Ok((weight, report))
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::LengthPoly { exponent } => write!(f, "lenpoly:a={exponent}"),
            Weight::EvenPolyZ { scale, degree } => {
                write!(f, "evenpolyZ:c={scale},d={degree}")
            }
            Weight::Constant { value } => write!(f, "const:c={value}"),
            Weight::Max(a, b) => write!(f, "max({a},{b})"),
            Weight::Reflected(w) => write!(f, "reflect({w})"),
            Weight::Inverse(w) => write!(f, "inv({w})"),
            Weight::TableZ { values, default } => {
                write!(f, "tableZ:default={default}")?;
                for (k, v) in values {
                    write!(f, ",{k}={v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parse "2", "5/2" or "2.5" as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, WeightError> {
    let s = s.trim();
    let bad = || WeightError::Parse(format!("rational {s:?}"));
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|_| bad());
    }
    if let Some(dot) = s.find('.') {
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: String = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(numer, denom));
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

fn parse_kv(args: &str) -> Result<Vec<(&str, &str)>, WeightError> {
    args.split(',')
        .map(|pair| {
            pair.split_once('=')
                .ok_or_else(|| WeightError::Parse(format!("expected key=value in {pair:?}")))
        })
        .collect()
}

/// Split "A,B" at the top-level comma (commas inside parens don't count).
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, WeightError> {
        let s = s.trim();
        let inner = |prefix: &str| -> Option<&str> {
            s.strip_prefix(prefix)?.strip_suffix(')')
        };
        if let Some(body) = inner("max(") {
            let (a, b) = split_top_level(body)
                .ok_or_else(|| WeightError::Parse(format!("max needs two arguments: {s:?}")))?;
            return Ok(Weight::max(a.parse()?, b.parse()?));
        }
        if let Some(body) = inner("reflect(") {
            return Ok(Weight::reflected(body.parse()?));
        }
        if let Some(body) = inner("inv(") {
            return Ok(Weight::inverse(body.parse()?));
        }
        let (kind, args) =
            s.split_once(':').ok_or_else(|| WeightError::Parse(s.to_string()))?;
        let kv = parse_kv(args)?;
        let get = |key: &str| -> Result<&str, WeightError> {
            kv.iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| WeightError::Parse(format!("missing {key}= in {s:?}")))
        };
        match kind {
            "lenpoly" => {
                let a: f64 =
                    get("a")?.parse().map_err(|_| WeightError::Parse(s.to_string()))?;
                if !(a > 0.0) {
                    return Err(WeightError::NonPositive { what: "lenpoly exponent".into() });
                }
                Ok(Weight::LengthPoly { exponent: a })
            }
            "evenpolyZ" => {
                let c = parse_rational(get("c")?)?;
                let d: u32 =
                    get("d")?.parse().map_err(|_| WeightError::Parse(s.to_string()))?;
                if !c.is_positive() {
                    return Err(WeightError::NonPositive { what: "evenpolyZ scale".into() });
                }
                if d == 0 {
                    return Err(WeightError::NonPositive { what: "evenpolyZ degree".into() });
                }
                Ok(Weight::EvenPolyZ { scale: c, degree: d })
            }
            "const" => {
                let c: f64 =
                    get("c")?.parse().map_err(|_| WeightError::Parse(s.to_string()))?;
                if !(c > 0.0) || !c.is_finite() {
                    return Err(WeightError::NonPositive { what: "constant weight".into() });
                }
                Ok(Weight::Constant { value: c })
            }
            "tableZ" => {
                let mut default = None;
                let mut values = BTreeMap::new();
                for (k, v) in kv {
                    let value = parse_rational(v)?;
                    if !value.is_positive() {
                        return Err(WeightError::NonPositive { what: format!("table entry {k}") });
                    }
                    if k == "default" {
                        default = Some(value);
                    } else {
                        let key: i64 =
                            k.parse().map_err(|_| WeightError::Parse(s.to_string()))?;
                        values.insert(key, value);
                    }
                }
                let default = default
                    .ok_or_else(|| WeightError::Parse(format!("tableZ needs default= in {s:?}")))?;
                Ok(Weight::TableZ { values, default })
            }
            _ => Err(WeightError::Parse(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{CyclicGroup, IntGroup};

    #[test]
    fn eval_examples() {
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        assert_eq!(f64::weight_at(&lp3, &g, &Word::identity()).unwrap(), 1.0);
        let alpha = Word::from_reduced(vec![1, 2]).unwrap();
        assert_eq!(f64::weight_at(&lp3, &g, &alpha).unwrap(), 27.0);
        assert_eq!(
            BigRational::weight_at(&lp3, &g, &alpha).unwrap(),
            BigRational::from_u64(27)
        );

        let wz = Weight::even_poly_z(BigRational::one(), 2);
        assert_eq!(f64::weight_at(&wz, &IntGroup, &3).unwrap(), 10.0);
        assert_eq!(
            BigRational::weight_at(&wz, &IntGroup, &-3).unwrap(),
            BigRational::from_u64(10)
        );
        assert!(f64::weight_at(&wz, &g, &alpha).is_err());
    }

    #[test]
    fn condition1_length_poly_passes() {
        let g = FreeGroup::new(2);
        let report =
            check_condition1(&Weight::length_poly(3.0), &g, 10_000, 10, 42).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.ratio <= 1.0);
    }

    #[test]
    fn condition1_constant_cases() {
        let g = IntGroup;
        let ok = check_condition1(&Weight::constant(1.0), &g, 100, 10, 1).unwrap();
        assert_eq!(ok.verdict, Verdict::Pass);
        assert_eq!(ok.ratio, 1.0);

        let bad = check_condition1(&Weight::constant(0.5), &g, 100, 10, 1).unwrap();
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(bad.ratio, 2.0); // (1/2) / (1/4)
        assert_eq!(bad.witnesses[0].kind, "violating_pair");
    }

    #[test]
    fn condition2_witness_exact_at_radius_one() {
        // A_0 ∪ A_1 at the identity: 1 + 4·8^{-4} = 1025/1024 > 1
        let g = FreeGroup::new(2);
        let report = condition2_witness(
            &Weight::length_poly(3.0),
            &g,
            2.0,
            &Word::identity(),
            1,
            1_000_000,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Violated);
        let exact = report.exact.as_ref().unwrap();
        assert_eq!(exact["partial_sum"], "1025/1024");
        assert_eq!(exact["rhs"], "1");
    }

    #[test]
    fn condition2_witness_inconclusive_at_radius_zero() {
        let g = FreeGroup::new(2);
        let report = condition2_witness(
            &Weight::length_poly(3.0),
            &g,
            2.0,
            &Word::identity(),
            0,
            1_000_000,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert_eq!(report.exact.as_ref().unwrap()["partial_sum"], "1");
    }

    #[test]
    fn condition2_witness_monotone_in_radius() {
        let g = FreeGroup::new(2);
        let mut violated = false;
        for radius in 0..=4 {
            let report = condition2_witness(
                &Weight::length_poly(3.0),
                &g,
                2.0,
                &Word::from_reduced(vec![1]).unwrap(),
                radius,
                1_000_000,
            )
            .unwrap();
            if violated {
                assert_eq!(report.verdict, Verdict::Violated, "radius {radius}");
            }
            violated |= report.verdict == Verdict::Violated;
        }
        assert!(violated, "length-poly weight violates condition 2 within radius 4");
    }

    #[test]
    fn condition2_on_cyclic_constant_weight() {
        // On ℤ_n with w ≡ c, condition (2) says n·c^{-2q} ≤ c^{-q}, i.e.
        // c^q ≥ n; check both sides of the boundary by the exact finite sum.
        let n = 6u64;
        let g = CyclicGroup::new(n);
        let q = 2i32;
        for (c, expect_hold) in [(BigRational::from_u64(3), true), (BigRational::from_ratio(3, 2), false)]
        {
            // c^q >= n ?
            let holds = Pow::pow(&c, q) >= BigRational::from_u64(n);
            assert_eq!(holds, expect_hold);
            // exact finite convolution sum at any point equals n·c^{-2q}
            let lhs = BigRational::from_u64(n) * (BigRational::one() / Pow::pow(&c, 2 * q));
            let rhs = BigRational::one() / Pow::pow(&c, q);
            assert_eq!(lhs <= rhs, expect_hold);
            let _ = g;
        }
    }

    #[test]
    fn condition2_z_calibrated_weight_passes() {
        let (weight, report) = calibrate_even_poly_z(2, 2.0, 20, 400).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        // needed scale is a hair above 2.046 (the sup sits at t = 3)
        let Weight::EvenPolyZ { scale, .. } = &weight else { panic!() };
        let c = scale.as_f64();
        assert!(c > 2.0 && c < 2.2, "calibrated c = {c}");
    }

    #[test]
    fn condition2_z_uncalibrated_unit_scale_fails() {
        let w = Weight::even_poly_z(BigRational::one(), 2);
        let report = check_condition2_z(&w, 2.0, 20, 400).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        // violation is worst near t = 3 where U_1(t)w_1(t)^q peaks
        assert!(report.ratio > 1.0);
    }

    #[test]
    fn condition2_z_rejects_nonsummable() {
        let w = Weight::even_poly_z(BigRational::one(), 1);
        assert!(matches!(
            check_condition2_z(&w, 1.0, 5, 10),
            Err(WeightError::NonSummable { .. })
        ));
    }

    #[test]
    fn tail_bound_matches_known_constant() {
        // c=1, d=2, q=2: tail ≤ (2/3) N^{-3}
        let tail = even_poly_tail_bound(&BigRational::one(), 2, 2, 100);
        assert_eq!(tail, BigRational::from_ratio(2, 3_000_000));
    }

    #[test]
    fn transforms_examples() {
        let p = crate::algebra::PExponent::new(2.0).unwrap();
        let g = FreeGroup::new(2);
        let lp3 = Weight::length_poly(3.0);
        let tr = transform_weights(&lp3, p);
        // |α| = |α^{-1}|, so the tilde weight agrees pointwise
        let mut rng = crate::algebra::seeded_rng(5);
        for _ in 0..200 {
            let x = g.sample_ball(&mut rng, 8);
            assert_eq!(
                f64::weight_at(&tr.tilde, &g, &x).unwrap(),
                f64::weight_at(&lp3, &g, &x).unwrap()
            );
        }

        // asymmetric table weight on ℤ: symmetrized takes the max
        let w = Weight::table_z(
            [(1, BigRational::from_u64(2)), (-1, BigRational::from_u64(5))].into(),
            BigRational::one(),
        );
        let tr = transform_weights(&w, p);
        for t in [1i64, -1] {
            assert_eq!(f64::weight_at(&tr.symmetrized, &IntGroup, &t).unwrap(), 5.0);
        }

        // even weight is its own symmetrization
        let wz = Weight::even_poly_z(BigRational::one(), 2);
        let tr = transform_weights(&wz, p);
        for t in -5i64..=5 {
            assert_eq!(
                f64::weight_at(&tr.symmetrized, &IntGroup, &t).unwrap(),
                f64::weight_at(&wz, &IntGroup, &t).unwrap()
            );
        }
    }

    #[test]
    fn spec_strings_round_trip() {
        for spec in [
            "lenpoly:a=3",
            "evenpolyZ:c=1,d=2",
            "const:c=2",
            "max(lenpoly:a=3,const:c=2)",
            "reflect(lenpoly:a=2)",
            "inv(evenpolyZ:c=5/2,d=2)",
            "tableZ:default=1,-1=5,1=2",
        ] {
            let w: Weight = spec.parse().unwrap_or_else(|e| panic!("{spec}: {e}"));
            let shown = w.to_string();
            let again: Weight = shown.parse().unwrap();
            assert_eq!(again, w, "{spec} -> {shown}");
        }
        assert!("lenpoly:a=-1".parse::<Weight>().is_err());
        assert!("bogus:x=1".parse::<Weight>().is_err());
        assert!("const:c=0".parse::<Weight>().is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("2.5").unwrap(), BigRational::from_ratio(5, 2));
        assert_eq!(parse_rational("7/4").unwrap(), BigRational::from_ratio(7, 4));
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_u64(3));
        assert!(parse_rational("x").is_err());
    }
}
