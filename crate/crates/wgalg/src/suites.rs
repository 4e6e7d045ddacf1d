//! Batch verification suites: seeded, reproducible runs of every checker,
//! emitting one report per check. The CLI is a thin wrapper around these;
//! the acceptance tests call them directly.

use crate::algebra::{random_nonneg, random_rational, trial_seed, PExponent};
use crate::groups::{DiscreteGroup, FreeGroup, IntGroup, Word};
use crate::report::{FunctionData, VerificationReport, Verdict, Witness};
use crate::scalar::Scalar;
use crate::symcheck::{self, SubsetMode, SymcheckError, SymmetricAlgebraFixture};
use crate::theorem1::{self, Theorem1Error, TheoremConfig};
use crate::weights::{self, Weight, WeightError};
use crate::SparseFunction;
use rayon::prelude::*;
use serde_json::json;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Theorem1(#[from] Theorem1Error),
    #[error(transparent)]
    Symcheck(#[from] SymcheckError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

impl SuiteError {
    /// Whether the failure is a resource-budget refusal (exit code 3).
    pub fn is_budget(&self) -> bool {
        use crate::algebra::AlgebraError as A;
        use crate::groups::GroupError as G;
        fn algebra(e: &A) -> bool {
            matches!(
                e,
                A::BudgetExceeded { .. }
                    | A::Group(G::SphereBudget { .. })
                    | A::Weight(WeightError::Group(G::SphereBudget { .. }))
            )
        }
        fn weight(e: &WeightError) -> bool {
            matches!(e, WeightError::Group(G::SphereBudget { .. }))
        }
        match self {
            SuiteError::Algebra(e) => algebra(e),
            SuiteError::Weight(e) => weight(e),
            SuiteError::Theorem1(Theorem1Error::Algebra(e)) => algebra(e),
            SuiteError::Theorem1(Theorem1Error::Weight(e)) => weight(e),
            SuiteError::Symcheck(SymcheckError::Algebra(e)) => algebra(e),
            SuiteError::Symcheck(SymcheckError::Weight(e)) => weight(e),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Theorem1,
    Conditions,
    Condition2Witness,
    Prop12,
    Symmetric,
    Lemma31,
    Thm32,
    All,
}

impl SuiteKind {
    pub const NAMES: &'static [&'static str] = &[
        "theorem1",
        "conditions",
        "condition2-witness",
        "prop12",
        "symmetric",
        "lemma31",
        "thm32",
        "all",
    ];
}

impl FromStr for SuiteKind {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        Ok(match s {
            "theorem1" => SuiteKind::Theorem1,
            "conditions" => SuiteKind::Conditions,
            "condition2-witness" => SuiteKind::Condition2Witness,
            "prop12" => SuiteKind::Prop12,
            "symmetric" => SuiteKind::Symmetric,
            "lemma31" => SuiteKind::Lemma31,
            "thm32" => SuiteKind::Thm32,
            "all" => SuiteKind::All,
            other => return Err(SuiteError::Config(format!("unknown suite {other:?}"))),
        })
    }
}

/// Everything a run needs; the seed fully determines all sampled inputs,
/// and two runs with an equal config produce byte-identical reports.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub rank: u64,
    pub n: u64,
    pub weight: Option<String>,
    /// Exponent parameter: `a` of the length weight for theorem1 and the
    /// condition checks, `α` for prop12.
    pub a: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub support_size: usize,
    pub max_length: u64,
    pub radius: u64,
    pub tolerance: f64,
    pub budget: u64,
    pub sphere_budget: u64,
    /// Worker threads for trial-level parallelism; 0 means all cores.
    /// Results are bit-identical at any setting.
    pub jobs: usize,
    pub with_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteKind::All,
            rank: 2,
            n: 6,
            weight: None,
            a: 3.0,
            p: 2.0,
            trials: 1000,
            seed: 42,
            support_size: 200,
            max_length: 12,
            radius: 1,
            tolerance: 1e-9,
            budget: crate::algebra::DEFAULT_MULT_BUDGET,
            sphere_budget: crate::algebra::DEFAULT_SPHERE_BUDGET,
            jobs: 0,
            with_timing: false,
        }
    }
}

impl SuiteConfig {
    fn p_exponent(&self) -> Result<PExponent, SuiteError> {
        PExponent::new(self.p).map_err(|e| SuiteError::Config(e.to_string()))
    }

    fn parse_weight(&self) -> Result<Option<Weight>, SuiteError> {
        match &self.weight {
            None => Ok(None),
            Some(spec) => Ok(Some(spec.parse()?)),
        }
    }
}

#[derive(Debug)]
pub struct SuiteRun {
    pub reports: Vec<VerificationReport>,
    /// True when every check landed on its expected verdict: PASS for the
    /// inequality checks, VIOLATED for the condition-(2) witness hunt.
    pub ok: bool,
}

impl SuiteRun {
    fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let ok = reports.iter().all(|r| match r.check.as_str() {
            "weights.condition2_witness" => r.verdict == Verdict::Violated,
            _ => r.verdict == Verdict::Pass,
        });
        SuiteRun { reports, ok }
    }
}

/// Serialize a function for a replayable witness.
pub fn function_data<G: DiscreteGroup, S: Scalar>(f: &SparseFunction<G, S>) -> FunctionData {
    FunctionData {
        group: f.group().kind().to_string(),
        entries: f
            .sorted_entries()
            .into_iter()
            .map(|(x, v)| {
                let (re, im) = v.value_parts();
                (f.group().format_elem(x), re, im)
            })
            .collect(),
    }
}

fn stamp(mut report: VerificationReport, started: std::time::Instant, cfg: &SuiteConfig) -> VerificationReport {
    if cfg.with_timing {
        report.wall_ms = Some(started.elapsed().as_millis() as u64);
    }
    report
}

pub fn run(cfg: &SuiteConfig) -> Result<SuiteRun, SuiteError> {
    let reports = match cfg.suite {
        SuiteKind::Theorem1 => theorem1_suite(cfg)?,
        SuiteKind::Conditions => conditions_suite(cfg)?,
        SuiteKind::Condition2Witness => condition2_witness_suite(cfg)?,
        SuiteKind::Prop12 => prop12_suite(cfg)?,
        SuiteKind::Symmetric => symmetric_suite(cfg)?,
        SuiteKind::Lemma31 => lemma31_suite(cfg)?,
        SuiteKind::Thm32 => thm32_suite(cfg)?,
        SuiteKind::All => {
            let mut all = Vec::new();
            all.extend(theorem1_suite(cfg)?);
            all.extend(conditions_suite(cfg)?);
            all.extend(condition2_witness_suite(cfg)?);
            all.extend(prop12_suite(cfg)?);
            all.extend(symmetric_suite(cfg)?);
            all.extend(lemma31_suite(cfg)?);
            all.extend(thm32_suite(cfg)?);
            all
        }
    };
    Ok(SuiteRun::from_reports(reports))
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, SuiteError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SuiteError::Config(e.to_string()))
}

/// The Theorem 1.1 sweep: one constant-enclosure entry, then one entry per
/// seeded random nonnegative pair running the whole chain.
pub fn theorem1_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let p = cfg.p_exponent()?;
    let theorem_cfg = TheoremConfig::new(cfg.a, p, cfg.tolerance, cfg.budget)?;
    let group = FreeGroup::new(cfg.rank);

    let mut reports = Vec::with_capacity(cfg.trials as usize + 1);
    reports.push(
        VerificationReport::new(
            "theorem1.constant_enclosure",
            json!({
                "a": cfg.a,
                "factor": theorem_cfg.factor,
                "c_lo": theorem_cfg.c_constant.lo,
                "c_hi": theorem_cfg.c_constant.hi,
                "width": theorem_cfg.c_constant.width(),
                "total_constant": theorem_cfg.total_constant(),
            }),
        )
        .with_sides(theorem_cfg.c_constant.lo, theorem_cfg.c_constant.hi)
        .with_verdict(if theorem_cfg.c_constant.width() < 1e-9 {
            Verdict::Pass
        } else {
            Verdict::Fail
        }),
    );

    let pool = thread_pool(cfg.jobs)?;
    let trial_reports: Vec<Result<VerificationReport, SuiteError>> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| run_theorem1_trial(cfg, &theorem_cfg, group, trial))
            .collect()
    });
    for r in trial_reports {
        reports.push(stamp(r?, started, cfg));
    }
    Ok(reports)
}

fn run_theorem1_trial(
    cfg: &SuiteConfig,
    theorem_cfg: &TheoremConfig,
    group: FreeGroup,
    trial: u64,
) -> Result<VerificationReport, SuiteError> {
    let f_seed = trial_seed(cfg.seed, 2 * trial);
    let g_seed = trial_seed(cfg.seed, 2 * trial + 1);
    let f = random_nonneg(&group, f_seed, cfg.support_size, cfg.max_length)?;
    let g = random_nonneg(&group, g_seed, cfg.support_size, cfg.max_length)?;
    let out = theorem1::verify_theorem1(&f, &g, theorem_cfg)?;

    let mut report = VerificationReport::new(
        "theorem1.bound",
        json!({
            "a": cfg.a,
            "p": cfg.p,
            "rank": cfg.rank,
            "support_size": cfg.support_size,
            "max_length": cfg.max_length,
            "trial": trial,
        }),
    )
    .with_sides(out.lhs, out.rhs)
    .with_verdict(if out.passed() { Verdict::Pass } else { Verdict::Fail })
    .with_seed(cfg.seed)
    .with_trials(1)
    .with_witness(
        Witness::new("chain_stats")
            .with_number("pointwise_max_ratio", format!("{}", out.pointwise_max_ratio))
            .with_number("block_max_ratio", format!("{}", out.block_max_ratio))
            .with_number("blocks_checked", out.blocks_checked.to_string())
            .with_number("norm_f", format!("{}", out.norm_f))
            .with_number("norm_g", format!("{}", out.norm_g)),
    );
    if !out.passed() {
        report = report.with_witness(
            Witness::new("violating_pair")
                .with_number("violations", out.violations.join("; "))
                .with_function("f", function_data(&f))
                .with_function("g", function_data(&g)),
        );
    }
    Ok(report)
}

/// Condition (1) on the configured weight, plus the certified ℤ
/// condition-(2) check when the weight lives on ℤ.
pub fn conditions_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let weight = cfg
        .parse_weight()?
        .unwrap_or_else(|| Weight::length_poly(cfg.a));
    let on_z = matches!(&weight, Weight::EvenPolyZ { .. } | Weight::TableZ { .. });

    let mut reports = Vec::new();
    if on_z {
        reports.push(stamp(
            weights::check_condition1(&weight, &IntGroup, cfg.trials, cfg.max_length, cfg.seed)?,
            started,
            cfg,
        ));
    } else {
        let group = FreeGroup::new(cfg.rank);
        reports.push(stamp(
            weights::check_condition1(&weight, &group, cfg.trials, cfg.max_length, cfg.seed)?,
            started,
            cfg,
        ));
    }
    if matches!(&weight, Weight::EvenPolyZ { .. }) {
        let q = cfg.p_exponent()?.q();
        reports.push(stamp(
            weights::check_condition2_z(&weight, q, 50, 10_000)?,
            started,
            cfg,
        ));
    }
    Ok(reports)
}

/// Hunt the condition-(2) violation on the free group at the identity.
pub fn condition2_witness_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let weight = cfg
        .parse_weight()?
        .unwrap_or_else(|| Weight::length_poly(cfg.a));
    let group = FreeGroup::new(cfg.rank);
    let q = cfg.p_exponent()?.q();
    if !q.is_finite() {
        return Err(SuiteError::Config("condition (2) needs p > 1".to_string()));
    }
    let report = weights::condition2_witness(
        &weight,
        &group,
        q,
        &Word::identity(),
        cfg.radius,
        cfg.sphere_budget,
    )?;
    Ok(vec![stamp(report, started, cfg)])
}

/// The p > 2 obstruction demonstration.
pub fn prop12_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    if !(cfg.p > 2.0) {
        return Err(SuiteError::Config(format!(
            "prop12 needs p > 2: the admissible range (1/p, 1/2) is empty for p = {}",
            cfg.p
        )));
    }
    // --a doubles as α here; out-of-range values mean "use the midpoint"
    let alpha = if cfg.a > 0.0 && cfg.a < 0.5 {
        cfg.a
    } else {
        0.5 * (1.0 / cfg.p + 0.5)
    };
    let schedule = [10_000u64, 100_000, 1_000_000];
    let out = theorem1::prop12_divergence(cfg.p, alpha, &schedule)
        .map_err(|e| SuiteError::Config(e.to_string()))?;

    let first = out.rows.first().expect("schedule is nonempty");
    let last = out.rows.last().expect("schedule is nonempty");
    let mut witness = Witness::new("schedule_rows");
    for row in &out.rows {
        witness = witness
            .with_number(&format!("S_{}", row.n), format!("{}", row.pairing_sum))
            .with_number(&format!("P_{}", row.n), format!("{}", row.p_norm));
    }
    witness = witness.with_number("p_tail_bound", format!("{}", out.p_tail_bound));
    let report = VerificationReport::new(
        "theorem1.prop12",
        json!({
            "p": cfg.p,
            "alpha": alpha,
            "schedule": schedule,
        }),
    )
    .with_sides(last.pairing_sum, first.pairing_sum)
    .with_verdict(if out.passed() { Verdict::Pass } else { Verdict::Fail })
    .with_trials(schedule.len() as u64)
    .with_witness(witness);
    Ok(vec![stamp(report, started, cfg)])
}

/// The §2 sweep on the three certified fixtures: dual-norm convolution
/// bound, the ℓ²-bound with proof steps, involution identities on the
/// rational path, and the norm symmetry of Definition 2.1.
pub fn symmetric_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let p = cfg.p_exponent()?;
    if !(cfg.p > 1.0 && cfg.p <= 2.0) {
        return Err(SuiteError::Config(format!(
            "symmetric fixtures are built for 1 < p <= 2, got {}",
            cfg.p
        )));
    }
    let mut reports = Vec::new();

    for n in [6u64, 8] {
        let fixture = SymmetricAlgebraFixture::cyclic_constant(n, p);
        let support = (n as usize).min(cfg.support_size.max(1));
        reports.extend(fixture_reports(cfg, &fixture, support, n.div_ceil(2))?);
    }

    let (fixture, calibration) =
        SymmetricAlgebraFixture::int_calibrated(2, p, 50, 10_000)?;
    reports.push(calibration);
    let window = cfg.max_length.max(8);
    let support = cfg.support_size.clamp(1, window as usize);
    reports.extend(fixture_reports(cfg, &fixture, support, window)?);

    Ok(reports)
}

fn fixture_reports<G: DiscreteGroup>(
    cfg: &SuiteConfig,
    fixture: &SymmetricAlgebraFixture<G>,
    support: usize,
    max_len: u64,
) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let fixture_name = format!("{} / {}", fixture.group.kind(), fixture.weight);
    let params = json!({
        "fixture": fixture_name,
        "p": cfg.p,
        "certification": fixture.certification,
        "support_size": support,
        "max_length": max_len,
    });
    fixture
        .check_evenness(200, max_len, trial_seed(cfg.seed, 999))
        .map_err(|e| SuiteError::Config(e.to_string()))?;

    let mut lemma25_worst = (0.0f64, 0.0f64, -1.0f64);
    let mut thm26_worst = (0.0f64, 0.0f64, -1.0f64);
    let mut sym_worst: f64 = 0.0;
    let mut violations: Vec<String> = Vec::new();
    for trial in 0..cfg.trials {
        let s1 = trial_seed(cfg.seed, 4 * trial);
        let s2 = trial_seed(cfg.seed, 4 * trial + 1);
        let f = crate::algebra::random_complex(&fixture.group, s1, support, max_len)?;
        let g = crate::algebra::random_complex(&fixture.group, s2, support, max_len)?;

        let out = symcheck::check_lemma25(fixture, &f, &g, cfg.budget)?;
        if !out.holds(cfg.tolerance) {
            violations.push(format!("lemma25 trial {trial}: {} > {}", out.lhs, out.rhs));
        }
        if out.ratio() > lemma25_worst.2 {
            lemma25_worst = (out.lhs, out.rhs, out.ratio());
        }

        let (star, plain) = symcheck::norm_symmetry_pair(fixture, &f)?;
        let err = (star - plain).abs() / plain.max(1.0);
        sym_worst = sym_worst.max(err);
        if err > 1e-12 {
            violations.push(format!("norm symmetry trial {trial}: {star} vs {plain}"));
        }

        let fp = crate::algebra::random_nonneg(&fixture.group, s1, support, max_len)?;
        let gp = crate::algebra::random_nonneg(&fixture.group, s2, support, max_len)?;
        let t26 = symcheck::check_thm26_part1(fixture, &fp, &gp, cfg.tolerance, cfg.budget)?;
        if !t26.passed() {
            violations.push(format!("thm26 trial {trial}: {:?}", t26.violations));
        }
        if t26.headline.ratio() > thm26_worst.2 {
            thm26_worst = (t26.headline.lhs, t26.headline.rhs, t26.headline.ratio());
        }
    }

    // involution identities and the pairing transform, exactly
    let mut exact_ok = true;
    for trial in 0..cfg.trials.min(50) {
        let s = trial_seed(cfg.seed, 10_000 + trial);
        let f = random_rational(&fixture.group, s, support.min(12), max_len)?;
        let g = random_rational(&fixture.group, s ^ 0xabcd, support.min(12), max_len)?;
        let phi = random_rational(&fixture.group, s ^ 0x1234, support.min(12), max_len)?;
        exact_ok &= symcheck::check_involution_identities(&f, &g, cfg.budget)?;
        exact_ok &= symcheck::check_duality_pairing(&f, &phi, &g, cfg.budget)?;
    }

    let make = |check: &str, (lhs, rhs, _): (f64, f64, f64), ok: bool| {
        stamp(
            VerificationReport::new(check, params.clone())
                .with_sides(lhs, rhs)
                .with_verdict(if ok { Verdict::Pass } else { Verdict::Fail })
                .with_seed(cfg.seed)
                .with_trials(cfg.trials),
            started,
            cfg,
        )
    };
    let lemma25_ok = !violations.iter().any(|v| v.starts_with("lemma25"));
    let thm26_ok = !violations.iter().any(|v| v.starts_with("thm26"));
    let sym_ok = !violations.iter().any(|v| v.starts_with("norm symmetry"));
    let mut out = vec![
        make("symcheck.lemma25", lemma25_worst, lemma25_ok),
        make("symcheck.thm26_part1", thm26_worst, thm26_ok),
        make("symcheck.norm_symmetry", (sym_worst, 1e-12, 0.0), sym_ok),
        make(
            "symcheck.involution_identities",
            (if exact_ok { 0.0 } else { 1.0 }, 0.0, 0.0),
            exact_ok,
        ),
    ];
    if !violations.is_empty() {
        for report in &mut out {
            report.witnesses.push(
                Witness::new("violations").with_number("details", violations.join(" | ")),
            );
        }
    }
    Ok(out)
}

/// Product-set measure bound on ℤ_n, exhaustively when feasible.
pub fn lemma31_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let p = cfg.p_exponent()?;
    let fixture = SymmetricAlgebraFixture::cyclic_constant(cfg.n, p);
    let mode = if cfg.n <= symcheck::EXHAUSTIVE_MAX_N {
        SubsetMode::Exhaustive
    } else {
        SubsetMode::Sampled { pairs: cfg.trials, seed: cfg.seed }
    };
    let out = symcheck::check_lemma31(&fixture, mode)?;
    let report = VerificationReport::new(
        "symcheck.lemma31",
        json!({
            "n": cfg.n,
            "p": cfg.p,
            "weight": fixture.weight.to_string(),
            "mode": if matches!(mode, SubsetMode::Exhaustive) { "exhaustive" } else { "sampled" },
        }),
    )
    .with_sides(out.min_margin, 0.0)
    .with_verdict(if out.passed() { Verdict::Pass } else { Verdict::Fail })
    .with_seed(cfg.seed)
    .with_trials(out.pairs_checked)
    .with_witness(
        Witness::new("min_margin_pair")
            .with_element("A", format!("{:?}", out.worst_a))
            .with_element("B", format!("{:?}", out.worst_b))
            .with_number("min_margin", format!("{}", out.min_margin)),
    );
    Ok(vec![stamp(report, started, cfg)])
}

/// Summability of `w^{-q}` on ℤ: certified enclosure for the unit-scale
/// weight plus the window normalization for the calibrated fixture.
pub fn thm32_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let started = std::time::Instant::now();
    let p = cfg.p_exponent()?;
    let q = p.q();
    let unit = Weight::even_poly_z(num_rational::BigRational::from_integer(1.into()), 2);
    let enclosure = symcheck::check_thm32_summability(&unit, q, 1e-6, &[])?;
    let mut reports = vec![stamp(
        VerificationReport::new(
            "symcheck.thm32_enclosure",
            json!({
                "weight": unit.to_string(),
                "q": q,
                "width_requested": 1e-6,
                "truncation": enclosure.truncation,
            }),
        )
        .with_sides(enclosure.lo, enclosure.hi)
        .with_verdict(if enclosure.width() <= 1e-6 { Verdict::Pass } else { Verdict::Fail })
        .with_exact("lo", enclosure.exact_lo.clone())
        .with_exact("hi", enclosure.exact_hi.clone()),
        started,
        cfg,
    )];

    let (fixture, _) = SymmetricAlgebraFixture::int_calibrated(2, p, 50, 10_000)?;
    let windows: Vec<i64> = (1..=100).collect();
    let out = symcheck::check_thm32_summability(&fixture.weight, q, 1e-6, &windows)?;
    let worst = out
        .windows
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .copied()
        .unwrap_or((0, 0.0, true));
    reports.push(stamp(
        VerificationReport::new(
            "symcheck.thm32_windows",
            json!({
                "weight": fixture.weight.to_string(),
                "q": q,
                "windows": "1..=100",
            }),
        )
        .with_sides(worst.1, 1.0)
        .with_verdict(if out.windows_pass() { Verdict::Pass } else { Verdict::Fail })
        .with_trials(out.windows.len() as u64)
        .with_witness(
            Witness::new("largest_window_sum")
                .with_number("m", worst.0.to_string())
                .with_number("sum_upper_bound", format!("{}", worst.1)),
        ),
        started,
        cfg,
    ));
    Ok(reports)
}

/// Recompute a previously emitted report from its parameters and seed.
/// The exact path reproduces recorded values bit for bit.
pub fn replay(report: &VerificationReport) -> Result<VerificationReport, SuiteError> {
    let params = &report.params;
    let get_f64 = |key: &str| -> Result<f64, SuiteError> {
        params
            .get(key)
            .and_then(|v| v.as_f64())
            .ok_or_else(|| SuiteError::Config(format!("witness missing {key}")))
    };
    let get_u64 = |key: &str| -> Result<u64, SuiteError> {
        params
            .get(key)
            .and_then(|v| v.as_u64())
            .ok_or_else(|| SuiteError::Config(format!("witness missing {key}")))
    };
    let get_str = |key: &str| -> Result<&str, SuiteError> {
        params
            .get(key)
            .and_then(|v| v.as_str())
            .ok_or_else(|| SuiteError::Config(format!("witness missing {key}")))
    };

    match report.check.as_str() {
        "weights.condition2_witness" => {
            let weight: Weight = get_str("weight")?.parse()?;
            let kind: crate::GroupKind = get_str("group")?
                .parse()
                .map_err(|e: crate::groups::GroupError| SuiteError::Config(e.to_string()))?;
            let crate::GroupKind::Free { rank } = kind else {
                return Err(SuiteError::Config("witness group is not free".into()));
            };
            let point: Word = get_str("point")?
                .parse()
                .map_err(|e: crate::groups::GroupError| SuiteError::Config(e.to_string()))?;
            Ok(weights::condition2_witness(
                &weight,
                &FreeGroup::new(rank),
                get_f64("q")?,
                &point,
                get_u64("radius")?,
                crate::algebra::DEFAULT_SPHERE_BUDGET,
            )?)
        }
        "weights.condition1" => {
            let weight: Weight = get_str("weight")?.parse()?;
            let kind: crate::GroupKind = get_str("group")?
                .parse()
                .map_err(|e: crate::groups::GroupError| SuiteError::Config(e.to_string()))?;
            let seed = report.seed.ok_or_else(|| SuiteError::Config("no seed".into()))?;
            let max_len = get_u64("max_len")?;
            Ok(match crate::DynGroup::from_kind(kind)
                .map_err(|e| SuiteError::Config(e.to_string()))?
            {
                crate::DynGroup::Free(g) => {
                    weights::check_condition1(&weight, &g, report.trials, max_len, seed)?
                }
                crate::DynGroup::Int(g) => {
                    weights::check_condition1(&weight, &g, report.trials, max_len, seed)?
                }
                crate::DynGroup::Cyclic(g) => {
                    weights::check_condition1(&weight, &g, report.trials, max_len, seed)?
                }
            })
        }
        "theorem1.bound" => {
            let seed = report.seed.ok_or_else(|| SuiteError::Config("no seed".into()))?;
            let cfg = SuiteConfig {
                rank: get_u64("rank")?,
                a: get_f64("a")?,
                p: get_f64("p")?,
                seed,
                support_size: get_u64("support_size")? as usize,
                max_length: get_u64("max_length")?,
                ..SuiteConfig::default()
            };
            let theorem_cfg = TheoremConfig::new(
                cfg.a,
                PExponent::new(cfg.p).map_err(|e| SuiteError::Config(e.to_string()))?,
                cfg.tolerance,
                cfg.budget,
            )?;
            run_theorem1_trial(&cfg, &theorem_cfg, FreeGroup::new(cfg.rank), get_u64("trial")?)
        }
        "theorem1.constant_enclosure" => {
            let cfg = SuiteConfig { a: get_f64("a")?, trials: 0, ..SuiteConfig::default() };
            Ok(theorem1_suite(&cfg)?.remove(0))
        }
        "symcheck.lemma31" => {
            let cfg = SuiteConfig {
                n: get_u64("n")?,
                p: get_f64("p")?,
                seed: report.seed.unwrap_or(0),
                trials: report.trials,
                ..SuiteConfig::default()
            };
            Ok(lemma31_suite(&cfg)?.remove(0))
        }
        other => Err(SuiteError::Config(format!("replay not supported for check {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(suite: SuiteKind) -> SuiteConfig {
        SuiteConfig {
            suite,
            trials: 5,
            support_size: 20,
            max_length: 6,
            jobs: 1,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn theorem1_suite_small_run_passes() {
        let run = run(&small_cfg(SuiteKind::Theorem1)).unwrap();
        assert!(run.ok);
        assert_eq!(run.reports.len(), 6); // enclosure + 5 trials
        assert_eq!(run.reports[0].check, "theorem1.constant_enclosure");
    }

    #[test]
    fn theorem1_suite_deterministic_across_jobs() {
        let mut cfg = small_cfg(SuiteKind::Theorem1);
        cfg.trials = 8;
        let one = run(&cfg).unwrap();
        cfg.jobs = 4;
        let four = run(&cfg).unwrap();
        let ser = |r: &SuiteRun| {
            r.reports.iter().map(|x| x.to_json()).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(ser(&one), ser(&four));
    }

    #[test]
    fn condition2_witness_suite_finds_violation() {
        let run = run(&small_cfg(SuiteKind::Condition2Witness)).unwrap();
        assert!(run.ok);
        assert_eq!(run.reports[0].verdict, Verdict::Violated);
    }

    #[test]
    fn prop12_suite_rejects_p2() {
        let mut cfg = small_cfg(SuiteKind::Prop12);
        cfg.p = 2.0;
        assert!(matches!(run(&cfg), Err(SuiteError::Config(_))));
    }

    #[test]
    fn lemma31_suite_exhaustive_small() {
        let mut cfg = small_cfg(SuiteKind::Lemma31);
        cfg.n = 5;
        let run = run(&cfg).unwrap();
        assert!(run.ok);
        assert_eq!(run.reports[0].trials, 31 * 31);
    }

    #[test]
    fn replay_reproduces_condition2_witness() {
        let original = run(&small_cfg(SuiteKind::Condition2Witness)).unwrap();
        let replayed = replay(&original.reports[0]).unwrap();
        assert_eq!(replayed.exact, original.reports[0].exact);
        assert_eq!(replayed.lhs, original.reports[0].lhs);
    }

    #[test]
    fn replay_reproduces_theorem1_trial() {
        let original = run(&small_cfg(SuiteKind::Theorem1)).unwrap();
        let trial_report = &original.reports[3];
        let replayed = replay(trial_report).unwrap();
        assert_eq!(replayed.lhs, trial_report.lhs);
        assert_eq!(replayed.rhs, trial_report.rhs);
        assert_eq!(replayed.ratio, trial_report.ratio);
    }

    #[test]
    fn budget_errors_are_detected() {
        let mut cfg = small_cfg(SuiteKind::Theorem1);
        cfg.budget = 10;
        cfg.support_size = 50;
        let err = run(&cfg).unwrap_err();
        assert!(err.is_budget(), "{err}");
    }
}
