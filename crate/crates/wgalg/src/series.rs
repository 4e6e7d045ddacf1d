//! Certified enclosures for the series constants entering the norm bounds.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series Σ (k+1)^(1-a) diverges for a = {a} (needs a > 2)")]
    Divergent { a: f64 },
    #[error("cannot reach enclosure width {requested} (best achieved {achieved})")]
    WidthUnreachable { requested: f64, achieved: f64 },
}

/// A closed interval certified to contain a real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Certified enclosure of `C_a = Σ_{k≥0} (k+1)^{1-a}` for `a > 2`.
///
/// Partial sum to `K` plus integral comparison for the tail
/// `T = Σ_{m ≥ K+2} m^{1-a}`:
///
/// ```text
/// (K+2)^{2-a}/(a-2)  ≤  T  ≤  (K+1)^{2-a}/(a-2)
/// ```
///
/// The partial sum is Kahan-compensated and the enclosure is widened by a
/// bound on the residual float error, so the interval stays trustworthy.
pub fn c_constant_enclosure(a: f64, target_width: f64) -> Result<Enclosure, SeriesError> {
    if !(a > 2.0) {
        return Err(SeriesError::Divergent { a });
    }

    let tail_hi = |k: u64| ((k + 1) as f64).powf(2.0 - a) / (a - 2.0);
    let tail_lo = |k: u64| ((k + 2) as f64).powf(2.0 - a) / (a - 2.0);

    // grow K until the tail gap (plus slack for summation error) fits
    let mut k: u64 = 64;
    while tail_hi(k) - tail_lo(k) > 0.25 * target_width {
        k = k.saturating_mul(2);
        if k > 1 << 34 {
            return Err(SeriesError::WidthUnreachable {
                requested: target_width,
                achieved: tail_hi(k) - tail_lo(k),
            });
        }
    }

    // Kahan summation of Σ_{k'=0..=K} (k'+1)^{1-a}
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for m in 1..=(k + 1) {
        let term = (m as f64).powf(1.0 - a);
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    // float error budget: compensated summation contributes ~2ε·sum
    // regardless of the term count, and each powf is correct to a couple
    // of ulps, for another ~2ε·sum in the worst case
    let fuzz = 8.0 * f64::EPSILON * sum;
    let enclosure = Enclosure {
        lo: sum + tail_lo(k) - fuzz,
        hi: sum + tail_hi(k) + fuzz,
    };
    if enclosure.width() > target_width {
        return Err(SeriesError::WidthUnreachable {
            requested: target_width,
            achieved: enclosure.width(),
        });
    }
    Ok(enclosure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_encloses_pi_squared_over_six() {
        let enc = c_constant_enclosure(3.0, 1e-9).unwrap();
        assert!(enc.width() < 1e-9, "width {}", enc.width());
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!(enc.contains(pi2_6), "[{}, {}] misses {}", enc.lo, enc.hi, pi2_6);
    }

    #[test]
    fn other_exponents_match_reference_values() {
        // ζ(1.5) and ζ(3), frozen from an independent high-precision oracle
        let enc = c_constant_enclosure(2.5, 1e-8).unwrap();
        assert!(enc.contains(2.612_375_348_685_488_3), "{enc:?}");
        let enc = c_constant_enclosure(4.0, 1e-12).unwrap();
        assert!(enc.contains(1.202_056_903_159_594_2), "{enc:?}");
    }

    #[test]
    fn divergent_exponent_rejected() {
        assert!(matches!(c_constant_enclosure(2.0, 1e-9), Err(SeriesError::Divergent { .. })));
        assert!(matches!(c_constant_enclosure(1.0, 1e-9), Err(SeriesError::Divergent { .. })));
    }

    #[test]
    fn enclosures_nest_as_width_shrinks() {
        let wide = c_constant_enclosure(3.0, 1e-6).unwrap();
        let tight = c_constant_enclosure(3.0, 1e-10).unwrap();
        assert!(wide.lo <= tight.lo && tight.hi <= wide.hi);
    }
}
