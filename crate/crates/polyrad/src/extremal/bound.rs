//! The closed-form upper bound
//!
//! `(4/m)^m · (4γ/m²)^{γ/m} / (1 − γ/m²)^{m + γ/m} · ((m − √γ)/(m + √γ))^{2√γ}`
//!
//! evaluated in 256-bit arithmetic so the returned double is correct to the
//! last unit even for large `m`, along with the full-precision decimal
//! string for regression pinning.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

use crate::error::{Error, Result};

/// Working precision in bits (about 77 decimal digits).
const PRECISION: usize = 256;

/// The bound's parameters: number of rays `m` and exponent `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub m: usize,
    pub gamma: f64,
}

/// Whether to enforce the proven range of the bound or merely guard the
/// formula's pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    /// Requires `m ≥ 5` and `0 < γ ≤ m^(1/3)`, where the inequality is
    /// proven.
    Strict,
    /// Evaluates the formula anywhere it is finite (`m ≥ 1`, `0 < γ < m²`),
    /// tagging out-of-range results.
    Lax,
}

/// An evaluated bound: the double value, the full-precision decimal string
/// it was rounded from, and whether the parameters left the proven range.
#[derive(Clone, Debug, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub decimal: String,
    pub out_of_hypothesis: bool,
}

impl BoundParams {
    pub fn new(m: usize, gamma: f64) -> Self {
        BoundParams { m, gamma }
    }

    /// True when `(m, γ)` lies in the proven range.
    pub fn in_hypothesis(&self) -> bool {
        self.m >= 5
            && self.gamma > 0.0
            && self.gamma.is_finite()
            && self.gamma <= (self.m as f64).cbrt()
    }

    fn check(&self, mode: HypothesisMode) -> Result<bool> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::HypothesisViolation(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        match mode {
            HypothesisMode::Strict => {
                if self.m < 5 {
                    return Err(Error::HypothesisViolation(format!(
                        "m must be at least 5, got {}",
                        self.m
                    )));
                }
                let cap = (self.m as f64).cbrt();
                if self.gamma > cap {
                    return Err(Error::HypothesisViolation(format!(
                        "gamma must not exceed m^(1/3) = {cap}, got {}",
                        self.gamma
                    )));
                }
                Ok(false)
            }
            HypothesisMode::Lax => {
                if self.m == 0 {
                    return Err(Error::HypothesisViolation("m must be positive".into()));
                }
                let m2 = (self.m as f64) * (self.m as f64);
                if self.gamma >= m2 {
                    return Err(Error::HypothesisViolation(format!(
                        "gamma must stay below m² = {m2} (formula pole), got {}",
                        self.gamma
                    )));
                }
                Ok(!self.in_hypothesis())
            }
        }
    }
}

/// Evaluates the bound in extended precision. In strict mode parameters
/// outside the proven range are rejected; in lax mode they are evaluated
/// and tagged.
pub fn extremal_bound(params: &BoundParams, mode: HypothesisMode) -> Result<BoundValue> {
    let out_of_hypothesis = params.check(mode)?;
    let p = PRECISION;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new()
        .map_err(|e| Error::Precision(format!("constants cache unavailable: {e:?}")))?;

    let big = |x: f64| BigFloat::from_f64(x, p);
    let m = big(params.m as f64);
    let gamma = big(params.gamma);
    let g_over_m = gamma.div(&m, p, rm);
    let ln = |x: &BigFloat, cc: &mut Consts| x.ln(p, rm, cc);

    let ln4 = ln(&big(4.0), &mut cc);
    let ln_m = ln(&m, &mut cc);
    let ln_gamma = ln(&gamma, &mut cc);
    let sqrt_gamma = gamma.sqrt(p, rm);

    // m·ln(4/m)
    let t1 = m.mul(&ln4.sub(&ln_m, p, rm), p, rm);
    // (γ/m)·ln(4γ/m²)
    let t2 = {
        let inner = ln4
            .add(&ln_gamma, p, rm)
            .sub(&ln_m.mul(&big(2.0), p, rm), p, rm);
        g_over_m.mul(&inner, p, rm)
    };
    // −(m + γ/m)·ln(1 − γ/m²)
    let t3 = {
        let one_minus = big(1.0).sub(&g_over_m.div(&m, p, rm), p, rm);
        m.add(&g_over_m, p, rm)
            .mul(&ln(&one_minus, &mut cc), p, rm)
            .neg()
    };
    // 2√γ·(ln(m − √γ) − ln(m + √γ))
    let t4 = {
        let lo = ln(&m.sub(&sqrt_gamma, p, rm), &mut cc);
        let hi = ln(&m.add(&sqrt_gamma, p, rm), &mut cc);
        sqrt_gamma
            .mul(&big(2.0), p, rm)
            .mul(&lo.sub(&hi, p, rm), p, rm)
    };

    let log_bound = t1.add(&t2, p, rm).add(&t3, p, rm).add(&t4, p, rm);
    let bound = log_bound.exp(p, rm, &mut cc);
    if bound.is_nan() {
        return Err(Error::Precision(
            "bound evaluation produced an undefined value".into(),
        ));
    }
    let decimal = bound
        .format(Radix::Dec, rm, &mut cc)
        .map_err(|e| Error::Precision(format!("decimal formatting failed: {e:?}")))?;
    let value: f64 = decimal
        .parse()
        .map_err(|e| Error::Precision(format!("unparseable decimal {decimal:?}: {e}")))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Overflow(format!(
            "bound leaves the double range: {decimal}"
        )));
    }
    Ok(BoundValue {
        value,
        decimal,
        out_of_hypothesis,
    })
}
