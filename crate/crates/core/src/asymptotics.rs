//! Floating-point asymptotics for `b_n`, always in natural-log scale.
//!
//! Three kinds of model are provided: the root-growth targets for
//! `b_n^(1/n)`, closed full-`b_n` approximants where one is known, and a
//! generic saddle-point (Hayman) estimate computed numerically from an
//! analytic description of the EGF.

use std::f64::consts::{E, LN_2, PI};

use serde::Serialize;

use crate::bigmath::{ln_exact, ExactInt};
use crate::error::{GrowthError, Result};
use crate::families::{bn, DiagramFamily};
use crate::guards::Guards;
use crate::qalgebra::q_pochhammer_constant;

/// Principal branch of the Lambert W function for `x >= 0`.
///
/// Starts from `ln(1 + x)` (small `x`) or the two-term log expansion
/// (large `x`) and refines with Halley steps, falling back to a bisection
/// step whenever an update leaves the current bracket.
pub fn lambert_w(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(GrowthError::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = if x < E {
        x.ln_1p() * (1.0 - x.ln_1p() / (2.0 + x.ln_1p()))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    // W is increasing with 0 < W(x) <= max(x, ln x).
    let (mut lo, mut hi) = (0.0f64, x.max(x.ln()).max(1.0));
    for _ in 0..100 {
        let ew = w.exp();
        let resid = w * ew - x;
        if resid > 0.0 {
            hi = hi.min(w);
        } else {
            lo = lo.max(w);
        }
        if resid.abs() <= 1e-15 * x.max(1.0) {
            break;
        }
        let wp1 = w + 1.0;
        let step = resid / (ew * wp1 - (w + 2.0) * resid / (2.0 * wp1));
        let mut next = w - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 4.0 * f64::EPSILON * w.abs() {
            w = next;
            break;
        }
        w = next;
    }
    Ok(w)
}

/// `ln n!`: summed directly for small `n`, Stirling series otherwise.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 20 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + inv / 12.0 - inv * inv2 / 360.0
        + inv * inv2 * inv2 / 1260.0
}

/// Precision of the saddle-point shift in the cobordism approximant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZCorrection {
    /// `z = W(2n/k)/2 - 1/(2k sqrt(n) (W+1) W^(-3/2) + 2/W + 1)`
    #[default]
    Full,
    /// `z = W(2n/k)/2`
    Leading,
}

/// Saddle point used by the cobordism approximant.
pub fn cob_saddle(n: f64, k: f64, correction: ZCorrection) -> Result<f64> {
    let w = lambert_w(2.0 * n / k)?;
    Ok(match correction {
        ZCorrection::Leading => w / 2.0,
        ZCorrection::Full => {
            w / 2.0 - 1.0 / (2.0 * k * n.sqrt() * (w + 1.0) * w.powf(-1.5) + 2.0 / w + 1.0)
        }
    })
}

/// `ln` of the closed approximant for the cobordism quotient with handle
/// degree `k`:
/// `(n/z)^(n+1/2) exp(k/2 e^(2z) + e^z - n - (k+2)/2)
///   / sqrt(k e^(2z)(2z+1) + e^z (z+1))`.
pub fn cob_log_estimate(n: usize, k: u32, correction: ZCorrection) -> Result<f64> {
    let (nf, kf) = (n as f64, k as f64);
    let z = cob_saddle(nf, kf, correction)?;
    let e1 = z.exp();
    let e2 = (2.0 * z).exp();
    Ok((nf + 0.5) * (nf / z).ln() + kf / 2.0 * e2 + e1 - nf - (kf + 2.0) / 2.0
        - 0.5 * (kf * e2 * (2.0 * z + 1.0) + e1 * (z + 1.0)).ln())
}

/// Partition-category approximant in terms of `W(2n)`.
pub fn partition_log_estimate(n: usize) -> Result<f64> {
    let nf = n as f64;
    let w = lambert_w(2.0 * nf)?;
    Ok(nf * (2.0 * nf / w).ln() + nf / w + (2.0 * nf / w).sqrt() - nf - 1.75
        - 0.5 * (1.0 + w).ln())
}

/// `2^(n/2 - 1/2) exp(sqrt(n/2) - n/2 - 1/8) n^(n/2)`
pub fn brauer_log_estimate(n: usize) -> f64 {
    let nf = n as f64;
    (nf / 2.0 - 0.5) * LN_2 + (nf / 2.0).sqrt() - nf / 2.0 - 0.125 + nf / 2.0 * nf.ln()
}

/// `n^n 2^(n - 1/2) exp(-n + sqrt(2n) - 1/4) (1 + 7/(24 sqrt(2n)))`
pub fn oriented_updown_log_estimate(n: usize) -> f64 {
    let nf = n as f64;
    let s = (2.0 * nf).sqrt();
    nf * nf.ln() + (nf - 0.5) * LN_2 - nf + s - 0.25 + (7.0 / (24.0 * s)).ln_1p()
}

/// `ln(c(q) q^(n(n+1)/2))`
pub fn glfq_log_estimate(q: u64, n: usize) -> Result<f64> {
    let c = q_pochhammer_constant(q, 1e-15)?;
    let nf = n as f64;
    Ok(c.ln() + nf * (nf + 1.0) / 2.0 * (q as f64).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RootOptions {
    /// Multiply the partition target by `e^(1/ln 2n)`.
    pub partition_correction: bool,
}

/// Growth target for `b_n^(1/n)`.
pub fn root_target(family: DiagramFamily, n: usize, opts: RootOptions) -> f64 {
    let nf = n as f64;
    match family {
        DiagramFamily::Cob { k } => 2.0 / E * nf / (2.0 * nf / k as f64).ln(),
        DiagramFamily::Partition => {
            let base = 2.0 / E * nf / (2.0 * nf).ln();
            if opts.partition_correction {
                base * (1.0 / (2.0 * nf).ln()).exp()
            } else {
                base
            }
        }
        DiagramFamily::PlanarPartition => 4.0,
        DiagramFamily::Motzkin => 3.0,
        DiagramFamily::TemperleyLieb | DiagramFamily::PlanarRook => 2.0,
        DiagramFamily::Brauer | DiagramFamily::RookBrauer => (2.0 * nf / E).sqrt(),
        DiagramFamily::Rook | DiagramFamily::Symmetric | DiagramFamily::OrientedUp => {
            (nf / E).sqrt()
        }
        DiagramFamily::OrientedUpDown => 2.0 / E * nf,
        DiagramFamily::GlFq { q } => (q as f64).powf((nf + 1.0) / 2.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// A closed approximant for `b_n` itself.
    FullBn,
    /// Fallback `n ln(target)` from the root-growth table only.
    RootGrowth,
    Hayman,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub log: f64,
    pub kind: ModelKind,
}

/// `ln` of the asymptotic approximant for `b_n`; families without a closed
/// full approximant fall back to the root-growth target.
pub fn log_bn_estimate(family: DiagramFamily, n: usize) -> Result<Estimate> {
    log_bn_estimate_with(family, n, RootOptions::default())
}

pub fn log_bn_estimate_with(family: DiagramFamily, n: usize, opts: RootOptions) -> Result<Estimate> {
    family.validate()?;
    if n < 2 {
        return Err(GrowthError::InvalidParameter(format!(
            "asymptotic estimates need n >= 2, got {n}"
        )));
    }
    let full = |log| Estimate {
        log,
        kind: ModelKind::FullBn,
    };
    Ok(match family {
        DiagramFamily::Cob { k } => full(cob_log_estimate(n, k, ZCorrection::Full)?),
        DiagramFamily::Partition => full(partition_log_estimate(n)?),
        DiagramFamily::Brauer => full(brauer_log_estimate(n)),
        DiagramFamily::OrientedUpDown => full(oriented_updown_log_estimate(n)),
        DiagramFamily::GlFq { q } => full(glfq_log_estimate(q, n)?),
        _ => Estimate {
            log: n as f64 * root_target(family, n, opts).ln(),
            kind: ModelKind::RootGrowth,
        },
    })
}

/// Observed `b_n^(1/n)` and its target.
pub fn root_growth(family: DiagramFamily, n: usize, opts: RootOptions) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(GrowthError::InvalidParameter(format!(
            "root growth needs n >= 2, got {n}"
        )));
    }
    let exact = bn(family, n)?;
    Ok(((ln_exact(&exact) / n as f64).exp(), root_target(family, n, opts)))
}

/// An entire EGF `f = exp(g)` given by `g` and `g'` on the positive axis.
pub trait SaddleEgf {
    /// `ln f(r) = g(r)`
    fn log_value(&self, r: f64) -> f64;
    /// `f'(r)/f(r) = g'(r)`
    fn log_derivative(&self, r: f64) -> f64;
}

/// `exp(sum_i a_i x^i)`
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolynomial(pub Vec<f64>);

impl SaddleEgf for ExpPolynomial {
    fn log_value(&self, r: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, a| acc * r + a)
    }

    fn log_derivative(&self, r: f64) -> f64 {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, a)| acc * r + i as f64 * a)
    }
}

/// `exp(k/2 e^(2x) + e^x - (k+2)/2)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobEgf {
    pub k: f64,
}

impl SaddleEgf for CobEgf {
    fn log_value(&self, r: f64) -> f64 {
        self.k / 2.0 * (2.0 * r).exp() + r.exp() - (self.k + 2.0) / 2.0
    }

    fn log_derivative(&self, r: f64) -> f64 {
        self.k * (2.0 * r).exp() + r.exp()
    }
}

/// Analytic EGF for the families that have one.
pub fn analytic_egf_for(family: DiagramFamily) -> Option<Box<dyn SaddleEgf>> {
    let poly = |c: &[f64]| Some(Box::new(ExpPolynomial(c.to_vec())) as Box<dyn SaddleEgf>);
    match family {
        DiagramFamily::Cob { k } => Some(Box::new(CobEgf { k: k as f64 })),
        DiagramFamily::Partition => Some(Box::new(CobEgf { k: 1.0 })),
        DiagramFamily::Brauer => poly(&[0.0, 1.0, 1.0]),
        DiagramFamily::Symmetric | DiagramFamily::OrientedUp => poly(&[0.0, 1.0, 0.5]),
        DiagramFamily::RookBrauer => poly(&[0.0, 2.0, 1.0]),
        DiagramFamily::Rook => poly(&[0.0, 2.0, 0.5]),
        _ => None,
    }
}

/// Saddle `r` with `r f'(r)/f(r) = n`, by bracketing and bisection.
pub fn saddle_point(egf: &dyn SaddleEgf, n: usize) -> Result<f64> {
    let target = n as f64;
    let h = |r: f64| r * egf.log_derivative(r) - target;
    let mut hi = 1.0f64;
    let mut doublings = 0;
    while h(hi) <= 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 1100 || !h(hi).is_finite() {
            return Err(GrowthError::SaddleBracket(format!(
                "no sign change of r f'/f - {n} found up to r = {hi:e}"
            )));
        }
    }
    let mut lo = 0.0f64;
    if h(lo) >= 0.0 {
        return Err(GrowthError::SaddleBracket(format!(
            "r f'/f - {n} is already nonnegative at r = 0"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Hayman estimate of `ln [x^n] f`:
/// `ln f(r) - n ln r - 1/2 ln(2 pi b(r))` with `b(r) = r d/dr (r f'/f)`,
/// the derivative taken by central differences with step `r * 1e-6`.
pub fn hayman_estimate(egf: &dyn SaddleEgf, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(GrowthError::InvalidParameter(format!(
            "hayman estimate needs n >= 2, got {n}"
        )));
    }
    let r = saddle_point(egf, n)?;
    let a = |x: f64| x * egf.log_derivative(x);
    let step = r * 1e-6;
    let b = r * (a(r + step) - a(r - step)) / (2.0 * step);
    if !(b > 0.0) {
        return Err(GrowthError::SaddleBracket(format!(
            "non-positive variance b(r) = {b} at r = {r}"
        )));
    }
    Ok(egf.log_value(r) - n as f64 * r.ln() - 0.5 * (2.0 * PI * b).ln())
}

/// Hayman estimate of `ln b_n = ln n! + ln [x^n] f`.
pub fn hayman_log_bn(egf: &dyn SaddleEgf, n: usize) -> Result<f64> {
    Ok(ln_factorial(n as u64) + hayman_estimate(egf, n)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub exact: ExactInt,
    pub log_exact: f64,
    pub log_estimate: f64,
    pub kind: ModelKind,
    /// `exp(log estimate - log exact)`
    pub ratio: f64,
    /// `b_n^(1/n) / target`
    pub root_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub family: DiagramFamily,
    /// One entry per requested `n`, in request order; rows beyond the exact
    /// guard carry the error message instead.
    pub rows: Vec<std::result::Result<ConvergenceRow, String>>,
}

impl ConvergenceReport {
    pub fn ok_rows(&self) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter_map(|r| r.as_ref().ok())
    }
}

pub fn convergence_row(
    family: DiagramFamily,
    n: usize,
    guards: &Guards,
    opts: RootOptions,
) -> Result<ConvergenceRow> {
    let limit = guards.exact_limit(family);
    if n > limit {
        return Err(GrowthError::GuardExceeded {
            what: "exact b_n",
            n,
            limit,
        });
    }
    let exact = bn(family, n)?;
    let log_exact = ln_exact(&exact);
    let est = log_bn_estimate_with(family, n, opts)?;
    let root_ratio = (log_exact / n as f64).exp() / root_target(family, n, opts);
    Ok(ConvergenceRow {
        n,
        exact,
        log_exact,
        log_estimate: est.log,
        kind: est.kind,
        ratio: (est.log - log_exact).exp(),
        root_ratio,
    })
}

/// Exact versus asymptotic `b_n` for each requested `n`.
pub fn convergence_report(
    family: DiagramFamily,
    ns: &[usize],
    guards: &Guards,
    opts: RootOptions,
) -> ConvergenceReport {
    let rows = ns
        .iter()
        .map(|&n| convergence_row(family, n, guards, opts).map_err(|e| e.to_string()))
        .collect();
    ConvergenceReport { family, rows }
}
