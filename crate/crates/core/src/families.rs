//! Registry of diagram categories and their exact summand counts `b_n`.
//!
//! Every count follows the same shape: sum over apexes (through-strand
//! counts) of the bottom-set size times the sum of dimensions of the simple
//! modules of the sandwiched algebra. The sandwiched algebra is trivial for
//! planar families, a symmetric group for the Brauer-type families, and a
//! cyclotomic Hecke algebra for the cobordism quotients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::{
    self, binomial, binomial_row, bessel, factorial, involutions_cd, stirling2, stirling2_row,
    with_involutions, with_perfect_matchings, ExactInt, ExactRat,
};
use crate::enumerate;
use crate::error::{GrowthError, Result};
use crate::qalgebra;
use crate::series::PowerSeries;

/// The diagram categories with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramFamily {
    /// Cobordism quotient whose handle has a minimal polynomial of degree `k`.
    Cob { k: u32 },
    Partition,
    PlanarPartition,
    TemperleyLieb,
    Motzkin,
    PlanarRook,
    Brauer,
    RookBrauer,
    Rook,
    Symmetric,
    /// Oriented Brauer category on the object `up^n`.
    OrientedUp,
    /// Oriented Brauer category on the object `(up down)^n`.
    OrientedUpDown,
    /// Interpolation category `Rep(GL_t(F_q))` on the object `1`.
    GlFq { q: u64 },
}

pub const ALL_KINDS: &[&str] = &[
    "cob",
    "partition",
    "planar-partition",
    "temperley-lieb",
    "motzkin",
    "planar-rook",
    "brauer",
    "rook-brauer",
    "rook",
    "symmetric",
    "oriented-up",
    "oriented-updown",
    "glfq",
];

impl DiagramFamily {
    pub fn cob(k: u32) -> Result<Self> {
        let f = Self::Cob { k };
        f.validate()?;
        Ok(f)
    }

    pub fn gl_fq(q: u64) -> Result<Self> {
        let f = Self::GlFq { q };
        f.validate()?;
        Ok(f)
    }

    /// Builds a family from its kebab-case name plus the optional `k`/`q`
    /// parameters (defaults: `k = 1`, `q = 3`).
    pub fn from_name(name: &str, k: Option<u32>, q: Option<u64>) -> Result<Self> {
        let f = match name {
            "cob" => Self::Cob { k: k.unwrap_or(1) },
            "partition" => Self::Partition,
            "planar-partition" => Self::PlanarPartition,
            "temperley-lieb" => Self::TemperleyLieb,
            "motzkin" => Self::Motzkin,
            "planar-rook" => Self::PlanarRook,
            "brauer" => Self::Brauer,
            "rook-brauer" => Self::RookBrauer,
            "rook" => Self::Rook,
            "symmetric" => Self::Symmetric,
            "oriented-up" => Self::OrientedUp,
            "oriented-updown" => Self::OrientedUpDown,
            "glfq" => Self::GlFq { q: q.unwrap_or(3) },
            other => return Err(GrowthError::UnsupportedFamily(other.to_string())),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Cob { k: 0 } => Err(GrowthError::InvalidParameter(
                "cob requires k >= 1".into(),
            )),
            Self::GlFq { q } if q < 2 => Err(GrowthError::InvalidParameter(format!(
                "glfq requires q >= 2, got {q}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Cob { .. } => "cob",
            Self::Partition => "partition",
            Self::PlanarPartition => "planar-partition",
            Self::TemperleyLieb => "temperley-lieb",
            Self::Motzkin => "motzkin",
            Self::PlanarRook => "planar-rook",
            Self::Brauer => "brauer",
            Self::RookBrauer => "rook-brauer",
            Self::Rook => "rook",
            Self::Symmetric => "symmetric",
            Self::OrientedUp => "oriented-up",
            Self::OrientedUpDown => "oriented-updown",
            Self::GlFq { .. } => "glfq",
        }
    }

    /// `k=..` / `q=..`, empty for parameter-free families.
    pub fn param(&self) -> String {
        match self {
            Self::Cob { k } => format!("k={k}"),
            Self::GlFq { q } => format!("q={q}"),
            _ => String::new(),
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(
            self,
            Self::PlanarPartition | Self::TemperleyLieb | Self::Motzkin | Self::PlanarRook
        )
    }

    /// Every family with a parameter-free representative, plus the given
    /// parameter choices for `Cob` and `GlFq`.
    pub fn catalogue(ks: &[u32], qs: &[u64]) -> Vec<Self> {
        let mut out: Vec<Self> = ks.iter().map(|&k| Self::Cob { k }).collect();
        out.extend([
            Self::Partition,
            Self::PlanarPartition,
            Self::TemperleyLieb,
            Self::Motzkin,
            Self::PlanarRook,
            Self::Brauer,
            Self::RookBrauer,
            Self::Rook,
            Self::Symmetric,
            Self::OrientedUp,
            Self::OrientedUpDown,
        ]);
        out.extend(qs.iter().map(|&q| Self::GlFq { q }));
        out
    }
}

impl fmt::Display for DiagramFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = self.param();
        if param.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}({})", self.name(), param)
        }
    }
}

impl FromStr for DiagramFamily {
    type Err = GrowthError;

    /// Parses `brauer`, `cob(k=2)`, `glfq(q=5)`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((name, rest)) = s.split_once('(') else {
            return Self::from_name(s, None, None);
        };
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| GrowthError::InvalidParameter(s.to_string()))?;
        let bad = || GrowthError::InvalidParameter(s.to_string());
        let (key, value) = inner.split_once('=').ok_or_else(bad)?;
        match key.trim() {
            "k" => Self::from_name(name, Some(value.trim().parse().map_err(|_| bad())?), None),
            "q" => Self::from_name(name, None, Some(value.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// Where a value in a [`GrowthSequence`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Egf,
    Oracle,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::ClosedForm => "closed-form",
            Self::Egf => "egf",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSequence {
    pub family: DiagramFamily,
    pub values: Vec<ExactInt>,
    pub provenance: Vec<Provenance>,
}

/// Strand indexing for Temperley-Lieb. `Strands` counts `b_n` on `n`
/// strands, `Doubled` reports the value at `2n` strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TlIndexing {
    #[default]
    Strands,
    Doubled,
}

/// Merge diagrams from `n` bottom strands to `m` top strands:
/// `M_n^m = sum_{i=m}^n S(n,i) C(i,m)`.
pub fn merge_count(n: usize, m: usize) -> ExactInt {
    if m > n {
        return ExactInt::zero();
    }
    (m..=n)
        .map(|i| stirling2(n, i) * binomial(i, m as i64))
        .sum()
}

/// Standard `k`-multitableaux with `m` cells:
/// `k^ceil(m/2) * sum_i Bes(m,i) k^(floor(m/2) - i)`.
pub fn stab_count(m: usize, k: u32) -> Result<ExactInt> {
    if k == 0 {
        return Err(GrowthError::InvalidParameter("stab_count requires k >= 1".into()));
    }
    let kk = ExactInt::from(k);
    let lead = num_traits::pow(kk.clone(), m.div_ceil(2));
    let inner: ExactInt = (0..=m / 2)
        .map(|i| bessel(m, i) * num_traits::pow(kk.clone(), m / 2 - i))
        .sum();
    Ok(lead * inner)
}

/// Below this size the cobordism count is the literal double sum over merge
/// diagrams; above it the sum is regrouped by Stirling row.
const COB_LITERAL_LIMIT: usize = 200;

fn cob_bn(n: usize, k: u32) -> ExactInt {
    if n < COB_LITERAL_LIMIT {
        return (0..=n)
            .map(|m| merge_count(n, m) * stab_count(m, k).expect("k >= 1"))
            .sum();
    }
    cob_bn_regrouped(n, k)
}

/// `b_n = sum_i S(n,i) T_i` with `T_i = sum_m C(i,m) #STab(m,k)`. The `T_i`
/// satisfy `T_i = (k+1) T_{i-1} + k (i-1) T_{i-2}`.
pub(crate) fn cob_bn_regrouped(n: usize, k: u32) -> ExactInt {
    let row = stirling2_row(n);
    let mut t_prev = ExactInt::one();
    let mut t_cur = ExactInt::from(k + 1);
    let mut total = &row[0] * &t_prev;
    if n >= 1 {
        total += &row[1] * &t_cur;
    }
    for (i, s) in row.iter().enumerate().skip(2) {
        let t_next = &t_cur * (k + 1) + &t_prev * (k as usize * (i - 1));
        total += s * &t_next;
        t_prev = std::mem::replace(&mut t_cur, t_next);
    }
    total
}

/// Non-crossing half diagrams on `n` points with `k` through-strands: the
/// ballot number `C(n, j) - C(n, j-1)` with `j = (n-k)/2`.
pub fn tl_bottom_count(n: usize, k: usize) -> ExactInt {
    if k > n || (n - k) % 2 == 1 {
        return ExactInt::zero();
    }
    let j = ((n - k) / 2) as i64;
    binomial(n, j) - binomial(n, j - 1)
}

pub fn temperley_lieb_bn(n: usize, indexing: TlIndexing) -> ExactInt {
    let strands = match indexing {
        TlIndexing::Strands => n,
        TlIndexing::Doubled => 2 * n,
    };
    (0..=strands).map(|k| tl_bottom_count(strands, k)).sum()
}

/// Planar half diagrams on `n` points built from singletons, arcs and `k`
/// through-strands, where no arc may enclose a through-strand. Counted by a
/// left-to-right transfer over (open arcs, through-strands so far).
pub fn motzkin_bottom_counts(n: usize) -> Vec<ExactInt> {
    // state[a][k]: a arcs open, k through-strands placed
    let mut state = vec![vec![ExactInt::zero(); n + 1]; n + 1];
    state[0][0] = ExactInt::one();
    for _ in 0..n {
        let mut next = vec![vec![ExactInt::zero(); n + 1]; n + 1];
        for a in 0..=n {
            for k in 0..=n {
                let v = &state[a][k];
                if v.is_zero() {
                    continue;
                }
                next[a][k] += v; // singleton
                if a < n {
                    next[a + 1][k] += v; // open an arc
                }
                if a > 0 {
                    next[a - 1][k] += v; // close the innermost arc
                }
                if a == 0 && k < n {
                    next[0][k + 1] += v; // through-strand
                }
            }
        }
        state = next;
    }
    state.swap_remove(0)
}

/// Exact `b_n` from the closed-form cellular sum.
pub fn bn(family: DiagramFamily, n: usize) -> Result<ExactInt> {
    family.validate()?;
    Ok(match family {
        DiagramFamily::Cob { k } => cob_bn(n, k),
        DiagramFamily::Partition => cob_bn(n, 1),
        DiagramFamily::OrientedUpDown => {
            let row = binomial_row(n);
            with_involutions(n, |cd| {
                (0..=n)
                    .map(|k| &cd[k] * &cd[k] * &row[k] * &row[k] * factorial(n - k))
                    .sum()
            })
        }
        DiagramFamily::OrientedUp | DiagramFamily::Symmetric => involutions_cd(n),
        DiagramFamily::Brauer => {
            let row = binomial_row(n);
            with_involutions(n, |cd| {
                with_perfect_matchings(n, |pm| {
                    (0..=n)
                        .filter(|k| (n - k).is_multiple_of(2))
                        .map(|k| &row[k] * &pm[n - k] * &cd[k])
                        .sum()
                })
            })
        }
        DiagramFamily::RookBrauer => {
            let row = binomial_row(n);
            with_involutions(n, |cd| {
                (0..=n).map(|k| &row[k] * &cd[n - k] * &cd[k]).sum()
            })
        }
        DiagramFamily::Rook => {
            let row = binomial_row(n);
            with_involutions(n, |cd| (0..=n).map(|k| &row[k] * &cd[k]).sum())
        }
        DiagramFamily::TemperleyLieb => temperley_lieb_bn(n, TlIndexing::Strands),
        DiagramFamily::Motzkin => motzkin_bottom_counts(n).into_iter().sum(),
        DiagramFamily::PlanarRook => binomial_row(n).into_iter().sum(),
        DiagramFamily::PlanarPartition => temperley_lieb_bn(n, TlIndexing::Doubled),
        DiagramFamily::GlFq { q } => qalgebra::gl_bn_value(q, n),
    })
}

fn rat(n: i64, d: i64) -> ExactRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `exp(a x^2 + b x)` at the given order.
fn exp_quadratic(a: ExactRat, b: ExactRat, order: usize) -> PowerSeries {
    PowerSeries::new(vec![ExactRat::zero(), b, a], order)
        .exp_series()
        .expect("zero constant term")
}

/// `exp(k/2 e^{2x} + e^x - (k+2)/2)`. The inner exponentials are truncated
/// polynomials; their constant terms cancel against `(k+2)/2`.
pub fn cob_egf(k: u32, order: usize) -> PowerSeries {
    let half_k = rat(k as i64, 2);
    let e2 = PowerSeries::exp_linear(&rat(2, 1), order).scale(&half_k);
    let e1 = PowerSeries::exp_linear(&rat(1, 1), order);
    let constant = PowerSeries::new(vec![rat(k as i64 + 2, 2)], order);
    let inner = &(&e2 + &e1) - &constant;
    inner.exp_series().expect("constant term cancels")
}

/// The exponential generating function of `b_n`, when one is implemented.
pub fn egf_for(family: DiagramFamily, order: usize) -> Option<PowerSeries> {
    match family {
        DiagramFamily::Cob { k } if k >= 1 => Some(cob_egf(k, order)),
        DiagramFamily::Partition => Some(cob_egf(1, order)),
        DiagramFamily::Brauer => Some(exp_quadratic(rat(1, 1), rat(1, 1), order)),
        DiagramFamily::Symmetric | DiagramFamily::OrientedUp => {
            Some(exp_quadratic(rat(1, 2), rat(1, 1), order))
        }
        DiagramFamily::RookBrauer => Some(exp_quadratic(rat(1, 1), rat(2, 1), order)),
        DiagramFamily::Rook => Some(exp_quadratic(rat(1, 2), rat(2, 1), order)),
        DiagramFamily::OrientedUpDown => {
            // b_n = cd(2n): even-index extraction from exp(x^2/2 + x).
            let cd = exp_quadratic(rat(1, 2), rat(1, 1), 2 * order)
                .egf_coefficients(2 * order)
                .ok()?;
            let values: Vec<ExactInt> = cd.into_iter().step_by(2).collect();
            Some(PowerSeries::from_egf_values(&values, order))
        }
        _ => None,
    }
}

/// Closed-form values `b_0..=b_{n_max}`.
pub fn sequence(family: DiagramFamily, n_max: usize) -> Result<GrowthSequence> {
    sequence_via(family, n_max, Provenance::ClosedForm)
}

/// Values from the requested computation path. The EGF path fails for
/// families without an EGF; the oracle path respects the enumeration guards.
pub fn sequence_via(
    family: DiagramFamily,
    n_max: usize,
    via: Provenance,
) -> Result<GrowthSequence> {
    family.validate()?;
    let values = match via {
        Provenance::ClosedForm => (0..=n_max)
            .map(|n| bn(family, n))
            .collect::<Result<Vec<_>>>()?,
        Provenance::Egf => egf_for(family, n_max)
            .ok_or_else(|| GrowthError::UnsupportedFamily(format!("{family} has no EGF")))?
            .egf_coefficients(n_max)?,
        Provenance::Oracle => (0..=n_max)
            .map(|n| enumerate::oracle_bn(family, n))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(GrowthSequence {
        family,
        provenance: vec![via; values.len()],
        values,
    })
}

/// `ln b_n` from the exact value.
pub fn ln_bn(family: DiagramFamily, n: usize) -> Result<f64> {
    Ok(bigmath::ln_exact(&bn(family, n)?))
}
