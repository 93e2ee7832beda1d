//! Integer polynomials in a formal variable `q`, used for the `GL_t(F_q)`
//! summand count and the identity
//! `sum_k (sum_l [n l]_q [l k]_q) * #Sym_k(q) = prod_{k=1}^n (q^k + 1)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigmath::ExactInt;
use crate::error::{GrowthError, Result};

/// Polynomial with integer coefficients indexed by degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<ExactInt>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^deg`
    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut coeffs = vec![ExactInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn eval(&self, q: &ExactInt) -> ExactInt {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactInt::zero(), |acc, c| acc * q + c)
    }

    /// Exact division; fails unless `divisor` divides `self` in `Z[q]`.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let dd = divisor.degree().ok_or_else(|| GrowthError::InexactDivision {
            dividend: self.to_string(),
            divisor: "0".into(),
        })?;
        let inexact = || GrowthError::InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let Some(nd) = self.degree() else {
            return Ok(QPoly::zero());
        };
        if nd < dd {
            return Err(inexact());
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let (c, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return Err(inexact());
            }
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(inexact());
        }
        Ok(QPoly::new(quot))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (deg, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{deg}")?,
                (_, false) => write!(f, "{mag}q^{deg}")?,
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                a + rhs.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        QPoly::new(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                a - rhs.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        QPoly::new(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![ExactInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }
}

/// `q^j - 1`
fn q_power_minus_one(j: usize) -> QPoly {
    &QPoly::monomial(1, j) - &QPoly::one()
}

/// Gaussian binomial `[a b]_q`, computed as the ratio
/// `prod (q^(a-i) - 1) / prod (q^(i+1) - 1)` with exact polynomial division.
pub fn q_binomial(a: usize, b: i64) -> QPoly {
    if b < 0 || b as usize > a {
        return QPoly::zero();
    }
    let b = b as usize;
    let num = (0..b).fold(QPoly::one(), |acc, i| &acc * &q_power_minus_one(a - i));
    let den = (0..b).fold(QPoly::one(), |acc, i| &acc * &q_power_minus_one(i + 1));
    num.div_exact(&den)
        .expect("q-binomial ratio divides exactly")
}

/// Number of invertible symmetric `k x k` matrices over `F_q`, as the
/// polynomial `q^C(k+1,2) * prod_{odd i <= k} (1 - q^-i)`.
pub fn sym_invertible_count(k: usize) -> QPoly {
    let odd_sum: usize = (1..=k).step_by(2).sum();
    let shift = k * (k + 1) / 2 - odd_sum;
    (1..=k)
        .step_by(2)
        .fold(QPoly::monomial(1, shift), |acc, i| &acc * &q_power_minus_one(i))
}

/// The cellular triple sum for `b_n` in `Rep(GL_t(F_q))`.
pub fn gl_bn_sum(n: usize) -> QPoly {
    let mut total = QPoly::zero();
    for k in 0..=n {
        let mut bottom = QPoly::zero();
        for l in k..=n {
            bottom = &bottom + &(&q_binomial(n, l as i64) * &q_binomial(l, k as i64));
        }
        total = &total + &(&bottom * &sym_invertible_count(k));
    }
    total
}

/// `prod_{k=1}^n (q^k + 1)`
pub fn gl_bn_product(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, k| {
        &acc * &(&QPoly::monomial(1, k) + &QPoly::one())
    })
}

/// `prod_{k=1}^n (q^k + 1)` at an integer `q >= 2`.
pub fn gl_bn_value(q: u64, n: usize) -> ExactInt {
    let q = ExactInt::from(q);
    let mut power = ExactInt::one();
    let mut acc = ExactInt::one();
    for _ in 1..=n {
        power *= &q;
        acc *= &power + 1u32;
    }
    acc
}

/// `c(q) = prod_{k>=1} (1 + q^-k)`, stopping once the remaining tail
/// `prod_{k>N} (1 + q^-k) <= exp(q^-N / (q - 1))` is within `rel_tol`.
/// The partial product underestimates `c` by at most that factor.
pub fn q_pochhammer_constant(q: u64, rel_tol: f64) -> Result<f64> {
    if q < 2 {
        return Err(GrowthError::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    if !(rel_tol > 0.0) {
        return Err(GrowthError::InvalidParameter(format!(
            "rel_tol must be positive, got {rel_tol}"
        )));
    }
    let qf = q as f64;
    let mut prod = 1.0f64;
    let mut inv_power = 1.0f64;
    loop {
        inv_power /= qf;
        prod *= 1.0 + inv_power;
        let tail = (inv_power / (qf - 1.0)).exp_m1();
        if tail <= rel_tol || inv_power == 0.0 {
            return Ok(prod);
        }
    }
}
