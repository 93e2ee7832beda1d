//! Truncated formal power series with exact rational coefficients.
//!
//! This is the exponential-generating-function path: a family's EGF is built
//! here and `n! [x^n]` is extracted exactly. A coefficient that fails to be an
//! integer after multiplying by `n!` is reported as an error instead of being
//! rounded.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigmath::{factorial, ExactInt, ExactRat};
use crate::error::{GrowthError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<ExactRat>,
}

impl PowerSeries {
    /// Series `sum coeffs[i] x^i + O(x^(order+1))`. Extra coefficients are
    /// dropped, missing ones are zero.
    pub fn new(mut coeffs: Vec<ExactRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRat::zero());
        Self { coeffs }
    }

    pub fn from_ints<I: Into<ExactInt>>(coeffs: impl IntoIterator<Item = I>, order: usize) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(coeffs, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![ExactRat::one()], order)
    }

    /// The EGF of `x_n`, i.e. the series with coefficients `x_n / n!`.
    pub fn from_egf_values(values: &[ExactInt], order: usize) -> Self {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(n, v)| BigRational::new(v.clone(), factorial(n)))
            .collect();
        Self::new(coeffs, order)
    }

    /// `exp(a x)` truncated at `order`.
    pub fn exp_linear(a: &ExactRat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(ExactRat::one());
        for n in 1..=order {
            let next = &coeffs[n - 1] * a / ExactRat::from_integer(ExactInt::from(n));
            coeffs.push(next);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &ExactRat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal derivative; the order drops by one (a constant stays a
    /// constant of order zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * ExactRat::from_integer(ExactInt::from(i + 1)))
            .collect::<Vec<_>>();
        let order = coeffs.len() - 1;
        Self::new(coeffs, order)
    }

    /// `exp(f)` for `f` with zero constant term, via `g' = f' g`, that is
    /// `n g_n = sum_{j=1}^{n} j f_j g_{n-j}`.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(GrowthError::NonzeroConstantTerm(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let weighted: Vec<ExactRat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * ExactRat::from_integer(ExactInt::from(j)))
            .collect();
        let mut g: Vec<ExactRat> = Vec::with_capacity(order + 1);
        g.push(ExactRat::one());
        for n in 1..=order {
            let mut acc = ExactRat::zero();
            for j in 1..=n {
                if !weighted[j].is_zero() {
                    acc += &weighted[j] * &g[n - j];
                }
            }
            g.push(acc / ExactRat::from_integer(ExactInt::from(n)));
        }
        Ok(Self { coeffs: g })
    }

    /// `n! [x^n] f` for `n = 0..=n_max`, all of which must be integers.
    pub fn egf_coefficients(&self, n_max: usize) -> Result<Vec<ExactInt>> {
        if n_max > self.order() {
            return Err(GrowthError::OrderTooSmall {
                requested: n_max,
                order: self.order(),
            });
        }
        (0..=n_max)
            .map(|n| {
                let scaled = &self.coeffs[n] * ExactRat::from_integer(factorial(n));
                if scaled.is_integer() {
                    Ok(scaled.to_integer())
                } else {
                    Err(GrowthError::NonIntegerCoefficient {
                        index: n,
                        value: scaled.to_string(),
                    })
                }
            })
            .collect()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect();
        PowerSeries { coeffs }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self + &(-rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![ExactRat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> ExactRat {
        ExactRat::new(n.into(), d.into())
    }

    fn poly(c: &[i64], order: usize) -> PowerSeries {
        PowerSeries::from_ints(c.iter().copied(), order)
    }

    #[test]
    fn products_of_small_polynomials() {
        let x = poly(&[0, 1], 5);
        assert_eq!(&x * &x, poly(&[0, 0, 1], 5));
        let p = &poly(&[1, 1], 5) * &poly(&[1, -1], 5);
        assert_eq!(p, poly(&[1, 0, -1], 5));
    }

    #[test]
    fn truncation_takes_min_order() {
        let a = poly(&[1, 1, 1, 1], 3);
        let b = poly(&[1, 1], 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!(&a * &b, poly(&[1, 2], 1));
    }

    #[test]
    fn exp_of_zero_and_x() {
        let e0 = PowerSeries::zero(6).exp_series().unwrap();
        assert_eq!(e0, PowerSeries::one(6));
        let ex = poly(&[0, 1], 12).exp_series().unwrap();
        assert_eq!(ex.egf_coefficients(12).unwrap(), vec![ExactInt::one(); 13]);
        assert_eq!(ex, PowerSeries::exp_linear(&rat(1, 1), 12));
    }

    #[test]
    fn exp_x_squared_matches_binomial_theorem() {
        // exp(x)^2 = exp(2x): n![x^n] = sum_k C(n,k) = 2^n.
        let ex = PowerSeries::exp_linear(&rat(1, 1), 20);
        let sq = &ex * &ex;
        let got = sq.egf_coefficients(20).unwrap();
        for (n, v) in got.iter().enumerate() {
            let by_binomial: ExactInt = crate::bigmath::binomial_row(n).iter().sum();
            assert_eq!(*v, by_binomial);
        }
        assert_eq!(sq, PowerSeries::exp_linear(&rat(2, 1), 20));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let err = poly(&[1, 1], 4).exp_series().unwrap_err();
        assert!(matches!(err, GrowthError::NonzeroConstantTerm(_)));
    }

    #[test]
    fn egf_extraction_errors() {
        let f = PowerSeries::new(vec![rat(1, 1), rat(1, 3)], 3);
        assert!(matches!(
            f.egf_coefficients(3),
            Err(GrowthError::NonIntegerCoefficient { index: 1, .. })
        ));
        assert!(matches!(
            f.egf_coefficients(4),
            Err(GrowthError::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn involution_egf() {
        // exp(x^2/2 + x) generates cd(n).
        let f = PowerSeries::new(vec![rat(0, 1), rat(1, 1), rat(1, 2)], 30);
        let cd = f.exp_series().unwrap().egf_coefficients(30).unwrap();
        for (n, v) in cd.iter().enumerate() {
            assert_eq!(*v, crate::bigmath::involutions_cd(n));
        }
    }

    #[test]
    fn derivative_basics() {
        let p = poly(&[5, 3, 2], 2);
        assert_eq!(p.derivative(), poly(&[3, 4], 1));
        assert_eq!(poly(&[7], 0).derivative(), PowerSeries::zero(0));
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-6i64..=6, 1i64..=4), order).prop_map(move |cs| {
            let mut coeffs = vec![ExactRat::zero()];
            coeffs.extend(cs.into_iter().map(|(n, d)| rat(n, d)));
            PowerSeries::new(coeffs, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exp_satisfies_its_differential_equation(f in series_strategy(50)) {
            let g = f.exp_series().unwrap();
            let lhs = g.derivative();
            let rhs = &f.derivative() * &g;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exp_turns_sums_into_products(f in series_strategy(20), g in series_strategy(20)) {
            let lhs = (&f + &g).exp_series().unwrap();
            let rhs = &f.exp_series().unwrap() * &g.exp_series().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
