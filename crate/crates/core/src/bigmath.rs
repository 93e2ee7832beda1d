//! Exact integer arithmetic and the combinatorial number tables used by every
//! counting formula.
//!
//! Sequences that are consumed repeatedly (factorials, involution numbers,
//! perfect matchings, the Stirling triangle) are memoized per process and grow
//! on demand. The [`reference`] module recomputes the same values without any
//! memo so that the cached path can be checked against it.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GrowthError, Result};

/// Unbounded signed integer. Every exact count lives here.
pub type ExactInt = BigInt;

/// Rational in lowest terms with a positive denominator.
pub type ExactRat = BigRational;

/// Rows of the Stirling triangle kept in memory; larger rows are rebuilt by
/// rolling a single row forward.
const STIRLING_MEMO_ROWS: usize = 256;

/// Exact quotient `a / b`; fails when `b` does not divide `a`.
pub fn div_exact(a: &ExactInt, b: &ExactInt) -> Result<ExactInt> {
    if b.is_zero() {
        return Err(GrowthError::InexactDivision {
            dividend: a.to_string(),
            divisor: "0".into(),
        });
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(GrowthError::InexactDivision {
            dividend: a.to_string(),
            divisor: b.to_string(),
        });
    }
    Ok(q)
}

/// A sequence memo that extends itself with `step(prefix, n)`.
struct SeqMemo {
    values: RwLock<Vec<ExactInt>>,
    step: fn(&[ExactInt], usize) -> ExactInt,
}

impl SeqMemo {
    fn new(seed: Vec<ExactInt>, step: fn(&[ExactInt], usize) -> ExactInt) -> Self {
        Self {
            values: RwLock::new(seed),
            step,
        }
    }

    fn get(&self, n: usize) -> ExactInt {
        {
            let values = self.values.read().expect("memo lock poisoned");
            if let Some(v) = values.get(n) {
                return v.clone();
            }
        }
        let mut values = self.values.write().expect("memo lock poisoned");
        while values.len() <= n {
            let next = (self.step)(&values, values.len());
            values.push(next);
        }
        values[n].clone()
    }

    /// Runs `f` on the prefix `0..=n`, extending as needed.
    fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[ExactInt]) -> R) -> R {
        self.get(n);
        let values = self.values.read().expect("memo lock poisoned");
        f(&values[..=n])
    }
}

fn factorial_memo() -> &'static SeqMemo {
    static MEMO: OnceLock<SeqMemo> = OnceLock::new();
    MEMO.get_or_init(|| SeqMemo::new(vec![ExactInt::one()], |prev, n| &prev[n - 1] * n))
}

fn involution_memo() -> &'static SeqMemo {
    static MEMO: OnceLock<SeqMemo> = OnceLock::new();
    MEMO.get_or_init(|| {
        SeqMemo::new(vec![ExactInt::one(), ExactInt::one()], |prev, n| {
            &prev[n - 1] + &prev[n - 2] * (n - 1)
        })
    })
}

fn matching_memo() -> &'static SeqMemo {
    static MEMO: OnceLock<SeqMemo> = OnceLock::new();
    MEMO.get_or_init(|| {
        SeqMemo::new(vec![ExactInt::one(), ExactInt::zero()], |prev, n| {
            &prev[n - 2] * (n - 1)
        })
    })
}

fn stirling_memo() -> &'static RwLock<Vec<Vec<ExactInt>>> {
    static MEMO: OnceLock<RwLock<Vec<Vec<ExactInt>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![vec![ExactInt::one()]]))
}

pub fn factorial(n: usize) -> ExactInt {
    factorial_memo().get(n)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n as u64 {
        return ExactInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = ExactInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// The full row `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<ExactInt> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(ExactInt::one());
    for k in 1..=n {
        let next = &row[k - 1] * (n - k + 1) / k;
        row.push(next);
    }
    row
}

/// Advances a Stirling row `S(n-1, .)` to `S(n, .)` in place.
fn roll_stirling_row(row: &mut Vec<ExactInt>) {
    let n = row.len();
    row.push(ExactInt::zero());
    for i in (1..=n).rev() {
        let (lo, hi) = row.split_at_mut(i);
        hi[0] *= i;
        hi[0] += &lo[i - 1];
    }
    row[0] = ExactInt::zero();
}

/// The row `S(n, 0..=n)` of Stirling numbers of the second kind.
pub fn stirling2_row(n: usize) -> Vec<ExactInt> {
    let memo = stirling_memo();
    {
        let rows = memo.read().expect("memo lock poisoned");
        if let Some(row) = rows.get(n) {
            return row.clone();
        }
    }
    if n < STIRLING_MEMO_ROWS {
        let mut rows = memo.write().expect("memo lock poisoned");
        while rows.len() <= n {
            let mut next = rows.last().expect("seeded").clone();
            roll_stirling_row(&mut next);
            rows.push(next);
        }
        return rows[n].clone();
    }
    let mut row = stirling2_row(STIRLING_MEMO_ROWS - 1);
    for _ in STIRLING_MEMO_ROWS..=n {
        roll_stirling_row(&mut row);
    }
    row
}

/// Number of partitions of an `n`-set into `i` nonempty blocks.
pub fn stirling2(n: usize, i: usize) -> ExactInt {
    if i > n {
        return ExactInt::zero();
    }
    if n < STIRLING_MEMO_ROWS {
        let rows = stirling_memo().read().expect("memo lock poisoned");
        if let Some(row) = rows.get(n) {
            return row[i].clone();
        }
    }
    stirling2_row(n).swap_remove(i)
}

pub fn bell(n: usize) -> ExactInt {
    stirling2_row(n).iter().sum()
}

/// Bessel number `m! / (i! (m-2i)! 2^i)`: partial matchings of an `m`-set
/// with exactly `i` pairs. Zero unless `2i <= m`.
pub fn bessel(m: usize, i: usize) -> ExactInt {
    if 2 * i > m {
        return ExactInt::zero();
    }
    let den = factorial(i) * factorial(m - 2 * i) * (ExactInt::one() << i);
    div_exact(&factorial(m), &den).expect("Bessel numbers are integral")
}

/// Involution numbers `cd(n)`: the sum of dimensions of the simple
/// representations of the symmetric group on `n` letters.
pub fn involutions_cd(n: usize) -> ExactInt {
    involution_memo().get(n)
}

/// Runs `f` on `cd(0..=n)` without cloning the whole table.
pub fn with_involutions<R>(n: usize, f: impl FnOnce(&[ExactInt]) -> R) -> R {
    involution_memo().with_prefix(n, f)
}

/// `(j-1)!!` for even `j`, zero for odd `j`.
pub fn perfect_matchings(j: usize) -> ExactInt {
    matching_memo().get(j)
}

pub fn with_perfect_matchings<R>(n: usize, f: impl FnOnce(&[ExactInt]) -> R) -> R {
    matching_memo().with_prefix(n, f)
}

/// Natural log of a positive exact integer, taken from its bit length and a
/// 64-bit leading mantissa. Deterministic for a given value.
pub fn ln_exact(x: &ExactInt) -> f64 {
    assert!(x.is_positive(), "ln_exact needs a positive argument");
    let bits = x.bits();
    if bits <= 1000 {
        let (_, digits) = x.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    let top: ExactInt = x >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Memo-free recomputation of the cached tables.
pub mod reference {
    use super::*;

    pub fn stirling2(n: usize, i: usize) -> ExactInt {
        let mut row = vec![ExactInt::one()];
        for m in 1..=n {
            let mut next = vec![ExactInt::zero(); m + 1];
            for j in 1..=m {
                let stay = row.get(j).cloned().unwrap_or_default() * j;
                next[j] = stay + &row[j - 1];
            }
            row = next;
        }
        row.get(i).cloned().unwrap_or_default()
    }

    pub fn involutions_cd(n: usize) -> ExactInt {
        let (mut a, mut b) = (ExactInt::one(), ExactInt::one());
        for m in 2..=n {
            let c = &b + &a * (m - 1);
            a = b;
            b = c;
        }
        if n == 0 {
            a
        } else {
            b
        }
    }

    pub fn perfect_matchings(j: usize) -> ExactInt {
        if j % 2 == 1 {
            return ExactInt::zero();
        }
        (1..j).step_by(2).fold(ExactInt::one(), |acc, f| acc * f)
    }

    pub fn factorial(n: usize) -> ExactInt {
        (1..=n).fold(ExactInt::one(), |acc, f| acc * f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    /// Pascal triangle built by additions only.
    fn pascal(n: usize) -> Vec<Vec<ExactInt>> {
        let mut rows = vec![vec![int(1)]];
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = vec![int(1); m + 1];
            for k in 1..m {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(3, -1), int(0));
        assert_eq!(binomial(3, 4), int(0));
        let tri = pascal(30);
        assert_eq!(tri[10][5], int(252));
        for n in 0..=30 {
            assert_eq!(binomial_row(n), tri[n]);
            for k in 0..=n {
                assert_eq!(binomial(n, k as i64), tri[n][k]);
            }
        }
    }

    /// Set partitions of `0..n` as restricted growth strings.
    fn count_partitions_by_blocks(n: usize) -> Vec<u64> {
        fn go(pos: usize, n: usize, blocks: usize, out: &mut [u64]) {
            if pos == n {
                out[blocks] += 1;
                return;
            }
            for b in 0..=blocks {
                go(pos + 1, n, blocks.max(b + 1), out);
            }
        }
        let mut out = vec![0; n + 1];
        go(0, n, 0, &mut out);
        out
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling2(5, 0), int(0));
        assert_eq!(stirling2(3, 5), int(0));
        for n in 0..40 {
            assert_eq!(stirling2(n, n), int(1));
        }
        for n in 0..=9 {
            let counts = count_partitions_by_blocks(n);
            for (i, c) in counts.iter().enumerate() {
                assert_eq!(stirling2(n, i), int(*c as i64), "S({n},{i})");
            }
        }
    }

    #[test]
    fn stirling_recurrence_holds() {
        for n in 1..=60 {
            for i in 1..=n {
                let rhs = stirling2(n - 1, i) * i + stirling2(n - 1, i - 1);
                assert_eq!(stirling2(n, i), rhs);
            }
        }
    }

    #[test]
    fn stirling_memo_matches_reference() {
        for &(n, i) in &[(10, 3), (57, 20), (255, 100), (256, 100), (300, 7)] {
            assert_eq!(stirling2(n, i), reference::stirling2(n, i), "S({n},{i})");
        }
    }

    #[test]
    fn bell_values() {
        assert_eq!(bell(0), int(1));
        assert_eq!(bell(3), int(5));
        for n in 0..=9 {
            let total: u64 = count_partitions_by_blocks(n).iter().sum();
            assert_eq!(bell(n), int(total as i64));
        }
    }

    /// Partial matchings of an `m`-set by number of pairs.
    fn count_partial_matchings(m: usize) -> Vec<u64> {
        fn go(free: u32, pairs: usize, out: &mut [u64]) {
            if free == 0 {
                out[pairs] += 1;
                return;
            }
            let first = free.trailing_zeros();
            let rest = free & !(1 << first);
            go(rest, pairs, out);
            let mut others = rest;
            while others != 0 {
                let j = others.trailing_zeros();
                others &= !(1 << j);
                go(rest & !(1 << j), pairs + 1, out);
            }
        }
        let mut out = vec![0; m / 2 + 1];
        go(((1u64 << m) - 1) as u32, 0, &mut out);
        out
    }

    #[test]
    fn bessel_values() {
        assert_eq!(bessel(6, 0), int(1));
        assert_eq!(bessel(2, 1), int(1));
        assert_eq!(bessel(4, 2), int(3));
        assert_eq!(bessel(3, 2), int(0));
        for m in 0..=10 {
            for (i, c) in count_partial_matchings(m).iter().enumerate() {
                assert_eq!(bessel(m, i), int(*c as i64), "Bes({m},{i})");
            }
        }
    }

    #[test]
    fn involutions_values() {
        assert_eq!(involutions_cd(0), int(1));
        assert_eq!(involutions_cd(1), int(1));
        assert_eq!(involutions_cd(2), int(2));
        assert_eq!(involutions_cd(4), int(10));
        for n in 0..=60 {
            let sum: ExactInt = (0..=n / 2).map(|i| bessel(n, i)).sum();
            assert_eq!(involutions_cd(n), sum);
            assert_eq!(involutions_cd(n), reference::involutions_cd(n));
        }
    }

    #[test]
    fn perfect_matching_values() {
        assert_eq!(perfect_matchings(0), int(1));
        assert_eq!(perfect_matchings(3), int(0));
        assert_eq!(perfect_matchings(4), int(3));
        for j in 0..=10 {
            let full = count_partial_matchings(j);
            let expect = if j % 2 == 0 { full[j / 2] } else { 0 };
            assert_eq!(perfect_matchings(j), int(expect as i64));
            assert_eq!(perfect_matchings(j), reference::perfect_matchings(j));
        }
    }

    #[test]
    fn div_exact_rejects_remainders() {
        assert_eq!(div_exact(&int(12), &int(4)).unwrap(), int(3));
        assert!(div_exact(&int(13), &int(4)).is_err());
        assert!(div_exact(&int(13), &int(0)).is_err());
        assert_eq!(div_exact(&int(-12), &int(4)).unwrap(), int(-3));
    }

    #[test]
    fn ln_exact_is_accurate_and_stable() {
        assert!((ln_exact(&int(1)) - 0.0).abs() < 1e-15);
        let f = reference::factorial(3000);
        let direct: f64 = (1..=3000).map(|k| (k as f64).ln()).sum();
        assert!((ln_exact(&f) - direct).abs() / direct < 1e-12);
        assert_eq!(ln_exact(&f).to_bits(), ln_exact(&f.clone()).to_bits());
    }

    #[test]
    fn memo_is_safe_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|t| std::thread::spawn(move || involutions_cd(200 + 10 * t)))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), reference::involutions_cd(200 + 10 * t));
        }
    }
}
