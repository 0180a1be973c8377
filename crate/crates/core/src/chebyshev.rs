//! The polynomials `S_j(v)` defined by the recurrence
//! `S_j(v) = v S_{j-1}(v) - S_{j-2}(v)` with `S_0 = 1`, `S_1 = v`
//! (second-kind Chebyshev type), for all integer indices `j`.
//!
//! Facts used throughout the crate:
//!
//! - mirror identity: `S_j(v) = -S_{-j-2}(v)`, so `S_{-1} = 0`;
//! - norm identity: `S_j² - v S_j S_{j-1} + S_{j-1}² = 1` for every `j`;
//! - closed form: `S_j(v) = (s^{j+1} - s^{-(j+1)})/(s - s^{-1})` where
//!   `v = s + s^{-1}`, `v ≠ ±2`;
//! - `S_n(v) = ∏_{j=1}^n (v - 2cos(jπ/(n+1)))`;
//! - `S_n(v) - S_{n-1}(v) = ∏_{j=1}^n (v - 2cos((2j-1)π/(2n+1)))`.
//!
//! Roots are always produced analytically from the cosine formulas, never
//! by numeric root finding, so callers get exact bracketing endpoints.

use crate::error::Error;
use crate::fmath;
use crate::Result;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Above this index, evaluation at `|v| > 2` goes through the closed form
/// in the log domain instead of the forward recurrence, so that huge
/// arguments degrade to `±inf` gracefully instead of silently overflowing
/// partway through the iteration.
const CLOSED_FORM_INDEX: i64 = 60;

/// A value pair `(S_j(v), S_{j-1}(v))` at one argument.
///
/// Most formulas in the crate consume consecutive values, e.g.
/// `G = S_m(y)` together with `H = S_{m-1}(y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebPair {
    /// Index `j`.
    pub j: i64,
    /// Argument `v`.
    pub v: f64,
    /// `S_j(v)`.
    pub sj: f64,
    /// `S_{j-1}(v)`.
    pub sjm1: f64,
}

/// Evaluate `S_j(v)` for any integer `j` and real `v`.
///
/// Negative indices are folded through `S_j = -S_{-j-2}`; `S_{-1} = 0`.
pub fn eval(j: i64, v: f64) -> f64 {
    if j < -1 {
        return -eval(-j - 2, v);
    }
    if j == -1 {
        return 0.0;
    }
    if v.abs() > 2.0 && j > CLOSED_FORM_INDEX {
        return closed_form(j, v);
    }
    let (mut prev, mut cur) = (0.0, 1.0); // S_{-1}, S_0
    for _ in 0..j {
        (prev, cur) = (cur, v * cur - prev);
    }
    cur
}

/// Evaluate the pair `(S_j(v), S_{j-1}(v))` in one pass.
pub fn pair(j: i64, v: f64) -> ChebPair {
    if j >= 0 && !(v.abs() > 2.0 && j > CLOSED_FORM_INDEX) {
        let (mut prev, mut cur) = (0.0, 1.0);
        for _ in 0..j {
            (prev, cur) = (cur, v * cur - prev);
        }
        ChebPair { j, v, sj: cur, sjm1: prev }
    } else {
        ChebPair { j, v, sj: eval(j, v), sjm1: eval(j - 1, v) }
    }
}

/// Derivative `dS_j/dv`, by differentiating the recurrence.
pub fn deriv(j: i64, v: f64) -> f64 {
    if j < -1 {
        return -deriv(-j - 2, v);
    }
    if j <= 0 {
        return 0.0;
    }
    let (mut s_prev, mut s_cur) = (1.0, v); // S_0, S_1
    let (mut d_prev, mut d_cur) = (0.0, 1.0);
    for _ in 1..j {
        let s_next = v * s_cur - s_prev;
        let d_next = s_cur + v * d_cur - d_prev;
        (s_prev, s_cur) = (s_cur, s_next);
        (d_prev, d_cur) = (d_cur, d_next);
    }
    d_cur
}

/// Evaluate `S_j` at `v = xi + 1/xi` through the closed form, `xi > 1`.
///
/// Agrees with [`eval`] at moderate arguments; for large `xi` the
/// computation runs in the log domain and only overflows to `inf` when
/// the value itself is not representable.
pub fn eval_stable(j: i64, xi: f64) -> Result<f64> {
    if !(xi > 1.0) {
        return Err(Error::XiOutOfRange { xi });
    }
    if j < -1 {
        return Ok(-eval_stable(-j - 2, xi)?);
    }
    if j == -1 {
        return Ok(0.0);
    }
    let (sign, log) = log_eval(j, xi);
    Ok(sign * fmath::exp(log))
}

/// `ln S_j(xi + 1/xi)` for `j >= 0`, `xi > 1` (the value is positive).
///
/// `S_j = ξ^j (1 - ξ^{-2j-2}) / (1 - ξ^{-2})`, taken termwise in logs.
pub(crate) fn log_eval(j: i64, xi: f64) -> (f64, f64) {
    debug_assert!(j >= 0 && xi > 1.0);
    let ln_xi = fmath::ln(xi);
    let log = j as f64 * ln_xi + fmath::ln_1p(-fmath::exp(-2.0 * (j + 1) as f64 * ln_xi))
        - fmath::ln_1p(-fmath::exp(-2.0 * ln_xi));
    (1.0, log)
}

fn closed_form(j: i64, v: f64) -> f64 {
    debug_assert!(j >= 0 && v.abs() > 2.0);
    let a = v.abs();
    let xi = 0.5 * (a + fmath::sqrt(a * a - 4.0));
    let (_, log) = log_eval(j, xi);
    // S_j(-v) = (-1)^j S_j(v)
    let sign = if v < 0.0 && j % 2 != 0 { -1.0 } else { 1.0 };
    sign * fmath::exp(log)
}

/// The `n` roots of `S_n`: `2cos(jπ/(n+1))` for `j = 1..n`, descending.
pub fn roots(n: i64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::NonPositiveDegree { n });
    }
    Ok((1..=n)
        .map(|j| 2.0 * fmath::cos(j as f64 * PI / (n + 1) as f64))
        .collect())
}

/// The `n` roots of `S_n - S_{n-1}`: `2cos((2j-1)π/(2n+1))` for
/// `j = 1..n`, descending.
pub fn diff_roots(n: i64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::NonPositiveDegree { n });
    }
    Ok((1..=n)
        .map(|j| 2.0 * fmath::cos((2 * j - 1) as f64 * PI / (2 * n + 1) as f64))
        .collect())
}

/// `S_n(v) - S_{n-1}(v)` evaluated as the product over [`diff_roots`].
///
/// Near the largest root `2cos(π/(2n+1))` the direct difference of two
/// `O(1)` values loses all precision; the product form keeps full
/// relative accuracy there, which the odd-family formulas rely on.
pub fn diff_eval(n: i64, v: f64) -> Result<f64> {
    Ok(diff_roots(n)?.iter().map(|r| v - r).product())
}
