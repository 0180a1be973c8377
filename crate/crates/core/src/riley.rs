//! The Riley polynomial `R(x, y)` of a double twist knot, whose zero
//! locus carries the nonabelian `SL₂` representations of the knot group.
//!
//! With `G = S_m(y)`, `H = S_{m-1}(y)` and the normal form `C(k, -2p)`,
//!
//! ```text
//! R(x, y) = S_p(t) - z S_{p-1}(t)
//! t = tr ρ(w) = 2 + (y+2-x)(y-2) H²             (k even)
//!             = 2 - (y+2-x)(G - H)²             (k odd)
//! z          = 1 + (y+2-x) H (G - H)            (k even)
//!             = 1 - (y+2-x) G (G - H)           (k odd)
//! ```
//!
//! Here `x = (tr ρ(a))²` and `y` is the other trace coordinate. For
//! `C(2m, 2n)` the exponent is `p = -n` and `R` is evaluated in the
//! rewritten form `S_n(t) - (t - z) S_{n-1}(t)`, with
//! `t - z = 1 - (y+2-x) H (H - S_{m-2}(y))` computed from its own
//! formula rather than as a difference.
//!
//! For fixed `y` in the admissible range, `R(·, y)` is a degree-`n`
//! polynomial in `x` with exactly `n` simple real roots; `rootcurve`
//! localises them. `t` and `z` are always recomputed from `(x, y)`
//! directly when identities are being verified — never from cached
//! polynomial coefficients, which would cancel badly for large `y`.

use crate::chebyshev;
use crate::error::Error;
use crate::knot::{Family, KnotSpec};
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// One evaluation of the Riley polynomial with its trace coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RileyPoint {
    /// Squared meridian trace.
    pub x: f64,
    /// Trace coordinate `y`.
    pub y: f64,
    /// `t = tr ρ(w)`.
    pub t: f64,
    /// The auxiliary quantity `z`.
    pub z: f64,
    /// `R(x, y)`.
    pub r: f64,
}

/// `G = S_m(y)` and `H = S_{m-1}(y)` for the knot's `m`.
pub(crate) fn gh(spec: &KnotSpec, y: f64) -> (f64, f64) {
    let p = chebyshev::pair(spec.m, y);
    (p.sj, p.sjm1)
}

/// `G - H = S_m(y) - S_{m-1}(y)` in product form (full relative accuracy
/// near the odd-family left endpoint, where the direct difference
/// cancels).
pub(crate) fn g_minus_h(spec: &KnotSpec, y: f64) -> f64 {
    chebyshev::diff_eval(spec.m, y).expect("m >= 1")
}

/// `H - F = S_{m-1}(y) - S_{m-2}(y)`, in product form (`= 1` when `m = 1`).
pub(crate) fn h_minus_f(spec: &KnotSpec, y: f64) -> f64 {
    if spec.m == 1 {
        1.0
    } else {
        chebyshev::diff_eval(spec.m - 1, y).expect("m >= 2")
    }
}

/// `t = tr ρ(w)` as a function of `(x, y)`.
pub fn trace_t(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            let (_, h) = gh(spec, y);
            2.0 + (y + 2.0 - x) * (y - 2.0) * h * h
        }
        Family::OddMinus => {
            let d = g_minus_h(spec, y);
            2.0 - (y + 2.0 - x) * d * d
        }
    }
}

/// The auxiliary quantity `z` as a function of `(x, y)`.
pub fn z_val(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    let d = g_minus_h(spec, y);
    match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            let (_, h) = gh(spec, y);
            1.0 + (y + 2.0 - x) * h * d
        }
        Family::OddMinus => {
            let (g, _) = gh(spec, y);
            1.0 - (y + 2.0 - x) * g * d
        }
    }
}

/// `t - z` for the even families, from its own formula
/// `1 - (y+2-x) H (H - S_{m-2}(y))`.
pub(crate) fn t_minus_z_even(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    let p = chebyshev::pair(spec.m - 1, y);
    let (h, f) = (p.sj, p.sjm1);
    1.0 - (y + 2.0 - x) * h * (h - f)
}

/// Evaluate `R(x, y)`.
pub fn eval(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    let t = trace_t(spec, x, y);
    let n = spec.n;
    match spec.family {
        Family::EvenPlus => {
            let tz = t_minus_z_even(spec, x, y);
            let s = chebyshev::pair(n, t);
            s.sj - tz * s.sjm1
        }
        Family::EvenMinus | Family::OddMinus => {
            let z = z_val(spec, x, y);
            let s = chebyshev::pair(n, t);
            s.sj - z * s.sjm1
        }
    }
}

/// Evaluate `R`, `t` and `z` together.
pub fn point(spec: &KnotSpec, x: f64, y: f64) -> RileyPoint {
    RileyPoint { x, y, t: trace_t(spec, x, y), z: z_val(spec, x, y), r: eval(spec, x, y) }
}

/// `∂R/∂x` at fixed `y`, used for the Newton polish after bisection.
///
/// `R = S_n(t) - m(x) S_{n-1}(t)` where both `t` and the multiplier
/// `m` (either `z` or `t - z`) are linear in `x`.
pub fn deriv_x(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    let t = trace_t(spec, x, y);
    let (multiplier, dm, dt) = match spec.family {
        Family::EvenPlus => {
            let (_, h) = gh(spec, y);
            let p = chebyshev::pair(spec.m - 1, y);
            (t_minus_z_even(spec, x, y), p.sj * (p.sj - p.sjm1), -(y - 2.0) * h * h)
        }
        Family::EvenMinus => {
            let (_, h) = gh(spec, y);
            let d = g_minus_h(spec, y);
            (z_val(spec, x, y), -h * d, -(y - 2.0) * h * h)
        }
        Family::OddMinus => {
            let (g, _) = gh(spec, y);
            let d = g_minus_h(spec, y);
            (z_val(spec, x, y), g * d, d * d)
        }
    };
    let s = chebyshev::pair(spec.n, t);
    let dsn = chebyshev::deriv(spec.n, t);
    let dsnm1 = chebyshev::deriv(spec.n - 1, t);
    dsn * dt - dm * s.sjm1 - multiplier * dsnm1 * dt
}

/// Coefficients of `R(·, y)` as a univariate polynomial in `x`,
/// ascending degree, length `n + 1`.
///
/// Fails when the leading coefficient vanishes, reporting which factor
/// collapsed (only possible at degenerate `y` outside the admissible
/// ranges).
pub fn coeffs(spec: &KnotSpec, y: f64) -> Result<Vec<f64>> {
    let (g, h) = gh(spec, y);
    let d = g_minus_h(spec, y);
    let n = spec.n as usize;
    // t(x) = t0 + t1 x and the multiplier line m(x) = m0 + m1 x with
    // R = S_n(t) - m(x) S_{n-1}(t)
    let (t0, t1, m0, m1) = match spec.family {
        Family::EvenPlus => {
            let p = chebyshev::pair(spec.m - 1, y);
            let hf = p.sj * (p.sj - p.sjm1);
            (
                2.0 + (y + 2.0) * (y - 2.0) * h * h,
                -(y - 2.0) * h * h,
                1.0 - (y + 2.0) * hf,
                hf,
            )
        }
        Family::EvenMinus => (
            2.0 + (y + 2.0) * (y - 2.0) * h * h,
            -(y - 2.0) * h * h,
            1.0 + (y + 2.0) * h * d,
            -h * d,
        ),
        Family::OddMinus => (
            2.0 - (y + 2.0) * d * d,
            d * d,
            1.0 - (y + 2.0) * g * d,
            g * d,
        ),
    };
    // S_j(t(x)) as polynomials in x via the recurrence
    let mut prev: Vec<f64> = vec![0.0]; // S_{-1}
    let mut cur: Vec<f64> = vec![1.0]; // S_0
    for _ in 0..spec.n {
        let next = sub(&mul_linear(&cur, t0, t1), &prev);
        prev = cur;
        cur = next;
    }
    let r = sub(&cur, &mul_linear(&prev, m0, m1));
    let mut r = r;
    r.resize(n + 1, 0.0);
    if r[n] == 0.0 || !r[n].is_finite() {
        let factor = if h == 0.0 {
            "S_{m-1}(y)"
        } else if d == 0.0 {
            "S_m(y) - S_{m-1}(y)"
        } else if y == 2.0 {
            "y - 2"
        } else {
            "leading coefficient"
        };
        return Err(Error::DegenerateLeadingCoeff { factor, y });
    }
    Ok(r)
}

/// Horner evaluation of a coefficient vector (ascending degree).
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn mul_linear(p: &[f64], c0: f64, c1: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (i, &a) in p.iter().enumerate() {
        out[i] += c0 * a;
        out[i + 1] += c1 * a;
    }
    out
}

fn sub(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = p.to_vec();
    if out.len() < q.len() {
        out.resize(q.len(), 0.0);
    }
    for (i, &b) in q.iter().enumerate() {
        out[i] -= b;
    }
    out
}
