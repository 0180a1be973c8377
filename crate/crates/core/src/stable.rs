//! Large-`y` evaluation through the parametrisation `y = ξ + ξ⁻¹`, `ξ > 1`.
//!
//! Past `y ≈ 10³` the quantities the slope function is made of — the
//! offset of a root from `y + 2`, the gap `M² - G/H`, the longitude
//! eigenvalue — are exponentially small or large in `ξ`, and the direct
//! formulas lose every digit to cancellation. Here each difference is
//! rewritten as an exact product of an explicitly tiny factor and an
//! `O(1)` factor, and everything exponentially large is carried as a
//! logarithm. The identities used (with `G = S_m(y)`, `H = S_{m-1}(y)`,
//! `F = S_{m-2}(y)`, `D = ξ - ξ⁻¹`):
//!
//! ```text
//! G/H + H/G - y           = 1/(GH)                    (norm identity)
//! G - ξH                  = ξ^{-m}
//! (G-H) - ξ(H-F)          = -(ξ-1)²(ξ+1) ξ^{-m-1} / D
//! M² - a                  = 2aδ / (√(A·B) + a - 1/a - δ)
//!     where x - 2 = a + 1/a + δ, A = (a-1)²/a + δ, B = (a+1)²/a + δ
//! ```
//!
//! The last line is the conjugate form of the quadratic for `M²`; it is
//! applied with anchor `a = G/H` (odd principal branch, where
//! `δ = x - 2 - G/H - H/G` is the scaled root coordinate) and with
//! anchor `a = ξ` (all bracketed branches, where `δ = x - 2 - y`).
//!
//! Roots of `R(·, y)` are located in the trace coordinate `t` instead of
//! `x`: the substitution `t = 2 ± (x - y - 2)·(slope)` is exact, the
//! bracketed branches live on `O(1)` `t`-intervals where the polynomial
//! is perfectly conditioned, and the odd principal branch is solved in
//! the scaled variable `δ̂ = ξ^{2m+2n-2}(x - 2 - G/H - H/G)`, which
//! tends to `1` as `y → ∞`.

use crate::chebyshev;
use crate::error::Error;
use crate::fmath;
use crate::knot::{Family, KnotSpec};
use crate::riley;
use crate::Result;
use core::f64::consts::LN_2;

/// Hand-over point between the direct desk-scale path and this module.
pub(crate) const Y_SWITCH: f64 = 1e3;

/// Shared per-`(spec, y)` quantities, all full relative precision.
pub(crate) struct Ctx {
    pub y: f64,
    pub xi: f64,
    pub ln_xi: f64,
    /// `ξ - ξ⁻¹`.
    pub dd: f64,
    /// `S_m(y)`.
    pub sm: f64,
    /// `S_{m-1}(y)`.
    pub smm1: f64,
    /// `G - H`, product form.
    pub d: f64,
    /// `H - F`, product form.
    pub hf: f64,
    /// `G·H`.
    pub gh: f64,
    /// `G/H`.
    pub ratio: f64,
}

impl Ctx {
    pub(crate) fn new(spec: &KnotSpec, y: f64) -> Result<Ctx> {
        if !(y > 2.0) {
            return Err(Error::YOutOfRange { y, min: 2.0 });
        }
        let xi = 0.5 * (y + fmath::sqrt((y - 2.0) * (y + 2.0)));
        let p = chebyshev::pair(spec.m, y);
        let (sm, smm1) = (p.sj, p.sjm1);
        let gh = sm * smm1;
        if !gh.is_finite() {
            return Err(Error::NumericOverflow { what: "S_m(y) S_{m-1}(y)", y });
        }
        Ok(Ctx {
            y,
            xi,
            ln_xi: fmath::ln(xi),
            dd: xi - 1.0 / xi,
            sm,
            smm1,
            d: riley::g_minus_h(spec, y),
            hf: riley::h_minus_f(spec, y),
            gh,
            ratio: sm / smm1,
        })
    }
}

/// A root of `R(·, y)` produced by the stable path.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StableRoot {
    /// Trace coordinate `t = tr ρ(w)` at the root.
    pub t: f64,
    /// The root itself (may round to exactly `y + 2` in `f64`).
    pub x: f64,
    /// `x - 2 - y` at full relative precision.
    pub w_tilde: f64,
    /// Relative residual of the defining equation at the accepted root.
    pub residual: f64,
    /// For the odd principal branch: `(δ̂, ln δ)` of the scaled solve.
    pub principal: Option<(f64, f64)>,
}

/// Meridian/longitude logarithms at a stable root.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogParts {
    pub log_m: f64,
    pub log_l_abs: f64,
    pub l_negative: bool,
}

/// Locate branch `j` of `R(·, y) = 0` for `y` in the stable regime.
pub(crate) fn solve(spec: &KnotSpec, y: f64, branch: usize) -> Result<StableRoot> {
    let n = spec.n as usize;
    if branch >= n {
        return Err(Error::NoSuchBranch { branch, count: n });
    }
    let ctx = Ctx::new(spec, y)?;
    if spec.family == Family::OddMinus && branch == 0 {
        odd_principal(spec, &ctx)
    } else {
        t_band(spec, &ctx, branch)
    }
}

/// `log M` and `log |L|` at a stable root.
pub(crate) fn logs(spec: &KnotSpec, y: f64, root: &StableRoot) -> Result<LogParts> {
    let ctx = Ctx::new(spec, y)?;
    match root.principal {
        Some((_, ln_delta)) => principal_logs(spec, &ctx, ln_delta),
        None => band_logs(spec, &ctx, root),
    }
}

/// The multiplier line `mult(t)` with `R = S_n(t) - mult(t) S_{n-1}(t)`:
/// `mult(t) = 1 + (t - 2)·κ` with the family's slope `κ`.
fn mult_slope(spec: &KnotSpec, ctx: &Ctx) -> f64 {
    match spec.family {
        Family::EvenPlus => -ctx.hf / ((ctx.y - 2.0) * ctx.smm1),
        Family::EvenMinus => ctx.d / ((ctx.y - 2.0) * ctx.smm1),
        Family::OddMinus => ctx.sm / ctx.d,
    }
}

/// Signed relative residual of `R` at trace coordinate `t`.
///
/// Direct evaluation while `S_n(t)` is representable; for enormous `t`
/// (only reachable while bracketing the `x₀` branch of `C(2m,-2n)`)
/// the sign comes from the closed form in `τ` where `t = τ + τ⁻¹`.
fn eval_t(spec: &KnotSpec, kappa: f64, t: f64) -> f64 {
    let n = spec.n;
    let mult = 1.0 + (t - 2.0) * kappa;
    let direct_cap = fmath::exp(650.0 / n as f64);
    if t.abs() <= direct_cap {
        let s = chebyshev::pair(n, t);
        let raw = s.sj - mult * s.sjm1;
        let scale = s.sj.abs() + (mult * s.sjm1).abs();
        return raw / scale.max(f64::MIN_POSITIVE);
    }
    // sign of τⁿ(τ - mult) + τ⁻ⁿ(mult - τ⁻¹), far from the root here
    let ln_tau = fmath::ln(0.5 * t) + fmath::ln_1p(fmath::sqrt(1.0 - 4.0 / (t * t)));
    let tau = t * 0.5 * (1.0 + fmath::sqrt(1.0 - 4.0 / (t * t)));
    let (s1, a) = (tau - mult >= 0.0, n as f64 * ln_tau + fmath::ln((tau - mult).abs()));
    let (s2, b) =
        (mult - 1.0 / tau >= 0.0, -(n as f64) * ln_tau + fmath::ln((mult - 1.0 / tau).abs()));
    let sign = if s1 == s2 {
        s1
    } else if a >= b {
        s1
    } else {
        s2
    };
    if sign {
        1.0
    } else {
        -1.0
    }
}

fn t_band(spec: &KnotSpec, ctx: &Ctx, branch: usize) -> Result<StableRoot> {
    let n = spec.n;
    let y = ctx.y;
    let kappa = mult_slope(spec, ctx);
    let td = chebyshev::diff_roots(n).expect("n >= 1");
    let f = |t: f64| eval_t(spec, kappa, t);

    let t_root = if branch >= 1 {
        // interior branch: t ∈ (t_{j+1}, t_j)
        bisect_plain(&f, td[branch], td[branch - 1], spec, y, branch)?
    } else {
        match spec.family {
            Family::EvenPlus => bisect_plain(&f, td[0], 2.0, spec, y, 0)?,
            Family::EvenMinus => {
                // x₀ ∈ (0, y+2) maps to t ∈ (2, t_max]; bisect in ln(t-2)
                let t_max_off = (y - 2.0) * (y + 2.0) * ctx.smm1 * ctx.smm1;
                if !t_max_off.is_finite() {
                    return Err(Error::NumericOverflow { what: "t(x = 0)", y });
                }
                let hi = fmath::ln(t_max_off);
                let lo = hi - 700.0;
                let g = |s: f64| f(2.0 + fmath::exp(s));
                if !(g(lo) > 0.0 && g(hi) < 0.0) {
                    return Err(Error::BracketSignCheck { j: 0, y });
                }
                let (mut lo, mut hi) = (lo, hi);
                for _ in 0..240 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                2.0 + fmath::exp(0.5 * (lo + hi))
            }
            Family::OddMinus => unreachable!("principal branch solved separately"),
        }
    };

    // exact inverse of the substitution, slope per family
    let w_tilde = match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            -(t_root - 2.0) / ((y - 2.0) * ctx.smm1 * ctx.smm1)
        }
        Family::OddMinus => (t_root - 2.0) / (ctx.d * ctx.d),
    };
    Ok(StableRoot {
        t: t_root,
        x: y + 2.0 + w_tilde,
        w_tilde,
        residual: f(t_root).abs(),
        principal: None,
    })
}

fn bisect_plain(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    spec: &KnotSpec,
    y: f64,
    j: usize,
) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::BracketSignCheck { j, y });
    }
    let _ = spec;
    let (mut lo, mut hi, lo_pos) = (lo, hi, flo > 0.0);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Principal branch of `C(2m+1, -2n)` via the scaled variable `δ̂`.
///
/// With `δ = x - 2 - G/H - H/G` and `q = δ + 1/(GH)` (so that
/// `t - 2 = q (G-H)²` exactly), the root condition `R = 0` becomes
///
/// ```text
/// 2 GH δ / (2G/(G-H) - 1 + √(1 + 4/u))  =  (τ² - 1) / (τ (τ²ⁿ - 1))
/// ```
///
/// where `u = t - 2` and `t = τ + τ⁻¹`. The left side increases in `δ̂`,
/// the right side decreases, so the log-difference is bisected; the seed
/// bracket sits around `δ̂ = 1`, the large-`y` limit.
fn odd_principal(spec: &KnotSpec, ctx: &Ctx) -> Result<StableRoot> {
    let n = spec.n;
    let e2 = (2 * (spec.m + n) - 2) as f64 * ctx.ln_xi;
    let gg = ctx.sm / ctx.d;
    let h = |ln_dh: f64| -> f64 {
        let ln_delta = ln_dh - e2;
        let delta = fmath::exp(ln_delta); // harmless underflow: δ ≪ 1/(GH)
        let q = delta + 1.0 / ctx.gh;
        let u = q * ctx.d * ctx.d;
        let tau = 0.5 * (u + 2.0 + fmath::sqrt(u * (u + 4.0)));
        let ln_tau = fmath::ln(tau);
        let w = fmath::sqrt(1.0 + 4.0 / u);
        let ln_lhs = LN_2 + fmath::ln(ctx.gh) + ln_delta - fmath::ln(2.0 * gg - 1.0 + w);
        let ln_rhs = -2.0 * n as f64 * ln_tau + fmath::ln(tau - 1.0 / tau)
            - fmath::ln_1p(-fmath::exp(-2.0 * n as f64 * ln_tau));
        ln_lhs - ln_rhs
    };
    let (mut lo, mut hi) = (-LN_2, LN_2);
    let mut expand = 0;
    while h(lo) > 0.0 {
        lo -= 4.0 * LN_2;
        expand += 1;
        if expand > 60 {
            return Err(Error::NoConvergence { what: "principal-branch bracket", y: ctx.y });
        }
    }
    while h(hi) < 0.0 {
        hi += 4.0 * LN_2;
        expand += 1;
        if expand > 120 {
            return Err(Error::NoConvergence { what: "principal-branch bracket", y: ctx.y });
        }
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let ln_dh = 0.5 * (lo + hi);
    let ln_delta = ln_dh - e2;
    let delta = fmath::exp(ln_delta);
    let q = delta + 1.0 / ctx.gh;
    let u = q * ctx.d * ctx.d;
    Ok(StableRoot {
        t: 2.0 + u,
        x: 2.0 + ctx.ratio + 1.0 / ctx.ratio + delta,
        w_tilde: q,
        residual: h(ln_dh).abs(),
        principal: Some((fmath::exp(ln_dh), ln_delta)),
    })
}

fn principal_logs(spec: &KnotSpec, ctx: &Ctx, ln_delta: f64) -> Result<LogParts> {
    let r = ctx.ratio;
    let delta = fmath::exp(ln_delta);
    let big_a = (r - 1.0) * (r - 1.0) / r + delta;
    let big_b = (r + 1.0) * (r + 1.0) / r + delta;
    let den = fmath::sqrt(big_a * big_b) + r - 1.0 / r - delta;
    let ln_m2_minus_r = LN_2 + fmath::ln(r) + ln_delta - fmath::ln(den);
    let m2_minus_r = fmath::exp(ln_m2_minus_r);
    let m2 = r + m2_minus_r;
    let log_m = 0.5 * (fmath::ln(r) + fmath::ln_1p(m2_minus_r / r));
    // L = M^{4n} (M² - G/H) / (M² G/H - 1) > 0 on this branch
    let ln_den_l = fmath::ln(r) + fmath::ln(m2) + fmath::ln_1p(-1.0 / (r * m2));
    let log_l_abs = 4.0 * spec.n as f64 * log_m + ln_m2_minus_r - ln_den_l;
    if !log_l_abs.is_finite() || !log_m.is_finite() {
        return Err(Error::NumericOverflow { what: "log L", y: ctx.y });
    }
    Ok(LogParts { log_m, log_l_abs, l_negative: false })
}

fn band_logs(spec: &KnotSpec, ctx: &Ctx, root: &StableRoot) -> Result<LogParts> {
    let w = root.w_tilde;
    let v = ctx.y + w; // x - 2
    if v < 2.0 {
        return Err(Error::EllipticRegime { x: root.x });
    }
    let disc = (v - 2.0) * (v + 2.0);
    let m2_minus_xi = 2.0 * ctx.xi * w / (fmath::sqrt(disc) + ctx.xi - 1.0 / ctx.xi - w);
    let m2 = ctx.xi + m2_minus_xi;
    if !(m2 >= 1.0) {
        return Err(Error::EllipticRegime { x: root.x });
    }
    let log_m = 0.5 * (ctx.ln_xi + fmath::ln_1p(m2_minus_xi / ctx.xi));
    match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            // L = -((G-H) - M²(H-F)) / (M²(G-H) - (H-F))
            let lead = -(ctx.xi - 1.0) * (ctx.xi - 1.0) * (ctx.xi + 1.0)
                * fmath::powi(ctx.xi, -(spec.m as i32 + 1))
                / ctx.dd;
            let n_val = lead - m2_minus_xi * ctx.hf;
            let den_l = m2 * ctx.d - ctx.hf;
            if !(den_l > 0.0) {
                return Err(Error::VanishingDenominator { what: "stable longitude" });
            }
            let log_l_abs = fmath::ln(n_val.abs()) - fmath::ln(den_l);
            Ok(LogParts { log_m, log_l_abs, l_negative: n_val > 0.0 })
        }
        Family::OddMinus => {
            // L = M^{4n} (M²H - G) / (M²G - H), with M²H - G = (M²-ξ)H - ξ^{-m}
            let mh_g = m2_minus_xi * ctx.smm1 - fmath::powi(ctx.xi, -(spec.m as i32));
            let den_l = m2 * ctx.sm - ctx.smm1;
            if !(den_l > 0.0) {
                return Err(Error::VanishingDenominator { what: "stable longitude" });
            }
            let log_l_abs =
                4.0 * spec.n as f64 * log_m + fmath::ln(mh_g.abs()) - fmath::ln(den_l);
            Ok(LogParts { log_m, log_l_abs, l_negative: mh_g < 0.0 })
        }
    }
}
