//! The slope function `f(y) = -log L(y) / log M(y)` along a root branch,
//! certified attained slope intervals, and witnesses for individual
//! surgery slopes `p/q`.
//!
//! A branch of hyperbolic representations with constant index 0 realises
//! `p/q` as a left orderable slope whenever `p·log M(y) + q·log L(y) = 0`
//! for some `y` on the branch (for index `k ≠ 0` additionally `p | k`).
//! Sweeping `f` over a branch therefore certifies the closed interval
//! `[min f, max f]` as attained; the open target endpoints are limits
//! and are never claimed.
//!
//! Certified branches: the principal branch of `C(2m+1,-2n)` (target
//! `(-4n, 4m)`), and the bracketed branches `1..n-1` of the even
//! families. Which even branch realises which sub-interval is not
//! assigned here; certificates simply report the attained range per
//! branch.
//!
//! Large `y` runs entirely in the log domain through the stable layer:
//! `M^{4n}` and `S_m(y)` are never formed, only their logarithms, so a
//! sweep to `y = 10¹²` and beyond is exact to roundoff. The
//! representation index cannot be evaluated in the cover at such scales
//! (the disc coordinate saturates); since the index is constant along a
//! connected curve of hyperbolic representations, it is computed once at
//! a desk-scale anchor on the branch and carried along the sweep.

use crate::cover;
use crate::error::Error;
use crate::fmath;
use crate::knot::{Family, KnotSpec};
use crate::representation;
use crate::rootcurve;
use crate::stable;
use crate::Result;
use alloc::string::ToString;
use alloc::vec::Vec;

/// Above this `y`, the odd principal branch switches to the scaled
/// stable solve: the direct root loses relative accuracy in the tiny
/// gap `M² - G/H` long before `y` reaches the generic switch point.
const ODD_PRINCIPAL_STABLE_MIN: f64 = 2.25;

/// Switch point for the bracketed branches.
const BAND_STABLE_MIN: f64 = 100.0;

/// Desk-scale anchors for the index computation, tried in order.
const INDEX_ANCHORS: [f64; 6] = [2.0, 2.5, 3.0, 5.0, 10.0, 20.0];

/// One point of a slope sweep.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SlopeSample {
    pub y: f64,
    /// Root of `R(·, y)` on the branch.
    pub x: f64,
    /// `log M(y) > 0`.
    pub log_m: f64,
    /// `log |L(y)|`.
    pub log_l: f64,
    /// `-log L / log M`.
    pub f: f64,
    /// Representation index (band index of the lifted longitude).
    pub index: i64,
    /// Residual of the root solve that produced `x`.
    pub residual: f64,
}

/// A verified witness for one slope `p/q`.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SlopeWitness {
    pub p: i64,
    pub q: i64,
    /// Where `p·log M + q·log L` vanishes.
    pub y: f64,
    /// `|p·log M(y) + q·log L(y)|` at the witness.
    pub residual: f64,
    /// Index of the branch carrying the witness.
    pub index: i64,
    /// `f(y)` at the witness (equals `p/q` up to the residual).
    pub f: f64,
}

/// A certified attained sub-interval of slopes on one branch.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SlopeCertificate {
    /// Normal form of the knot.
    pub knot: alloc::string::String,
    pub branch: usize,
    pub y_min: f64,
    pub y_max: f64,
    /// Grid points requested (refinement may add verification points).
    pub samples: usize,
    /// Closed attained interval `[min f, max f]` over the sweep.
    pub attained_min: f64,
    pub attained_max: f64,
    /// Target interval from the family's theorem.
    pub target_lo: f64,
    pub target_hi: f64,
    /// Whether the target includes its lower endpoint.
    pub target_closed_lo: bool,
    /// `|attained ∩ target| / |target|`.
    pub covered_fraction: f64,
    /// Branch index (constant along the sweep).
    pub index: i64,
    /// Verified witnesses for the integer slopes inside the attained
    /// interval.
    pub witnesses: Vec<SlopeWitness>,
    /// Witness residual bound used.
    pub tol: f64,
}

/// Slope quantities without the index (cheap enough for inner loops).
struct Parts {
    x: f64,
    log_m: f64,
    log_l: f64,
    l_negative: bool,
    residual: f64,
}

fn parts(spec: &KnotSpec, branch: usize, y: f64, tol: f64) -> Result<Parts> {
    let use_stable = if spec.family == Family::OddMinus && branch == 0 {
        y > ODD_PRINCIPAL_STABLE_MIN
    } else {
        y > BAND_STABLE_MIN
    };
    if use_stable {
        let root = stable::solve(spec, y, branch)?;
        let logs = stable::logs(spec, y, &root)?;
        Ok(Parts {
            x: root.x,
            log_m: logs.log_m,
            log_l: logs.log_l_abs,
            l_negative: logs.l_negative,
            residual: root.residual,
        })
    } else {
        let pt = rootcurve::branch_root(spec, y, branch, tol)?;
        let m_eig = representation::meridian_from_x(pt.x)?;
        let l = representation::longitude_closed(spec, m_eig, y)?;
        if l == 0.0 {
            return Err(Error::VanishingDenominator { what: "log L" });
        }
        Ok(Parts {
            x: pt.x,
            log_m: fmath::ln(m_eig),
            log_l: fmath::ln(l.abs()),
            l_negative: l < 0.0,
            residual: pt.residual,
        })
    }
}

/// The index of the branch, computed at a desk-scale anchor.
///
/// The index is constant along a connected curve of hyperbolic
/// representations, and along these branches the longitude eigenvalue
/// is real, so the longitude can only degenerate at isolated parabolic
/// points which do not separate the bands; one good anchor determines
/// the branch.
pub fn branch_index(spec: &KnotSpec, branch: usize, tol: f64) -> Result<i64> {
    let mut last = Error::NoConvergence { what: "index anchor", y: 0.0 };
    for &anchor in INDEX_ANCHORS.iter() {
        if anchor <= spec.y_left() {
            continue;
        }
        if spec.family != Family::OddMinus && anchor <= 2.0 {
            continue;
        }
        let attempt = (|| -> Result<i64> {
            let pt = rootcurve::branch_root(spec, anchor, branch, tol)?;
            let m_eig = representation::meridian_from_x(pt.x)?;
            cover::rep_index(spec, m_eig, anchor)
        })();
        match attempt {
            Ok(k) => return Ok(k),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Compute the full slope sample at one `y` on one branch.
///
/// At desk scale (`y ≤ 10³`) the index is evaluated in the cover at `y`
/// itself; beyond, it is carried from a desk-scale anchor by constancy.
pub fn slope_at(spec: &KnotSpec, branch: usize, y: f64, tol: f64) -> Result<SlopeSample> {
    let p = parts(spec, branch, y, tol)?;
    let index = if y <= stable::Y_SWITCH {
        let m_eig = representation::meridian_from_x(p.x)?;
        cover::rep_index(spec, m_eig, y)?
    } else {
        branch_index(spec, branch, tol)?
    };
    finish_sample(y, p, index)
}

fn finish_sample(y: f64, p: Parts, index: i64) -> Result<SlopeSample> {
    if !(p.log_m > 0.0) {
        return Err(Error::EllipticRegime { x: p.x });
    }
    // the normal form (tanh b, kπ) projects with trace sign (-1)^k, so
    // the sign of L must match the index parity
    if p.l_negative != (index.rem_euclid(2) == 1) {
        return Err(Error::OffZeroLocus { defect: f64::NAN });
    }
    Ok(SlopeSample {
        y,
        x: p.x,
        log_m: p.log_m,
        log_l: p.log_l,
        f: -p.log_l / p.log_m,
        index,
        residual: p.residual,
    })
}

/// Geometric grid in `y - y_left`, endpoints hit exactly.
pub fn sweep_grid(spec: &KnotSpec, y_min: f64, y_max: f64, samples: usize) -> Vec<f64> {
    let y_left = spec.y_left();
    let d0 = y_min - y_left;
    let d1 = y_max - y_left;
    let n = samples.max(2);
    let mut grid: Vec<f64> = (0..n)
        .map(|i| {
            let frac = i as f64 / (n - 1) as f64;
            y_left + d0 * fmath::exp(frac * fmath::ln(d1 / d0))
        })
        .collect();
    grid[0] = y_min;
    grid[n - 1] = y_max;
    grid
}

/// Sweep `f` over one branch: samples in grid order, index carried from
/// a single anchor (every sample on a branch has the same index).
pub fn sweep(
    spec: &KnotSpec,
    branch: usize,
    y_min: f64,
    y_max: f64,
    samples: usize,
    tol: f64,
) -> Result<Vec<SlopeSample>> {
    check_range(spec, y_min, y_max)?;
    let index = branch_index(spec, branch, tol)?;
    sweep_over(spec, branch, &sweep_grid(spec, y_min, y_max, samples), index, tol)
}

/// Sweep over an explicit grid with a precomputed branch index. Grid
/// points are independent, so callers may split the grid across
/// workers and concatenate in order.
pub fn sweep_over(
    spec: &KnotSpec,
    branch: usize,
    grid: &[f64],
    index: i64,
    tol: f64,
) -> Result<Vec<SlopeSample>> {
    grid.iter().map(|&y| finish_sample(y, parts(spec, branch, y, tol)?, index)).collect()
}

fn check_range(spec: &KnotSpec, y_min: f64, y_max: f64) -> Result<()> {
    if !(y_min > spec.y_left()) {
        return Err(Error::YOutOfRange { y: y_min, min: spec.y_left() });
    }
    if !(y_max > y_min) {
        return Err(Error::YOutOfRange { y: y_max, min: y_min });
    }
    Ok(())
}

/// The family's target slope interval and whether its lower endpoint is
/// included.
pub fn target_interval(spec: &KnotSpec) -> (f64, f64, bool) {
    let (m, n) = (spec.m as f64, spec.n as f64);
    match spec.family {
        Family::EvenPlus | Family::OddMinus => (-4.0 * n, 4.0 * m, false),
        Family::EvenMinus => (0.0, (4.0 * m).max(4.0 * n), true),
    }
}

/// The branches a certificate sweeps: the principal branch for the odd
/// family, the bracketed branches for the even ones.
pub fn certified_branches(spec: &KnotSpec) -> Vec<usize> {
    match spec.family {
        Family::OddMinus => alloc::vec![0],
        Family::EvenPlus | Family::EvenMinus => (1..spec.n as usize).collect(),
    }
}

/// Sweep one branch and certify its attained slope interval.
///
/// The sweep refuses to certify if `f` jumps by more than the
/// continuity gate between adjacent samples even after refinement.
/// Witnesses are produced for every integer slope strictly inside the
/// attained interval.
pub fn certify_interval(
    spec: &KnotSpec,
    branch: usize,
    y_min: f64,
    y_max: f64,
    samples: usize,
    tol: f64,
) -> Result<SlopeCertificate> {
    check_range(spec, y_min, y_max)?;
    let index = branch_index(spec, branch, tol)?;
    let grid = sweep_grid(spec, y_min, y_max, samples);
    let f_of = |y: f64| -> Result<f64> {
        let p = parts(spec, branch, y, tol)?;
        Ok(finish_sample(y, p, index)?.f)
    };
    let mut f_min = f64::INFINITY;
    let mut f_max = f64::NEG_INFINITY;
    let mut prev: Option<(f64, f64)> = None;
    for &y in &grid {
        let f = f_of(y)?;
        f_min = f_min.min(f);
        f_max = f_max.max(f);
        if let Some((py, pf)) = prev {
            continuity(&f_of, py, pf, y, f, 0, &mut f_min, &mut f_max)?;
        }
        prev = Some((y, f));
    }

    let (target_lo, target_hi, target_closed_lo) = target_interval(spec);
    let overlap = (f_max.min(target_hi) - f_min.max(target_lo)).max(0.0);
    let covered_fraction = overlap / (target_hi - target_lo);

    let mut witnesses = Vec::new();
    let lo_int = fmath::ceil(f_min) as i64;
    let hi_int = fmath::floor(f_max) as i64;
    for p in lo_int..=hi_int {
        if (p as f64) <= f_min || (p as f64) >= f_max {
            continue;
        }
        if let Ok(w) = is_lo_slope(spec, p, 1, (y_min, y_max), tol) {
            witnesses.push(w);
        }
    }

    Ok(SlopeCertificate {
        knot: spec.to_string(),
        branch,
        y_min,
        y_max,
        samples,
        attained_min: f_min,
        attained_max: f_max,
        target_lo,
        target_hi,
        target_closed_lo,
        covered_fraction,
        index,
        witnesses,
        tol,
    })
}

/// The continuity gate: adjacent `f` samples may differ by at most this
/// much before refinement kicks in.
const F_GATE: f64 = 0.25;

fn continuity(
    f_of: &dyn Fn(f64) -> Result<f64>,
    y0: f64,
    f0: f64,
    y1: f64,
    f1: f64,
    depth: usize,
    f_min: &mut f64,
    f_max: &mut f64,
) -> Result<()> {
    if (f1 - f0).abs() <= F_GATE {
        return Ok(());
    }
    if depth >= 12 || y1 - y0 <= 4.0 * f64::EPSILON * y1.abs() {
        return Err(Error::ContinuityGate { y: 0.5 * (y0 + y1) });
    }
    let ym = 0.5 * (y0 + y1);
    let fm = f_of(ym)?;
    *f_min = f_min.min(fm);
    *f_max = f_max.max(fm);
    continuity(f_of, y0, f0, ym, fm, depth + 1, f_min, f_max)?;
    continuity(f_of, ym, fm, y1, f1, depth + 1, f_min, f_max)
}

/// Search the certified branches for a witness of the slope `p/q`.
///
/// Bisects `g(y) = p·log M(y) + q·log L(y)` over a sign change of the
/// sampled branch; verifies the residual and the index condition
/// (index 0 passes; index `k ≠ 0` needs `p | k`).
pub fn is_lo_slope(
    spec: &KnotSpec,
    p: i64,
    q: i64,
    y_range: (f64, f64),
    tol: f64,
) -> Result<SlopeWitness> {
    if q < 1 || gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(Error::InvalidSlope { p, q });
    }
    let (y_min, y_max) = y_range;
    check_range(spec, y_min, y_max)?;
    let mut index_failure: Option<Error> = None;
    for branch in certified_branches(spec) {
        match witness_on_branch(spec, branch, p, q, y_min, y_max, tol) {
            Ok(w) => return Ok(w),
            Err(Error::IndexCondition { p, index }) => {
                index_failure = Some(Error::IndexCondition { p, index });
            }
            Err(_) => {}
        }
    }
    Err(index_failure.unwrap_or(Error::SlopeNotAttained { p, q }))
}

fn witness_on_branch(
    spec: &KnotSpec,
    branch: usize,
    p: i64,
    q: i64,
    y_min: f64,
    y_max: f64,
    tol: f64,
) -> Result<SlopeWitness> {
    let g_of = |y: f64| -> Result<f64> {
        let pr = parts(spec, branch, y, tol)?;
        if !(pr.log_m > 0.0) {
            return Err(Error::EllipticRegime { x: pr.x });
        }
        Ok(p as f64 * pr.log_m + q as f64 * pr.log_l)
    };
    let grid = sweep_grid(spec, y_min, y_max, 256);
    let mut prev: Option<(f64, f64)> = None;
    for &y in &grid {
        let g = g_of(y)?;
        if let Some((py, pg)) = prev {
            if pg == 0.0 || (pg > 0.0) != (g > 0.0) {
                return refine_witness(spec, branch, p, q, (py, pg), (y, g), tol, &g_of);
            }
        }
        prev = Some((y, g));
    }
    Err(Error::SlopeNotAttained { p, q })
}

#[allow(clippy::too_many_arguments)]
fn refine_witness(
    spec: &KnotSpec,
    branch: usize,
    p: i64,
    q: i64,
    lo: (f64, f64),
    hi: (f64, f64),
    tol: f64,
    g_of: &dyn Fn(f64) -> Result<f64>,
) -> Result<SlopeWitness> {
    let y_left = spec.y_left();
    // bisect in ln(y - y_left) for conditioning near the left endpoint
    let (mut a, a_pos) = (fmath::ln(lo.0 - y_left), lo.1 > 0.0);
    let mut b = fmath::ln(hi.0 - y_left);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let y = y_left + fmath::exp(mid);
        let g = g_of(y)?;
        if g == 0.0 {
            a = mid;
            break;
        }
        if (g > 0.0) == a_pos {
            a = mid;
        } else {
            b = mid;
        }
    }
    let y_star = y_left + fmath::exp(0.5 * (a + b));
    let residual = g_of(y_star)?.abs();
    if !(residual < tol) {
        return Err(Error::NoConvergence { what: "witness residual", y: y_star });
    }
    let index = branch_index(spec, branch, tol)?;
    if index != 0 && (p == 0 || index % p != 0) {
        return Err(Error::IndexCondition { p, index });
    }
    let pr = parts(spec, branch, y_star, tol)?;
    Ok(SlopeWitness { p, q, y: y_star, residual, index, f: -pr.log_l / pr.log_m })
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Convergence diagnostics for the odd family.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AsymptoticsReport {
    pub knot: alloc::string::String,
    /// `(y, δ̂(y))` with `δ̂ = ξ^{2m+2n-2}(x - 2 - G/H - H/G)`; tends
    /// to 1.
    pub delta_hat: Vec<(f64, f64)>,
    /// `(y - y_left, x(y))` close to the left endpoint; `x` blows up.
    pub left_blowup: Vec<(f64, f64)>,
    /// Minimum of `x` over the diagnostic trace (always `> 4`).
    pub min_x: f64,
    /// Minimum of `x - (2 + G/H + H/G)` over the trace (always `> 0`).
    pub min_gap: f64,
}

/// Evaluate the principal-branch asymptotics of `C(2m+1,-2n)`.
pub fn asymptotics_report(spec: &KnotSpec, tol: f64) -> Result<AsymptoticsReport> {
    if spec.family != Family::OddMinus {
        return Err(Error::WrongFamily { needed: "C(2m+1,-2n)" });
    }
    let mut delta_hat = Vec::new();
    for &y in &[1e3, 1e4, 1e6] {
        let root = stable::solve(spec, y, 0)?;
        let (dh, _) = root.principal.expect("principal solve");
        delta_hat.push((y, dh));
    }
    let y_left = spec.y_left();
    let mut left_blowup = Vec::new();
    for &dy in &[1e-4, 1e-6, 1e-8] {
        let x = rootcurve::principal_branch_odd(spec, y_left + dy, tol)?;
        left_blowup.push((dy, x));
    }
    let mut min_x = f64::INFINITY;
    let mut min_gap = f64::INFINITY;
    for &y in sweep_grid(spec, y_left + 1e-6, 1e6, 80).iter() {
        // the gap x - (2 + G/H + H/G) must come out of the scaled
        // solve; formed by subtraction it is pure cancellation noise
        let (x, gap) = if y > ODD_PRINCIPAL_STABLE_MIN {
            let root = stable::solve(spec, y, 0)?;
            let (_, ln_delta) = root.principal.expect("principal solve");
            (root.x, fmath::exp(ln_delta))
        } else {
            let x = rootcurve::principal_branch_odd(spec, y, tol)?;
            let (g, h) = crate::riley::gh(spec, y);
            (x, x - (2.0 + g / h + h / g))
        };
        min_x = min_x.min(x);
        min_gap = min_gap.min(gap);
    }
    Ok(AsymptoticsReport { knot: spec.to_string(), delta_hat, left_blowup, min_x, min_gap })
}
