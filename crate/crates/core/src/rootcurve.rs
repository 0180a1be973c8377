//! Localisation of the `n` real roots of `R(·, y)` and continuation of
//! root branches over a `y` grid.
//!
//! For admissible `y` the polynomial `R(·, y)` has exactly `n` simple
//! real roots, pinned by explicit bracket points built from the roots
//! `t_j = 2cos((2j-1)π/(2n+1))` of `S_n - S_{n-1}`:
//!
//! ```text
//! s_j(y) = y + 2 + (2 - t_j) / ((y-2) S²_{m-1}(y))      (even families)
//! s_j(y) = y + 2 - (2 - t_j) / (S_m(y) - S_{m-1}(y))²   (odd family)
//! ```
//!
//! `R` alternates sign on consecutive brackets, so bisection inside each
//! pair is guaranteed; a short Newton polish follows. The extra root
//! beyond the `n-1` bracketed ones sits in `(y+2, s_1)` for `C(2m,2n)`,
//! in `(0, y+2)` for `C(2m,-2n)`, and in `(y+2, ∞)` for `C(2m+1,-2n)`
//! (found by doubling the offset until the sign flips, which must happen
//! because the leading coefficient is negative).
//!
//! Roots are reported in branch order: index 0 is the extra root, then
//! the bracketed branches `1..n-1`. For the even families that is
//! ascending in `x`; for the odd family branch 0 is the largest root and
//! the rest descend.
//!
//! Above `y = 10³` all root finding routes through the `ξ = e^{arccosh(y/2)}`
//! parametrisation (see the crate's stable layer): bracketed branches are
//! solved in the trace coordinate `t`, and the odd principal branch in
//! the scaled variable `δ̂`, seeded at its large-`y` limit 1.

use crate::chebyshev;
use crate::error::Error;
use crate::knot::{Family, KnotSpec};
use crate::riley;
use crate::stable;
use crate::Result;
use alloc::vec::Vec;

/// Default residual tolerance, relative to `max(1, |lc| |x|ⁿ)`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// All roots of `R(·, y)` at one grid point.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RootCurveSample {
    /// The grid point.
    pub y: f64,
    /// Roots in branch order (see module docs).
    pub roots: Vec<f64>,
    /// Bracket points `s_1 .. s_n`.
    pub brackets: Vec<f64>,
    /// Residual per root: `|R(x_j, y)|` on the desk path, the relative
    /// residual of the trace-coordinate equation on the stable path.
    pub residuals: Vec<f64>,
}

/// One traced point of a single branch.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BranchPoint {
    pub y: f64,
    pub x: f64,
    pub residual: f64,
}

fn check_admissible(spec: &KnotSpec, y: f64) -> Result<()> {
    let min = spec.y_left();
    if y > min {
        Ok(())
    } else {
        Err(Error::YOutOfRange { y, min })
    }
}

/// The bracket points `s_1 .. s_n` for this `y`.
///
/// Even families: ascending, all above `y + 2`. Odd family: descending,
/// all below `y + 2`.
pub fn brackets(spec: &KnotSpec, y: f64) -> Result<Vec<f64>> {
    check_admissible(spec, y)?;
    let td = chebyshev::diff_roots(spec.n).expect("n >= 1");
    match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            let (_, h) = riley::gh(spec, y);
            let denom = (y - 2.0) * h * h;
            Ok(td.iter().map(|t| y + 2.0 + (2.0 - t) / denom).collect())
        }
        Family::OddMinus => {
            let d = riley::g_minus_h(spec, y);
            Ok(td.iter().map(|t| y + 2.0 - (2.0 - t) / (d * d)).collect())
        }
    }
}

/// Residual acceptance scale `max(1, |lc(y)| |x|ⁿ)`.
fn residual_scale(spec: &KnotSpec, y: f64, x: f64) -> f64 {
    match riley::coeffs(spec, y) {
        Ok(c) => {
            let lc = c.last().copied().unwrap_or(1.0);
            (lc.abs() * crate::fmath::powi(x.abs(), spec.n as i32)).max(1.0)
        }
        Err(_) => 1.0,
    }
}

/// Bisection to near machine precision followed by a capped Newton
/// polish; the bracket must carry a sign change.
fn bisect_newton(spec: &KnotSpec, y: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (riley::eval(spec, lo, y), riley::eval(spec, hi, y));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoConvergence { what: "bisection bracket", y });
    }
    let lo_pos = flo > 0.0;
    let mut iter = 0;
    while (hi - lo).abs() > 1e-15 * lo.abs().max(hi.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = riley::eval(spec, mid, y);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
        if iter > 200 {
            return Err(Error::NoConvergence { what: "bisection", y });
        }
    }
    // Newton polish, capped at 5 steps, confined to the bracket
    let (a, b) = (lo.min(hi), lo.max(hi));
    let mut x = 0.5 * (lo + hi);
    let mut best = x;
    let mut best_r = riley::eval(spec, x, y).abs();
    for _ in 0..5 {
        let r = riley::eval(spec, x, y);
        let dr = riley::deriv_x(spec, x, y);
        if dr == 0.0 {
            break;
        }
        x -= r / dr;
        if !(x >= a - (b - a) && x <= b + (b - a)) {
            break;
        }
        let rr = riley::eval(spec, x, y).abs();
        if rr < best_r {
            best = x;
            best_r = rr;
        } else {
            break;
        }
    }
    Ok(best)
}

/// Expected sign of `R(s_j, y)`: alternating, starting negative for
/// `C(2m,2n)` and positive for the two minus families.
fn expected_sign(spec: &KnotSpec, j: usize) -> bool {
    let first_positive = spec.family != Family::EvenPlus;
    (j % 2 == 1) == first_positive
}

fn roots_at_desk(spec: &KnotSpec, y: f64, tol: f64) -> Result<RootCurveSample> {
    let n = spec.n as usize;
    let s = brackets(spec, y)?;
    let r_at: Vec<f64> = s.iter().map(|&x| riley::eval(spec, x, y)).collect();
    for (idx, &r) in r_at.iter().enumerate() {
        let j = idx + 1;
        if (r > 0.0) != expected_sign(spec, j) || r == 0.0 {
            return Err(Error::BracketSignCheck { j, y });
        }
    }

    let mut roots = Vec::with_capacity(n);
    // extra root first (branch 0)
    let x0 = match spec.family {
        Family::EvenPlus => bisect_newton(spec, y, y + 2.0, s[0])?,
        Family::EvenMinus => bisect_newton(spec, y, 0.0, y + 2.0)?,
        Family::OddMinus => {
            let mut prev = y + 2.0;
            let mut off = 1.0;
            loop {
                let probe = y + 2.0 + off;
                if !(riley::eval(spec, probe, y) >= 0.0) {
                    break bisect_newton(spec, y, prev, probe)?;
                }
                prev = probe;
                off *= 2.0;
                if !off.is_finite() {
                    return Err(Error::NoConvergence { what: "principal bracket growth", y });
                }
            }
        }
    };
    roots.push(x0);
    // bracketed branches j = 1 .. n-1
    for j in 1..n {
        let (lo, hi) = if spec.family == Family::OddMinus {
            (s[j], s[j - 1])
        } else {
            (s[j - 1], s[j])
        };
        roots.push(bisect_newton(spec, y, lo, hi)?);
    }

    // the roots are simple, so the family ordering must be strict:
    // ascending for the even families, descending for the odd one
    let ordered = match spec.family {
        Family::EvenPlus | Family::EvenMinus => roots.windows(2).all(|w| w[0] < w[1]),
        Family::OddMinus => roots.windows(2).all(|w| w[0] > w[1]),
    };
    if !ordered {
        return Err(Error::BranchCollision { y });
    }

    let mut residuals = Vec::with_capacity(n);
    for &x in &roots {
        let r = riley::eval(spec, x, y).abs();
        if !(r <= tol * residual_scale(spec, y, x)) {
            return Err(Error::NoConvergence { what: "root residual", y });
        }
        residuals.push(r);
    }
    Ok(RootCurveSample { y, roots, brackets: s, residuals })
}

fn roots_at_stable(spec: &KnotSpec, y: f64, tol: f64) -> Result<RootCurveSample> {
    let n = spec.n as usize;
    let s = brackets(spec, y)?;
    let mut roots = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for j in 0..n {
        let root = stable::solve(spec, y, j)?;
        if !root.t.is_finite() || !(root.residual <= tol.max(1e-12)) {
            return Err(Error::NoConvergence { what: "stable root residual", y });
        }
        roots.push(root.x);
        residuals.push(root.residual);
    }
    Ok(RootCurveSample { y, roots, brackets: s, residuals })
}

/// All `n` roots at one `y`, in branch order, with verified residuals.
pub fn roots_at(spec: &KnotSpec, y: f64, tol: f64) -> Result<RootCurveSample> {
    if y > stable::Y_SWITCH {
        roots_at_stable(spec, y, tol)
    } else {
        roots_at_desk(spec, y, tol)
    }
}

/// The root of one branch at one `y`.
pub fn branch_root(spec: &KnotSpec, y: f64, branch: usize, tol: f64) -> Result<BranchPoint> {
    let n = spec.n as usize;
    if branch >= n {
        return Err(Error::NoSuchBranch { branch, count: n });
    }
    if y > stable::Y_SWITCH {
        let root = stable::solve(spec, y, branch)?;
        Ok(BranchPoint { y, x: root.x, residual: root.residual })
    } else {
        // branch identity comes from the bracket structure: the branches
        // occupy disjoint intervals of the trace coordinate, so they
        // cannot be confused even where the roots crowd around y + 2
        let sample = roots_at_desk(spec, y, tol)?;
        Ok(BranchPoint { y, x: sample.roots[branch], residual: sample.residuals[branch] })
    }
}

/// The unique root above `y + 2` of the odd family.
pub fn principal_branch_odd(spec: &KnotSpec, y: f64, tol: f64) -> Result<f64> {
    if spec.family != Family::OddMinus {
        return Err(Error::WrongFamily { needed: "C(2m+1,-2n)" });
    }
    Ok(branch_root(spec, y, 0, tol)?.x)
}

/// Trace branch `branch` over a monotone `y` grid.
///
/// Consecutive samples must pass a continuity gate: the root at the
/// interval midpoint has to sit inside the chord envelope of its
/// endpoints. Violations trigger adaptive refinement; if a violation
/// survives the maximum refinement depth the trace is refused.
pub fn trace_branch(
    spec: &KnotSpec,
    branch: usize,
    y_grid: &[f64],
    tol: f64,
) -> Result<Vec<BranchPoint>> {
    let mut out: Vec<BranchPoint> = Vec::with_capacity(y_grid.len());
    for &y in y_grid {
        check_admissible(spec, y)?;
        let pt = branch_root(spec, y, branch, tol)?;
        if let Some(prev) = out.last().copied() {
            gate(spec, branch, tol, prev, pt, 0)?;
        }
        out.push(pt);
    }
    Ok(out)
}

/// Midpoint-envelope continuity check between two accepted samples,
/// recursing on the subintervals where the chord test fails. The output
/// grid is left as requested; refinement only verifies.
fn gate(
    spec: &KnotSpec,
    branch: usize,
    tol: f64,
    a: BranchPoint,
    b: BranchPoint,
    depth: usize,
) -> Result<()> {
    let dy = b.y - a.y;
    if dy <= 4.0 * f64::EPSILON * b.y.abs().max(1.0) {
        return Ok(());
    }
    let y_mid = 0.5 * (a.y + b.y);
    let mid = branch_root(spec, y_mid, branch, tol)?;
    let chord = 0.5 * (a.x + b.x);
    let envelope = 0.45 * (b.x - a.x).abs() + 1e-9 * chord.abs().max(1.0);
    if (mid.x - chord).abs() <= envelope {
        return Ok(());
    }
    if depth >= 12 {
        return Err(Error::ContinuityGate { y: y_mid });
    }
    gate(spec, branch, tol, a, mid, depth + 1)?;
    gate(spec, branch, tol, mid, b, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::KnotSpec;
    use alloc::vec;

    fn spec(text: &str) -> KnotSpec {
        KnotSpec::parse(text).unwrap()
    }

    #[test]
    fn bracket_example_even_plus() {
        // m=1, n=2, y=3: s_1 = 5 + (2 - 2cos(π/5)) / 1
        let s = spec("C(2,4)");
        let b = brackets(&s, 3.0).unwrap();
        let expect = 5.0 + 2.0 - 2.0 * (core::f64::consts::PI / 5.0).cos();
        assert!((b[0] - expect).abs() < 1e-12, "{} vs {expect}", b[0]);
        assert!(b[1] > b[0] && b[0] > 5.0);
    }

    #[test]
    fn bracket_signs_even_plus() {
        let s = spec("C(2,4)");
        let y = 3.0;
        let b = brackets(&s, y).unwrap();
        assert!(riley::eval(&s, b[0], y) < 0.0);
        assert!(riley::eval(&s, b[1], y) > 0.0);
    }

    #[test]
    fn odd_brackets_below_y_plus_two() {
        let s = spec("C(5,-8)");
        let y = 2.5;
        for sj in brackets(&s, y).unwrap() {
            assert!(sj < y + 2.0);
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let s = spec("C(2,4)");
        assert!(matches!(brackets(&s, 2.0), Err(Error::YOutOfRange { .. })));
        assert!(matches!(roots_at(&s, 1.5, 1e-10), Err(Error::YOutOfRange { .. })));
        let odd = spec("C(3,-4)");
        // odd family admits y in (1, 2] as well
        assert!(brackets(&odd, 1.5).is_ok());
        assert!(matches!(brackets(&odd, 0.9), Err(Error::YOutOfRange { .. })));
    }

    #[test]
    fn counts_and_interlacing() {
        for text in ["C(2,4)", "C(4,-6)", "C(3,-4)", "C(2,-2)", "C(6,6)", "C(7,-2)"] {
            let s = spec(text);
            for &y in &[2.1, 3.0, 5.0] {
                let sample = roots_at(&s, y, 1e-10).unwrap();
                assert_eq!(sample.roots.len(), s.n as usize, "{text} y={y}");
                let r = &sample.roots;
                match s.family {
                    Family::EvenPlus => {
                        assert!(r[0] > y + 2.0, "{text} y={y}");
                        assert!(r.windows(2).all(|w| w[0] < w[1]), "{text} y={y}");
                    }
                    Family::EvenMinus => {
                        assert!(r[0] > 0.0 && r[0] < y + 2.0, "{text} y={y}");
                        if r.len() > 1 {
                            assert!(r[1] > y + 2.0);
                            assert!(r[1..].windows(2).all(|w| w[0] < w[1]));
                        }
                    }
                    Family::OddMinus => {
                        assert!(r[0] > y + 2.0, "{text} y={y}");
                        if r.len() > 1 {
                            assert!(r[1] < y + 2.0);
                            assert!(r[1..].windows(2).all(|w| w[0] > w[1]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn principal_root_exceeds_y_plus_two() {
        let s = spec("C(3,-4)");
        let x = principal_branch_odd(&s, 3.0, 1e-10).unwrap();
        assert!(x > 5.0);
        // wrong family rejected
        let even = spec("C(2,4)");
        assert!(matches!(
            principal_branch_odd(&even, 3.0, 1e-10),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn principal_lower_bound_along_trace() {
        // x(y) > 2 + G/H + H/G > 4 along the whole branch
        let s = spec("C(5,-4)");
        let grid: Vec<f64> = (0..40)
            .map(|i| s.y_left() + 1e-3 * (12.0f64 / 1e-3).powf(i as f64 / 39.0))
            .collect();
        for pt in trace_branch(&s, 0, &grid, 1e-10).unwrap() {
            let (g, h) = riley::gh(&s, pt.y);
            let bound = 2.0 + g / h + h / g;
            assert!(pt.x > bound && bound > 4.0, "y={} x={} bound={bound}", pt.y, pt.x);
        }
    }

    #[test]
    fn principal_blows_up_at_left_endpoint() {
        let s = spec("C(3,-4)");
        let y = s.y_left() + 1e-7;
        let x = principal_branch_odd(&s, y, 1e-10).unwrap();
        assert!(x > 1e3, "x = {x}");
    }

    #[test]
    fn trace_is_continuous_even_family() {
        let s = spec("C(4,-6)");
        let grid: Vec<f64> = (0..30).map(|i| 2.05 + 0.2 * i as f64).collect();
        for j in 1..s.n as usize {
            let tr = trace_branch(&s, j, &grid, 1e-10).unwrap();
            assert!(tr.len() >= grid.len());
        }
    }

    #[test]
    fn desk_and_stable_agree_on_branch_roots() {
        // the two regimes must coincide in the overlap window
        for text in ["C(2,4)", "C(4,-6)", "C(3,-4)"] {
            let s = spec(text);
            let y = 800.0;
            let desk = roots_at_desk(&s, y, 1e-9).unwrap();
            for j in 0..s.n as usize {
                let st = stable::solve(&s, y, j).unwrap();
                let scale = desk.roots[j].abs().max(1.0);
                assert!(
                    (desk.roots[j] - st.x).abs() < 1e-7 * scale,
                    "{text} j={j}: desk {} vs stable {}",
                    desk.roots[j],
                    st.x
                );
            }
        }
    }

    #[test]
    fn root_simplicity() {
        // |∂R/∂x| bounded away from zero at every root
        for text in ["C(2,4)", "C(4,-6)", "C(3,-4)"] {
            let s = spec(text);
            for &y in &[2.1, 3.0, 5.0] {
                for &x in &roots_at(&s, y, 1e-10).unwrap().roots {
                    let h = 1e-6 * x.abs().max(1.0);
                    let fd =
                        (riley::eval(&s, x + h, y) - riley::eval(&s, x - h, y)) / (2.0 * h);
                    assert!(fd.abs() > 1e-9, "{text} y={y} x={x}");
                }
            }
        }
    }

    #[test]
    fn branch_indexing_checked() {
        let s = spec("C(3,-4)");
        assert!(matches!(
            branch_root(&s, 3.0, 5, 1e-10),
            Err(Error::NoSuchBranch { .. })
        ));
        let grid = vec![2.5, 3.0];
        assert!(trace_branch(&s, 1, &grid, 1e-10).is_ok());
    }
}
