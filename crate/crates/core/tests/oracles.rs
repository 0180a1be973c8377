//! Cross-checks against independent reference computations: a dense-scan
//! root oracle that never touches the bracket machinery, closed-form
//! values worked out by hand, and the dual-path longitude comparison.

use orderable_slopes::knot::KnotSpec;
use orderable_slopes::{cover, representation, riley, rootcurve, slopes};

fn spec(text: &str) -> KnotSpec {
    KnotSpec::parse(text).unwrap()
}

/// Reference root finder: scan `R(·, y)` on a uniform grid and bisect
/// every sign change. Slow and bracket-free on purpose.
fn dense_scan_roots(s: &KnotSpec, y: f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut x = lo;
    let mut fx = riley::eval(s, x, y);
    while x < hi {
        let x2 = (x + step).min(hi);
        let fx2 = riley::eval(s, x2, y);
        if fx == 0.0 {
            roots.push(x);
        } else if fx * fx2 < 0.0 {
            let (mut a, mut b) = (x, x2);
            let a_pos = fx > 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = riley::eval(s, mid, y);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm > 0.0) == a_pos {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x = x2;
        fx = fx2;
    }
    roots
}

/// Scan window generous enough to contain every root of the sample.
fn scan_window(s: &KnotSpec, y: f64) -> (f64, f64) {
    match s.family {
        orderable_slopes::Family::OddMinus => {
            // the principal root can sit far above y + 2
            let x0 = rootcurve::principal_branch_odd(s, y, 1e-10).unwrap();
            (1e-9, x0 + 10.0)
        }
        _ => (1e-9, y + 2.0 + 30.0 / ((y - 2.0) * (y - 2.0)).max(0.3)),
    }
}

#[test]
fn bracketed_roots_match_dense_scan() {
    for text in ["C(2,4)", "C(2,-4)", "C(4,-6)", "C(4,6)", "C(3,-4)", "C(5,-4)", "C(3,-2)"] {
        let s = spec(text);
        for &y in &[2.1, 3.0, 5.0] {
            let sample = rootcurve::roots_at(&s, y, 1e-10).unwrap();
            let (lo, hi) = scan_window(&s, y);
            let scanned = dense_scan_roots(&s, y, lo, hi, 1e-4);
            assert_eq!(
                scanned.len(),
                s.n as usize,
                "{text} y={y}: oracle found {scanned:?}"
            );
            for &x in &sample.roots {
                let best = scanned.iter().map(|r| (r - x).abs()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-8 * x.abs().max(1.0), "{text} y={y}: root {x} vs {scanned:?}");
            }
            for &r in &sample.residuals {
                assert!(r < 1e-10 * residual_allowance(&s, y), "{text} y={y}");
            }
        }
    }
}

fn residual_allowance(s: &KnotSpec, y: f64) -> f64 {
    // |R| scales with the leading coefficient times xⁿ
    let c = riley::coeffs(s, y).unwrap();
    let lc = c.last().copied().unwrap_or(1.0).abs();
    (lc * (y + 40.0f64).powi(s.n as i32)).max(1.0)
}

#[test]
fn frozen_principal_root_exact_value() {
    // C(3,-4), y = 3: R reduces to 8x² - 80x + 199, so the principal
    // root is exactly 5 + √2/4 (worked out by hand, cross-checked by
    // the dense scan)
    let s = spec("C(3,-4)");
    let expect = 5.0 + core::f64::consts::SQRT_2 / 4.0;
    let x0 = rootcurve::principal_branch_odd(&s, 3.0, 1e-12).unwrap();
    assert!((x0 - expect).abs() < 1e-12, "{x0} vs {expect}");
    let scanned = dense_scan_roots(&s, 3.0, 5.0, 7.0, 1e-4);
    assert_eq!(scanned.len(), 1);
    assert!((scanned[0] - expect).abs() < 1e-9);
}

#[test]
fn frozen_principal_root_y_ten() {
    // C(3,-4), y = 10: dense-scan + bisection reference value
    let s = spec("C(3,-4)");
    let x0 = rootcurve::principal_branch_odd(&s, 10.0, 1e-12).unwrap();
    let scanned = dense_scan_roots(&s, 10.0, 12.0, 14.0, 1e-5);
    assert_eq!(scanned.len(), 1);
    assert!((x0 - scanned[0]).abs() < 1e-8, "{x0} vs {}", scanned[0]);
    // frozen from the oracle (and the exact quadratic 729x² - 17559x
    // + 105731): x(10) = (17559 + √6885)/1458
    assert!((x0 - 12.100_120_644_798).abs() < 1e-9, "{x0}");
}

#[test]
fn longitude_dual_path_at_roots() {
    // the closed form against the word evaluation, every family
    let mut checked = 0;
    for text in ["C(2,4)", "C(2,-4)", "C(4,-6)", "C(4,6)", "C(3,-4)", "C(5,-4)", "C(3,-2)"] {
        let s = spec(text);
        for &y in &[2.3, 3.0, 4.0, 6.0] {
            let sample = rootcurve::roots_at(&s, y, 1e-10).unwrap();
            for &x in &sample.roots {
                if x < 4.0 + 1e-9 {
                    continue; // elliptic meridian
                }
                let m_eig = representation::meridian_from_x(x).unwrap();
                let lc = representation::longitude_closed(&s, m_eig, y).unwrap();
                if lc.abs() < 1e-2 {
                    continue; // the word path cannot resolve a tiny eigenvalue
                    // inside a huge-norm matrix; skip where |L| is below the
                    // evaluation noise floor
                }
                let lw = representation::longitude_word(&s, m_eig, y, 1e-8).unwrap();
                assert!(
                    (lc - lw).abs() < 1e-8 * lc.abs(),
                    "{text} y={y} x={x}: {lc} vs {lw}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 40, "only {checked} dual-path samples");
}

#[test]
fn relation_residual_discriminates_locus() {
    for text in ["C(2,4)", "C(4,-6)", "C(3,-4)"] {
        let s = spec(text);
        let y = 3.0;
        let sample = rootcurve::roots_at(&s, y, 1e-10).unwrap();
        for &x in &sample.roots {
            if x < 4.0 {
                continue;
            }
            let m_eig = representation::meridian_from_x(x).unwrap();
            assert!(representation::relation_residual(&s, m_eig, y) < 1e-8, "{text} x={x}");
        }
        // generic off-locus probe
        let m_eig = representation::meridian_from_x(y + 3.0).unwrap();
        assert!(representation::relation_residual(&s, m_eig, y) > 1e-3, "{text}");
    }
}

#[test]
fn reducible_point_has_index_zero() {
    // y = 2 zeroes the lower-left of ρ(b) exactly; the branch through a
    // reducible representation has index 0
    for text in ["C(3,-4)", "C(5,-4)", "C(3,-6)"] {
        let s = spec(text);
        let x = rootcurve::principal_branch_odd(&s, 2.0, 1e-10).unwrap();
        let m_eig = representation::meridian_from_x(x).unwrap();
        let rep = representation::sample(&s, x, 2.0, 1e-7).unwrap();
        assert!(rep.reducible, "{text}");
        assert_eq!(rep.rho_b.m21, 0.0, "{text}");
        assert_eq!(cover::rep_index(&s, m_eig, 2.0).unwrap(), 0, "{text}");
    }
}

#[test]
fn index_constant_along_principal_branch() {
    for text in ["C(3,-4)", "C(5,-4)"] {
        let s = spec(text);
        let y_left = s.y_left();
        for i in 0..25 {
            let y = y_left + 0.05 + (30.0f64 / 0.05).powf(i as f64 / 24.0) * 0.05;
            let x = rootcurve::principal_branch_odd(&s, y, 1e-10).unwrap();
            let m_eig = representation::meridian_from_x(x).unwrap();
            assert_eq!(cover::rep_index(&s, m_eig, y).unwrap(), 0, "{text} y={y}");
        }
    }
}

#[test]
fn slope_function_hits_known_value() {
    // f at the exact root x = 5 + √2/4 of C(3,-4), y = 3, assembled
    // from the two independent L paths
    let s = spec("C(3,-4)");
    let x = 5.0 + core::f64::consts::SQRT_2 / 4.0;
    let m_eig = representation::meridian_from_x(x).unwrap();
    let lc = representation::longitude_closed(&s, m_eig, 3.0).unwrap();
    let lw = representation::longitude_word(&s, m_eig, 3.0, 1e-9).unwrap();
    assert!((lc - lw).abs() < 1e-10 * lc.abs());
    let f_direct = -lc.ln() / m_eig.ln();
    let sample = slopes::slope_at(&s, 0, 3.0, 1e-10).unwrap();
    assert!((sample.f - f_direct).abs() < 1e-7, "{} vs {f_direct}", sample.f);
}

#[test]
fn even_minus_interior_matches_even_plus_structure() {
    // brackets are shared between the even families; the roots differ
    let plus = spec("C(4,6)");
    let minus = spec("C(4,-6)");
    let y = 3.0;
    let bp = rootcurve::brackets(&plus, y).unwrap();
    let bm = rootcurve::brackets(&minus, y).unwrap();
    assert_eq!(bp, bm);
    let rp = rootcurve::roots_at(&plus, y, 1e-10).unwrap();
    let rm = rootcurve::roots_at(&minus, y, 1e-10).unwrap();
    assert_ne!(rp.roots, rm.roots);
}
