//! Arithmetic in the universal covering group of `SL(2,R)`.
//!
//! Elements are pairs `(γ, ω)` with `γ` complex, `|γ| < 1`, and `ω` real
//! and unbounded. The covering map `ψ` sends `(γ, ω)` to the matrix
//! reconstructed in [`project`]; its preimages of `A = [[a,b],[c,d]]` are
//!
//! ```text
//! ψ⁻¹(A) = ( (a-d+(b+c)i) / (a+d+(b-c)i),  arg(a+d+(b-c)i) + 2nπ )
//! ```
//!
//! with `arg` valued in `(-π, π]`. Multiplication is
//!
//! ```text
//! γ'' = (γ + γ' e^{-2iω}) / (1 + γ̄ γ' e^{-2iω})
//! ω'' = ω + ω' + arg(1 + γ̄ γ' e^{-2iω})
//! ```
//!
//! A hyperbolic element is conjugate to a unique normal form
//! `(tanh a, kπ)` exactly when `kπ - π/2 < ω < kπ + π/2`; that integer
//! `k` is the element's band index, and the index of a representation is
//! the band index of its lifted longitude. The index is constant along a
//! connected curve of hyperbolic representations, and a curve containing
//! a reducible representation has index zero — the two facts the slope
//! certificates rest on.

use crate::error::Error;
use crate::fmath;
use crate::knot::{Gen, KnotSpec, Word};
use crate::representation::{build_rep, Mat2};
use crate::Result;
use core::f64::consts::PI;
use num_complex::Complex64;

/// An element `(γ, ω)` of the universal covering group, `|γ| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverElement {
    /// Disc coordinate, `|γ| < 1`.
    pub gamma: Complex64,
    /// Unbounded angle coordinate.
    pub omega: f64,
}

impl CoverElement {
    /// The identity `(0, 0)`.
    pub const IDENTITY: CoverElement =
        CoverElement { gamma: Complex64 { re: 0.0, im: 0.0 }, omega: 0.0 };

    /// A central element `(0, ω)`.
    pub fn central(omega: f64) -> CoverElement {
        CoverElement { gamma: Complex64::new(0.0, 0.0), omega }
    }
}

/// Argument of a nonzero complex number in `(-π, π]`.
fn arg_pi(z: Complex64) -> f64 {
    let a = fmath::atan2(z.im, z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

fn unit_phase(theta: f64) -> Complex64 {
    Complex64::new(fmath::cos(theta), fmath::sin(theta))
}

/// Keep the disc coordinate strictly inside the unit disc; rounding can
/// push near-boundary products onto or past it for elements with huge
/// translation length.
fn clamp_disc(gamma: Complex64) -> Complex64 {
    let n2 = gamma.norm_sqr();
    if n2 >= 1.0 {
        gamma * (1.0 - 1e-15) / fmath::sqrt(n2)
    } else {
        gamma
    }
}

/// Group multiplication `g · h`.
pub fn mul(g: &CoverElement, h: &CoverElement) -> CoverElement {
    let e = unit_phase(-2.0 * g.omega);
    let den = Complex64::new(1.0, 0.0) + g.gamma.conj() * h.gamma * e;
    // |γ̄γ'| < 1 keeps den in the right half plane, so arg is tame
    CoverElement {
        gamma: clamp_disc((g.gamma + h.gamma * e) / den),
        omega: g.omega + h.omega + arg_pi(den),
    }
}

/// Group inverse: `(-γ e^{2iω}, -ω)`.
pub fn inv(g: &CoverElement) -> CoverElement {
    CoverElement { gamma: -g.gamma * unit_phase(2.0 * g.omega), omega: -g.omega }
}

/// The branch-`n` preimage of `A` under the covering map.
///
/// Fails when `a+d+(b-c)i = 0` (trace-zero rotations), where the formula
/// is singular.
pub fn lift(a: &Mat2, branch_n: i64) -> Result<CoverElement> {
    let zeta = Complex64::new(a.m11 + a.m22, a.m12 - a.m21);
    if zeta.norm_sqr() == 0.0 {
        return Err(Error::SingularLift);
    }
    let eta = Complex64::new(a.m11 - a.m22, a.m12 + a.m21);
    Ok(CoverElement {
        gamma: clamp_disc(eta / zeta),
        omega: arg_pi(zeta) + 2.0 * branch_n as f64 * PI,
    })
}

/// The covering map: reconstruct the matrix under `(γ, ω)`.
///
/// Uses `|ζ|² (1 - |γ|²) = 4 det A = 4` to recover `|ζ| = 2/√(1-|γ|²)`,
/// sets the phase of `ζ` from `ω` reduced to `(-π, π]`, and solves the
/// four linear relations for the entries.
pub fn project(g: &CoverElement) -> Mat2 {
    let norm = 2.0 / fmath::sqrt((1.0 - g.gamma.norm_sqr()).max(f64::MIN_POSITIVE));
    let mut reduced = g.omega - 2.0 * PI * fmath::round(g.omega / (2.0 * PI));
    if reduced > PI {
        reduced -= 2.0 * PI;
    } else if reduced <= -PI {
        reduced += 2.0 * PI;
    }
    let zeta = norm * unit_phase(reduced);
    let eta = g.gamma * zeta;
    Mat2 {
        m11: 0.5 * (zeta.re + eta.re),
        m22: 0.5 * (zeta.re - eta.re),
        m12: 0.5 * (zeta.im + eta.im),
        m21: 0.5 * (eta.im - zeta.im),
    }
}

/// Band index of a hyperbolic element: the unique `k` with
/// `kπ - π/2 < ω < kπ + π/2`.
///
/// Fails with [`Error::NotHyperbolic`] when the projection has
/// `|trace| <= 2`, and with [`Error::AmbiguousIndex`] when `ω` sits
/// within `1e-9` of a band boundary (which cannot happen for an exactly
/// hyperbolic element, so it signals numeric breakdown).
pub fn hyperbolic_index(g: &CoverElement) -> Result<i64> {
    let k = band_of(g)?;
    let trace = project(g).trace();
    if !(trace.abs() > 2.0) {
        return Err(Error::NotHyperbolic { trace });
    }
    Ok(k)
}

/// The band `k` with `kπ - π/2 < ω < kπ + π/2`, without the
/// hyperbolicity test.
fn band_of(g: &CoverElement) -> Result<i64> {
    let k = fmath::floor(g.omega / PI + 0.5);
    let lower = (k - 0.5) * PI;
    let upper = (k + 0.5) * PI;
    // a genuinely hyperbolic element never sits at a band boundary, so
    // landing there within tolerance means the input broke down
    if (g.omega - lower).abs() < 1e-9 || (upper - g.omega).abs() < 1e-9 {
        return Err(Error::AmbiguousIndex { omega: g.omega });
    }
    Ok(k as i64)
}

/// Evaluate a word letter by letter with branch-0 lifts of the four
/// letter matrices, compensating the `ω` accumulation so that long words
/// do not drift across band boundaries.
fn lift_word(word: &Word, rho_a: &Mat2, rho_b: &Mat2) -> Result<CoverElement> {
    let letters = [
        lift(rho_a, 0)?,
        lift(&rho_a.inv_unimodular(), 0)?,
        lift(rho_b, 0)?,
        lift(&rho_b.inv_unimodular(), 0)?,
    ];
    let mut gamma = Complex64::new(0.0, 0.0);
    let mut omega = 0.0f64;
    let mut comp = 0.0f64; // Kahan carry for omega
    for &(gen, exp) in word.runs() {
        let step = match (gen, exp > 0) {
            (Gen::A, true) => &letters[0],
            (Gen::A, false) => &letters[1],
            (Gen::B, true) => &letters[2],
            (Gen::B, false) => &letters[3],
        };
        for _ in 0..exp.unsigned_abs() {
            let e = unit_phase(-2.0 * omega);
            let den = Complex64::new(1.0, 0.0) + gamma.conj() * step.gamma * e;
            gamma = clamp_disc((gamma + step.gamma * e) / den);
            let delta = step.omega + arg_pi(den) - comp;
            let sum = omega + delta;
            comp = (sum - omega) - delta;
            omega = sum;
        }
    }
    Ok(CoverElement { gamma, omega })
}

/// The index of the representation at `(M, y)`: the band index of the
/// lifted longitude.
///
/// The longitude word has zero total exponent sum, so its lift does not
/// depend on which branch each generator is lifted to; the letter-wise
/// branch-0 evaluation is corrected by the (integer) central defect of
/// the group relation measured in the cover, which makes the result
/// exactly the value of an honest lift homomorphism.
///
/// At a reducible point (`y = 2`) the longitude eigenvalue is exactly 1
/// — the diagonal part of an upper-triangular representation is
/// multiplicative and the longitude has zero exponent sum — so `ρ(λ)`
/// is parabolic there, not hyperbolic. The band of the lift is still
/// well defined and continuous across such a point, so classification
/// here tolerates the parabolic boundary and only rejects genuinely
/// elliptic longitudes (`|trace| < 2` beyond rounding).
pub fn rep_index(spec: &KnotSpec, m_eig: f64, y: f64) -> Result<i64> {
    let (rho_a, rho_b) = build_rep(m_eig, y);
    let w_p = crate::knot::word_w(spec).pow(spec.p);

    // central defect of the relation: F(a wᵖ) = F(wᵖ b) · (0, 2πc)
    let mut aw = Word::new();
    aw.push(Gen::A, 1);
    aw.extend(&w_p);
    let mut wb = w_p.clone();
    wb.push(Gen::B, 1);
    let lhs = lift_word(&aw, &rho_a, &rho_b)?;
    let rhs = lift_word(&wb, &rho_a, &rho_b)?;
    let defect = (lhs.omega - rhs.omega) / (2.0 * PI);
    let c = fmath::round(defect);
    let off = (lhs.gamma - rhs.gamma).norm_sqr().max((defect - c) * (defect - c));
    if !(off < 1e-8) {
        return Err(Error::OffZeroLocus { defect: fmath::sqrt(off) });
    }

    let lambda = crate::knot::word_longitude(spec);
    let mut lifted = lift_word(&lambda, &rho_a, &rho_b)?;
    // honest-lift correction; vanishes for the even families where the
    // longitude has zero exponent sum in each generator separately
    let e_a = lambda.exponent_sum_of(Gen::A) as f64;
    lifted.omega -= 2.0 * PI * e_a * c;
    let k = band_of(&lifted)?;
    let trace = project(&lifted).trace();
    if trace.abs() < 2.0 - 1e-9 {
        return Err(Error::NotHyperbolic { trace });
    }
    Ok(k)
}
