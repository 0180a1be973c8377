//! Explicit `SL(2,R)` representations of the knot group.
//!
//! A nonabelian representation with squared meridian trace `x = (M + M⁻¹)²`
//! and trace coordinate `y` is, up to conjugation,
//!
//! ```text
//! ρ(a) = [ M  1  ]        ρ(b) = [  M   0  ]
//!        [ 0  M⁻¹]               [ 2-y  M⁻¹]
//! ```
//!
//! `(M, y)` lies on the representation variety exactly when the group
//! relation `a wᵖ = wᵖ b` holds, i.e. when `R(x, y) = 0`; the residual of
//! that matrix equation is the off-variety detector used everywhere.
//!
//! On the variety, the longitude image is upper triangular,
//! `ρ(λ) = [[L, *], [0, L⁻¹]]`, and `L` is available two independent
//! ways: the closed form [`longitude_closed`] in the values `S_j(y)`, and
//! the direct word evaluation [`longitude_word`]. Their agreement is the
//! crate's main cross-check of the whole representation pipeline.

use crate::error::Error;
use crate::fmath;
use crate::knot::{Family, Gen, KnotSpec, Word};
use crate::riley;
use crate::Result;

/// Word length beyond which the running product is renormalised back to
/// determinant one after every letter; long longitude words at large `M`
/// otherwise accumulate enough drift to spoil the triangularity test.
const RENORM_LEN: usize = 50;

/// A real 2×2 matrix, in this crate always unimodular up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    /// Identity matrix.
    pub const IDENTITY: Mat2 = Mat2 { m11: 1.0, m12: 0.0, m21: 0.0, m22: 1.0 };

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    /// Determinant, via the compensated product difference: the naive
    /// `ad - bc` has absolute error of order `entries²·ε`, which makes
    /// unit determinants unmeasurable once word products grow large.
    pub fn det(&self) -> f64 {
        let w = self.m12 * self.m21;
        let err = fmath::fma(self.m12, self.m21, -w);
        fmath::fma(self.m11, self.m22, -w) - err
    }

    /// Trace.
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    /// Inverse of a determinant-one matrix (adjugate).
    pub fn inv_unimodular(&self) -> Mat2 {
        Mat2 { m11: self.m22, m12: -self.m12, m21: -self.m21, m22: self.m11 }
    }

    /// Largest absolute entry difference against another matrix.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let d1 = (self.m11 - rhs.m11).abs();
        let d2 = (self.m12 - rhs.m12).abs();
        let d3 = (self.m21 - rhs.m21).abs();
        let d4 = (self.m22 - rhs.m22).abs();
        d1.max(d2).max(d3).max(d4)
    }

    /// Scale back to determinant one. Only mild drift is correctable:
    /// once cancellation has pushed the measured determinant far from
    /// one, the unimodular structure is gone from the stored entries
    /// and scaling would just launder garbage, so such matrices pass
    /// through unchanged.
    fn renormalized(&self) -> Mat2 {
        let d = self.det();
        if !(d > 0.25 && d < 4.0) {
            return *self;
        }
        let s = 1.0 / fmath::sqrt(d);
        Mat2 { m11: self.m11 * s, m12: self.m12 * s, m21: self.m21 * s, m22: self.m22 * s }
    }
}

/// The meridian eigenvalue `M = (√x + √(x-4))/2 ≥ 1` from the squared
/// trace `x ≥ 4`; smaller `x` means an elliptic meridian, which is out
/// of scope.
pub fn meridian_from_x(x: f64) -> Result<f64> {
    if !(x >= 4.0) {
        return Err(Error::EllipticRegime { x });
    }
    Ok(0.5 * (fmath::sqrt(x) + fmath::sqrt(x - 4.0)))
}

/// The generator images `(ρ(a), ρ(b))` for eigenvalue `M` and trace
/// coordinate `y`. At `y = 2` the lower-left of `ρ(b)` vanishes exactly
/// and the representation is reducible.
pub fn build_rep(m_eig: f64, y: f64) -> (Mat2, Mat2) {
    let inv = 1.0 / m_eig;
    (
        Mat2 { m11: m_eig, m12: 1.0, m21: 0.0, m22: inv },
        Mat2 { m11: m_eig, m12: 0.0, m21: 2.0 - y, m22: inv },
    )
}

/// Left-to-right product of the generator images over a word.
pub fn eval_word(word: &Word, rho_a: &Mat2, rho_b: &Mat2) -> Mat2 {
    let inv_a = rho_a.inv_unimodular();
    let inv_b = rho_b.inv_unimodular();
    let renorm = word.letter_len() > RENORM_LEN;
    let mut acc = Mat2::IDENTITY;
    for &(gen, exp) in word.runs() {
        let step = match (gen, exp > 0) {
            (Gen::A, true) => rho_a,
            (Gen::A, false) => &inv_a,
            (Gen::B, true) => rho_b,
            (Gen::B, false) => &inv_b,
        };
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(step);
            if renorm {
                acc = acc.renormalized();
            }
        }
    }
    acc
}

/// Max-abs entry difference of `ρ(a wᵖ)` and `ρ(wᵖ b)`: near zero
/// exactly when `(M, y)` lies on the zero locus of `R`.
pub fn relation_residual(spec: &KnotSpec, m_eig: f64, y: f64) -> f64 {
    let (rho_a, rho_b) = build_rep(m_eig, y);
    let wp = crate::knot::word_w(spec).pow(spec.p);
    let img_wp = eval_word(&wp, &rho_a, &rho_b);
    let lhs = rho_a.mul(&img_wp);
    let rhs = img_wp.mul(&rho_b);
    lhs.max_abs_diff(&rhs)
}

/// The longitude eigenvalue `L` in closed form.
///
/// With `G = S_m(y)`, `H = S_{m-1}(y)`, `F = S_{m-2}(y)`:
///
/// ```text
/// L = - (M⁻¹(G-H) - M(H-F)) / (M(G-H) - M⁻¹(H-F))       (k even)
/// L = - M^{4p} (M⁻¹G - MH) / (MG - M⁻¹H)                (k odd)
/// ```
pub fn longitude_closed(spec: &KnotSpec, m_eig: f64, y: f64) -> Result<f64> {
    let inv = 1.0 / m_eig;
    match spec.family {
        Family::EvenPlus | Family::EvenMinus => {
            let d = riley::g_minus_h(spec, y);
            let hf = riley::h_minus_f(spec, y);
            let den = m_eig * d - inv * hf;
            if den == 0.0 {
                return Err(Error::VanishingDenominator { what: "closed-form longitude" });
            }
            Ok(-(inv * d - m_eig * hf) / den)
        }
        Family::OddMinus => {
            let (g, h) = riley::gh(spec, y);
            let den = m_eig * g - inv * h;
            if den == 0.0 {
                return Err(Error::VanishingDenominator { what: "closed-form longitude" });
            }
            Ok(-fmath::powi(m_eig, 4 * spec.p as i32) * (inv * g - m_eig * h) / den)
        }
    }
}

/// The longitude eigenvalue from the word evaluation of `λ`.
///
/// Valid only on the zero locus: the lower-left entry of `ρ(λ)` must be
/// below `tol`, otherwise the point is off the representation variety
/// and [`Error::NotUpperTriangular`] is returned.
pub fn longitude_word(spec: &KnotSpec, m_eig: f64, y: f64, tol: f64) -> Result<f64> {
    let (rho_a, rho_b) = build_rep(m_eig, y);
    let lambda = crate::knot::word_longitude(spec);
    let img = eval_word(&lambda, &rho_a, &rho_b);
    if !(img.m21.abs() < tol) {
        return Err(Error::NotUpperTriangular { lower_left: img.m21 });
    }
    Ok(img.m11)
}

/// A verified representation sample at one point of the variety.
#[derive(Debug, Clone, Copy)]
pub struct RepSample {
    /// Trace coordinate.
    pub y: f64,
    /// Squared meridian trace.
    pub x: f64,
    /// Meridian eigenvalue `M > 1`.
    pub m_eig: f64,
    /// `ρ(a)`.
    pub rho_a: Mat2,
    /// `ρ(b)`.
    pub rho_b: Mat2,
    /// Max-abs entry defect of the group relation.
    pub relation_residual: f64,
    /// `L` from the closed form.
    pub l_closed: f64,
    /// `L` from evaluating the longitude word.
    pub l_word: f64,
    /// Whether the representation is reducible (`ρ(b)` lower-left zero).
    pub reducible: bool,
}

/// Build and cross-check the representation at `(x, y)`; `tol` bounds
/// the triangularity defect of the longitude image.
pub fn sample(spec: &KnotSpec, x: f64, y: f64, tol: f64) -> Result<RepSample> {
    let m_eig = meridian_from_x(x)?;
    let (rho_a, rho_b) = build_rep(m_eig, y);
    let relation = relation_residual(spec, m_eig, y);
    let l_closed = longitude_closed(spec, m_eig, y)?;
    let l_word = longitude_word(spec, m_eig, y, tol)?;
    Ok(RepSample {
        y,
        x,
        m_eig,
        rho_a,
        rho_b,
        relation_residual: relation,
        l_closed,
        l_word,
        reducible: rho_b.m21 == 0.0,
    })
}
