//! Double twist knots `C(k, l)` in Conway notation and their knot-group
//! words.
//!
//! The supported knots are the three families with hyperbolic
//! representation results:
//!
//! - `C(2m, 2n)` ([`Family::EvenPlus`]),
//! - `C(2m, -2n)` ([`Family::EvenMinus`]),
//! - `C(2m+1, -2n)` ([`Family::OddMinus`]),
//!
//! with `m, n >= 1`. Internally every knot is kept in the normal form
//! `C(k, -2p)`, whose knot group is `⟨a, b | a wᵖ = wᵖ b⟩` with
//!
//! ```text
//! w = (a b⁻¹)^m (a⁻¹ b)^m        if k = 2m,
//! w = (a b⁻¹)^m a b (a⁻¹ b)^m    if k = 2m+1,
//! ```
//!
//! and canonical longitude `λ = (wᵖ (wᵖ)* a^(-2ε))⁻¹`, where `u*` is `u`
//! read backwards and `ε = 0` for even `k`, `ε = 2p` for odd `k`.
//!
//! Parsing accepts any `C(a,b)` that is the *same knot* (no mirroring) as
//! a supported form, using the identity that `C(a,b)` and `C(-b,-a)` are
//! the same knot. Mirrors of supported knots are rejected: surgery slopes
//! are not mirror invariant, so silently mirroring would flip every
//! reported interval. `C(2m+1, 2n)` is likewise rejected with a distinct
//! error, since no theorem here covers it.

use crate::error::Error;
use crate::Result;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The three supported double twist families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `C(2m, 2n)`; normal form `C(k, -2p)` with `p = -n`.
    EvenPlus,
    /// `C(2m, -2n)`; `p = n`.
    EvenMinus,
    /// `C(2m+1, -2n)`; `p = n`.
    OddMinus,
}

/// A double twist knot in the normal form `C(k, -2p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnotSpec {
    /// Which of the three families the knot belongs to.
    pub family: Family,
    /// Twist parameter `m >= 1`; `k` is `2m` or `2m+1`.
    pub m: i64,
    /// Twist parameter `n >= 1`; the second Conway entry is `±2n`.
    pub n: i64,
    /// First Conway entry of the normal form, `2m` or `2m+1`.
    pub k: i64,
    /// Exponent of `w` in the group relation `a wᵖ = wᵖ b`:
    /// `-n` for `EvenPlus`, `n` otherwise.
    pub p: i64,
    /// Longitude correction exponent: `0` for even `k`, `2p` for odd.
    pub epsilon: i64,
}

impl KnotSpec {
    /// Parse Conway notation `C(<int>,<int>)` (optional whitespace) and
    /// normalise to a supported family.
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = split_conway(text)?;
        if a.checked_mul(b).is_none() {
            return Err(Error::ConwaySyntax(String::from(text)));
        }
        if (a * b) % 2 != 0 {
            return Err(Error::TwoComponentLink { k: a, l: b });
        }
        if (a * b).abs() < 3 {
            return Err(Error::ParametersTooSmall { k: a, l: b });
        }
        // C(a,b) and C(-b,-a) are the same knot; try both readings.
        for (k, l) in [(a, b), (-b, -a)] {
            if let Some(spec) = classify(k, l) {
                return Ok(spec);
            }
        }
        Err(Error::UnsupportedFamily { k: a, l: b })
    }

    /// The left endpoint of the admissible `y` range: `2` for the even
    /// families, `2cos(π/(2m+1))` for the odd one.
    pub fn y_left(&self) -> f64 {
        match self.family {
            Family::EvenPlus | Family::EvenMinus => 2.0,
            Family::OddMinus => {
                2.0 * crate::fmath::cos(core::f64::consts::PI / (2 * self.m + 1) as f64)
            }
        }
    }

    /// Number of root branches of `R(·, y)` (the degree `n` in `x`).
    pub fn branch_count(&self) -> usize {
        self.n as usize
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.k, -2 * self.p)
    }
}

fn classify(k: i64, l: i64) -> Option<KnotSpec> {
    if k < 2 || l == 0 || l % 2 != 0 {
        return None;
    }
    let n = l.abs() / 2;
    if k % 2 == 0 {
        let m = k / 2;
        if l > 0 {
            Some(KnotSpec { family: Family::EvenPlus, m, n, k, p: -n, epsilon: 0 })
        } else {
            Some(KnotSpec { family: Family::EvenMinus, m, n, k, p: n, epsilon: 0 })
        }
    } else if l < 0 && k >= 3 {
        Some(KnotSpec { family: Family::OddMinus, m: (k - 1) / 2, n, k, p: n, epsilon: 2 * n })
    } else {
        None
    }
}

fn split_conway(text: &str) -> Result<(i64, i64)> {
    let err = || Error::ConwaySyntax(String::from(text));
    let s = text.trim();
    let s = s.strip_prefix(['C', 'c']).ok_or_else(err)?.trim_start();
    let s = s.strip_prefix('(').ok_or_else(err)?;
    let s = s.strip_suffix(')').ok_or_else(err)?;
    let (a, b) = s.split_once(',').ok_or_else(err)?;
    let a = a.trim().parse::<i64>().map_err(|_| err())?;
    let b = b.trim().parse::<i64>().map_err(|_| err())?;
    Ok((a, b))
}

/// Free-group generator of the knot group presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    /// Meridian generator `a`.
    A,
    /// Meridian generator `b`.
    B,
}

/// A word in the generators `a, b`, stored run-length encoded with free
/// reduction applied: adjacent runs always use distinct generators and no
/// run has exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    runs: Vec<(Gen, i64)>,
}

impl Word {
    /// The empty word.
    pub fn new() -> Self {
        Word { runs: Vec::new() }
    }

    /// The runs `(generator, exponent)` of the reduced word.
    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.runs
    }

    /// Append `gen^exp`, merging with the last run and dropping
    /// cancellations.
    pub fn push(&mut self, gen: Gen, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                    // the neighbours may now merge; recurse one level
                    if let Some((g2, e2)) = self.runs.pop() {
                        self.push(g2, e2);
                    }
                }
            }
            _ => self.runs.push((gen, exp)),
        }
    }

    /// Concatenate another word onto this one (with reduction).
    pub fn extend(&mut self, other: &Word) {
        for &(g, e) in &other.runs {
            self.push(g, e);
        }
    }

    /// `self^p` for any integer `p` (negative powers invert first).
    pub fn pow(&self, p: i64) -> Word {
        let base = if p < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::new();
        for _ in 0..p.unsigned_abs() {
            out.extend(&base);
        }
        out
    }

    /// The inverse word.
    pub fn inverse(&self) -> Word {
        let mut out = Word::new();
        for &(g, e) in self.runs.iter().rev() {
            out.push(g, -e);
        }
        out
    }

    /// The word read backwards (exponents kept, order reversed).
    pub fn reversed(&self) -> Word {
        let mut out = Word::new();
        for &(g, e) in self.runs.iter().rev() {
            out.push(g, e);
        }
        out
    }

    /// Total exponent sum (the image in `H₁`, where both generators map
    /// to the meridian class).
    pub fn exponent_sum(&self) -> i64 {
        self.runs.iter().map(|&(_, e)| e).sum()
    }

    /// Exponent sum of one generator alone.
    pub fn exponent_sum_of(&self, gen: Gen) -> i64 {
        self.runs.iter().filter(|&&(g, _)| g == gen).map(|&(_, e)| e).sum()
    }

    /// Number of letters counted with multiplicity.
    pub fn letter_len(&self) -> usize {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = match g {
                Gen::A => "a",
                Gen::B => "b",
            };
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The word `w` of the group presentation `⟨a, b | a wᵖ = wᵖ b⟩`.
pub fn word_w(spec: &KnotSpec) -> Word {
    let mut w = Word::new();
    for _ in 0..spec.m {
        w.push(Gen::A, 1);
        w.push(Gen::B, -1);
    }
    if spec.k % 2 != 0 {
        w.push(Gen::A, 1);
        w.push(Gen::B, 1);
    }
    for _ in 0..spec.m {
        w.push(Gen::A, -1);
        w.push(Gen::B, 1);
    }
    w
}

/// The canonical longitude `λ = (wᵖ (wᵖ)* a^(-2ε))⁻¹` for the meridian
/// `μ = a`. Its total exponent sum is zero, which is what makes its lift
/// to the universal cover independent of branch choices.
pub fn word_longitude(spec: &KnotSpec) -> Word {
    let wp = word_w(spec).pow(spec.p);
    let mut u = wp.clone();
    u.extend(&wp.reversed());
    u.push(Gen::A, -2 * spec.epsilon);
    u.inverse()
}
