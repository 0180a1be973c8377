//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while parsing a knot or running the
/// numerical pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The Conway string did not match `C(<int>,<int>)`.
    ConwaySyntax(String),
    /// `C(k,l)` with `kl` odd is a two-component link, not a knot.
    TwoComponentLink { k: i64, l: i64 },
    /// `|kl| < 3`: the diagram does not define a nontrivial knot here.
    ParametersTooSmall { k: i64, l: i64 },
    /// The knot is a genuine two-bridge knot but lies outside the three
    /// families this crate computes with (e.g. `C(2m+1, 2n)` or a mirror
    /// of a supported form).
    UnsupportedFamily { k: i64, l: i64 },
    /// A Chebyshev root formula was asked for `n < 1`.
    NonPositiveDegree { n: i64 },
    /// `cheb_eval_stable` needs `xi > 1`.
    XiOutOfRange { xi: f64 },
    /// `y` lies outside the admissible range of the family.
    YOutOfRange { y: f64, min: f64 },
    /// The leading coefficient of `R(·, y)` vanished; the named factor
    /// is the one that became zero.
    DegenerateLeadingCoeff { factor: &'static str, y: f64 },
    /// The sign pattern at bracket `j` did not match the proven
    /// alternation; indicates numeric breakdown at this `y`.
    BracketSignCheck { j: usize, y: f64 },
    /// A bisection/Newton solve failed to converge.
    NoConvergence { what: &'static str, y: f64 },
    /// Two root branches came closer than the tolerance at this `y`.
    BranchCollision { y: f64 },
    /// The continuity gate between consecutive trace samples failed even
    /// after refinement.
    ContinuityGate { y: f64 },
    /// There is no branch with this index for the given knot.
    NoSuchBranch { branch: usize, count: usize },
    /// `meridian_from_x` needs `x >= 4`; smaller `x` means an elliptic
    /// meridian, which this crate does not handle.
    EllipticRegime { x: f64 },
    /// A closed-form denominator vanished.
    VanishingDenominator { what: &'static str },
    /// The evaluated longitude image was not upper triangular: the point
    /// `(M, y)` is off the representation variety.
    NotUpperTriangular { lower_left: f64 },
    /// The covering-map preimage formula has a zero denominator.
    SingularLift,
    /// The group relation failed to close up in the cover: `(M, y)` is
    /// off the zero locus of the Riley polynomial.
    OffZeroLocus { defect: f64 },
    /// The operation is only defined for the named family.
    WrongFamily { needed: &'static str },
    /// The element does not project to a hyperbolic matrix.
    NotHyperbolic { trace: f64 },
    /// `ω` sits within tolerance of a band boundary `kπ ± π/2`.
    AmbiguousIndex { omega: f64 },
    /// The requested slope produced no sign change of
    /// `p·log M + q·log L` on the sampled branch.
    SlopeNotAttained { p: i64, q: i64 },
    /// A witness was found but the representation index `k` does not
    /// satisfy the surgery condition (`k = 0`, or `p | k`).
    IndexCondition { p: i64, index: i64 },
    /// A slope query needs `gcd(p, q) = 1` and `q >= 1`.
    InvalidSlope { p: i64, q: i64 },
    /// An intermediate quantity left the representable range.
    NumericOverflow { what: &'static str, y: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            ConwaySyntax(s) => write!(f, "cannot parse {s:?} as C(<int>,<int>)"),
            TwoComponentLink { k, l } => {
                write!(f, "C({k},{l}) has kl odd: a two-component link, not a knot")
            }
            ParametersTooSmall { k, l } => write!(f, "C({k},{l}) needs |kl| >= 3"),
            UnsupportedFamily { k, l } => write!(
                f,
                "C({k},{l}) is outside the supported families C(2m,2n), C(2m,-2n), C(2m+1,-2n)"
            ),
            NonPositiveDegree { n } => write!(f, "degree must be >= 1, got {n}"),
            XiOutOfRange { xi } => write!(f, "xi must exceed 1, got {xi}"),
            YOutOfRange { y, min } => write!(f, "y = {y} is not admissible (need y > {min})"),
            DegenerateLeadingCoeff { factor, y } => {
                write!(f, "leading coefficient vanished at y = {y}: factor {factor} is zero")
            }
            BracketSignCheck { j, y } => {
                write!(f, "sign alternation failed at bracket {j}, y = {y}")
            }
            NoConvergence { what, y } => write!(f, "{what} did not converge at y = {y}"),
            BranchCollision { y } => write!(f, "two root branches collided near y = {y}"),
            ContinuityGate { y } => {
                write!(f, "continuity gate failed near y = {y} despite refinement")
            }
            NoSuchBranch { branch, count } => {
                write!(f, "branch {branch} does not exist (the knot has {count} branches)")
            }
            EllipticRegime { x } => write!(f, "x = {x} < 4: elliptic meridian, out of scope"),
            VanishingDenominator { what } => write!(f, "denominator vanished in {what}"),
            NotUpperTriangular { lower_left } => write!(
                f,
                "longitude image is not upper triangular (lower-left {lower_left:e}); \
                 the point is off the representation variety"
            ),
            SingularLift => write!(f, "trace and off-diagonal difference both vanish: \
                 the preimage formula is singular"),
            OffZeroLocus { defect } => {
                write!(f, "group relation defect {defect:e} in the cover: point is off the zero locus")
            }
            WrongFamily { needed } => write!(f, "operation requires a {needed} knot"),
            NotHyperbolic { trace } => {
                write!(f, "element is not hyperbolic (projected trace {trace})")
            }
            AmbiguousIndex { omega } => {
                write!(f, "omega = {omega} is within tolerance of a band boundary")
            }
            SlopeNotAttained { p, q } => {
                write!(f, "slope {p}/{q} is not attained on the sampled branch")
            }
            IndexCondition { p, index } => {
                write!(f, "witness found but index {index} fails the condition for p = {p}")
            }
            InvalidSlope { p, q } => write!(f, "slope {p}/{q} must have gcd(p,q) = 1 and q >= 1"),
            NumericOverflow { what, y } => {
                write!(f, "{what} is not representable at y = {y}")
            }
        }
    }
}

impl core::error::Error for Error {}
