//! Numerical toolkit for double twist knots `C(2m, ±2n)` and `C(2m+1, -2n)`:
//! real root curves of the Riley polynomial, the associated hyperbolic
//! `SL(2,R)` representations of the knot group, lifting to the universal
//! covering group, and certified intervals of left orderable surgery slopes.
//!
//! The crate is organised around the objects of that computation:
//!
//! - [`chebyshev`]: the polynomials `S_j(v)` defined by
//!   `S_j = v S_{j-1} - S_{j-2}`, their closed forms and root formulas.
//! - [`knot`]: Conway notation parsing and the group-presentation words
//!   `w` and `λ` (longitude) of a double twist knot.
//! - [`riley`]: the Riley polynomial `R(x, y)` and its trace coordinates
//!   `t`, `z` for the three supported families.
//! - [`rootcurve`]: bracketed localisation of the real roots of `R(·, y)`
//!   and continuation of root branches over a `y` grid.
//! - [`representation`]: explicit `SL(2,R)` images of the generators,
//!   matrix word evaluation, and the longitude eigenvalue `L` computed two
//!   independent ways.
//! - [`cover`]: arithmetic in the universal covering group of `SL(2,R)`
//!   and the integer index of a hyperbolic representation.
//! - [`slopes`]: the slope function `f(y) = -log L / log M`, certified
//!   attained slope intervals, and witnesses for individual slopes `p/q`.
//!
//! All computations are plain `f64`; the large-`y` regime is handled by a
//! factored parametrisation that keeps every intermediate quantity
//! representable (see [`slopes`] and `rootcurve::principal_branch_odd`).
//!
//! The crate is `no_std` compatible (`alloc` required): disable default
//! features and enable `libm` to build without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("either the `std` or the `libm` feature must be enabled");

pub mod chebyshev;
pub mod cover;
pub mod error;
mod fmath;
pub mod knot;
pub mod representation;
pub mod riley;
pub mod rootcurve;
pub mod slopes;
mod stable;

pub use error::Error;
pub use knot::{Family, KnotSpec};
// the complex type in `cover`'s public surface comes from here
pub use num_complex;

/// Crate result type.
pub type Result<T> = core::result::Result<T, Error>;
