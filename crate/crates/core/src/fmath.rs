//! Float math shim: `std` intrinsics when available, `libm` otherwise.

#![allow(dead_code)]

macro_rules! unary {
    ($name:ident, $std:ident, $libm:ident) => {
        #[inline]
        pub fn $name(x: f64) -> f64 {
            #[cfg(feature = "std")]
            {
                x.$std()
            }
            #[cfg(not(feature = "std"))]
            {
                libm::$libm(x)
            }
        }
    };
}

unary!(sqrt, sqrt, sqrt);
unary!(ln, ln, log);
unary!(ln_1p, ln_1p, log1p);
unary!(exp, exp, exp);
unary!(cos, cos, cos);
unary!(sin, sin, sin);
unary!(round, round, round);
unary!(floor, floor, floor);
unary!(ceil, ceil, ceil);

/// Fused multiply-add.
#[inline]
pub fn fma(a: f64, b: f64, c: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        a.mul_add(b, c)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::fma(a, b, c)
    }
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        y.atan2(x)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::atan2(y, x)
    }
}

/// Integer power by repeated squaring; exponents here are small.
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    #[cfg(feature = "std")]
    {
        x.powi(n)
    }
    #[cfg(not(feature = "std"))]
    {
        let mut base = if n < 0 { 1.0 / x } else { x };
        let mut e = n.unsigned_abs();
        let mut acc = 1.0;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}
