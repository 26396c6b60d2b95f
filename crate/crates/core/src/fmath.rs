//! Float math shim: in `std` builds the inherent `f64` methods are used; in
//! `no_std` builds this trait supplies the same method names through `libm`.

#![allow(dead_code)]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt: Sized {
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn powf(self, e: Self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn tan(self) -> Self;
    fn atan(self) -> Self;
    fn tanh(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn acosh(self) -> Self;
    fn abs(self) -> Self;
    fn signum(self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn exp_m1(self) -> f64 {
        libm::expm1(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn ln_1p(self) -> f64 {
        libm::log1p(self)
    }
    fn powf(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
    fn powi(self, n: i32) -> f64 {
        libm::pow(self, n as f64)
    }
    fn tan(self) -> f64 {
        libm::tan(self)
    }
    fn atan(self) -> f64 {
        libm::atan(self)
    }
    fn tanh(self) -> f64 {
        libm::tanh(self)
    }
    fn sinh(self) -> f64 {
        libm::sinh(self)
    }
    fn cosh(self) -> f64 {
        libm::cosh(self)
    }
    fn acosh(self) -> f64 {
        libm::acosh(self)
    }
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn signum(self) -> f64 {
        if self.is_nan() {
            f64::NAN
        } else if self.is_sign_negative() {
            -1.0
        } else {
            1.0
        }
    }
}

