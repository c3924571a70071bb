use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

/// Exact rational.
pub type Q = BigRational;
/// Exact Gaussian rational a + bi.
pub type Cq = Complex<Q>;

/// Gaussian rational from a rational real part.
pub fn cq(re: Q) -> Cq {
    Complex::new(re, Q::zero())
}

/// Gaussian rational p/q.
pub fn cq_int(p: i64, q: i64) -> Cq {
    cq(Q::new(BigInt::from(p), BigInt::from(q)))
}

/// The imaginary unit.
pub fn cq_i() -> Cq {
    Complex::new(Q::zero(), Q::one())
}

/// Coefficient ring usable by the Weyl engine.
pub trait Scalar: Clone + Debug + Num + Neg<Output = Self> {
    /// Magnitude used for residual reporting.
    fn magnitude(&self) -> f64;
    fn from_int(i: i64) -> Self;
}

impl Scalar for Cq {
    fn magnitude(&self) -> f64 {
        use num_traits::ToPrimitive;
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        re.hypot(im)
    }

    fn from_int(i: i64) -> Self {
        cq_int(i, 1)
    }
}

impl Scalar for Complex<f64> {
    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn from_int(i: i64) -> Self {
        Complex::new(i as f64, 0.0)
    }
}

impl Scalar for Q {
    fn magnitude(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().unwrap_or(f64::NAN).abs()
    }

    fn from_int(i: i64) -> Self {
        Q::from_integer(BigInt::from(i))
    }
}
