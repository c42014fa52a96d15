//! Exact complex-rational coefficients.

use num::complex::Complex64;
use num::{BigInt, BigRational, Complex, One, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type Coeff = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Coeff {
    Coeff::new(rat(n, 1), Rational::zero())
}

pub fn real(q: Rational) -> Coeff {
    Coeff::new(q, Rational::zero())
}

/// The imaginary unit.
pub fn imag_unit() -> Coeff {
    Coeff::new(Rational::zero(), Rational::one())
}

pub fn from_bigint(n: BigInt) -> Coeff {
    real(BigRational::from_integer(n))
}

/// Exact rational value of a finite float (every finite `f64` is dyadic).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn to_c64(c: &Coeff) -> Complex64 {
    Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

pub fn is_zero(c: &Coeff) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

pub fn format(c: &Coeff) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) => format!("{}i", c.im),
        (false, false) => {
            if c.im < Rational::zero() {
                format!("({}-{}i)", c.re, -c.im.clone())
            } else {
                format!("({}+{}i)", c.re, c.im)
            }
        }
    }
}
