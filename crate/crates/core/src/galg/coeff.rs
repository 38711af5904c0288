//! Exact complex-rational coefficients.

use num::{BigInt, BigRational, Complex, Zero};

/// Scalar field of the algebra: Gaussian rationals with big-integer backing.
pub type Coeff = Complex<BigRational>;
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Real rational coefficient n/d.
pub fn real(num: i64, den: i64) -> Coeff {
    Complex::new(rat(num, den), Rat::zero())
}

/// Imaginary rational coefficient (n/d)i.
pub fn imag(num: i64, den: i64) -> Coeff {
    Complex::new(Rat::zero(), rat(num, den))
}

pub fn int(n: i64) -> Coeff {
    real(n, 1)
}

pub fn zero() -> Coeff {
    Complex::new(Rat::zero(), Rat::zero())
}

pub fn one() -> Coeff {
    int(1)
}

/// The imaginary unit.
pub fn i_unit() -> Coeff {
    imag(1, 1)
}

pub fn from_rat(r: Rat) -> Coeff {
    Complex::new(r, Rat::zero())
}

pub fn conjugate(c: &Coeff) -> Coeff {
    Complex::new(c.re.clone(), -c.im.clone())
}

pub fn is_zero(c: &Coeff) -> bool {
    c.re.is_zero() && c.im.is_zero()
}
