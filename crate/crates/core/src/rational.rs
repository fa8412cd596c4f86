//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` is `num_rational::BigRational`, which keeps values reduced to
//! lowest terms with a positive denominator. The helpers here cover the
//! small combinatorial quantities the rest of the crate needs (factorials,
//! Pochhammer symbols, binomials) without pulling in anything heavier.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `r` as i64 when it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    i64::try_from(r.numer().clone()).ok()
}

/// k! as a rational.
pub fn factorial(k: u64) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    Rational::from_integer(acc)
}

/// Rising factorial (c)_k = c(c+1)...(c+k-1), with (c)_0 = 1.
pub fn pochhammer(c: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = c.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// (2s-1)!! = 1*3*5*...*(2s-1), with s = 0 giving 1.
pub fn double_factorial_odd(s: u64) -> Rational {
    let mut acc = BigInt::one();
    for j in 1..=s {
        acc *= BigInt::from(2 * j - 1);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    Rational::new(num, den)
}

/// Exact Gaussian rational a + b*i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
