//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_q::Rational;

use crate::error::Error;

/// An element of ℚ(i). Both parts are kept in lowest terms by `Rational`,
/// so structural equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        re: Rational::ZERO,
        im: Rational::ZERO,
    };
    pub const ONE: Scalar = Scalar {
        re: Rational::ONE,
        im: Rational::ZERO,
    };
    pub const I: Scalar = Scalar {
        re: Rational::ZERO,
        im: Rational::ONE,
    };

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: Rational::from(n),
            im: Rational::ZERO,
        }
    }

    /// `num/den` as a real scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: Rational::from_signeds(num, den),
            im: Rational::ZERO,
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0u32 && self.im == 0u32
    }

    pub fn is_one(&self) -> bool {
        self.re == 1u32 && self.im == 0u32
    }

    pub fn is_real(&self) -> bool {
        self.im == 0u32
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Scalar {
                re: (&self.re).reciprocal(),
                im: Rational::ZERO,
            });
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        let inv_norm = norm.reciprocal();
        Some(Scalar {
            re: &self.re * &inv_norm,
            im: -(&self.im * &inv_norm),
        })
    }

    /// Exact division; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|inv| self * &inv)
    }

    /// Total bit size of the four integers involved; used to pick cheap pivots.
    pub fn height(&self) -> u64 {
        fn bits(q: &Rational) -> u64 {
            q.numerator_ref().significant_bits() + q.denominator_ref().significant_bits()
        }
        bits(&self.re) + bits(&self.im)
    }

    /// `self -= c * x`, the elimination kernel.
    pub fn sub_mul(&mut self, c: &Scalar, x: &Scalar) {
        if c.is_real() && x.is_real() {
            self.re -= &c.re * &x.re;
            return;
        }
        let re = &c.re * &x.re - &c.im * &x.im;
        let im = &c.re * &x.im + &c.im * &x.re;
        self.re -= re;
        self.im -= im;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::ZERO,
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_real() && rhs.is_real() {
            return Scalar {
                re: &self.re * &rhs.re,
                im: Rational::ZERO,
            };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Canonical rendering: `a/b`, `c/d*i`, `a/b+c/d*i` or `a/b-c/d*i`.
/// Integers drop the `/1`; a unit imaginary part is written `i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(q: &Rational) -> String {
            if *q == 1u32 {
                "i".to_string()
            } else {
                format!("{q}*i")
            }
        }
        if self.im == 0u32 {
            return write!(f, "{}", self.re);
        }
        if self.re == 0u32 {
            if self.im == -Rational::ONE {
                return write!(f, "-i");
            }
            return if self.im < 0u32 {
                write!(f, "-{}", imag(&-&self.im))
            } else {
                write!(f, "{}", imag(&self.im))
            };
        }
        if self.im < 0u32 {
            write!(f, "{}-{}", self.re, imag(&-&self.im))
        } else {
            write!(f, "{}+{}", self.re, imag(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        crate::parser::parse_scalar(s)
    }
}
