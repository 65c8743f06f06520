use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{BigRat, FieldError, LaurentPoly};

/// Element of `Q(q)` in canonical form.
///
/// The denominator is a monic polynomial with nonzero constant term, coprime
/// to the numerator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(BigRat::from_int(n))
    }

    pub fn from_rat(c: BigRat) -> Self {
        RatFunc { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        RatFunc { num: LaurentPoly::q_pow(k), den: LaurentPoly::one() }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        let (num, den) = (num.shift(-shift), den.shift(-shift));
        if den.is_constant() {
            let inv = den.coeff(0).recip();
            return RatFunc { num: num.scale(&inv), den: LaurentPoly::one() };
        }
        let (stripped, power) = num.split_power();
        let g = LaurentPoly::poly_gcd(&stripped, &den);
        let (stripped, den) = if g.is_one() {
            (stripped, den)
        } else {
            (stripped.poly_divrem(&g).0, den.poly_divrem(&g).0)
        };
        let inv = den.leading_coeff().recip();
        let num = stripped.shift(power).scale(&inv);
        RatFunc { num, den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if this is one.
    pub fn as_constant(&self) -> Option<BigRat> {
        (self.is_laurent() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// `(c, k)` when this equals `c * q^k` with `c` rational and nonzero.
    pub fn as_monomial(&self) -> Option<(BigRat, i32)> {
        (self.is_laurent() && self.num.is_monomial()).then(|| (self.num.leading_coeff(), self.num.low()))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, n: i32) -> Result<Self, FieldError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplies by `q^k`.
    pub fn mul_q_pow(&self, k: i32) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Substitutes `q -> q^d`.
    pub fn dilate(&self, d: i32) -> Self {
        Self::normalize(self.num.dilate(d), self.den.dilate(d))
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, q: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(q)?;
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(q)? / &d)
    }

    /// Idempotent re-normalization, exposed for property tests.
    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_laurent(&self.num + &rhs.num);
            }
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        if self.num.is_monomial() && self.den.is_one() {
            return RatFunc::normalize(&self.num * &rhs.num, rhs.den.clone());
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::try_div`] for a checked version.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.try_div(rhs).expect("division by zero in Q(q)")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_atomic = self.num.terms().count() == 1 && !self.num.leading_coeff().is_negative();
        if num_atomic {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
