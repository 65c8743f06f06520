use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::BigRat;

/// Laurent polynomial in `q` with rational coefficients.
///
/// Stored densely from the lowest nonzero exponent; both end coefficients are
/// nonzero, and the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRat, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(BigRat::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRat)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    fn from_raw(low: i32, mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(BigRat::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { low: low + lead_zeros as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for a single constant term (including zero).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn high(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i32 - 1
        }
    }

    pub fn coeff(&self, exp: i32) -> BigRat {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigRat::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitutes `q -> q^d` for `d >= 1`.
    pub fn dilate(&self, d: i32) -> Self {
        assert!(d >= 1, "dilation factor must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e * d, c.clone())))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_raw(-self.high(), coeffs)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point; `None` if a negative power hits zero.
    pub fn eval(&self, q: &BigRat) -> Option<BigRat> {
        if q.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        if self.low != 0 && !self.is_zero() {
            let base = if self.low > 0 { q.clone() } else { q.recip() };
            for _ in 0..self.low.unsigned_abs() {
                acc = &acc * &base;
            }
        }
        Some(acc)
    }

    /// Strips the power of `q`: returns `(q^{-low} * self, low)`.
    pub(crate) fn split_power(&self) -> (LaurentPoly, i32) {
        (LaurentPoly { low: 0, coeffs: self.coeffs.clone() }, self.low)
    }

    /// Euclidean division of ordinary polynomials (both with `low == 0`).
    pub(crate) fn poly_divrem(&self, div: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        debug_assert!(self.low == 0 || self.is_zero());
        debug_assert!(div.low == 0 && !div.is_zero());
        let dn = div.coeffs.len();
        if self.coeffs.len() < dn {
            return (Self::zero(), self.clone());
        }
        let lead_inv = div.coeffs[dn - 1].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRat::zero(); rem.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(dn - 1);
        (Self::from_raw(0, quot), Self::from_raw(0, rem))
    }

    /// Monic gcd of ordinary polynomials (both with `low == 0`).
    pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() || b.is_zero() {
            let x = if a.is_zero() { b } else { a };
            if x.is_zero() {
                return Self::zero();
            }
            let lc = x.leading_coeff().recip();
            return Self::from_raw(0, x.to_dense_from_zero()).scale(&lc);
        }
        let mut x = primitive_int(&a.to_dense_from_zero());
        let mut y = primitive_int(&b.to_dense_from_zero());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while y.len() > 1 {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive_int_z(r);
            if y.is_empty() {
                break;
            }
        }
        if y.len() == 1 {
            return Self::one();
        }
        let lc = BigRat::new(x.last().unwrap().clone(), BigInt::one());
        Self::from_raw(0, x.into_iter().map(|c| BigRat::new(c, BigInt::one())).collect()).scale(&lc.recip())
    }

    fn to_dense_from_zero(&self) -> Vec<BigRat> {
        let mut v = vec![BigRat::zero(); self.low.max(0) as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    fn combine(&self, other: &LaurentPoly, sign: bool) -> LaurentPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { other.clone() } else { -other };
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigRat::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + i];
            *slot = if sign { &*slot + c } else { &*slot - c };
        }
        Self::from_raw(low, coeffs)
    }
}

/// Integer primitive part of a rational coefficient vector (trailing zeros trimmed).
fn primitive_int(coeffs: &[BigRat]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_int_z(coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
}

fn primitive_int_z(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut v {
            *c = &*c / &content;
        }
    }
    v
}

/// Pseudo-remainder of `x` by `y` over the integers.
fn pseudo_rem(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut rem = x.to_vec();
    let dn = y.len();
    let lead = &y[dn - 1];
    while rem.len() >= dn {
        let top = rem.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let off = rem.len() + 1 - dn;
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (j, yc) in y[..dn - 1].iter().enumerate() {
            rem[off + j] -= &top * yc;
        }
        // Keep the working remainder small.
        rem = primitive_int_z(rem);
    }
    rem
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, true)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, false)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentPoly::from_raw(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing exponent, e.g. `q^2 - 3 + 1/2*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_qpow(f, e)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_qpow(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_qpow(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
