use super::{FieldError, LaurentPoly, RatFunc};

/// The q-number families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QNumberKind {
    /// Balanced q-integer `[n]_{q^d}`.
    Qint,
    /// `[n]_{q^d}!`.
    Qfact,
    /// Gaussian binomial `[n choose k]_{q^d}`.
    Qbinom,
    /// `{n}_{q^d} = [n]_{q^d}! (q^d - q^{-d})^n`.
    Qbrace,
}

/// Dispatches to the individual q-number functions.
pub fn q_number(kind: QNumberKind, n: i64, k: Option<i64>, d: u32) -> Result<RatFunc, FieldError> {
    if d == 0 {
        return Err(FieldError::OutOfRange(format!("q-number base exponent must be positive, got {d}")));
    }
    let need_nonneg = |n: i64| {
        if n < 0 {
            Err(FieldError::OutOfRange(format!("{kind:?} needs n >= 0, got {n}")))
        } else {
            Ok(n as u32)
        }
    };
    match kind {
        QNumberKind::Qint => Ok(qint(n, d)),
        QNumberKind::Qfact => Ok(qfact(need_nonneg(n)?, d)),
        QNumberKind::Qbrace => Ok(qbrace(need_nonneg(n)?, d)),
        QNumberKind::Qbinom => {
            let n = need_nonneg(n)?;
            let k = k.ok_or_else(|| FieldError::OutOfRange("qbinom needs k".into()))?;
            if k < 0 || k > n as i64 {
                return Err(FieldError::OutOfRange(format!("qbinom needs 0 <= k <= n, got n={n}, k={k}")));
            }
            Ok(qbinom(n, k as u32, d))
        }
    }
}

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`, a Laurent polynomial.
pub fn qint(n: i64, d: u32) -> RatFunc {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.unsigned_abs() as i32;
    let d = d as i32;
    let poly = LaurentPoly::from_terms((0..m).map(|j| (d * (m - 1 - 2 * j), sign.into())));
    RatFunc::from_laurent(poly)
}

pub fn qfact(n: u32, d: u32) -> RatFunc {
    (1..=n as i64).fold(RatFunc::one(), |acc, j| &acc * &qint(j, d))
}

pub fn qbinom(n: u32, k: u32, d: u32) -> RatFunc {
    let den = &qfact(k, d) * &qfact(n - k, d);
    &qfact(n, d) / &den
}

/// `q^d - q^{-d}`.
pub fn q_diff(d: u32) -> RatFunc {
    &RatFunc::q_pow(d as i32) - &RatFunc::q_pow(-(d as i32))
}

/// `{n}_{q^d} = [n]_{q^d}! (q^d - q^{-d})^n`.
pub fn qbrace(n: u32, d: u32) -> RatFunc {
    let diff = q_diff(d).pow(n as i32).expect("nonnegative power");
    &qfact(n, d) * &diff
}

/// The non-factorial variant `[n]_{q^d} (q^d - q^{-d})^n`.
pub fn qbrace_plain(n: u32, d: u32) -> RatFunc {
    let diff = q_diff(d).pow(n as i32).expect("nonnegative power");
    &qint(n as i64, d) * &diff
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(qint(1, 1), RatFunc::one());
        assert_eq!(qint(2, 1).to_string(), "q + q^-1");
        assert_eq!(qint(0, 3), RatFunc::zero());
        assert_eq!(qint(-2, 1), -qint(2, 1));
        assert_eq!(qbrace(1, 1).to_string(), "q - q^-1");
        assert_eq!(qbrace(0, 1), RatFunc::one());
        assert_eq!(qbrace_plain(0, 1), RatFunc::zero());
    }

    #[test]
    fn binomial_symmetry_and_pascal() {
        for n in 1..7u32 {
            for k in 1..n {
                assert_eq!(qbinom(n, k, 1), qbinom(n, n - k, 1));
                let lhs = qbinom(n, k, 2);
                let rhs = &qbinom(n - 1, k - 1, 2).mul_q_pow(-2 * (n - k) as i32)
                    + &qbinom(n - 1, k, 2).mul_q_pow(2 * k as i32);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn brace_readings_differ_only_at_zero_and_from_three() {
        for d in 1..4 {
            for l in [1, 2] {
                assert_eq!(qbrace(l, d), qbrace_plain(l, d));
            }
        }
        assert_ne!(qbrace(0, 1), qbrace_plain(0, 1));
        assert_ne!(qbrace(3, 1), qbrace_plain(3, 1));
    }

    #[test]
    fn range_errors() {
        assert!(q_number(QNumberKind::Qfact, -1, None, 1).is_err());
        assert!(q_number(QNumberKind::Qbinom, 3, Some(4), 1).is_err());
        assert!(q_number(QNumberKind::Qint, 2, None, 0).is_err());
        assert_eq!(q_number(QNumberKind::Qbinom, 4, Some(2), 1).unwrap().to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
    }
}
