//! Exact rational scalars.
//!
//! Everything in the crate is computed over `Q` with arbitrary-precision
//! numerators and denominators; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// The coefficient field.
pub type Q = BigRational;

/// Integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Generalized binomial coefficient `C(m, l)` for any integer `m` and `l >= 0`,
/// via the falling factorial `m (m-1) ... (m-l+1) / l!`.
pub fn binom(m: i64, l: u32) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..l as i64 {
        num *= BigInt::from(m - j);
        den *= BigInt::from(j + 1);
    }
    Q::new(num, den)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Canonical text: `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a coefficient in front of a monomial (`""`, `"-"`, `"3/2*"`).
pub(crate) fn coef_prefix(c: &Q, first: bool) -> (String, bool) {
    let neg = c.is_negative();
    let a = c.abs();
    let sign = match (first, neg) {
        (true, true) => "-".to_string(),
        (true, false) => String::new(),
        (false, true) => " - ".to_string(),
        (false, false) => " + ".to_string(),
    };
    let unit = a.is_one();
    (if unit { sign } else { format!("{sign}{}*", fmt_q(&a)) }, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(5, 2), q(10));
        assert_eq!(binom(-1, 3), q(-1));
        assert_eq!(binom(-3, 1), q(-3));
        assert_eq!(binom(-2, 2), q(3));
        assert_eq!(binom(0, 0), q(1));
        assert_eq!(binom(0, 2), q(0));
        assert_eq!(binom(2, 5), q(0));
    }

    #[test]
    fn reduced_form() {
        let x = qf(6, -4);
        assert_eq!(fmt_q(&x), "-3/2");
        assert_eq!(to_i64(&qf(8, 4)), Some(2));
        assert_eq!(to_i64(&qf(1, 2)), None);
    }
}
