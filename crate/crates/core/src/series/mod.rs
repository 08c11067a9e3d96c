//! Exact truncated series arithmetic.
//!
//! Two series types live here. [`QLaurent`] is a Laurent series in `q`
//! known exactly up to a precision bound. [`MultiSeries`] is a truncated
//! series in class monomials `t^beta` whose coefficients are such Laurent
//! series, with one precision bound per total degree.
//!
//! Coefficients above a precision bound are unknown. Every operation
//! computes the bound of its result from the bounds and valuations of its
//! inputs, so a reported coefficient is never contaminated by a dropped one.

mod class;
mod laurent;
mod multi;
mod precision;
pub(crate) mod text;

pub use class::{ClassBasis, CurveClass};
pub use laurent::QLaurent;
pub use multi::MultiSeries;
pub use precision::{Precision, QWindow};

use num::{BigInt, BigRational, One, Zero};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` rendering used by every text format.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Generalized binomial coefficient `C(k, j)` for integer `k` and `j >= 0`.
pub fn binomial(k: &BigInt, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j as i64 {
        acc = acc * Rational::from_integer(k - i) / rat(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_negative_upper() {
        let b = |k: i64, j| binomial(&BigInt::from(k), j);
        assert_eq!(b(-2, 3), rat(-4));
        assert_eq!(b(5, 2), rat(10));
        assert_eq!(b(3, 4), rat(0));
        assert_eq!(b(-1, 7), rat(-1));
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5/1");
        assert_eq!(parse_rational("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
