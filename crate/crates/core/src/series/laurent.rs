use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::{format_rational, rat, Precision, Rational};

/// Laurent series in `q` with exact rational coefficients.
///
/// All coefficients at exponents `<= precision` are known; the principal
/// part is finite, so everything below the lowest stored term is zero.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLaurent {
    coeffs: BTreeMap<i64, Rational>,
    prec: Precision,
}

impl QLaurent {
    pub fn zero(prec: Precision) -> Self {
        QLaurent {
            coeffs: BTreeMap::new(),
            prec,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_terms([(0, Rational::one())], prec)
    }

    pub fn monomial(exp: i64, coeff: Rational, prec: Precision) -> Self {
        Self::from_terms([(exp, coeff)], prec)
    }

    /// Collects terms, summing repeated exponents and dropping anything
    /// above `prec`.
    pub fn from_terms<I>(terms: I, prec: Precision) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if prec.admits(e) {
                *coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QLaurent { coeffs, prec }
    }

    pub fn from_integers(lowest: i64, coeffs: &[i64], prec: Precision) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i64, rat(c))),
            prec,
        )
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Lowest exponent that may be nonzero.
    pub fn valuation(&self) -> Precision {
        match self.coeffs.keys().next() {
            Some(&e) => Precision::Finite(e),
            None => self.prec.shift(1),
        }
    }

    /// Coefficient of `q^exp`, or `None` if it lies above the precision.
    pub fn coeff(&self, exp: i64) -> Option<Rational> {
        if !self.prec.admits(exp) {
            return None;
        }
        Some(
            self.coeffs
                .get(&exp)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn truncate(&self, prec: Precision) -> Self {
        let prec = prec.min(self.prec);
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c.clone())), prec)
    }

    pub fn add(&self, other: &QLaurent) -> Self {
        let prec = self.prec.min(other.prec);
        Self::from_terms(
            self.terms()
                .chain(other.terms())
                .map(|(e, c)| (e, c.clone())),
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &QLaurent) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * s)), self.prec)
    }

    /// Product; the precision is `min(p_a + v_b, p_b + v_a)`.
    pub fn mul(&self, other: &QLaurent) -> Self {
        let prec = self
            .prec
            .plus(other.valuation())
            .min(other.prec.plus(self.valuation()));
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if !prec.admits(e) {
                    break;
                }
                *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        QLaurent { coeffs: out, prec }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QLaurent::one(Precision::Exact);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `q -> -q`.
    pub fn negate_q(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|(e, c)| (e, if e % 2 == 0 { c.clone() } else { -c })),
            self.prec,
        )
    }

    /// `q -> q^m` for `m >= 1`.
    pub fn cover(&self, m: u32) -> Self {
        assert!(m >= 1, "cover degree must be positive");
        Self::from_terms(
            self.terms().map(|(e, c)| (e * m as i64, c.clone())),
            self.prec.scale(m),
        )
    }

    /// `exp(f)` for a power series `f` without constant term, up to
    /// `q^order` (or the precision of `f`, whichever is smaller).
    ///
    /// Uses `n a_n = sum_k k f_k a_{n-k}`, which follows from `A' = f' A`.
    pub fn exp(&self, order: i64) -> Option<Self> {
        if self.lowest_exponent().is_some_and(|e| e < 1) {
            return None;
        }
        let top = match self.prec.min(Precision::Finite(order)) {
            Precision::Finite(p) => p,
            Precision::Exact => unreachable!(),
        };
        if top < 0 {
            return Some(QLaurent::zero(Precision::Finite(top)));
        }
        let weighted: Vec<(i64, Rational)> = self.terms().map(|(k, c)| (k, c * rat(k))).collect();
        let mut a = vec![Rational::one()];
        for n in 1..=top {
            let mut s = Rational::zero();
            for (k, kf) in &weighted {
                if *k > n {
                    break;
                }
                s += kf * &a[(n - k) as usize];
            }
            a.push(s / rat(n));
        }
        Some(Self::from_terms(
            a.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
            Precision::Finite(top),
        ))
    }

    /// Coefficients `q^0..=q^order` as a dense vector (for power series).
    pub fn dense(&self, order: i64) -> Vec<Rational> {
        (0..=order)
            .map(|e| self.coeff(e).unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Equality on the range where both are known.
    pub fn agrees_with(&self, other: &QLaurent) -> bool {
        let p = self.prec.min(other.prec);
        self.truncate(p).coeffs == other.truncate(p).coeffs
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prec {}", self.prec)?;
        for (e, c) in self.terms() {
            writeln!(f, "q^{e} coeff={}", format_rational(c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn fin(p: i64) -> Precision {
        Precision::Finite(p)
    }

    #[test]
    fn geometric_times_one_minus_q_truncates() {
        let a = QLaurent::from_integers(0, &[1, 1, 1, 1, 1, 1], fin(5));
        let b = QLaurent::from_integers(0, &[1, -1], fin(5));
        let p = a.mul(&b);
        assert_eq!(p, QLaurent::one(fin(5)));
    }

    #[test]
    fn negative_valuation_shrinks_precision() {
        let a = QLaurent::from_integers(-2, &[1], Precision::Exact);
        let b = QLaurent::from_integers(0, &[1, 2, 3], fin(4));
        let p = a.mul(&b);
        assert_eq!(p.precision(), fin(2));
        assert_eq!(p.coeff(-2), Some(rat(1)));
        assert_eq!(p.coeff(3), None);
    }

    #[test]
    fn exp_of_log_geometric() {
        // -log(1-q) = sum q^n / n, so exp gives 1/(1-q).
        let f = QLaurent::from_terms((1..=6).map(|n| (n, ratio(1, n))), fin(6));
        let e = f.exp(6).unwrap();
        assert_eq!(e.dense(6), vec![rat(1); 7]);
        assert!(QLaurent::one(fin(3)).exp(3).is_none());
    }

    #[test]
    fn substitutions() {
        let f = QLaurent::from_integers(-1, &[1, 0, 1], Precision::Exact);
        let g = f.cover(3);
        assert_eq!(g.coeff(-3), Some(rat(1)));
        assert_eq!(g.coeff(3), Some(rat(1)));
        let h = QLaurent::from_integers(0, &[1, 1, 1], fin(2)).negate_q();
        assert_eq!(h.dense(2), vec![rat(1), rat(-1), rat(1)]);
    }
}
