//! Euler-characteristic formulas for BPS invariants of a family of curves
//! `C -> M` with arithmetic genus `g` and at most `delta` nodes, and the
//! Euler characteristics of Hilbert schemes of points used in degree zero.
//!
//! The formulas are treated as arithmetic maps; whether a given geometry
//! satisfies the hypotheses under which they compute GV invariants is the
//! caller's concern.

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::invariants::{z0_partition_function, ThreefoldData};
use crate::series::{rat, Precision, QLaurent, Rational};

/// Input to [`kkv_invariant`]: Euler characteristics `eulers[n] = e(C^[n])`
/// of the relative Hilbert schemes of `n` points, for `n = 0..=delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkvInput {
    pub g: u32,
    pub delta: u32,
    pub dim_m: i64,
    pub eulers: Vec<i64>,
    /// `dim C^[n]`; defaults to `dim_m + n`.
    pub dims: Option<Vec<i64>>,
}

impl KkvInput {
    pub fn new(g: u32, delta: u32, dim_m: i64, eulers: Vec<i64>) -> Self {
        KkvInput {
            g,
            delta,
            dim_m,
            eulers,
            dims: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.delta > self.g {
            return Err(Error::OutOfRange {
                what: "delta",
                value: self.delta as i64,
                bound: format!("at most g = {}", self.g),
            });
        }
        let want = self.delta as usize + 1;
        if self.eulers.len() != want {
            return Err(Error::OutOfRange {
                what: "number of Euler characteristics",
                value: self.eulers.len() as i64,
                bound: format!("exactly delta + 1 = {want}"),
            });
        }
        if let Some(d) = &self.dims {
            if d.len() != want {
                return Err(Error::OutOfRange {
                    what: "number of dimensions",
                    value: d.len() as i64,
                    bound: format!("exactly delta + 1 = {want}"),
                });
            }
        }
        Ok(())
    }

    fn dim(&self, n: usize) -> i64 {
        match &self.dims {
            Some(d) => d[n],
            None => self.dim_m + n as i64,
        }
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `n^(g-delta)` from
/// `(-1)^(dim M + delta) n^(g-delta) = e_delta + (2g-2delta) e_(delta-1)
///   + sum_(i=2)^delta (1/i!) (2g-2delta+2i-2) prod_(j=1)^(i-1) (2g-2delta+i-2-j) e_(delta-i)`.
pub fn kkv_invariant(input: &KkvInput) -> Result<BigInt> {
    input.validate()?;
    let delta = input.delta as i64;
    let a = 2 * input.g as i64 - 2 * delta;
    let e = |n: i64| BigRational::from_integer(BigInt::from(input.eulers[n as usize]));
    let mut sum = e(delta);
    if delta >= 1 {
        sum += e(delta - 1) * rat(a);
    }
    let mut factorial = BigInt::one();
    for i in 2..=delta {
        factorial *= i;
        let mut c = BigInt::from(a + 2 * i - 2);
        for j in 1..i {
            c *= a + i - 2 - j;
        }
        sum += e(delta - i) * Rational::new(c, factorial.clone());
    }
    if !sum.is_integer() {
        return Err(Error::NonIntegral(format!(
            "KKV sum {sum} does not clear to an integer"
        )));
    }
    let n = sum.to_integer();
    Ok(if odd(input.dim_m + delta) { -n } else { n })
}

/// `sum_(n=0)^delta (-1)^(dim C^[n]) e(C^[n]) q^(n+1-g)`, the coefficient of
/// `t^beta` in the reduced DT series, known up to `q^(delta+1-g)`.
pub fn kkv_dt_contribution(input: &KkvInput) -> Result<QLaurent> {
    input.validate()?;
    if input.delta > 1 {
        return Err(Error::OutOfRange {
            what: "delta",
            value: input.delta as i64,
            bound: "at most 1".into(),
        });
    }
    let g = input.g as i64;
    let terms = input.eulers.iter().enumerate().map(|(n, &e)| {
        let v = if odd(input.dim(n)) { -e } else { e };
        (n as i64 + 1 - g, rat(v))
    });
    Ok(QLaurent::from_terms(
        terms.collect::<Vec<_>>(),
        Precision::Finite(input.delta as i64 + 1 - g),
    ))
}

/// Euler characteristic of the blowup of `M x X` along `C`: the exceptional
/// divisor replaces `C` by a `P^1`-bundle over it.
pub fn euler_blowup(e_m: i64, e_x: i64, e_c: i64) -> i64 {
    e_m * e_x + e_c
}

/// `e(Hilb^n X)` of a threefold for `n <= 3`; the Hilbert scheme is singular
/// from `n = 4` on and no closed form is offered there.
pub fn euler_hilb_points(n: u32, e_x: i64) -> Result<BigInt> {
    let e = BigInt::from(e_x);
    let v = match n {
        1 => e,
        2 => (&e * &e - &e) / 2 + &e * 3,
        3 => {
            let cubic: BigInt = &e * &e * &e - &e * &e * 3 + &e * 2;
            cubic / 6 + (&e * &e - &e) * 3 + &e * 6
        }
        _ => {
            return Err(Error::OutOfRange {
                what: "number of points",
                value: n as i64,
                bound: "1, 2 or 3".into(),
            })
        }
    };
    Ok(v)
}

/// Whether `(-1)^n e(Hilb^n X) = [q^n] M(-q)^(e(X))`.
pub fn check_dim_zero_coeff(n: u32, e_x: i64, order: u32) -> Result<bool> {
    let hilb = euler_hilb_points(n, e_x)?;
    let lhs = if n.is_odd() { -hilb } else { hilb };
    let z0 = z0_partition_function(&ThreefoldData::calabi_yau(e_x), order.max(n));
    let rhs = z0.coeff(n as i64).unwrap_or_else(Rational::zero);
    Ok(Rational::from_integer(lhs) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kkv(g: u32, delta: u32, dim_m: i64, eulers: &[i64]) -> i64 {
        let n = kkv_invariant(&KkvInput::new(g, delta, dim_m, eulers.to_vec())).unwrap();
        i64::try_from(n).unwrap()
    }

    #[test]
    fn plane_curves_of_low_degree() {
        assert_eq!(kkv(0, 0, 2, &[3]), 3);
        assert_eq!(kkv(0, 0, 5, &[6]), -6);
        assert_eq!(kkv(1, 0, 9, &[10]), -10);
    }

    #[test]
    fn plane_quartics() {
        // C^[n] is a P^(14-n)-bundle over Hilb^n P^2, with e = 1, 3, 9, 22.
        let e = [15, 14 * 3, 13 * 9, 12 * 22];
        assert_eq!(kkv(3, 0, 14, &e[..1]), 15);
        assert_eq!(kkv(3, 1, 14, &e[..2]), -102);
        assert_eq!(kkv(3, 2, 14, &e[..3]), 231);
        assert_eq!(kkv(3, 3, 14, &e[..4]), -222);
    }

    #[test]
    fn input_errors() {
        let bad = KkvInput::new(1, 2, 0, vec![1, 1, 1]);
        assert!(matches!(kkv_invariant(&bad), Err(Error::OutOfRange { .. })));
        let bad = KkvInput::new(2, 1, 0, vec![1]);
        assert!(matches!(kkv_invariant(&bad), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn higher_delta_coefficients() {
        // g = 4, delta = 3: a = 2, weights 1, 2, (4)(1)/2 = 2, (6)(2)(1)/6 = 2.
        let x = KkvInput::new(4, 3, 0, vec![1, 1, 1, 1]);
        assert_eq!(kkv_invariant(&x).unwrap(), BigInt::from(-7));
        // g = 5, delta = 3: a = 4, weight of e_0 is (8)(4)(3)/6 = 16.
        let x = KkvInput::new(5, 3, 1, vec![1, 0, 0, 0]);
        assert_eq!(kkv_invariant(&x).unwrap(), BigInt::from(16));
    }

    #[test]
    fn dt_contribution() {
        let c = kkv_dt_contribution(&KkvInput::new(1, 0, 9, vec![10])).unwrap();
        assert_eq!(c, QLaurent::monomial(0, rat(-10), Precision::Finite(0)));
        let c = kkv_dt_contribution(&KkvInput::new(2, 1, 3, vec![5, 7])).unwrap();
        assert_eq!(
            c,
            QLaurent::from_terms([(-1, rat(-5)), (0, rat(7))], Precision::Finite(0))
        );
        let c = kkv_dt_contribution(&KkvInput::new(0, 0, 4, vec![0])).unwrap();
        assert!(c.is_zero());
        assert!(kkv_dt_contribution(&KkvInput::new(3, 2, 0, vec![1, 1, 1])).is_err());
    }

    #[test]
    fn blowup() {
        assert_eq!(euler_blowup(1, 0, 5), 5);
        assert_eq!(euler_blowup(10, 3, 0), 30);
        assert_eq!(euler_blowup(2, 4, 7), 15);
    }

    #[test]
    fn hilbert_scheme_of_points() {
        assert_eq!(euler_hilb_points(3, 0).unwrap(), BigInt::from(0));
        assert_eq!(euler_hilb_points(3, 2).unwrap(), BigInt::from(18));
        assert_eq!(euler_hilb_points(2, 2).unwrap(), BigInt::from(7));
        assert!(euler_hilb_points(4, 2).is_err());
        assert!(euler_hilb_points(0, 2).is_err());
        assert!(check_dim_zero_coeff(1, 7, 1).unwrap());
        for e in -50..=50 {
            for n in 1..=3 {
                assert!(check_dim_zero_coeff(n, e, 4).unwrap(), "n={n} e={e}");
            }
        }
    }
}
