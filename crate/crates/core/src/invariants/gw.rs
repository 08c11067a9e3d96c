use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use super::{GvSolution, GvTable, GwTable};
use crate::error::{Error, Result};
use crate::series::{rat, ClassBasis, CurveClass, Rational};

/// `[y^j] s(y)^(2g-2)` for `j = 0..=jmax`, where
/// `s(y) = sum_k (-1)^k y^k / (4^k (2k+1)!)`, so that
/// `(2 sin(x/2))^(2g-2) = x^(2g-2) s(x^2)^(2g-2)`.
pub fn sine_power_coefficients(genus: u32, jmax: u32) -> Vec<Rational> {
    let n = jmax as usize;
    let mut s = Vec::with_capacity(n + 1);
    let mut fact = BigInt::one();
    let mut four = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            fact *= BigInt::from((2 * k) * (2 * k + 1));
            four *= 4;
        }
        let v = Rational::new(BigInt::one(), &four * &fact);
        s.push(if k % 2 == 0 { v } else { -v });
    }
    // b = s^p with s_0 = 1: n b_n = sum_{k=1}^n ((p+1) k - n) s_k b_{n-k}.
    let p = 2 * genus as i64 - 2;
    let mut b = vec![Rational::one()];
    for i in 1..=n as i64 {
        let mut acc = Rational::zero();
        for k in 1..=i {
            let w = (p + 1) * k - i;
            if w != 0 {
                acc += &s[k as usize] * &b[(i - k) as usize] * rat(w);
            }
        }
        b.push(acc / rat(i));
    }
    b
}

/// Free energy as a series in the string coupling: the coefficient of
/// `lambda^(2h-2) t^beta` is stored under `(beta, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    basis: ClassBasis,
    tmax: u32,
    hmax: u32,
    coeffs: BTreeMap<(CurveClass, u32), Rational>,
}

impl LambdaSeries {
    pub fn basis(&self) -> &ClassBasis {
        &self.basis
    }

    pub fn tmax(&self) -> u32 {
        self.tmax
    }

    /// Highest `h` carried, i.e. the series is known through `lambda^(2 hmax - 2)`.
    pub fn hmax(&self) -> u32 {
        self.hmax
    }

    pub fn coeff(&self, class: &CurveClass, h: u32) -> Rational {
        self.coeffs
            .get(&(class.clone(), h))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, u32, &Rational)> {
        self.coeffs.iter().map(|((c, h), v)| (c, *h, v))
    }

    fn add(&mut self, class: CurveClass, h: u32, v: Rational) {
        let e = self.coeffs.entry((class, h)).or_insert_with(Rational::zero);
        *e += v;
    }
}

/// Weight `m^(2h-3)` of an `m`-fold cover in the `lambda^(2h-2)` coefficient.
fn cover_weight(m: u32, h: u32) -> Rational {
    let e = 2 * h as i64 - 3;
    let m = BigInt::from(m);
    if e >= 0 {
        Rational::from_integer(num::pow(m, e as usize))
    } else {
        Rational::new(BigInt::one(), num::pow(m, (-e) as usize))
    }
}

struct SineTable {
    rows: Vec<Vec<Rational>>,
}

impl SineTable {
    fn new(gmax: u32, jmax: u32) -> Self {
        SineTable {
            rows: (0..=gmax)
                .map(|g| sine_power_coefficients(g, jmax))
                .collect(),
        }
    }

    fn get(&self, g: u32, j: u32) -> &Rational {
        &self.rows[g as usize][j as usize]
    }
}

/// Expands `sum n^g_beta (1/m) (2 sin(m lambda / 2))^(2g-2) t^(m beta)`
/// through `lambda^(2 hmax - 2)` for classes of degree up to `tmax`.
pub fn gv_to_lambda_series(gv: &GvTable, hmax: u32, tmax: u32) -> LambdaSeries {
    let table = SineTable::new(gv.max_genus().unwrap_or(0).min(hmax), hmax);
    let mut out = LambdaSeries {
        basis: gv.basis().clone(),
        tmax,
        hmax,
        coeffs: BTreeMap::new(),
    };
    for (beta, g, n) in gv.entries() {
        if g > hmax {
            continue;
        }
        let n = Rational::from_integer(n.clone());
        for m in (1..).take_while(|m| beta.degree() * m <= tmax) {
            let class = beta.scale(m);
            for h in g..=hmax {
                let v = &n * cover_weight(m, h) * table.get(g, h - g);
                out.add(class.clone(), h, v);
            }
        }
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    out
}

/// GW invariants `N^h_beta` for `h <= jmax` and every multiple `m beta` of a
/// supported class with degree at most `tmax`; vanishing values are listed
/// explicitly so the table can be inverted.
pub fn gv_to_gw(gv: &GvTable, jmax: u32, tmax: u32) -> GwTable {
    let series = gv_to_lambda_series(gv, jmax, tmax);
    let mut out = GwTable::new(gv.basis());
    for beta in gv.classes() {
        for m in (1..).take_while(|m| beta.degree() * m <= tmax) {
            let class = beta.scale(m);
            for h in 0..=jmax {
                out.insert(&class, h, series.coeff(&class, h))
                    .expect("class comes from a table over the same basis");
            }
        }
    }
    out
}

/// Recovers GV invariants of genus at most `gmax` from GW invariants.
///
/// Classes are taken in increasing degree. For each class and each
/// `h = 0..=gmax`, the `m >= 2` covers of already solved classes and the
/// lower-genus contributions of the class itself are subtracted from
/// `N^h_beta`; what is left is `n^h_beta`. Values are kept rational, see
/// [`GvSolution::integrality_report`]. Divisor classes absent from the GW
/// table are taken to have vanishing invariants.
pub fn gw_to_gv(gw: &GwTable, gmax: u32) -> Result<GvSolution> {
    let table = SineTable::new(gmax, gmax);
    let mut solved = GvSolution::new(gw.basis());
    for beta in gw.classes() {
        let covers: Vec<(u32, CurveClass)> = beta.divisors().into_iter().skip(1).collect();
        let mut own: Vec<Rational> = Vec::new();
        for h in 0..=gmax {
            let value = gw.get(&beta, h).ok_or_else(|| Error::MissingEntry {
                beta: beta.to_string(),
                genus: h,
            })?;
            let mut rest = value.clone();
            for (m, base) in &covers {
                let w = cover_weight(*m, h);
                for g in 0..=h {
                    let n = solved.get(base, g);
                    if !n.is_zero() {
                        rest -= n * &w * table.get(g, h - g);
                    }
                }
            }
            for (g, n) in own.iter().enumerate() {
                rest -= n * table.get(g as u32, h - g as u32);
            }
            solved.set(&beta, h, rest.clone());
            own.push(rest);
        }
    }
    Ok(solved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    #[test]
    fn sine_coefficients() {
        // (2 sin(x/2))^(-2) = x^-2 + 1/12 + x^2/240 + ...
        assert_eq!(
            sine_power_coefficients(0, 2),
            vec![rat(1), ratio(1, 12), ratio(1, 240)]
        );
        assert_eq!(
            sine_power_coefficients(1, 3),
            vec![rat(1), rat(0), rat(0), rat(0)]
        );
        // (2 sin(x/2))^2 = 2 - 2 cos x = x^2 - x^4/12 + x^6/360.
        assert_eq!(
            sine_power_coefficients(2, 2),
            vec![rat(1), ratio(-1, 12), ratio(1, 360)]
        );
    }

    #[test]
    fn genus_zero_multiple_covers() {
        let gw = gv_to_gw(&GvTable::rank_one(&[(1, 0, 1)]), 1, 3);
        let b = ClassBasis::rank_one();
        assert_eq!(gw.get(&b.d(1), 0), Some(&rat(1)));
        assert_eq!(gw.get(&b.d(2), 0), Some(&ratio(1, 8)));
        assert_eq!(gw.get(&b.d(3), 0), Some(&ratio(1, 27)));
        assert_eq!(gw.get(&b.d(1), 1), Some(&ratio(1, 12)));
        // m^{2h-3} at h = 1: N^1_{d} = 1/(12 d).
        assert_eq!(gw.get(&b.d(3), 1), Some(&ratio(1, 36)));
    }

    #[test]
    fn elliptic_genus_one() {
        let gv = GvTable::rank_one(&[(1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1)]);
        let gw = gv_to_gw(&gv, 1, 4);
        let b = ClassBasis::rank_one();
        assert_eq!(gw.get(&b.d(4), 1), Some(&ratio(7, 4)));
        assert_eq!(gw.get(&b.d(4), 0), Some(&rat(0)));
    }

    #[test]
    fn inverse_of_cubes() {
        let b = ClassBasis::rank_one();
        let mut gw = GwTable::new(&b);
        for d in 1..=3 {
            gw.insert(&b.d(d), 0, ratio(1, (d * d * d) as i64)).unwrap();
        }
        let gv = gw_to_gv(&gw, 0).unwrap().into_table().unwrap();
        assert_eq!(gv, GvTable::rank_one(&[(1, 0, 1)]));
        assert!(gw_to_gv(&GwTable::new(&b), 2)
            .unwrap()
            .into_table()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn missing_entry() {
        let b = ClassBasis::rank_one();
        let mut gw = GwTable::new(&b);
        gw.insert(&b.d(1), 0, rat(1)).unwrap();
        assert_eq!(
            gw_to_gv(&gw, 1).unwrap_err(),
            Error::MissingEntry {
                beta: "[1]".into(),
                genus: 1
            }
        );
    }

    #[test]
    fn roundtrip_with_higher_genus() {
        let gv = GvTable::rank_one(&[(1, 0, 3), (2, 0, -6), (2, 2, 4), (3, 1, -10), (4, 3, 7)]);
        let gw = gv_to_gw(&gv, 3, 4);
        let back = gw_to_gv(&gw, 3).unwrap();
        assert!(back.is_integral());
        assert_eq!(back.into_table().unwrap(), gv);
    }

    #[test]
    fn non_integral_values_are_reported() {
        let b = ClassBasis::rank_one();
        let mut gw = GwTable::new(&b);
        gw.insert(&b.d(1), 0, ratio(1, 2)).unwrap();
        let sol = gw_to_gv(&gw, 0).unwrap();
        assert_eq!(sol.integrality_report(), vec![(b.d(1), 0, ratio(1, 2))]);
    }
}
