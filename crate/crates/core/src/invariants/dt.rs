use num::{BigInt, One, Zero};

use super::{DtKind, DtSeries, GvSolution, GvTable, ThreefoldData};
use crate::error::{Error, Result};
use crate::partitions::mcmahon_log;
use crate::series::{
    format_rational, rat, ClassBasis, CurveClass, MultiSeries, Precision, QLaurent, QWindow,
    Rational,
};

/// `Z_0 = M(-q)^(chern_degree)` up to `q^order`, as `exp(c log M(-q))`.
pub fn z0_partition_function(x: &ThreefoldData, order: u32) -> QLaurent {
    if x.chern_degree == 0 {
        return QLaurent::one(Precision::Finite(order as i64));
    }
    mcmahon_log(order)
        .negate_q()
        .scale(&rat(x.chern_degree))
        .exp(order as i64)
        .expect("log M has no constant term")
}

/// One factor `(1 + sign q^exp t^beta)^power` of the product formula.
struct MonomialFactor {
    exp: i64,
    negative: bool,
    power: BigInt,
}

/// Factors contributed by a single entry `n^g_beta`.
///
/// Genus 0: `prod_{j=1..=j_max} (1 + (-1)^(j+1) q^j t^beta)^(j n)`.
/// Genus `g >= 1`: `prod_{k=0}^{2g-2} (1 + (-1)^(g-k) q^(g-1-k) t^beta)^((-1)^(k+g) n C(2g-2, k))`.
fn monomial_factors(genus: u32, n: &BigInt, j_max: i64) -> Vec<MonomialFactor> {
    if genus == 0 {
        return (1..=j_max)
            .map(|j| MonomialFactor {
                exp: j,
                negative: j % 2 == 0,
                power: n * j,
            })
            .collect();
    }
    let g = genus as i64;
    let top = 2 * g - 2;
    let mut choose = BigInt::one();
    let mut out = Vec::new();
    for k in 0..=top {
        let sign = if (k + g) % 2 == 0 { 1 } else { -1 };
        out.push(MonomialFactor {
            exp: g - 1 - k,
            negative: (g - k) % 2 != 0,
            power: n * &choose * sign,
        });
        choose = choose * (top - k) / (k + 1);
    }
    out
}

/// Multiplies `acc` by every factor of the entry `n^genus_beta`.
///
/// The genus-0 product is infinite; it is cut at `j_max`, which leaves the
/// coefficients of positive degree exact up to `q^j_max`. That truncation is
/// recorded by first multiplying with a unit whose positive degrees are
/// known to `j_max`.
fn apply_entry(
    acc: &MultiSeries,
    beta: &CurveClass,
    genus: u32,
    n: &BigInt,
    j_max: i64,
) -> Result<MultiSeries> {
    let basis = acc.basis().clone();
    let tmax = acc.tmax();
    let mut out = if genus == 0 {
        let mut prec = vec![Precision::Finite(j_max); tmax as usize + 1];
        prec[0] = Precision::Exact;
        let mut unit = MultiSeries::with_precisions(&basis, tmax, prec);
        unit.add_term(&basis.zero(), 0, Rational::one());
        acc.mul(&unit)?
    } else {
        acc.clone()
    };
    for f in monomial_factors(genus, n, j_max) {
        if f.power.is_zero() {
            continue;
        }
        let c = if f.negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        let u = MultiSeries::monomial(&basis, tmax, Precision::Exact, beta, f.exp, c);
        out = out.mul(&u.binom_power(f.power)?)?;
    }
    Ok(out)
}

fn check_leading_term(genus: u32, window: &QWindow) -> Result<()> {
    let lead = 1 - genus as i64;
    if !window.contains(lead) {
        return Err(Error::WindowTooNarrow(format!(
            "genus {genus} needs q^{lead} inside [{}, {}]",
            window.qmin, window.qmax
        )));
    }
    Ok(())
}

/// The factor of the product formula contributed by `n^g_beta` alone,
/// truncated to `window.qmax` (genus-0 products are cut at `q^qmax`).
pub fn genus_factor(
    basis: &ClassBasis,
    beta: &CurveClass,
    genus: u32,
    n: &BigInt,
    window: QWindow,
    tmax: u32,
) -> Result<MultiSeries> {
    check_leading_term(genus, &window)?;
    let one = MultiSeries::one(basis, tmax, Precision::Exact);
    let f = apply_entry(&one, beta, genus, n, window.qmax.max(0))?;
    let mut out = f.truncate(window.precision());
    out.set_precision(0, Precision::Exact);
    Ok(out)
}

/// Reduced DT series `Z'` from GV invariants via the product formula.
///
/// Every genus in the table must have its leading exponent `1 - g` inside
/// `window`. The result is exact up to `q^qmax` in every degree up to
/// `tmax`; its `beta = 0` part is exactly 1.
pub fn gv_to_dt_reduced(gv: &GvTable, window: QWindow, tmax: u32) -> Result<DtSeries> {
    let basis = gv.basis();
    let mut top = 0u32;
    for (_, g, _) in gv.entries() {
        check_leading_term(g, &window)?;
        top = top.max(g);
    }
    // Degree-d coefficients of the genus >= 1 factors reach down to
    // q^{-(top-1) d}; cutting the genus-0 products this far out keeps
    // every coefficient up to q^qmax exact.
    let spread = top.saturating_sub(1) as i64;
    let j_max = (window.qmax + spread * tmax as i64 + 1).max(1);
    let mut acc = MultiSeries::one(basis, tmax, Precision::Exact);
    for (beta, g, n) in gv.entries() {
        if beta.degree() <= tmax {
            acc = apply_entry(&acc, beta, g, n, j_max)?;
        }
    }
    let mut z = acc.truncate(window.precision());
    z.set_precision(0, Precision::Exact);
    for d in 1..=tmax {
        if z.precision(d) < window.precision() {
            return Err(Error::WindowTooNarrow(format!(
                "degree {d} only known to q^{}",
                z.precision(d)
            )));
        }
    }
    Ok(DtSeries::reduced(z))
}

/// `(2 - y - 1/y)^(g-1)` as an exact Laurent polynomial in `y`.
fn sine_square_power(genus: u32) -> QLaurent {
    let base = QLaurent::from_integers(-1, &[-1, 2, -1], Precision::Exact);
    base.pow(genus - 1)
}

/// Contribution of a unit invariant of genus `g` through its `m`-fold
/// cover to the free energy: `(1/m) (2 sin(m lambda/2))^(2g-2)` written in
/// `q`, i.e. with `exp(i m lambda) = (-q)^m`.
///
/// For `m = 1` this is `(2 + q + 1/q)^(g-1)` for `g >= 1` and
/// `q / (1 + q)^2` for `g = 0`. Genus 0 needs a finite `prec`.
pub fn bps_contribution(genus: u32, m: u32, prec: Precision) -> QLaurent {
    assert!(m >= 1, "cover degree must be positive");
    let mi = m as i64;
    let sign_of_power = |j: i64| if (mi * j) % 2 == 0 { 1 } else { -1 };
    let inv_m = Rational::new(BigInt::one(), BigInt::from(mi));
    if genus == 0 {
        let top = prec
            .finite()
            .expect("genus-0 contribution is an infinite series; give a finite precision");
        // -x / (1 - x)^2 = -sum_k k x^k with x = (-q)^m.
        let terms = (1..)
            .map(|k: i64| (k, mi * k))
            .take_while(|(_, e)| *e <= top)
            .map(|(k, e)| (e, rat(-k * sign_of_power(k)) * &inv_m))
            .collect::<Vec<_>>();
        return QLaurent::from_terms(terms, prec);
    }
    let y = sine_square_power(genus);
    QLaurent::from_terms(
        y.terms()
            .map(|(j, c)| (mi * j, c * rat(sign_of_power(j)) * &inv_m)),
        prec,
    )
}

/// Free energy `F'` assembled class by class from GV invariants:
/// `F'_beta(q) = sum_{m | beta} sum_g n^g_{beta/m} bps_contribution(g, m)`.
///
/// Classes up to `tmax`, every coefficient known to `q^qmax`.
pub fn free_energy_from_gv(gv: &GvTable, qmax: i64, tmax: u32) -> MultiSeries {
    let prec = Precision::Finite(qmax);
    let mut f = MultiSeries::zero(gv.basis(), tmax, prec);
    f.set_precision(0, Precision::Exact);
    for (beta, g, n) in gv.entries() {
        let n = Rational::from_integer(n.clone());
        for m in 1.. {
            if beta.degree() * m > tmax {
                break;
            }
            let class = beta.scale(m);
            for (e, c) in bps_contribution(g, m, prec).terms() {
                f.add_term(&class, e, c * &n);
            }
        }
    }
    f
}

/// `log Z'` for a reduced DT series.
pub fn dt_free_energy(z: &DtSeries) -> Result<MultiSeries> {
    if !z.is_reduced() {
        return Err(Error::WrongSeriesKind {
            expected: "reduced",
        });
    }
    z.series.log()
}

/// Solves for GV invariants from a reduced DT series, keeping rational
/// values. See [`dt_reduced_to_gv`] for the procedure.
pub fn solve_gv_from_dt(z: &DtSeries) -> Result<GvSolution> {
    let f = dt_free_energy(z)?;
    let basis = f.basis().clone();
    let mut solved = GvSolution::new(&basis);
    for beta in basis.classes_up_to(f.tmax()).into_iter().skip(1) {
        let prec = f.precision(beta.degree());
        if prec < Precision::Finite(2) {
            return Err(Error::WindowTooNarrow(format!(
                "beta={beta} is known only to q^{prec}; the inversion needs q^2"
            )));
        }
        let mut residual = f.coefficient(&beta);
        for (m, base) in beta.divisors().into_iter().skip(1) {
            let known: Vec<(u32, Rational)> = solved
                .entries()
                .filter(|(c, _, _)| **c == base)
                .map(|(_, g, v)| (g, v.clone()))
                .collect();
            for (g, v) in known {
                residual = residual.sub(&bps_contribution(g, m, prec).scale(&v));
            }
        }
        // Peel genera from the top: the most negative power q^{1-g} has
        // coefficient n^g, since (2 + q + 1/q)^(g-1) is monic there.
        while let Some(low) = residual.lowest_exponent().filter(|e| *e < 0) {
            let genus = (1 - low) as u32;
            let n = residual.coeff(low).expect("stored term is known");
            residual = residual.sub(&bps_contribution(genus, 1, prec).scale(&n));
            solved.set(&beta, genus, n);
        }
        let n1 = residual.coeff(0).expect("prec >= 2");
        residual = residual.sub(&QLaurent::one(prec).scale(&n1));
        solved.set(&beta, 1, n1);
        let n0 = residual.coeff(1).expect("prec >= 2");
        residual = residual.sub(&bps_contribution(0, 1, prec).scale(&n0));
        solved.set(&beta, 0, n0);
        if let Some(e) = residual.lowest_exponent() {
            return Err(Error::InconsistentInput {
                beta: beta.to_string(),
                detail: format!(
                    "residual coefficient {} at q^{e} is outside the span of the BPS basis",
                    format_rational(&residual.coeff(e).expect("stored"))
                ),
            });
        }
    }
    Ok(solved)
}

/// Recovers the GV table reproducing a reduced DT series.
///
/// Takes `F' = log Z'`. Classes are visited by increasing degree; for each
/// one the multiple-cover contributions of already solved classes are
/// subtracted, then genera are read off from the most negative power of
/// `q` downward, the genus-1 value from `q^0` and the genus-0 value from
/// `q^1`. Whatever remains (checked at least through `q^2`) must vanish.
pub fn dt_reduced_to_gv(z: &DtSeries) -> Result<GvTable> {
    solve_gv_from_dt(z)?.into_table()
}

/// Full DT series `Z' * M(-q)^(chern_degree)`, with the degree-zero series
/// expanded to `q^order`.
pub fn dt_full(z: &DtSeries, x: &ThreefoldData, order: u32) -> Result<DtSeries> {
    if !z.is_reduced() {
        return Err(Error::WrongSeriesKind {
            expected: "reduced",
        });
    }
    let s = &z.series;
    let z0 = if x.chern_degree == 0 {
        QLaurent::one(Precision::Exact)
    } else {
        z0_partition_function(x, order)
    };
    let mut prec = vec![Precision::Exact; s.tmax() as usize + 1];
    prec[0] = z0.precision();
    let mut factor = MultiSeries::with_precisions(s.basis(), s.tmax(), prec);
    let zero = s.basis().zero();
    for (e, c) in z0.terms() {
        factor.add_term(&zero, e, c.clone());
    }
    Ok(DtSeries {
        series: s.mul(&factor)?,
        kind: DtKind::Full,
    })
}

/// Solves for `n^0_beta` from the `q^1 t^beta` coefficient of `Z'`, given
/// the invariants of all other classes that reach `t^beta`.
///
/// The genus-0 factor of `beta` enters that coefficient as `n^0_beta q t^beta`
/// and the rest of the product contributes `[q t^beta]` of the lower
/// table's series, so `n^0_beta = total - [q t^beta] Z'(lower)`.
/// Valid when `beta` carries no higher-genus entries that reach `q^1`.
pub fn genus_zero_from_dt_coefficient(
    lower: &GvTable,
    beta: &CurveClass,
    total: &Rational,
    window: QWindow,
) -> Result<Rational> {
    let z = gv_to_dt_reduced(lower, window, beta.degree())?;
    let c = z
        .series
        .coeff(beta, 1)
        .ok_or_else(|| Error::WindowTooNarrow(format!("q^1 t^{beta} is not inside the window")))?;
    Ok(total - c)
}
