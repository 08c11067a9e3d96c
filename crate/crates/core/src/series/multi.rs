use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use super::{binomial, ClassBasis, CurveClass, Precision, QLaurent, Rational};
use crate::error::{Error, Result};

type Coeffs = BTreeMap<i64, Rational>;

/// Truncated series `sum_beta c_beta(q) t^beta`.
///
/// Classes of degree above `tmax` are truncated. For each degree `d` the
/// coefficients of `q^e` are exact for `e <= precision(d)` and unknown
/// above. Precision is tracked per degree because negative powers of `q`
/// accumulate linearly with the degree in products: a single window for all
/// classes would either contaminate or collapse after a few products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    basis: ClassBasis,
    tmax: u32,
    prec: Vec<Precision>,
    terms: BTreeMap<CurveClass, Coeffs>,
}

impl MultiSeries {
    /// Zero series known up to `prec` in every degree.
    pub fn zero(basis: &ClassBasis, tmax: u32, prec: Precision) -> Self {
        Self::with_precisions(basis, tmax, vec![prec; tmax as usize + 1])
    }

    /// Zero series with an explicit precision per degree `0..=tmax`.
    pub fn with_precisions(basis: &ClassBasis, tmax: u32, mut prec: Vec<Precision>) -> Self {
        assert_eq!(prec.len(), tmax as usize + 1, "one precision per degree");
        for (p, ok) in prec.iter_mut().zip(basis.realizable_degrees(tmax)) {
            if !ok {
                *p = Precision::Exact;
            }
        }
        MultiSeries {
            basis: basis.clone(),
            tmax,
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &ClassBasis, tmax: u32, prec: Precision) -> Self {
        let mut s = Self::zero(basis, tmax, prec);
        s.add_term(&basis.zero(), 0, Rational::one());
        s
    }

    pub fn monomial(
        basis: &ClassBasis,
        tmax: u32,
        prec: Precision,
        class: &CurveClass,
        exp: i64,
        coeff: Rational,
    ) -> Self {
        let mut s = Self::zero(basis, tmax, prec);
        s.add_term(class, exp, coeff);
        s
    }

    pub fn from_terms<'a, I>(basis: &ClassBasis, tmax: u32, prec: Precision, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a CurveClass, i64, Rational)>,
    {
        let mut s = Self::zero(basis, tmax, prec);
        for (c, e, x) in terms {
            s.add_term(c, e, x);
        }
        s
    }

    /// Adds `coeff * q^exp * t^class`; terms beyond either truncation are
    /// silently dropped.
    pub fn add_term(&mut self, class: &CurveClass, exp: i64, coeff: Rational) {
        assert_eq!(
            class.rank(),
            self.basis.rank(),
            "class rank differs from series rank"
        );
        if class.degree() > self.tmax || !self.prec[class.degree() as usize].admits(exp) {
            return;
        }
        let slot = self.terms.entry(class.clone()).or_default();
        let entry = slot.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            slot.remove(&exp);
            if slot.is_empty() {
                self.terms.remove(class);
            }
        }
    }

    pub fn basis(&self) -> &ClassBasis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn tmax(&self) -> u32 {
        self.tmax
    }

    pub fn precision(&self, degree: u32) -> Precision {
        self.prec[degree as usize]
    }

    pub fn precisions(&self) -> &[Precision] {
        &self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Classes with at least one nonzero coefficient, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &CurveClass> {
        self.terms.keys()
    }

    /// Every stored monomial in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, i64, &Rational)> {
        self.terms
            .iter()
            .flat_map(|(c, m)| m.iter().map(move |(e, x)| (c, *e, x)))
    }

    /// The `t^class` coefficient as a Laurent series in `q`.
    pub fn coefficient(&self, class: &CurveClass) -> QLaurent {
        let prec = if class.degree() > self.tmax {
            Precision::Finite(i64::MIN / 4)
        } else {
            self.precision(class.degree())
        };
        match self.terms.get(class) {
            Some(m) => QLaurent::from_terms(m.iter().map(|(e, x)| (*e, x.clone())), prec),
            None => QLaurent::zero(prec),
        }
    }

    /// Coefficient of `q^exp t^class`, or `None` when it is unknown.
    pub fn coeff(&self, class: &CurveClass, exp: i64) -> Option<Rational> {
        if class.degree() > self.tmax {
            return None;
        }
        self.coefficient(class).coeff(exp)
    }

    /// Lowest possibly-nonzero exponent in each degree (`Exact` = none).
    fn valuations(&self) -> Vec<Precision> {
        let mut v: Vec<Precision> = self.prec.iter().map(|p| p.shift(1)).collect();
        for (c, m) in &self.terms {
            if let Some(&e) = m.keys().next() {
                let slot = &mut v[c.degree() as usize];
                *slot = (*slot).min(Precision::Finite(e));
            }
        }
        v
    }

    fn check_compatible(&self, other: &MultiSeries) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.weights().to_vec(),
                right: other.basis.weights().to_vec(),
            });
        }
        Ok(())
    }

    /// Lower the precision in every degree to at most `prec`.
    pub fn truncate(&self, prec: Precision) -> Self {
        let p = self.prec.iter().map(|x| (*x).min(prec)).collect();
        self.restrict(self.tmax, p)
    }

    /// Restrict to a smaller `tmax` and to the given per-degree precision
    /// (each bound is also capped at the current one).
    pub fn restrict(&self, tmax: u32, prec: Vec<Precision>) -> Self {
        let tmax = tmax.min(self.tmax);
        let prec = (0..=tmax as usize)
            .map(|d| prec[d].min(self.prec[d]))
            .collect();
        let mut out = Self::with_precisions(&self.basis, tmax, prec);
        for (c, e, x) in self.terms() {
            out.add_term(c, e, x.clone());
        }
        out
    }

    /// Overwrites the precision of one degree. Used to record exact
    /// knowledge that the arithmetic could not infer on its own.
    pub fn set_precision(&mut self, degree: u32, prec: Precision) {
        self.prec[degree as usize] = prec;
        let tmax = self.tmax;
        let terms = std::mem::take(&mut self.terms);
        for (c, m) in terms {
            for (e, x) in m {
                if c.degree() <= tmax {
                    self.add_term(&c, e, x);
                }
            }
        }
    }

    pub fn add(&self, other: &MultiSeries) -> Result<Self> {
        self.check_compatible(other)?;
        let tmax = self.tmax.min(other.tmax);
        let prec = (0..=tmax as usize)
            .map(|d| self.prec[d].min(other.prec[d]))
            .collect();
        let mut out = Self::with_precisions(&self.basis, tmax, prec);
        for (c, e, x) in self.terms().chain(other.terms()) {
            out.add_term(c, e, x.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::with_precisions(&self.basis, self.tmax, self.prec.clone());
        if s.is_zero() {
            return out;
        }
        for (c, e, x) in self.terms() {
            out.add_term(c, e, x * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &MultiSeries) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product within both truncations.
    ///
    /// In degree `d` the result is known up to the minimum over splits
    /// `d = d1 + d2` of `min(p_a(d1) + v_b(d2), p_b(d2) + v_a(d1))`, where
    /// `p` is the precision and `v` the valuation in that degree.
    pub fn mul(&self, other: &MultiSeries) -> Result<Self> {
        self.check_compatible(other)?;
        let tmax = self.tmax.min(other.tmax);
        let (va, vb) = (self.valuations(), other.valuations());
        let mut prec = vec![Precision::Exact; tmax as usize + 1];
        for (d, slot) in prec.iter_mut().enumerate() {
            for (d1, (pa, a)) in self.prec.iter().zip(&va).enumerate().take(d + 1) {
                let d2 = d - d1;
                let bound = pa.plus(vb[d2]).min(other.prec[d2].plus(*a));
                *slot = (*slot).min(bound);
            }
        }
        let mut out = Self::with_precisions(&self.basis, tmax, prec);
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                if ca.degree() + cb.degree() > tmax {
                    continue;
                }
                let class = ca.add(cb);
                let p = out.prec[class.degree() as usize];
                let mut acc: Coeffs = BTreeMap::new();
                for (ea, xa) in ma {
                    for (eb, xb) in mb {
                        let e = ea + eb;
                        if !p.admits(e) {
                            break;
                        }
                        *acc.entry(e).or_insert_with(Rational::zero) += xa * xb;
                    }
                }
                for (e, x) in acc {
                    out.add_term(&class, e, x);
                }
            }
        }
        Ok(out)
    }

    /// `1` known exactly everywhere except degree 0, where it is known to `p0`.
    fn unit_with_degree_zero_precision(&self, p0: Precision) -> Self {
        let mut prec = vec![Precision::Exact; self.tmax as usize + 1];
        prec[0] = p0;
        let mut one = Self::with_precisions(&self.basis, self.tmax, prec);
        one.add_term(&self.basis.zero(), 0, Rational::one());
        one
    }

    /// Splits off the uncertainty of the (zero) degree-0 part: returns the
    /// series with degree 0 declared exact, and the old degree-0 precision.
    fn without_degree_zero(&self) -> Result<(Self, Precision)> {
        if self.terms.keys().any(|c| c.is_zero()) {
            return Err(Error::NonzeroConstantPart);
        }
        let mut plus = self.clone();
        plus.prec[0] = Precision::Exact;
        Ok((plus, self.prec[0]))
    }

    /// `exp(f)` for `f` without a `beta = 0` part.
    pub fn exp(&self) -> Result<Self> {
        let (f, p0) = self.without_degree_zero()?;
        let mut acc = Self::one(&self.basis, self.tmax, Precision::Exact);
        let mut power = acc.clone();
        for k in 1..=self.tmax {
            power = power
                .mul(&f)?
                .scale(&Rational::new(1.into(), (k as i64).into()));
            if power.is_zero() && power.prec.iter().all(|p| *p == Precision::Exact) {
                break;
            }
            acc = acc.add(&power)?;
        }
        acc.mul(&self.unit_with_degree_zero_precision(p0))
    }

    /// `log(z)` for `z` whose `beta = 0` part is exactly `1`.
    pub fn log(&self) -> Result<Self> {
        let zero = self.basis.zero();
        let constant = self.coefficient(&zero);
        let p0 = self.prec[0];
        if !p0.admits(0)
            || constant.terms().count() != 1
            || constant.coeff(0) != Some(Rational::one())
        {
            return Err(Error::ConstantTermNotOne);
        }
        let unit = self.unit_with_degree_zero_precision(p0);
        let mut z = self.mul(&unit)?;
        z.set_precision(0, Precision::Exact);
        let u = z.sub(&Self::one(&self.basis, self.tmax, Precision::Exact))?;
        let mut acc = Self::zero(&self.basis, self.tmax, Precision::Exact);
        let mut power = Self::one(&self.basis, self.tmax, Precision::Exact);
        for k in 1..=self.tmax {
            power = power.mul(&u)?;
            let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into());
            acc = acc.add(&power.scale(&c))?;
        }
        acc.prec[0] = acc.prec[0].min(p0);
        Ok(acc)
    }

    /// `(1 + u)^k` by the generalized binomial series, for any integer `k`.
    pub fn binom_power(&self, k: impl Into<BigInt>) -> Result<Self> {
        let k: BigInt = k.into();
        let (u, p0) = self.without_degree_zero()?;
        let unit = self.unit_with_degree_zero_precision(p0);
        let u = u.mul(&unit)?;
        let mut acc = Self::one(&self.basis, self.tmax, Precision::Exact);
        let mut power = acc.clone();
        for j in 1..=self.tmax {
            let c = binomial(&k, j);
            if c.is_zero() {
                break;
            }
            power = power.mul(&u)?;
            acc = acc.add(&power.scale(&c))?;
        }
        acc.mul(&unit)
    }

    /// Multiple-cover substitution `q^a t^beta -> q^(m a) t^(m beta)`.
    pub fn cover_substitute(&self, m: u32) -> Self {
        assert!(m >= 1, "cover degree must be positive");
        let prec = (0..=self.tmax)
            .map(|d| {
                let own = self.prec[d as usize];
                if d % m == 0 {
                    own.min(self.prec[(d / m) as usize].scale(m))
                } else {
                    own
                }
            })
            .collect();
        let mut out = Self::with_precisions(&self.basis, self.tmax, prec);
        for (c, e, x) in self.terms() {
            out.add_term(&c.scale(m), e * m as i64, x.clone());
        }
        out
    }

    /// `q -> -q`.
    pub fn negate_q(&self) -> Self {
        let mut out = Self::with_precisions(&self.basis, self.tmax, self.prec.clone());
        for (c, e, x) in self.terms() {
            out.add_term(c, e, if e % 2 == 0 { x.clone() } else { -x });
        }
        out
    }

    /// Equality on the common truncation: same classes and coefficients
    /// wherever both series are known.
    pub fn agrees_with(&self, other: &MultiSeries) -> bool {
        if self.basis != other.basis {
            return false;
        }
        let tmax = self.tmax.min(other.tmax);
        let prec: Vec<Precision> = (0..=tmax as usize)
            .map(|d| self.prec[d].min(other.prec[d]))
            .collect();
        let a = self.restrict(tmax, prec.clone());
        let b = other.restrict(tmax, prec);
        a.terms == b.terms
    }

    /// Whether every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, _, x)| x.is_integer())
    }

    /// Coefficients of `q^exp t^c` for `c = 0, 1, ...` in a rank-one
    /// series. Panics if any of them lies outside the known window.
    pub fn rank_one_column(&self, exp: i64) -> Vec<Rational> {
        let w = self.basis.weights()[0];
        (0..=self.tmax / w)
            .map(|c| {
                self.coeff(&self.basis.d(c), exp)
                    .expect("coefficient outside the known window")
            })
            .collect()
    }
}
