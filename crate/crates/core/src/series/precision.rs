use std::fmt;

/// Upper bound on the exponents whose coefficients are known.
///
/// `Exact` means every coefficient is known. The same type doubles as an
/// extended integer for valuations, where `Exact` plays the role of `+inf`
/// (an identically zero series).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precision {
    Finite(i64),
    Exact,
}

impl Precision {
    pub fn admits(self, exp: i64) -> bool {
        match self {
            Precision::Finite(p) => exp <= p,
            Precision::Exact => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Precision::Finite(p) => Some(p),
            Precision::Exact => None,
        }
    }

    pub fn shift(self, by: i64) -> Self {
        match self {
            Precision::Finite(p) => Precision::Finite(p + by),
            Precision::Exact => Precision::Exact,
        }
    }

    /// Extended addition; `Exact` absorbs.
    pub fn plus(self, other: Precision) -> Self {
        match (self, other) {
            (Precision::Finite(a), Precision::Finite(b)) => Precision::Finite(a + b),
            _ => Precision::Exact,
        }
    }

    /// Multiply a bound by a positive integer.
    pub fn scale(self, m: u32) -> Self {
        match self {
            Precision::Finite(p) => Precision::Finite(p * m as i64),
            Precision::Exact => Precision::Exact,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Finite(p) => write!(f, "{p}"),
            Precision::Exact => f.write_str("exact"),
        }
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "exact" => Ok(Precision::Exact),
            t => t
                .parse::<i64>()
                .map(Precision::Finite)
                .map_err(|_| format!("bad precision `{t}`")),
        }
    }
}

/// Requested q-exponent window `[qmin, qmax]`.
///
/// `qmax` is the truncation: every coefficient reported at or below it is
/// exact. `qmin` is the lowest exponent the caller needs to see; routines
/// that produce a leading coefficient below it fail with
/// [`Error::WindowTooNarrow`](crate::Error::WindowTooNarrow). Terms below
/// `qmin` that arise from products are still kept, since dropping known
/// low-order terms would corrupt later products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QWindow {
    pub qmin: i64,
    pub qmax: i64,
}

impl QWindow {
    pub fn new(qmin: i64, qmax: i64) -> Self {
        QWindow { qmin, qmax }
    }

    pub fn contains(&self, exp: i64) -> bool {
        self.qmin <= exp && exp <= self.qmax
    }

    pub fn precision(&self) -> Precision {
        Precision::Finite(self.qmax)
    }

    /// Smallest window that lets a DT series with classes up to degree
    /// `tmax` and genus up to `max_genus` be inverted back to GV data.
    ///
    /// After taking the logarithm, a degree-`d` coefficient loses up to
    /// `(max_genus - 1) * (d - 1)` orders of precision, and the inversion
    /// needs the `q^1` and `q^2` coefficients of every class.
    pub fn for_inversion(max_genus: u32, tmax: u32) -> Self {
        let spread = max_genus.saturating_sub(1) as i64;
        QWindow {
            qmin: (1 - max_genus as i64).min(-1),
            qmax: 2 + spread * (tmax.max(1) as i64 - 1),
        }
    }
}

impl Default for QWindow {
    fn default() -> Self {
        QWindow { qmin: -3, qmax: 8 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_exact_on_top() {
        assert!(Precision::Finite(i64::MAX - 1) < Precision::Exact);
        assert_eq!(
            Precision::Finite(3).min(Precision::Exact),
            Precision::Finite(3)
        );
        assert_eq!(
            Precision::Finite(3).plus(Precision::Finite(-5)),
            Precision::Finite(-2)
        );
        assert_eq!(
            Precision::Exact.plus(Precision::Finite(-5)),
            Precision::Exact
        );
    }

    #[test]
    fn parse_round_trip() {
        for p in [
            Precision::Exact,
            Precision::Finite(-4),
            Precision::Finite(12),
        ] {
            assert_eq!(p.to_string().parse::<Precision>().unwrap(), p);
        }
    }
}
