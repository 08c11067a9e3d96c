//! Line-oriented text form of [`MultiSeries`].
//!
//! ```text
//! rank 1
//! weights 1
//! tmax 3
//! prec 4,4,4,4
//! beta=[0] q^0 coeff=1/1
//! beta=[1] q^1 coeff=3/1
//! ```
//!
//! Monomial lines are sorted by degree, then lexicographically by class,
//! then by q-exponent. `prec` lists the precision of each degree `0..=tmax`
//! (an integer or `exact`).

use std::fmt;

use super::{format_rational, parse_rational, ClassBasis, MultiSeries, Precision};
use crate::error::{Error, Result};

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank())?;
        writeln!(f, "weights {}", join(self.basis().weights()))?;
        writeln!(f, "tmax {}", self.tmax())?;
        writeln!(f, "prec {}", join(self.precisions()))?;
        for (c, e, x) in self.terms() {
            writeln!(f, "beta={c} q^{e} coeff={}", format_rational(x))?;
        }
        Ok(())
    }
}

pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Header lines shared by the series and table formats.
#[derive(Default)]
pub(crate) struct Header {
    pub rank: Option<usize>,
    pub weights: Option<Vec<u32>>,
}

impl Header {
    /// Consumes `rank` / `weights` lines; returns `false` for other keys.
    pub fn accept(&mut self, key: &str, value: &str, line: usize) -> Result<bool> {
        match key {
            "rank" => {
                let r = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad rank `{value}`")))?;
                self.rank = Some(r);
            }
            "weights" => {
                let w = value
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::parse(line, format!("bad weights `{value}`")))?;
                self.weights = Some(w);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn basis(&self, line: usize) -> Result<ClassBasis> {
        let rank = self.rank.unwrap_or(1);
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; rank]);
        if weights.len() != rank {
            return Err(Error::parse(
                line,
                format!("rank {rank} but {} weights", weights.len()),
            ));
        }
        ClassBasis::new(weights).map_err(|e| Error::parse(line, e.to_string()))
    }
}

/// Parses `beta=[..]`, returning the coordinates.
pub(crate) fn parse_beta(token: &str, line: usize) -> Result<Vec<u32>> {
    let body = token
        .strip_prefix("beta=")
        .ok_or_else(|| Error::parse(line, format!("expected beta=[...], got `{token}`")))?;
    super::CurveClass::parse(body).ok_or_else(|| Error::parse(line, format!("bad class `{body}`")))
}

pub(crate) fn split_header(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(char::is_whitespace)?;
    if k.contains('=') {
        None
    } else {
        Some((k, v.trim()))
    }
}

/// A header line not understood by the series parser: (line, key, value).
pub(crate) type ExtraHeader = (usize, String, String);

impl MultiSeries {
    /// Parses the text form. Unknown header keys are rejected.
    pub fn from_text(text: &str) -> Result<Self> {
        let (s, extra) = Self::parse_with_extras(text)?;
        if let Some((line, key, _)) = extra.first() {
            return Err(Error::parse(*line, format!("unknown header `{key}`")));
        }
        Ok(s)
    }

    /// Parses the text form, handing back header lines it does not know.
    pub(crate) fn parse_with_extras(text: &str) -> Result<(Self, Vec<ExtraHeader>)> {
        let mut header = Header::default();
        let mut tmax: Option<u32> = None;
        let mut prec: Option<Vec<Precision>> = None;
        let mut extras = Vec::new();
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some((key, value)) = split_header(l) {
                if header.accept(key, value, line)? {
                    continue;
                }
                match key {
                    "tmax" => {
                        tmax = Some(
                            value
                                .parse()
                                .map_err(|_| Error::parse(line, format!("bad tmax `{value}`")))?,
                        )
                    }
                    "prec" => {
                        prec = Some(
                            value
                                .split(',')
                                .map(|p| p.parse::<Precision>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|e| Error::parse(line, e))?,
                        )
                    }
                    _ => extras.push((line, key.to_string(), value.to_string())),
                }
                continue;
            }
            entries.push((line, l));
        }
        let basis = header.basis(1)?;
        let tmax = tmax.ok_or_else(|| Error::parse(1, "missing `tmax` header"))?;
        let prec = prec.ok_or_else(|| Error::parse(1, "missing `prec` header"))?;
        if prec.len() != tmax as usize + 1 {
            return Err(Error::parse(
                1,
                format!("`prec` needs {} entries, got {}", tmax + 1, prec.len()),
            ));
        }
        let mut series = MultiSeries::with_precisions(&basis, tmax, prec);
        for (line, l) in entries {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::parse(line, "expected `beta=[..] q^k coeff=p/q`"));
            }
            let coords = parse_beta(toks[0], line)?;
            let class = basis
                .class(coords)
                .map_err(|e| Error::parse(line, e.to_string()))?;
            let exp: i64 = toks[1]
                .strip_prefix("q^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| Error::parse(line, format!("bad exponent `{}`", toks[1])))?;
            let coeff = toks[2]
                .strip_prefix("coeff=")
                .and_then(parse_rational)
                .ok_or_else(|| Error::parse(line, format!("bad coefficient `{}`", toks[2])))?;
            if class.degree() > tmax || !series.precision(class.degree()).admits(exp) {
                return Err(Error::parse(
                    line,
                    "monomial lies outside the declared truncation",
                ));
            }
            series.add_term(&class, exp, coeff);
        }
        Ok((series, extras))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    #[test]
    fn golden_form() {
        let b = ClassBasis::new(vec![1, 1]).unwrap();
        let mut s = MultiSeries::one(&b, 2, Precision::Finite(3));
        s.add_term(&b.class(vec![0, 1]).unwrap(), -1, ratio(-1, 2));
        s.add_term(&b.class(vec![1, 0]).unwrap(), 2, rat(3));
        s.add_term(&b.class(vec![1, 0]).unwrap(), 1, rat(1));
        let text = s.to_string();
        assert_eq!(
            text,
            "rank 2\nweights 1,1\ntmax 2\nprec 3,3,3\n\
             beta=[0,0] q^0 coeff=1/1\n\
             beta=[0,1] q^-1 coeff=-1/2\n\
             beta=[1,0] q^1 coeff=1/1\n\
             beta=[1,0] q^2 coeff=3/1\n"
        );
        assert_eq!(MultiSeries::from_text(&text).unwrap(), s);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "rank 1\nweights 1\ntmax 1\nprec 2,2\nbeta=[1] q^x coeff=1\n";
        assert_eq!(
            MultiSeries::from_text(bad),
            Err(Error::parse(5, "bad exponent `q^x`"))
        );
        let outside = "tmax 1\nprec 2,2\nbeta=[1] q^3 coeff=1\n";
        assert!(matches!(
            MultiSeries::from_text(outside),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            MultiSeries::from_text("tmax 1\nprec 2,2\nfoo 3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
