//! GV and GW tables and their line-oriented file format.
//!
//! ```text
//! rank 1
//! weights 1
//! beta=[1] g=0 n=3
//! beta=[3] g=1 n=-10
//! ```
//!
//! GW tables use `N=<p>/<q>` in place of `n=<int>`. Lines starting with `#`
//! are comments.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::series::text::{join, parse_beta, split_header, Header};
use crate::series::{format_rational, parse_rational, ClassBasis, CurveClass, Rational};

/// Gopakumar-Vafa invariants `n^g_beta`, integer-valued, zero entries pruned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvTable {
    basis: ClassBasis,
    entries: BTreeMap<(CurveClass, u32), BigInt>,
}

impl GvTable {
    pub fn new(basis: &ClassBasis) -> Self {
        GvTable {
            basis: basis.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// Rank-one table from `(degree, genus, n)` triples.
    pub fn rank_one(entries: &[(u32, u32, i64)]) -> Self {
        let basis = ClassBasis::rank_one();
        let mut t = GvTable::new(&basis);
        for &(d, g, n) in entries {
            t.insert(&basis.d(d), g, BigInt::from(n))
                .expect("rank-one entries are valid");
        }
        t
    }

    pub fn basis(&self) -> &ClassBasis {
        &self.basis
    }

    /// Sets `n^genus_class`, replacing any previous value. Zero removes.
    pub fn insert(&mut self, class: &CurveClass, genus: u32, n: BigInt) -> Result<()> {
        check_class(&self.basis, class)?;
        if n.is_zero() {
            self.entries.remove(&(class.clone(), genus));
        } else {
            self.entries.insert((class.clone(), genus), n);
        }
        Ok(())
    }

    pub fn get(&self, class: &CurveClass, genus: u32) -> BigInt {
        self.entries
            .get(&(class.clone(), genus))
            .cloned()
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CurveClass, u32, &BigInt)> {
        self.entries.iter().map(|((c, g), n)| (c, *g, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_genus(&self) -> Option<u32> {
        self.entries.keys().map(|(_, g)| *g).max()
    }

    /// Largest genus with a nonzero entry at `class`.
    pub fn top_genus(&self, class: &CurveClass) -> Option<u32> {
        self.entries
            .keys()
            .filter(|(c, _)| c == class)
            .map(|(_, g)| *g)
            .max()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries
            .keys()
            .map(|(c, _)| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// Support classes in canonical order, without repetition.
    pub fn classes(&self) -> Vec<CurveClass> {
        let mut v: Vec<CurveClass> = self.entries.keys().map(|(c, _)| c.clone()).collect();
        v.dedup();
        v
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (basis, rows) = parse_rows(text, "n")?;
        let mut t = GvTable::new(&basis);
        for (line, class, g, value) in rows {
            let n: BigInt = value
                .parse()
                .map_err(|_| Error::parse(line, format!("expected an integer, got `{value}`")))?;
            if t.entries.contains_key(&(class.clone(), g)) {
                return Err(Error::parse(line, "duplicate entry"));
            }
            t.insert(&class, g, n)
                .map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(t)
    }
}

impl fmt::Display for GvTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_header(f, &self.basis)?;
        for (c, g, n) in self.entries() {
            writeln!(f, "beta={c} g={g} n={n}")?;
        }
        Ok(())
    }
}

/// Result of solving for GV invariants: rational values, with a report
/// of the entries that fail to be integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvSolution {
    basis: ClassBasis,
    entries: BTreeMap<(CurveClass, u32), Rational>,
}

impl GvSolution {
    pub(crate) fn new(basis: &ClassBasis) -> Self {
        GvSolution {
            basis: basis.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub(crate) fn set(&mut self, class: &CurveClass, genus: u32, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&(class.clone(), genus));
        } else {
            self.entries.insert((class.clone(), genus), value);
        }
    }

    pub fn get(&self, class: &CurveClass, genus: u32) -> Rational {
        self.entries
            .get(&(class.clone(), genus))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CurveClass, u32, &Rational)> {
        self.entries.iter().map(|((c, g), n)| (c, *g, n))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// Entries whose value is not an integer.
    pub fn integrality_report(&self) -> Vec<(CurveClass, u32, Rational)> {
        self.entries()
            .filter(|(_, _, v)| !v.is_integer())
            .map(|(c, g, v)| (c.clone(), g, v.clone()))
            .collect()
    }

    /// Converts to an integer table, failing on the first non-integer.
    pub fn into_table(self) -> Result<GvTable> {
        let mut t = GvTable::new(&self.basis);
        for ((c, g), v) in self.entries {
            if !v.is_integer() {
                return Err(Error::IntegralityViolation {
                    beta: c.to_string(),
                    genus: g,
                    value: format_rational(&v),
                });
            }
            t.insert(&c, g, v.to_integer())?;
        }
        Ok(t)
    }
}

impl fmt::Display for GvSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_header(f, &self.basis)?;
        for (c, g, v) in self.entries() {
            if v.is_integer() {
                writeln!(f, "beta={c} g={g} n={}", v.numer())?;
            } else {
                writeln!(f, "beta={c} g={g} n={}", format_rational(v))?;
            }
        }
        Ok(())
    }
}

/// Gromov-Witten invariants `N^g_beta`. Zero entries are kept, so that a
/// missing entry can be told apart from a vanishing one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwTable {
    basis: ClassBasis,
    entries: BTreeMap<(CurveClass, u32), Rational>,
}

impl GwTable {
    pub fn new(basis: &ClassBasis) -> Self {
        GwTable {
            basis: basis.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &ClassBasis {
        &self.basis
    }

    pub fn insert(&mut self, class: &CurveClass, genus: u32, value: Rational) -> Result<()> {
        check_class(&self.basis, class)?;
        self.entries.insert((class.clone(), genus), value);
        Ok(())
    }

    pub fn get(&self, class: &CurveClass, genus: u32) -> Option<&Rational> {
        self.entries.get(&(class.clone(), genus))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CurveClass, u32, &Rational)> {
        self.entries.iter().map(|((c, g), n)| (c, *g, n))
    }

    pub fn classes(&self) -> Vec<CurveClass> {
        let mut v: Vec<CurveClass> = self.entries.keys().map(|(c, _)| c.clone()).collect();
        v.dedup();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (basis, rows) = parse_rows(text, "N")?;
        let mut t = GwTable::new(&basis);
        for (line, class, g, value) in rows {
            let v = parse_rational(&value)
                .ok_or_else(|| Error::parse(line, format!("expected p/q, got `{value}`")))?;
            if t.entries.contains_key(&(class.clone(), g)) {
                return Err(Error::parse(line, "duplicate entry"));
            }
            t.insert(&class, g, v)
                .map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(t)
    }
}

impl fmt::Display for GwTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_header(f, &self.basis)?;
        for (c, g, v) in self.entries() {
            writeln!(f, "beta={c} g={g} N={}", format_rational(v))?;
        }
        Ok(())
    }
}

fn check_class(basis: &ClassBasis, class: &CurveClass) -> Result<()> {
    if class.rank() != basis.rank() {
        return Err(Error::RankMismatch {
            left: basis.rank(),
            right: class.rank(),
        });
    }
    if class.is_zero() {
        return Err(Error::InvalidBasis("tables have no beta=0 entries".into()));
    }
    Ok(())
}

fn write_header(f: &mut fmt::Formatter<'_>, basis: &ClassBasis) -> fmt::Result {
    writeln!(f, "rank {}", basis.rank())?;
    writeln!(f, "weights {}", join(basis.weights()))
}

type Row = (usize, CurveClass, u32, String);

fn parse_rows(text: &str, value_key: &str) -> Result<(ClassBasis, Vec<Row>)> {
    let mut header = Header::default();
    let mut raw = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = split_header(l) {
            if !header.accept(key, value, line)? {
                return Err(Error::parse(line, format!("unknown header `{key}`")));
            }
            continue;
        }
        raw.push((line, l));
    }
    let basis = header.basis(1)?;
    let prefix = format!("{value_key}=");
    let mut rows = Vec::new();
    for (line, l) in raw {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(
                line,
                format!("expected `beta=[..] g=<int> {value_key}=<value>`"),
            ));
        }
        let class = basis
            .class(parse_beta(toks[0], line)?)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        let g: u32 = toks[1]
            .strip_prefix("g=")
            .and_then(|g| g.parse().ok())
            .ok_or_else(|| Error::parse(line, format!("bad genus `{}`", toks[1])))?;
        let value = toks[2].strip_prefix(prefix.as_str()).ok_or_else(|| {
            Error::parse(line, format!("expected `{prefix}...`, got `{}`", toks[2]))
        })?;
        if value.starts_with('+') || value.is_empty() {
            return Err(Error::parse(line, format!("bad value `{value}`")));
        }
        rows.push((line, class, g, value.to_string()));
    }
    Ok((basis, rows))
}
