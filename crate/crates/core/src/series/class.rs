use std::fmt;

use num::Integer;

use crate::error::{Error, Result};

/// Basis of the curve lattice together with positive degree weights.
///
/// The degree of a class is the weighted sum of its coordinates, so every
/// nonzero effective class has positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassBasis {
    weights: Vec<u32>,
}

impl ClassBasis {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidBasis("rank must be at least 1".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidBasis(format!(
                "weights must be positive, got {weights:?}"
            )));
        }
        Ok(ClassBasis { weights })
    }

    /// Rank one, weight one.
    pub fn rank_one() -> Self {
        ClassBasis { weights: vec![1] }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn class(&self, coords: Vec<u32>) -> Result<CurveClass> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: coords.len(),
            });
        }
        let degree = coords.iter().zip(&self.weights).map(|(c, w)| c * w).sum();
        Ok(CurveClass { degree, coords })
    }

    /// Rank-one shortcut; panics if the basis has higher rank.
    pub fn d(&self, degree_coord: u32) -> CurveClass {
        assert_eq!(self.rank(), 1, "ClassBasis::d needs a rank-one basis");
        CurveClass {
            degree: degree_coord * self.weights[0],
            coords: vec![degree_coord],
        }
    }

    pub fn zero(&self) -> CurveClass {
        CurveClass {
            degree: 0,
            coords: vec![0; self.rank()],
        }
    }

    /// Every class of degree at most `tmax`, in canonical order.
    pub fn classes_up_to(&self, tmax: u32) -> Vec<CurveClass> {
        let mut out = Vec::new();
        let mut coords = vec![0u32; self.rank()];
        self.enumerate(0, tmax, &mut coords, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, budget: u32, coords: &mut Vec<u32>, out: &mut Vec<CurveClass>) {
        if i == self.rank() {
            let degree = coords.iter().zip(&self.weights).map(|(c, w)| c * w).sum();
            out.push(CurveClass {
                degree,
                coords: coords.clone(),
            });
            return;
        }
        let w = self.weights[i];
        for c in 0..=budget / w {
            coords[i] = c;
            self.enumerate(i + 1, budget - c * w, coords, out);
        }
        coords[i] = 0;
    }

    /// Which degrees in `0..=tmax` are attained by some class.
    pub fn realizable_degrees(&self, tmax: u32) -> Vec<bool> {
        let mut reach = vec![false; tmax as usize + 1];
        reach[0] = true;
        for d in 1..=tmax as usize {
            reach[d] = self
                .weights
                .iter()
                .any(|&w| (w as usize) <= d && reach[d - w as usize]);
        }
        reach
    }
}

impl Default for ClassBasis {
    fn default() -> Self {
        Self::rank_one()
    }
}

/// Effective curve class: a non-negative coordinate vector and its degree.
///
/// Ordering is by degree first and then lexicographic on coordinates, which
/// is the canonical order of every text format.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass {
    degree: u32,
    coords: Vec<u32>,
}

impl CurveClass {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        debug_assert_eq!(self.rank(), other.rank());
        CurveClass {
            degree: self.degree + other.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, m: u32) -> CurveClass {
        CurveClass {
            degree: self.degree * m,
            coords: self.coords.iter().map(|c| c * m).collect(),
        }
    }

    /// `self / m` when every coordinate is divisible by `m`.
    pub fn divide(&self, m: u32) -> Option<CurveClass> {
        if m == 0 || self.coords.iter().any(|c| c % m != 0) {
            return None;
        }
        Some(CurveClass {
            degree: self.degree / m,
            coords: self.coords.iter().map(|c| c / m).collect(),
        })
    }

    /// Gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> u32 {
        self.coords.iter().fold(0, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// All `(m, beta/m)` with `m >= 1` dividing the class.
    pub fn divisors(&self) -> Vec<(u32, CurveClass)> {
        let g = self.content();
        (1..=g)
            .filter(|m| g.is_multiple_of(*m))
            .map(|m| (m, self.divide(m).expect("m divides content")))
            .collect()
    }

    pub fn parse(text: &str) -> Option<Vec<u32>> {
        let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
        inner
            .split(',')
            .map(|c| c.trim().parse::<u32>().ok())
            .collect()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
