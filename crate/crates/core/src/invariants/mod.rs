//! The GV / GW / DT triangle.
//!
//! * GV to DT: the product formula over classes and genera
//!   ([`gv_to_dt_reduced`]) and its inverse ([`dt_reduced_to_gv`]).
//! * GV to GW: the multiple-cover expansion in the string coupling
//!   ([`gv_to_gw`]) and its triangular inverse ([`gw_to_gv`]).
//! * The degree-zero partition function `M(-q)^e` ([`z0_partition_function`]).
//!
//! The change of variables `q = -exp(i lambda)` is handled algebraically:
//! `(2 sin(m lambda / 2))^2 = 2 - (-q)^m - (-q)^(-m)`, so no floating point
//! or complex arithmetic is involved anywhere.

mod dt;
mod gw;
mod tables;

use std::fmt;

pub use dt::{
    bps_contribution, dt_free_energy, dt_full, dt_reduced_to_gv, free_energy_from_gv, genus_factor,
    genus_zero_from_dt_coefficient, gv_to_dt_reduced, solve_gv_from_dt, z0_partition_function,
};
pub use gw::{gv_to_gw, gv_to_lambda_series, gw_to_gv, sine_power_coefficients, LambdaSeries};
pub use tables::{GvSolution, GvTable, GwTable};

use crate::error::{Error, Result};
use crate::series::MultiSeries;

/// Topological input for the degree-zero series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreefoldData {
    /// Topological Euler characteristic `e(X)`.
    pub euler: i64,
    /// `int_X c_3 - c_1 c_2`; equal to `euler` when `c_1 = 0`.
    pub chern_degree: i64,
}

impl ThreefoldData {
    pub fn calabi_yau(euler: i64) -> Self {
        ThreefoldData {
            euler,
            chern_degree: euler,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtKind {
    /// `Z'`, normalized by the degree-zero series.
    Reduced,
    /// `Z = Z' * Z_0`.
    Full,
}

impl DtKind {
    fn as_str(self) -> &'static str {
        match self {
            DtKind::Reduced => "reduced",
            DtKind::Full => "full",
        }
    }
}

/// A DT partition function, full or reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtSeries {
    pub series: MultiSeries,
    pub kind: DtKind,
}

impl DtSeries {
    pub fn reduced(series: MultiSeries) -> Self {
        DtSeries {
            series,
            kind: DtKind::Reduced,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.kind == DtKind::Reduced
    }

    /// Same text as [`MultiSeries`] with a leading `kind` line
    /// (`reduced` is assumed when it is absent).
    pub fn from_text(text: &str) -> Result<Self> {
        let (series, extras) = MultiSeries::parse_with_extras(text)?;
        let mut kind = DtKind::Reduced;
        for (line, key, value) in extras {
            match (key.as_str(), value.as_str()) {
                ("kind", "reduced") => kind = DtKind::Reduced,
                ("kind", "full") => kind = DtKind::Full,
                ("kind", other) => {
                    return Err(Error::parse(line, format!("unknown kind `{other}`")))
                }
                _ => return Err(Error::parse(line, format!("unknown header `{key}`"))),
            }
        }
        Ok(DtSeries { series, kind })
    }
}

impl fmt::Display for DtSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind {}", self.kind.as_str())?;
        write!(f, "{}", self.series)
    }
}
