//! Exact series arithmetic for converting curve counts of Calabi-Yau
//! threefolds between the GV, GW and DT formulations.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated Laurent and multi-class series over exact rationals.
//! * [`partitions`]: integer and plane partitions, and the MacMahon function.
//! * [`invariants`]: GV/GW/DT tables and the converters between them.
//! * [`kkv`]: Euler-characteristic formulas for BPS states of families of curves.
//! * [`datasets`]: bundled local models.
//! * [`acceptance`]: the end-to-end checks run by `curvecount check`.

pub mod acceptance;
pub mod datasets;
pub mod error;
pub mod invariants;
pub mod kkv;
pub mod partitions;
pub mod series;

pub use error::{Error, Result};
pub use invariants::{DtKind, DtSeries, GvSolution, GvTable, GwTable, LambdaSeries, ThreefoldData};
pub use kkv::KkvInput;
pub use series::{ClassBasis, CurveClass, MultiSeries, Precision, QLaurent, QWindow, Rational};
