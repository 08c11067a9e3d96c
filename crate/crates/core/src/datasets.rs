//! Bundled local models.
//!
//! Tables ship as text files under `data/` and are compiled in; setting
//! `GVDT_DATA_DIR` makes [`load_example`] read `<dir>/<name>.gv` instead.

use std::path::PathBuf;

use num::BigInt;

use crate::error::{Error, Result};
use crate::invariants::GvTable;

pub const EXAMPLE_NAMES: [&str; 3] = ["local_p1", "local_elliptic", "local_p2_low_degree"];

pub const DATA_DIR_ENV: &str = "GVDT_DATA_DIR";

/// Default number of classes in the elliptic model.
pub const ELLIPTIC_DEFAULT_CLASSES: u32 = 10;

const LOCAL_P1: &str = include_str!("../data/local_p1.gv");
const LOCAL_ELLIPTIC: &str = include_str!("../data/local_elliptic.gv");
const LOCAL_P2: &str = include_str!("../data/local_p2_low_degree.gv");

/// A named local model: its GV table, Euler characteristic and values
/// expected from computations on it (not part of the input table).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleModel {
    pub name: &'static str,
    pub table: GvTable,
    pub euler: i64,
    pub notes: &'static str,
    pub references: Vec<(&'static str, i64)>,
}

impl ExampleModel {
    pub fn reference(&self, key: &str) -> Option<i64> {
        self.references
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
    }
}

fn bundled(name: &str) -> Option<(&'static str, &'static str)> {
    match name {
        "local_p1" => Some(("local_p1", LOCAL_P1)),
        "local_elliptic" => Some(("local_elliptic", LOCAL_ELLIPTIC)),
        "local_p2_low_degree" => Some(("local_p2_low_degree", LOCAL_P2)),
        _ => None,
    }
}

/// Raw text of a model's table file.
pub fn example_text(name: &str) -> Result<String> {
    let (name, text) = bundled(name).ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(format!("{name}.gv"));
            std::fs::read_to_string(&path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => Ok(text.to_string()),
    }
}

pub fn load_example(name: &str) -> Result<ExampleModel> {
    let (key, _) = bundled(name).ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    let table = GvTable::from_text(&example_text(key)?)?;
    let model = match key {
        "local_p1" => ExampleModel {
            name: "local_p1",
            table,
            euler: 0,
            notes: "Resolved conifold: n^0 of the base P^1 is 1, all other invariants vanish.",
            references: vec![],
        },
        "local_elliptic" => ExampleModel {
            name: "local_elliptic",
            table,
            euler: 0,
            notes: "E x C^2: n^1_(k[E]) = 1 for every k >= 1; e(X) = 0 so Z = Z'.",
            references: vec![],
        },
        _ => ExampleModel {
            name: "local_p2_low_degree",
            table,
            euler: 3,
            notes: "K_P2 through degree 3 (n^0_3 omitted). Degree 4: n^0_4 = -192; \
                    the Euler count of the family gives -222 and the difference \
                    -30 is n^0_1 n^1_3.",
            references: vec![("n0_4", -192), ("naive", -222), ("discrepancy", -30)],
        },
    };
    Ok(model)
}

/// The elliptic model with classes `1..=k`.
pub fn local_elliptic(k: u32) -> ExampleModel {
    let mut model = load_example("local_elliptic").expect("bundled model parses");
    let mut table = GvTable::new(model.table.basis());
    for d in 1..=k {
        let class = table.basis().d(d);
        table.insert(&class, 1, BigInt::from(1)).expect("rank one");
    }
    model.table = table;
    model
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_models() {
        let p1 = load_example("local_p1").unwrap();
        assert_eq!(p1.table, GvTable::rank_one(&[(1, 0, 1)]));
        let ell = load_example("local_elliptic").unwrap();
        assert_eq!(ell.table.len(), ELLIPTIC_DEFAULT_CLASSES as usize);
        assert_eq!(ell.euler, 0);
        assert_eq!(
            local_elliptic(3).table,
            GvTable::rank_one(&[(1, 1, 1), (2, 1, 1), (3, 1, 1)])
        );
        let p2 = load_example("local_p2_low_degree").unwrap();
        assert_eq!(
            p2.table,
            GvTable::rank_one(&[(1, 0, 3), (2, 0, -6), (3, 1, -10)])
        );
        assert_eq!(p2.reference("n0_4"), Some(-192));
        assert_eq!(p2.reference("naive"), Some(-222));
        assert_eq!(p2.reference("discrepancy"), Some(-30));
        assert_eq!(
            load_example("quintic").unwrap_err(),
            Error::UnknownExample("quintic".into())
        );
    }

    #[test]
    fn loads_are_identical() {
        for name in EXAMPLE_NAMES {
            assert_eq!(load_example(name).unwrap(), load_example(name).unwrap());
            assert_eq!(example_text(name).unwrap(), example_text(name).unwrap());
        }
    }
}
