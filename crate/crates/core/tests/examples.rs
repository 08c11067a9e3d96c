use num::BigInt;

use curvecount::datasets::{example_text, load_example, local_elliptic, EXAMPLE_NAMES};
use curvecount::invariants::{
    dt_free_energy, dt_full, dt_reduced_to_gv, genus_factor, gv_to_dt_reduced, gv_to_gw, gw_to_gv,
};
use curvecount::partitions::partition_count_oracle;
use curvecount::series::{rat, ratio};
use curvecount::{
    ClassBasis, DtSeries, Error, GvTable, GwTable, MultiSeries, Precision, QLaurent, QWindow,
    Rational, ThreefoldData,
};

fn without_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn datasets_serialize_back_to_their_files() {
    for name in EXAMPLE_NAMES {
        let model = load_example(name).unwrap();
        let golden = without_comments(&example_text(name).unwrap());
        assert_eq!(model.table.to_string(), golden, "{name}");
        assert_eq!(GvTable::from_text(&golden).unwrap(), model.table);
    }
}

#[test]
fn elliptic_series_and_its_inverse() {
    let model = local_elliptic(10);
    let z = gv_to_dt_reduced(&model.table, QWindow::default(), 10).unwrap();
    let column = z.series.rank_one_column(0);
    let oracle: Vec<_> = (0..=10)
        .map(|k| Rational::from_integer(partition_count_oracle(k).unwrap()))
        .collect();
    assert_eq!(column, oracle);
    assert_eq!(z.series.terms().count(), 11);
    assert_eq!(dt_reduced_to_gv(&z).unwrap(), model.table);

    let text = z.to_string();
    let parsed = DtSeries::from_text(&text).unwrap();
    assert_eq!(parsed, z);
    let full = dt_full(&z, &ThreefoldData::calabi_yau(0), 8).unwrap();
    assert_eq!(full.series, z.series);
}

#[test]
fn free_energy_of_the_elliptic_model() {
    let t = GvTable::rank_one(&[(1, 1, 1)]);
    let z = gv_to_dt_reduced(&t, QWindow::default(), 6).unwrap();
    let f = dt_free_energy(&z).unwrap();
    let want: Vec<_> = (0..=6)
        .map(|m| if m == 0 { rat(0) } else { ratio(1, m) })
        .collect();
    assert_eq!(f.rank_one_column(0), want);
}

#[test]
fn genus_two_factor_leading_terms() {
    let b = ClassBasis::rank_one();
    let f = genus_factor(&b, &b.d(1), 2, &BigInt::from(1), QWindow::new(-1, 3), 1).unwrap();
    let c = f.coefficient(&b.d(1));
    assert_eq!(c.lowest_exponent(), Some(-1));
    assert_eq!(c.coeff(-1), Some(rat(1)));
    assert_eq!(c.coeff(0), Some(rat(2)));
}

#[test]
fn local_p2_correction_ignores_missing_cubic_genus_zero() {
    let model = load_example("local_p2_low_degree").unwrap();
    let t4 = model.table.basis().d(4);
    let qt4 = |t: &GvTable| {
        gv_to_dt_reduced(t, QWindow::default(), 4)
            .unwrap()
            .series
            .coeff(&t4, 1)
            .unwrap()
    };
    assert_eq!(qt4(&model.table), rat(-30));
    for n03 in [-27, 1, 27] {
        let mut t = model.table.clone();
        t.insert(&t.basis().d(3), 0, BigInt::from(n03)).unwrap();
        assert_eq!(qt4(&t), rat(-30));
    }
    let sub = GvTable::rank_one(&[(1, 0, 3), (3, 1, -10)]);
    assert_eq!(qt4(&sub), rat(-30));
}

#[test]
fn elliptic_gw_invariants() {
    let gv = GvTable::rank_one(&[(1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1)]);
    let gw = gv_to_gw(&gv, 2, 4);
    let b = gv.basis();
    assert_eq!(gw.get(&b.d(4), 1), Some(&ratio(7, 4)));
    assert_eq!(gw.get(&b.d(3), 1), Some(&ratio(4, 3)));
    let back = GwTable::from_text(&gw.to_string()).unwrap();
    assert_eq!(back, gw);
    assert_eq!(gw_to_gv(&back, 2).unwrap().into_table().unwrap(), gv);
}

#[test]
fn rank_two_roundtrip() {
    let basis = ClassBasis::new(vec![1, 2]).unwrap();
    let mut gv = GvTable::new(&basis);
    let entries = [
        (vec![1, 0], 0, 2),
        (vec![0, 1], 0, -2),
        (vec![1, 1], 1, 5),
        (vec![2, 1], 2, -1),
    ];
    for (coords, g, n) in entries {
        gv.insert(&basis.class(coords).unwrap(), g, BigInt::from(n))
            .unwrap();
    }
    let tmax = 5;
    let window = QWindow::for_inversion(2, tmax);
    let z = gv_to_dt_reduced(&gv, window, tmax).unwrap();
    assert!(z.series.is_integral());
    assert_eq!(dt_reduced_to_gv(&z).unwrap(), gv);
    let gw = gv_to_gw(&gv, 2, tmax);
    assert_eq!(gw_to_gv(&gw, 2).unwrap().into_table().unwrap(), gv);
}

#[test]
fn reduced_series_required() {
    let b = ClassBasis::rank_one();
    let one = DtSeries::reduced(MultiSeries::one(&b, 2, Precision::Exact));
    let full = dt_full(&one, &ThreefoldData::calabi_yau(2), 3).unwrap();
    assert_eq!(
        full.series.coefficient(&b.zero()),
        QLaurent::from_integers(0, &[1, -2, 7, -18], Precision::Finite(3))
    );
    assert_eq!(
        dt_reduced_to_gv(&full).unwrap_err(),
        Error::WrongSeriesKind {
            expected: "reduced"
        }
    );
}
