use num::BigInt;
use proptest::prelude::*;

use curvecount::invariants::{dt_reduced_to_gv, gv_to_dt_reduced, gv_to_gw, gw_to_gv};
use curvecount::kkv::{check_dim_zero_coeff, kkv_dt_contribution, kkv_invariant, KkvInput};
use curvecount::partitions::{partition_count, partition_count_oracle};
use curvecount::series::{rat, ratio};
use curvecount::{ClassBasis, GvTable, MultiSeries, Precision, QWindow, Rational};

const TMAX: u32 = 3;

fn rank_two() -> ClassBasis {
    ClassBasis::new(vec![1, 1]).unwrap()
}

fn series(
    min_degree: u32,
    exps: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = MultiSeries> {
    let term = (0u32..=TMAX, 0u32..=TMAX, exps, -5i64..=5);
    prop::collection::vec(term, 0..8).prop_map(move |terms| {
        let basis = rank_two();
        let mut s = MultiSeries::zero(&basis, TMAX, Precision::Finite(4));
        for (a, b, e, c) in terms {
            if a + b >= min_degree && a + b <= TMAX {
                s.add_term(&basis.class(vec![a, b]).unwrap(), e, rat(c));
            }
        }
        s
    })
}

fn gv_table(max_genus: u32) -> impl Strategy<Value = GvTable> {
    prop::collection::vec((1u32..=4, 0..=max_genus, -20i64..=20), 0..8).prop_map(|entries| {
        let mut t = GvTable::new(&ClassBasis::rank_one());
        for (d, g, n) in entries {
            let class = t.basis().d(d);
            t.insert(&class, g, BigInt::from(n)).unwrap();
        }
        t
    })
}

fn all_known(s: &MultiSeries, min: i64) -> bool {
    s.precisions().iter().all(|p| *p >= Precision::Finite(min))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(0, -2..=4), b in series(0, -2..=4), c in series(0, -2..=4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.agrees_with(&b.mul(&a).unwrap()));
        let lhs = a.add(&b).unwrap().add(&c).unwrap();
        prop_assert_eq!(&lhs, &a.add(&b.add(&c).unwrap()).unwrap());
        let left = ab.mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert!(dist.agrees_with(&ab.add(&a.mul(&c).unwrap()).unwrap()));
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exp_and_log_are_inverse(f in series(1, -1..=3)) {
        let e = f.exp().unwrap();
        let back = e.log().unwrap();
        prop_assert!(all_known(&back, 1));
        prop_assert!(back.agrees_with(&f));
        prop_assert!(e.log().unwrap().exp().unwrap().agrees_with(&e));
    }

    #[test]
    fn binomial_powers_add(u in series(1, 0..=3), a in -6i64..=6, b in -6i64..=6) {
        let lhs = u.binom_power(a).unwrap().mul(&u.binom_power(b).unwrap()).unwrap();
        prop_assert!(all_known(&lhs, 4));
        prop_assert!(lhs.agrees_with(&u.binom_power(a + b).unwrap()));
    }

    #[test]
    fn binomial_power_is_exp_of_log(u in series(1, 0..=3), k in -6i64..=6) {
        let one = MultiSeries::one(u.basis(), TMAX, Precision::Exact);
        let base = one.add(&u).unwrap();
        let via_log = base.log().unwrap().scale(&rat(k)).exp().unwrap();
        prop_assert!(u.binom_power(k).unwrap().agrees_with(&via_log));
    }

    #[test]
    fn cover_is_multiplicative(a in series(0, 0..=3), b in series(0, 0..=3), m in 1u32..=3) {
        let lhs = a.mul(&b).unwrap().cover_substitute(m);
        let rhs = a.cover_substitute(m).mul(&b.cover_substitute(m)).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert_eq!(a.negate_q().negate_q(), a);
    }

    #[test]
    fn dt_roundtrip(gv in gv_table(3)) {
        let window = QWindow::for_inversion(gv.max_genus().unwrap_or(0), 4);
        let z = gv_to_dt_reduced(&gv, window, 4).unwrap();
        prop_assert!(z.series.is_integral());
        prop_assert_eq!(dt_reduced_to_gv(&z).unwrap(), gv);
    }

    #[test]
    fn gw_roundtrip(gv in gv_table(3)) {
        let gw = gv_to_gw(&gv, 3, 4);
        let back = gw_to_gv(&gw, 3).unwrap();
        prop_assert!(back.is_integral());
        prop_assert_eq!(back.into_table().unwrap(), gv);
    }

    #[test]
    fn leading_coefficients(d in 1u32..=4, g in 1u32..=4, top in -20i64..=20, next in -20i64..=20) {
        prop_assume!(top != 0);
        // A single class: nothing smaller reaches t^d and d is not a cover.
        let mut gv = GvTable::new(&ClassBasis::rank_one());
        let beta = gv.basis().d(d);
        gv.insert(&beta, g, BigInt::from(top)).unwrap();
        gv.insert(&beta, g - 1, BigInt::from(next)).unwrap();
        let z = gv_to_dt_reduced(&gv, QWindow::new(-4, 3), d).unwrap();
        let gi = g as i64;
        prop_assert_eq!(z.series.coeff(&beta, 1 - gi), Some(rat(top)));
        prop_assert_eq!(z.series.coeff(&beta, 2 - gi), Some(rat(next + (2 * gi - 2) * top)));
        prop_assert_eq!(z.series.coeff(&beta, -gi), Some(rat(0)));
    }

    #[test]
    fn genus_zero_multiple_covers(c in -50i64..=50, a in 1u32..=3, b in 0u32..=3) {
        let basis = rank_two();
        let beta = basis.class(vec![a, b]).unwrap();
        prop_assume!(beta.is_primitive() && c != 0);
        let mut gv = GvTable::new(&basis);
        gv.insert(&beta, 0, BigInt::from(c)).unwrap();
        let gw = gv_to_gw(&gv, 1, 6 * beta.degree());
        for d in 1..=6u32 {
            prop_assert_eq!(gw.get(&beta.scale(d), 0), Some(&ratio(c, (d * d * d) as i64)));
        }
        prop_assert_eq!(gw.get(&beta, 1), Some(&ratio(c, 12)));
    }

    #[test]
    fn kkv_low_delta(g in 1u32..=8, half_dim in 0i64..=10, e_m in -100i64..=100, e_c in -100i64..=100) {
        let dim_m = 2 * half_dim;
        let top = kkv_invariant(&KkvInput::new(g, 0, dim_m, vec![e_m])).unwrap();
        prop_assert_eq!(top, BigInt::from(e_m));
        let odd = kkv_invariant(&KkvInput::new(g, 0, dim_m + 1, vec![e_m])).unwrap();
        prop_assert_eq!(odd, BigInt::from(-e_m));
        let x = KkvInput::new(g, 1, dim_m, vec![e_m, e_c]);
        let next = kkv_invariant(&x).unwrap();
        let two_g = 2 * g as i64 - 2;
        prop_assert_eq!(-next.clone(), BigInt::from(e_c + two_g * e_m));
        let dt = kkv_dt_contribution(&x).unwrap();
        prop_assert_eq!(dt.coeff(2 - g as i64), Some(rat(-e_c)));
        prop_assert_eq!(
            dt.coeff(2 - g as i64).unwrap(),
            Rational::from_integer(next) + rat(two_g * e_m)
        );
        prop_assert_eq!(dt.coeff(3 - g as i64), None);
    }

    #[test]
    fn kkv_clears_through_delta_three(
        g in 3u32..=10, delta in 0u32..=3, dim_m in 0i64..=20,
        e in prop::collection::vec(-1000i64..=1000, 4),
    ) {
        let x = KkvInput::new(g, delta, dim_m, e[..=delta as usize].to_vec());
        prop_assert!(kkv_invariant(&x).is_ok());
    }
}

#[test]
fn dimension_zero_identity() {
    for e in -50..=50 {
        for n in 1..=3 {
            assert!(check_dim_zero_coeff(n, e, 4).unwrap(), "n={n} e={e}");
        }
    }
}

#[test]
fn pentagonal_recurrence_matches_enumeration() {
    for k in 0..=30 {
        assert_eq!(partition_count(k), partition_count_oracle(k).unwrap());
    }
}
