use cheby_ramsey_core::geometry::{Point, Triangle};
use cheby_ramsey_core::line::{avoids_distances, chi_line, chi_line_upper, BoundStatus, DistanceSet, IntDistances, LineColoring};
use cheby_ramsey_core::plane::{certify_lift, lift, plane_chromatic_bounds, sample_verify, LiftAxis, PlaneColoring};
use num_rational::BigRational;
use proptest::prelude::*;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[test]
fn diagonal_parity_survives_sampling() {
    let d = lift(&LineColoring::<Q>::parity(), LiftAxis::Diagonal);
    for (a, b, c) in [(1, 1, 1), (2, 3, 4)] {
        let t = Triangle::from_ints(a, b, c).unwrap();
        assert!(certify_lift(&d, &t).unwrap().is_copy_free());
        let v = sample_verify(&d, &t, &q(8, 1), &q(1, 4)).unwrap();
        assert!(!v.found_counterexample());
    }
}

#[test]
fn constant_coloring_has_counterexample() {
    let t = Triangle::from_ints(2, 3, 4).unwrap();
    let v = sample_verify(&PlaneColoring::<Q>::constant(), &t, &q(8, 1), &q(1, 1)).unwrap();
    assert!(v.found_counterexample());
}

#[test]
fn pipeline_for_234() {
    let b = plane_chromatic_bounds(&Triangle::<Q>::from_ints(2, 3, 4).unwrap(), 4).unwrap();
    assert!(b.is_exact());
    let side = IntDistances::new(vec![2, 3, 4]).unwrap();
    let r = chi_line::<Q>(&side, 6, 6).unwrap();
    assert_eq!((r.lower.value, r.upper.value, r.status), (3, 3, BoundStatus::Exact));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Upper-bound colorings really avoid their distances, checked pointwise
    /// on integer samples as well as by the exact overlap test.
    #[test]
    fn upper_bound_colorings_avoid(ds in prop::collection::btree_set(1i64..8, 1..4)) {
        let dists = IntDistances::new(ds.iter().copied().collect()).unwrap();
        let u = chi_line_upper::<Q>(&dists, 12).unwrap();
        let exact = DistanceSet::from_ints(dists.values()).unwrap();
        prop_assert!(avoids_distances(&u.coloring, &exact).unwrap().avoids());
        for x in -20i64..20 {
            for &d in dists.values() {
                prop_assert_ne!(u.coloring.eval(&q(x, 1)), u.coloring.eval(&q(x + d, 1)));
            }
        }
    }

    #[test]
    fn lift_colors_depend_on_one_coordinate(x in -40i64..40, y in -40i64..40, s in -40i64..40) {
        let line = LineColoring::<Q>::from_word(&[0, 1, 1, 2]).unwrap();
        let h = lift(&line, LiftAxis::Horizontal);
        let d = lift(&line, LiftAxis::Diagonal);
        let p = Point::new(q(x, 3), q(y, 3));
        prop_assert_eq!(h.eval(&p), h.eval(&Point::new(q(x + s, 3), q(y, 3))));
        prop_assert_eq!(d.eval(&p), d.eval(&Point::new(q(x + s, 3), q(y - s, 3))));
    }
}
