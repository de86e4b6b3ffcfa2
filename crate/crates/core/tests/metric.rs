use num_traits::{Signed, Zero};
use pi1lab_core::geometry::rational::{int, rat};
use pi1lab_core::geometry::{sup_distance, PLPath, Point2, Rational};
use proptest::prelude::*;

fn path_strategy() -> impl Strategy<Value = PLPath> {
    proptest::collection::vec((1i64..32, -8i64..=8, -8i64..=8), 0..5).prop_flat_map(|mid| {
        (Just(mid), -8i64..=8, -8i64..=8, -8i64..=8, -8i64..=8)
    })
    .prop_map(|(mid, x0, y0, x1, y1)| {
        let mut times: Vec<i64> = mid.iter().map(|m| m.0).collect();
        times.sort_unstable();
        times.dedup();
        let mut bps = vec![(int(0), Point2::new(rat(x0, 4), rat(y0, 4)))];
        for (t, m) in times.iter().zip(&mid) {
            bps.push((rat(*t, 32), Point2::new(rat(m.1, 4), rat(m.2, 4))));
        }
        bps.push((int(1), Point2::new(rat(x1, 4), rat(y1, 4))));
        PLPath::new(bps).unwrap()
    })
}

fn sq(f: &PLPath, g: &PLPath) -> Rational {
    sup_distance(f, g).as_rational().expect("rational breakpoints give rational sup").clone()
}

/// `sqrt(a) <= sqrt(b) + sqrt(c)` for nonnegative rationals.
fn sqrt_triangle(a: &Rational, b: &Rational, c: &Rational) -> bool {
    let lhs = a - b - c;
    !lhs.is_positive() || &lhs * &lhs <= int(4) * b * c
}

proptest! {
    #[test]
    fn sup_metric_axioms(f in path_strategy(), g in path_strategy(), h in path_strategy()) {
        prop_assert!(sq(&f, &f).is_zero());
        prop_assert_eq!(sq(&f, &g), sq(&g, &f));
        prop_assert!(!sq(&f, &g).is_negative());
        if sq(&f, &g).is_zero() {
            for k in 0..=32 {
                let t = rat(k, 32);
                prop_assert_eq!(f.eval(&t).unwrap(), g.eval(&t).unwrap());
            }
        }
        prop_assert!(sqrt_triangle(&sq(&f, &h), &sq(&f, &g), &sq(&g, &h)));
    }

    #[test]
    fn sup_dominates_sampled_distances(f in path_strategy(), g in path_strategy()) {
        let d = sq(&f, &g);
        for k in 0..=64 {
            let t = rat(k, 64);
            prop_assert!(f.eval(&t).unwrap().dist_sq(&g.eval(&t).unwrap()) <= d);
        }
    }
}
