mod common;

use flatnorm::lipschitz::{
    compose_with_map, dictionary, disjoint_sum, empirical_lipschitz, extend_with_compact_support,
    hat_function, mcshane_extend, sup_family, tent_family_function, LipFunction,
};
use flatnorm::map::LipMap;
use flatnorm::metric::{MetricSpace, Point, PointSet};
use flatnorm::Error;
use proptest::prelude::*;

fn r() -> MetricSpace {
    MetricSpace::real_line()
}

fn at(f: &LipFunction, x: f64) -> f64 {
    f.evaluate(&Point::real(x)).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

fn grid_pairs(lo: f64, hi: f64, n: usize) -> Vec<(Point, Point)> {
    let xs: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    let mut pairs = Vec::new();
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            pairs.push((Point::real(xs[i]), Point::real(xs[j])));
        }
    }
    pairs
}

#[test]
fn hat_examples() {
    let h = hat_function(&r(), 1.0, &PointSet::reals(&[0.0])).unwrap();
    assert_eq!(at(&h, 0.0), 1.0);
    assert_eq!(at(&h, 0.5), 0.5);
    assert_eq!(at(&h, 2.0), 0.0);
    assert_eq!(h.declared_lip(), 1.0);
    assert_eq!(h.declared_sup(), 1.0);
    let two = hat_function(&r(), 0.5, &PointSet::reals(&[0.0, 3.0])).unwrap();
    assert_eq!(at(&two, 3.0), 1.0);
    assert_eq!(at(&two, 3.25), 0.5);
    assert!(hat_function(&r(), 0.0, &PointSet::reals(&[0.0])).is_err());
    assert!(matches!(
        hat_function(&r(), 1.0, &PointSet::default()),
        Err(Error::EmptySet(_))
    ));
}

#[test]
fn tent_examples() {
    let t = tent_family_function(&r(), &PointSet::reals(&[0.0, 1.0]), &[1.0, 0.5], 0.5).unwrap();
    assert_eq!(at(&t, 0.0), 1.0);
    assert_eq!(at(&t, 0.25), 0.5);
    assert_eq!(at(&t, 0.75), 0.25);
    assert_eq!(at(&t, 1.0), 0.5);
    assert_eq!(t.declared_lip(), 2.0);
    assert!(tent_family_function(&r(), &PointSet::reals(&[0.0]), &[1.5], 1.0).is_err());
    assert!(matches!(
        tent_family_function(&r(), &PointSet::reals(&[0.0, 1.0]), &[1.0], 1.0),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn mcshane_examples() {
    let samples = vec![(Point::real(0.0), 0.0), (Point::real(1.0), 1.0)];
    let f = mcshane_extend(&r(), &samples, 1.0).unwrap();
    assert_eq!(at(&f, 2.0), 1.0);
    assert_eq!(at(&f, 0.5), 0.5);
    assert!((0.0..=1.0).contains(&at(&f, -3.0)));
    assert!(f.declared_lip() <= 1.0);
    let bad = vec![(Point::real(0.0), 0.0), (Point::real(1.0), 3.0)];
    assert!(matches!(
        mcshane_extend(&r(), &bad, 1.0),
        Err(Error::IncompatibleSamples { .. })
    ));
    assert!(matches!(
        mcshane_extend(&r(), &[], 1.0),
        Err(Error::EmptySet(_))
    ));
}

#[test]
fn compact_support_examples() {
    let f = extend_with_compact_support(
        &r(),
        &[(Point::real(0.0), 1.0)],
        1.0,
        1.0,
        &PointSet::reals(&[0.0]),
    )
    .unwrap();
    assert_eq!(at(&f, 0.0), 1.0);
    assert_eq!(at(&f, 2.0), 0.0);
    assert_eq!(at(&f, 0.5), 0.5);
    assert_eq!(at(&f, -1.0), 0.0);
}

#[test]
fn sup_family_examples() {
    let a = hat_function(&r(), 1.0, &PointSet::reals(&[0.0])).unwrap();
    let b = hat_function(&r(), 1.0, &PointSet::reals(&[3.0])).unwrap();
    let s = sup_family(&[a, b]).unwrap();
    assert_eq!(at(&s, 0.0), 1.0);
    assert_eq!(at(&s, 3.0), 1.0);
    assert_eq!(at(&s, 1.5), 0.0);
    let f = LipFunction::piecewise_linear_1d(&r(), vec![(-1.0, -2.0), (1.0, 2.0)]).unwrap();
    let abs = sup_family(&[f.clone(), f.negate()]).unwrap();
    assert_eq!(abs.declared_lip(), f.declared_lip());
    assert_eq!(at(&abs, -0.5), 1.0);
    assert!(matches!(sup_family(&[]), Err(Error::EmptySet(_))));
}

#[test]
fn disjoint_sum_examples() {
    let h0 = hat_function(&r(), 1.0, &PointSet::reals(&[0.0])).unwrap();
    let h10 = hat_function(&r(), 1.0, &PointSet::reals(&[10.0])).unwrap();
    let one = disjoint_sum(std::slice::from_ref(&h0)).unwrap();
    assert_eq!(one.declared_lip(), 2.0 * h0.declared_lip());
    let s = disjoint_sum(&[h0.clone(), h10.clone()]).unwrap();
    assert_eq!(at(&s, 0.0), 1.0);
    assert_eq!(at(&s, 10.0), 1.0);
    assert_eq!(at(&s, 5.0), 0.0);
    let half = h10.scale(0.5).unwrap();
    let s = disjoint_sum(&[h0, half]).unwrap();
    assert_eq!(s.declared_sup(), 1.0);
    let plain = LipFunction::constant(&r(), 1.0).unwrap();
    assert!(matches!(
        disjoint_sum(&[plain]),
        Err(Error::MissingSupportHint(0))
    ));
}

#[test]
fn compose_examples() {
    let h = hat_function(&r(), 1.0, &PointSet::reals(&[0.0])).unwrap();
    let half = LipMap::affine(&r(), 0.5, 0.0).unwrap();
    let c = compose_with_map(&h, &half).unwrap();
    assert_eq!(at(&c, 1.0), 0.5);
    let double = LipMap::affine(&r(), 2.0, 0.0).unwrap();
    let c = compose_with_map(&h, &double).unwrap();
    assert_eq!(c.declared_lip(), 2.0);
    assert_eq!(at(&c, 0.25), 0.5);
}

#[test]
fn empirical_lipschitz_examples() {
    let pairs = grid_pairs(-2.0, 2.0, 8);
    let c = LipFunction::constant(&r(), 3.0).unwrap();
    assert_eq!(empirical_lipschitz(&c, &pairs).unwrap(), 0.0);
    let id = LipFunction::piecewise_linear_1d(&r(), vec![(-5.0, -5.0), (5.0, 5.0)]).unwrap();
    assert!(close(empirical_lipschitz(&id, &pairs).unwrap(), 1.0));
    let h = hat_function(&r(), 0.5, &PointSet::reals(&[0.0])).unwrap();
    assert_eq!(
        empirical_lipschitz(&h, &[(Point::real(0.0), Point::real(0.25))]).unwrap(),
        2.0
    );
    assert!(matches!(
        empirical_lipschitz(&h, &[(Point::real(1.0), Point::real(1.0))]),
        Err(Error::CoincidentPair(0))
    ));
}

#[test]
fn dictionary_shape() {
    let d = dictionary(&r(), &PointSet::reals(&[0.0, 1.0]), &[1.0], 2, 2).unwrap();
    assert_eq!(d.len(), 9 * 8 + 2);
    let d = dictionary(&r(), &PointSet::reals(&[0.0, 1.0, 4.0]), &[0.5, 2.0], 1, 2).unwrap();
    for f in &d {
        assert!(f.declared_lip() <= 2.0 / 0.5 + 1e-12);
        assert!(f.declared_sup() <= 2.0 + 1e-12);
    }
}

fn tent_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64)> {
    (1usize..5).prop_flat_map(|n| {
        (
            prop::collection::vec(-5.0..5.0f64, n),
            prop::collection::vec(0.0..=1.0f64, n),
            0.05..3.0f64,
        )
    })
}

proptest! {
    #[test]
    fn declared_bounds_hold((cs, amps, lambda) in tent_strategy(), probes in prop::collection::vec(-8.0..8.0f64, 2..12)) {
        let t = tent_family_function(&r(), &PointSet::reals(&cs), &amps, lambda).unwrap();
        let h = hat_function(&r(), lambda, &PointSet::reals(&cs)).unwrap();
        for f in [&t, &h] {
            for &x in &probes {
                prop_assert!(at(f, x).abs() <= f.declared_sup() + 1e-12);
            }
            let mut pairs = Vec::new();
            for i in 0..probes.len() {
                for j in (i + 1)..probes.len() {
                    if probes[i] != probes[j] {
                        pairs.push((Point::real(probes[i]), Point::real(probes[j])));
                    }
                }
            }
            if !pairs.is_empty() {
                prop_assert!(empirical_lipschitz(f, &pairs).unwrap() <= f.declared_lip() + 1e-9);
            }
        }
    }

    #[test]
    fn hat_is_one_on_centers_and_zero_far((cs, _amps, lambda) in tent_strategy()) {
        let h = hat_function(&r(), lambda, &PointSet::reals(&cs)).unwrap();
        for &c in &cs {
            prop_assert_eq!(at(&h, c), 1.0);
        }
        let far = cs.iter().fold(f64::NEG_INFINITY, |m, &c| m.max(c)) + lambda + 0.1;
        prop_assert_eq!(at(&h, far), 0.0);
    }

    #[test]
    fn mcshane_reproduces_samples(xs in prop::collection::vec(-10.0..10.0f64, 1..8), seed in 0u64..500, lip in 0.1..5.0f64) {
        let f = hat_function(&r(), 1.0 / lip, &PointSet::reals(&[(seed % 7) as f64 - 3.0])).unwrap();
        let samples: Vec<(Point, f64)> = xs.iter().map(|&x| (Point::real(x), at(&f, x))).collect();
        let ext = mcshane_extend(&r(), &samples, lip).unwrap();
        for (p, y) in &samples {
            prop_assert!(close(ext.evaluate(p).unwrap(), *y));
        }
        prop_assert!(ext.declared_lip() <= lip + 1e-12);
        let pairs = grid_pairs(-12.0, 12.0, 24);
        prop_assert!(empirical_lipschitz(&ext, &pairs).unwrap() <= lip * (1.0 + 1e-9));
    }

    #[test]
    fn sup_family_bounds(cs in prop::collection::vec(-5.0..5.0f64, 1..5), lambdas in prop::collection::vec(0.1..2.0f64, 5),
                         probes in prop::collection::vec(-7.0..7.0f64, 1..10)) {
        let fs: Vec<LipFunction> = cs.iter().zip(&lambdas)
            .map(|(&c, &l)| hat_function(&r(), l, &PointSet::reals(&[c])).unwrap())
            .collect();
        let s = sup_family(&fs).unwrap();
        let max_lip = fs.iter().fold(0.0f64, |m, f| m.max(f.declared_lip()));
        prop_assert!(s.declared_lip() <= max_lip);
        for &x in &probes {
            let expect = fs.iter().fold(f64::NEG_INFINITY, |m, f| m.max(at(f, x)));
            prop_assert_eq!(at(&s, x), expect);
        }
    }

    #[test]
    fn disjoint_sum_matches_pointwise_sum(gap in 0.5..4.0f64, l1 in 0.1..1.0f64, l2 in 0.1..1.0f64,
                                          probes in prop::collection::vec(-3.0..12.0f64, 1..10)) {
        let f1 = hat_function(&r(), l1, &PointSet::reals(&[0.0])).unwrap();
        let at2 = l1 + gap + l2;
        let f2 = hat_function(&r(), l2, &PointSet::reals(&[at2])).unwrap();
        let s = disjoint_sum(&[f1.clone(), f2.clone()]).unwrap();
        for &x in &probes {
            prop_assert!(close(at(&s, x), at(&f1, x) + at(&f2, x)));
        }
        prop_assert!(s.declared_sup() <= 1.0 + 1e-12);
    }

    #[test]
    fn dictionary_lip_bound(cs in prop::collection::vec(-5.0..5.0f64, 1..4), lambdas in prop::collection::vec(0.2..3.0f64, 1..3)) {
        let d = dictionary(&r(), &PointSet::reals(&cs), &lambdas, 2, 2).unwrap();
        let min_l = lambdas.iter().fold(f64::INFINITY, |m, &l| m.min(l));
        for f in &d {
            prop_assert!(f.declared_lip() <= 2.0 / min_l + 1e-9);
        }
    }
}
