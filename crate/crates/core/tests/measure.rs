mod common;

use std::f64::consts::PI;

use flatnorm::density::DensityMeasure1D;
use flatnorm::lipschitz::{hat_function, LipFunction};
use flatnorm::map::LipMap;
use flatnorm::measure::{sawtooth_g, DiscreteSignedMeasure};
use flatnorm::metric::{MetricSpace, Point, PointSet};
use flatnorm::Error;
use proptest::prelude::*;

fn r() -> MetricSpace {
    MetricSpace::real_line()
}

fn line(atoms: &[(f64, f64)]) -> DiscreteSignedMeasure {
    common::on_line(atoms)
}

fn weights_at(mu: &DiscreteSignedMeasure) -> Vec<(f64, f64)> {
    mu.atoms()
        .iter()
        .map(|(p, w)| (p.as_real().unwrap(), *w))
        .collect()
}

/// Composite Simpson on `[0, 1]` with `panels` (even) subintervals.
fn simpson(g: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let h = 1.0 / panels as f64;
    let mut s = g(0.0) + g(1.0);
    for i in 1..panels {
        s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn consolidate_examples() {
    let mu = DiscreteSignedMeasure::raw(
        &r(),
        vec![(Point::real(0.0), 2.0), (Point::real(0.0), -0.5)],
    )
    .unwrap();
    assert_eq!(weights_at(&mu.consolidate()), vec![(0.0, 1.5)]);
    let gone = DiscreteSignedMeasure::raw(
        &r(),
        vec![(Point::real(0.0), 1.0), (Point::real(0.0), -1.0)],
    )
    .unwrap();
    assert!(gone.consolidate().is_empty());
    let canon = line(&[(0.0, 1.0), (2.0, -3.0)]);
    assert_eq!(canon.consolidate(), canon);
}

#[test]
fn jordan_examples() {
    let mu = line(&[(0.0, 2.0), (1.0, -1.0)]);
    let (p, n) = mu.jordan();
    assert_eq!(weights_at(&p), vec![(0.0, 2.0)]);
    assert_eq!(weights_at(&n), vec![(1.0, 1.0)]);
    let pos = line(&[(0.0, 1.0), (3.0, 0.5)]);
    let (p, n) = pos.jordan();
    assert_eq!(p, pos);
    assert!(n.is_empty());
    for k in 1..6 {
        let x = k as f64;
        let mu = line(&[(x, 1.0), (x + 1.0 / x, -1.0)]);
        let (p, n) = mu.jordan();
        assert_eq!(weights_at(&p), vec![(x, 1.0)]);
        assert_eq!(weights_at(&n), vec![(x + 1.0 / x, 1.0)]);
    }
}

#[test]
fn tv_examples() {
    assert_eq!(line(&[(0.0, 2.0), (1.0, -1.0)]).tv_norm(), 3.0);
    assert_eq!(DiscreteSignedMeasure::zero(&r()).tv_norm(), 0.0);
    assert_eq!(line(&[(0.0, 0.25), (1.0, 0.25), (4.0, 0.5)]).tv_norm(), 1.0);
}

#[test]
fn pair_examples() {
    let h = hat_function(&r(), 1.0, &PointSet::reals(&[0.0])).unwrap();
    let d = DiscreteSignedMeasure::dirac(&r(), Point::real(0.5)).unwrap();
    assert_eq!(d.pair(&h).unwrap(), 0.5);
    assert_eq!(line(&[(0.0, 2.0), (1.0, -1.0)]).pair(&h).unwrap(), 2.0);
    let one = LipFunction::constant(&r(), 1.0).unwrap();
    assert_eq!(
        line(&[(0.0, 2.0), (1.0, -1.0), (7.0, 0.5)])
            .pair(&one)
            .unwrap(),
        1.5
    );
    let n = MetricSpace::discrete_naturals();
    let dn = DiscreteSignedMeasure::dirac(&n, Point::Natural(1)).unwrap();
    assert!(matches!(dn.pair(&h), Err(Error::SpaceMismatch)));
}

#[test]
fn arithmetic_examples() {
    let mu = line(&[(0.0, 2.0), (1.0, -1.0)]);
    assert!(mu.add(&mu.scale(-1.0)).unwrap().is_empty());
    let d0 = line(&[(0.0, 1.0)]);
    assert_eq!(weights_at(&d0.scale(3.0)), vec![(0.0, 3.0)]);
    assert!(d0.subtract(&d0).unwrap().is_empty());
}

#[test]
fn pushforward_examples() {
    let half = LipMap::affine(&r(), 0.5, 0.0).unwrap();
    assert_eq!(
        weights_at(&line(&[(1.0, 1.0)]).pushforward(&half).unwrap()),
        vec![(0.5, 1.0)]
    );
    let c = LipMap::constant(&r(), Point::real(4.0)).unwrap();
    let mu = line(&[(0.0, 2.0), (1.0, -1.0), (3.0, 0.25)]);
    assert_eq!(weights_at(&mu.pushforward(&c).unwrap()), vec![(4.0, 1.25)]);
    let abs = LipMap::custom(&r(), 1.0, |p| Ok(Point::real(p.as_real().unwrap().abs()))).unwrap();
    assert!(line(&[(-1.0, 1.0), (1.0, -1.0)])
        .pushforward(&abs)
        .unwrap()
        .is_empty());
    let escape = LipMap::custom(&MetricSpace::unit_interval(), 2.0, |p| {
        Ok(Point::real(2.0 * p.as_real().unwrap()))
    })
    .unwrap();
    let on_unit =
        DiscreteSignedMeasure::dirac(&MetricSpace::unit_interval(), Point::real(0.75)).unwrap();
    assert!(on_unit.pushforward(&escape).is_err());
}

#[test]
fn mass_outside_examples() {
    let k = PointSet::reals(&[0.0, 1.0]);
    assert_eq!(
        line(&[(0.0, 1.0), (1.0, -2.0)])
            .mass_outside_neighborhood(&k, 0.0)
            .unwrap(),
        0.0
    );
    assert_eq!(
        line(&[(5.0, 1.0)])
            .mass_outside_neighborhood(&PointSet::reals(&[0.0]), 1.0)
            .unwrap(),
        1.0
    );
    let mu = line(&[(0.0, 1.0), (3.0, 1.0), (10.0, -1.0)]);
    assert_eq!(
        mu.mass_outside_neighborhood(&PointSet::reals(&[0.0]), 4.0)
            .unwrap(),
        1.0
    );
    assert!(mu
        .mass_outside_neighborhood(&PointSet::default(), 1.0)
        .is_err());
}

#[test]
fn oscillating_pairings() {
    let one = LipFunction::constant(&MetricSpace::unit_interval(), 1.0).unwrap();
    for n in [1u32, 2, 3, 8, 64] {
        let mu = DensityMeasure1D::oscillating(n).unwrap();
        let g = sawtooth_g(n).unwrap();
        assert!((mu.pair(&g, 1e-12).unwrap() - 1.0 / (PI * PI)).abs() < 1e-12);
        assert!(mu.pair(&one, 1e-12).unwrap().abs() < 1e-12);
        assert!((mu.tv_norm(1e-12).unwrap() - 2.0 * n as f64 / PI).abs() < 1e-9);
    }
}

#[test]
fn oscillating_hat_matches_simpson() {
    let unit = MetricSpace::unit_interval();
    let hat = hat_function(&unit, 0.3, &PointSet::reals(&[0.37])).unwrap();
    let mut values = Vec::new();
    for n in 1u32..=64 {
        let mu = DensityMeasure1D::oscillating(n).unwrap();
        let exact = mu.pair(&hat, 1e-12).unwrap();
        let h = hat.clone();
        let oracle = simpson(
            move |x| {
                h.evaluate(&Point::real(x)).unwrap() * n as f64 * (2.0 * PI * n as f64 * x).sin()
            },
            60_000,
        );
        assert!((exact - oracle).abs() < 1e-6, "n={n}: {exact} vs {oracle}");
        values.push(exact.abs());
    }
    let early = values[..4].iter().fold(0.0f64, |m, v| m.max(*v));
    let late = values[48..].iter().fold(0.0f64, |m, v| m.max(*v));
    assert!(late < 0.2 * early);
}

#[test]
fn sawtooth_examples() {
    let g1 = sawtooth_g(1).unwrap();
    assert_eq!(g1.evaluate(&Point::real(0.25)).unwrap(), 0.25);
    assert!(g1.evaluate(&Point::real(0.5)).unwrap().abs() < 1e-15);
    for n in [1u32, 4, 16] {
        let g = sawtooth_g(n).unwrap();
        assert_eq!(g.declared_lip(), 1.0);
        assert!((g.bl_bound() - (1.0 + 1.0 / (4.0 * n as f64))).abs() < 1e-15);
    }
    assert!(sawtooth_g(0).is_err());
}

fn random_pl(knots: &[(f64, f64)]) -> LipFunction {
    let mut pts: Vec<(f64, f64)> = knots.to_vec();
    pts.push((0.0, 0.3));
    pts.push((1.0, -0.2));
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6);
    LipFunction::piecewise_linear_1d(&MetricSpace::unit_interval(), pts).unwrap()
}

proptest! {
    #[test]
    fn tv_splits_over_jordan(atoms in common::line_atoms(12, false)) {
        let mu = line(&atoms);
        let (p, n) = mu.jordan();
        prop_assert!((mu.tv_norm() - p.tv_norm() - n.tv_norm()).abs() <= 1e-12 * (1.0 + mu.tv_norm()));
        prop_assert!(p.is_positive() && n.is_positive());
        let back = p.subtract(&n).unwrap();
        prop_assert_eq!(back, mu.clone());
        for (x, _) in p.atoms() {
            prop_assert!(n.atoms().iter().all(|(y, _)| x != y));
        }
    }

    #[test]
    fn add_then_subtract_roundtrips(a in common::line_atoms(8, false), b in common::line_atoms(8, false)) {
        let (mu, nu) = (line(&a), line(&b));
        let back = mu.add(&nu).unwrap().subtract(&nu).unwrap();
        prop_assert_eq!(back.len(), mu.len());
        for ((x, w), (y, v)) in back.atoms().iter().zip(mu.atoms()) {
            prop_assert_eq!(x, y);
            prop_assert!((w - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn consolidate_idempotent(atoms in prop::collection::vec((0i32..6, -2.0..2.0f64), 1..12)) {
        let raw: Vec<(Point, f64)> = atoms.iter().map(|&(x, w)| (Point::real(x as f64), w)).collect();
        let mu = DiscreteSignedMeasure::raw(&r(), raw).unwrap();
        let once = mu.consolidate();
        prop_assert_eq!(once.consolidate(), once.clone());
        prop_assert!(once.atoms().iter().all(|(_, w)| *w != 0.0));
    }

    #[test]
    fn pushforward_mass_and_tv(atoms in common::line_atoms(10, false), a in -3.0..3.0f64, b in -2.0..2.0f64) {
        let mu = line(&atoms);
        let one = LipFunction::constant(&r(), 1.0).unwrap();
        let affine = LipMap::affine(&r(), a, b).unwrap();
        let img = mu.pushforward(&affine).unwrap();
        prop_assert!((img.pair(&one).unwrap() - mu.pair(&one).unwrap()).abs() <= 1e-12 * (1.0 + mu.tv_norm()));
        prop_assert!(img.tv_norm() <= mu.tv_norm() + 1e-12);
        if a.abs() > 1e-3 {
            prop_assert!((img.tv_norm() - mu.tv_norm()).abs() <= 1e-12 * (1.0 + mu.tv_norm()));
        }
        let floor = LipMap::custom(&r(), f64::INFINITY, |p| Ok(Point::real(p.as_real().unwrap().floor()))).unwrap();
        let img = mu.pushforward(&floor).unwrap();
        prop_assert!(img.tv_norm() <= mu.tv_norm() + 1e-12);
    }

    #[test]
    fn pairing_bounded_by_sup_times_tv(atoms in common::line_atoms(10, false), c in -5.0..5.0f64, l in 0.1..4.0f64) {
        let mu = line(&atoms);
        let h = hat_function(&r(), l, &PointSet::reals(&[c])).unwrap().scale(-1.7).unwrap();
        prop_assert!(mu.pair(&h).unwrap().abs() <= h.declared_sup() * mu.tv_norm() + 1e-12);
    }

    #[test]
    fn exact_density_pairing_matches_quadrature(n in 1u32..12, amp in -3.0..3.0f64,
                                                knots in prop::collection::vec((0.01..0.99f64, -1.0..1.0f64), 0..5)) {
        let mu = DensityMeasure1D::sinusoid(amp, n).unwrap();
        let f = random_pl(&knots);
        let exact = mu.pair(&f, 1e-10).unwrap();
        let quad = mu.pair_by_quadrature(&f, 1e-10).unwrap();
        prop_assert!((exact - quad).abs() <= 1e-7, "{} vs {}", exact, quad);
    }
}
