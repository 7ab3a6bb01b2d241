mod common;

use std::f64::consts::PI;

use flatnorm::flat_norm::NormConfig;
use flatnorm::lipschitz::{hat_function, LipFunction};
use flatnorm::measure::DiscreteSignedMeasure;
use flatnorm::metric::{MetricSpace, Point, PointSet};
use flatnorm::schur_lab::{
    default_line_dictionary, dictionary_convergence_scan, dirac_drift_demo, discrete_l1_demo,
    escaping_mass_profile, find_separated_clusters, oscillating_density_demo,
    select_sparse_subsequence, verify_clusters, verify_sparse_selection, ClusterWitness,
    MeasureSequence, Neighborhood,
};
use flatnorm::Error;
use proptest::prelude::*;
use rand::RngExt;

fn r() -> MetricSpace {
    MetricSpace::real_line()
}

fn line(atoms: &[(f64, f64)]) -> DiscreteSignedMeasure {
    common::on_line(atoms)
}

/// Recomputes both cluster inequalities from scratch on the real line.
fn clusters_hold(measures: &[DiscreteSignedMeasure], eps: f64, ws: &[ClusterWitness]) -> bool {
    let xs = |c: &PointSet| c.iter().map(|p| p.as_real().unwrap()).collect::<Vec<_>>();
    for w in ws {
        let pts = xs(&w.cluster);
        let mass: f64 = measures[w.index]
            .atoms()
            .iter()
            .filter(|(p, _)| pts.contains(&p.as_real().unwrap()))
            .map(|(_, m)| m)
            .sum();
        if mass < eps {
            return false;
        }
    }
    for (i, a) in ws.iter().enumerate() {
        for b in &ws[i + 1..] {
            if a.index >= b.index {
                return false;
            }
            for x in xs(&a.cluster) {
                for y in xs(&b.cluster) {
                    if (x - y).abs() <= eps {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Recomputes the sparse-selection inequality from scratch on the real line.
fn selection_holds(
    measures: &[DiscreteSignedMeasure],
    sets: &[Neighborhood],
    eps: f64,
    sel: &[usize],
) -> bool {
    sel.iter().all(|&i| {
        let mass: f64 = measures[i]
            .atoms()
            .iter()
            .filter(|(p, _)| {
                let x = p.as_real().unwrap();
                sel.iter().filter(|&&j| j != i).any(|&j| {
                    sets[j]
                        .core
                        .iter()
                        .any(|c| (x - c.as_real().unwrap()).abs() <= sets[j].radius)
                })
            })
            .map(|(_, w)| w)
            .sum();
        mass < eps
    })
}

#[test]
fn cluster_examples() {
    let spread: Vec<_> = (1..=5).map(|n| line(&[(3.0 * n as f64, 1.0)])).collect();
    let ws = find_separated_clusters(&spread, 1.0).unwrap().unwrap();
    assert_eq!(ws.len(), 5);
    assert!(ws.iter().all(|w| w.mass == 1.0));
    assert!(clusters_hold(&spread, 1.0, &ws));
    assert!(verify_clusters(&spread, 1.0, &ws).unwrap());

    let stuck: Vec<_> = (0..5).map(|_| line(&[(0.0, 1.0)])).collect();
    assert!(find_separated_clusters(&stuck, 0.5).unwrap().is_none());

    let half: Vec<_> = (1..=4)
        .map(|n| line(&[(0.0, 0.5), (5.0 * n as f64, 0.5)]))
        .collect();
    let ws = find_separated_clusters(&half, 0.4).unwrap().unwrap();
    assert_eq!(ws.len(), 4);
    for (k, w) in ws.iter().enumerate() {
        assert_eq!(w.cluster, PointSet::reals(&[5.0 * (k + 1) as f64]));
        assert_eq!(w.mass, 0.5);
    }
    assert!(matches!(
        find_separated_clusters(&half, 0.0),
        Err(Error::InvalidParameter { .. })
    ));
    let signed = vec![line(&[(0.0, -1.0)])];
    assert!(matches!(
        find_separated_clusters(&signed, 1.0),
        Err(Error::SignedInput { .. })
    ));
}

#[test]
fn sparse_selection_examples() {
    let n = 6;
    let own: Vec<_> = (0..n).map(|i| line(&[(10.0 * i as f64, 1.0)])).collect();
    let sets: Vec<Neighborhood> = (0..n)
        .map(|i| Neighborhood {
            core: PointSet::reals(&[10.0 * i as f64]),
            radius: 1.0,
        })
        .collect();
    assert_eq!(
        select_sparse_subsequence(&own, &sets, 0.01).unwrap(),
        (0..n).collect::<Vec<_>>()
    );

    let spread: Vec<_> = (0..n)
        .map(|_| {
            line(
                &(0..n)
                    .map(|j| (10.0 * j as f64, 1.0 / n as f64))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    for k in 1..=n {
        let eps = (k as f64 - 1.0) / n as f64 + 0.01;
        let sel = select_sparse_subsequence(&spread, &sets, eps).unwrap();
        assert!(selection_holds(&spread, &sets, eps, &sel));
        assert!(verify_sparse_selection(&spread, &sets, eps, &sel).unwrap());
    }
    assert_eq!(
        select_sparse_subsequence(&own[..1], &sets[..1], 0.1).unwrap(),
        vec![0]
    );
    assert!(matches!(
        select_sparse_subsequence(&own[..2], &sets[..1], 0.1),
        Err(Error::DimensionMismatch { .. })
    ));
    let overlapping = vec![
        sets[0].clone(),
        Neighborhood {
            core: PointSet::reals(&[1.5]),
            radius: 1.0,
        },
    ];
    assert!(matches!(
        select_sparse_subsequence(&own[..2], &overlapping, 0.1),
        Err(Error::OverlappingSupports { i: 0, j: 1 })
    ));
}

#[test]
fn scan_examples() {
    let dict = default_line_dictionary().unwrap();
    let rep = dictionary_convergence_scan(&MeasureSequence::dirac_drift(), &dict, 64).unwrap();
    assert!(rep.summary_value("max_oscillation").unwrap() < 1e-2);
    let tail = rep.summary_value("flat_tail").unwrap();
    assert!(tail <= 2.0 / 65.0 + 2.0 / 33.0 + 1e-9);
    let osc =
        dictionary_convergence_scan(&MeasureSequence::oscillating(), &[hat(0.4, 0.2)], 16).unwrap();
    assert!(osc.summary_value("flat_tail").unwrap().is_nan());
    assert!(matches!(
        dictionary_convergence_scan(&MeasureSequence::dirac_drift(), &[], 8),
        Err(Error::EmptySet(_))
    ));
}

fn hat(c: f64, l: f64) -> LipFunction {
    hat_function(&MetricSpace::unit_interval(), l, &PointSet::reals(&[c])).unwrap()
}

#[test]
fn escaping_mass_examples() {
    let radii = [0.5, 1.0, 2.0, 5.0, 10.0];
    let s = r();
    let tight = MeasureSequence::discrete(&r(), Some(1.0), 1, move |n| {
        DiscreteSignedMeasure::on_line(&s, &[(1.0 / n as f64, 1.0)])
    });
    let rep = escaping_mass_profile(&tight, &Point::real(0.0), &radii, 20).unwrap();
    let prof = rep
        .table("profile")
        .unwrap()
        .reals("escaping_mass")
        .unwrap();
    assert_eq!(prof[0], 1.0);
    assert!(prof[1..].iter().all(|&m| m == 0.0));

    let s = r();
    let escaping = MeasureSequence::discrete(&r(), Some(1.0), 1, move |n| {
        DiscreteSignedMeasure::on_line(&s, &[(n as f64, 1.0)])
    });
    let rep = escaping_mass_profile(&escaping, &Point::real(0.0), &radii, 20).unwrap();
    assert!(rep
        .table("profile")
        .unwrap()
        .reals("escaping_mass")
        .unwrap()
        .iter()
        .all(|&m| m == 1.0));

    let s = r();
    let fading = MeasureSequence::discrete(&r(), Some(1.0), 1, move |n| {
        let t = 1.0 / n as f64;
        DiscreteSignedMeasure::on_line(&s, &[(0.0, 1.0 - t), (n as f64, t)])
    });
    let rep = escaping_mass_profile(&fading, &Point::real(0.0), &radii, 20).unwrap();
    let prof = rep
        .table("profile")
        .unwrap()
        .reals("escaping_mass")
        .unwrap();
    for (p, &rad) in prof.iter().zip(&radii) {
        let first_outside = (rad.floor() as u32 + 1).max(1);
        assert!(
            (p - 1.0 / first_outside as f64).abs() < 1e-15,
            "R={rad}: {p}"
        );
    }
    assert!(prof.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn oscillating_density_report() {
    let ns = [1u32, 2, 4, 8, 16, 32, 64];
    let rep = oscillating_density_demo(&ns).unwrap();
    let t = rep.table("sequence").unwrap();
    let target = 1.0 / (PI * PI);
    for (k, &n) in ns.iter().enumerate() {
        assert!((t.reals("pairing").unwrap()[k] - target).abs() < 1e-9);
        assert!((t.reals("tv").unwrap()[k] - 2.0 * n as f64 / PI).abs() < 1e-9);
        let bound = target / (1.0 + 1.0 / (4.0 * n as f64));
        assert!((t.reals("bl_lower_bound").unwrap()[k] - bound).abs() < 1e-12);
    }
    assert!((t.reals("bl_lower_bound").unwrap()[3] - target / (1.0 + 1.0 / 32.0)).abs() < 1e-12);
    for name in ["decay_f1", "decay_f2", "decay_f3"] {
        let col = t.reals(name).unwrap();
        assert!(col[6].abs() < 0.1 * col[0].abs(), "{name}");
    }
    assert!(oscillating_density_demo(&[0]).is_err());
}

#[test]
fn dirac_drift_report() {
    let rep = dirac_drift_demo(64).unwrap();
    let t = rep.table("sequence").unwrap();
    let bl = t.reals("bl_norm").unwrap();
    assert!((bl[0] - 2.0 / 3.0).abs() < 1e-9);
    assert!((bl[9] - 2.0 / 21.0).abs() < 1e-9);
    assert!(rep.summary_value("max_error").unwrap() <= 1e-9);
    let pos = t.reals("positive_pairing").unwrap();
    assert!(pos[1..].iter().all(|&v| v == 0.0));
    assert!(t.reals("positive_tv").unwrap().iter().all(|&v| v == 1.0));
    assert!(t.reals("tv").unwrap().iter().all(|&v| v == 2.0));
}

#[test]
fn discrete_l1_report() {
    let rep = discrete_l1_demo(20, 30, 4, &NormConfig::default()).unwrap();
    let t = rep.table("ratios").unwrap();
    let ratio = t.reals("ratio").unwrap();
    assert!((ratio[0] - 1.0).abs() < 1e-9);
    assert!((ratio[1] - 1.0 / 3.0).abs() < 1e-9);
    assert!(rep.summary_value("min_ratio").unwrap() >= 1.0 / 3.0 - 1e-9);
    let n = MetricSpace::discrete_naturals();
    let alt = DiscreteSignedMeasure::new(
        &n,
        (0..4u64)
            .map(|k| (Point::Natural(k), if k % 2 == 0 { 1.0 } else { -1.0 }))
            .collect(),
    )
    .unwrap();
    let bl = flatnorm::flat_norm::bl_dual_norm(&alt).unwrap().value;
    assert!(bl / alt.tv_norm() >= 1.0 / 3.0 - 1e-9);
    assert!(matches!(
        discrete_l1_demo(10, 1, 0, &NormConfig { support_cap: 5 }),
        Err(Error::SupportTooLarge { .. })
    ));
}

#[test]
fn reports_are_deterministic() {
    let a = discrete_l1_demo(15, 10, 77, &NormConfig::default()).unwrap();
    let b = discrete_l1_demo(15, 10, 77, &NormConfig::default()).unwrap();
    assert_eq!(a.to_json_string(), b.to_json_string());
    assert_eq!(a.to_csv(), b.to_csv());
    let c = discrete_l1_demo(15, 10, 78, &NormConfig::default()).unwrap();
    assert_ne!(a.to_json_string(), c.to_json_string());
    assert_eq!(
        dirac_drift_demo(8).unwrap().to_json_string(),
        dirac_drift_demo(8).unwrap().to_json_string()
    );
}

fn random_instance(seed: u64) -> (Vec<DiscreteSignedMeasure>, Vec<Neighborhood>) {
    let mut rng = common::rng(seed);
    let n = rng.random_range(2..10usize);
    let centers: Vec<f64> = (0..n).map(|i| 10.0 * i as f64).collect();
    let sets = centers
        .iter()
        .map(|&c| Neighborhood {
            core: PointSet::reals(&[c]),
            radius: 2.0,
        })
        .collect();
    let measures = (0..n)
        .map(|_| {
            let atoms: Vec<(f64, f64)> = (0..rng.random_range(1..6usize))
                .map(|_| {
                    let c = centers[rng.random_range(0..n)];
                    (c + rng.random_range(-3.0..3.0), rng.random_range(0.01..1.0))
                })
                .collect();
            line(&atoms)
        })
        .collect();
    (measures, sets)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cluster_witnesses_pass_checks(seed in 0u64..1_000_000, eps in 0.1..3.0f64) {
        let (measures, _) = random_instance(seed);
        if let Some(ws) = find_separated_clusters(&measures, eps).unwrap() {
            prop_assert!(ws.len() >= 2);
            prop_assert!(clusters_hold(&measures, eps, &ws));
            prop_assert!(verify_clusters(&measures, eps, &ws).unwrap());
        }
    }

    #[test]
    fn sparse_selections_pass_checks(seed in 0u64..1_000_000, eps in 0.05..2.0f64) {
        let (measures, sets) = random_instance(seed);
        let sel = select_sparse_subsequence(&measures, &sets, eps).unwrap();
        prop_assert!(sel.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(selection_holds(&measures, &sets, eps, &sel));
        prop_assert!(verify_sparse_selection(&measures, &sets, eps, &sel).unwrap());
    }

    #[test]
    fn cluster_search_is_deterministic(seed in 0u64..1_000_000) {
        let (measures, _) = random_instance(seed);
        prop_assert_eq!(find_separated_clusters(&measures, 1.0).unwrap(), find_separated_clusters(&measures, 1.0).unwrap());
    }
}
