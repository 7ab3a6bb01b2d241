//! Markov operators on finitely supported measures and their duals.
//!
//! An operator `P` acts on measures and its dual `U` acts on functions so
//! that `⟨Pμ, f⟩ = ⟨μ, Uf⟩`. Push-forwards, finite mixtures of push-forwards
//! (iterated function systems) and row-stochastic kernels on finite spaces
//! are supported, along with their powers.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flat_norm::{bl_distance, two_point_bl};
use crate::lipschitz::{compose_with_map, LipFunction};
use crate::map::LipMap;
use crate::measure::DiscreteSignedMeasure;
use crate::metric::{MetricSpace, Point, SpaceKind};

/// Default bound on the number of atoms an iteration may materialize.
pub const DEFAULT_ATOM_CAP: usize = 1_000_000;

const STOCHASTIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    /// `μ ↦ φ#μ`.
    Pushforward(LipMap),
    /// `μ ↦ Σ pᵢ φᵢ#μ`.
    Ifs(Vec<(LipMap, f64)>),
    /// Row-major `n × n` row-stochastic matrix on an `n`-point matrix space.
    Kernel(Arc<[f64]>),
    /// `Pⁿ`.
    Power(Box<MarkovOperator>, u32),
}

/// A Markov operator with a label identifying it within a family.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovOperator {
    space: MetricSpace,
    kind: OperatorKind,
    label: String,
}

impl MarkovOperator {
    pub fn pushforward(map: &LipMap) -> Self {
        MarkovOperator {
            space: map.space().clone(),
            kind: OperatorKind::Pushforward(map.clone()),
            label: "pushforward".into(),
        }
    }

    /// An iterated function system. Probabilities must be positive and sum
    /// to one within `1e-12`.
    pub fn ifs(maps: Vec<(LipMap, f64)>) -> Result<Self> {
        let space = maps
            .first()
            .ok_or(Error::EmptySet("IFS maps"))?
            .0
            .space()
            .clone();
        let mut total = 0.0;
        for (map, p) in &maps {
            if map.space() != &space {
                return Err(Error::SpaceMismatch);
            }
            if !(*p > 0.0) || !p.is_finite() {
                return Err(Error::param(
                    "p",
                    format!("probabilities must be positive, got {p}"),
                ));
            }
            total += p;
        }
        if (total - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::param(
                "p",
                format!("probabilities sum to {total}, not 1"),
            ));
        }
        Ok(MarkovOperator {
            space,
            kind: OperatorKind::Ifs(maps),
            label: "ifs".into(),
        })
    }

    /// A transition matrix on a finite matrix space. Entries must be
    /// nonnegative and each row must sum to one within `1e-12`.
    pub fn kernel(space: &MetricSpace, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = match space.kind() {
            SpaceKind::Matrix { labels, .. } => labels.len(),
            _ => return Err(Error::param("space", "kernels need a finite matrix space")),
        };
        if matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if r.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::NonStochastic {
                    row,
                    sum: r.iter().sum(),
                });
            }
            let sum: f64 = r.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::NonStochastic { row, sum });
            }
            flat.extend_from_slice(r);
        }
        Ok(MarkovOperator {
            space: space.clone(),
            kind: OperatorKind::Kernel(flat.into()),
            label: "kernel".into(),
        })
    }

    /// `Pⁿ`. Powers of push-forwards collapse to the push-forward of `φⁿ`.
    pub fn power(&self, n: u32) -> Result<Self> {
        let label = format!("{}^{n}", self.label);
        let kind = match &self.kind {
            OperatorKind::Pushforward(map) => OperatorKind::Pushforward(map.power(n)?),
            OperatorKind::Power(inner, k) => OperatorKind::Power(inner.clone(), k * n),
            _ => OperatorKind::Power(Box::new(self.clone()), n),
        };
        Ok(MarkovOperator {
            space: self.space.clone(),
            kind,
            label,
        })
    }

    /// The family `P⁰, P¹, …, P^n_max`.
    pub fn iterates(&self, n_max: u32) -> Result<Vec<Self>> {
        (0..=n_max).map(|n| self.power(n)).collect()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// A bound on `|Uf|_L / |f|_L`, when one is known from the maps.
    pub fn lipschitz_factor(&self) -> Option<f64> {
        match &self.kind {
            OperatorKind::Pushforward(map) => Some(map.lip()),
            OperatorKind::Ifs(maps) => Some(maps.iter().map(|(m, p)| p * m.lip()).sum()),
            OperatorKind::Kernel(_) => None,
            OperatorKind::Power(inner, n) => inner.lipschitz_factor().map(|c| c.powi(*n as i32)),
        }
    }

    fn check_space(&self, space: &MetricSpace) -> Result<()> {
        if space != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// `Pμ`, consolidated.
    pub fn apply(&self, mu: &DiscreteSignedMeasure) -> Result<DiscreteSignedMeasure> {
        self.apply_capped(mu, DEFAULT_ATOM_CAP)
    }

    /// `Pμ`, failing if more than `cap` atoms would be materialized.
    pub fn apply_capped(
        &self,
        mu: &DiscreteSignedMeasure,
        cap: usize,
    ) -> Result<DiscreteSignedMeasure> {
        self.check_space(mu.space())?;
        match &self.kind {
            OperatorKind::Pushforward(map) => mu.pushforward(map),
            OperatorKind::Ifs(maps) => {
                let atoms = mu.len().saturating_mul(maps.len());
                if atoms > cap {
                    return Err(Error::AtomCapExceeded { atoms, cap });
                }
                let images = maps
                    .iter()
                    .map(|(m, _)| mu.pushforward(m))
                    .collect::<Result<Vec<_>>>()?;
                let terms: Vec<(f64, &DiscreteSignedMeasure)> = maps
                    .iter()
                    .zip(&images)
                    .map(|((_, p), img)| (*p, img))
                    .collect();
                DiscreteSignedMeasure::combination(&self.space, &terms)
            }
            OperatorKind::Kernel(k) => {
                let n = self.space.matrix_size().unwrap_or(0);
                let mut atoms = Vec::new();
                for (p, w) in mu.atoms() {
                    let Point::Index(i) = p else {
                        return Err(Error::InvalidPoint(format!(
                            "{p} is not a matrix-space point"
                        )));
                    };
                    for j in 0..n {
                        let kij = k[i * n + j];
                        if kij != 0.0 {
                            atoms.push((Point::Index(j), w * kij));
                        }
                    }
                }
                DiscreteSignedMeasure::new(&self.space, atoms)
            }
            OperatorKind::Power(inner, n) => inner.iterate_capped(mu, *n, cap),
        }
    }

    /// `Pⁿμ`, with `P⁰` the identity.
    pub fn iterate(&self, mu: &DiscreteSignedMeasure, n: u32) -> Result<DiscreteSignedMeasure> {
        self.iterate_capped(mu, n, DEFAULT_ATOM_CAP)
    }

    pub fn iterate_capped(
        &self,
        mu: &DiscreteSignedMeasure,
        n: u32,
        cap: usize,
    ) -> Result<DiscreteSignedMeasure> {
        self.check_space(mu.space())?;
        let mut out = mu.consolidate();
        for _ in 0..n {
            out = self.apply_capped(&out, cap)?;
            if out.len() > cap {
                return Err(Error::AtomCapExceeded {
                    atoms: out.len(),
                    cap,
                });
            }
        }
        Ok(out)
    }

    /// `Uf`, the dual action on functions.
    pub fn dual_apply(&self, f: &LipFunction) -> Result<LipFunction> {
        self.check_space(f.space())?;
        match &self.kind {
            OperatorKind::Pushforward(map) => compose_with_map(f, map),
            OperatorKind::Ifs(maps) => {
                let terms = maps
                    .iter()
                    .map(|(m, p)| Ok((*p, compose_with_map(f, m)?)))
                    .collect::<Result<Vec<_>>>()?;
                LipFunction::linear_combination(terms)
            }
            OperatorKind::Kernel(k) => {
                let n = self.space.matrix_size().unwrap_or(0);
                let fv = (0..n)
                    .map(|j| f.evaluate(&Point::Index(j)))
                    .collect::<Result<Vec<_>>>()?;
                let uf: Vec<f64> = (0..n)
                    .map(|i| (0..n).map(|j| k[i * n + j] * fv[j]).sum())
                    .collect();
                let sup = uf.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                let mut lip: f64 = 0.0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let d = self.space.distance(&Point::Index(i), &Point::Index(j))?;
                        lip = lip.max((uf[i] - uf[j]).abs() / d);
                    }
                }
                LipFunction::custom(&self.space, sup, lip, None, move |x| match x {
                    Point::Index(i) => Ok(uf[*i]),
                    _ => Err(Error::InvalidPoint(format!(
                        "{x} is not a matrix-space point"
                    ))),
                })
            }
            OperatorKind::Power(inner, n) => {
                if matches!(inner.kind, OperatorKind::Kernel(_)) {
                    return inner.dual_iterate(f, *n);
                }
                if let Some(g) = inner.dual_iterate_flat(f, *n)? {
                    return Ok(g);
                }
                // Evaluate through the measure side so that coinciding images
                // are merged instead of expanded.
                let lip = inner
                    .lipschitz_factor()
                    .map_or(f64::INFINITY, |c| f.declared_lip() * c.powi(*n as i32));
                let (op, g, n) = ((**inner).clone(), f.clone(), *n);
                let space = self.space.clone();
                LipFunction::custom(&self.space, f.declared_sup(), lip, None, move |x| {
                    op.iterate(&DiscreteSignedMeasure::dirac(&space, x.clone())?, n)?
                        .pair(&g)
                })
            }
        }
    }

    /// `Uⁿf`, with `U⁰` the identity.
    pub fn dual_iterate(&self, f: &LipFunction, n: u32) -> Result<LipFunction> {
        self.check_space(f.space())?;
        if n > 1 && !matches!(self.kind, OperatorKind::Kernel(_)) {
            if let Some(g) = self.dual_iterate_flat(f, n)? {
                return Ok(g);
            }
        }
        let mut out = f.clone();
        for _ in 0..n {
            out = self.dual_apply(&out)?;
        }
        Ok(out)
    }
}

/// Largest breakpoint table kept when flattening iterated duals.
const FLAT_BREAKPOINT_CAP: usize = 1 << 16;

impl MarkovOperator {
    /// `Uⁿf` rebuilt as an explicit piecewise-linear function after every
    /// step, so that evaluation cost does not grow with `n`. Returns `None`
    /// when some step has no exact piecewise-linear form or it grows past
    /// [`FLAT_BREAKPOINT_CAP`] breakpoints. On the unit interval contractive
    /// affine systems keep the table small because images outside `[0, 1]`
    /// are dropped.
    fn dual_iterate_flat(&self, f: &LipFunction, n: u32) -> Result<Option<LipFunction>> {
        let mut out = f.clone();
        for _ in 0..n {
            let next = self.dual_apply(&out)?;
            let Some(bps) = next.piecewise_linear_form() else {
                return Ok(None);
            };
            if bps.len() > FLAT_BREAKPOINT_CAP {
                return Ok(None);
            }
            let flat = LipFunction::piecewise_linear_1d(&self.space, bps)?;
            let (sup, lip) = (
                flat.declared_sup().min(next.declared_sup()),
                flat.declared_lip().min(next.declared_lip()),
            );
            out = flat.with_bounds(sup, lip);
        }
        Ok(Some(out))
    }
}

/// Sampled moduli of continuity of `{U_λ f}` at a centre point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTable {
    pub center: Point,
    pub radii: Vec<f64>,
    /// `ω(δ)`: the largest `|U_λ f(x) - U_λ f(x₀)|` seen over the family and
    /// all sampled `x` with `d(x, x₀) ≤ δ`.
    pub modulus: Vec<f64>,
    /// Member labels, in family order.
    pub labels: Vec<String>,
    /// `per_member[k][r]`: the same quantity restricted to member `k`.
    pub per_member: Vec<Vec<f64>>,
    /// Points sampled at each radius.
    pub samples: Vec<usize>,
}

/// Estimates the modulus of equicontinuity of `{U_λ f : λ}` at `x₀`.
///
/// Points are drawn from each ball `B(x₀, δ)` with a generator seeded by
/// `seed`; the table is a cumulative maximum, so it is nondecreasing in `δ`.
pub fn eproperty_probe(
    family: &[MarkovOperator],
    f: &LipFunction,
    x0: &Point,
    radii: &[f64],
    samples_per_radius: usize,
    seed: u64,
) -> Result<ModulusTable> {
    let first = family.first().ok_or(Error::EmptySet("operator family"))?;
    let space = first.space();
    check_radii(radii)?;
    space.check_point(x0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut balls = Vec::with_capacity(radii.len());
    for &r in radii {
        balls.push(space.sample_ball(x0, r, samples_per_radius, &mut rng)?);
    }
    let per_member = family
        .par_iter()
        .map(|op| {
            let u = op.dual_apply(f)?;
            let u0 = u.evaluate(x0)?;
            let mut acc: f64 = 0.0;
            let mut row = Vec::with_capacity(balls.len());
            for ball in &balls {
                for x in ball {
                    acc = acc.max((u.evaluate(x)? - u0).abs());
                }
                row.push(acc);
            }
            Ok(row)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let modulus = (0..radii.len())
        .map(|r| per_member.iter().fold(0.0f64, |a, row| a.max(row[r])))
        .collect();
    Ok(ModulusTable {
        center: x0.clone(),
        radii: radii.to_vec(),
        modulus,
        labels: family.iter().map(|op| op.label().to_string()).collect(),
        per_member,
        samples: balls.iter().map(Vec::len).collect(),
    })
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::EmptySet("radii"));
    }
    if radii.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
        return Err(Error::param("radii", "must be positive and finite"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("radii", "must be strictly increasing"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquicontinuityRow {
    /// `‖μ - μ₀‖*_BL`.
    pub input: f64,
    /// `max_λ ‖P_λ μ - P_λ μ₀‖*_BL`.
    pub output: f64,
    /// Label of the member attaining `output`.
    pub worst_member: String,
    /// Index of the perturbation in the input list.
    pub perturbation: usize,
}

/// Input and output flat distances for each perturbation of `μ₀`, sorted by
/// input distance. All measures must be positive.
pub fn measure_equicontinuity_probe(
    family: &[MarkovOperator],
    mu0: &DiscreteSignedMeasure,
    perturbations: &[DiscreteSignedMeasure],
) -> Result<Vec<EquicontinuityRow>> {
    if family.is_empty() {
        return Err(Error::EmptySet("operator family"));
    }
    let inputs = std::iter::once(mu0).chain(perturbations);
    for (index, m) in inputs.enumerate() {
        if let Some((_, w)) = m.atoms().iter().find(|a| a.1 < 0.0) {
            return Err(Error::SignedInput { index, weight: *w });
        }
    }
    let images0 = family
        .iter()
        .map(|op| op.apply(mu0))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = perturbations
        .par_iter()
        .enumerate()
        .map(|(k, mu)| {
            let input = bl_distance(mu, mu0)?;
            let mut output = 0.0;
            let mut worst = family[0].label().to_string();
            for (op, img0) in family.iter().zip(&images0) {
                let d = bl_distance(&op.apply(mu)?, img0)?;
                if d > output {
                    output = d;
                    worst = op.label().to_string();
                }
            }
            Ok(EquicontinuityRow {
                input,
                output,
                worst_member: worst,
                perturbation: k,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        a.input
            .total_cmp(&b.input)
            .then(a.perturbation.cmp(&b.perturbation))
    });
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracRow {
    pub radius: f64,
    pub x: Point,
    /// `d(x, x₀)`.
    pub distance: f64,
    /// `‖Pδ_x - Pδ_{x₀}‖*_BL`.
    pub output: f64,
    /// `|Uf(x) - Uf(x₀)|`.
    pub dual_gap: f64,
    /// `|⟨Pδ_x - Pδ_{x₀}, f⟩|`.
    pub pairing_gap: f64,
    /// For push-forwards, `h(d(φ(x), φ(x₀)))` with `h(t) = 2t/(2+t)`.
    pub image_h: Option<f64>,
}

/// Tabulates `‖Pδ_x - Pδ_{x₀}‖*_BL` against `d(x, x₀)` for one point `x`
/// at the edge of each ball `B(x₀, δ)`, and checks
/// `|Uf(x) - Uf(x₀)| = |⟨Pδ_x - Pδ_{x₀}, f⟩|` to `1e-12` on each.
pub fn dirac_continuity_check(
    op: &MarkovOperator,
    f: &LipFunction,
    x0: &Point,
    radii: &[f64],
) -> Result<Vec<DiracRow>> {
    check_radii(radii)?;
    let space = op.space();
    let u = op.dual_apply(f)?;
    let img0 = op.apply(&DiscreteSignedMeasure::dirac(space, x0.clone())?)?;
    let u0 = u.evaluate(x0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let Some(x) = space.sample_ball(x0, r, 1, &mut rng)?.into_iter().next() else {
            continue;
        };
        let img = op.apply(&DiscreteSignedMeasure::dirac(space, x.clone())?)?;
        let diff = img.subtract(&img0)?;
        let dual_gap = (u.evaluate(&x)? - u0).abs();
        let pairing_gap = diff.pair(f)?.abs();
        if (dual_gap - pairing_gap).abs() > 1e-12 * dual_gap.max(1.0) {
            return Err(Error::InvariantViolation(format!(
                "dual gap {dual_gap} differs from pairing gap {pairing_gap} at {x}"
            )));
        }
        let image_h = match &op.kind {
            OperatorKind::Pushforward(map) => Some(two_point_bl(
                space.distance(&map.apply(&x)?, &map.apply(x0)?)?,
            )),
            _ => None,
        };
        rows.push(DiracRow {
            radius: r,
            distance: space.distance(&x, x0)?,
            output: crate::flat_norm::bl_dual_norm(&diff)?.value,
            dual_gap,
            pairing_gap,
            image_h,
            x,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lipschitz::hat_function;
    use crate::metric::PointSet;

    fn halving_ifs() -> MarkovOperator {
        let i = MetricSpace::unit_interval();
        MarkovOperator::ifs(vec![
            (LipMap::affine(&i, 0.5, 0.0).unwrap(), 0.5),
            (LipMap::affine(&i, 0.5, 0.5).unwrap(), 0.5),
        ])
        .unwrap()
    }

    #[test]
    fn ifs_splits_a_dirac() {
        let p = halving_ifs();
        let d0 = DiscreteSignedMeasure::dirac(p.space(), Point::real(0.0)).unwrap();
        let out = p.apply(&d0).unwrap();
        let expect = DiscreteSignedMeasure::on_line(p.space(), &[(0.0, 0.5), (0.5, 0.5)]).unwrap();
        assert_eq!(out, expect);
        assert_eq!(p.iterate(&d0, 6).unwrap().len(), 64);
    }

    #[test]
    fn ifs_dual_of_identity_function() {
        let p = halving_ifs();
        let f = LipFunction::piecewise_linear_1d(p.space(), vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let uf = p.dual_apply(&f).unwrap();
        assert!((uf.evaluate(&Point::real(0.3)).unwrap() - (0.15 + 0.25)).abs() < 1e-15);
        assert!((uf.declared_lip() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn permutation_kernel_swaps() {
        let s = MetricSpace::from_distance_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = MarkovOperator::kernel(&s, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let a = DiscreteSignedMeasure::dirac(&s, Point::Index(0)).unwrap();
        assert_eq!(
            p.apply(&a).unwrap(),
            DiscreteSignedMeasure::dirac(&s, Point::Index(1)).unwrap()
        );
        assert!(matches!(
            MarkovOperator::kernel(&s, vec![vec![0.5, 0.4], vec![1.0, 0.0]]),
            Err(Error::NonStochastic { row: 0, .. })
        ));
    }

    #[test]
    fn atom_cap_is_enforced() {
        let p = halving_ifs();
        let d0 = DiscreteSignedMeasure::dirac(p.space(), Point::real(0.3)).unwrap();
        assert!(matches!(
            p.iterate_capped(&d0, 10, 100),
            Err(Error::AtomCapExceeded { .. })
        ));
    }

    #[test]
    fn power_dual_matches_iterated_dual() {
        let p = halving_ifs();
        let f = hat_function(p.space(), 0.2, &PointSet::reals(&[0.4])).unwrap();
        let a = p.power(5).unwrap().dual_apply(&f).unwrap();
        let b = p.dual_iterate(&f, 5).unwrap();
        for x in [0.0, 0.13, 0.5, 0.77, 1.0] {
            let x = Point::real(x);
            assert!((a.evaluate(&x).unwrap() - b.evaluate(&x).unwrap()).abs() < 1e-13);
        }
        // The flattened form may tighten the contraction bound 5/32 to the
        // exact slope, but never below the slope actually present.
        assert!(a.declared_lip() <= 5.0 / 32.0 + 1e-15);
        let mut steepest: f64 = 0.0;
        for k in 0..4096 {
            let (x, y) = (k as f64 / 4096.0, (k + 1) as f64 / 4096.0);
            let rise = b.evaluate(&Point::real(y)).unwrap() - b.evaluate(&Point::real(x)).unwrap();
            steepest = steepest.max(rise.abs() * 4096.0);
        }
        assert!(steepest > 0.0 && a.declared_lip() >= steepest - 1e-9);
    }

    #[test]
    fn identity_dirac_table_is_two_point_form() {
        let r = MetricSpace::real_line();
        let id = MarkovOperator::pushforward(&LipMap::identity(&r));
        let f = hat_function(&r, 1.0, &PointSet::reals(&[0.0])).unwrap();
        let rows = dirac_continuity_check(&id, &f, &Point::real(0.0), &[0.1, 1.0, 3.0]).unwrap();
        for row in rows {
            assert!((row.output - two_point_bl(row.distance)).abs() < 1e-9);
            assert!((row.image_h.unwrap() - row.output).abs() < 1e-9);
        }
    }

    #[test]
    fn signed_perturbations_are_rejected() {
        let r = MetricSpace::real_line();
        let id = MarkovOperator::pushforward(&LipMap::identity(&r));
        let mu0 = DiscreteSignedMeasure::dirac(&r, Point::real(0.0)).unwrap();
        let bad = DiscreteSignedMeasure::on_line(&r, &[(1.0, -1.0)]).unwrap();
        assert!(matches!(
            measure_equicontinuity_probe(&[id], &mu0, &[bad]),
            Err(Error::SignedInput { index: 1, .. })
        ));
    }
}
