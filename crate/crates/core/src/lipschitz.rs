//! Bounded Lipschitz functions with tracked norm bounds.
//!
//! Every [`LipFunction`] carries a declared bound on its sup-norm and on its
//! Lipschitz constant. The bounds are conservative and are never recomputed
//! from the evaluator; [`empirical_lipschitz`] can only falsify them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{LipMap, MapKind};
use crate::metric::{metric_from_evaluator, MetricSpace, Point, PointFn, PointSet, SpaceKind};

/// The function vanishes outside the closed `radius`-neighbourhood of `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportHint {
    pub points: PointSet,
    pub radius: f64,
}

impl SupportHint {
    fn union<'a>(hints: impl IntoIterator<Item = Option<&'a SupportHint>>) -> Option<SupportHint> {
        let mut points = Vec::new();
        let mut radius: f64 = 0.0;
        for h in hints {
            let h = h?;
            points.extend(h.points.iter().cloned());
            radius = radius.max(h.radius);
        }
        Some(SupportHint {
            points: PointSet::new(points),
            radius,
        })
    }
}

/// How a function was built.
#[derive(Debug, Clone)]
pub enum FunctionKind {
    Constant(f64),
    Hat {
        lambda: f64,
        centers: PointSet,
    },
    Tent {
        lambda: f64,
        centers: PointSet,
        amplitudes: Vec<f64>,
    },
    McShane {
        samples: Vec<(Point, f64)>,
        lip: f64,
    },
    Sup(Vec<LipFunction>),
    DisjointSum(Vec<LipFunction>),
    Composed {
        inner: Box<LipFunction>,
        map: LipMap,
    },
    /// `Σ cᵢ fᵢ`.
    Linear(Vec<(f64, LipFunction)>),
    /// Linear interpolation between breakpoints, constant beyond the ends.
    PiecewiseLinear1D(Arc<[(f64, f64)]>),
    Custom,
}

/// An evaluable real function on a [`MetricSpace`] with declared bounds
/// `‖f‖_∞ ≤ sup` and `|f|_L ≤ lip`.
#[derive(Clone)]
pub struct LipFunction {
    space: MetricSpace,
    eval: PointFn,
    sup: f64,
    lip: f64,
    support: Option<SupportHint>,
    kind: FunctionKind,
}

impl fmt::Debug for LipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipFunction")
            .field("tag", &self.tag())
            .field("sup", &self.sup)
            .field("lip", &self.lip)
            .field("support", &self.support)
            .finish()
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(
            name,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn is_one_dimensional(space: &MetricSpace) -> bool {
    matches!(
        space.kind(),
        SpaceKind::UnitInterval | SpaceKind::Euclidean { dim: 1 }
    )
}

impl LipFunction {
    /// A function from a closure with caller-declared bounds.
    pub fn custom<F>(
        space: &MetricSpace,
        sup: f64,
        lip: f64,
        support: Option<SupportHint>,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&Point) -> Result<f64> + Send + Sync + 'static,
    {
        if !(sup >= 0.0) || !(lip >= 0.0) {
            return Err(Error::param(
                "bounds",
                "declared bounds must be nonnegative",
            ));
        }
        Ok(LipFunction {
            space: space.clone(),
            eval: Arc::new(f),
            sup,
            lip,
            support,
            kind: FunctionKind::Custom,
        })
    }

    pub fn constant(space: &MetricSpace, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::param("value", "must be finite"));
        }
        Ok(LipFunction {
            space: space.clone(),
            eval: Arc::new(move |_| Ok(value)),
            sup: value.abs(),
            lip: 0.0,
            support: None,
            kind: FunctionKind::Constant(value),
        })
    }

    /// Interpolates `(x, y)` breakpoints with strictly increasing `x` on a
    /// one-dimensional space, extending by constants beyond the ends.
    pub fn piecewise_linear_1d(space: &MetricSpace, breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if !is_one_dimensional(space) {
            return Err(Error::param(
                "space",
                "piecewise-linear functions need a 1-D space",
            ));
        }
        if breakpoints.is_empty() {
            return Err(Error::EmptySet("breakpoints"));
        }
        if breakpoints
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::param("breakpoints", "must be finite"));
        }
        let mut lip: f64 = 0.0;
        for w in breakpoints.windows(2) {
            let dx = w[1].0 - w[0].0;
            if !(dx > 0.0) {
                return Err(Error::param(
                    "breakpoints",
                    "x values must be strictly increasing",
                ));
            }
            lip = lip.max((w[1].1 - w[0].1).abs() / dx);
        }
        let sup = breakpoints.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
        let bps: Arc<[(f64, f64)]> = breakpoints.into();
        let table = bps.clone();
        Ok(LipFunction {
            space: space.clone(),
            eval: Arc::new(move |p| Ok(interpolate(&table, coordinate(p)?))),
            sup,
            lip,
            support: None,
            kind: FunctionKind::PiecewiseLinear1D(bps),
        })
    }

    /// Replaces the declared bounds with sharper ones known to the caller.
    pub(crate) fn with_bounds(mut self, sup: f64, lip: f64) -> Self {
        self.sup = sup;
        self.lip = lip;
        self
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn declared_sup(&self) -> f64 {
        self.sup
    }

    pub fn declared_lip(&self) -> f64 {
        self.lip
    }

    /// `‖f‖_BL ≤ sup + lip`.
    pub fn bl_bound(&self) -> f64 {
        self.sup + self.lip
    }

    /// `‖f‖_FM ≤ max(sup, lip)`.
    pub fn fm_bound(&self) -> f64 {
        self.sup.max(self.lip)
    }

    pub fn support_hint(&self) -> Option<&SupportHint> {
        self.support.as_ref()
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            FunctionKind::Constant(_) => "constant",
            FunctionKind::Hat { .. } => "hat",
            FunctionKind::Tent { .. } => "tent",
            FunctionKind::McShane { .. } => "mcshane",
            FunctionKind::Sup(_) => "sup",
            FunctionKind::DisjointSum(_) => "disjoint_sum",
            FunctionKind::Composed { .. } => "composed",
            FunctionKind::Linear(_) => "linear",
            FunctionKind::PiecewiseLinear1D(_) => "piecewise_linear_1d",
            FunctionKind::Custom => "custom",
        }
    }

    /// `f(x)`, validating the point.
    pub fn evaluate(&self, x: &Point) -> Result<f64> {
        self.space.check_point(x)?;
        let v = (self.eval)(x)?;
        if !v.is_finite() {
            return Err(Error::Evaluation(format!("non-finite value at {x}")));
        }
        Ok(v)
    }

    /// A shareable evaluator that validates its argument.
    pub fn evaluator(&self) -> PointFn {
        let f = self.clone();
        Arc::new(move |x| f.evaluate(x))
    }

    /// `c · f`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        LipFunction::linear_combination(vec![(c, self.clone())])
    }

    pub fn negate(&self) -> Self {
        self.scale(-1.0).expect("negation of a valid function")
    }

    /// `f - g`.
    pub fn sub(&self, g: &LipFunction) -> Result<Self> {
        LipFunction::linear_combination(vec![(1.0, self.clone()), (-1.0, g.clone())])
    }

    /// `Σ cᵢ fᵢ` with bounds `Σ|cᵢ|·sup(fᵢ)` and `Σ|cᵢ|·lip(fᵢ)`.
    pub fn linear_combination(terms: Vec<(f64, LipFunction)>) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptySet("linear combination"))?;
        let space = first.1.space.clone();
        for (c, f) in &terms {
            if f.space != space {
                return Err(Error::SpaceMismatch);
            }
            if !c.is_finite() {
                return Err(Error::param("coefficient", "must be finite"));
            }
        }
        let sup = terms.iter().map(|(c, f)| c.abs() * f.sup).sum();
        let lip = terms.iter().map(|(c, f)| c.abs() * f.lip).sum();
        let support = SupportHint::union(terms.iter().map(|(_, f)| f.support.as_ref()));
        let parts: Vec<(f64, PointFn)> = terms.iter().map(|(c, f)| (*c, f.eval.clone())).collect();
        Ok(LipFunction {
            space,
            eval: Arc::new(move |x| {
                let mut acc = 0.0;
                for (c, f) in &parts {
                    acc += c * f(x)?;
                }
                Ok(acc)
            }),
            sup,
            lip,
            support,
            kind: FunctionKind::Linear(terms),
        })
    }

    fn kinks(&self) -> Option<Vec<f64>> {
        match &self.kind {
            FunctionKind::Constant(_) => Some(Vec::new()),
            FunctionKind::PiecewiseLinear1D(bps) => Some(bps.iter().map(|p| p.0).collect()),
            FunctionKind::Hat { lambda, centers } => {
                let amps = vec![1.0; centers.len()];
                tent_kinks(centers, &amps, *lambda)
            }
            FunctionKind::Tent {
                lambda,
                centers,
                amplitudes,
            } => tent_kinks(centers, amplitudes, *lambda),
            FunctionKind::Linear(terms) => {
                let mut out = Vec::new();
                for (_, f) in terms {
                    out.extend(f.kinks()?);
                }
                Some(out)
            }
            FunctionKind::DisjointSum(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(f.kinks()?);
                }
                Some(out)
            }
            FunctionKind::Composed { inner, map } => match map.kind() {
                MapKind::Identity => inner.kinks(),
                MapKind::Constant(_) => Some(Vec::new()),
                MapKind::Affine { a, .. } if *a == 0.0 => Some(Vec::new()),
                MapKind::Affine { a, b } => {
                    Some(inner.kinks()?.into_iter().map(|k| (k - b) / a).collect())
                }
                MapKind::Custom => None,
            },
            FunctionKind::Sup(_) | FunctionKind::McShane { .. } | FunctionKind::Custom => None,
        }
    }

    /// Breakpoints of an exact piecewise-linear representation on a 1-D
    /// space (interpolate between them, constant beyond the ends), when the
    /// construction admits one.
    pub fn piecewise_linear_form(&self) -> Option<Vec<(f64, f64)>> {
        if !is_one_dimensional(&self.space) {
            return None;
        }
        let mut xs = self.kinks()?;
        if matches!(self.space.kind(), SpaceKind::UnitInterval) {
            xs.retain(|x| (0.0..=1.0).contains(x));
            xs.push(0.0);
            xs.push(1.0);
        } else if xs.is_empty() {
            xs.push(0.0);
        }
        xs.retain(|x| x.is_finite());
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * a.abs().max(1.0));
        xs.into_iter()
            .map(|x| self.evaluate(&Point::real(x)).ok().map(|y| (x, y)))
            .collect()
    }
}

fn coordinate(p: &Point) -> Result<f64> {
    p.as_real()
        .ok_or_else(|| Error::InvalidPoint(format!("{p:?} is not a real point")))
}

pub(crate) fn interpolate(bps: &[(f64, f64)], x: f64) -> f64 {
    let i = bps.partition_point(|p| p.0 <= x);
    if i == 0 {
        return bps[0].1;
    }
    if i == bps.len() {
        return bps[bps.len() - 1].1;
    }
    let (x0, y0) = bps[i - 1];
    let (x1, y1) = bps[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn tent_kinks(centers: &PointSet, amps: &[f64], lambda: f64) -> Option<Vec<f64>> {
    let mut out = Vec::new();
    let mut lines = vec![(0.0, 0.0)];
    for (p, &a) in centers.iter().zip(amps) {
        let y = p.as_real()?;
        out.extend([y - lambda, y, y + lambda]);
        if a > 0.0 {
            lines.push((-a / lambda, a * (1.0 + y / lambda)));
            lines.push((a / lambda, a * (1.0 - y / lambda)));
        }
    }
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (s1, c1) = lines[i];
            let (s2, c2) = lines[j];
            if s1 != s2 {
                out.push((c2 - c1) / (s1 - s2));
            }
        }
    }
    Some(out)
}

fn check_points(space: &MetricSpace, set: &PointSet) -> Result<()> {
    set.iter().try_for_each(|p| space.check_point(p))
}

/// `h_{λ,C}(x) = [1 - d(x, C)/λ]⁺`.
pub fn hat_function(space: &MetricSpace, lambda: f64, centers: &PointSet) -> Result<LipFunction> {
    positive("lambda", lambda)?;
    if centers.is_empty() {
        return Err(Error::EmptySet("hat centers"));
    }
    check_points(space, centers)?;
    let (s, c) = (space.clone(), centers.clone());
    Ok(LipFunction {
        space: space.clone(),
        eval: Arc::new(move |x| Ok((1.0 - s.set_distance(x, &c)? / lambda).max(0.0))),
        sup: 1.0,
        lip: 1.0 / lambda,
        support: Some(SupportHint {
            points: centers.clone(),
            radius: lambda,
        }),
        kind: FunctionKind::Hat {
            lambda,
            centers: centers.clone(),
        },
    })
}

/// `f^λ_{F,a}(x) = max_{y ∈ F} a(y)·[1 - d(x, y)/λ]⁺`.
pub fn tent_family_function(
    space: &MetricSpace,
    centers: &PointSet,
    amplitudes: &[f64],
    lambda: f64,
) -> Result<LipFunction> {
    positive("lambda", lambda)?;
    if centers.is_empty() {
        return Err(Error::EmptySet("tent centers"));
    }
    if centers.len() != amplitudes.len() {
        return Err(Error::DimensionMismatch {
            expected: centers.len(),
            found: amplitudes.len(),
        });
    }
    if let Some(a) = amplitudes.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::param("amplitudes", format!("{a} is outside [0, 1]")));
    }
    check_points(space, centers)?;
    let top = amplitudes.iter().fold(0.0f64, |m, a| m.max(*a));
    let s = space.clone();
    let pts: Vec<(Point, f64)> = centers
        .iter()
        .cloned()
        .zip(amplitudes.iter().copied())
        .collect();
    Ok(LipFunction {
        space: space.clone(),
        eval: Arc::new(move |x| {
            let mut best: f64 = 0.0;
            for (y, a) in &pts {
                best = best.max(a * (1.0 - s.distance(x, y)? / lambda).max(0.0));
            }
            Ok(best)
        }),
        sup: top,
        lip: top / lambda,
        support: Some(SupportHint {
            points: centers.clone(),
            radius: lambda,
        }),
        kind: FunctionKind::Tent {
            lambda,
            centers: centers.clone(),
            amplitudes: amplitudes.to_vec(),
        },
    })
}

fn check_compatible(space: &MetricSpace, samples: &[(Point, f64)], lip: f64) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySet("samples"));
    }
    if !(lip > 0.0 && lip.is_finite()) {
        return Err(Error::param("lip", "must be positive and finite"));
    }
    for (x, y) in samples {
        space.check_point(x)?;
        if !y.is_finite() {
            return Err(Error::param("samples", "values must be finite"));
        }
    }
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            let gap = (samples[i].1 - samples[j].1).abs();
            let limit = lip * space.distance(&samples[i].0, &samples[j].0)?;
            let slack = 1e-12 * samples[i].1.abs().max(samples[j].1.abs()).max(1.0);
            if gap > limit + slack {
                return Err(Error::IncompatibleSamples {
                    i,
                    j,
                    gap,
                    limit,
                    bound: lip,
                });
            }
        }
    }
    Ok(())
}

/// McShane extension `clamp(minᵢ(yᵢ + L·d(x, xᵢ)), min y, max y)`.
pub fn mcshane_extend(
    space: &MetricSpace,
    samples: &[(Point, f64)],
    lip: f64,
) -> Result<LipFunction> {
    check_compatible(space, samples, lip)?;
    let lo = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let hi = samples
        .iter()
        .map(|s| s.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let s = space.clone();
    let data = samples.to_vec();
    Ok(LipFunction {
        space: space.clone(),
        eval: Arc::new(move |x| {
            let mut best = f64::INFINITY;
            for (xi, yi) in &data {
                best = best.min(yi + lip * s.distance(x, xi)?);
            }
            Ok(best.clamp(lo, hi))
        }),
        sup: lo.abs().max(hi.abs()),
        lip,
        support: None,
        kind: FunctionKind::McShane {
            samples: samples.to_vec(),
            lip,
        },
    })
}

/// The McShane extension multiplied by `h_{λ,K}`, so that it vanishes
/// outside `K^λ`.
pub fn extend_with_compact_support(
    space: &MetricSpace,
    samples: &[(Point, f64)],
    lip: f64,
    lambda: f64,
    k: &PointSet,
) -> Result<LipFunction> {
    let ext = mcshane_extend(space, samples, lip)?;
    let cutoff = hat_function(space, lambda, k)?;
    let sup = ext.sup;
    let (e, h) = (ext.eval.clone(), cutoff.eval.clone());
    Ok(LipFunction {
        space: space.clone(),
        eval: Arc::new(move |x| {
            let hv = h(x)?;
            if hv == 0.0 {
                Ok(0.0)
            } else {
                Ok(hv * e(x)?)
            }
        }),
        sup,
        lip: lip + sup / lambda,
        support: Some(SupportHint {
            points: k.clone(),
            radius: lambda,
        }),
        kind: FunctionKind::McShane {
            samples: samples.to_vec(),
            lip,
        },
    })
}

fn common_space(fs: &[LipFunction], what: &'static str) -> Result<MetricSpace> {
    let first = fs.first().ok_or(Error::EmptySet(what))?;
    if fs.iter().any(|f| f.space != first.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(first.space.clone())
}

/// Pointwise maximum of a finite family.
pub fn sup_family(fs: &[LipFunction]) -> Result<LipFunction> {
    let space = common_space(fs, "function family")?;
    let sup = fs.iter().fold(0.0f64, |m, f| m.max(f.sup));
    let lip = fs.iter().fold(0.0f64, |m, f| m.max(f.lip));
    let evals: Vec<PointFn> = fs.iter().map(|f| f.eval.clone()).collect();
    let support = SupportHint::union(fs.iter().map(|f| f.support.as_ref()));
    Ok(LipFunction {
        space,
        eval: Arc::new(move |x| {
            let mut best = f64::NEG_INFINITY;
            for f in &evals {
                best = best.max(f(x)?);
            }
            Ok(best)
        }),
        sup,
        lip,
        support,
        kind: FunctionKind::Sup(fs.to_vec()),
    })
}

/// Sum of functions whose support hints are pairwise separated by more
/// than the sum of their radii. The Lipschitz bound is doubled.
pub fn disjoint_sum(fs: &[LipFunction]) -> Result<LipFunction> {
    let space = common_space(fs, "summands")?;
    let mut hints = Vec::with_capacity(fs.len());
    for (i, f) in fs.iter().enumerate() {
        let h = f.support.as_ref().ok_or(Error::MissingSupportHint(i))?;
        if h.points.is_empty() {
            return Err(Error::MissingSupportHint(i));
        }
        hints.push(h);
    }
    for i in 0..hints.len() {
        for j in (i + 1)..hints.len() {
            let sep = space.set_separation(&hints[i].points, &hints[j].points)?;
            if !(sep > hints[i].radius + hints[j].radius) {
                return Err(Error::OverlappingSupports { i, j });
            }
        }
    }
    let sup = fs.iter().fold(0.0f64, |m, f| m.max(f.sup));
    let lip = 2.0 * fs.iter().fold(0.0f64, |m, f| m.max(f.lip));
    let evals: Vec<PointFn> = fs.iter().map(|f| f.eval.clone()).collect();
    let support = SupportHint::union(hints.into_iter().map(Some));
    Ok(LipFunction {
        space,
        eval: Arc::new(move |x| {
            let mut acc = 0.0;
            for f in &evals {
                acc += f(x)?;
            }
            Ok(acc)
        }),
        sup,
        lip,
        support,
        kind: FunctionKind::DisjointSum(fs.to_vec()),
    })
}

/// `f ∘ φ` with Lipschitz bound `|f|_L · L_φ`.
pub fn compose_with_map(f: &LipFunction, map: &LipMap) -> Result<LipFunction> {
    if map.space() != &f.space {
        return Err(Error::SpaceMismatch);
    }
    if matches!(map.kind(), MapKind::Identity) {
        return Ok(f.clone());
    }
    let (g, phi) = (f.clone(), map.clone());
    let lip = if f.lip == 0.0 { 0.0 } else { f.lip * map.lip() };
    Ok(LipFunction {
        space: f.space.clone(),
        eval: Arc::new(move |x| g.evaluate(&phi.apply(x)?)),
        sup: f.sup,
        lip,
        support: None,
        kind: FunctionKind::Composed {
            inner: Box::new(f.clone()),
            map: map.clone(),
        },
    })
}

/// A deterministic finite slice of the countable tent dictionary.
///
/// Base functions are the tents over every subset of `centers` with at most
/// `max_subset` elements, every assignment of the amplitudes `k/levels`
/// (`k = 1..=levels`) and every `λ`, plus the zero function. The result is
/// all ordered differences of distinct base functions, then zero, then the
/// constant `1`.
pub fn dictionary(
    space: &MetricSpace,
    centers: &PointSet,
    lambdas: &[f64],
    levels: u32,
    max_subset: usize,
) -> Result<Vec<LipFunction>> {
    if centers.is_empty() {
        return Err(Error::EmptySet("dictionary centers"));
    }
    if lambdas.is_empty() {
        return Err(Error::EmptySet("dictionary lambdas"));
    }
    if levels == 0 {
        return Err(Error::param("levels", "must be positive"));
    }
    for &l in lambdas {
        positive("lambda", l)?;
    }
    let (centers, _) = centers.canonicalize(space)?;
    let pts = centers.points();
    let zero = LipFunction::constant(space, 0.0)?;
    let mut base = vec![zero.clone()];
    let max_subset = max_subset.min(pts.len());
    for size in 1..=max_subset {
        for subset in subsets(pts.len(), size) {
            let chosen = PointSet::new(subset.iter().map(|&i| pts[i].clone()).collect());
            let mut digits = vec![1u32; size];
            loop {
                let amps: Vec<f64> = digits.iter().map(|&k| k as f64 / levels as f64).collect();
                for &lambda in lambdas {
                    base.push(tent_family_function(space, &chosen, &amps, lambda)?);
                }
                if !next_tuple(&mut digits, levels) {
                    break;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(base.len() * base.len() + 2);
    for (i, f) in base.iter().enumerate() {
        for (j, g) in base.iter().enumerate() {
            if i == j {
                continue;
            }
            out.push(if j == 0 {
                f.clone()
            } else if i == 0 {
                g.negate()
            } else {
                f.sub(g)?
            });
        }
    }
    out.push(zero);
    out.push(LipFunction::constant(space, 1.0)?);
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn next_tuple(digits: &mut [u32], max: u32) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < max {
            *d += 1;
            return true;
        }
        *d = 1;
    }
    false
}

/// `max |f(x) - f(y)| / d(x, y)` over the given pairs; a lower bound for `|f|_L`.
pub fn empirical_lipschitz(f: &LipFunction, pairs: &[(Point, Point)]) -> Result<f64> {
    let mut best: f64 = 0.0;
    for (k, (x, y)) in pairs.iter().enumerate() {
        let d = f.space.distance(x, y)?;
        if d == 0.0 {
            return Err(Error::CoincidentPair(k));
        }
        best = best.max((f.evaluate(x)? - f.evaluate(y)?).abs() / d);
    }
    Ok(best)
}

/// The metric `d ∨ |f(x) - f(y)|` on the function's space.
pub fn metric_from_function(base: &MetricSpace, f: &LipFunction) -> Result<MetricSpace> {
    if base.kind() != f.space.kind() {
        return Err(Error::SpaceMismatch);
    }
    Ok(metric_from_evaluator(base, f.evaluator()))
}
