//! Point domains and their distance functions.
//!
//! A [`MetricSpace`] is one of four base kinds (Euclidean `R^n`, the unit
//! interval, the natural numbers with the restricted Euclidean metric, or an
//! explicit finite distance matrix), optionally wrapped in a combinator that
//! rescales, joins (`d ∨ d'`) or augments (`d ∨ |f(x) - f(y)|`) the metric.
//! Infinite domains are never enumerated: every set operation takes an
//! explicit finite [`PointSet`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::RngExt;

use crate::error::{Error, Result};

/// Default tolerance under which two coordinate points are considered equal.
pub const DEFAULT_POINT_TOLERANCE: f64 = 1e-12;

/// A real-valued evaluator on points, shared between threads.
pub type PointFn = Arc<dyn Fn(&Point) -> Result<f64> + Send + Sync>;

/// A point of some [`MetricSpace`].
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    /// Coordinates in `R^n` (also used for the unit interval, with `n = 1`).
    Coords(Vec<f64>),
    /// An element of the natural numbers.
    Natural(u64),
    /// An index into the label table of a matrix space.
    Index(usize),
}

impl Point {
    pub fn real(x: f64) -> Self {
        Point::Coords(vec![x])
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Coords(c) => Some(c),
            _ => None,
        }
    }

    /// The single coordinate of a one-dimensional point.
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Point::Coords(c) if c.len() == 1 => Some(c[0]),
            _ => None,
        }
    }

    /// A total order used for canonical atom ordering.
    pub fn total_cmp(&self, other: &Point) -> Ordering {
        fn rank(p: &Point) -> u8 {
            match p {
                Point::Coords(_) => 0,
                Point::Natural(_) => 1,
                Point::Index(_) => 2,
            }
        }
        match (self, other) {
            (Point::Coords(a), Point::Coords(b)) => {
                for (x, y) in a.iter().zip(b) {
                    match x.total_cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
            (Point::Natural(a), Point::Natural(b)) => a.cmp(b),
            (Point::Index(a), Point::Index(b)) => a.cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Coords(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Point::Coords(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Point::Natural(n) => write!(f, "{n}"),
            Point::Index(i) => write!(f, "#{i}"),
        }
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::real(x)
    }
}

/// A finite list of points. Duplicates are allowed; see [`PointSet::canonicalize`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet(Vec<Point>);

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        PointSet(points)
    }

    pub fn reals(xs: &[f64]) -> Self {
        PointSet(xs.iter().map(|&x| Point::real(x)).collect())
    }

    pub fn naturals(ns: &[u64]) -> Self {
        PointSet(ns.iter().map(|&n| Point::Natural(n)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.0.iter()
    }

    /// Sorts the points and merges those equal under the space's equality
    /// rule. Returns the canonical set and the input positions that were
    /// flagged as duplicates.
    pub fn canonicalize(&self, space: &MetricSpace) -> Result<(PointSet, Vec<usize>)> {
        for p in &self.0 {
            space.check_point(p)?;
        }
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| self.0[a].total_cmp(&self.0[b]).then(a.cmp(&b)));
        let mut kept: Vec<Point> = Vec::new();
        let mut duplicates = Vec::new();
        for idx in order {
            let p = &self.0[idx];
            if kept.iter().rev().any(|q| space.points_equal(p, q)) {
                duplicates.push(idx);
            } else {
                kept.push(p.clone());
            }
        }
        duplicates.sort_unstable();
        Ok((PointSet(kept), duplicates))
    }
}

impl From<Vec<Point>> for PointSet {
    fn from(points: Vec<Point>) -> Self {
        PointSet(points)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The base point domain together with its intrinsic metric.
#[derive(Debug, Clone)]
pub enum SpaceKind {
    Euclidean {
        dim: usize,
    },
    UnitInterval,
    DiscreteNaturals,
    /// A finite space given by labels and a row-major `n × n` distance table.
    Matrix {
        labels: Arc<[String]>,
        distances: Arc<[f64]>,
    },
}

impl PartialEq for SpaceKind {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SpaceKind::Euclidean { dim: a }, SpaceKind::Euclidean { dim: b }) => a == b,
            (SpaceKind::UnitInterval, SpaceKind::UnitInterval) => true,
            (SpaceKind::DiscreteNaturals, SpaceKind::DiscreteNaturals) => true,
            (
                SpaceKind::Matrix {
                    labels: la,
                    distances: da,
                },
                SpaceKind::Matrix {
                    labels: lb,
                    distances: db,
                },
            ) => (Arc::ptr_eq(la, lb) || la == lb) && (Arc::ptr_eq(da, db) || da == db),
            _ => false,
        }
    }
}

impl SpaceKind {
    fn same_domain(&self, other: &SpaceKind) -> bool {
        match (self, other) {
            (SpaceKind::Matrix { labels: a, .. }, SpaceKind::Matrix { labels: b, .. }) => a == b,
            (SpaceKind::Matrix { .. }, _) | (_, SpaceKind::Matrix { .. }) => false,
            _ => self == other,
        }
    }
}

enum Wrapper {
    Scaled(f64, MetricSpace),
    Join(MetricSpace, MetricSpace),
    WithFunction(MetricSpace, PointFn),
}

impl fmt::Debug for Wrapper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wrapper::Scaled(c, inner) => f.debug_tuple("Scaled").field(c).field(inner).finish(),
            Wrapper::Join(a, b) => f.debug_tuple("Join").field(a).field(b).finish(),
            Wrapper::WithFunction(inner, _) => f
                .debug_tuple("WithFunction")
                .field(inner)
                .field(&"<fn>")
                .finish(),
        }
    }
}

impl PartialEq for Wrapper {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Wrapper::Scaled(a, x), Wrapper::Scaled(b, y)) => a == b && x == y,
            (Wrapper::Join(a1, b1), Wrapper::Join(a2, b2)) => a1 == a2 && b1 == b2,
            (Wrapper::WithFunction(x, f), Wrapper::WithFunction(y, g)) => {
                x == y && Arc::ptr_eq(f, g)
            }
            _ => false,
        }
    }
}

/// A point domain with a distance function.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    kind: SpaceKind,
    wrapper: Option<Arc<Wrapper>>,
    point_tol: f64,
}

impl PartialEq for MetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.point_tol == other.point_tol
            && match (&self.wrapper, &other.wrapper) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
                _ => false,
            }
    }
}

/// A defect found by [`validate_metric`].
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonFinite {
        i: usize,
        j: usize,
        value: f64,
    },
    Negative {
        i: usize,
        j: usize,
        value: f64,
    },
    NonzeroDiagonal {
        i: usize,
        value: f64,
    },
    ZeroOffDiagonal {
        i: usize,
        j: usize,
    },
    Asymmetric {
        i: usize,
        j: usize,
        forward: f64,
        backward: f64,
    },
    Triangle {
        i: usize,
        j: usize,
        via: usize,
        direct: f64,
        detour: f64,
    },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MetricViolation::NonFinite { i, j, value } => {
                write!(f, "non-finite distance {value} at ({i},{j})")
            }
            MetricViolation::Negative { i, j, value } => {
                write!(f, "negative distance {value} at ({i},{j})")
            }
            MetricViolation::NonzeroDiagonal { i, value } => {
                write!(f, "nonzero diagonal {value} at ({i},{i})")
            }
            MetricViolation::ZeroOffDiagonal { i, j } => {
                write!(f, "zero distance between distinct points ({i},{j})")
            }
            MetricViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            } => {
                write!(
                    f,
                    "symmetry violation at ({i},{j}): {forward} != {backward}"
                )
            }
            MetricViolation::Triangle {
                i,
                j,
                via,
                direct,
                detour,
            } => {
                write!(
                    f,
                    "triangle violation d({i},{j}) = {direct} > {detour} via {via}"
                )
            }
        }
    }
}

impl MetricSpace {
    fn base(kind: SpaceKind) -> Self {
        MetricSpace {
            kind,
            wrapper: None,
            point_tol: DEFAULT_POINT_TOLERANCE,
        }
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be positive"));
        }
        Ok(Self::base(SpaceKind::Euclidean { dim }))
    }

    /// The real line, `euclidean(1)`.
    pub fn real_line() -> Self {
        Self::base(SpaceKind::Euclidean { dim: 1 })
    }

    pub fn unit_interval() -> Self {
        Self::base(SpaceKind::UnitInterval)
    }

    pub fn discrete_naturals() -> Self {
        Self::base(SpaceKind::DiscreteNaturals)
    }

    /// A finite space from labels and a square distance table. Only the shape
    /// and finiteness are checked here; use [`validate_metric`] for the axioms.
    pub fn matrix(labels: Vec<String>, distances: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySet("matrix space"));
        }
        if distances.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: distances.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &distances {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Ok(Self::base(SpaceKind::Matrix {
            labels: labels.into(),
            distances: flat.into(),
        }))
    }

    /// A matrix space labelled `0..n`.
    pub fn from_distance_matrix(distances: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..distances.len()).map(|i| i.to_string()).collect();
        Self::matrix(labels, distances)
    }

    /// Returns a copy using `tol` for coordinate-point equality.
    pub fn with_point_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::param("tolerance", "must be finite and nonnegative"));
        }
        self.point_tol = tol;
        Ok(self)
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn point_tolerance(&self) -> f64 {
        self.point_tol
    }

    /// Whether the metric is the plain one of its kind (no combinator).
    pub fn is_plain(&self) -> bool {
        self.wrapper.is_none()
    }

    /// Number of points of a matrix space.
    pub fn matrix_size(&self) -> Option<usize> {
        match &self.kind {
            SpaceKind::Matrix { labels, .. } => Some(labels.len()),
            _ => None,
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match &self.kind {
            SpaceKind::Matrix { labels, .. } => Some(labels),
            _ => None,
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (&self.kind, p) {
            (SpaceKind::Euclidean { dim }, Point::Coords(c)) => {
                if c.len() != *dim {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        found: c.len(),
                    });
                }
                if c.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidPoint("non-finite coordinate".into()));
                }
                Ok(())
            }
            (SpaceKind::UnitInterval, Point::Coords(c)) => {
                if c.len() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        found: c.len(),
                    });
                }
                if !(0.0..=1.0).contains(&c[0]) {
                    return Err(Error::InvalidPoint(format!("{} is outside [0, 1]", c[0])));
                }
                Ok(())
            }
            (SpaceKind::DiscreteNaturals, Point::Natural(_)) => Ok(()),
            (SpaceKind::Matrix { labels, .. }, Point::Index(i)) => {
                if *i >= labels.len() {
                    return Err(Error::PointOutOfRange {
                        index: *i,
                        len: labels.len(),
                    });
                }
                Ok(())
            }
            (kind, p) => Err(Error::InvalidPoint(format!(
                "{p:?} is not a point of {kind:?}"
            ))),
        }
    }

    /// Equality used for atom consolidation: exact for integer and index
    /// points, coordinatewise within the point tolerance otherwise.
    pub fn points_equal(&self, a: &Point, b: &Point) -> bool {
        match (a, b) {
            (Point::Coords(x), Point::Coords(y)) => {
                x.len() == y.len()
                    && x.iter()
                        .zip(y)
                        .all(|(u, v)| (u - v).abs() <= self.point_tol)
            }
            _ => a == b,
        }
    }

    fn base_distance(&self, x: &Point, y: &Point) -> f64 {
        match (&self.kind, x, y) {
            (SpaceKind::Matrix { labels, distances }, Point::Index(i), Point::Index(j)) => {
                distances[i * labels.len() + j]
            }
            (_, Point::Natural(a), Point::Natural(b)) => a.abs_diff(*b) as f64,
            (_, Point::Coords(a), Point::Coords(b)) => {
                if a.len() == 1 {
                    (a[0] - b[0]).abs()
                } else {
                    a.iter()
                        .zip(b)
                        .map(|(u, v)| (u - v) * (u - v))
                        .sum::<f64>()
                        .sqrt()
                }
            }
            _ => unreachable!("points validated against the space"),
        }
    }

    fn raw_distance(&self, x: &Point, y: &Point) -> Result<f64> {
        match self.wrapper.as_deref() {
            None => Ok(self.base_distance(x, y)),
            Some(Wrapper::Scaled(c, inner)) => Ok(c * inner.raw_distance(x, y)?),
            Some(Wrapper::Join(a, b)) => Ok(a.raw_distance(x, y)?.max(b.raw_distance(x, y)?)),
            Some(Wrapper::WithFunction(inner, f)) => {
                let d = inner.raw_distance(x, y)?;
                Ok(d.max((f(x)? - f(y)?).abs()))
            }
        }
    }

    /// `d(x, y)`, validating both points.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        self.raw_distance(x, y)
    }

    /// `d(x, A) = min_{a ∈ A} d(x, a)`.
    pub fn set_distance(&self, x: &Point, set: &PointSet) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::EmptySet("point set"));
        }
        let mut best = f64::INFINITY;
        for a in set {
            best = best.min(self.distance(x, a)?);
        }
        Ok(best)
    }

    /// `δ(C, C') = sup_{x ∈ C} d(x, C')`.
    pub fn hausdorff_semidistance(&self, c: &PointSet, c_prime: &PointSet) -> Result<f64> {
        if c.is_empty() || c_prime.is_empty() {
            return Err(Error::EmptySet("point set"));
        }
        let mut worst: f64 = 0.0;
        for x in c {
            worst = worst.max(self.set_distance(x, c_prime)?);
        }
        Ok(worst)
    }

    /// `d_H(C, C') = max(δ(C, C'), δ(C', C))`.
    pub fn hausdorff_distance(&self, c: &PointSet, c_prime: &PointSet) -> Result<f64> {
        Ok(self
            .hausdorff_semidistance(c, c_prime)?
            .max(self.hausdorff_semidistance(c_prime, c)?))
    }

    /// Smallest distance between a point of `a` and a point of `b`.
    pub fn set_separation(&self, a: &PointSet, b: &PointSet) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet("point set"));
        }
        let mut best = f64::INFINITY;
        for x in a {
            for y in b {
                best = best.min(self.distance(x, y)?);
            }
        }
        Ok(best)
    }

    /// The metric `c · d`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::param("factor", "must be positive and finite"));
        }
        Ok(MetricSpace {
            kind: self.kind.clone(),
            wrapper: Some(Arc::new(Wrapper::Scaled(factor, self.clone()))),
            point_tol: self.point_tol,
        })
    }

    /// Samples up to `count` points with `d(x, center) ≤ radius`. For
    /// coordinate spaces the boundary point `center + radius·e₁` (clipped
    /// to the domain) is always among them.
    pub fn sample_ball<R: RngExt + ?Sized>(
        &self,
        center: &Point,
        radius: f64,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Point>> {
        self.check_point(center)?;
        if !(radius >= 0.0) {
            return Err(Error::param("radius", "must be nonnegative"));
        }
        match self.wrapper.as_deref() {
            None => self.sample_base_ball(center, radius, count, rng),
            Some(Wrapper::Scaled(c, inner)) => inner.sample_ball(center, radius / c, count, rng),
            Some(Wrapper::Join(a, _)) => {
                let candidates = a.sample_ball(center, radius, count, rng)?;
                self.keep_within(center, radius, candidates)
            }
            Some(Wrapper::WithFunction(inner, _)) => {
                let candidates = inner.sample_ball(center, radius, count, rng)?;
                self.keep_within(center, radius, candidates)
            }
        }
    }

    fn keep_within(&self, center: &Point, radius: f64, pts: Vec<Point>) -> Result<Vec<Point>> {
        let mut out = Vec::with_capacity(pts.len());
        for p in pts {
            if self.raw_distance(center, &p)? <= radius {
                out.push(p);
            }
        }
        Ok(out)
    }

    fn sample_base_ball<R: RngExt + ?Sized>(
        &self,
        center: &Point,
        radius: f64,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Point>> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return Ok(out);
        }
        match (&self.kind, center) {
            (SpaceKind::UnitInterval, Point::Coords(c)) => {
                let lo = (c[0] - radius).max(0.0);
                let hi = (c[0] + radius).min(1.0);
                out.push(Point::real(if c[0] + radius <= 1.0 { hi } else { lo }));
                while out.len() < count {
                    out.push(Point::real(if hi > lo {
                        rng.random_range(lo..=hi)
                    } else {
                        lo
                    }));
                }
            }
            (SpaceKind::Euclidean { dim }, Point::Coords(c)) => {
                let mut edge = c.clone();
                edge[0] += radius;
                out.push(Point::Coords(edge));
                while out.len() < count {
                    let dir: Vec<f64> = (0..*dim).map(|_| standard_normal(rng)).collect();
                    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm == 0.0 {
                        continue;
                    }
                    let r = radius * rng.random::<f64>().powf(1.0 / *dim as f64);
                    let p = c.iter().zip(&dir).map(|(x, v)| x + r * v / norm).collect();
                    out.push(Point::Coords(p));
                }
            }
            (SpaceKind::DiscreteNaturals, Point::Natural(n)) => {
                let r = radius.floor().min(u64::MAX as f64 / 4.0) as u64;
                let lo = n.saturating_sub(r);
                let hi = n.saturating_add(r);
                out.push(Point::Natural(hi));
                while out.len() < count {
                    out.push(Point::Natural(rng.random_range(lo..=hi)));
                }
            }
            (SpaceKind::Matrix { labels, .. }, _) => {
                for i in 0..labels.len() {
                    let p = Point::Index(i);
                    if self.base_distance(center, &p) <= radius {
                        out.push(p);
                    }
                }
            }
            _ => unreachable!("center validated against the space"),
        }
        Ok(out)
    }
}

fn standard_normal<R: RngExt + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// The pointwise maximum `d ∨ d'` of two metrics on the same point domain.
/// Two plain matrix spaces are joined entrywise into a new matrix space.
pub fn metric_join(a: &MetricSpace, b: &MetricSpace) -> Result<MetricSpace> {
    if !a.kind.same_domain(&b.kind) {
        return Err(Error::DomainMismatch);
    }
    if let (
        None,
        None,
        SpaceKind::Matrix {
            labels,
            distances: da,
        },
        SpaceKind::Matrix { distances: db, .. },
    ) = (&a.wrapper, &b.wrapper, &a.kind, &b.kind)
    {
        let joined: Vec<f64> = da.iter().zip(db.iter()).map(|(x, y)| x.max(*y)).collect();
        return Ok(MetricSpace {
            kind: SpaceKind::Matrix {
                labels: labels.clone(),
                distances: joined.into(),
            },
            wrapper: None,
            point_tol: a.point_tol,
        });
    }
    Ok(MetricSpace {
        kind: a.kind.clone(),
        wrapper: Some(Arc::new(Wrapper::Join(a.clone(), b.clone()))),
        point_tol: a.point_tol,
    })
}

/// The metric `d_f(x, y) = d(x, y) ∨ |f(x) - f(y)|`.
pub fn metric_from_evaluator(base: &MetricSpace, f: PointFn) -> MetricSpace {
    MetricSpace {
        kind: base.kind.clone(),
        wrapper: Some(Arc::new(Wrapper::WithFunction(base.clone(), f))),
        point_tol: base.point_tol,
    }
}

/// Checks symmetry, nonnegativity, the zero diagonal (and only the diagonal)
/// and every triangle inequality of a matrix space. `O(n³)`.
pub fn validate_metric(space: &MetricSpace) -> Result<Vec<MetricViolation>> {
    let n = space
        .matrix_size()
        .ok_or_else(|| Error::param("space", "validation needs a matrix space"))?;
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = space.raw_distance(&Point::Index(i), &Point::Index(j))?;
        }
    }
    let mut out = Vec::new();
    let mut usable = true;
    for i in 0..n {
        for j in 0..n {
            let v = d[i * n + j];
            if !v.is_finite() {
                out.push(MetricViolation::NonFinite { i, j, value: v });
                usable = false;
            } else if v < 0.0 {
                out.push(MetricViolation::Negative { i, j, value: v });
            } else if i == j && v != 0.0 {
                out.push(MetricViolation::NonzeroDiagonal { i, value: v });
            } else if i != j && v == 0.0 && i < j {
                out.push(MetricViolation::ZeroOffDiagonal { i, j });
            }
            if i < j && v != d[j * n + i] {
                out.push(MetricViolation::Asymmetric {
                    i,
                    j,
                    forward: v,
                    backward: d[j * n + i],
                });
            }
        }
    }
    if !usable {
        return Ok(out);
    }
    let scale = d.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    for i in 0..n {
        for j in (i + 1)..n {
            let direct = d[i * n + j];
            for via in 0..n {
                if via == i || via == j {
                    continue;
                }
                let detour = d[i * n + via] + d[via * n + j];
                if direct > detour + tol {
                    out.push(MetricViolation::Triangle {
                        i,
                        j,
                        via,
                        direct,
                        detour,
                    });
                }
            }
        }
    }
    Ok(out)
}
