//! Lipschitz self-maps `φ: S → S`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Point, SpaceKind};

type MapFn = Arc<dyn Fn(&Point) -> Result<Point> + Send + Sync>;

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    Identity,
    /// `x ↦ a·x + b` on a one-dimensional coordinate space.
    Affine {
        a: f64,
        b: f64,
    },
    Constant(Point),
    Custom,
}

/// A self-map of a space with a declared Lipschitz constant (possibly
/// infinite when unknown).
#[derive(Clone)]
pub struct LipMap {
    space: MetricSpace,
    kind: MapKind,
    lip: f64,
    f: MapFn,
}

impl fmt::Debug for LipMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipMap")
            .field("kind", &self.kind)
            .field("lip", &self.lip)
            .finish()
    }
}

impl PartialEq for LipMap {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.kind == other.kind
            && self.lip == other.lip
            && (self.kind != MapKind::Custom || Arc::ptr_eq(&self.f, &other.f))
    }
}

fn one_dimensional(space: &MetricSpace) -> bool {
    space.is_plain()
        && matches!(
            space.kind(),
            SpaceKind::UnitInterval | SpaceKind::Euclidean { dim: 1 }
        )
}

impl LipMap {
    pub fn identity(space: &MetricSpace) -> Self {
        LipMap {
            space: space.clone(),
            kind: MapKind::Identity,
            lip: 1.0,
            f: Arc::new(|x| Ok(x.clone())),
        }
    }

    /// `x ↦ a·x + b` with Lipschitz constant `|a|`. The space must be the
    /// real line or the unit interval with its standard metric.
    pub fn affine(space: &MetricSpace, a: f64, b: f64) -> Result<Self> {
        if !one_dimensional(space) {
            return Err(Error::param(
                "space",
                "affine maps need a one-dimensional space",
            ));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::param("affine", "coefficients must be finite"));
        }
        Ok(LipMap {
            space: space.clone(),
            kind: MapKind::Affine { a, b },
            lip: a.abs(),
            f: Arc::new(move |x| match x {
                Point::Coords(c) if c.len() == 1 => Ok(Point::real(a * c[0] + b)),
                _ => Err(Error::InvalidPoint(format!("{x:?} is not a real point"))),
            }),
        })
    }

    pub fn constant(space: &MetricSpace, value: Point) -> Result<Self> {
        space.check_point(&value)?;
        let v = value.clone();
        Ok(LipMap {
            space: space.clone(),
            kind: MapKind::Constant(value),
            lip: 0.0,
            f: Arc::new(move |_| Ok(v.clone())),
        })
    }

    /// A map given by a closure. `lip` is a declared bound; pass
    /// `f64::INFINITY` when none is known.
    pub fn custom<F>(space: &MetricSpace, lip: f64, f: F) -> Result<Self>
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
    {
        if !(lip >= 0.0) {
            return Err(Error::param("lip", "must be nonnegative"));
        }
        Ok(LipMap {
            space: space.clone(),
            kind: MapKind::Custom,
            lip,
            f: Arc::new(f),
        })
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn lip(&self) -> f64 {
        self.lip
    }

    /// `φ(x)`, rejecting images outside the space.
    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.space.check_point(x)?;
        let y = (self.f)(x)?;
        self.space
            .check_point(&y)
            .map_err(|e| Error::CodomainViolation(format!("{x} ↦ {y}: {e}")))?;
        Ok(y)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LipMap) -> Result<LipMap> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let kind_pair = (&self.kind, &other.kind);
        match kind_pair {
            (MapKind::Identity, _) => return Ok(other.clone()),
            (_, MapKind::Identity) => return Ok(self.clone()),
            (_, MapKind::Constant(p)) => return LipMap::constant(&self.space, p.clone()),
            (MapKind::Affine { a, b }, MapKind::Affine { a: a2, b: b2 }) => {
                return LipMap::affine(&self.space, a2 * a, a2 * b + b2);
            }
            _ => {}
        }
        let (f, g) = (self.clone(), other.clone());
        LipMap::custom(&self.space, self.lip * other.lip, move |x| {
            g.apply(&f.apply(x)?)
        })
    }

    /// `φⁿ`, with `φ⁰` the identity.
    pub fn power(&self, n: u32) -> Result<LipMap> {
        let mut out = LipMap::identity(&self.space);
        for _ in 0..n {
            out = out.then(self)?;
        }
        Ok(out)
    }
}
