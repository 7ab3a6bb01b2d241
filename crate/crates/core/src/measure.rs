//! Finitely supported signed measures.

use crate::error::{Error, Result};
use crate::lipschitz::LipFunction;
use crate::map::LipMap;
use crate::metric::{MetricSpace, Point, PointSet};

/// A finite list of weighted atoms `Σ wᵢ δ_{xᵢ}` on a [`MetricSpace`].
///
/// Constructors other than [`DiscreteSignedMeasure::raw`] return the
/// canonical form: atoms sorted by point, no two atoms at equal points and
/// no zero weights. The zero measure has no atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignedMeasure {
    space: MetricSpace,
    atoms: Vec<(Point, f64)>,
}

impl DiscreteSignedMeasure {
    /// Validates the atoms and returns the consolidated measure.
    pub fn new(space: &MetricSpace, atoms: Vec<(Point, f64)>) -> Result<Self> {
        Ok(Self::raw(space, atoms)?.consolidate())
    }

    /// Validates the atoms without consolidating them.
    pub fn raw(space: &MetricSpace, atoms: Vec<(Point, f64)>) -> Result<Self> {
        for (p, w) in &atoms {
            space.check_point(p)?;
            if !w.is_finite() {
                return Err(Error::param("weight", format!("{w} is not finite")));
            }
        }
        Ok(DiscreteSignedMeasure {
            space: space.clone(),
            atoms,
        })
    }

    pub fn zero(space: &MetricSpace) -> Self {
        DiscreteSignedMeasure {
            space: space.clone(),
            atoms: Vec::new(),
        }
    }

    pub fn dirac(space: &MetricSpace, x: Point) -> Result<Self> {
        Self::new(space, vec![(x, 1.0)])
    }

    /// Atoms on the real line (or another 1-D space) from `(x, w)` pairs.
    pub fn on_line(space: &MetricSpace, atoms: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            space,
            atoms.iter().map(|&(x, w)| (Point::real(x), w)).collect(),
        )
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn support(&self) -> PointSet {
        PointSet::new(self.atoms.iter().map(|a| a.0.clone()).collect())
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.1).collect()
    }

    /// Whether every weight is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.1 >= 0.0)
    }

    /// Merges atoms at equal points and drops zero weights. Sums that cancel
    /// to within rounding of their inputs count as zero. Idempotent.
    pub fn consolidate(&self) -> Self {
        let mut sorted = self.atoms.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tol = self.space.point_tolerance();
        // (representative, sum, Σ|w|)
        let mut groups: Vec<(Point, f64, f64)> = Vec::with_capacity(sorted.len());
        for (p, w) in sorted {
            let lead = p.coords().map(|c| c[0]);
            let mut target = None;
            for (k, g) in groups.iter().enumerate().rev() {
                match (lead, g.0.coords()) {
                    (Some(x), Some(c)) if x - c[0] > tol => break,
                    _ => {}
                }
                if self.space.points_equal(&g.0, &p) {
                    target = Some(k);
                    break;
                }
                if lead.is_none() {
                    break;
                }
            }
            match target {
                Some(k) => {
                    groups[k].1 += w;
                    groups[k].2 += w.abs();
                }
                None => groups.push((p, w, w.abs())),
            }
        }
        let atoms = groups
            .into_iter()
            .filter(|(_, w, mass)| w.abs() > 4.0 * f64::EPSILON * mass)
            .map(|(p, w, _)| (p, w))
            .collect();
        DiscreteSignedMeasure {
            space: self.space.clone(),
            atoms,
        }
    }

    /// `(μ⁺, μ⁻)` with `μ = μ⁺ - μ⁻` and disjoint supports.
    pub fn jordan(&self) -> (Self, Self) {
        let c = self.consolidate();
        let pos = c.atoms.iter().filter(|a| a.1 > 0.0).cloned().collect();
        let neg = c
            .atoms
            .iter()
            .filter(|a| a.1 < 0.0)
            .map(|(p, w)| (p.clone(), -w))
            .collect();
        (
            DiscreteSignedMeasure {
                space: c.space.clone(),
                atoms: pos,
            },
            DiscreteSignedMeasure {
                space: c.space,
                atoms: neg,
            },
        )
    }

    /// `‖μ‖_TV = Σ|wᵢ|` after consolidation.
    pub fn tv_norm(&self) -> f64 {
        self.consolidate().atoms.iter().map(|a| a.1.abs()).sum()
    }

    /// `μ(S) = Σ wᵢ`.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// `⟨μ, f⟩ = Σ wᵢ f(xᵢ)`.
    pub fn pair(&self, f: &LipFunction) -> Result<f64> {
        if f.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut acc = 0.0;
        for (p, w) in &self.atoms {
            acc += w * f.evaluate(p)?;
        }
        Ok(acc)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(DiscreteSignedMeasure {
            space: self.space.clone(),
            atoms,
        }
        .consolidate())
    }

    pub fn subtract(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let atoms = self.atoms.iter().map(|(p, w)| (p.clone(), c * w)).collect();
        DiscreteSignedMeasure {
            space: self.space.clone(),
            atoms,
        }
        .consolidate()
    }

    /// `Σ cₖ μₖ` over measures on one space.
    pub fn combination(space: &MetricSpace, terms: &[(f64, &Self)]) -> Result<Self> {
        let mut atoms = Vec::new();
        for (c, m) in terms {
            if m.space != *space {
                return Err(Error::SpaceMismatch);
            }
            atoms.extend(m.atoms.iter().map(|(p, w)| (p.clone(), c * w)));
        }
        Ok(DiscreteSignedMeasure {
            space: space.clone(),
            atoms,
        }
        .consolidate())
    }

    /// `φ#μ`: each atom `(x, w)` moves to `(φ(x), w)`.
    pub fn pushforward(&self, map: &LipMap) -> Result<Self> {
        if map.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (p, w) in &self.atoms {
            atoms.push((map.apply(p)?, *w));
        }
        Ok(DiscreteSignedMeasure {
            space: self.space.clone(),
            atoms,
        }
        .consolidate())
    }

    /// `|μ|(S ∖ K^λ)`: total absolute weight of atoms with `d(x, K) > λ`.
    pub fn mass_outside_neighborhood(&self, k: &PointSet, lambda: f64) -> Result<f64> {
        if k.is_empty() {
            return Err(Error::EmptySet("neighbourhood core"));
        }
        if !(lambda >= 0.0) {
            return Err(Error::param("lambda", "must be nonnegative"));
        }
        let mut out = 0.0;
        for (p, w) in &self.atoms {
            if self.space.set_distance(p, k)? > lambda {
                out += w.abs();
            }
        }
        Ok(out)
    }
}

/// The sawtooth `gₙ` on `[0, 1]`: zero at both ends, peaks `±1/(4n)` at the
/// odd multiples of `1/(4n)` (positive at `(1+4i)/(4n)`), slope `±1`.
pub fn sawtooth_g(n: u32) -> Result<LipFunction> {
    if n < 1 {
        return Err(Error::param("n", "must be at least 1"));
    }
    let nn = n as f64;
    let peak = 1.0 / (4.0 * nn);
    let mut bps = Vec::with_capacity(2 * n as usize + 2);
    bps.push((0.0, 0.0));
    for k in 0..2 * n {
        let x = (1 + 2 * k) as f64 / (4.0 * nn);
        bps.push((x, if k % 2 == 0 { peak } else { -peak }));
    }
    bps.push((1.0, 0.0));
    let f = LipFunction::piecewise_linear_1d(&MetricSpace::unit_interval(), bps)?;
    Ok(f.with_bounds(peak, 1.0))
}
