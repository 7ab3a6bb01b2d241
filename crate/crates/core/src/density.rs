//! Absolutely continuous signed measures on `[0, 1]`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lipschitz::LipFunction;
use crate::metric::{Point, SpaceKind};

/// Density of a measure on `[0, 1]` with respect to Lebesgue measure.
#[derive(Clone)]
pub enum Density {
    /// `amplitude · sin(2π·frequency·x)`.
    Sinusoid { amplitude: f64, frequency: u32 },
    /// An arbitrary density; `frequency_hint` is the number of oscillations
    /// on `[0, 1]` used to size quadrature panels.
    Generic {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        frequency_hint: Option<f64>,
    },
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Sinusoid {
                amplitude,
                frequency,
            } => f
                .debug_struct("Sinusoid")
                .field("amplitude", amplitude)
                .field("frequency", frequency)
                .finish(),
            Density::Generic { frequency_hint, .. } => f
                .debug_struct("Generic")
                .field("frequency_hint", frequency_hint)
                .finish(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Initial number of panels per oscillation period (at least 64).
    pub panels_per_period: usize,
    /// Maximum number of panel doublings before giving up.
    pub max_doublings: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panels_per_period: 64,
            max_doublings: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DensityMeasure1D {
    density: Density,
    quadrature: QuadratureConfig,
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

fn gauss_legendre(g: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        let s: f64 = GL_NODES
            .iter()
            .zip(GL_WEIGHTS)
            .map(|(t, w)| w * g(mid + 0.5 * h * t))
            .sum();
        total += 0.5 * h * s;
    }
    total
}

impl DensityMeasure1D {
    pub fn sinusoid(amplitude: f64, frequency: u32) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::param("amplitude", "must be finite"));
        }
        if frequency == 0 {
            return Err(Error::param("frequency", "must be positive"));
        }
        Ok(DensityMeasure1D {
            density: Density::Sinusoid {
                amplitude,
                frequency,
            },
            quadrature: QuadratureConfig::default(),
        })
    }

    /// `dμₙ = n·sin(2πnx) dx`.
    pub fn oscillating(n: u32) -> Result<Self> {
        Self::sinusoid(n as f64, n)
    }

    pub fn generic<F>(f: F, frequency_hint: Option<f64>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if let Some(h) = frequency_hint {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::param("frequency_hint", "must be positive"));
            }
        }
        Ok(DensityMeasure1D {
            density: Density::Generic {
                f: Arc::new(f),
                frequency_hint,
            },
            quadrature: QuadratureConfig::default(),
        })
    }

    pub fn with_quadrature(mut self, config: QuadratureConfig) -> Result<Self> {
        if config.panels_per_period < 64 {
            return Err(Error::param("panels_per_period", "must be at least 64"));
        }
        self.quadrature = config;
        Ok(self)
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn density_at(&self, x: f64) -> f64 {
        match &self.density {
            Density::Sinusoid {
                amplitude,
                frequency,
            } => amplitude * (TAU * *frequency as f64 * x).sin(),
            Density::Generic { f, .. } => f(x),
        }
    }

    fn periods(&self) -> Option<f64> {
        match &self.density {
            Density::Sinusoid { frequency, .. } => Some(*frequency as f64),
            Density::Generic { frequency_hint, .. } => *frequency_hint,
        }
    }

    /// `‖μ‖_TV = ∫₀¹ |density|`. Exact for sinusoids (sum over half periods).
    pub fn tv_norm(&self, tol: f64) -> Result<f64> {
        match &self.density {
            Density::Sinusoid {
                amplitude,
                frequency,
            } => {
                let k = *frequency as f64;
                let half_period_mass = amplitude.abs() / (PI * k);
                Ok((0..2 * frequency).map(|_| half_period_mass).sum())
            }
            Density::Generic { .. } => {
                self.integrate(&|x| self.density_at(x).abs(), &[0.0, 1.0], tol)
            }
        }
    }

    /// `μ([0, 1])`.
    pub fn total_mass(&self, tol: f64) -> Result<f64> {
        match &self.density {
            Density::Sinusoid { .. } => Ok(0.0),
            Density::Generic { .. } => self.integrate(&|x| self.density_at(x), &[0.0, 1.0], tol),
        }
    }

    /// Composite Gauss–Legendre over each piece of `cuts`, doubling the panel
    /// count until two successive estimates agree within `tol`.
    fn integrate(&self, g: &dyn Fn(f64) -> f64, cuts: &[f64], tol: f64) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::param("tol", "must be positive"));
        }
        let periods = self.periods().ok_or(Error::UnresolvableOscillation)?;
        let per_unit = (periods.ceil().max(1.0) as usize) * self.quadrature.panels_per_period;
        let estimate = |scale: usize| -> f64 {
            cuts.windows(2)
                .map(|w| {
                    let panels = ((w[1] - w[0]) * (per_unit * scale) as f64).ceil().max(1.0);
                    gauss_legendre(g, w[0], w[1], panels as usize)
                })
                .sum()
        };
        let mut prev = estimate(1);
        for k in 1..=self.quadrature.max_doublings {
            let next = estimate(1 << k);
            if (next - prev).abs() <= tol {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::Evaluation(format!(
            "quadrature did not reach tolerance {tol}"
        )))
    }

    /// `⟨μ, f⟩ = ∫₀¹ f·density`. Sinusoid densities paired with functions that
    /// have an exact piecewise-linear form are integrated in closed form per
    /// segment; everything else goes through adaptive quadrature.
    pub fn pair(&self, f: &LipFunction, tol: f64) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::param("tol", "must be positive"));
        }
        if let Density::Sinusoid {
            amplitude,
            frequency,
        } = &self.density
        {
            if let Some(bps) = line_form(f) {
                return Ok(sinusoid_pl_integral(*amplitude, *frequency, &bps));
            }
        }
        self.pair_by_quadrature(f, tol)
    }

    /// `⟨μ, f⟩` by quadrature only, splitting at the kinks of `f` when known.
    pub fn pair_by_quadrature(&self, f: &LipFunction, tol: f64) -> Result<f64> {
        check_line(f)?;
        let mut cuts: Vec<f64> = line_form(f)
            .map(|b| {
                b.into_iter()
                    .map(|p| p.0)
                    .filter(|x| *x > 0.0 && *x < 1.0)
                    .collect()
            })
            .unwrap_or_default();
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let failure = std::sync::Mutex::new(None);
        let g = |x: f64| match f.evaluate(&Point::real(x.clamp(0.0, 1.0))) {
            Ok(v) => v * self.density_at(x),
            Err(e) => {
                failure.lock().expect("poisoned").get_or_insert(e);
                0.0
            }
        };
        let value = self.integrate(&g, &cuts, tol)?;
        match failure.into_inner().expect("poisoned") {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }
}

fn check_line(f: &LipFunction) -> Result<()> {
    match f.space().kind() {
        SpaceKind::UnitInterval | SpaceKind::Euclidean { dim: 1 } => Ok(()),
        _ => Err(Error::param("f", "must be defined on [0, 1]")),
    }
}

/// Breakpoints of `f` restricted to `[0, 1]`, including both ends.
fn line_form(f: &LipFunction) -> Option<Vec<(f64, f64)>> {
    check_line(f).ok()?;
    let bps = f.piecewise_linear_form()?;
    let at = |x: f64| crate::lipschitz::interpolate(&bps, x);
    let mut out = vec![(0.0, at(0.0))];
    out.extend(bps.iter().copied().filter(|p| p.0 > 0.0 && p.0 < 1.0));
    out.push((1.0, at(1.0)));
    Some(out)
}

/// `∫ a·sin(ωx)·f(x) dx` for piecewise-linear `f`, using the antiderivative
/// `a·[-f(x)cos(ωx)/ω + s·sin(ωx)/ω²]` on each segment of slope `s`.
fn sinusoid_pl_integral(amplitude: f64, frequency: u32, bps: &[(f64, f64)]) -> f64 {
    let w = TAU * frequency as f64;
    let mut total = 0.0;
    for seg in bps.windows(2) {
        let ((x0, y0), (x1, y1)) = (seg[0], seg[1]);
        if x1 <= x0 {
            continue;
        }
        let s = (y1 - y0) / (x1 - x0);
        let anti = |x: f64, y: f64| -y * (w * x).cos() / w + s * (w * x).sin() / (w * w);
        total += anti(x1, y1) - anti(x0, y0);
    }
    amplitude * total
}
