//! Dual bounded-Lipschitz and Fortet–Mourier norms of discrete measures.
//!
//! For `μ = Σ wᵢ δ_{xᵢ}` the dual norm is the value of
//!
//! ```text
//! maximize Σ wᵢ fᵢ  s.t.  -u ≤ fᵢ ≤ u,  fᵢ - fⱼ ≤ v·dᵢⱼ,  u, v ≥ 0,
//!                         u + v ≤ 1 (BL)   or   u ≤ 1, v ≤ 1 (FM).
//! ```
//!
//! Any feasible `f` on the support extends to the whole space with the same
//! sup-norm and Lipschitz constant (clamped McShane extension), so the
//! restriction to the support is exact. The LP is solved through its dual,
//! a flow-like problem with one column per ordered pair of atoms, by the
//! revised simplex in [`crate::simplex`]; the optimal simplex multipliers
//! are the witness values `fᵢ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::DiscreteSignedMeasure;
use crate::metric::Point;
use crate::simplex::{self, ColumnSource};

/// Default bound on the support size accepted by the LP.
pub const DEFAULT_SUPPORT_CAP: usize = 300;

/// Largest support accepted by [`brute_force_norm`].
pub const BRUTE_FORCE_MAX_SUPPORT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ball {
    /// `‖f‖_∞ + |f|_L ≤ 1`.
    Bl,
    /// `max(‖f‖_∞, |f|_L) ≤ 1`.
    Fm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Optimal,
    InfeasibleData,
    SizeExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: f64,
    /// Optimal function values on the (canonical) support.
    pub witness: Vec<(Point, f64)>,
    pub ball: Ball,
    pub status: SolverStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormConfig {
    pub support_cap: usize,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            support_cap: DEFAULT_SUPPORT_CAP,
        }
    }
}

struct FlatLp {
    m: usize,
    sigma: Vec<f64>,
    abs_w: Vec<f64>,
    pairs: Vec<(usize, usize, f64)>,
    ball: Ball,
}

// Column layout: α (m), β (m), γ (pairs), then t for BL or t_u, t_v for FM,
// then the slacks s₁, s₂. Rows 0..m are the scaled flow balances, row m
// bounds Σ(α + β), row m + 1 bounds Σ γ·d.
impl FlatLp {
    fn gamma0(&self) -> usize {
        2 * self.m
    }
    fn t0(&self) -> usize {
        2 * self.m + self.pairs.len()
    }
    fn slack0(&self) -> usize {
        self.t0() + if self.ball == Ball::Bl { 1 } else { 2 }
    }
}

impl ColumnSource for FlatLp {
    fn rows(&self) -> usize {
        self.m + 2
    }

    fn cols(&self) -> usize {
        self.slack0() + 2
    }

    fn rhs(&self) -> Vec<f64> {
        let mut b = self.abs_w.clone();
        b.extend([0.0, 0.0]);
        b
    }

    fn cost(&self, j: usize) -> f64 {
        if j >= self.t0() && j < self.slack0() {
            1.0
        } else {
            0.0
        }
    }

    fn column(&self, j: usize, out: &mut Vec<(usize, f64)>) {
        let m = self.m;
        if j < m {
            out.extend([(j, self.sigma[j]), (m, 1.0)]);
        } else if j < 2 * m {
            let i = j - m;
            out.extend([(i, -self.sigma[i]), (m, 1.0)]);
        } else if j < self.t0() {
            let (a, b, d) = self.pairs[j - self.gamma0()];
            out.extend([(a, self.sigma[a]), (b, -self.sigma[b]), (m + 1, d)]);
        } else if j < self.slack0() {
            match (self.ball, j - self.t0()) {
                (Ball::Bl, _) => out.extend([(m, -1.0), (m + 1, -1.0)]),
                (Ball::Fm, 0) => out.push((m, -1.0)),
                (Ball::Fm, _) => out.push((m + 1, -1.0)),
            }
        } else {
            out.push((m + j - self.slack0(), 1.0));
        }
    }

    fn reduced_cost(&self, j: usize, y: &[f64], scratch: &mut Vec<(usize, f64)>) -> f64 {
        let m = self.m;
        if j >= self.gamma0() && j < self.t0() {
            let (a, b, d) = self.pairs[j - self.gamma0()];
            return -(self.sigma[a] * y[a] - self.sigma[b] * y[b] + d * y[m + 1]);
        }
        scratch.clear();
        self.column(j, scratch);
        self.cost(j) - scratch.iter().map(|&(r, v)| y[r] * v).sum::<f64>()
    }
}

fn distance_table(mu: &DiscreteSignedMeasure) -> Result<Vec<f64>> {
    let space = mu.space();
    let atoms = mu.atoms();
    let m = atoms.len();
    let mut d = vec![0.0; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let v = space.distance(&atoms[i].0, &atoms[j].0)?;
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::DegenerateDistance { i, j });
            }
            d[i * m + j] = v;
            d[j * m + i] = v;
        }
    }
    Ok(d)
}

/// `(max|fᵢ|, max_{i≠j} (fᵢ - fⱼ)/dᵢⱼ)` of a witness.
fn witness_constants(f: &[f64], d: &[f64], skip_far: bool) -> (f64, f64) {
    let m = f.len();
    let u = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut v: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let dij = d[i * m + j];
            if i != j && !(skip_far && dij >= 2.0) {
                v = v.max((f[i] - f[j]) / dij);
            }
        }
    }
    (u, v)
}

/// `‖μ‖*` for the chosen ball, with an optimal witness.
pub fn dual_norm(
    mu: &DiscreteSignedMeasure,
    ball: Ball,
    config: &NormConfig,
) -> Result<NormResult> {
    let mu = mu.consolidate();
    let m = mu.len();
    if m == 0 {
        return Ok(NormResult {
            value: 0.0,
            witness: Vec::new(),
            ball,
            status: SolverStatus::Optimal,
        });
    }
    if m > config.support_cap {
        return Err(Error::SupportTooLarge {
            size: m,
            cap: config.support_cap,
        });
    }
    let d = distance_table(&mu)?;
    let w = mu.weights();
    let mut pairs = Vec::with_capacity(m * (m - 1));
    for i in 0..m {
        for j in 0..m {
            let dij = d[i * m + j];
            if i != j && !(ball == Ball::Fm && dij >= 2.0) {
                pairs.push((i, j, dij));
            }
        }
    }
    let lp = FlatLp {
        m,
        sigma: w.iter().map(|x| x.signum()).collect(),
        abs_w: w.iter().map(|x| x.abs()).collect(),
        pairs,
        ball,
    };
    let mut start: Vec<usize> = (0..m)
        .map(|i| if lp.sigma[i] > 0.0 { i } else { m + i })
        .collect();
    start.push(lp.t0());
    start.push(lp.slack0() + 1);
    let sol = simplex::solve(&lp, Some(start))?;
    let mut f: Vec<f64> = (0..m).map(|i| lp.sigma[i] * sol.dual[i]).collect();
    let (u, v) = witness_constants(&f, &d, ball == Ball::Fm);
    let excess = match ball {
        Ball::Bl => u + v,
        Ball::Fm => u.max(v),
    };
    if excess > 1.0 {
        f.iter_mut().for_each(|x| *x /= excess);
    }
    let value = w.iter().zip(&f).map(|(a, b)| a * b).sum::<f64>().max(0.0);
    let witness = mu
        .atoms()
        .iter()
        .zip(f)
        .map(|((p, _), fi)| (p.clone(), fi))
        .collect();
    Ok(NormResult {
        value,
        witness,
        ball,
        status: SolverStatus::Optimal,
    })
}

/// `‖μ‖*_BL` with the default support cap.
pub fn bl_dual_norm(mu: &DiscreteSignedMeasure) -> Result<NormResult> {
    dual_norm(mu, Ball::Bl, &NormConfig::default())
}

/// `‖μ‖*_FM` with the default support cap.
pub fn fm_dual_norm(mu: &DiscreteSignedMeasure) -> Result<NormResult> {
    dual_norm(mu, Ball::Fm, &NormConfig::default())
}

/// `‖μ - ν‖*` for the chosen ball.
pub fn distance(
    mu: &DiscreteSignedMeasure,
    nu: &DiscreteSignedMeasure,
    ball: Ball,
    config: &NormConfig,
) -> Result<f64> {
    Ok(dual_norm(&mu.subtract(nu)?, ball, config)?.value)
}

pub fn bl_distance(mu: &DiscreteSignedMeasure, nu: &DiscreteSignedMeasure) -> Result<f64> {
    distance(mu, nu, Ball::Bl, &NormConfig::default())
}

pub fn fm_distance(mu: &DiscreteSignedMeasure, nu: &DiscreteSignedMeasure) -> Result<f64> {
    distance(mu, nu, Ball::Fm, &NormConfig::default())
}

/// `h(d) = 2d/(2+d)`, the BL dual norm of `δ_x - δ_y` at distance `d`.
pub fn two_point_bl(d: f64) -> f64 {
    2.0 * d / (2.0 + d)
}

/// Whether `f` lies in the ball on the support with distance table `d`
/// (row-major, `m × m`), up to `tol`.
pub fn witness_is_feasible(f: &[f64], d: &[f64], ball: Ball, tol: f64) -> bool {
    let (u, v) = witness_constants(f, d, false);
    match ball {
        Ball::Bl => u + v <= 1.0 + tol,
        Ball::Fm => {
            let m = f.len();
            u <= 1.0 + tol
                && (0..m)
                    .all(|i| (0..m).all(|j| i == j || (f[i] - f[j]).abs() <= d[i * m + j] + tol))
        }
    }
}

/// Pairwise distance table of a measure's canonical support.
pub fn support_distances(mu: &DiscreteSignedMeasure) -> Result<Vec<f64>> {
    distance_table(&mu.consolidate())
}

/// Maximum of `Σ wᵢ fᵢ` over the grid `fᵢ ∈ {-1 + 2k/R : k = 0..=R}`
/// restricted to the ball, for supports of at most four atoms.
///
/// The grid maximum is found exactly by depth-first branch and bound: each
/// unassigned value is bounded by the end of its feasible interval given the
/// assigned values (an interval, because feasibility is convex), and the
/// resulting bound is concave in the value being branched on, so each level
/// scans outward from the bound's maximizer until the bound drops below the
/// incumbent.
pub fn brute_force_norm(
    mu: &DiscreteSignedMeasure,
    ball: Ball,
    grid_resolution: u32,
) -> Result<f64> {
    let mu = mu.consolidate();
    let m = mu.len();
    if m > BRUTE_FORCE_MAX_SUPPORT {
        return Err(Error::SupportTooLarge {
            size: m,
            cap: BRUTE_FORCE_MAX_SUPPORT,
        });
    }
    if grid_resolution == 0 {
        return Err(Error::param("grid_resolution", "must be positive"));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let d = distance_table(&mu)?;
    let w = mu.weights();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| w[b].abs().total_cmp(&w[a].abs()).then(a.cmp(&b)));
    let search = GridSearch {
        w: order.iter().map(|&i| w[i]).collect(),
        d: order
            .iter()
            .flat_map(|&i| order.iter().map(|&j| d[i * m + j]).collect::<Vec<_>>())
            .collect(),
        m,
        ball,
        r: grid_resolution,
    };
    let mut best = f64::NEG_INFINITY;
    let mut vals = Vec::with_capacity(m);
    search.descend(&mut vals, 0.0, &mut best);
    Ok(best)
}

const GRID_TOL: f64 = 1e-12;

struct GridSearch {
    w: Vec<f64>,
    d: Vec<f64>,
    m: usize,
    ball: Ball,
    r: u32,
}

impl GridSearch {
    fn grid(&self, k: i64) -> f64 {
        -1.0 + 2.0 * k as f64 / self.r as f64
    }

    fn dist(&self, a: usize, b: usize) -> f64 {
        self.d[a * self.m + b]
    }

    fn constants(&self, vals: &[f64]) -> (f64, f64) {
        let u = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut v: f64 = 0.0;
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                v = v.max((vals[i] - vals[j]).abs() / self.dist(i, j));
            }
        }
        (u, v)
    }

    /// Feasible interval of variable `r` given the assigned prefix.
    fn interval(&self, vals: &[f64], r: usize) -> Option<(f64, f64)> {
        match self.ball {
            Ball::Fm => {
                let (mut lo, mut hi) = (-1.0f64, 1.0f64);
                for (a, &fa) in vals.iter().enumerate() {
                    let dar = self.dist(a, r);
                    lo = lo.max(fa - dar);
                    hi = hi.min(fa + dar);
                }
                (lo <= hi + GRID_TOL).then_some((lo, hi.max(lo)))
            }
            Ball::Bl => {
                // max(u, |y|) + max(v, |y - fₐ|/dₐᵣ) ≤ 1 is the conjunction of
                // every pairing of one term from each max, each linear in y.
                let (u, v) = self.constants(vals);
                let first = [(0.0, u), (1.0, 0.0), (-1.0, 0.0)];
                let mut second = vec![(0.0, v)];
                for (a, &fa) in vals.iter().enumerate() {
                    let dar = self.dist(a, r);
                    second.push((1.0 / dar, -fa / dar));
                    second.push((-1.0 / dar, fa / dar));
                }
                let (mut lo, mut hi) = (-1.0f64, 1.0f64);
                for &(s1, c1) in &first {
                    for &(s2, c2) in &second {
                        let (slope, offset) = (s1 + s2, c1 + c2);
                        if slope > 0.0 {
                            hi = hi.min((1.0 - offset) / slope);
                        } else if slope < 0.0 {
                            lo = lo.max((1.0 - offset) / slope);
                        } else if offset > 1.0 + GRID_TOL {
                            return None;
                        }
                    }
                }
                (lo <= hi + GRID_TOL).then_some((lo, hi.max(lo)))
            }
        }
    }

    fn feasible(&self, vals: &[f64]) -> bool {
        let (u, v) = self.constants(vals);
        match self.ball {
            Ball::Bl => u + v <= 1.0 + GRID_TOL,
            Ball::Fm => {
                u <= 1.0 + GRID_TOL
                    && (0..vals.len()).all(|i| {
                        (0..i).all(|j| (vals[i] - vals[j]).abs() <= self.dist(i, j) + GRID_TOL)
                    })
            }
        }
    }

    /// Upper bound on the objective over completions of `vals`.
    fn bound(&self, vals: &[f64], partial: f64) -> f64 {
        let mut total = partial;
        for r in vals.len()..self.m {
            match self.interval(vals, r) {
                Some((lo, hi)) => {
                    total += if self.w[r] > 0.0 {
                        self.w[r] * hi
                    } else {
                        self.w[r] * lo
                    }
                }
                None => return f64::NEG_INFINITY,
            }
        }
        total
    }

    fn descend(&self, vals: &mut Vec<f64>, partial: f64, best: &mut f64) {
        let t = vals.len();
        let Some((lo, hi)) = self.interval(vals, t) else {
            return;
        };
        let r = self.r as f64;
        let k_lo = ((lo + 1.0) * r / 2.0 - 1e-9).ceil().max(0.0) as i64;
        let k_hi = ((hi + 1.0) * r / 2.0 + 1e-9).floor().min(r) as i64;
        if k_lo > k_hi {
            return;
        }
        let wt = self.w[t];
        if t + 1 == self.m {
            let ks: [i64; 2] = if wt > 0.0 {
                [k_hi, k_hi - 1]
            } else {
                [k_lo, k_lo + 1]
            };
            for k in ks {
                if k < k_lo || k > k_hi {
                    continue;
                }
                vals.push(self.grid(k));
                if self.feasible(vals) {
                    *best = best.max(partial + wt * self.grid(k));
                    vals.pop();
                    return;
                }
                vals.pop();
            }
            return;
        }
        let score = |k: i64, vals: &mut Vec<f64>| {
            let x = self.grid(k);
            vals.push(x);
            let b = if self.feasible(vals) {
                self.bound(vals, partial + wt * x)
            } else {
                f64::NEG_INFINITY
            };
            vals.pop();
            b
        };
        // Locate the maximizer of the concave bound over the grid indices.
        let (mut a, mut b) = (k_lo, k_hi);
        while b - a > 2 {
            let p = a + (b - a) / 3;
            let q = b - (b - a) / 3;
            if score(p, vals) < score(q, vals) {
                a = p + 1;
            } else {
                b = q;
            }
        }
        let peak = (a..=b)
            .max_by(|&x, &y| score(x, vals).total_cmp(&score(y, vals)).then(y.cmp(&x)))
            .unwrap_or(a);
        let visit = |k: i64, vals: &mut Vec<f64>, best: &mut f64| -> bool {
            let bk = score(k, vals);
            if bk <= *best {
                return false;
            }
            let x = self.grid(k);
            vals.push(x);
            self.descend(vals, partial + wt * x, best);
            vals.pop();
            true
        };
        // Visit the side toward which the weight pulls first.
        let (first, second): (Box<dyn Iterator<Item = i64>>, Box<dyn Iterator<Item = i64>>) =
            if wt > 0.0 {
                (Box::new(peak..=k_hi), Box::new((k_lo..peak).rev()))
            } else {
                (Box::new((k_lo..=peak).rev()), Box::new(peak + 1..=k_hi))
            };
        for k in first {
            if !visit(k, vals, best) {
                break;
            }
        }
        for k in second {
            if !visit(k, vals, best) {
                break;
            }
        }
    }
}
