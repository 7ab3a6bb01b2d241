//! Revised primal simplex over implicitly generated columns.
//!
//! Problems are in standard form: minimize `cᵀx` subject to `Ax = b`,
//! `x ≥ 0`, `b ≥ 0`. Columns are produced on demand by a [`ColumnSource`],
//! which keeps large structured problems (one column per ordered pair of
//! atoms) out of memory. The basis inverse is kept dense and refactorized
//! periodically. Pricing is Dantzig's rule, falling back to Bland's rule
//! after a run of degenerate pivots so that cycling cannot occur.

use thiserror::Error;

/// Reduced-cost tolerance used to declare optimality.
pub const OPTIMALITY_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-9;
const DEGENERATE_RUN: usize = 50;
const REFACTOR_EVERY: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex stopped after {0} iterations")]
    IterationLimit(usize),
    #[error("basis matrix became singular")]
    SingularBasis,
    #[error("malformed linear program: {0}")]
    Malformed(String),
}

/// Supplier of the constraint columns of a standard-form problem.
pub trait ColumnSource {
    /// Number of equality rows.
    fn rows(&self) -> usize;
    /// Number of structural columns.
    fn cols(&self) -> usize;
    /// Right-hand side; every entry must be nonnegative.
    fn rhs(&self) -> Vec<f64>;
    /// Objective coefficient of column `j` (minimized).
    fn cost(&self, j: usize) -> f64;
    /// Writes the nonzero entries of column `j` as `(row, value)` pairs.
    fn column(&self, j: usize, out: &mut Vec<(usize, f64)>);
    /// `c_j - yᵀA_j`. Override when the column structure allows a faster path.
    fn reduced_cost(&self, j: usize, y: &[f64], scratch: &mut Vec<(usize, f64)>) -> f64 {
        scratch.clear();
        self.column(j, scratch);
        self.cost(j) - scratch.iter().map(|&(r, v)| y[r] * v).sum::<f64>()
    }
}

/// An optimal basic solution.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub objective: f64,
    /// Nonzero structural variables as `(column, value)`.
    pub primal: Vec<(usize, f64)>,
    /// Simplex multipliers `y = c_Bᵀ B⁻¹`, an optimal solution of the dual
    /// problem `max bᵀy s.t. Aᵀy ≤ c`.
    pub dual: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn value_of(&self, j: usize) -> f64 {
        self.primal
            .iter()
            .find(|&&(k, _)| k == j)
            .map_or(0.0, |&(_, v)| v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Solver<'a, S: ColumnSource> {
    src: &'a S,
    m: usize,
    n: usize,
    b: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    phase: Phase,
    iterations: usize,
    max_iterations: usize,
    scratch: Vec<(usize, f64)>,
}

impl<'a, S: ColumnSource> Solver<'a, S> {
    /// Column `j < n` is structural, `n + r` is the artificial for row `r`.
    fn column(&mut self, j: usize) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        if j < self.n {
            self.src.column(j, &mut out);
        } else {
            out.push((j - self.n, 1.0));
        }
        out
    }

    fn cost(&self, j: usize) -> f64 {
        match self.phase {
            Phase::One => {
                if j >= self.n {
                    1.0
                } else {
                    0.0
                }
            }
            Phase::Two => {
                if j >= self.n {
                    0.0
                } else {
                    self.src.cost(j)
                }
            }
        }
    }

    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for k in 0..m {
            for (r, v) in self.column(self.basis[k]) {
                a[r * m + k] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for col in 0..m {
            let (piv, best) = (col..m)
                .map(|r| (r, a[r * m + col].abs()))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best < PIVOT_TOL {
                return Err(LpError::SingularBasis);
            }
            if piv != col {
                for k in 0..m {
                    a.swap(piv * m + k, col * m + k);
                    inv.swap(piv * m + k, col * m + k);
                }
            }
            let p = a[col * m + col];
            for k in 0..m {
                a[col * m + k] /= p;
                inv[col * m + k] /= p;
            }
            for r in 0..m {
                if r == col {
                    continue;
                }
                let f = a[r * m + col];
                if f != 0.0 {
                    for k in 0..m {
                        a[r * m + k] -= f * a[col * m + k];
                        inv[r * m + k] -= f * inv[col * m + k];
                    }
                }
            }
        }
        self.binv = inv;
        for i in 0..m {
            let v: f64 = (0..m).map(|k| self.binv[i * m + k] * self.b[k]).sum();
            self.xb[i] = if v.abs() < FEASIBILITY_TOL { 0.0 } else { v };
        }
        Ok(())
    }

    fn multipliers(&self) -> Vec<f64> {
        let m = self.m;
        let cb: Vec<f64> = self.basis.iter().map(|&j| self.cost(j)).collect();
        (0..m)
            .map(|k| (0..m).map(|i| cb[i] * self.binv[i * m + k]).sum())
            .collect()
    }

    fn ftran(&mut self, j: usize) -> Vec<f64> {
        let m = self.m;
        let col = self.column(j);
        let mut d = vec![0.0; m];
        for (r, v) in col {
            for i in 0..m {
                d[i] += self.binv[i * m + r] * v;
            }
        }
        d
    }

    fn reduced_cost(&mut self, j: usize, y: &[f64]) -> f64 {
        if j < self.n {
            let rc = self.src.reduced_cost(j, y, &mut self.scratch);
            if self.phase == Phase::One {
                rc - self.src.cost(j)
            } else {
                rc
            }
        } else {
            self.cost(j) - y[j - self.n]
        }
    }

    fn pivot(&mut self, row: usize, entering: usize, d: &[f64]) {
        let m = self.m;
        let theta = self.xb[row] / d[row];
        for i in 0..m {
            if i != row {
                self.xb[i] -= theta * d[i];
                if self.xb[i].abs() < 1e-14 {
                    self.xb[i] = 0.0;
                }
            }
        }
        self.xb[row] = theta;
        let p = d[row];
        for k in 0..m {
            self.binv[row * m + k] /= p;
        }
        for i in 0..m {
            if i == row || d[i] == 0.0 {
                continue;
            }
            let f = d[i];
            for k in 0..m {
                self.binv[i * m + k] -= f * self.binv[row * m + k];
            }
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;
    }

    fn run(&mut self) -> Result<(), LpError> {
        let total = self.n + self.m;
        let mut degenerate = 0usize;
        let mut since_refactor = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(LpError::IterationLimit(self.iterations));
            }
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
            let y = self.multipliers();
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering = None;
            let mut best = -OPTIMALITY_TOL;
            let candidates = if self.phase == Phase::One {
                total
            } else {
                self.n
            };
            for j in 0..candidates {
                if self.is_basic[j] {
                    continue;
                }
                let rc = self.reduced_cost(j, &y);
                if rc < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = rc;
                }
            }
            let Some(q) = entering else {
                return Ok(());
            };
            let d = self.ftran(q);
            let mut leave: Option<usize> = None;
            let mut ratio = f64::INFINITY;
            for i in 0..self.m {
                if d[i] > PIVOT_TOL {
                    let t = self.xb[i].max(0.0) / d[i];
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            if t < ratio - 1e-14 {
                                true
                            } else if t <= ratio + 1e-14 {
                                if bland {
                                    self.basis[i] < self.basis[l]
                                } else {
                                    d[i] > d[l]
                                }
                            } else {
                                false
                            }
                        }
                    };
                    if better {
                        leave = Some(i);
                        ratio = t;
                    }
                }
            }
            let Some(r) = leave else {
                return Err(LpError::Unbounded);
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.xb[r] = self.xb[r].max(0.0);
            self.pivot(r, q, &d);
            self.iterations += 1;
            since_refactor += 1;
        }
    }

    /// Pivots basic artificials at zero level out of the basis where possible.
    fn expel_artificials(&mut self) -> Result<(), LpError> {
        for r in 0..self.m {
            if self.basis[r] < self.n {
                continue;
            }
            let m = self.m;
            let mut replacement = None;
            for j in 0..self.n {
                if self.is_basic[j] {
                    continue;
                }
                self.scratch.clear();
                self.src.column(j, &mut self.scratch);
                let v: f64 = self
                    .scratch
                    .iter()
                    .map(|&(k, a)| self.binv[r * m + k] * a)
                    .sum();
                if v.abs() > 1e-7 {
                    replacement = Some(j);
                    break;
                }
            }
            if let Some(j) = replacement {
                let d = self.ftran(j);
                self.pivot(r, j, &d);
            }
        }
        self.refactor()
    }
}

/// Solves `min cᵀx, Ax = b, x ≥ 0`. With `start` a feasible basis (one
/// column per row) the first phase is skipped; otherwise artificial
/// variables establish feasibility.
pub fn solve<S: ColumnSource>(src: &S, start: Option<Vec<usize>>) -> Result<LpSolution, LpError> {
    let m = src.rows();
    let n = src.cols();
    let b = src.rhs();
    if b.len() != m {
        return Err(LpError::Malformed(format!(
            "rhs has {} entries for {m} rows",
            b.len()
        )));
    }
    if let Some(i) = b.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(LpError::Malformed(format!("rhs entry {i} is {}", b[i])));
    }
    let mut solver = Solver {
        src,
        m,
        n,
        b,
        basis: Vec::new(),
        is_basic: vec![false; n + m],
        binv: Vec::new(),
        xb: vec![0.0; m],
        phase: Phase::Two,
        iterations: 0,
        max_iterations: 50 * (n + m) + 10_000,
        scratch: Vec::new(),
    };
    match start {
        Some(basis) => {
            if basis.len() != m || basis.iter().any(|&j| j >= n) {
                return Err(LpError::Malformed(
                    "starting basis has the wrong shape".into(),
                ));
            }
            for &j in &basis {
                if std::mem::replace(&mut solver.is_basic[j], true) {
                    return Err(LpError::Malformed(format!("column {j} repeated in basis")));
                }
            }
            solver.basis = basis;
            solver.refactor()?;
            if solver.xb.iter().any(|&v| v < -FEASIBILITY_TOL) {
                return Err(LpError::Malformed("starting basis is infeasible".into()));
            }
        }
        None => {
            solver.basis = (n..n + m).collect();
            for j in n..n + m {
                solver.is_basic[j] = true;
            }
            solver.phase = Phase::One;
            solver.refactor()?;
            solver.run()?;
            let infeasibility: f64 = solver
                .basis
                .iter()
                .zip(&solver.xb)
                .filter(|(j, _)| **j >= n)
                .map(|(_, v)| v)
                .sum();
            let scale = solver.b.iter().fold(1.0f64, |a, v| a.max(*v));
            if infeasibility > 1e-7 * scale {
                return Err(LpError::Infeasible);
            }
            solver.expel_artificials()?;
            solver.phase = Phase::Two;
        }
    }
    solver.run()?;
    solver.refactor()?;
    let dual = solver.multipliers();
    let mut primal: Vec<(usize, f64)> = solver
        .basis
        .iter()
        .zip(&solver.xb)
        .filter(|(j, v)| **j < n && **v != 0.0)
        .map(|(j, v)| (*j, *v))
        .collect();
    primal.sort_by_key(|p| p.0);
    let objective = primal.iter().map(|&(j, v)| src.cost(j) * v).sum();
    Ok(LpSolution {
        objective,
        primal,
        dual,
        iterations: solver.iterations,
    })
}

/// Relation of a row in a [`DenseLp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A small explicit LP, `max/min cᵀx` subject to rows `aᵢᵀx (≤|=|≥) bᵢ`
/// and `x ≥ 0`, converted to standard form with slack columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLp {
    pub maximize: bool,
    pub objective: Vec<f64>,
    pub rows: Vec<(Vec<f64>, Relation, f64)>,
}

struct StandardForm {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl ColumnSource for StandardForm {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn rhs(&self) -> Vec<f64> {
        self.b.clone()
    }
    fn cost(&self, j: usize) -> f64 {
        self.c[j]
    }
    fn column(&self, j: usize, out: &mut Vec<(usize, f64)>) {
        for r in 0..self.rows {
            let v = self.a[r * self.cols + j];
            if v != 0.0 {
                out.push((r, v));
            }
        }
    }
}

impl DenseLp {
    /// Returns the optimal value and an optimal `x`.
    pub fn solve(&self) -> Result<(f64, Vec<f64>), LpError> {
        let nv = self.objective.len();
        let slacks = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let cols = nv + slacks;
        let rows = self.rows.len();
        let mut a = vec![0.0; rows * cols];
        let mut b = vec![0.0; rows];
        let mut slack = nv;
        for (r, (coef, rel, rhs)) in self.rows.iter().enumerate() {
            if coef.len() != nv {
                return Err(LpError::Malformed(format!(
                    "row {r} has {} coefficients",
                    coef.len()
                )));
            }
            let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
            for (k, v) in coef.iter().enumerate() {
                a[r * cols + k] = sign * v;
            }
            match rel {
                Relation::Le => {
                    a[r * cols + slack] = sign;
                    slack += 1;
                }
                Relation::Ge => {
                    a[r * cols + slack] = -sign;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            b[r] = sign * rhs;
        }
        let flip = if self.maximize { -1.0 } else { 1.0 };
        let mut c = vec![0.0; cols];
        for (k, v) in self.objective.iter().enumerate() {
            c[k] = flip * v;
        }
        let sf = StandardForm {
            rows,
            cols,
            a,
            b,
            c,
        };
        let sol = solve(&sf, None)?;
        let mut x = vec![0.0; nv];
        for (j, v) in sol.primal {
            if j < nv {
                x[j] = v;
            }
        }
        Ok((flip * sol.objective, x))
    }
}
