//! Finite-scale experiments on sequences of measures: pairing convergence
//! against a dictionary, escaping mass, separated clusters and sparse
//! subsequences, plus oscillating densities and drifting Dirac pairs.
//!
//! Every experiment returns an [`ExperimentReport`] whose JSON form is
//! deterministic for fixed parameters and seed.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::density::DensityMeasure1D;
use crate::error::{Error, Result};
use crate::flat_norm::{bl_distance, bl_dual_norm, dual_norm, Ball, NormConfig};
use crate::io::json_number;
use crate::lipschitz::{dictionary, hat_function, tent_family_function, LipFunction};
use crate::measure::{sawtooth_g, DiscreteSignedMeasure};
use crate::metric::{MetricSpace, Point, PointSet};

/// Absolute tolerance used for exact density pairings.
const PAIRING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Real(Vec<f64>),
    Int(Vec<i64>),
    Text(Vec<String>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Real(v) => v.len(),
            Column::Int(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Column::Real(v) => Value::Array(v.iter().map(|&x| json_number(x)).collect()),
            Column::Int(v) => json!(v),
            Column::Text(v) => json!(v),
        }
    }

    fn cell(&self, row: usize) -> String {
        match self {
            Column::Real(v) => match json_number(v[row]) {
                Value::Null => String::new(),
                n => n.to_string(),
            },
            Column::Int(v) => v[row].to_string(),
            Column::Text(v) => csv_escape(&v[row]),
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Named equal-length columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<(String, Column)>,
}

impl Table {
    pub fn with(mut self, name: &str, column: Column) -> Self {
        self.columns.push((name.to_string(), column));
        self
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.0 == name).map(|c| &c.1)
    }

    /// The named real column.
    pub fn reals(&self, name: &str) -> Option<&[f64]> {
        match self.column(name)? {
            Column::Real(v) => Some(v),
            _ => None,
        }
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.1.len())
    }
}

/// The outcome of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub params: Vec<(String, Value)>,
    pub tables: Vec<(String, Table)>,
    pub summary: Vec<(String, f64)>,
    pub seed: Option<u64>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        ExperimentReport {
            name: name.into(),
            params: Vec::new(),
            tables: Vec::new(),
            summary: Vec::new(),
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: Value) -> Self {
        self.params.push((key.into(), value));
        self
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.0 == name).map(|t| &t.1)
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|s| s.0 == key).map(|s| s.1)
    }

    /// `{"name", "params", "seed", "tables": {name: {column: [...]}}, "summary"}`
    /// with numbers at 12 significant digits and non-finite values as `null`.
    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.clone());
        }
        let mut tables = Map::new();
        for (name, t) in &self.tables {
            let mut cols = Map::new();
            for (c, col) in &t.columns {
                cols.insert(c.clone(), col.json());
            }
            tables.insert(name.clone(), Value::Object(cols));
        }
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), json_number(*v));
        }
        json!({
            "name": self.name,
            "params": params,
            "seed": self.seed,
            "tables": tables,
            "summary": summary,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
    }

    /// One CSV block per table, each preceded by a `# name` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (name, t) in &self.tables {
            out.push_str(&format!("# {name}\n"));
            let header: Vec<String> = t.columns.iter().map(|c| csv_escape(&c.0)).collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for r in 0..t.rows() {
                let row: Vec<String> = t.columns.iter().map(|c| c.1.cell(r)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        out
    }
}

/// One element of a [`MeasureSequence`].
#[derive(Debug, Clone)]
pub enum SequenceItem {
    Discrete(DiscreteSignedMeasure),
    Density(DensityMeasure1D),
}

impl SequenceItem {
    pub fn pair(&self, f: &LipFunction) -> Result<f64> {
        match self {
            SequenceItem::Discrete(m) => m.pair(f),
            SequenceItem::Density(m) => m.pair(f, PAIRING_TOL),
        }
    }

    pub fn tv_norm(&self) -> Result<f64> {
        match self {
            SequenceItem::Discrete(m) => Ok(m.tv_norm()),
            SequenceItem::Density(m) => m.tv_norm(PAIRING_TOL),
        }
    }
}

type Generator = Arc<dyn Fn(u32) -> Result<SequenceItem> + Send + Sync>;

/// A sequence `n ↦ μₙ` for `n ≥ start`, on one space, with an optional
/// declared bound on `‖μₙ‖_TV`.
#[derive(Clone)]
pub struct MeasureSequence {
    space: MetricSpace,
    generator: Generator,
    tv_bound: Option<f64>,
    start: u32,
}

impl std::fmt::Debug for MeasureSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeasureSequence")
            .field("tv_bound", &self.tv_bound)
            .field("start", &self.start)
            .finish()
    }
}

impl MeasureSequence {
    /// A sequence of discrete measures starting at index `start`.
    pub fn discrete<F>(space: &MetricSpace, tv_bound: Option<f64>, start: u32, f: F) -> Self
    where
        F: Fn(u32) -> Result<DiscreteSignedMeasure> + Send + Sync + 'static,
    {
        MeasureSequence {
            space: space.clone(),
            generator: Arc::new(move |n| f(n).map(SequenceItem::Discrete)),
            tv_bound,
            start,
        }
    }

    /// A sequence of densities on `[0, 1]` starting at index `start`.
    pub fn density<F>(tv_bound: Option<f64>, start: u32, f: F) -> Self
    where
        F: Fn(u32) -> Result<DensityMeasure1D> + Send + Sync + 'static,
    {
        MeasureSequence {
            space: MetricSpace::unit_interval(),
            generator: Arc::new(move |n| f(n).map(SequenceItem::Density)),
            tv_bound,
            start,
        }
    }

    /// `δₙ - δ_{n+1/n}` on the real line, `n ≥ 1`.
    pub fn dirac_drift() -> Self {
        let r = MetricSpace::real_line();
        let s = r.clone();
        MeasureSequence::discrete(&r, Some(2.0), 1, move |n| {
            let n = n as f64;
            DiscreteSignedMeasure::on_line(&s, &[(n, 1.0), (n + 1.0 / n, -1.0)])
        })
    }

    /// `n·sin(2πnx)dx` on `[0, 1]`, `n ≥ 1`; unbounded in total variation.
    pub fn oscillating() -> Self {
        MeasureSequence::density(None, 1, DensityMeasure1D::oscillating)
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn tv_bound(&self) -> Option<f64> {
        self.tv_bound
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    /// `μₙ`, checked against the space and the declared TV bound.
    pub fn get(&self, n: u32) -> Result<SequenceItem> {
        if n < self.start {
            return Err(Error::param(
                "n",
                format!("sequence starts at {}", self.start),
            ));
        }
        let item = (self.generator)(n)?;
        if let SequenceItem::Discrete(m) = &item {
            if m.space() != &self.space {
                return Err(Error::SpaceMismatch);
            }
        }
        if let Some(b) = self.tv_bound {
            let tv = item.tv_norm()?;
            if tv > b + 1e-9 {
                return Err(Error::InvariantViolation(format!(
                    "‖μ_{n}‖_TV = {tv} exceeds the declared bound {b}"
                )));
            }
        }
        Ok(item)
    }
}

fn window(seq: &MeasureSequence, n_max: u32) -> Result<(u32, u32)> {
    if n_max < seq.start {
        return Err(Error::param(
            "n_max",
            format!("must be at least {}", seq.start),
        ));
    }
    Ok(((n_max / 2).max(seq.start), n_max))
}

/// Tail oscillation `max_{n,m ∈ [n_max/2, n_max]} |⟨μₙ,f⟩ - ⟨μ_m,f⟩|` for
/// each dictionary function, and for discrete sequences the flat tail
/// `max ‖μₙ - μ_m‖*_BL` over the same window.
pub fn dictionary_convergence_scan(
    seq: &MeasureSequence,
    dict: &[LipFunction],
    n_max: u32,
) -> Result<ExperimentReport> {
    if dict.is_empty() {
        return Err(Error::EmptySet("dictionary"));
    }
    let (lo, hi) = window(seq, n_max)?;
    let items: Vec<SequenceItem> = (lo..=hi)
        .into_par_iter()
        .map(|n| seq.get(n))
        .collect::<Result<_>>()?;
    let pairings: Vec<Vec<f64>> = dict
        .par_iter()
        .map(|f| items.iter().map(|m| m.pair(f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let osc: Vec<f64> = pairings
        .iter()
        .map(|p| {
            let max = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = p.iter().copied().fold(f64::INFINITY, f64::min);
            max - min
        })
        .collect();
    let discrete: Option<Vec<&DiscreteSignedMeasure>> = items
        .iter()
        .map(|m| match m {
            SequenceItem::Discrete(d) => Some(d),
            SequenceItem::Density(_) => None,
        })
        .collect();
    let flat_tail = match &discrete {
        Some(ms) => {
            let pairs: Vec<(usize, usize)> = (0..ms.len())
                .flat_map(|i| ((i + 1)..ms.len()).map(move |j| (i, j)))
                .collect();
            let ds = pairs
                .par_iter()
                .map(|&(i, j)| bl_distance(ms[i], ms[j]))
                .collect::<Result<Vec<_>>>()?;
            ds.into_iter().fold(0.0f64, f64::max)
        }
        None => f64::NAN,
    };
    let mut report = ExperimentReport::new("dictionary_convergence_scan")
        .param("n_max", json!(n_max))
        .param("window", json!([lo, hi]))
        .param("dictionary_size", json!(dict.len()));
    report.tables.push((
        "oscillation".into(),
        Table::default()
            .with("function", Column::Int((0..dict.len() as i64).collect()))
            .with(
                "kind",
                Column::Text(dict.iter().map(|f| f.tag().to_string()).collect()),
            )
            .with("oscillation", Column::Real(osc.clone())),
    ));
    report.summary.push((
        "max_oscillation".into(),
        osc.iter().copied().fold(0.0, f64::max),
    ));
    report.summary.push(("flat_tail".into(), flat_tail));
    Ok(report)
}

/// `R ↦ sup_{n ≤ n_max} |μₙ|(S ∖ B(center, R))` for a discrete sequence.
pub fn escaping_mass_profile(
    seq: &MeasureSequence,
    center: &Point,
    radii: &[f64],
    n_max: u32,
) -> Result<ExperimentReport> {
    if radii.is_empty() {
        return Err(Error::EmptySet("radii"));
    }
    if radii.iter().any(|&r| !(r > 0.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param(
            "radii",
            "must be positive and strictly increasing",
        ));
    }
    let _ = window(seq, n_max)?;
    let core = PointSet::new(vec![center.clone()]);
    let measures = (seq.start..=n_max)
        .into_par_iter()
        .map(|n| match seq.get(n)? {
            SequenceItem::Discrete(m) => Ok(m),
            SequenceItem::Density(_) => {
                Err(Error::param("seq", "escaping mass needs discrete measures"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut profile = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut worst: f64 = 0.0;
        for m in &measures {
            worst = worst.max(m.mass_outside_neighborhood(&core, r)?);
        }
        profile.push(worst);
    }
    let mut report = ExperimentReport::new("escaping_mass_profile")
        .param("center", json!(center.to_string()))
        .param("n_max", json!(n_max));
    report.tables.push((
        "profile".into(),
        Table::default()
            .with("radius", Column::Real(radii.to_vec()))
            .with("escaping_mass", Column::Real(profile)),
    ));
    Ok(report)
}

/// A support cluster of one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterWitness {
    pub index: usize,
    pub cluster: PointSet,
    pub mass: f64,
}

fn check_positive(measures: &[DiscreteSignedMeasure]) -> Result<()> {
    for (index, m) in measures.iter().enumerate() {
        if let Some((_, w)) = m.atoms().iter().find(|a| a.1 < 0.0) {
            return Err(Error::SignedInput { index, weight: *w });
        }
    }
    Ok(())
}

/// Maximal groups of atoms linked by chains of steps of length `≤ eps`.
fn single_linkage(m: &DiscreteSignedMeasure, eps: f64) -> Result<Vec<(PointSet, f64)>> {
    let atoms = m.atoms();
    let n = atoms.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m.space().distance(&atoms[i].0, &atoms[j].0)? <= eps {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Point>, f64)> = Vec::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1.push(atoms[i].0.clone());
                g.2 += atoms[i].1;
            }
            None => groups.push((r, vec![atoms[i].0.clone()], atoms[i].1)),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(_, pts, mass)| (PointSet::new(pts), mass))
        .collect())
}

/// Greedy search for clusters `Kₖ` of measures `μ_{nₖ}` (distinct indices,
/// in order) with `μ_{nₖ}(Kₖ) ≥ ε` and pairwise separation `> ε`.
///
/// Clusters are the `ε`-connected components of each support. Among the
/// admissible clusters of a measure the one farthest from the supports of
/// all other measures is taken. Returns `None` when fewer than two
/// witnesses are found.
pub fn find_separated_clusters(
    measures: &[DiscreteSignedMeasure],
    eps: f64,
) -> Result<Option<Vec<ClusterWitness>>> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::param("epsilon", "must be positive and finite"));
    }
    check_positive(measures)?;
    let space = match measures.first() {
        Some(m) => m.space().clone(),
        None => return Ok(None),
    };
    if measures.iter().any(|m| m.space() != &space) {
        return Err(Error::SpaceMismatch);
    }
    let clusters = measures
        .par_iter()
        .map(|m| single_linkage(m, eps))
        .collect::<Result<Vec<_>>>()?;
    let mut chosen: Vec<ClusterWitness> = Vec::new();
    for (index, groups) in clusters.iter().enumerate() {
        let others: Vec<Point> = measures
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != index)
            .flat_map(|(_, m)| m.atoms().iter().map(|a| a.0.clone()))
            .collect();
        let others = PointSet::new(others);
        let mut best: Option<(f64, &(PointSet, f64))> = None;
        for g in groups {
            if g.1 < eps {
                continue;
            }
            let mut ok = true;
            for c in &chosen {
                if space.set_separation(&g.0, &c.cluster)? <= eps {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let isolation = if others.is_empty() {
                f64::INFINITY
            } else {
                space.set_separation(&g.0, &others)?
            };
            if best.is_none_or(|(b, _)| isolation > b) {
                best = Some((isolation, g));
            }
        }
        if let Some((_, g)) = best {
            chosen.push(ClusterWitness {
                index,
                cluster: g.0.clone(),
                mass: g.1,
            });
        }
    }
    Ok((chosen.len() >= 2).then_some(chosen))
}

/// Independent check of cluster witnesses: indices strictly increasing,
/// each recomputed mass `μ_{nₖ}(Kₖ) ≥ ε`, and pairwise separation `> ε`.
pub fn verify_clusters(
    measures: &[DiscreteSignedMeasure],
    eps: f64,
    witnesses: &[ClusterWitness],
) -> Result<bool> {
    if witnesses.windows(2).any(|w| w[0].index >= w[1].index) {
        return Ok(false);
    }
    for w in witnesses {
        let Some(m) = measures.get(w.index) else {
            return Ok(false);
        };
        let mut mass = 0.0;
        for (p, x) in m.atoms() {
            if w.cluster.iter().any(|q| m.space().points_equal(p, q)) {
                mass += x;
            }
        }
        if mass < eps {
            return Ok(false);
        }
    }
    for (i, a) in witnesses.iter().enumerate() {
        for b in &witnesses[i + 1..] {
            if measures[0].space().set_separation(&a.cluster, &b.cluster)? <= eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A closed neighbourhood `{x : d(x, K) ≤ radius}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    pub core: PointSet,
    pub radius: f64,
}

impl Neighborhood {
    fn contains(&self, space: &MetricSpace, x: &Point) -> Result<bool> {
        Ok(space.set_distance(x, &self.core)? <= self.radius)
    }
}

/// Mass of `μ` on the union of `sets`.
fn mass_on_union(m: &DiscreteSignedMeasure, sets: &[&Neighborhood]) -> Result<f64> {
    let mut mass = 0.0;
    for (p, w) in m.atoms() {
        let mut inside = false;
        for s in sets {
            if s.contains(m.space(), p)? {
                inside = true;
                break;
            }
        }
        if inside {
            mass += w;
        }
    }
    Ok(mass)
}

/// Greedy selection of indices `n₁ < n₂ < …` such that every selected
/// measure puts mass `< ε` on the union of the other selected sets.
///
/// The `k`-th accepted index (`k = 1, 2, …`) must put mass `< ε/2` on the
/// sets already selected, and every earlier measure must put mass
/// `< ε/2^(k+1)` on its set; the later contributions to any measure then
/// sum to less than `ε/2`. Rejected indices are discarded.
pub fn select_sparse_subsequence(
    measures: &[DiscreteSignedMeasure],
    sets: &[Neighborhood],
    eps: f64,
) -> Result<Vec<usize>> {
    if measures.len() != sets.len() {
        return Err(Error::DimensionMismatch {
            expected: measures.len(),
            found: sets.len(),
        });
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::param("epsilon", "must be positive and finite"));
    }
    check_positive(measures)?;
    let Some(first) = measures.first() else {
        return Ok(Vec::new());
    };
    let space = first.space();
    for (i, a) in sets.iter().enumerate() {
        if a.core.is_empty() || !(a.radius >= 0.0) {
            return Err(Error::param(
                "sets",
                format!("set {i} needs a nonempty core and a nonnegative radius"),
            ));
        }
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if space.set_separation(&a.core, &b.core)? <= a.radius + b.radius {
                return Err(Error::OverlappingSupports { i, j });
            }
        }
    }
    let mut selected: Vec<usize> = Vec::new();
    for c in 0..measures.len() {
        let stage = selected.len() as i32 + 1;
        let earlier: Vec<&Neighborhood> = selected.iter().map(|&i| &sets[i]).collect();
        if mass_on_union(&measures[c], &earlier)? >= eps / 2.0 {
            continue;
        }
        let eta = eps / 2f64.powi(stage + 1);
        let mut ok = true;
        for &i in &selected {
            if mass_on_union(&measures[i], &[&sets[c]])? >= eta {
                ok = false;
                break;
            }
        }
        if ok {
            selected.push(c);
        }
    }
    Ok(selected)
}

/// Independent check: each selected measure's mass on the union of the other
/// selected sets is `< ε`.
pub fn verify_sparse_selection(
    measures: &[DiscreteSignedMeasure],
    sets: &[Neighborhood],
    eps: f64,
    selection: &[usize],
) -> Result<bool> {
    for &i in selection {
        if i >= measures.len() || i >= sets.len() {
            return Ok(false);
        }
        let others: Vec<&Neighborhood> = selection
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| &sets[j])
            .collect();
        if mass_on_union(&measures[i], &others)? >= eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Three fixed functions on `[0, 1]` vanishing at both ends: hats at `0.31`
/// (`λ = 0.23`) and `0.62` (`λ = 0.29`), and a two-centre tent.
pub fn decay_functions() -> Result<Vec<LipFunction>> {
    let i = MetricSpace::unit_interval();
    Ok(vec![
        hat_function(&i, 0.23, &PointSet::reals(&[0.31]))?,
        hat_function(&i, 0.29, &PointSet::reals(&[0.62]))?,
        tent_family_function(&i, &PointSet::reals(&[0.2, 0.75]), &[1.0, 0.5], 0.17)?,
    ])
}

/// For `μₙ = n·sin(2πnx)dx`: `⟨μₙ, gₙ⟩` against the sawtooth, the bound
/// `‖gₙ‖_BL = 1 + 1/(4n)`, the certified lower bound
/// `‖μₙ‖*_BL ≥ ⟨μₙ,gₙ⟩/‖gₙ‖_BL`, `‖μₙ‖_TV` against `2n/π`, and pairings
/// with [`decay_functions`].
pub fn oscillating_density_demo(n_values: &[u32]) -> Result<ExperimentReport> {
    if n_values.is_empty() {
        return Err(Error::EmptySet("n values"));
    }
    if n_values.contains(&0) {
        return Err(Error::param("n", "must be at least 1"));
    }
    let fs = decay_functions()?;
    let rows = n_values
        .par_iter()
        .map(|&n| {
            let mu = DensityMeasure1D::oscillating(n)?;
            let g = sawtooth_g(n)?;
            let pairing = mu.pair(&g, PAIRING_TOL)?;
            let g_bl = g.bl_bound();
            let decay = fs
                .iter()
                .map(|f| mu.pair(f, PAIRING_TOL))
                .collect::<Result<Vec<_>>>()?;
            Ok((
                pairing,
                g_bl,
                pairing / g_bl,
                mu.tv_norm(PAIRING_TOL)?,
                2.0 * n as f64 / PI,
                decay,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let col = |k: usize| Column::Real(rows.iter().map(|r| [r.0, r.1, r.2, r.3, r.4][k]).collect());
    let mut table = Table::default()
        .with(
            "n",
            Column::Int(n_values.iter().map(|&n| n as i64).collect()),
        )
        .with("pairing", col(0))
        .with("g_bl_norm", col(1))
        .with("bl_lower_bound", col(2))
        .with("tv", col(3))
        .with("tv_expected", col(4));
    for k in 0..fs.len() {
        table = table.with(
            &format!("decay_f{}", k + 1),
            Column::Real(rows.iter().map(|r| r.5[k]).collect()),
        );
    }
    let mut report = ExperimentReport::new("oscillating-density").param("n", json!(n_values));
    let target = 1.0 / (PI * PI);
    report.summary.push(("pairing_target".into(), target));
    report.summary.push((
        "max_pairing_error".into(),
        rows.iter()
            .map(|r| (r.0 - target).abs())
            .fold(0.0, f64::max),
    ));
    report.summary.push((
        "min_bl_lower_bound".into(),
        rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min),
    ));
    report.tables.push(("sequence".into(), table));
    Ok(report)
}

/// For `μₙ = δₙ - δ_{n+1/n}` on the real line, `n = 1..=n_max`: the LP value
/// of `‖μₙ‖*_BL` against `2/(2n+1)`, and the pairings of the Jordan parts
/// with the hat `[1 - |x|]⁺`.
pub fn dirac_drift_demo(n_max: u32) -> Result<ExperimentReport> {
    if n_max < 1 {
        return Err(Error::param("n_max", "must be at least 1"));
    }
    let seq = MeasureSequence::dirac_drift();
    let hat = hat_function(seq.space(), 1.0, &PointSet::reals(&[0.0]))?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let SequenceItem::Discrete(mu) = seq.get(n)? else {
                unreachable!("discrete sequence")
            };
            let (pos, neg) = mu.jordan();
            let lp = bl_dual_norm(&mu)?.value;
            let closed = 2.0 / (2.0 * n as f64 + 1.0);
            Ok([
                lp,
                closed,
                (lp - closed).abs(),
                pos.pair(&hat)?,
                neg.pair(&hat)?,
                mu.pair(&hat)?,
                pos.tv_norm(),
                mu.tv_norm(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let col = |k: usize| Column::Real(rows.iter().map(|r| r[k]).collect());
    let table = Table::default()
        .with("n", Column::Int((1..=n_max as i64).collect()))
        .with("bl_norm", col(0))
        .with("closed_form", col(1))
        .with("error", col(2))
        .with("positive_pairing", col(3))
        .with("negative_pairing", col(4))
        .with("signed_pairing", col(5))
        .with("positive_tv", col(6))
        .with("tv", col(7));
    let mut report = ExperimentReport::new("dirac-drift").param("n_max", json!(n_max));
    report.summary.push((
        "max_error".into(),
        rows.iter().map(|r| r[2]).fold(0.0, f64::max),
    ));
    report.tables.push(("sequence".into(), table));
    Ok(report)
}

/// Ratios `‖μ‖*_BL / ‖μ‖_TV` for random signed measures on `{0, …, m-1}`
/// in the naturals, plus the cases `δ₀` and `δ₀ - δ₁`. Fails if any ratio
/// falls below `1/3 - 1e-9`.
pub fn discrete_l1_demo(
    m: usize,
    trials: usize,
    seed: u64,
    config: &NormConfig,
) -> Result<ExperimentReport> {
    if m < 2 {
        return Err(Error::param("m", "must be at least 2"));
    }
    if m > config.support_cap {
        return Err(Error::SupportTooLarge {
            size: m,
            cap: config.support_cap,
        });
    }
    let space = MetricSpace::discrete_naturals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut measures = vec![
        (
            "dirac".to_string(),
            DiscreteSignedMeasure::dirac(&space, Point::Natural(0))?,
        ),
        (
            "dirac_difference".to_string(),
            DiscreteSignedMeasure::new(
                &space,
                vec![(Point::Natural(0), 1.0), (Point::Natural(1), -1.0)],
            )?,
        ),
    ];
    while measures.len() < trials + 2 {
        let mut atoms = Vec::new();
        for k in 0..m as u64 {
            if rng.random_bool(0.5) {
                atoms.push((Point::Natural(k), rng.random_range(-1.0..1.0)));
            }
        }
        let mu = DiscreteSignedMeasure::new(&space, atoms)?;
        if !mu.is_empty() {
            measures.push((format!("random_{}", measures.len() - 2), mu));
        }
    }
    let rows = measures
        .par_iter()
        .map(|(_, mu)| {
            let bl = dual_norm(mu, Ball::Bl, config)?.value;
            let tv = mu.tv_norm();
            Ok([tv, bl, bl / tv, mu.len() as f64])
        })
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min < 1.0 / 3.0 - 1e-9 {
        return Err(Error::InvariantViolation(format!(
            "BL/TV ratio {min} is below 1/3"
        )));
    }
    let col = |k: usize| Column::Real(rows.iter().map(|r| r[k]).collect());
    let table = Table::default()
        .with(
            "case",
            Column::Text(measures.iter().map(|m| m.0.clone()).collect()),
        )
        .with(
            "atoms",
            Column::Int(rows.iter().map(|r| r[3] as i64).collect()),
        )
        .with("tv", col(0))
        .with("bl_norm", col(1))
        .with("ratio", col(2));
    let mut report = ExperimentReport::new("discrete-l1")
        .param("m", json!(m))
        .param("trials", json!(trials));
    report.seed = Some(seed);
    report.summary.push(("min_ratio".into(), min));
    report.summary.push(("max_ratio".into(), max));
    report.summary.push(("lower_bound".into(), 1.0 / 3.0));
    report.tables.push(("ratios".into(), table));
    Ok(report)
}

/// The tent dictionary on the real line used by the scan demo: centres
/// `0, 20, 40, 60`, widths `16, 32`, one level, subsets of size at most 2.
pub fn default_line_dictionary() -> Result<Vec<LipFunction>> {
    dictionary(
        &MetricSpace::real_line(),
        &PointSet::reals(&[0.0, 20.0, 40.0, 60.0]),
        &[16.0, 32.0],
        1,
        2,
    )
}
