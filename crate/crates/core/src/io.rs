//! JSON descriptions of spaces, measures, functions and operators, and the
//! fixed-precision number formatting used for all printed results.
//!
//! Spaces: `{"kind":"euclidean","dim":N}`, `{"kind":"real_line"}`,
//! `{"kind":"unit_interval"}`, `{"kind":"discrete_naturals"}` and
//! `{"kind":"matrix","points":[labels],"distances":[[...]]}`.
//!
//! Points are a number or coordinate array on coordinate spaces, an integer
//! on the naturals, and a label (or integer index) on matrix spaces.
//!
//! Measures: `{"space":{...},"atoms":[{"point":...,"weight":w}]}`. Weights
//! are written as decimal strings and accepted as strings or numbers.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::flat_norm::NormResult;
use crate::lipschitz::{hat_function, tent_family_function, LipFunction};
use crate::map::LipMap;
use crate::markov::MarkovOperator;
use crate::measure::DiscreteSignedMeasure;
use crate::metric::{MetricSpace, Point, PointSet, SpaceKind};

/// Significant digits of every printed number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// `x` at 12 significant digits, without trailing zeros (`3.0`,
/// `0.666666666667`). Non-finite values print as `NaN`, `inf` or `-inf`.
pub fn format_number(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        return "0.0".into();
    }
    format!("{r:?}")
}

/// A JSON number rounded to 12 significant digits; non-finite values
/// become `null`.
pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    let x = match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.trim().parse::<f64>().ok(),
        _ => None,
    }
    .ok_or_else(|| Error::parse(path, format!("expected a number, found {v}")))?;
    if !x.is_finite() {
        return Err(Error::parse(path, "number must be finite"));
    }
    Ok(x)
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::parse(path, "expected a string"))
}

fn f64_list(v: &Value, path: &str) -> Result<Vec<f64>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_f64(x, &format!("{path}[{i}]")))
        .collect()
}

fn with_path(e: Error, path: &str) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(path, other.to_string()),
    }
}

pub fn space_from_json(v: &Value) -> Result<MetricSpace> {
    let path = "space";
    let kind = as_str(field(v, path, "kind")?, "space.kind")?;
    let space = match kind {
        "euclidean" => {
            let dim = field(v, path, "dim")?
                .as_u64()
                .ok_or_else(|| Error::parse("space.dim", "expected a positive integer"))?;
            MetricSpace::euclidean(dim as usize)
        }
        "real_line" => Ok(MetricSpace::real_line()),
        "unit_interval" => Ok(MetricSpace::unit_interval()),
        "discrete_naturals" => Ok(MetricSpace::discrete_naturals()),
        "matrix" => {
            let labels = as_array(field(v, path, "points")?, "space.points")?
                .iter()
                .enumerate()
                .map(|(i, l)| Ok(as_str(l, &format!("space.points[{i}]"))?.to_string()))
                .collect::<Result<Vec<_>>>()?;
            let rows = as_array(field(v, path, "distances")?, "space.distances")?
                .iter()
                .enumerate()
                .map(|(i, r)| f64_list(r, &format!("space.distances[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            MetricSpace::matrix(labels, rows)
        }
        other => {
            return Err(Error::parse(
                "space.kind",
                format!("unknown space kind `{other}`"),
            ))
        }
    };
    space.map_err(|e| with_path(e, path))
}

pub fn space_to_json(space: &MetricSpace) -> Result<Value> {
    if !space.is_plain() {
        return Err(Error::param("space", "derived metrics have no JSON form"));
    }
    Ok(match space.kind() {
        SpaceKind::Euclidean { dim } => json!({"kind": "euclidean", "dim": dim}),
        SpaceKind::UnitInterval => json!({"kind": "unit_interval"}),
        SpaceKind::DiscreteNaturals => json!({"kind": "discrete_naturals"}),
        SpaceKind::Matrix { labels, distances } => {
            let n = labels.len();
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| distances[i * n..(i + 1) * n].to_vec())
                .collect();
            json!({"kind": "matrix", "points": labels.to_vec(), "distances": rows})
        }
    })
}

pub fn parse_space(text: &str) -> Result<MetricSpace> {
    space_from_json(&parse_text(text)?)
}

pub fn point_from_json(space: &MetricSpace, v: &Value, path: &str) -> Result<Point> {
    let p = match space.kind() {
        SpaceKind::Euclidean { .. } | SpaceKind::UnitInterval => match v {
            Value::Array(_) => Point::Coords(f64_list(v, path)?),
            _ => Point::real(as_f64(v, path)?),
        },
        SpaceKind::DiscreteNaturals => Point::Natural(
            v.as_u64()
                .ok_or_else(|| Error::parse(path, "expected a nonnegative integer"))?,
        ),
        SpaceKind::Matrix { labels, .. } => match v {
            Value::String(s) => Point::Index(
                labels
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| Error::parse(path, format!("unknown point label `{s}`")))?,
            ),
            _ => Point::Index(
                v.as_u64()
                    .ok_or_else(|| Error::parse(path, "expected a label or index"))?
                    as usize,
            ),
        },
    };
    space.check_point(&p).map_err(|e| with_path(e, path))?;
    Ok(p)
}

pub fn point_to_json(space: &MetricSpace, p: &Point) -> Value {
    match (p, space.labels()) {
        (Point::Coords(c), _) => json!(c),
        (Point::Natural(n), _) => json!(n),
        (Point::Index(i), Some(labels)) if *i < labels.len() => json!(labels[*i]),
        (Point::Index(i), _) => json!(i),
    }
}

fn point_set(space: &MetricSpace, v: &Value, path: &str) -> Result<PointSet> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| point_from_json(space, p, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(PointSet::new)
}

pub fn measure_from_json(v: &Value) -> Result<DiscreteSignedMeasure> {
    let space = space_from_json(field(v, "measure", "space")?)?;
    let atoms = as_array(field(v, "measure", "atoms")?, "measure.atoms")?
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let path = format!("measure.atoms[{i}]");
            let p = point_from_json(&space, field(a, &path, "point")?, &format!("{path}.point"))?;
            let w = as_f64(field(a, &path, "weight")?, &format!("{path}.weight"))?;
            Ok((p, w))
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteSignedMeasure::new(&space, atoms).map_err(|e| with_path(e, "measure"))
}

pub fn measure_to_json(mu: &DiscreteSignedMeasure) -> Result<Value> {
    let atoms: Vec<Value> = mu
        .atoms()
        .iter()
        .map(|(p, w)| json!({"point": point_to_json(mu.space(), p), "weight": format!("{w:?}")}))
        .collect();
    Ok(json!({"space": space_to_json(mu.space())?, "atoms": atoms}))
}

pub fn parse_measure(text: &str) -> Result<DiscreteSignedMeasure> {
    measure_from_json(&parse_text(text)?)
}

pub fn serialize_measure(mu: &DiscreteSignedMeasure) -> Result<String> {
    Ok(serde_json::to_string(&measure_to_json(mu)?).expect("JSON values serialize"))
}

/// A JSON array of measures, or a single measure.
pub fn parse_measure_list(text: &str) -> Result<Vec<DiscreteSignedMeasure>> {
    match parse_text(text)? {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, m)| measure_from_json(m).map_err(|e| prefix(e, &format!("[{i}]"))))
            .collect(),
        v => Ok(vec![measure_from_json(&v)?]),
    }
}

fn prefix(e: Error, p: &str) -> Error {
    match e {
        Error::Parse { field, message } => Error::Parse {
            field: format!("{p}.{field}"),
            message,
        },
        other => other,
    }
}

pub fn function_from_json(v: &Value, space: &MetricSpace) -> Result<LipFunction> {
    let path = "function";
    let kind = as_str(field(v, path, "kind")?, "function.kind")?;
    let f = match kind {
        "hat" => {
            let lambda = as_f64(field(v, path, "lambda")?, "function.lambda")?;
            let centers = point_set(space, field(v, path, "centers")?, "function.centers")?;
            hat_function(space, lambda, &centers)
        }
        "tent" => {
            let lambda = as_f64(field(v, path, "lambda")?, "function.lambda")?;
            let centers = point_set(space, field(v, path, "centers")?, "function.centers")?;
            let amps = f64_list(field(v, path, "amplitudes")?, "function.amplitudes")?;
            tent_family_function(space, &centers, &amps, lambda)
        }
        "piecewise_linear_1d" => {
            let bps = as_array(field(v, path, "breakpoints")?, "function.breakpoints")?
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let p = format!("function.breakpoints[{i}]");
                    match f64_list(b, &p)?.as_slice() {
                        &[x, y] => Ok((x, y)),
                        _ => Err(Error::parse(p, "expected [x, y]")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            LipFunction::piecewise_linear_1d(space, bps)
        }
        "constant" => {
            LipFunction::constant(space, as_f64(field(v, path, "value")?, "function.value")?)
        }
        other => {
            return Err(Error::parse(
                "function.kind",
                format!("unknown function kind `{other}`"),
            ))
        }
    };
    f.map_err(|e| with_path(e, path))
}

pub fn parse_function(text: &str, space: &MetricSpace) -> Result<LipFunction> {
    function_from_json(&parse_text(text)?, space)
}

fn map_from_json(v: &Value, space: &MetricSpace, path: &str) -> Result<LipMap> {
    if v.as_str() == Some("identity") {
        return Ok(LipMap::identity(space));
    }
    if let Some(a) = v.get("affine") {
        let p = format!("{path}.affine");
        let slope = as_f64(field(a, &p, "a")?, &format!("{p}.a"))?;
        let offset = as_f64(field(a, &p, "b")?, &format!("{p}.b"))?;
        return LipMap::affine(space, slope, offset).map_err(|e| with_path(e, &p));
    }
    if let Some(c) = v.get("constant") {
        let p = point_from_json(space, c, &format!("{path}.constant"))?;
        return LipMap::constant(space, p);
    }
    Err(Error::parse(
        path,
        "expected \"identity\", {\"affine\":{...}} or {\"constant\":point}",
    ))
}

/// An operator description. A `"space"` entry overrides `default_space`.
pub fn operator_from_json(v: &Value, default_space: &MetricSpace) -> Result<MarkovOperator> {
    let path = "operator";
    let space = match v.get("space") {
        Some(s) => space_from_json(s)?,
        None => default_space.clone(),
    };
    let kind = as_str(field(v, path, "kind")?, "operator.kind")?;
    let op = match kind {
        "pushforward" => Ok(MarkovOperator::pushforward(&map_from_json(
            field(v, path, "map")?,
            &space,
            "operator.map",
        )?)),
        "ifs" => {
            let maps = as_array(field(v, path, "maps")?, "operator.maps")?
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let p = format!("operator.maps[{i}]");
                    let map = map_from_json(m, &space, &p)?;
                    let prob = as_f64(field(m, &p, "p")?, &format!("{p}.p"))?;
                    Ok((map, prob))
                })
                .collect::<Result<Vec<_>>>()?;
            MarkovOperator::ifs(maps)
        }
        "kernel" => {
            let rows = as_array(field(v, path, "matrix")?, "operator.matrix")?
                .iter()
                .enumerate()
                .map(|(i, r)| f64_list(r, &format!("operator.matrix[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            MarkovOperator::kernel(&space, rows)
        }
        other => {
            return Err(Error::parse(
                "operator.kind",
                format!("unknown operator kind `{other}`"),
            ))
        }
    };
    let op = op.map_err(|e| with_path(e, path))?;
    Ok(match v.get("label").and_then(Value::as_str) {
        Some(l) => op.with_label(l),
        None => op,
    })
}

pub fn parse_operator(text: &str, default_space: &MetricSpace) -> Result<MarkovOperator> {
    operator_from_json(&parse_text(text)?, default_space)
}

/// `{"ball":…,"value":…,"witness":[{"point":…,"f":…}],"status":…}`.
pub fn norm_result_to_json(result: &NormResult, space: &MetricSpace) -> Value {
    let witness: Vec<Value> = result
        .witness
        .iter()
        .map(|(p, f)| json!({"point": point_to_json(space, p), "f": json_number(*f)}))
        .collect();
    let mut out = Map::new();
    out.insert(
        "ball".into(),
        serde_json::to_value(result.ball).expect("ball serializes"),
    );
    out.insert("value".into(), json_number(result.value));
    out.insert("witness".into(), Value::Array(witness));
    out.insert(
        "status".into(),
        serde_json::to_value(result.status).expect("status serializes"),
    );
    Value::Object(out)
}
