//! Config parsing and report rendering for the batch interface.
//!
//! Wire formats:
//! - space spec: `{"kind": "lp"|"polyhedral"|"weighted_euclidean",
//!   "p": number|"inf", "dim": n, "field": "real"|"complex",
//!   "vertices": [[..]], "weights": [..], "label": "..."}`;
//! - vectors: arrays of numbers (real) or of `[re, im]` pairs (complex);
//! - matrices: row-major nested arrays with the same entry convention;
//! - subspaces: `{"ambient": <space spec>, "basis": [<column vector>, ..]}`;
//! - maps: `{"matrix": [[..]]}` — the inverse is computed and verified on load;
//! - certificates: `{"lower", "upper", "method", "budget_used"}`.
//!
//! JSON objects keep insertion order, so parse -> emit is byte-identical.
//! CSV files are a `# config:` comment, a frozen header, and data rows.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::cert::{BoundsCertificate, Interval, SearchBudget};
use crate::error::{Error, Result};
use crate::space::{Matrix, NormKind, NormedSpace, ScalarField, Vector};
use crate::subspace::{InvertibleMap, Subspace};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number, got {v}")))
}

fn integer(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("{what}: expected an integer, got {v}")))
}

pub fn field_from_value(v: &Value) -> Result<ScalarField> {
    match v.as_str() {
        Some("real") => Ok(ScalarField::Real),
        Some("complex") => Ok(ScalarField::Complex),
        _ => Err(bad(format!("field must be \"real\" or \"complex\", got {v}"))),
    }
}

/// Parse a space spec object.
pub fn space_from_value(v: &Value) -> Result<NormedSpace> {
    let obj = v.as_object().ok_or_else(|| bad("space spec must be an object"))?;
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| bad("space spec needs a \"kind\""))?;
    let field = match obj.get("field") {
        Some(f) => field_from_value(f)?,
        None => ScalarField::Real,
    };
    let space = match kind {
        "lp" => {
            let dim = integer(obj.get("dim").ok_or_else(|| bad("lp space needs \"dim\""))?, "dim")?;
            let p = match obj.get("p") {
                Some(Value::String(s)) if s == "inf" => f64::INFINITY,
                Some(v) => number(v, "p")?,
                None => return Err(bad("lp space needs \"p\"")),
            };
            NormedSpace::lp(field, dim, p)?
        }
        "polyhedral" => {
            let verts = obj
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("polyhedral space needs \"vertices\""))?;
            let mut rows = Vec::with_capacity(verts.len());
            for v in verts {
                let arr = v.as_array().ok_or_else(|| bad("vertex must be an array"))?;
                rows.push(arr.iter().map(|x| number(x, "vertex entry")).collect::<Result<Vec<f64>>>()?);
            }
            let dim = match obj.get("dim") {
                Some(d) => integer(d, "dim")?,
                None => rows.first().map(|r| r.len()).unwrap_or(0),
            };
            NormedSpace::polyhedral(dim, rows)?
        }
        "weighted_euclidean" => {
            let ws = obj
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("weighted_euclidean space needs \"weights\""))?;
            let weights = ws.iter().map(|x| number(x, "weight")).collect::<Result<Vec<f64>>>()?;
            NormedSpace::weighted_euclidean(field, weights)?
        }
        other => return Err(bad(format!("unknown space kind {other:?}"))),
    };
    Ok(match obj.get("label").and_then(Value::as_str) {
        Some(label) => space.with_label(label),
        None => space,
    })
}

pub fn space_to_value(space: &NormedSpace) -> Value {
    let mut obj = Map::new();
    match space.kind() {
        NormKind::Lp { p } => {
            obj.insert("kind".into(), json!("lp"));
            if p.is_infinite() {
                obj.insert("p".into(), json!("inf"));
            } else {
                obj.insert("p".into(), json!(p));
            }
            obj.insert("dim".into(), json!(space.dim()));
        }
        NormKind::Polyhedral { ball_vertices } => {
            obj.insert("kind".into(), json!("polyhedral"));
            obj.insert("dim".into(), json!(space.dim()));
            let verts: Vec<Value> =
                ball_vertices.iter().map(|v| Value::Array(v.iter().map(|x| json!(x)).collect())).collect();
            obj.insert("vertices".into(), Value::Array(verts));
        }
        NormKind::WeightedEuclidean { weights } => {
            obj.insert("kind".into(), json!("weighted_euclidean"));
            obj.insert("weights".into(), Value::Array(weights.iter().map(|w| json!(w)).collect()));
        }
    }
    obj.insert("field".into(), json!(space.field().as_str()));
    obj.insert("label".into(), json!(space.label()));
    Value::Object(obj)
}

/// Parse a vector: numbers for real spaces, `[re, im]` pairs for complex.
pub fn vector_from_value(v: &Value, field: ScalarField, dim: Option<usize>) -> Result<Vector> {
    let arr = v.as_array().ok_or_else(|| bad("vector must be an array"))?;
    if let Some(d) = dim {
        if arr.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: arr.len() });
        }
    }
    let entries: Vec<Complex64> = arr
        .iter()
        .map(|e| scalar_from_value(e, field))
        .collect::<Result<_>>()?;
    Ok(Vector::from_vec(entries))
}

fn scalar_from_value(e: &Value, field: ScalarField) -> Result<Complex64> {
    match field {
        ScalarField::Real => Ok(Complex64::new(number(e, "entry")?, 0.0)),
        ScalarField::Complex => {
            let pair = e.as_array().ok_or_else(|| bad("complex entry must be [re, im]"))?;
            if pair.len() != 2 {
                return Err(bad("complex entry must be [re, im]"));
            }
            Ok(Complex64::new(number(&pair[0], "re")?, number(&pair[1], "im")?))
        }
    }
}

fn scalar_to_value(z: Complex64, field: ScalarField) -> Value {
    match field {
        ScalarField::Real => json!(z.re),
        ScalarField::Complex => json!([z.re, z.im]),
    }
}

pub fn vector_to_value(v: &Vector, field: ScalarField) -> Value {
    Value::Array(v.iter().map(|&z| scalar_to_value(z, field)).collect())
}

/// Parse a row-major matrix.
pub fn matrix_from_value(v: &Value, field: ScalarField, dim: Option<usize>) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if let Some(d) = dim {
        if rows.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: rows.len() });
        }
    }
    let nrows = rows.len();
    let mut parsed: Vec<Vec<Complex64>> = Vec::with_capacity(nrows);
    for row in rows {
        let arr = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        parsed.push(arr.iter().map(|e| scalar_from_value(e, field)).collect::<Result<_>>()?);
    }
    let ncols = parsed.first().map(|r| r.len()).unwrap_or(0);
    if parsed.iter().any(|r| r.len() != ncols) {
        return Err(bad("matrix rows have inconsistent lengths"));
    }
    Ok(Matrix::from_fn(nrows, ncols, |i, j| parsed[i][j]))
}

pub fn matrix_to_value(m: &Matrix, field: ScalarField) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| scalar_to_value(m[(i, j)], field)).collect()))
            .collect(),
    )
}

/// Parse a subspace spec: ambient space plus basis column vectors.
pub fn subspace_from_value(v: &Value) -> Result<Subspace> {
    let obj = v.as_object().ok_or_else(|| bad("subspace spec must be an object"))?;
    let ambient =
        space_from_value(obj.get("ambient").ok_or_else(|| bad("subspace spec needs \"ambient\""))?)?;
    let basis_val = obj.get("basis").ok_or_else(|| bad("subspace spec needs \"basis\""))?;
    let cols_raw = basis_val.as_array().ok_or_else(|| bad("basis must be an array of column vectors"))?;
    let cols: Vec<Vector> = cols_raw
        .iter()
        .map(|c| vector_from_value(c, ambient.field(), Some(ambient.dim())))
        .collect::<Result<_>>()?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or("Y").to_string();
    Subspace::from_columns(ambient, &cols, label)
}

pub fn subspace_to_value(sub: &Subspace) -> Value {
    let field = sub.ambient().field();
    let cols: Vec<Value> =
        sub.basis().column_iter().map(|c| vector_to_value(&c.clone_owned(), field)).collect();
    json!({
        "ambient": space_to_value(sub.ambient()),
        "basis": cols,
        "label": sub.label(),
    })
}

/// Parse an invertible-map spec over a known ambient space; the inverse is
/// computed and verified here.
pub fn map_from_value(
    ambient: &NormedSpace,
    v: &Value,
    budget: SearchBudget,
    seed: u64,
) -> Result<InvertibleMap> {
    let obj = v.as_object().ok_or_else(|| bad("map spec must be an object"))?;
    let m = matrix_from_value(
        obj.get("matrix").ok_or_else(|| bad("map spec needs \"matrix\""))?,
        ambient.field(),
        Some(ambient.dim()),
    )?;
    InvertibleMap::new(ambient.clone(), m, budget, seed)
}

pub fn cert_to_value(cert: &BoundsCertificate) -> Value {
    json!({
        "lower": cert.lower,
        "upper": cert.upper,
        "method": cert.method.as_str(),
        "budget_used": cert.budget_used,
    })
}

pub fn interval_to_value(iv: &Interval) -> Value {
    json!({ "lower": iv.lower, "upper": iv.upper })
}

/// Output format of the batch interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(bad(format!("unknown format {other:?} (expected table|json|csv)"))),
        }
    }
}

/// A rendered run: envelope (command, echoed config, seed, budget, optional
/// timestamp) plus the result payload and a CSV form.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub seed: u64,
    pub budget: u32,
    pub timestamp: Option<u64>,
    pub result: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Table => self.render_table(),
        }
    }

    pub fn render_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("seed".into(), json!(self.seed));
        obj.insert("budget".into(), json!(self.budget));
        obj.insert("config".into(), self.config.clone());
        if let Some(ts) = self.timestamp {
            obj.insert("timestamp".into(), json!(ts));
        }
        obj.insert("result".into(), self.result.clone());
        serde_json::to_string_pretty(&Value::Object(obj)).expect("report serializes")
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        let config = serde_json::to_string(&self.config).expect("config serializes");
        out.push_str(&format!(
            "# command={} seed={} budget={} config={}\n",
            self.command, self.seed, self.budget, config
        ));
        if let Some(ts) = self.timestamp {
            out.push_str(&format!("# timestamp={ts}\n"));
        }
        out.push_str(&self.csv_header.join(","));
        out.push('\n');
        for row in &self.csv_rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("budget: {}\n", self.budget));
        if let Some(ts) = self.timestamp {
            out.push_str(&format!("timestamp: {ts}\n"));
        }
        render_value(&mut out, "result", &self.result, 0);
        out
    }
}

fn render_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, val) in map {
                render_value(out, k, val, indent + 1);
            }
        }
        Value::Array(items) if items.iter().all(|e| !e.is_object() && !e.is_array()) => {
            let flat: Vec<String> = items.iter().map(render_scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", flat.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                render_value(out, &format!("[{i}]"), item, indent + 1);
            }
        }
        other => {
            out.push_str(&format!("{pad}{key}: {}\n", render_scalar(other)));
        }
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Parse a rendered CSV report and re-emit it; used by round-trip checks.
pub fn csv_round_trip(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        if line.starts_with('#') {
            out.push_str(line);
        } else {
            let fields: Vec<&str> = line.split(',').collect();
            out.push_str(&fields.join(","));
        }
        out.push('\n');
    }
    out
}

/// Parse and re-emit a JSON report; byte-identical because objects preserve
/// insertion order.
pub fn json_round_trip(text: &str) -> Result<String> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("report does not parse as JSON: {e}")))?;
    Ok(serde_json::to_string_pretty(&v).expect("value serializes"))
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::rvec;

    #[test]
    fn space_specs_round_trip() {
        let specs = [
            json!({"kind": "lp", "p": 2.0, "dim": 3, "field": "real"}),
            json!({"kind": "lp", "p": "inf", "dim": 2, "field": "complex"}),
            json!({"kind": "weighted_euclidean", "weights": [1.0, 2.0], "field": "real"}),
            json!({"kind": "polyhedral", "dim": 2,
                   "vertices": [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]}),
        ];
        for spec in specs {
            let space = space_from_value(&spec).unwrap();
            let emitted = space_to_value(&space);
            let again = space_from_value(&emitted).unwrap();
            assert_eq!(space, again);
        }
    }

    #[test]
    fn vectors_and_matrices_round_trip() {
        let v = rvec(&[1.5, -2.0]);
        let val = vector_to_value(&v, ScalarField::Real);
        assert_eq!(vector_from_value(&val, ScalarField::Real, Some(2)).unwrap(), v);

        let c = crate::space::cvec(&[(1.0, -0.5), (0.0, 2.0)]);
        let val = vector_to_value(&c, ScalarField::Complex);
        assert_eq!(vector_from_value(&val, ScalarField::Complex, None).unwrap(), c);

        let m = crate::space::rmat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let val = matrix_to_value(&m, ScalarField::Real);
        assert_eq!(matrix_from_value(&val, ScalarField::Real, Some(2)).unwrap(), m);
    }

    #[test]
    fn subspace_spec_round_trips() {
        let spec = json!({
            "ambient": {"kind": "lp", "p": 1.0, "dim": 3, "field": "real"},
            "basis": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.25]],
        });
        let sub = subspace_from_value(&spec).unwrap();
        assert_eq!(sub.dim(), 2);
        let emitted = subspace_to_value(&sub);
        let again = subspace_from_value(&emitted).unwrap();
        assert_eq!(sub, again);
    }

    #[test]
    fn json_report_round_trip_is_byte_identical() {
        let report = Report {
            command: "radius".into(),
            config: json!({"space": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"}}),
            seed: 7,
            budget: 64,
            timestamp: None,
            result: json!({"radius": {"lower": 1.0, "upper": 1.0000000001}}),
            csv_header: vec!["quantity".into(), "lower".into(), "upper".into()],
            csv_rows: vec![vec!["radius".into(), "1".into(), "1.0000000001".into()]],
        };
        let text = report.render_json();
        assert_eq!(json_round_trip(&text).unwrap(), text);
        let csv = report.render_csv();
        assert_eq!(csv_round_trip(&csv), csv);
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(space_from_value(&json!({"kind": "lq", "p": 2.0, "dim": 2})).is_err());
        assert!(space_from_value(&json!({"kind": "lp", "dim": 2})).is_err());
        assert!(space_from_value(&json!({"kind": "lp", "p": 0.5, "dim": 2})).is_err());
        assert!(vector_from_value(&json!([1.0, "x"]), ScalarField::Real, None).is_err());
        assert!(vector_from_value(&json!([1.0]), ScalarField::Real, Some(2)).is_err());
        assert!(matrix_from_value(&json!([[1.0], [2.0, 3.0]]), ScalarField::Real, None).is_err());
    }
}
