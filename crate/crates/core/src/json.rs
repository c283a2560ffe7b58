//! JSON encoding of the library's values. Scalars are strings in the text
//! encoding (`"3/4"`, `"1/2+1*i"`); dual quaternions and points are arrays of
//! eight scalars; subspaces are arrays of basis points.

use serde_json::{json, Map, Value};

use crate::algebra::{DualQuaternion, Matrix, Quaternion, Scalar, DEFAULT_TOLERANCE};
use crate::dyads::{Classification, DyadKind, DyadSpec, Example2Report, Quadrilateral, RecoveredAxes};
use crate::error::{Error, Result};
use crate::motions::{CSpaceReport, CurveInvariants, DarbouxReport, Trajectory};
use crate::projgeom::{ProjPoint, QuadricForm, QuadricLabel, Signature, Subspace};
use crate::quadreconstruct::{ProjectionCycle, Reconstruction, ReconstructionProblem};

/// How parsed scalars are interpreted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarMode {
    Rational,
    Gaussian,
    Float(f64),
}

impl Default for ScalarMode {
    fn default() -> Self {
        ScalarMode::Gaussian
    }
}

fn err(path: &str, msg: &str) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_text())
}

pub fn scalar_from_json(v: &Value, mode: ScalarMode, path: &str) -> Result<Scalar> {
    let tol = match mode {
        ScalarMode::Float(t) => t,
        _ => DEFAULT_TOLERANCE,
    };
    let s = match v {
        Value::String(t) => Scalar::parse_with_tolerance(t, tol).map_err(|e| err(path, &e.to_string()))?,
        Value::Number(n) => match n.as_i64() {
            Some(k) => Scalar::int(k),
            None => Scalar::parse_with_tolerance(&n.to_string(), tol).map_err(|e| err(path, &e.to_string()))?,
        },
        _ => return Err(err(path, "expected a scalar string or number")),
    };
    match mode {
        ScalarMode::Rational if !(s.is_exact() && s.is_real()) => Err(err(path, "expected a rational scalar")),
        ScalarMode::Gaussian if !s.is_exact() => Err(err(path, "expected an exact scalar")),
        ScalarMode::Float(t) => Ok(s.to_complex(t)),
        _ => Ok(s),
    }
}

fn array<'a>(v: &'a Value, len: Option<usize>, path: &str) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(err(path, &format!("expected {n} entries, found {}", a.len())));
        }
    }
    Ok(a)
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, &format!("missing field \"{key}\"")))
}

pub fn scalars_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn scalars_from_json(v: &Value, len: Option<usize>, mode: ScalarMode, path: &str) -> Result<Vec<Scalar>> {
    array(v, len, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| scalar_from_json(x, mode, &format!("{path}/{k}")))
        .collect()
}

pub fn quaternion_to_json(q: &Quaternion) -> Value {
    scalars_to_json(&q.coords())
}

pub fn dq_to_json(q: &DualQuaternion) -> Value {
    scalars_to_json(&q.coords())
}

pub fn dq_from_json(v: &Value, mode: ScalarMode, path: &str) -> Result<DualQuaternion> {
    Ok(DualQuaternion::from_slice(&scalars_from_json(v, Some(8), mode, path)?))
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    scalars_to_json(p.coords())
}

pub fn point_from_json(v: &Value, mode: ScalarMode, path: &str) -> Result<ProjPoint> {
    let c = scalars_from_json(v, None, mode, path)?;
    ProjPoint::new(c).map_err(|_| err(path, "the zero vector is not a point"))
}

pub fn points_from_json(v: &Value, len: Option<usize>, mode: ScalarMode, path: &str) -> Result<Vec<ProjPoint>> {
    array(v, len, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| point_from_json(x, mode, &format!("{path}/{k}")))
        .collect()
}

pub fn subspace_to_json(u: &Subspace) -> Value {
    Value::Array(u.basis_vectors().iter().map(|v| scalars_to_json(v)).collect())
}

/// A subspace given as the span of a list of points.
pub fn subspace_from_json(v: &Value, mode: ScalarMode, path: &str) -> Result<Subspace> {
    let pts = points_from_json(v, None, mode, path)?;
    if pts.is_empty() {
        return Err(err(path, "expected at least one point"));
    }
    Subspace::span(&pts).map_err(|e| err(path, &e.to_string()))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| scalars_to_json(r)).collect())
}

pub fn matrix_from_json(v: &Value, mode: ScalarMode, path: &str) -> Result<Matrix> {
    let rows = array(v, None, path)?;
    let parsed: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| scalars_from_json(r, None, mode, &format!("{path}/{k}")))
        .collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(err(path, "rows of different lengths"));
    }
    Ok(Matrix::from_rows(&parsed, cols))
}

fn signature_to_json(s: &Signature) -> Value {
    json!([s.pos, s.neg, s.zero])
}

fn quadrilateral_to_json(q: &Quadrilateral) -> Value {
    json!({
        "lines": q.lines.iter().map(subspace_to_json).collect::<Vec<_>>(),
        "vertices": q.vertices.iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn classification_to_json(c: &Classification) -> Value {
    let e = &c.evidence;
    let opt = |x: Option<Value>| x.unwrap_or(Value::Null);
    json!({
        "verdict": c.verdict.as_str(),
        "evidence": {
            "signature": opt(e.signature.as_ref().map(signature_to_json)),
            "meet_dim": e.meet_dim,
            "null_lines": e.null_lines.iter().map(subspace_to_json).collect::<Vec<_>>(),
            "lines_exact": e.lines_exact,
            "quadrilateral": opt(e.quadrilateral.as_ref().map(quadrilateral_to_json)),
            "e1": opt(e.e1.as_ref().map(subspace_to_json)),
            "conjugate_pair": opt(e.conjugate_pair.as_ref().map(|(a, b)| json!([subspace_to_json(a), subspace_to_json(b)]))),
            "s_points": opt(e.s_points.as_ref().map(|(a, b)| json!([point_to_json(a), point_to_json(b)]))),
            "handedness": opt(e.handedness.map(|h| json!(h.as_str()))),
            "fiber_image": opt(e.fiber_image.as_ref().map(subspace_to_json)),
        }
    })
}

pub fn dyad_spec_to_json(s: &DyadSpec) -> Value {
    json!({"kind": s.kind.as_str(), "h1": dq_to_json(&s.h1), "h2": dq_to_json(&s.h2)})
}

/// `{"kind": "RR", "h1": [...8], "h2": [...8]}`, or for RP/PR/C
/// `{"kind": "RP", "h": [...8], "p": [...4]}`.
pub fn dyad_spec_from_json(v: &Value, mode: ScalarMode) -> Result<DyadSpec> {
    let kind_txt = field(v, "kind", "")?.as_str().ok_or_else(|| err("/kind", "expected a string"))?;
    let kind = DyadKind::parse(kind_txt).ok_or_else(|| err("/kind", "expected RR, RP, PR or C"))?;
    if kind == DyadKind::RR || v.get("h1").is_some() {
        let h1 = dq_from_json(field(v, "h1", "")?, mode, "/h1")?;
        let h2 = dq_from_json(field(v, "h2", "")?, mode, "/h2")?;
        return Ok(DyadSpec::new(kind, h1, h2));
    }
    let h = dq_from_json(field(v, "h", "")?, mode, "/h")?;
    let p = scalars_from_json(field(v, "p", "")?, Some(4), mode, "/p")?;
    Ok(DyadSpec::with_translation(kind, h, Quaternion::from_slice(&p)))
}

pub fn recovered_axes_to_json(r: &RecoveredAxes) -> Value {
    json!({"spec": dyad_spec_to_json(&r.spec), "base": dq_to_json(&r.base), "normalized": r.normalized})
}

pub fn example2_to_json(r: &Example2Report) -> Value {
    json!({
        "m1_s1_null_in_eps_h": r.m1_s1_null_in_eps_h,
        "n1_s1_conjugate_null_pair": r.n1_s1_conjugate_null_pair,
        "quadric_not_contained": r.quadric_not_contained,
        "samples_on_study_quadric": r.samples_on_study_quadric,
        "all": r.all(),
    })
}

fn curve_to_json(c: &CurveInvariants) -> Value {
    json!({
        "params": scalars_to_json(&c.params),
        "d": c.d.iter().map(dq_to_json).collect::<Vec<_>>(),
        "f": c.f.iter().map(dq_to_json).collect::<Vec<_>>(),
        "on_y": c.on_y,
        "handedness": c.handedness.iter().map(|h| h.as_str()).collect::<Vec<_>>(),
        "coincident": c.coincident,
    })
}

pub fn darboux_report_to_json(r: &DarbouxReport) -> Value {
    json!({
        "a": scalar_to_json(&r.a),
        "b": scalar_to_json(&r.b),
        "c": scalar_to_json(&r.c),
        "p": quaternion_to_json(&r.p),
        "curve": curve_to_json(&r.curve),
        "d_equals_pf": r.d_equals_pf,
        "coincident": r.coincident,
        "vertical": r.vertical,
        "handedness": r.handedness.as_str(),
        "inverse_handedness": r.inverse_handedness.as_str(),
    })
}

pub fn c_space_report_to_json(r: &CSpaceReport) -> Value {
    json!({
        "line": subspace_to_json(&r.line),
        "base": point_to_json(&r.base),
        "space": subspace_to_json(&r.space),
        "verdict": r.verdict.as_str(),
        "exact": r.exact,
        "f": scalar_to_json(&r.f),
        "g1": scalar_to_json(&r.g1),
        "g2": scalar_to_json(&r.g2),
        "e1": subspace_to_json(&r.e1),
        "l1": subspace_to_json(&r.l1),
        "l2": subspace_to_json(&r.l2),
        "s1": point_to_json(&r.s1),
        "s2": point_to_json(&r.s2),
        "memberships": r.memberships,
        "space_matches": r.space_matches,
    })
}

pub fn trajectory_to_json(t: &Trajectory) -> Value {
    json!({
        "degree": t.degree,
        "components": t.components.iter().map(|c| scalars_to_json(c.coeffs())).collect::<Vec<_>>(),
    })
}

pub fn quadric_to_json(q: &QuadricForm) -> Value {
    json!({"label": q.label().to_string(), "gram": matrix_to_json(q.gram())})
}

/// `{"omega": [[..8]..8], "e": [4 points], "f_points": [4 points], "centers": [4 points]}`.
pub fn problem_from_json(v: &Value) -> Result<ReconstructionProblem> {
    let mode = ScalarMode::Gaussian;
    let gram = matrix_from_json(field(v, "omega", "")?, mode, "/omega")?;
    let omega = QuadricForm::new(gram, QuadricLabel::Restricted).map_err(|e| err("/omega", &e.to_string()))?;
    let e = subspace_from_json(field(v, "e", "")?, mode, "/e")?;
    let f = points_from_json(field(v, "f_points", "")?, Some(4), mode, "/f_points")?;
    let c = points_from_json(field(v, "centers", "")?, Some(4), mode, "/centers")?;
    let cycle = ProjectionCycle::new(e, f.try_into().expect("four"), c.try_into().expect("four"))?;
    ReconstructionProblem::new(omega, cycle)
}

pub fn problem_to_json(p: &ReconstructionProblem) -> Value {
    json!({
        "omega": matrix_to_json(p.omega.gram()),
        "e": subspace_to_json(&p.cycle.e),
        "f_points": p.cycle.f_points.iter().map(point_to_json).collect::<Vec<_>>(),
        "centers": p.cycle.centers.iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn reconstruction_to_json(r: &Reconstruction) -> Value {
    let mut m = Map::new();
    m.insert("vertices".into(), Value::Array(r.vertices.iter().map(point_to_json).collect()));
    m.insert("scalars".into(), scalars_to_json(&r.scalars));
    m.insert("x".into(), scalars_to_json(&r.x));
    m.insert("diagonal_conditions".into(), Value::Bool(r.diagonal_conditions));
    m.insert("all_conditions".into(), Value::Bool(r.all_conditions));
    m.insert("incidences".into(), Value::Bool(r.incidences));
    m.insert("projection".into(), Value::Bool(r.projection));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyads::{build_variety, classify};

    #[test]
    fn scalar_modes() {
        let v = json!("1/2+3*i");
        assert_eq!(
            scalar_from_json(&v, ScalarMode::Gaussian, "").unwrap(),
            &Scalar::ratio(1, 2) + &(&Scalar::int(3) * &Scalar::i())
        );
        assert!(scalar_from_json(&v, ScalarMode::Rational, "/x").is_err());
        assert!(!scalar_from_json(&json!(2), ScalarMode::Float(1e-9), "").unwrap().is_exact());
        assert!(matches!(scalar_from_json(&json!(true), ScalarMode::Gaussian, "/a/0"), Err(Error::Parse(m)) if m.starts_with("/a/0")));
    }

    #[test]
    fn points_and_subspaces_round_trip() {
        let q = DualQuaternion::from_ints([1, 0, -2, 0, 0, 3, 0, 1]);
        assert_eq!(dq_from_json(&dq_to_json(&q), ScalarMode::Rational, "").unwrap(), q);
        let u = Subspace::span_dq(&[q, DualQuaternion::basis(6)]);
        assert_eq!(subspace_from_json(&subspace_to_json(&u), ScalarMode::Gaussian, "").unwrap(), u);
    }

    #[test]
    fn classification_serialises() {
        let spec = dyad_spec_from_json(
            &json!({"kind": "RR", "h1": [0,0,0,1,0,0,0,0], "h2": [0,1,0,0,0,0,0,1]}),
            ScalarMode::Rational,
        )
        .unwrap();
        let c = classify(&build_variety(&spec).unwrap().space).unwrap();
        let v = classification_to_json(&c);
        assert_eq!(v["verdict"], "TwoR");
        assert_eq!(v["evidence"]["null_lines"].as_array().unwrap().len(), 4);
        let rp = dyad_spec_from_json(&json!({"kind": "RP", "h": [0,0,0,1,0,0,0,0], "p": [0,1,0,1]}), ScalarMode::Rational)
            .unwrap();
        assert_eq!(rp.h2, DualQuaternion::from_ints([0, 0, 0, 0, 0, 1, 0, 1]));
    }
}
