//! JSON file formats shared by the command-line tool and the browser demo.
//!
//! * points: `[[x, y], ...]`
//! * mesh: `{"vertices": [[x, y], ...], "triangles": [[a, b, c], ...], "uv": [[u, v], ...]}`
//! * probes: `[{"id": 0, "initial": {"center": [x, y], "angle": r}, "current": {...}}, ...]`
//! * weights: `[[w_00, w_01, ...], ...]`, one row per probe, one column per vertex
//! * blend input: `{"dcns": [[p0.re, p0.im, p1.re, p1.im], ...], "weights": [w, ...]}`

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::dcn::{Point2, UnitDcn};
use crate::deform::{DeformError, Mesh, Probe, WeightField};
use crate::error::DcnError;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{kind} {index}: {message}")]
    Record {
        kind: &'static str,
        index: usize,
        message: String,
    },
    #[error(transparent)]
    Deform(#[from] DeformError),
}

fn record(kind: &'static str, index: usize, message: impl Into<String>) -> FormatError {
    FormatError::Record {
        kind,
        index,
        message: message.into(),
    }
}

fn floats<const N: usize>(v: &Value) -> Option<[f64; N]> {
    let a = v.as_array()?;
    if a.len() != N {
        return None;
    }
    let mut out = [0.0; N];
    for (o, x) in out.iter_mut().zip(a) {
        *o = x.as_f64().filter(|f| f.is_finite())?;
    }
    Some(out)
}

fn records(text: &str, kind: &'static str) -> Result<Vec<Value>, FormatError> {
    match serde_json::from_str::<Value>(text)? {
        Value::Array(items) => Ok(items),
        _ => Err(record(kind, 0, "expected a JSON array at the top level")),
    }
}

pub fn parse_points(text: &str) -> Result<Vec<Point2>, FormatError> {
    records(text, "point")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            floats::<2>(v)
                .map(Point2::from)
                .ok_or_else(|| record("point", i, format!("expected [x, y] with finite numbers, got {v}")))
        })
        .collect()
}

pub fn parse_dcns(text: &str) -> Result<Vec<UnitDcn>, FormatError> {
    records(text, "dcn")?
        .iter()
        .enumerate()
        .map(|(i, v)| dcn_from_value(v).map_err(|m| record("dcn", i, m)))
        .collect()
}

fn dcn_from_value(v: &Value) -> Result<UnitDcn, String> {
    let a =
        floats::<4>(v).ok_or_else(|| format!("expected [p0.re, p0.im, p1.re, p1.im] with finite numbers, got {v}"))?;
    unit_from_array(a).map_err(|e| e.to_string())
}

/// Normalizes any nonsingular 4-tuple into a unit DCN.
pub fn unit_from_array(a: [f64; 4]) -> Result<UnitDcn, DcnError> {
    crate::Dcn::from_array(a)?.normalize()
}

pub fn parse_mesh(text: &str) -> Result<Mesh, FormatError> {
    let mesh: Mesh = serde_json::from_str(text)?;
    mesh.validate()?;
    Ok(mesh)
}

pub fn parse_probes(text: &str) -> Result<Vec<Probe>, FormatError> {
    records(text, "probe")?
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let p: Probe = serde_json::from_value(v).map_err(|e| record("probe", i, e.to_string()))?;
            if p.is_finite() {
                Ok(p)
            } else {
                Err(record("probe", i, "pose is not finite"))
            }
        })
        .collect()
}

pub fn parse_weights(text: &str) -> Result<WeightField, FormatError> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text)?;
    Ok(WeightField::from_rows(&rows)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlendInput {
    pub dcns: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
}

pub fn parse_blend(text: &str) -> Result<(Vec<UnitDcn>, Vec<f64>), FormatError> {
    let input: BlendInput = serde_json::from_str(text)?;
    let dcns = input
        .dcns
        .iter()
        .enumerate()
        .map(|(i, &a)| unit_from_array(a).map_err(|e| record("dcn", i, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(i) = input.weights.iter().position(|w| !w.is_finite()) {
        return Err(record("weight", i, "not finite"));
    }
    Ok((dcns, input.weights))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}

pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_errors_name_the_record() {
        assert_eq!(parse_points("[[1, 2], [3.5, -4]]").unwrap()[1], Point2::new(3.5, -4.0));
        let err = parse_points("[[1, 2], [3], [4, 5]]").unwrap_err();
        assert!(err.to_string().starts_with("point 1:"), "{err}");
        assert!(matches!(parse_points("[[1, 2"), Err(FormatError::Json(_))));
        assert!(parse_points("{\"x\": 1}").is_err());
    }

    #[test]
    fn mesh_round_trip() {
        let mesh = Mesh::grid(3, 2, crate::deform::Rect::new(0.0, 0.0, 1.0, 2.0)).unwrap();
        let text = to_json(&mesh);
        assert!(text.starts_with("{\"vertices\":[[0.0,0.0],"));
        assert_eq!(parse_mesh(&text).unwrap(), mesh);
        let broken = text.replace("[0,1,3]", "[0,1,30]");
        assert!(matches!(parse_mesh(&broken), Err(FormatError::Deform(_))));
    }

    #[test]
    fn probes_schema() {
        let text = r#"[{"id": 3, "initial": {"center": [1, 2], "angle": 0},
                       "current": {"center": [2, 2], "angle": 0.5}}]"#;
        let probes = parse_probes(text).unwrap();
        assert_eq!(probes[0].id, 3);
        assert_eq!(probes[0].current.center, Point2::new(2.0, 2.0));
        let err = parse_probes(r#"[{"id": 1}]"#).unwrap_err();
        assert!(err.to_string().starts_with("probe 0:"), "{err}");
    }

    #[test]
    fn weights_schema() {
        let w = parse_weights("[[1, 0.5], [0, 0.5]]").unwrap();
        assert_eq!((w.probes(), w.vertices()), (2, 2));
        assert!(parse_weights("[[1, -0.5], [0, 0.5]]").is_err());
    }

    #[test]
    fn blend_schema() {
        let (dcns, ws) = parse_blend(r#"{"dcns": [[2, 0, 0, 0], [1, 0, 1, 0]], "weights": [0.5, 0.5]}"#).unwrap();
        assert_eq!(dcns[0], UnitDcn::IDENTITY);
        assert_eq!(ws, vec![0.5, 0.5]);
        let err = parse_blend(r#"{"dcns": [[0, 0, 1, 0]], "weights": [1]}"#).unwrap_err();
        assert!(err.to_string().contains("SingularDcn"), "{err}");
    }
}
