//! Body files (format version 1) and the JSON writer shared by all reports.
//!
//! Every float is written with 17 significant digits so that reading a file
//! back reproduces the stored bits.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::bodies::{self, BallBody, Shape, SphericalBody};
use crate::constructors::ConstructorSpec;
use crate::error::{Error, Result};
use crate::sphere::{Angle, UnitPoint};

pub const FORMAT_VERSION: i64 = 1;

struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }
}

/// Compact JSON with 17-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvariantViolation(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct BodyFile<'a> {
    format_version: i64,
    dim: usize,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<&'a [UnitPoint]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<&'a UnitPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constructor: Option<&'a ConstructorSpec>,
}

pub fn body_to_json(c: &SphericalBody) -> Result<String> {
    let mut file = BodyFile {
        format_version: FORMAT_VERSION,
        dim: c.dim(),
        kind: "polytope",
        vertices: None,
        center: None,
        radius: None,
        constructor: c.constructor(),
    };
    match c.shape() {
        Shape::Polytope(p) => file.vertices = Some(p.vertices()),
        Shape::Ball(b) => {
            file.kind = "ball";
            file.center = Some(&b.center);
            file.radius = Some(b.radius.radians());
        }
    }
    to_json(&file)
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::SchemaError {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn point_at(v: &Value, pointer: &str, dim: usize) -> Result<UnitPoint> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(pointer, "expected an array of numbers"))?;
    if arr.len() != dim + 1 {
        return Err(schema(
            pointer,
            format!("expected {} coordinates, got {}", dim + 1, arr.len()),
        ));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_f64()
                .ok_or_else(|| schema(format!("{pointer}/{i}"), "expected a number"))
        })
        .collect::<Result<Vec<f64>>>()?;
    UnitPoint::try_from(coords).map_err(|e| schema(pointer, e.to_string()))
}

pub fn body_from_json(text: &str) -> Result<SphericalBody> {
    let root: Value = serde_json::from_str(text).map_err(|e| schema("", e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("", "expected an object"))?;

    let version = obj
        .get("format_version")
        .ok_or_else(|| schema("/format_version", "missing"))?;
    match version.as_i64() {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(Error::VersionMismatch(v)),
        None => return Err(schema("/format_version", "expected an integer")),
    }

    let dim = obj
        .get("dim")
        .ok_or_else(|| schema("/dim", "missing"))?
        .as_u64()
        .ok_or_else(|| schema("/dim", "expected a non-negative integer"))?;
    let dim = usize::try_from(dim).map_err(|_| schema("/dim", "too large"))?;
    if dim < 2 {
        return Err(schema("/dim", "need dim >= 2"));
    }

    let constructor = match obj.get("constructor") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value::<ConstructorSpec>(v.clone())
                .map_err(|e| schema("/constructor", e.to_string()))?,
        ),
    };

    let kind = obj
        .get("kind")
        .ok_or_else(|| schema("/kind", "missing"))?
        .as_str()
        .ok_or_else(|| schema("/kind", "expected a string"))?;
    let body = match kind {
        "polytope" => {
            let verts = obj
                .get("vertices")
                .ok_or_else(|| schema("/vertices", "missing"))?
                .as_array()
                .ok_or_else(|| schema("/vertices", "expected an array"))?;
            let pts = verts
                .iter()
                .enumerate()
                .map(|(i, v)| point_at(v, &format!("/vertices/{i}"), dim))
                .collect::<Result<Vec<_>>>()?;
            SphericalBody::polytope(bodies::polytope_from_points(dim, &pts)?)
        }
        "ball" => {
            let center = point_at(
                obj.get("center")
                    .ok_or_else(|| schema("/center", "missing"))?,
                "/center",
                dim,
            )?;
            let radius = obj
                .get("radius")
                .ok_or_else(|| schema("/radius", "missing"))?
                .as_f64()
                .ok_or_else(|| schema("/radius", "expected a number"))?;
            let radius = Angle::new(radius).map_err(|e| schema("/radius", e.to_string()))?;
            SphericalBody::ball(BallBody::new(center, radius)?)
        }
        other => {
            return Err(schema(
                "/kind",
                format!("expected \"polytope\" or \"ball\", got {other:?}"),
            ))
        }
    };

    let Some(spec) = constructor else {
        return Ok(body);
    };
    if spec.dim != dim {
        return Err(schema(
            "/constructor/dim",
            format!("constructor dim {} differs from body dim {dim}", spec.dim),
        ));
    }
    let body = match spec.exact_boundary()? {
        Some(exact) => body.with_exact(exact),
        None => body,
    };
    Ok(body.with_constructor(spec))
}

pub fn read_body(path: &Path) -> Result<SphericalBody> {
    body_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_body(c: &SphericalBody, path: &Path) -> Result<()> {
    let mut text = body_to_json(c)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{ball_body, orthant_body, reuleaux_odd_gon};

    #[test]
    fn orthant_round_trip() {
        let c = orthant_body(2).unwrap();
        let text = body_to_json(&c).unwrap();
        assert!(text.starts_with(r#"{"format_version":1,"dim":2,"kind":"polytope","vertices":"#));
        let back = body_from_json(&text).unwrap();
        assert_eq!(
            back.as_polytope().unwrap().vertices(),
            c.as_polytope().unwrap().vertices()
        );
        assert_eq!(body_to_json(&back).unwrap(), text);
    }

    #[test]
    fn floats_keep_their_bits() {
        let x = [0.1, 1.0 / 3.0, std::f64::consts::PI, 5e-324, -2.5e300];
        let text = to_json(&x[..]).unwrap();
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(to_json(&1.0).unwrap(), "1.0000000000000000e0");
    }

    #[test]
    fn ball_and_constructor_survive() {
        let c = ball_body(UnitPoint::basis(3, 1), Angle::new(0.5).unwrap()).unwrap();
        let back = body_from_json(&body_to_json(&c).unwrap()).unwrap();
        assert_eq!(back.as_ball(), c.as_ball());
        assert_eq!(back.constructor(), c.constructor());

        let r = reuleaux_odd_gon(3, Angle::new(1.0).unwrap(), 60, 2).unwrap();
        let back = body_from_json(&body_to_json(&r).unwrap()).unwrap();
        assert!(back.exact().is_some());
        assert_eq!(back.constructor(), r.constructor());
    }

    #[test]
    fn schema_errors_point_at_the_field() {
        let bad = r#"{"format_version":1,"dim":"two","kind":"polytope","vertices":[]}"#;
        match body_from_json(bad) {
            Err(Error::SchemaError { pointer, .. }) => assert_eq!(pointer, "/dim"),
            other => panic!("{other:?}"),
        }
        let bad =
            r#"{"format_version":1,"dim":2,"kind":"polytope","vertices":[[1,0,0],[0,"x",0]]}"#;
        match body_from_json(bad) {
            Err(Error::SchemaError { pointer, .. }) => assert_eq!(pointer, "/vertices/1/1"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"format_version":99,"dim":"two"}"#;
        assert_eq!(body_from_json(bad).unwrap_err(), Error::VersionMismatch(99));
    }
}
