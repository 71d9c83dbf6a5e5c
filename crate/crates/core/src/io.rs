//! File formats.
//!
//! Instance: `{"shape": {"kind": "disk"} | {"kind": "kgon", "k": K}, "points": [[x, y], ...]}`.
//! A shape may carry `"reflected": true`, which dual instances of odd k-gons need.
//! Stream: one `{"center": [x, y]}` per line; blank lines are skipped.

use serde::{Deserialize, Serialize};

use crate::geometry::{PlacedObject, Point, Shape, ShapeKind};
use crate::{Error, Result};

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShapeSpec {
    Disk {
        #[serde(default, skip_serializing_if = "is_false")]
        reflected: bool,
    },
    Kgon {
        k: u32,
        #[serde(default, skip_serializing_if = "is_false")]
        reflected: bool,
    },
}

impl ShapeSpec {
    pub fn to_shape(self) -> Result<Shape> {
        let (shape, reflected) = match self {
            ShapeSpec::Disk { reflected } => (Shape::disk(), reflected),
            ShapeSpec::Kgon { k, reflected } => (Shape::polygon(k)?, reflected),
        };
        Ok(if reflected { shape.reflect() } else { shape })
    }
}

impl From<&Shape> for ShapeSpec {
    fn from(s: &Shape) -> Self {
        let reflected = s.is_reflected();
        match s.kind() {
            ShapeKind::Disk => ShapeSpec::Disk { reflected },
            ShapeKind::Polygon { k } => ShapeSpec::Kgon { k, reflected },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    shape: ShapeSpec,
    points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StreamLine {
    center: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub shape: Shape,
    pub points: Vec<Point>,
}

fn to_point(xy: [f64; 2]) -> Point {
    Point::new(xy[0], xy[1])
}

fn to_pair(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn parse_error(line: usize, e: impl std::fmt::Display) -> Error {
    Error::Parse { line, message: e.to_string() }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e))?;
    let shape = file.shape.to_shape().map_err(|e| parse_error(1, e))?;
    let mut points = Vec::with_capacity(file.points.len());
    for (i, xy) in file.points.into_iter().enumerate() {
        let p = to_point(xy);
        if !p.is_finite() {
            return Err(Error::InvalidInput(format!("point {i} is not finite")));
        }
        points.push(p);
    }
    Ok(Instance { shape, points })
}

pub fn write_instance(shape: &Shape, points: &[Point]) -> String {
    let file = InstanceFile { shape: shape.into(), points: points.iter().map(|&p| to_pair(p)).collect() };
    let mut s = serde_json::to_string(&file).expect("instance serializes");
    s.push('\n');
    s
}

/// Object centers, in arrival order.
pub fn parse_stream(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let obj: StreamLine = serde_json::from_str(line).map_err(|e| parse_error(i + 1, e))?;
        let c = to_point(obj.center);
        if !c.is_finite() {
            return Err(parse_error(i + 1, "center is not finite"));
        }
        out.push(c);
    }
    Ok(out)
}

pub fn write_stream(centers: &[Point]) -> String {
    let mut s = String::new();
    for &c in centers {
        s.push_str(&serde_json::to_string(&StreamLine { center: to_pair(c) }).expect("line serializes"));
        s.push('\n');
    }
    s
}

pub fn objects_from_centers(shape: &Shape, centers: &[Point]) -> Vec<PlacedObject> {
    centers.iter().map(|&c| shape.at(c)).collect()
}
