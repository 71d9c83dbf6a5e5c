//! Unit objects in the plane: disks and regular k-gons whose inscribed circle
//! has radius one, together with the convex distance function they induce.
//!
//! Polygons are stored by their outward unit edge normals. Because the
//! inradius is one, the polygon is exactly `{v : n·v <= 1 for every normal n}`
//! and its gauge (the convex distance from the center) is `max_n n·v`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default membership tolerance for closed objects.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Which family the generator object belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Disk,
    Polygon { k: u32 },
}

/// Closed forms for a regular k-gon with unit inradius.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonParams {
    pub r_out: f64,
    pub side: f64,
    /// Vertex offsets from the center, counterclockwise, bottom edge horizontal.
    pub vertices: Vec<Point>,
}

/// Vertices start at the right end of the bottom edge and run counterclockwise.
pub fn polygon_params(k: u32) -> Result<PolygonParams> {
    if k < 4 {
        return Err(Error::InvalidShape(format!(
            "regular k-gon needs k >= 4, got {k}"
        )));
    }
    let half = PI / k as f64;
    let r_out = 1.0 / half.cos();
    let side = 2.0 * r_out * half.sin();
    let vertices = (0..k)
        .map(|i| Point::from_polar(r_out, -PI / 2.0 + half + 2.0 * half * i as f64))
        .collect();
    Ok(PolygonParams { r_out, side, vertices })
}

/// The generator object σ (or its point reflection −σ).
///
/// Every object in a family is a translate of one `Shape`; the orientation is
/// fixed once and never changes.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    kind: ShapeKind,
    reflected: bool,
    r_out: f64,
    side: Option<f64>,
    vertices: Vec<Point>,
    normals: Vec<Point>,
}

impl Shape {
    pub fn disk() -> Self {
        Shape {
            kind: ShapeKind::Disk,
            reflected: false,
            r_out: 1.0,
            side: None,
            vertices: Vec::new(),
            normals: Vec::new(),
        }
    }

    pub fn polygon(k: u32) -> Result<Self> {
        let params = polygon_params(k)?;
        let step = 2.0 * PI / k as f64;
        let normals = (0..k)
            .map(|i| Point::from_polar(1.0, -PI / 2.0 + step * i as f64))
            .collect();
        Ok(Shape {
            kind: ShapeKind::Polygon { k },
            reflected: false,
            r_out: params.r_out,
            side: Some(params.side),
            vertices: params.vertices,
            normals,
        })
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn k(&self) -> Option<u32> {
        match self.kind {
            ShapeKind::Disk => None,
            ShapeKind::Polygon { k } => Some(k),
        }
    }

    pub fn is_disk(&self) -> bool {
        self.kind == ShapeKind::Disk
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    pub fn r_in(&self) -> f64 {
        1.0
    }

    pub fn r_out(&self) -> f64 {
        self.r_out
    }

    pub fn side(&self) -> Option<f64> {
        self.side
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Outward unit normals, edge `i` running from vertex `i` to vertex `i + 1`.
    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    /// Edges as `(start, end)` offsets from the center.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Point reflection through the center.
    pub fn reflect(&self) -> Shape {
        Shape {
            kind: self.kind,
            reflected: !self.reflected,
            r_out: self.r_out,
            side: self.side,
            vertices: self.vertices.iter().map(|&v| -v).collect(),
            normals: self.normals.iter().map(|&n| -n).collect(),
        }
    }

    /// Whether the reflected shape coincides with this one as a point set.
    pub fn is_centrally_symmetric(&self) -> bool {
        match self.kind {
            ShapeKind::Disk => true,
            ShapeKind::Polygon { k } => k % 2 == 0,
        }
    }

    /// Gauge of the shape: the smallest λ with `v ∈ λσ`.
    pub fn gauge(&self, v: Point) -> f64 {
        match self.kind {
            ShapeKind::Disk => v.norm(),
            ShapeKind::Polygon { .. } => self
                .normals
                .iter()
                .map(|n| n.dot(v))
                .fold(f64::NEG_INFINITY, f64::max)
                .max(0.0),
        }
    }

    /// Distance from the center to the boundary along `direction`.
    pub fn support_radius(&self, direction: Point) -> Result<f64> {
        let u = direction
            .normalized()
            .ok_or_else(|| Error::InvalidArgument("zero direction vector".into()))?;
        Ok(1.0 / self.gauge(u))
    }

    /// `d_σ(from, to)`: the scale of σ centered at `from` that reaches `to`.
    pub fn convex_distance(&self, from: Point, to: Point) -> f64 {
        self.gauge(to - from)
    }

    /// Axis-aligned half extents of the shape around its center.
    pub fn half_extents(&self) -> (f64, f64) {
        match self.kind {
            ShapeKind::Disk => (1.0, 1.0),
            ShapeKind::Polygon { .. } => {
                let hx = self.vertices.iter().map(|v| v.x.abs()).fold(0.0, f64::max);
                let hy = self.vertices.iter().map(|v| v.y.abs()).fold(0.0, f64::max);
                (hx, hy)
            }
        }
    }

    pub fn at(&self, center: Point) -> PlacedObject {
        PlacedObject { shape: self.clone(), center }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.reflected { "-" } else { "" };
        match self.kind {
            ShapeKind::Disk => write!(f, "{sign}disk"),
            ShapeKind::Polygon { k } => write!(f, "{sign}{k}-gon"),
        }
    }
}

/// A translate `σ(c)` of the generator object.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedObject {
    pub shape: Shape,
    pub center: Point,
}

impl PlacedObject {
    pub fn new(shape: Shape, center: Point) -> Self {
        PlacedObject { shape, center }
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        self.shape.convex_distance(self.center, p)
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance_to(p) <= 1.0 + tol
    }

    /// World-space vertices (empty for disks).
    pub fn vertices(&self) -> Vec<Point> {
        self.shape.vertices().iter().map(|&v| self.center + v).collect()
    }
}

pub fn contains(obj: &PlacedObject, p: Point, tol: f64) -> bool {
    obj.contains(p, tol)
}

/// One connected component of `∂a ∩ ∂b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryComponent {
    pub representative: Point,
    /// Ends of the longest shared boundary piece; equal for isolated crossings.
    pub start: Point,
    pub end: Point,
    /// Length of the shared boundary piece; zero for isolated crossings.
    pub length: f64,
}

impl BoundaryComponent {
    fn point(p: Point) -> Self {
        BoundaryComponent { representative: p, start: p, end: p, length: 0.0 }
    }
}

/// Connected components of the intersection of two boundaries.
pub fn boundary_components(
    a: &PlacedObject,
    b: &PlacedObject,
    tol: f64,
) -> Result<Vec<BoundaryComponent>> {
    if a.shape != b.shape {
        return Err(Error::InvalidArgument(
            "objects are not translates of the same shape".into(),
        ));
    }
    if a.center.dist(b.center) <= tol {
        return Err(Error::DegeneratePair);
    }
    match a.shape.kind() {
        ShapeKind::Disk => Ok(circle_components(a.center, b.center, tol)),
        ShapeKind::Polygon { .. } => Ok(polygon_components(a, b, tol)),
    }
}

fn circle_components(ca: Point, cb: Point, tol: f64) -> Vec<BoundaryComponent> {
    let d = ca.dist(cb);
    let mid = ca.lerp(cb, 0.5);
    if d > 2.0 + tol {
        return Vec::new();
    }
    if (d - 2.0).abs() <= tol {
        return vec![BoundaryComponent::point(mid)];
    }
    let h = (1.0 - d * d / 4.0).sqrt();
    let off = (cb - ca).perp() * (h / d);
    vec![
        BoundaryComponent::point(mid + off),
        BoundaryComponent::point(mid - off),
    ]
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: Point,
    b: Point,
}

impl Piece {
    fn len(&self) -> f64 {
        self.a.dist(self.b)
    }
}

fn polygon_components(pa: &PlacedObject, pb: &PlacedObject, tol: f64) -> Vec<BoundaryComponent> {
    let va = pa.vertices();
    let vb = pb.vertices();
    let n = va.len();
    let m = vb.len();
    let mut pieces = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if let Some(p) = segment_intersection(va[i], va[(i + 1) % n], vb[j], vb[(j + 1) % m], tol)
            {
                pieces.push(p);
            }
        }
    }

    // union-find over pieces that touch
    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (p, q) = (pieces[i], pieces[j]);
            if segment_distance(p.a, p.b, q.a, q.b) <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                }
            }
        }
    }

    let mut groups: Vec<(usize, Vec<Piece>)> = Vec::new();
    for i in 0..pieces.len() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(pieces[i]),
            None => groups.push((r, vec![pieces[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| {
            let longest = g
                .iter()
                .copied()
                .max_by(|x, y| x.len().total_cmp(&y.len()))
                .expect("non-empty group");
            if longest.len() > tol {
                BoundaryComponent {
                    representative: longest.a.lerp(longest.b, 0.5),
                    start: longest.a,
                    end: longest.b,
                    length: longest.len(),
                }
            } else {
                BoundaryComponent::point(longest.a.lerp(longest.b, 0.5))
            }
        })
        .collect()
}

/// Intersection of two closed segments, as a (possibly degenerate) piece.
fn segment_intersection(p0: Point, p1: Point, q0: Point, q1: Point, tol: f64) -> Option<Piece> {
    let d = p1 - p0;
    let e = q1 - q0;
    let denom = d.cross(e);
    let scale = d.norm() * e.norm();
    if denom.abs() <= 1e-12 * scale {
        // parallel: only collinear overlaps matter
        let len = d.norm();
        let u = d * (1.0 / len);
        if u.cross(q0 - p0).abs() > tol {
            return None;
        }
        let s0 = u.dot(q0 - p0);
        let s1 = u.dot(q1 - p0);
        let lo = s0.min(s1).max(0.0);
        let hi = s0.max(s1).min(len);
        if lo > hi + tol {
            return None;
        }
        let (lo, hi) = if lo > hi { (hi, hi) } else { (lo, hi) };
        return Some(Piece { a: p0 + u * lo, b: p0 + u * hi });
    }
    let w = q0 - p0;
    let s = w.cross(e) / denom;
    let t = w.cross(d) / denom;
    let es = tol / d.norm();
    let et = tol / e.norm();
    if s < -es || s > 1.0 + es || t < -et || t > 1.0 + et {
        return None;
    }
    let x = p0 + d * s.clamp(0.0, 1.0);
    Some(Piece { a: x, b: x })
}

pub(crate) fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let l2 = d.dot(d);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / l2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

fn segment_distance(a0: Point, a1: Point, b0: Point, b1: Point) -> f64 {
    let d = a1 - a0;
    let e = b1 - b0;
    let denom = d.cross(e);
    if denom != 0.0 {
        let w = b0 - a0;
        let s = w.cross(e) / denom;
        let t = w.cross(d) / denom;
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            return 0.0;
        }
    }
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

/// Angle `∠xpy` in `[0, π]`.
pub fn angle_at(p: Point, x: Point, y: Point) -> f64 {
    let u = x - p;
    let v = y - p;
    u.cross(v).abs().atan2(u.dot(v))
}
