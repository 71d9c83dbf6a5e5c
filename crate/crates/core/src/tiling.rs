//! Square tiling of the plane, super-squares around tiles, the four
//! quadrant centers of a super-square and the cones they span over a tile.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{PlacedObject, Point, Shape, ShapeKind};
use crate::{Error, Result};

/// Per-shape constants of the tiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TilingParams {
    /// Side length of a tile.
    pub tile_side: f64,
    /// Side length of the super-square around a tile.
    pub super_side: f64,
    /// Upper bound on the number of tiles one translate can meet.
    pub max_tiles: u32,
}

impl TilingParams {
    pub fn for_shape(shape: &Shape) -> Self {
        match shape.kind() {
            ShapeKind::Disk => TilingParams { tile_side: 0.75, super_side: 2.75, max_tiles: 14 },
            ShapeKind::Polygon { k } => {
                let c = (PI / k as f64).cos();
                match k {
                    4 => TilingParams { tile_side: 0.5, super_side: 2.5, max_tiles: 25 },
                    5 | 6 => TilingParams { tile_side: 0.25, super_side: 9.0 / (4.0 * c), max_tiles: 119 },
                    _ => TilingParams { tile_side: 0.5, super_side: 5.0 / (2.0 * c), max_tiles: 34 },
                }
            }
        }
    }
}

/// Integer address of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileId {
    pub i: i64,
    pub j: i64,
}

impl TileId {
    pub const fn new(i: i64, j: i64) -> Self {
        TileId { i, j }
    }
}

impl fmt::Display for TileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.i, self.j)
    }
}

/// Quadrant of a super-square, numbered in the fixed order used when the
/// smallest quadrant index is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    UpperLeft = 1,
    UpperRight = 2,
    LowerLeft = 3,
    LowerRight = 4,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::UpperLeft,
        Quadrant::UpperRight,
        Quadrant::LowerLeft,
        Quadrant::LowerRight,
    ];

    /// 1-based index.
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(tau: u8) -> Option<Quadrant> {
        Quadrant::ALL.get((tau as usize).wrapping_sub(1)).copied()
    }

    fn signs(self) -> (f64, f64) {
        match self {
            Quadrant::UpperLeft => (-1.0, 1.0),
            Quadrant::UpperRight => (1.0, 1.0),
            Quadrant::LowerLeft => (-1.0, -1.0),
            Quadrant::LowerRight => (1.0, -1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub tile_side: f64,
    pub offset: Point,
    pub params: TilingParams,
}

impl Grid {
    pub fn new(shape: &Shape, offset: Point) -> Self {
        let params = TilingParams::for_shape(shape);
        Grid { tile_side: params.tile_side, offset, params }
    }

    pub fn tile_of(&self, p: Point) -> TileId {
        TileId::new(
            ((p.x - self.offset.x) / self.tile_side).floor() as i64,
            ((p.y - self.offset.y) / self.tile_side).floor() as i64,
        )
    }

    /// Lower-left corner of a tile.
    pub fn tile_origin(&self, t: TileId) -> Point {
        Point::new(
            self.offset.x + t.i as f64 * self.tile_side,
            self.offset.y + t.j as f64 * self.tile_side,
        )
    }

    pub fn tile_center(&self, t: TileId) -> Point {
        self.tile_origin(t) + Point::new(0.5, 0.5) * self.tile_side
    }

    /// Corners counterclockwise from the lower-left one.
    pub fn tile_corners(&self, t: TileId) -> [Point; 4] {
        let o = self.tile_origin(t);
        let l = self.tile_side;
        [o, o + Point::new(l, 0.0), o + Point::new(l, l), o + Point::new(0.0, l)]
    }

    /// Euclidean distance from `p` to the nearest grid line.
    pub fn clearance(&self, p: Point) -> f64 {
        let l = self.tile_side;
        let fx = (p.x - self.offset.x).rem_euclid(l);
        let fy = (p.y - self.offset.y).rem_euclid(l);
        fx.min(l - fx).min(fy).min(l - fy)
    }

    pub fn super_square(&self, t: TileId) -> SuperSquare {
        let c = self.tile_center(t);
        let q = self.params.super_side / 4.0;
        let centers = Quadrant::ALL.map(|tau| {
            let (sx, sy) = tau.signs();
            c + Point::new(sx * q, sy * q)
        });
        SuperSquare { tile: t, side: self.params.super_side, quadrant_centers: centers }
    }

    pub fn quadrant_center(&self, t: TileId, tau: Quadrant) -> Point {
        self.super_square(t).quadrant_centers[tau.index() as usize - 1]
    }
}

/// Concentric square of side `t_σ` holding every center of a translate that
/// meets the tile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperSquare {
    pub tile: TileId,
    pub side: f64,
    /// Indexed by `Quadrant::index() - 1`.
    pub quadrant_centers: [Point; 4],
}

/// Places grid lines in the middle of the widest empty band of coordinates
/// (taken modulo the tile side) on each axis.
pub fn build_grid(points: &[Point], shape: &Shape) -> Result<Grid> {
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite point {p}")));
    }
    let l = TilingParams::for_shape(shape).tile_side;
    let ox = widest_gap_midpoint(points.iter().map(|p| p.x), l);
    let oy = widest_gap_midpoint(points.iter().map(|p| p.y), l);
    Ok(Grid::new(shape, Point::new(ox, oy)))
}

fn widest_gap_midpoint(coords: impl Iterator<Item = f64>, l: f64) -> f64 {
    let mut r: Vec<f64> = coords.map(|c| c.rem_euclid(l)).map(|c| if c >= l { 0.0 } else { c }).collect();
    if r.is_empty() {
        return 0.0;
    }
    r.sort_by(f64::total_cmp);
    r.dedup();
    // wrap-around gap first so ties keep the lowest start
    let mut best_start = r[r.len() - 1];
    let mut best_gap = r[0] + l - r[r.len() - 1];
    for w in r.windows(2) {
        let g = w[1] - w[0];
        if g > best_gap {
            best_gap = g;
            best_start = w[0];
        }
    }
    (best_start + best_gap / 2.0).rem_euclid(l)
}

pub fn tile_of(grid: &Grid, p: Point) -> TileId {
    grid.tile_of(p)
}

/// Tiles whose square shares a region of positive area with the object.
pub fn tiles_intersected(grid: &Grid, obj: &PlacedObject) -> Vec<TileId> {
    let (hx, hy) = obj.shape.half_extents();
    let lo = grid.tile_of(obj.center - Point::new(hx, hy));
    let hi = grid.tile_of(obj.center + Point::new(hx, hy));
    let mut out = Vec::new();
    for i in lo.i - 1..=hi.i + 1 {
        for j in lo.j - 1..=hi.j + 1 {
            let t = TileId::new(i, j);
            if overlaps_tile(grid, t, obj) {
                out.push(t);
            }
        }
    }
    out
}

/// Overlaps thinner than this count as touching only, so that rounding in
/// the polygon vertices does not create sliver overlaps.
pub const OVERLAP_EPS: f64 = 1e-12;

/// Positive-area overlap between a tile and an object.
pub fn overlaps_tile(grid: &Grid, t: TileId, obj: &PlacedObject) -> bool {
    let lo = grid.tile_origin(t);
    let hi = lo + Point::new(grid.tile_side, grid.tile_side);
    match obj.shape.kind() {
        ShapeKind::Disk => {
            let q = Point::new(obj.center.x.clamp(lo.x, hi.x), obj.center.y.clamp(lo.y, hi.y));
            q.dist(obj.center) < 1.0 - OVERLAP_EPS
        }
        ShapeKind::Polygon { .. } => {
            let poly = obj.vertices();
            let square = [lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)];
            let axes = obj
                .shape
                .normals()
                .iter()
                .copied()
                .chain([Point::new(1.0, 0.0), Point::new(0.0, 1.0)]);
            for axis in axes {
                let (a0, a1) = project(&poly, axis);
                let (b0, b1) = project(&square, axis);
                if a1 <= b0 + OVERLAP_EPS || b1 <= a0 + OVERLAP_EPS {
                    return false;
                }
            }
            true
        }
    }
}

fn project(pts: &[Point], axis: Point) -> (f64, f64) {
    pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = p.dot(axis);
        (lo.min(d), hi.max(d))
    })
}

pub fn quadrant_centers(grid: &Grid, t: TileId) -> [Point; 4] {
    grid.super_square(t).quadrant_centers
}

/// Smallest quadrant index whose center lies in the object.
pub fn tau_of(grid: &Grid, t: TileId, obj: &PlacedObject, tol: f64) -> Result<Quadrant> {
    let centers = quadrant_centers(grid, t);
    Quadrant::ALL
        .into_iter()
        .find(|tau| obj.contains(centers[tau.index() as usize - 1], tol))
        .ok_or_else(|| {
            Error::BrokenInvariant(format!(
                "object at {} holds no quadrant center of tile {t}",
                obj.center
            ))
        })
}

/// Convex cone with apex at a quadrant center spanned by a tile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    pub apex: Point,
    /// Unit direction of the clockwise-most bounding ray.
    pub right: Point,
    /// Unit direction of the counterclockwise-most bounding ray.
    pub left: Point,
}

impl Cone {
    pub fn opening_angle(&self) -> f64 {
        self.right.cross(self.left).atan2(self.right.dot(self.left))
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let v = p - self.apex;
        self.right.cross(v) >= -tol && v.cross(self.left) >= -tol
    }

    /// Whether the closed segment `[a, b]` meets the closed cone.
    pub fn meets_segment(&self, a: Point, b: Point, tol: f64) -> bool {
        // clip t ∈ [0,1] against the two bounding half-planes
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let d = b - a;
        for (f0, f1) in [
            (self.right.cross(a - self.apex), self.right.cross(d)),
            ((a - self.apex).cross(self.left), d.cross(self.left)),
        ] {
            // f0 + t·f1 >= -tol
            if f1.abs() < 1e-300 {
                if f0 < -tol {
                    return false;
                }
            } else if f1 > 0.0 {
                lo = lo.max((-tol - f0) / f1);
            } else {
                hi = hi.min((-tol - f0) / f1);
            }
        }
        lo <= hi
    }
}

pub fn cone_of(grid: &Grid, t: TileId, tau: Quadrant) -> Cone {
    let apex = grid.quadrant_center(t, tau);
    let axis = (grid.tile_center(t) - apex).normalized().expect("apex off the tile center");
    let mut right = (f64::INFINITY, axis);
    let mut left = (f64::NEG_INFINITY, axis);
    for c in grid.tile_corners(t) {
        let v = (c - apex).normalized().expect("apex off the tile");
        let ang = axis.cross(v).atan2(axis.dot(v));
        if ang < right.0 {
            right = (ang, v);
        }
        if ang > left.0 {
            left = (ang, v);
        }
    }
    Cone { apex, right: right.1, left: left.1 }
}
