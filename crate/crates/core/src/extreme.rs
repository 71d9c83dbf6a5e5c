//! Extreme points of a tile: the points that some unit translate holding a
//! given quadrant center touches on its boundary while holding no other point
//! of the tile.
//!
//! A point `p` is extreme for quadrant `τ` when some center `c` on the locus
//! `∂(−σ)(p)` (centers whose translate has `p` on its boundary) lies in
//! `(−σ)(o_τ)` and strictly inside the convex-distance Voronoi cell of `p`.
//! The locus is clipped analytically against `(−σ)(o_τ)`; the Voronoi test is
//! then searched by uniform sampling along each clipped piece, with a
//! golden-section refinement around every promising sample.

use std::f64::consts::PI;

use crate::geometry::{Point, Shape, ShapeKind};
use crate::tiling::{Grid, Quadrant, TileId};
use crate::{Error, Result};

/// Strict-interior margin for Voronoi cell membership.
pub const CELL_MARGIN: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 4096;
/// Smallest gap allowed between consecutive angles of an extreme structure.
pub const THETA_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremeConfig {
    /// Samples per clipped locus piece.
    pub samples: usize,
    pub cell_margin: f64,
}

impl Default for ExtremeConfig {
    fn default() -> Self {
        ExtremeConfig { samples: DEFAULT_SAMPLES, cell_margin: CELL_MARGIN }
    }
}

/// Whether `c` lies strictly inside the Voronoi cell of `p` against `others`.
pub fn in_strict_cell(c: Point, p: Point, others: &[Point], shape: &Shape) -> bool {
    in_strict_cell_with(c, p, others, shape, CELL_MARGIN)
}

pub fn in_strict_cell_with(c: Point, p: Point, others: &[Point], shape: &Shape, margin: f64) -> bool {
    let dp = shape.convex_distance(c, p);
    others.iter().all(|&q| dp < shape.convex_distance(c, q) - margin)
}

/// Direction angle of `p` seen from `o`, in `[0, 2π)`.
pub fn theta(o: Point, p: Point) -> Result<f64> {
    if o == p {
        return Err(Error::InvalidArgument(format!("angle from {o} to itself")));
    }
    let a = (p.y - o.y).atan2(p.x - o.x);
    let a = if a < 0.0 { a + 2.0 * PI } else { a };
    Ok(if a >= 2.0 * PI { 0.0 } else { a })
}

/// A piece of the candidate-center locus, parametrized over `[0, 1]`.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Arc { center: Point, from: f64, to: f64 },
    Segment { a: Point, b: Point },
}

impl Piece {
    fn at(&self, t: f64) -> Point {
        match *self {
            Piece::Arc { center, from, to } => center + Point::from_polar(1.0, from + (to - from) * t),
            Piece::Segment { a, b } => a.lerp(b, t),
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Piece::Arc { from, to, .. } => (to - from).abs(),
            Piece::Segment { a, b } => a.dist(b),
        }
    }
}

/// Pieces of `∂(−σ)(p) ∩ (−σ)(apex)`.
fn clipped_locus(shape: &Shape, p: Point, apex: Point) -> Vec<Piece> {
    match shape.kind() {
        ShapeKind::Disk => {
            let w = p - apex;
            let d = w.norm();
            if d > 2.0 {
                Vec::new()
            } else if d == 0.0 {
                vec![Piece::Arc { center: p, from: 0.0, to: 2.0 * PI }]
            } else {
                let mid = w.y.atan2(w.x) + PI;
                let half = (d / 2.0).acos();
                vec![Piece::Arc { center: p, from: mid - half, to: mid + half }]
            }
        }
        ShapeKind::Polygon { .. } => {
            let verts: Vec<Point> = shape.vertices().iter().map(|&v| p - v).collect();
            let n = verts.len();
            (0..n)
                .filter_map(|i| clip_segment(shape, verts[i], verts[(i + 1) % n], apex))
                .collect()
        }
    }
}

/// Part of segment `[a, b]` made of centers `c` with `d_σ(c, apex) <= 1`.
fn clip_segment(shape: &Shape, a: Point, b: Point, apex: Point) -> Option<Piece> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let d = b - a;
    for n in shape.normals() {
        // n·(apex − a) − t·n·d <= 1
        let f0 = n.dot(apex - a) - 1.0;
        let f1 = n.dot(d);
        if f1.abs() < 1e-300 {
            if f0 > 0.0 {
                return None;
            }
        } else if f1 > 0.0 {
            lo = lo.max(f0 / f1);
        } else {
            hi = hi.min(f0 / f1);
        }
        if lo > hi {
            return None;
        }
    }
    Some(Piece::Segment { a: a.lerp(b, lo), b: a.lerp(b, hi) })
}

fn slack(shape: &Shape, c: Point, p: Point, others: &[Point]) -> f64 {
    let dp = shape.convex_distance(c, p);
    others
        .iter()
        .map(|&q| shape.convex_distance(c, q) - dp)
        .fold(f64::INFINITY, f64::min)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const R: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - R * (hi - lo);
    let mut x2 = lo + R * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + R * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - R * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn search_piece(piece: &Piece, shape: &Shape, p: Point, others: &[Point], cfg: &ExtremeConfig) -> Option<Point> {
    let n = cfg.samples.max(2);
    let step = 1.0 / (n - 1) as f64;
    let values: Vec<f64> = (0..n)
        .map(|j| {
            let c = piece.at(j as f64 * step);
            if in_strict_cell_with(c, p, others, shape, cfg.cell_margin) {
                f64::INFINITY
            } else {
                slack(shape, c, p, others)
            }
        })
        .collect();
    if let Some(j) = values.iter().position(|v| v.is_infinite()) {
        return Some(piece.at(j as f64 * step));
    }
    // slack is 2-Lipschitz in arc length
    let reach = 2.0 * piece.length() * step * (1.0 + 1e-9);
    for j in 0..n {
        let left = if j > 0 { values[j - 1] } else { f64::NEG_INFINITY };
        let right = if j + 1 < n { values[j + 1] } else { f64::NEG_INFINITY };
        if values[j] < left || values[j] < right || values[j] + reach <= cfg.cell_margin {
            continue;
        }
        let lo = (j as f64 - 1.0).max(0.0) * step;
        let hi = (j as f64 + 1.0).min((n - 1) as f64) * step;
        let (t, _) = golden_max(|t| slack(shape, piece.at(t), p, others), lo, hi, 1e-12);
        let c = piece.at(t);
        if in_strict_cell_with(c, p, others, shape, cfg.cell_margin) {
            return Some(c);
        }
    }
    None
}

/// A center whose translate holds `apex`, touches `p` and holds no other tile point.
pub fn find_witness(
    p: Point,
    others: &[Point],
    apex: Point,
    shape: &Shape,
    cfg: &ExtremeConfig,
) -> Option<Point> {
    clipped_locus(shape, p, apex)
        .iter()
        .find_map(|piece| search_piece(piece, shape, p, others, cfg))
}

/// Whether `tile_points[index]` is an extreme point of `(tile, tau)`.
pub fn is_extreme(
    index: usize,
    tile: TileId,
    tau: Quadrant,
    tile_points: &[Point],
    shape: &Shape,
    grid: &Grid,
    cfg: &ExtremeConfig,
) -> Result<bool> {
    let p = *tile_points
        .get(index)
        .ok_or_else(|| Error::InvalidArgument(format!("point index {index} out of range")))?;
    if grid.tile_of(p) != tile {
        return Err(Error::InvalidInput(format!("point {p} is not in tile {tile}")));
    }
    let others: Vec<Point> = tile_points
        .iter()
        .enumerate()
        .filter(|&(i, q)| i != index && *q != p)
        .map(|(_, &q)| q)
        .collect();
    let apex = grid.quadrant_center(tile, tau);
    Ok(find_witness(p, &others, apex, shape, cfg).is_some())
}

/// Extreme points of one `(tile, τ)` pair, ordered by angle around `o_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeStructure {
    pub tile: TileId,
    pub quadrant: Quadrant,
    pub apex: Point,
    /// Indices into the tile's point list, in angle order.
    pub members: Vec<usize>,
    pub points: Vec<Point>,
    pub thetas: Vec<f64>,
}

impl ExtremeStructure {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Positions of the members inside `pred`, or `None` when they are not contiguous.
    pub fn interval_where(&self, pred: impl Fn(Point) -> bool) -> Option<Option<(usize, usize)>> {
        let inside: Vec<usize> = (0..self.len()).filter(|&i| pred(self.points[i])).collect();
        match (inside.first(), inside.last()) {
            (Some(&lo), Some(&hi)) if hi - lo + 1 == inside.len() => Some(Some((lo, hi))),
            (Some(_), Some(_)) => None,
            _ => Some(None),
        }
    }
}

pub fn build_extreme_structure(
    tile: TileId,
    tau: Quadrant,
    tile_points: &[Point],
    shape: &Shape,
    grid: &Grid,
    cfg: &ExtremeConfig,
) -> Result<ExtremeStructure> {
    let apex = grid.quadrant_center(tile, tau);
    let mut found = Vec::new();
    for i in 0..tile_points.len() {
        if is_extreme(i, tile, tau, tile_points, shape, grid, cfg)? {
            found.push((theta(apex, tile_points[i])?, i));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in found.windows(2) {
        if w[1].0 - w[0].0 <= THETA_SEPARATION {
            return Err(Error::DegenerateConfiguration(format!(
                "points {} and {} are collinear with {apex}",
                tile_points[w[0].1], tile_points[w[1].1]
            )));
        }
    }
    Ok(ExtremeStructure {
        tile,
        quadrant: tau,
        apex,
        members: found.iter().map(|&(_, i)| i).collect(),
        points: found.iter().map(|&(_, i)| tile_points[i]).collect(),
        thetas: found.iter().map(|&(t, _)| t).collect(),
    })
}
