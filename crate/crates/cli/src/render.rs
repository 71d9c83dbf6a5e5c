//! Deterministic SVG drawing of an instance and the engine's state.

use std::fmt::Write;

use anyhow::Result;

use hitset::io::Instance;
use hitset::tiling::cone_of;
use hitset::{EngineConfig, HittingState, Point, Quadrant};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
const QUADRANT_COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#1f77b4", "#9467bd"];

#[derive(Debug, Clone, Copy, Default)]
pub struct Layers {
    pub tiles: bool,
    pub cones: bool,
    pub extreme: bool,
    pub hits: bool,
}

struct Frame {
    min: Point,
    scale: f64,
    height: f64,
}

impl Frame {
    fn x(&self, p: Point) -> f64 {
        MARGIN + (p.x - self.min.x) * self.scale
    }

    /// SVG grows downwards.
    fn y(&self, p: Point) -> f64 {
        self.height - MARGIN - (p.y - self.min.y) * self.scale
    }

    fn xy(&self, p: Point) -> String {
        format!("{:.6},{:.6}", self.x(p), self.y(p))
    }
}

fn polyline(out: &mut String, f: &Frame, pts: &[Point], closed: bool, style: &str) {
    let coords: Vec<String> = pts.iter().map(|&p| f.xy(p)).collect();
    let tag = if closed { "polygon" } else { "polyline" };
    let _ = writeln!(out, r#"<{tag} points="{}" {style}/>"#, coords.join(" "));
}

fn dot(out: &mut String, f: &Frame, p: Point, r: f64, style: &str) {
    let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{r:.6}" {style}/>"#, f.x(p), f.y(p));
}

pub fn render(inst: &Instance, centers: &[Point], hits: Option<Vec<Point>>, layers: Layers, config: EngineConfig) -> Result<String> {
    let shape = &inst.shape;
    let mut state = HittingState::with_config(&inst.points, shape.clone(), config)?;
    let hits = match hits {
        Some(h) => h,
        None if layers.hits => {
            for &c in centers {
                state.process(&shape.at(c))?;
            }
            state.solution()
        }
        None => Vec::new(),
    };
    let grid = *state.grid();
    let tiles: Vec<_> = state.occupied_tiles().collect();

    // bounding box over everything drawn
    let r = shape.r_out();
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: Point, pad: f64| {
        lo = Point::new(lo.x.min(p.x - pad), lo.y.min(p.y - pad));
        hi = Point::new(hi.x.max(p.x + pad), hi.y.max(p.y + pad));
    };
    for &p in state.points() {
        grow(p, 0.0);
    }
    for &c in centers {
        grow(c, r);
    }
    if layers.tiles || layers.cones {
        for &t in &tiles {
            let ss = grid.super_square(t);
            grow(grid.tile_center(t), ss.side / 2.0);
        }
    }
    if !lo.x.is_finite() {
        lo = Point::new(-1.0, -1.0);
        hi = Point::new(1.0, 1.0);
    }
    let w = (hi.x - lo.x).max(1e-9);
    let h = (hi.y - lo.y).max(1e-9);
    let scale = (WIDTH - 2.0 * MARGIN) / w.max(h);
    let height = h * scale + 2.0 * MARGIN;
    let f = Frame { min: lo, scale, height };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.6} {height:.6}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // grid lines
    let side = grid.tile_side;
    let _ = writeln!(out, r##"<g id="grid" stroke="#dddddd" stroke-width="0.5">"##);
    let (i0, i1) = (((lo.x - grid.offset.x) / side).floor() as i64, ((hi.x - grid.offset.x) / side).ceil() as i64);
    let (j0, j1) = (((lo.y - grid.offset.y) / side).floor() as i64, ((hi.y - grid.offset.y) / side).ceil() as i64);
    if (i1 - i0) < 2000 && (j1 - j0) < 2000 {
        for i in i0..=i1 {
            let x = grid.offset.x + i as f64 * side;
            polyline(&mut out, &f, &[Point::new(x, lo.y), Point::new(x, hi.y)], false, "");
        }
        for j in j0..=j1 {
            let y = grid.offset.y + j as f64 * side;
            polyline(&mut out, &f, &[Point::new(lo.x, y), Point::new(hi.x, y)], false, "");
        }
    }
    let _ = writeln!(out, "</g>");

    if layers.tiles {
        let _ = writeln!(out, r#"<g id="tiles" fill="none">"#);
        for &t in &tiles {
            polyline(&mut out, &f, &grid.tile_corners(t), true, r##"stroke="#ff7f0e" stroke-width="1.5""##);
            let ss = grid.super_square(t);
            let c = grid.tile_center(t);
            let s = ss.side / 2.0;
            let sq = [
                Point::new(c.x - s, c.y - s),
                Point::new(c.x + s, c.y - s),
                Point::new(c.x + s, c.y + s),
                Point::new(c.x - s, c.y + s),
            ];
            polyline(&mut out, &f, &sq, true, r##"stroke="#ffbb78" stroke-dasharray="4 3""##);
            for (k, &o) in ss.quadrant_centers.iter().enumerate() {
                dot(&mut out, &f, o, 2.5, &format!(r#"fill="{}""#, QUADRANT_COLORS[k]));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if layers.cones {
        let _ = writeln!(out, r#"<g id="cones" fill="none" stroke-width="0.75">"#);
        for &t in &tiles {
            let reach = grid.super_square(t).side;
            for tau in Quadrant::ALL {
                let cone = cone_of(&grid, t, tau);
                let pts = [cone.apex + cone.right * reach, cone.apex, cone.apex + cone.left * reach];
                let color = QUADRANT_COLORS[tau.index() as usize - 1];
                polyline(&mut out, &f, &pts, false, &format!(r#"stroke="{color}" stroke-opacity="0.6""#));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r##"<g id="objects" fill="none" stroke="#7f7f7f" stroke-width="1">"##);
    for &c in centers {
        let obj = shape.at(c);
        if shape.is_disk() {
            let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#, f.x(c), f.y(c), scale);
        } else {
            polyline(&mut out, &f, &obj.vertices(), true, "");
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="points" fill="black">"#);
    for &p in state.points() {
        dot(&mut out, &f, p, 2.0, "");
    }
    let _ = writeln!(out, "</g>");

    if layers.extreme {
        let _ = writeln!(out, r#"<g id="extreme" fill="none" stroke-width="1.25">"#);
        for &t in &tiles {
            for tau in Quadrant::ALL {
                let color = QUADRANT_COLORS[tau.index() as usize - 1];
                let radius = 3.0 + tau.index() as f64 * 1.5;
                let cache = state.structure(t, tau)?;
                for &p in &cache.structure.points {
                    dot(&mut out, &f, p, radius, &format!(r#"stroke="{color}""#));
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if layers.hits {
        let _ = writeln!(out, r##"<g id="hits" fill="#e377c2" stroke="black" stroke-width="0.5">"##);
        for &p in &hits {
            dot(&mut out, &f, p, 4.0, "");
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, "</svg>");
    Ok(out)
}
