//! Reference computations written independently of the library: closed-form
//! shape data, convex distances, an exact extreme-point test, tile overlap by
//! polygon clipping and brute-force rankings.

#![allow(dead_code)]

use std::f64::consts::PI;

pub type P = (f64, f64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn add(a: P, b: P) -> P {
    (a.0 + b.0, a.1 + b.1)
}

fn scale(a: P, s: f64) -> P {
    (a.0 * s, a.1 * s)
}

fn cross(a: P, b: P) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// `None` is the unit disk, `Some(k)` the flat-bottomed regular k-gon of inradius 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefShape(pub Option<u32>);

impl RefShape {
    pub fn vertices(self) -> Vec<P> {
        let k = self.0.expect("polygon");
        let r = 1.0 / (PI / k as f64).cos();
        (0..k)
            .map(|i| {
                let a = -PI / 2.0 + PI / k as f64 + 2.0 * PI * i as f64 / k as f64;
                (r * a.cos(), r * a.sin())
            })
            .collect()
    }

    pub fn normals(self) -> Vec<P> {
        let k = self.0.expect("polygon");
        (0..k)
            .map(|i| {
                let a = -PI / 2.0 + 2.0 * PI * i as f64 / k as f64;
                (a.cos(), a.sin())
            })
            .collect()
    }

    /// Smallest scale of the shape centered at `c` reaching `x`.
    pub fn dist(self, c: P, x: P) -> f64 {
        let d = sub(x, c);
        match self.0 {
            None => d.0.hypot(d.1),
            Some(_) => self.normals().iter().map(|n| n.0 * d.0 + n.1 * d.1).fold(0.0, f64::max),
        }
    }

    /// Tile side, super-square side and tile bound.
    pub fn tiling(self) -> (f64, f64, usize) {
        match self.0 {
            None => (0.75, 2.75, 14),
            Some(4) => (0.5, 2.5, 25),
            Some(k @ (5 | 6)) => (0.25, 9.0 / (4.0 * (PI / k as f64).cos()), 119),
            Some(k) => (0.5, 5.0 / (2.0 * (PI / k as f64).cos()), 34),
        }
    }

    /// Quadrant centers of the tile with lower-left corner `origin`, numbered 1..=4.
    pub fn quadrant_centers(self, origin: P) -> [P; 4] {
        let (l, t, _) = self.tiling();
        let c = add(origin, (l / 2.0, l / 2.0));
        let q = t / 4.0;
        [add(c, (-q, q)), add(c, (q, q)), add(c, (-q, -q)), add(c, (q, -q))]
    }
}

/// Parameters in `[0, 1)` where segment `a + t(b - a)` crosses segment `[c, d]`.
fn segment_crossings(a: P, b: P, c: P, d: P) -> Option<f64> {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(r, s);
    if den.abs() < 1e-300 {
        return None;
    }
    let w = sub(c, a);
    let t = cross(w, s) / den;
    let u = cross(w, r) / den;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some(t)
}

/// The closed curve of centers `c` with `dist(c, p) = 1`.
enum Locus {
    Circle(P),
    Polygon(Vec<P>),
}

impl Locus {
    fn new(shape: RefShape, p: P) -> Self {
        match shape.0 {
            None => Locus::Circle(p),
            Some(_) => Locus::Polygon(shape.vertices().iter().map(|&v| sub(p, v)).collect()),
        }
    }

    /// Sample points strictly between consecutive breakpoints against the
    /// level sets `dist(·, x) = λ`.
    fn probes(&self, shape: RefShape, levels: &[(P, f64)]) -> Vec<P> {
        match self {
            Locus::Circle(p) => {
                let mut angles = Vec::new();
                for &(x, lam) in levels {
                    let w = sub(x, *p);
                    let d = w.0.hypot(w.1);
                    if d == 0.0 || d > 1.0 + lam || d < (1.0 - lam).abs() {
                        continue;
                    }
                    let a = (1.0 + d * d - lam * lam) / (2.0 * d);
                    let half = a.clamp(-1.0, 1.0).acos();
                    let base = w.1.atan2(w.0);
                    for phi in [base - half, base + half] {
                        angles.push(phi.rem_euclid(2.0 * PI));
                    }
                }
                angles.sort_by(f64::total_cmp);
                if angles.is_empty() {
                    return vec![add(*p, (1.0, 0.0))];
                }
                let n = angles.len();
                (0..n)
                    .map(|i| {
                        let lo = angles[i];
                        let hi = if i + 1 < n { angles[i + 1] } else { angles[0] + 2.0 * PI };
                        let m = (lo + hi) / 2.0;
                        add(*p, (m.cos(), m.sin()))
                    })
                    .collect()
            }
            Locus::Polygon(w) => {
                let n = w.len();
                let verts = shape.vertices();
                let mut out = Vec::new();
                for i in 0..n {
                    let (a, b) = (w[i], w[(i + 1) % n]);
                    let mut ts = vec![0.0, 1.0];
                    for &(x, lam) in levels {
                        let z: Vec<P> = verts.iter().map(|&v| sub(x, scale(v, lam))).collect();
                        for j in 0..z.len() {
                            if let Some(t) = segment_crossings(a, b, z[j], z[(j + 1) % z.len()]) {
                                ts.push(t);
                            }
                        }
                    }
                    ts.sort_by(f64::total_cmp);
                    for pair in ts.windows(2) {
                        let m = (pair[0] + pair[1]) / 2.0;
                        out.push(add(a, scale(sub(b, a), m)));
                    }
                }
                out
            }
        }
    }
}

/// Whether some center with `p` on its boundary holds `apex` (up to
/// `apex_slack`) and keeps every other point beyond scale `1 + other_slack`.
pub fn extreme_with_slack(shape: RefShape, p: P, others: &[P], apex: P, apex_slack: f64, other_slack: f64) -> bool {
    let mut levels = vec![(apex, 1.0 + apex_slack)];
    levels.extend(others.iter().map(|&q| (q, 1.0 + other_slack)));
    Locus::new(shape, p).probes(shape, &levels).into_iter().any(|c| {
        shape.dist(c, apex) <= 1.0 + apex_slack && others.iter().all(|&q| shape.dist(c, q) > 1.0 + other_slack)
    })
}

/// Exact extreme test, or `None` when a perturbation of `eps` changes the answer.
pub fn extreme_oracle(shape: RefShape, p: P, others: &[P], apex: P, eps: f64) -> Option<bool> {
    let loose = extreme_with_slack(shape, p, others, apex, eps, -eps);
    let tight = extreme_with_slack(shape, p, others, apex, -eps, eps);
    (loose == tight).then_some(loose)
}

/// Area of the object (translated to `c`) inside the axis-aligned box `[lo, hi]`.
pub fn polygon_box_overlap_area(shape: RefShape, c: P, lo: P, hi: P) -> f64 {
    let mut poly: Vec<P> = shape.vertices().iter().map(|&v| add(c, v)).collect();
    // clip against x >= lo.x, x <= hi.x, y >= lo.y, y <= hi.y
    let planes: [(usize, f64, f64); 4] = [(0, lo.0, 1.0), (0, hi.0, -1.0), (1, lo.1, 1.0), (1, hi.1, -1.0)];
    for (axis, bound, sign) in planes {
        let val = |q: P| sign * (if axis == 0 { q.0 } else { q.1 } - bound);
        let mut next = Vec::new();
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let (va, vb) = (val(a), val(b));
            if va >= 0.0 {
                next.push(a);
            }
            if (va >= 0.0) != (vb >= 0.0) {
                let t = va / (va - vb);
                next.push(add(a, scale(sub(b, a), t)));
            }
        }
        poly = next;
        if poly.is_empty() {
            return 0.0;
        }
    }
    let n = poly.len();
    (0..n).map(|i| cross(poly[i], poly[(i + 1) % n])).sum::<f64>().abs() / 2.0
}

/// Distance from `c` to the box `[lo, hi]`.
pub fn point_box_distance(c: P, lo: P, hi: P) -> f64 {
    let dx = (lo.0 - c.0).max(0.0).max(c.0 - hi.0);
    let dy = (lo.1 - c.1).max(0.0).max(c.1 - hi.1);
    dx.hypot(dy)
}

/// Any two equal colors are separated by a strictly larger color.
pub fn brute_ranking_valid(c: &[u32]) -> bool {
    (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j] || (i + 1..j).any(|z| c[z] > c[i])))
}

/// Size of a smallest hitting set by trying every subset in order of size.
pub fn brute_min_hitting_set(n: usize, sets: &[Vec<usize>]) -> usize {
    assert!(n <= 20);
    let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0u32, |m, &x| m | 1 << x)).collect();
    (0u32..1 << n)
        .filter(|&h| masks.iter().all(|&m| m & h != 0))
        .map(|h| h.count_ones() as usize)
        .min()
        .expect("the full universe hits every nonempty set")
}
