//! The lower-bound game. `n = 2^m` collinear points and one object per dyadic
//! interval of them; the referee always descends into a half that holds no
//! point placed so far, so a one-point-per-round responder places `m + 1`
//! points while a single point hits every presented object.

use serde::{Deserialize, Serialize};

use crate::geometry::{PlacedObject, Point, Shape, ShapeKind, DEFAULT_TOL};
use crate::offline::{exact_min_hitting_set, to_set_system};
use crate::online::{Decision, EngineConfig, HittingState};
use crate::{Error, Result};

pub const MAX_LEVELS: u32 = 20;
/// Upper bound on the distance between the first and last point.
pub const MAX_SPAN: f64 = 0.2;
const MAX_HALVINGS: u32 = 20;
const BASE: Point = Point::new(0.137, 0.291);

/// Object covering points `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalObject {
    pub level: u32,
    /// 1-based position within the level.
    pub index: usize,
    pub lo: usize,
    pub hi: usize,
    pub center: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryInstance {
    pub shape: Shape,
    pub m: u32,
    pub delta: f64,
    pub points: Vec<Point>,
    /// First and last point.
    pub carrier: (Point, Point),
    /// Level by level, left to right: object `(i, j)` has id `2^i - 1 + j - 1`.
    pub objects: Vec<IntervalObject>,
}

impl AdversaryInstance {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn id(level: u32, index: usize) -> usize {
        (1usize << level) - 1 + index - 1
    }

    pub fn object(&self, id: usize) -> PlacedObject {
        self.shape.at(self.objects[id].center)
    }

    pub fn placed_objects(&self) -> Vec<PlacedObject> {
        self.objects.iter().map(|o| self.shape.at(o.center)).collect()
    }

    /// Ids of the two halves of object `id`, none at the last level.
    pub fn children(&self, id: usize) -> Option<(usize, usize)> {
        let o = &self.objects[id];
        (o.level < self.m).then(|| {
            let left = Self::id(o.level + 1, 2 * o.index - 1);
            (left, left + 1)
        })
    }

    /// Ids of the points each object actually holds.
    pub fn containment(&self, tol: f64) -> Vec<Vec<usize>> {
        self.objects
            .iter()
            .map(|o| {
                let obj = self.shape.at(o.center);
                (0..self.n()).filter(|&i| obj.contains(self.points[i], tol)).collect()
            })
            .collect()
    }
}

/// Direction of the carrier line and the unit normal pointing into the part
/// of the shape used to cut intervals out of it.
fn carrier_frame(shape: &Shape) -> (Point, Point) {
    match shape.kind() {
        ShapeKind::Disk => (Point::new(1.0, 0.0), Point::new(0.0, 1.0)),
        ShapeKind::Polygon { .. } => {
            let v = shape.vertices();
            let u = (v[2] - v[0]).normalized().expect("distinct vertices");
            let mut n = u.perp();
            if n.dot(v[1] - v[0]) < 0.0 {
                n = -n;
            }
            (u, n)
        }
    }
}

/// Center of the translate whose intersection with the carrier line is the
/// chord of length `chord` centered at `mid`.
fn center_for_chord(shape: &Shape, mid: Point, chord: f64) -> Option<Point> {
    let (_, n) = carrier_frame(shape);
    match shape.kind() {
        ShapeKind::Disk => {
            let rho = chord / 2.0;
            (rho < 1.0).then(|| mid - n * (1.0 - rho * rho).sqrt())
        }
        ShapeKind::Polygon { .. } => {
            // lines parallel to a0a2 on the a1 side cut the triangle a0 a1 a2,
            // so the chord shrinks linearly to zero at a1
            let v = shape.vertices();
            let full = v[0].dist(v[2]);
            let height = n.dot(v[1] - v[0]);
            if chord >= full {
                return None;
            }
            let h = height * (1.0 - chord / full);
            let local_mid = (v[0] + v[2]) * 0.5 + n * h;
            Some(mid - local_mid)
        }
    }
}

fn try_build(shape: &Shape, m: u32, delta: f64, tol: f64) -> Result<AdversaryInstance> {
    let (u, _) = carrier_frame(shape);
    let n = 1usize << m;
    let points: Vec<Point> = (0..n).map(|i| BASE + u * (delta * i as f64)).collect();
    let mut objects = Vec::with_capacity(2 * n - 1);
    for level in 0..=m {
        let width = n >> level;
        for index in 1..=(1usize << level) {
            let lo = (index - 1) * width;
            let hi = index * width - 1;
            let mid = (points[lo] + points[hi]) * 0.5;
            // the boundary crosses the carrier half a gap beyond each end
            let chord = delta * (hi - lo) as f64 + delta;
            let center = center_for_chord(shape, mid, chord).ok_or_else(|| {
                Error::ConstructionFailed(format!("chord {chord} does not fit in {shape}"))
            })?;
            let obj = shape.at(center);
            // a convex object meets the carrier in a segment, so the two
            // ends and their outer neighbours decide containment
            let exact = obj.contains(points[lo], tol)
                && obj.contains(points[hi], tol)
                && (lo == 0 || !obj.contains(points[lo - 1], tol))
                && (hi + 1 == n || !obj.contains(points[hi + 1], tol));
            if !exact {
                return Err(Error::ConstructionFailed(format!(
                    "object ({level}, {index}) does not hold exactly points {lo}..={hi} at spacing {delta}"
                )));
            }
            objects.push(IntervalObject { level, index, lo, hi, center });
        }
    }
    Ok(AdversaryInstance { shape: shape.clone(), m, delta, carrier: (points[0], points[n - 1]), points, objects })
}

pub fn build_instance(shape: &Shape, m: u32) -> Result<AdversaryInstance> {
    build_instance_with_tol(shape, m, DEFAULT_TOL)
}

/// Builds the instance, halving the spacing after a failed attempt.
pub fn build_instance_with_tol(shape: &Shape, m: u32, tol: f64) -> Result<AdversaryInstance> {
    if m == 0 || m > MAX_LEVELS {
        return Err(Error::InvalidArgument(format!("levels must be in 1..={MAX_LEVELS}, got {m}")));
    }
    let n = 1usize << m;
    let mut delta = MAX_SPAN / (n - 1) as f64;
    let mut last = None;
    for _ in 0..=MAX_HALVINGS {
        match try_build(shape, m, delta, tol) {
            Ok(inst) => return Ok(inst),
            Err(e) => last = Some(e),
        }
        delta /= 2.0;
    }
    Err(last.expect("at least one attempt"))
}

/// An online algorithm playing against the referee.
pub trait Responder {
    fn name(&self) -> &str;
    /// Points placed in answer to `obj`; they stay placed.
    fn receive(&mut self, obj: &PlacedObject) -> Result<Vec<Point>>;
}

/// Places the lowest-index point of each object not already hit.
#[derive(Debug, Clone)]
pub struct FirstPoint {
    points: Vec<Point>,
    placed: Vec<Point>,
    tol: f64,
}

impl FirstPoint {
    pub fn new(points: &[Point], tol: f64) -> Self {
        FirstPoint { points: points.to_vec(), placed: Vec::new(), tol }
    }
}

impl Responder for FirstPoint {
    fn name(&self) -> &str {
        "first-point"
    }

    fn receive(&mut self, obj: &PlacedObject) -> Result<Vec<Point>> {
        if self.placed.iter().any(|&p| obj.contains(p, self.tol)) {
            return Ok(Vec::new());
        }
        match self.points.iter().find(|&&p| obj.contains(p, self.tol)) {
            Some(&p) => {
                self.placed.push(p);
                Ok(vec![p])
            }
            None => Ok(Vec::new()),
        }
    }
}

impl Responder for HittingState {
    fn name(&self) -> &str {
        "algorithm1"
    }

    fn receive(&mut self, obj: &PlacedObject) -> Result<Vec<Point>> {
        Ok(match self.process(obj)? {
            Decision::Added(pls) => pls.iter().map(|pl| self.points()[pl.point]).collect(),
            Decision::AlreadyStabbed | Decision::Infeasible => Vec::new(),
        })
    }
}

/// Builds a responder by name: `first-point` or `algorithm1`.
pub fn responder_by_name(name: &str, inst: &AdversaryInstance, config: EngineConfig) -> Result<Box<dyn Responder>> {
    match name {
        "first-point" => Ok(Box::new(FirstPoint::new(&inst.points, config.tol))),
        "algorithm1" => Ok(Box::new(HittingState::with_config(&inst.points, inst.shape.clone(), config)?)),
        other => Err(Error::InvalidArgument(format!("unknown responder {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub object: usize,
    pub level: u32,
    pub index: usize,
    /// Ids of the points placed this round.
    pub new_points: Vec<usize>,
    /// Whether some placed point lies in the object after the round.
    pub stabbed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub responder: String,
    pub m: u32,
    pub n: usize,
    pub rounds: Vec<Round>,
    /// Rounds in which at least one point was placed.
    pub forced: usize,
    pub placed: usize,
    /// Both halves held placed points before the last level was reached.
    pub truncated: bool,
    pub opt_size: Option<usize>,
    /// Rounds of the full game, `log₂ n + 1`.
    pub full_rounds: u32,
    /// Points the narrated strategy counts, `log₂ n`.
    pub narrated_rounds: u32,
}

impl GameTranscript {
    pub fn ratio(&self) -> Option<f64> {
        self.opt_size.filter(|&o| o > 0).map(|o| self.placed as f64 / o as f64)
    }
}

pub fn play(inst: &AdversaryInstance, responder: &mut dyn Responder) -> Result<GameTranscript> {
    play_with_tol(inst, responder, DEFAULT_TOL)
}

pub fn play_with_tol(inst: &AdversaryInstance, responder: &mut dyn Responder, tol: f64) -> Result<GameTranscript> {
    let mut placed: Vec<usize> = Vec::new();
    let mut rounds = Vec::new();
    let mut truncated = false;
    let mut current = 0;
    loop {
        let obj = inst.object(current);
        let answer = responder.receive(&obj)?;
        let mut new_points = Vec::with_capacity(answer.len());
        for p in answer {
            let id = inst.points.iter().position(|&q| q == p).ok_or_else(|| {
                Error::ProtocolViolation(format!("{} placed {p}, which is not an instance point", responder.name()))
            })?;
            if !placed.contains(&id) {
                placed.push(id);
                new_points.push(id);
            }
        }
        let o = &inst.objects[current];
        let stabbed = placed.iter().any(|&i| (o.lo..=o.hi).contains(&i));
        rounds.push(Round { object: current, level: o.level, index: o.index, new_points, stabbed });
        let Some((left, right)) = inst.children(current) else { break };
        let free = |id: usize| {
            let c = &inst.objects[id];
            !placed.iter().any(|&i| (c.lo..=c.hi).contains(&i))
        };
        current = if free(left) {
            left
        } else if free(right) {
            right
        } else {
            truncated = true;
            break;
        };
    }
    let presented: Vec<PlacedObject> = rounds.iter().map(|r| inst.object(r.object)).collect();
    let opt_size = match exact_min_hitting_set(&to_set_system(&inst.points, &presented, tol)) {
        Ok(h) => Some(h.len()),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(GameTranscript {
        responder: responder.name().to_string(),
        m: inst.m,
        n: inst.n(),
        forced: rounds.iter().filter(|r| !r.new_points.is_empty()).count(),
        placed: placed.len(),
        rounds,
        truncated,
        opt_size,
        full_rounds: inst.m + 1,
        narrated_rounds: inst.m,
    })
}

/// Checks the game invariants: each presented object avoids all earlier
/// points, and after round `i` the presented objects share `2^(m-i+1)` points.
pub fn check_invariants(inst: &AdversaryInstance, transcript: &GameTranscript, tol: f64) -> Result<()> {
    let mut placed: Vec<usize> = Vec::new();
    let mut common: Vec<usize> = (0..inst.n()).collect();
    for (r, round) in transcript.rounds.iter().enumerate() {
        let obj = inst.object(round.object);
        if let Some(&i) = placed.iter().find(|&&i| obj.contains(inst.points[i], tol)) {
            return Err(Error::BrokenInvariant(format!("round {} presents an object holding placed point {i}", r + 1)));
        }
        common.retain(|&i| obj.contains(inst.points[i], tol));
        let expected = inst.n() >> r;
        if common.len() != expected {
            return Err(Error::BrokenInvariant(format!(
                "after round {} the presented objects share {} points, expected {expected}",
                r + 1,
                common.len()
            )));
        }
        placed.extend(&round.new_points);
    }
    Ok(())
}
