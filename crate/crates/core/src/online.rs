//! The online engine. Only the point set is known in advance; objects are fed
//! to [`HittingState::process`] one by one and every chosen point stays chosen.
//!
//! An object that is not yet hit gets one new point in every tile where it
//! holds points of the instance: the extreme point of largest rank among the
//! extreme points of `(tile, τ)` that the object holds, where `τ` is the
//! first quadrant center of the tile's super-square inside the object.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::extreme::{build_extreme_structure, ExtremeConfig, ExtremeStructure};
use crate::geometry::{PlacedObject, Point, Shape, DEFAULT_TOL};
use crate::ranking::{max_color_in_interval, ruler_ranking, Ranking};
use crate::tiling::{build_grid, tau_of, Grid, Quadrant, TileId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Membership tolerance for closed objects.
    pub tol: f64,
    pub extreme: ExtremeConfig,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { tol: DEFAULT_TOL, extreme: ExtremeConfig::default() }
    }
}

/// One point added for one tile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub tile: TileId,
    pub quadrant: Quadrant,
    /// Index of the chosen point in the instance.
    pub point: usize,
    pub color: u32,
    /// Instance points of this tile held by the object.
    pub members: Vec<usize>,
    /// Number of extreme points of `(tile, quadrant)`.
    pub extreme_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "placements", rename_all = "snake_case")]
pub enum Decision {
    AlreadyStabbed,
    Added(Vec<Placement>),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub index: usize,
    pub center: Point,
    #[serde(flatten)]
    pub decision: Decision,
}

/// Extreme points of a `(tile, τ)` pair and their ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct TileCache {
    pub structure: ExtremeStructure,
    pub ranking: Ranking,
    /// Instance index of each structure member.
    pub ids: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct HittingState {
    shape: Shape,
    config: EngineConfig,
    points: Vec<Point>,
    grid: Grid,
    tiles: BTreeMap<TileId, Vec<usize>>,
    cache: HashMap<(TileId, Quadrant), TileCache>,
    hits: Vec<usize>,
    is_hit: Vec<bool>,
    log: Vec<DecisionRecord>,
    warnings: Vec<String>,
}

impl HittingState {
    pub fn new(points: &[Point], shape: Shape) -> Result<Self> {
        Self::with_config(points, shape, EngineConfig::default())
    }

    pub fn with_config(points: &[Point], shape: Shape, config: EngineConfig) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        let mut unique: Vec<Point> = Vec::with_capacity(points.len());
        let mut warnings = Vec::new();
        for &p in points {
            if unique.contains(&p) {
                warnings.push(format!("duplicate point {p} dropped"));
            } else {
                unique.push(p);
            }
        }
        let grid = build_grid(&unique, &shape)?;
        let mut tiles: BTreeMap<TileId, Vec<usize>> = BTreeMap::new();
        for (i, &p) in unique.iter().enumerate() {
            tiles.entry(grid.tile_of(p)).or_default().push(i);
        }
        Ok(HittingState {
            shape,
            config,
            is_hit: vec![false; unique.len()],
            points: unique,
            grid,
            tiles,
            cache: HashMap::new(),
            hits: Vec::new(),
            log: Vec::new(),
            warnings,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Deduplicated instance points.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn log(&self) -> &[DecisionRecord] {
        &self.log
    }

    /// Instance indices of the chosen points, in insertion order.
    pub fn hit_ids(&self) -> &[usize] {
        &self.hits
    }

    /// Chosen points in insertion order.
    pub fn solution(&self) -> Vec<Point> {
        self.hits.iter().map(|&i| self.points[i]).collect()
    }

    pub fn tile_points(&self, tile: TileId) -> &[usize] {
        self.tiles.get(&tile).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn occupied_tiles(&self) -> impl Iterator<Item = TileId> + '_ {
        self.tiles.keys().copied()
    }

    pub fn is_stabbed(&self, obj: &PlacedObject) -> bool {
        self.hits.iter().any(|&i| obj.contains(self.points[i], self.config.tol))
    }

    /// Extreme structure of `(tile, tau)`, built on first use.
    pub fn structure(&mut self, tile: TileId, tau: Quadrant) -> Result<&TileCache> {
        if !self.cache.contains_key(&(tile, tau)) {
            let ids = self.tile_points(tile).to_vec();
            let pts: Vec<Point> = ids.iter().map(|&i| self.points[i]).collect();
            let structure =
                build_extreme_structure(tile, tau, &pts, &self.shape, &self.grid, &self.config.extreme)?;
            let ranking = ruler_ranking(structure.len());
            let member_ids = structure.members.iter().map(|&m| ids[m]).collect();
            self.cache.insert((tile, tau), TileCache { structure, ranking, ids: member_ids });
        }
        Ok(&self.cache[&(tile, tau)])
    }

    /// Structures built so far.
    pub fn cached_structures(&self) -> impl Iterator<Item = (&(TileId, Quadrant), &TileCache)> {
        self.cache.iter()
    }

    pub fn process(&mut self, obj: &PlacedObject) -> Result<Decision> {
        if obj.shape != self.shape {
            return Err(Error::InvalidArgument(format!(
                "object is a {} but the instance uses {}",
                obj.shape, self.shape
            )));
        }
        let index = self.log.len();
        let decision = self.decide(obj)?;
        if let Decision::Added(placements) = &decision {
            for pl in placements {
                debug_assert!(!self.is_hit[pl.point]);
                self.is_hit[pl.point] = true;
                self.hits.push(pl.point);
            }
        }
        self.log.push(DecisionRecord { index, center: obj.center, decision: decision.clone() });
        Ok(decision)
    }

    fn decide(&mut self, obj: &PlacedObject) -> Result<Decision> {
        if self.is_stabbed(obj) {
            return Ok(Decision::AlreadyStabbed);
        }
        let tol = self.config.tol;
        let mut by_tile: BTreeMap<TileId, Vec<usize>> = BTreeMap::new();
        for (i, &p) in self.points.iter().enumerate() {
            if obj.contains(p, tol) {
                by_tile.entry(self.grid.tile_of(p)).or_default().push(i);
            }
        }
        if by_tile.is_empty() {
            return Ok(Decision::Infeasible);
        }
        let mut placements = Vec::with_capacity(by_tile.len());
        for (tile, members) in by_tile {
            let tau = tau_of(&self.grid, tile, obj, tol)?;
            let cache = self.structure(tile, tau)?;
            let interval = cache
                .structure
                .interval_where(|q| obj.contains(q, tol))
                .ok_or_else(|| {
                    Error::BrokenInvariant(format!(
                        "extreme points of {tile}/{tau:?} held by the object at {} are not contiguous",
                        obj.center
                    ))
                })?;
            let (lo, hi) = interval.ok_or_else(|| {
                Error::BrokenInvariant(format!(
                    "object at {} holds points of {tile} but none of its extreme points for {tau:?}",
                    obj.center
                ))
            })?;
            let (pos, color) = max_color_in_interval(&cache.ranking, lo, hi)?;
            placements.push(Placement {
                tile,
                quadrant: tau,
                point: cache.ids[pos],
                color,
                members,
                extreme_count: cache.structure.len(),
            });
        }
        Ok(Decision::Added(placements))
    }
}

/// Pairs of log entries that placed equal colors in one `(tile, τ)` while
/// sharing an instance point of that tile.
pub fn color_conflicts(log: &[DecisionRecord]) -> Vec<(usize, usize)> {
    let mut by_key: HashMap<(TileId, Quadrant), Vec<(usize, &Placement)>> = HashMap::new();
    for rec in log {
        if let Decision::Added(pls) = &rec.decision {
            for pl in pls {
                by_key.entry((pl.tile, pl.quadrant)).or_default().push((rec.index, pl));
            }
        }
    }
    let mut out = Vec::new();
    for list in by_key.values() {
        for (a, &(ia, pa)) in list.iter().enumerate() {
            for &(ib, pb) in &list[a + 1..] {
                if pa.color == pb.color && pa.members.iter().any(|m| pb.members.contains(m)) {
                    out.push((ia.min(ib), ia.max(ib)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}
