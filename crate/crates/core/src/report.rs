//! Run reports: the engine's answer to a stream, the offline optimum and the
//! guaranteed bound `4·m_σ·⌊log₂ 2n⌋` on their ratio.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Shape};
use crate::io::ShapeSpec;
use crate::offline::{exact_min_hitting_set, greedy_hitting_set, to_set_system};
use crate::online::{color_conflicts, Decision, DecisionRecord, EngineConfig, HittingState};
use crate::tiling::TilingParams;
use crate::{Error, Result};

/// `⌊log₂ 2n⌋`, zero for an empty instance.
pub fn floor_log2_2n(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (usize::BITS - n.leading_zeros()) as u64
    }
}

pub fn competitive_bound(shape: &Shape, n: usize) -> u64 {
    4 * TilingParams::for_shape(shape).max_tiles as u64 * floor_log2_2n(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptMode {
    Exact,
    Greedy,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptStatus {
    Exact,
    /// Greedy size, an upper bound on the optimum.
    Greedy,
    TooLarge,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub shape: ShapeSpec,
    pub n_points: usize,
    pub n_objects: usize,
    pub alg_size: usize,
    pub opt_size: Option<usize>,
    pub opt_status: OptStatus,
    pub ratio: Option<f64>,
    pub m_sigma: u32,
    pub bound: u64,
    pub infeasible: Vec<usize>,
    pub solution: Vec<[f64; 2]>,
    pub decisions: Vec<DecisionRecord>,
    /// Decision pairs breaking the distinct-color rule; always empty for a correct engine.
    pub color_conflicts: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
}

impl RunReport {
    /// Fails when the ratio exceeds the bound or colors conflict.
    pub fn check(&self) -> Result<()> {
        if let Some(r) = self.ratio {
            if self.opt_status == OptStatus::Exact && r > self.bound as f64 {
                return Err(Error::BrokenInvariant(format!("ratio {r} exceeds bound {}", self.bound)));
            }
        }
        if !self.color_conflicts.is_empty() {
            return Err(Error::BrokenInvariant(format!("color conflicts {:?}", self.color_conflicts)));
        }
        Ok(())
    }

    /// Same report with the wall time zeroed, for comparisons.
    pub fn without_timing(&self) -> RunReport {
        RunReport { wall_time_ms: 0.0, ..self.clone() }
    }
}

pub fn run_stream(points: &[Point], shape: &Shape, centers: &[Point], config: EngineConfig, opt: OptMode) -> Result<RunReport> {
    let start = Instant::now();
    let mut state = HittingState::with_config(points, shape.clone(), config)?;
    let mut infeasible = Vec::new();
    for (i, &c) in centers.iter().enumerate() {
        if state.process(&shape.at(c))? == Decision::Infeasible {
            infeasible.push(i);
        }
    }
    let objects: Vec<_> = centers.iter().map(|&c| shape.at(c)).collect();
    let sys = to_set_system(state.points(), &objects, config.tol).feasible_part();
    let (opt_size, opt_status) = match opt {
        OptMode::Skip => (None, OptStatus::Skipped),
        OptMode::Greedy => (Some(greedy_hitting_set(&sys)?.len()), OptStatus::Greedy),
        OptMode::Exact => match exact_min_hitting_set(&sys) {
            Ok(h) => (Some(h.len()), OptStatus::Exact),
            Err(Error::TooLarge { .. }) => (None, OptStatus::TooLarge),
            Err(e) => return Err(e),
        },
    };
    let alg_size = state.hit_ids().len();
    let n = state.points().len();
    Ok(RunReport {
        shape: shape.into(),
        n_points: n,
        n_objects: centers.len(),
        alg_size,
        ratio: opt_size.filter(|&o| o > 0).map(|o| alg_size as f64 / o as f64),
        opt_size,
        opt_status,
        m_sigma: TilingParams::for_shape(shape).max_tiles,
        bound: competitive_bound(shape, n),
        infeasible,
        solution: state.solution().into_iter().map(|p| [p.x, p.y]).collect(),
        color_conflicts: color_conflicts(state.log()),
        decisions: state.log().to_vec(),
        warnings: state.warnings().to_vec(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
