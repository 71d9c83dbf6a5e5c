//! Online hitting set for points against translates of a unit disk or a
//! regular unit k-gon (k ≥ 4) in the plane.
//!
//! The point set is known up front; objects arrive one at a time and every
//! point chosen to hit them is kept forever. The crate contains the online
//! engine and its geometric machinery (tiling, extreme points, path
//! rankings), the adversary that forces `log₂ n + 1` points on any online
//! algorithm, an exact offline solver used to measure competitive ratios and
//! the hitting set / set cover dualization.

pub mod adversary;
pub mod dual;
pub mod extreme;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod offline;
pub mod online;
pub mod ranking;
pub mod report;
pub mod tiling;

pub use geometry::{PlacedObject, Point, Shape, ShapeKind, DEFAULT_TOL};
pub use online::{Decision, EngineConfig, HittingState};
pub use tiling::{Grid, Quadrant, TileId};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("objects share a center")]
    DegeneratePair,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("broken invariant: {0}")]
    BrokenInvariant(String),
    #[error("instance too large for the exact solver: {sets} sets over {universe} points")]
    TooLarge { sets: usize, universe: usize },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
