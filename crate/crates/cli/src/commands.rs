use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use hitset::adversary::{build_instance_with_tol, play_with_tol, responder_by_name};
use hitset::dual::dualize;
use hitset::extreme::ExtremeConfig;
use hitset::generate::random_instance;
use hitset::io::{objects_from_centers, parse_instance, parse_stream, write_instance, write_stream, Instance};
use hitset::offline::{exact_min_hitting_set, greedy_hitting_set, to_set_system};
use hitset::report::{run_stream, OptMode, RunReport};
use hitset::{EngineConfig, Error, Point, Shape};

use crate::{Command, Common, OptChoice};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_TOO_LARGE: u8 = 4;
pub const EXIT_PROTOCOL: u8 = 5;

/// Some objects of a run hold no point of the instance.
#[derive(Debug)]
struct InfeasibleObjects(Vec<usize>);

impl std::fmt::Display for InfeasibleObjects {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "objects {:?} hold no point (pass --allow-infeasible to accept)", self.0)
    }
}

impl std::error::Error for InfeasibleObjects {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<InfeasibleObjects>().is_some() {
        return EXIT_INFEASIBLE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::InvalidShape(_)) => EXIT_PARSE,
        Some(Error::Infeasible(_)) => EXIT_INFEASIBLE,
        Some(Error::TooLarge { .. }) => EXIT_TOO_LARGE,
        Some(Error::ProtocolViolation(_)) => EXIT_PROTOCOL,
        _ => EXIT_FAILURE,
    }
}

pub fn parse_shape(s: &str) -> Result<Shape> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("disk") {
        return Ok(Shape::disk());
    }
    let k = s.strip_prefix("kgon:").unwrap_or(s);
    let k: u32 = k.parse().map_err(|_| Error::InvalidShape(format!("expected `disk` or a side count, got {s:?}")))?;
    Ok(Shape::polygon(k)?)
}

fn engine_config(common: Common) -> Result<EngineConfig> {
    if !(common.tol >= 0.0 && common.tol.is_finite()) {
        bail!(Error::InvalidArgument(format!("tolerance must be a finite nonnegative number, got {}", common.tol)));
    }
    if common.extreme_samples < 2 {
        bail!(Error::InvalidArgument("--extreme-samples must be at least 2".into()));
    }
    Ok(EngineConfig {
        tol: common.tol,
        extreme: ExtremeConfig { samples: common.extreme_samples, ..ExtremeConfig::default() },
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_stream(path: &Path) -> Result<Vec<Point>> {
    parse_stream(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

#[derive(Serialize)]
struct OptReport {
    status: &'static str,
    opt_size: usize,
    solution: Vec<usize>,
    n_points: usize,
    n_objects: usize,
    distinct_sets: usize,
    infeasible: Vec<usize>,
}

#[derive(Serialize)]
struct BenchCell {
    shape: String,
    seed: u64,
    n_points: usize,
    n_objects: usize,
    alg_size: usize,
    opt_size: Option<usize>,
    ratio: Option<f64>,
    bound: u64,
    infeasible: usize,
}

pub fn dispatch(command: Command, common: Common) -> Result<()> {
    let config = engine_config(common)?;
    match command {
        Command::GenRandom { shape, n_points, n_objects, span, out } => {
            let shape = parse_shape(&shape)?;
            let inst = random_instance(&shape, n_points, n_objects, common.seed, span)?;
            prepare_dir(&out)?;
            write_file(&out.join("instance.json"), &write_instance(&shape, &inst.points))?;
            write_file(&out.join("stream.jsonl"), &write_stream(&inst.centers()))?;
        }
        Command::Run { instance, stream, report, opt, allow_infeasible, strict } => {
            let inst = load_instance(&instance)?;
            let centers = load_stream(&stream)?;
            let mode = match opt {
                OptChoice::Exact => OptMode::Exact,
                OptChoice::Greedy => OptMode::Greedy,
                OptChoice::Skip => OptMode::Skip,
            };
            let r = run_stream(&inst.points, &inst.shape, &centers, config, mode)?;
            emit(report.as_deref(), &to_json(&r)?)?;
            if strict {
                r.check()?;
            }
            if !r.infeasible.is_empty() && !allow_infeasible {
                bail!(InfeasibleObjects(r.infeasible.clone()));
            }
        }
        Command::GenAdversarial { shape, m, responder, out } => {
            guard_levels(m)?;
            let shape = parse_shape(&shape)?;
            let inst = build_instance_with_tol(&shape, m, config.tol)?;
            let mut r = responder_by_name(responder.name(), &inst, config)?;
            let t = play_with_tol(&inst, r.as_mut(), config.tol)?;
            let presented: Vec<Point> = t.rounds.iter().map(|x| inst.objects[x.object].center).collect();
            let all: Vec<Point> = inst.objects.iter().map(|o| o.center).collect();
            prepare_dir(&out)?;
            write_file(&out.join("instance.json"), &write_instance(&shape, &inst.points))?;
            write_file(&out.join("stream.jsonl"), &write_stream(&presented))?;
            write_file(&out.join("objects.jsonl"), &write_stream(&all))?;
        }
        Command::Play { shape, m, responder, out } => {
            guard_levels(m)?;
            let shape = parse_shape(&shape)?;
            let inst = build_instance_with_tol(&shape, m, config.tol)?;
            let mut r = responder_by_name(responder.name(), &inst, config)?;
            let t = play_with_tol(&inst, r.as_mut(), config.tol)?;
            emit(out.as_deref(), &to_json(&t)?)?;
        }
        Command::Opt { instance, stream, greedy, out } => {
            let inst = load_instance(&instance)?;
            let centers = load_stream(&stream)?;
            let objects = objects_from_centers(&inst.shape, &centers);
            let full = to_set_system(&inst.points, &objects, config.tol);
            let sys = full.feasible_part();
            let (status, solution) = if greedy {
                ("greedy", greedy_hitting_set(&sys)?)
            } else {
                ("exact", exact_min_hitting_set(&sys)?)
            };
            let report = OptReport {
                status,
                opt_size: solution.len(),
                solution,
                n_points: inst.points.len(),
                n_objects: objects.len(),
                distinct_sets: sys.sets.len(),
                infeasible: full.infeasible,
            };
            emit(out.as_deref(), &to_json(&report)?)?;
        }
        Command::Dualize { instance, stream, out } => {
            let inst = load_instance(&instance)?;
            let centers = load_stream(&stream)?;
            let objects = objects_from_centers(&inst.shape, &centers);
            let d = dualize(&inst.points, &objects, &inst.shape)?;
            prepare_dir(&out)?;
            write_file(&out.join("instance.json"), &write_instance(&d.shape, &d.points))?;
            write_file(&out.join("stream.jsonl"), &write_stream(&d.centers()))?;
        }
        Command::Render { instance, stream, report, show_tiles, show_cones, show_extreme, show_hits, out } => {
            let inst = load_instance(&instance)?;
            let centers = match stream {
                Some(p) => load_stream(&p)?,
                None => Vec::new(),
            };
            let hits = match report {
                Some(p) => {
                    let r: RunReport = serde_json::from_str(&read(&p)?)
                        .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
                        .with_context(|| format!("in {}", p.display()))?;
                    Some(r.solution.iter().map(|s| Point::new(s[0], s[1])).collect())
                }
                None => None,
            };
            let layers = crate::render::Layers { tiles: show_tiles, cones: show_cones, extreme: show_extreme, hits: show_hits };
            let svg = crate::render::render(&inst, &centers, hits, layers, config)?;
            emit(out.as_deref(), &svg)?;
        }
        Command::Bench { shapes, seeds, n_points, n_objects, span, out } => {
            let shapes: Vec<(String, Shape)> = shapes
                .split(',')
                .map(|s| parse_shape(s).map(|sh| (s.trim().to_string(), sh)))
                .collect::<Result<_>>()?;
            let cells: Vec<(String, Shape, u64)> = shapes
                .iter()
                .flat_map(|(name, sh)| (0..seeds).map(move |i| (name.clone(), sh.clone(), common.seed + i)))
                .collect();
            let results: Vec<BenchCell> = cells
                .par_iter()
                .map(|(name, shape, seed)| {
                    let inst = random_instance(shape, n_points, n_objects, *seed, span)?;
                    let r = run_stream(&inst.points, shape, &inst.centers(), config, OptMode::Exact)?;
                    Ok(BenchCell {
                        shape: name.clone(),
                        seed: *seed,
                        n_points: r.n_points,
                        n_objects: r.n_objects,
                        alg_size: r.alg_size,
                        opt_size: r.opt_size,
                        ratio: r.ratio,
                        bound: r.bound,
                        infeasible: r.infeasible.len(),
                    })
                })
                .collect::<Result<_>>()?;
            emit(out.as_deref(), &to_json(&results)?)?;
        }
    }
    Ok(())
}

fn guard_levels(m: u32) -> Result<()> {
    if m == 0 || m > 12 {
        return Err(anyhow!(Error::InvalidArgument(format!("m must be in 1..=12, got {m}"))));
    }
    Ok(())
}
