//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::{RefShape, P};
use hitset::adversary::{build_instance, play, FirstPoint};
use hitset::dual::dualize;
use hitset::extreme::{build_extreme_structure, is_extreme, ExtremeConfig};
use hitset::generate::random_instance;
use hitset::geometry::polygon_params;
use hitset::offline::{exact_min_hitting_set, to_set_system};
use hitset::online::Decision;
use hitset::ranking::{ruler_ranking, verify_ranking};
use hitset::report::{run_stream, OptMode, OptStatus};
use hitset::tiling::{build_grid, cone_of, tau_of, tiles_intersected, Grid, Quadrant, TileId};
use hitset::{EngineConfig, Error, PlacedObject, Point, Shape, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = DEFAULT_TOL;
const LOWER_BOUND_BUDGET: Duration = Duration::from_secs(5);
const GAUGE_SYMMETRY_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-12;
const CONE_K4_TOL: f64 = 1e-12;
const DEGENERACY_EPS: f64 = 1e-6;
/// Side of the box holding the points of the random runs; small enough that
/// tiles hold several points each.
const RUN_SPAN: f64 = 1.0;
/// Overlap areas in this band are too thin to call either way.
const AMBIGUOUS_AREA: (f64, f64) = (1e-14, 1e-8);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn shape_of(r: RefShape) -> Shape {
    match r.0 {
        None => Shape::disk(),
        Some(k) => Shape::polygon(k).unwrap(),
    }
}

fn pt(p: Point) -> P {
    (p.x, p.y)
}

const CORE: [RefShape; 4] = [RefShape(None), RefShape(Some(4)), RefShape(Some(5)), RefShape(Some(6))];
const WITH_SEVEN: [RefShape; 6] =
    [RefShape(None), RefShape(Some(4)), RefShape(Some(5)), RefShape(Some(6)), RefShape(Some(7)), RefShape(Some(8))];

fn lower_bound() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for r in CORE {
        let shape = shape_of(r);
        for m in 3..=6u32 {
            let inst = build_instance(&shape, m).unwrap();
            let t = play(&inst, &mut FirstPoint::new(&inst.points, TOL)).unwrap();
            let presented: Vec<PlacedObject> = t.rounds.iter().map(|x| inst.object(x.object)).collect();
            let opt = exact_min_hitting_set(&to_set_system(&inst.points, &presented, TOL)).unwrap().len();
            let want = (inst.n() as f64).log2() as usize + 1;
            if t.forced != want || t.placed != want || opt != 1 {
                bad.push(format!("{shape} m={m}: forced {} opt {opt}", t.forced));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < LOWER_BOUND_BUDGET;
    outcome(pass, format!("16 games forced log2(n)+1 with OPT 1 in {:.2}s {bad:?}", elapsed.as_secs_f64()))
}

struct Run {
    shape: Shape,
    points: Vec<Point>,
    objects: Vec<PlacedObject>,
    report: hitset::report::RunReport,
}

fn random_runs() -> Vec<Run> {
    let mut out = Vec::new();
    for r in WITH_SEVEN {
        let shape = shape_of(r);
        for seed in 0..20u64 {
            let inst = random_instance(&shape, 60, 40, 1000 + seed, RUN_SPAN).unwrap();
            // keep only objects some point can hit
            let objects: Vec<PlacedObject> = inst
                .objects
                .into_iter()
                .filter(|o| inst.points.iter().any(|&p| r.dist(pt(o.center), pt(p)) <= 1.0 + TOL))
                .collect();
            let centers: Vec<Point> = objects.iter().map(|o| o.center).collect();
            let report = run_stream(&inst.points, &shape, &centers, EngineConfig::default(), OptMode::Exact).unwrap();
            out.push(Run { shape: shape.clone(), points: inst.points, objects, report });
        }
    }
    out
}

fn upper_bound(runs: &[Run]) -> Outcome {
    let mut violations = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, run) in runs.iter().enumerate() {
        let r = &run.report;
        let opt = match (r.opt_status, r.opt_size) {
            (OptStatus::Exact, Some(o)) => o,
            _ => {
                violations.push(format!("run {i}: no exact optimum"));
                continue;
            }
        };
        let m = match run.shape.k() {
            None => 14,
            Some(4) => 25,
            Some(5 | 6) => 119,
            Some(_) => 34,
        };
        let bound = 4 * m * ((2 * r.n_points) as f64).log2().floor() as usize;
        if r.alg_size > bound * opt {
            violations.push(format!("run {i}: {} > {bound}·{opt}", r.alg_size));
        }
        if opt > 0 {
            worst = worst.max(r.alg_size as f64 / opt as f64);
        }
        let shape = RefShape(run.shape.k());
        let sol: Vec<P> = r.solution.iter().map(|s| (s[0], s[1])).collect();
        for (j, o) in run.objects.iter().enumerate() {
            if !sol.iter().any(|&h| shape.dist(pt(o.center), h) <= 1.0 + TOL) {
                violations.push(format!("run {i}: object {j} not stabbed"));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!("{} runs, worst ratio {worst:.2}, violations {violations:?}", runs.len()),
    )
}

fn observation_one() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut lines = Vec::new();
    let mut pass = true;
    for r in WITH_SEVEN {
        let shape = shape_of(r);
        let grid = Grid::new(&shape, Point::ORIGIN);
        let (l, _, m) = r.tiling();
        let mut max = 0;
        let mut disagreements = 0;
        for _ in 0..10_000 {
            let c = Point::new(rng.gen_range(0.0..l), rng.gen_range(0.0..l));
            let obj = shape.at(c);
            let tiles = tiles_intersected(&grid, &obj);
            max = max.max(tiles.len());
            // reference count over a generous window
            let reach = (shape.r_out() / l).ceil() as i64 + 2;
            let mut count = 0;
            let mut ambiguous = false;
            for i in -reach..=reach {
                for j in -reach..=reach {
                    let lo = (i as f64 * l, j as f64 * l);
                    let hi = (lo.0 + l, lo.1 + l);
                    let hit = match r.0 {
                        None => {
                            let d = common::point_box_distance(pt(c), lo, hi);
                            ambiguous |= (d - 1.0).abs() < 1e-9;
                            d < 1.0
                        }
                        Some(_) => {
                            let a = common::polygon_box_overlap_area(r, pt(c), lo, hi);
                            ambiguous |= a > AMBIGUOUS_AREA.0 && a < AMBIGUOUS_AREA.1;
                            a >= AMBIGUOUS_AREA.1
                        }
                    };
                    count += hit as usize;
                }
            }
            if !ambiguous && count != tiles.len() {
                disagreements += 1;
            }
        }
        pass &= max <= m && disagreements == 0;
        lines.push(format!("{shape}: max {max} <= {m} ({disagreements} disagreements)"));
    }
    // the square's bound is attained with the center at a tile center
    let sq = Shape::polygon(4).unwrap();
    let grid = Grid::new(&sq, Point::ORIGIN);
    let witness = tiles_intersected(&grid, &sq.at(grid.tile_center(TileId::new(0, 0)))).len();
    pass &= witness == 25;
    lines.push(format!("4-gon witness {witness}"));
    outcome(pass, lines.join("; "))
}

fn random_tile(rng: &mut ChaCha8Rng, l: f64, n: usize) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.gen_range(0.0..l), rng.gen_range(0.0..l))).collect()
}

fn interval_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = ExtremeConfig::default();
    let mut lines = Vec::new();
    let mut pass = true;
    for r in CORE {
        let shape = shape_of(r);
        let grid = Grid::new(&shape, Point::ORIGIN);
        let tile = TileId::new(0, 0);
        let (l, _, _) = r.tiling();
        let (mut trials, mut contiguous, mut regenerated) = (0, 0, 0);
        while trials < 1000 {
            let pts = random_tile(&mut rng, l, 8);
            let mut structures = HashMap::new();
            let mut degenerate = false;
            for tau in Quadrant::ALL {
                match build_extreme_structure(tile, tau, &pts, &shape, &grid, &cfg) {
                    Ok(s) => {
                        structures.insert(tau, s);
                    }
                    Err(Error::DegenerateConfiguration(_)) => degenerate = true,
                    Err(e) => panic!("{e}"),
                }
            }
            if degenerate {
                regenerated += 1;
                continue;
            }
            let reach = shape.r_out() + l;
            let mid = grid.tile_center(tile);
            for _ in 0..20 {
                if trials == 1000 {
                    break;
                }
                let c = mid + Point::new(rng.gen_range(-reach..reach), rng.gen_range(-reach..reach));
                let near_boundary = pts.iter().any(|&p| (r.dist(pt(c), pt(p)) - 1.0).abs() < DEGENERACY_EPS);
                let holds_any = pts.iter().any(|&p| r.dist(pt(c), pt(p)) <= 1.0);
                if near_boundary {
                    regenerated += 1;
                    continue;
                }
                if !holds_any {
                    continue;
                }
                let obj = shape.at(c);
                let tau = tau_of(&grid, tile, &obj, TOL).unwrap();
                trials += 1;
                if let Some(Some(_)) = structures[&tau].interval_where(|q| obj.contains(q, TOL)) {
                    contiguous += 1;
                }
            }
        }
        pass &= contiguous == trials;
        lines.push(format!("{shape}: {contiguous}/{trials} contiguous ({regenerated} regenerated)"));
    }
    outcome(pass, lines.join("; "))
}

fn extreme_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = ExtremeConfig::default();
    let (mut tiles, mut checks, mut regenerated) = (0, 0, 0);
    let mut mismatches = Vec::new();
    while tiles < 200 {
        let r = CORE[tiles % 4];
        let shape = shape_of(r);
        let grid = Grid::new(&shape, Point::ORIGIN);
        let tile = TileId::new(0, 0);
        assert_eq!(grid.tile_origin(tile), Point::ORIGIN);
        let (l, _, _) = r.tiling();
        let n = rng.gen_range(1..=8);
        let pts = random_tile(&mut rng, l, n);
        let apexes = r.quadrant_centers((0.0, 0.0));
        let mut expected = Vec::new();
        let mut degenerate = false;
        'outer: for (a, tau) in Quadrant::ALL.into_iter().enumerate() {
            for i in 0..n {
                let others: Vec<P> = (0..n).filter(|&j| j != i).map(|j| pt(pts[j])).collect();
                match common::extreme_oracle(r, pt(pts[i]), &others, apexes[a], DEGENERACY_EPS) {
                    Some(e) => expected.push((tau, i, e)),
                    None => {
                        degenerate = true;
                        break 'outer;
                    }
                }
            }
        }
        if degenerate {
            regenerated += 1;
            continue;
        }
        for (tau, i, e) in expected {
            let got = is_extreme(i, tile, tau, &pts, &shape, &grid, &cfg).unwrap();
            checks += 1;
            if got != e {
                mismatches.push(format!("{shape} {:?} τ{} point {i}: sampler {got}, oracle {e}", pts, tau.index()));
            }
        }
        tiles += 1;
    }
    outcome(
        mismatches.is_empty(),
        format!("200 tiles, {checks} point/quadrant checks, {regenerated} regenerated, mismatches {mismatches:?}"),
    )
}

fn distinct_colors(runs: &[Run]) -> Outcome {
    let mut conflicts = 0;
    let mut bad_members = 0;
    let mut over_budget = 0;
    let mut qualifying_pairs = 0;
    for run in runs {
        let shape = RefShape(run.shape.k());
        let grid = build_grid(&run.points, &run.shape).unwrap();
        // (record, tile, quadrant, color, members)
        let mut placed: Vec<(usize, TileId, Quadrant, u32, Vec<usize>)> = Vec::new();
        let mut per_point: BTreeMap<(TileId, Quadrant, usize), (usize, usize)> = BTreeMap::new();
        for rec in &run.report.decisions {
            let Decision::Added(pls) = &rec.decision else { continue };
            for pl in pls {
                // members must be exactly the tile's points held by the object
                let expected: Vec<usize> = (0..run.points.len())
                    .filter(|&m| grid.tile_of(run.points[m]) == pl.tile)
                    .filter(|&m| shape.dist(pt(rec.center), pt(run.points[m])) <= 1.0 + TOL)
                    .collect();
                if expected != pl.members || !pl.members.contains(&pl.point) {
                    bad_members += 1;
                }
                for &m in &pl.members {
                    let e = per_point.entry((pl.tile, pl.quadrant, m)).or_insert((0, pl.extreme_count));
                    e.0 += 1;
                }
                placed.push((rec.index, pl.tile, pl.quadrant, pl.color, pl.members.clone()));
            }
        }
        for (a, x) in placed.iter().enumerate() {
            for y in &placed[a + 1..] {
                if x.0 != y.0 && x.1 == y.1 && x.2 == y.2 && x.4.iter().any(|m| y.4.contains(m)) {
                    qualifying_pairs += 1;
                    if x.3 == y.3 {
                        conflicts += 1;
                    }
                }
            }
        }
        for (count, v) in per_point.values() {
            if *count > ((2 * v) as f64).log2().floor() as usize {
                over_budget += 1;
            }
        }
    }
    outcome(
        conflicts == 0 && bad_members == 0 && over_budget == 0,
        format!(
            "{qualifying_pairs} qualifying pairs, {conflicts} equal colors, {bad_members} bad member lists, {over_budget} points over budget"
        ),
    )
}

fn cone_angles() -> Outcome {
    let mut pass = true;
    let mut worst_disk: f64 = 0.0;
    let mut worst_kgon: f64 = 0.0;
    let mut k4 = f64::NAN;
    let mut shapes = vec![RefShape(None)];
    shapes.extend((4..=12).map(|k| RefShape(Some(k))));
    for r in shapes {
        let shape = shape_of(r);
        let grid = Grid::new(&shape, Point::ORIGIN);
        let tile = TileId::new(0, 0);
        let (l, _, _) = r.tiling();
        let apexes = r.quadrant_centers((0.0, 0.0));
        for (a, tau) in Quadrant::ALL.into_iter().enumerate() {
            let corners = [(0.0, 0.0), (l, 0.0), (l, l), (0.0, l)];
            let o = apexes[a];
            let mut reference: f64 = 0.0;
            for c1 in corners {
                for c2 in corners {
                    let u = (c1.0 - o.0, c1.1 - o.1);
                    let v = (c2.0 - o.0, c2.1 - o.1);
                    let ang = (u.0 * v.1 - u.1 * v.0).abs().atan2(u.0 * v.0 + u.1 * v.1);
                    reference = reference.max(ang);
                }
            }
            let got = cone_of(&grid, tile, tau).opening_angle();
            pass &= (got - reference).abs() < 1e-12;
            match r.0 {
                None => {
                    pass &= got < PI / 2.0;
                    worst_disk = worst_disk.max(got);
                }
                Some(k) => {
                    pass &= got < PI / 4.0;
                    worst_kgon = worst_kgon.max(got);
                    if k == 4 {
                        pass &= (got - (21.0f64 / 29.0).acos()).abs() <= CONE_K4_TOL;
                        k4 = got;
                    }
                }
            }
        }
    }
    outcome(
        pass,
        format!(
            "disk max {worst_disk:.6} < π/2, k-gon max {worst_kgon:.6} < π/4, k=4 {k4:.15} vs arccos(21/29) {:.15}",
            (21.0f64 / 29.0).acos()
        ),
    )
}

fn reflection_and_params() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut shapes = vec![Shape::disk()];
    shapes.extend((4..=12).map(|k| Shape::polygon(k).unwrap()));
    let reflected: Vec<Shape> = shapes.iter().map(Shape::reflect).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let s = rng.gen_range(0..shapes.len());
        let x = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let y = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        worst = worst.max((shapes[s].convex_distance(x, y) - reflected[s].convex_distance(y, x)).abs());
    }
    let mut param_err: f64 = 0.0;
    for k in 4..=16u32 {
        let p = polygon_params(k).unwrap();
        let half = PI / k as f64;
        param_err = param_err.max((p.r_out - 1.0 / half.cos()).abs());
        param_err = param_err.max((p.side - 2.0 * half.tan()).abs());
        for (v, w) in p.vertices.iter().zip(RefShape(Some(k)).vertices()) {
            param_err = param_err.max((v.x - w.0).abs()).max((v.y - w.1).abs());
        }
        // the gauge is the closed-form distance
        let shape = Shape::polygon(k).unwrap();
        for _ in 0..100 {
            let x = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            param_err = param_err.max((shape.gauge(x) - RefShape(Some(k)).dist((0.0, 0.0), pt(x))).abs());
        }
    }
    outcome(
        worst <= GAUGE_SYMMETRY_TOL && param_err <= CLOSED_FORM_TOL,
        format!("max |d_σ(x,y) − d_−σ(y,x)| = {worst:.2e} over 1e5 triples, max closed-form error {param_err:.2e}"),
    )
}

fn rankings() -> Outcome {
    let mut pass = true;
    for n in 1..=1024usize {
        let r = ruler_ranking(n);
        pass &= verify_ranking(&r.colors);
        pass &= r.max_color() == (n as f64).log2().floor() as u32 + 1;
        if n <= 64 {
            pass &= common::brute_ranking_valid(&r.colors);
        }
    }
    outcome(pass, "ruler ranking valid and optimal for n ≤ 1024, brute-force agreement for n ≤ 64")
}

fn incidence(points: &[Point], objects: &[PlacedObject]) -> Vec<Vec<bool>> {
    points.iter().map(|&p| objects.iter().map(|o| o.contains(p, TOL)).collect()).collect()
}

fn duality() -> Outcome {
    let mut pass = true;
    let mut instances = 0;
    let mut ones = 0;
    for r in WITH_SEVEN {
        let shape = shape_of(r);
        for seed in 0..20u64 {
            let inst = random_instance(&shape, 15, 15, 500 + seed, 2.0).unwrap();
            let primal = incidence(&inst.points, &inst.objects);
            let d = dualize(&inst.points, &inst.objects, &shape).unwrap();
            let dual = incidence(&d.points, &d.objects);
            for i in 0..inst.points.len() {
                for j in 0..inst.objects.len() {
                    pass &= primal[i][j] == dual[j][i];
                    ones += primal[i][j] as usize;
                }
            }
            let dd = dualize(&d.points, &d.objects, &d.shape).unwrap();
            pass &= incidence(&dd.points, &dd.objects) == primal;
            instances += 1;
        }
    }
    outcome(pass && ones > 0, format!("{instances} instances, {ones} incidences, transposed exactly"))
}

fn disk_bound_field() -> Outcome {
    let mut pass = true;
    let mut seen = Vec::new();
    for (seed, n) in [(1u64, 1usize), (2, 5), (3, 8), (4, 37), (5, 60), (6, 100)] {
        let inst = random_instance(&Shape::disk(), n, 10, seed, 3.0).unwrap();
        let r = run_stream(&inst.points, &Shape::disk(), &inst.centers(), EngineConfig::default(), OptMode::Skip).unwrap();
        let want = 56 * ((2 * n) as f64).log2().floor() as u64;
        pass &= r.bound == want && r.m_sigma == 14;
        seen.push(format!("n={n}: {}", r.bound));
    }
    outcome(pass, format!("bound = 56·⌊log₂ 2n⌋: {}", seen.join(", ")))
}

fn main() {
    let start = Instant::now();
    let runs = random_runs();
    let results: Vec<(u32, &str, Outcome)> = std::thread::scope(|s| {
        let runs = &runs;
        let jobs: Vec<(u32, &str, std::thread::ScopedJoinHandle<Outcome>)> = vec![
            (1, "lower bound", s.spawn(lower_bound)),
            (2, "upper bound", s.spawn(move || upper_bound(runs))),
            (3, "tile counts", s.spawn(observation_one)),
            (4, "interval property", s.spawn(interval_property)),
            (5, "extreme-point oracle", s.spawn(extreme_oracle_equivalence)),
            (6, "distinct colors", s.spawn(move || distinct_colors(runs))),
            (7, "cone angles", s.spawn(cone_angles)),
            (8, "reflection and closed forms", s.spawn(reflection_and_params)),
            (9, "ruler ranking", s.spawn(rankings)),
            (10, "duality", s.spawn(duality)),
            (11, "disk bound constant", s.spawn(disk_bound_field)),
        ];
        jobs.into_iter()
            .map(|(n, name, h)| {
                let o = h.join().unwrap_or_else(|_| outcome(false, "panicked"));
                (n, name, o)
            })
            .collect()
    });
    let mut failed = 0;
    for (n, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {tag} {name}: {}", o.detail);
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
