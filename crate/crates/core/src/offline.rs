//! Offline minimum hitting set: an exact branch-and-bound for small systems
//! and the greedy baseline.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{PlacedObject, Point};
use crate::{Error, Result};

pub const MAX_EXACT_SETS: usize = 64;
pub const MAX_EXACT_UNIVERSE: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SetSystem {
    /// Point ids, `0..n`.
    pub universe: Vec<usize>,
    /// Distinct nonempty sets, each sorted.
    pub sets: Vec<Vec<usize>>,
    /// How many objects produced each distinct set.
    pub multiplicity: Vec<usize>,
    /// Distinct set of each object, `None` for objects holding no point.
    pub object_set: Vec<Option<usize>>,
    /// Objects holding no point.
    pub infeasible: Vec<usize>,
}

impl SetSystem {
    /// Builds a system from explicit sets over `0..n`.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut sys = SetSystem { universe: (0..n).collect(), ..Default::default() };
        for (obj, s) in sets.iter().enumerate() {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidArgument(format!("set {obj} names point {bad} outside 0..{n}")));
            }
            sys.push(obj, s);
        }
        Ok(sys)
    }

    fn push(&mut self, obj: usize, s: Vec<usize>) {
        if s.is_empty() {
            self.infeasible.push(obj);
            self.object_set.push(None);
            return;
        }
        match self.sets.iter().position(|t| *t == s) {
            Some(i) => {
                self.multiplicity[i] += 1;
                self.object_set.push(Some(i));
            }
            None => {
                self.sets.push(s);
                self.multiplicity.push(1);
                self.object_set.push(Some(self.sets.len() - 1));
            }
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.infeasible.is_empty()
    }

    /// Same system with the infeasibility flags cleared.
    pub fn feasible_part(&self) -> SetSystem {
        SetSystem { infeasible: Vec::new(), ..self.clone() }
    }

    pub fn is_hit_by(&self, ids: &[usize]) -> bool {
        self.sets.iter().all(|s| s.iter().any(|x| ids.contains(x)))
    }

    fn check_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::Infeasible(format!("objects {:?} hold no point", self.infeasible)))
        }
    }
}

pub fn to_set_system(points: &[Point], objects: &[PlacedObject], tol: f64) -> SetSystem {
    let mut sys = SetSystem { universe: (0..points.len()).collect(), ..Default::default() };
    for (obj, o) in objects.iter().enumerate() {
        let s: Vec<usize> = (0..points.len()).filter(|&i| o.contains(points[i], tol)).collect();
        sys.push(obj, s);
    }
    sys
}

/// Repeatedly takes the point in the most unhit sets, lowest id on ties.
pub fn greedy_hitting_set(sys: &SetSystem) -> Result<Vec<usize>> {
    sys.check_feasible()?;
    let mut hit = vec![false; sys.sets.len()];
    let mut left = sys.sets.len();
    let mut chosen = Vec::new();
    let n = sys.universe.len();
    while left > 0 {
        let mut count = vec![0usize; n];
        for (s, set) in sys.sets.iter().enumerate() {
            if !hit[s] {
                for &x in set {
                    count[x] += 1;
                }
            }
        }
        let mut best = 0;
        for x in 1..n {
            if count[x] > count[best] {
                best = x;
            }
        }
        chosen.push(best);
        for (s, set) in sys.sets.iter().enumerate() {
            if !hit[s] && set.contains(&best) {
                hit[s] = true;
                left -= 1;
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

struct Search {
    /// For each compressed point, the sets holding it.
    point_sets: Vec<u64>,
    /// For each set, its compressed points.
    set_points: Vec<u128>,
    best: Vec<usize>,
}

impl Search {
    fn run(&mut self, uncovered: u64, chosen: &mut Vec<usize>) {
        if uncovered == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= self.best.len() {
            // no room for anything but a single point finishing the job
            if chosen.len() + 1 == self.best.len() {
                if let Some(p) = (0..self.point_sets.len()).find(|&p| self.point_sets[p] & uncovered == uncovered) {
                    chosen.push(p);
                    self.best = chosen.clone();
                    chosen.pop();
                }
            }
            return;
        }
        let max_deg = self.point_sets.iter().map(|&m| (m & uncovered).count_ones()).max().unwrap_or(0);
        if max_deg == 0 {
            return;
        }
        let lower = (uncovered.count_ones()).div_ceil(max_deg) as usize;
        if chosen.len() + lower >= self.best.len() {
            return;
        }
        let mut branch = None;
        let mut bits = uncovered;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let size = self.set_points[s].count_ones();
            if branch.is_none_or(|(_, b)| size < b) {
                branch = Some((s, size));
            }
        }
        let (s, _) = branch.expect("uncovered is nonempty");
        let mut pts = self.set_points[s];
        while pts != 0 {
            let p = pts.trailing_zeros() as usize;
            pts &= pts - 1;
            chosen.push(p);
            self.run(uncovered & !self.point_sets[p], chosen);
            chosen.pop();
        }
    }
}

/// Minimum-cardinality hitting set, sorted by id. Ties between optima go to
/// the first one met when branching on points in increasing id order.
pub fn exact_min_hitting_set(sys: &SetSystem) -> Result<Vec<usize>> {
    sys.check_feasible()?;
    if sys.sets.len() > MAX_EXACT_SETS {
        return Err(Error::TooLarge { sets: sys.sets.len(), universe: sys.universe.len() });
    }
    // points lying in exactly the same sets are interchangeable; keep the lowest id
    let mut signature = vec![0u64; sys.universe.len()];
    for (s, set) in sys.sets.iter().enumerate() {
        for &x in set {
            signature[x] |= 1 << s;
        }
    }
    let mut relevant: Vec<usize> = Vec::new();
    let mut slot: HashMap<u64, usize> = HashMap::new();
    for (x, &sig) in signature.iter().enumerate() {
        if sig != 0 && !slot.contains_key(&sig) {
            slot.insert(sig, relevant.len());
            relevant.push(x);
        }
    }
    if relevant.len() > MAX_EXACT_UNIVERSE {
        return Err(Error::TooLarge { sets: sys.sets.len(), universe: relevant.len() });
    }
    if sys.sets.is_empty() {
        return Ok(Vec::new());
    }
    let point_sets: Vec<u64> = relevant.iter().map(|&x| signature[x]).collect();
    let mut set_points = vec![0u128; sys.sets.len()];
    for (p, &sig) in point_sets.iter().enumerate() {
        for (s, mask) in set_points.iter_mut().enumerate() {
            if sig >> s & 1 == 1 {
                *mask |= 1 << p;
            }
        }
    }
    // greedy over representatives gives the starting bound
    let greedy: Vec<usize> = greedy_hitting_set(sys)?
        .into_iter()
        .map(|x| slot[&signature[x]])
        .collect();
    let mut search = Search { point_sets, set_points, best: greedy };
    let all = if sys.sets.len() == 64 { u64::MAX } else { (1u64 << sys.sets.len()) - 1 };
    search.run(all, &mut Vec::new());
    let mut out: Vec<usize> = search.best.into_iter().map(|p| relevant[p]).collect();
    out.sort_unstable();
    Ok(out)
}
