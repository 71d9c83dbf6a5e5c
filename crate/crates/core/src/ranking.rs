//! Vertex rankings of path graphs.

use crate::{Error, Result};

/// Colors of the path vertices in order; colors start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub colors: Vec<u32>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// Ruler sequence: vertex `i` gets one plus the 2-adic valuation of `i + 1`.
pub fn ruler_ranking(n: usize) -> Ranking {
    Ranking { colors: (1..=n).map(|i| i.trailing_zeros() + 1).collect() }
}

/// Any two equal colors must be separated by a strictly larger one.
pub fn verify_ranking(colors: &[u32]) -> bool {
    // colors seen with no larger color after them yet
    let mut open: Vec<u32> = Vec::new();
    for &c in colors {
        if c == 0 {
            return false;
        }
        if open.contains(&c) {
            return false;
        }
        // c separates every pending smaller color from its next occurrence
        open.retain(|&o| o > c);
        open.push(c);
    }
    true
}

/// Position and color of the largest color in `colors[lo..=hi]`.
pub fn max_color_in_interval(ranking: &Ranking, lo: usize, hi: usize) -> Result<(usize, u32)> {
    if lo > hi || hi >= ranking.len() {
        return Err(Error::InvalidArgument(format!(
            "interval [{lo}, {hi}] over {} vertices",
            ranking.len()
        )));
    }
    let (pos, &color) = ranking.colors[lo..=hi]
        .iter()
        .enumerate()
        .max_by_key(|&(_, c)| *c)
        .expect("non-empty interval");
    Ok((lo + pos, color))
}

/// `⌊log₂ n⌋ + 1`, the number of colors an optimal ranking of an n-path uses.
pub fn ranking_number(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        usize::BITS - n.leading_zeros()
    }
}
