//! Seeded random instances. All randomness comes from SplitMix64 seeded with
//! the user's 64-bit seed; points are drawn before centers, so the points of
//! a seed do not depend on the shape or on the number of objects.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::geometry::{PlacedObject, Point, Shape};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub points: Vec<Point>,
    pub objects: Vec<PlacedObject>,
}

impl RandomInstance {
    pub fn centers(&self) -> Vec<Point> {
        self.objects.iter().map(|o| o.center).collect()
    }
}

pub fn rng_from_seed(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Points uniform in `[0, span]²`, centers uniform in `[-r_out, span + r_out]²`.
pub fn random_instance(shape: &Shape, n_points: usize, n_objects: usize, seed: u64, span: f64) -> Result<RandomInstance> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("at least one point is needed".into()));
    }
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::InvalidArgument(format!("span must be positive, got {span}")));
    }
    let mut rng = rng_from_seed(seed);
    let points = (0..n_points)
        .map(|_| Point::new(rng.gen_range(0.0..=span), rng.gen_range(0.0..=span)))
        .collect();
    let r = shape.r_out();
    let objects = (0..n_objects)
        .map(|_| shape.at(Point::new(rng.gen_range(-r..=span + r), rng.gen_range(-r..=span + r))))
        .collect();
    Ok(RandomInstance { points, objects })
}
