//! Hitting set / set cover duality. Object centers become points and points
//! become centers of the reflected shape; `p ∈ σ(c)` iff `c ∈ (−σ)(p)`.

use crate::geometry::{PlacedObject, Point, Shape};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DualInstance {
    pub shape: Shape,
    /// Centers of the primal objects.
    pub points: Vec<Point>,
    /// Reflected shape centered at the primal points.
    pub objects: Vec<PlacedObject>,
}

impl DualInstance {
    pub fn centers(&self) -> Vec<Point> {
        self.objects.iter().map(|o| o.center).collect()
    }
}

pub fn dualize(points: &[Point], objects: &[PlacedObject], shape: &Shape) -> Result<DualInstance> {
    if let Some(i) = objects.iter().position(|o| o.shape != *shape) {
        return Err(Error::InvalidArgument(format!(
            "object {i} is a {} but the instance uses {shape}",
            objects[i].shape
        )));
    }
    let dual_shape = shape.reflect();
    Ok(DualInstance {
        points: objects.iter().map(|o| o.center).collect(),
        objects: points.iter().map(|&p| dual_shape.at(p)).collect(),
        shape: dual_shape,
    })
}

/// `m[i][j]`: point `i` lies in object `j`.
pub fn incidence(points: &[Point], objects: &[PlacedObject], tol: f64) -> Vec<Vec<bool>> {
    points.iter().map(|&p| objects.iter().map(|o| o.contains(p, tol)).collect()).collect()
}

pub fn transpose(m: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Primal objects covered by a dual hitting set: a dual point `j` stands for
/// primal object `j`, so the chosen ids are the same.
pub fn cover_from_hitting_set(dual_hits: &[usize]) -> Vec<usize> {
    dual_hits.to_vec()
}
