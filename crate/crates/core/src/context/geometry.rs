use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ContextError, LocationRef};

/// A point in a local Cartesian frame, in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coordinates {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub frame: String,
}

impl Coordinates {
    pub fn new(x: f64, y: f64, z: f64, frame: impl Into<String>) -> Result<Self, ContextError> {
        let c = Coordinates {
            x,
            y,
            z,
            frame: frame.into(),
        };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<(), ContextError> {
        if self.x.is_finite() && self.y.is_finite() && self.z.is_finite() {
            Ok(())
        } else {
            Err(ContextError::NonFinite)
        }
    }

    pub fn same_frame(&self, other: &Coordinates) -> Result<(), ContextError> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(ContextError::FrameMismatch(self.frame.clone(), other.frame.clone()))
        }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn distance(&self, other: &Coordinates) -> Result<f64, ContextError> {
        self.same_frame(other)?;
        Ok(norm(sub(other.as_array(), self.as_array())))
    }
}

/// Axis-aligned extents in meters, measured from a location's origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Volume {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

impl Volume {
    pub fn new(dx: f64, dy: f64, dz: f64) -> Result<Self, ContextError> {
        let v = Volume { dx, dy, dz };
        v.check()?;
        Ok(v)
    }

    pub fn check(&self) -> Result<(), ContextError> {
        let ok = [self.dx, self.dy, self.dz].iter().all(|e| e.is_finite() && *e > 0.0);
        if ok {
            Ok(())
        } else {
            Err(ContextError::BadVolume(self.dx, self.dy, self.dz))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    In,
    Near,
    Far,
    Left,
    Right,
    InFront,
}

#[derive(Debug, Clone, Copy)]
pub enum SpatialTarget<'a> {
    Location(&'a LocationRef),
    Point(&'a Coordinates),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpatialParams {
    pub near_threshold_m: f64,
    /// Observer heading in the shared frame. Directional relations are only
    /// produced when this is set.
    pub heading: Option<[f64; 3]>,
}

impl Default for SpatialParams {
    fn default() -> Self {
        SpatialParams {
            near_threshold_m: 10.0,
            heading: None,
        }
    }
}

/// Spatial relations of point `a` with respect to `target`.
///
/// Exactly one of `in`, `near`, `far` is always present. `in` is only
/// possible for location targets (closed box test). Distance to a location
/// is measured to the nearest point of its box. `left`/`right`/`in_front`
/// are derived from the heading and the vector from `a` to the target's
/// reference point (box center for locations).
pub fn spatial_relation(
    a: &Coordinates,
    target: SpatialTarget<'_>,
    params: &SpatialParams,
) -> Result<BTreeSet<Relation>, ContextError> {
    if !(params.near_threshold_m.is_finite() && params.near_threshold_m > 0.0) {
        return Err(ContextError::BadThreshold(params.near_threshold_m));
    }
    a.check()?;
    let mut out = BTreeSet::new();
    let p = a.as_array();
    let (distance, reference) = match target {
        SpatialTarget::Point(b) => {
            a.same_frame(b)?;
            b.check()?;
            let d = sub(b.as_array(), p);
            (norm(d), b.as_array())
        }
        SpatialTarget::Location(loc) => {
            a.same_frame(&loc.origin)?;
            loc.origin.check()?;
            loc.volume.check()?;
            let (lo, hi) = loc.bounds();
            let inside = (0..3).all(|i| p[i] >= lo[i] && p[i] <= hi[i]);
            if inside {
                out.insert(Relation::In);
            }
            let nearest: [f64; 3] = std::array::from_fn(|i| p[i].clamp(lo[i], hi[i]));
            let center: [f64; 3] = std::array::from_fn(|i| (lo[i] + hi[i]) / 2.0);
            (norm(sub(nearest, p)), center)
        }
    };
    if !out.contains(&Relation::In) {
        if distance <= params.near_threshold_m {
            out.insert(Relation::Near);
        } else {
            out.insert(Relation::Far);
        }
    }
    if let Some(heading) = params.heading {
        let len = norm(heading);
        if !(len.is_finite() && len > 0.0) {
            return Err(ContextError::BadHeading);
        }
        let h = heading.map(|c| c / len);
        let d = sub(reference, p);
        let cross_z = h[0] * d[1] - h[1] * d[0];
        if cross_z > 0.0 {
            out.insert(Relation::Left);
        } else if cross_z < 0.0 {
            out.insert(Relation::Right);
        }
        if dot(h, d) > 0.0 {
            out.insert(Relation::InFront);
        }
    }
    Ok(out)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}
