use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Zonotope;
use crate::exact::{det3, Vec3};

/// Four parallel edges `[e] + base + {0, tau1, tau2, tau1 + tau2}`: the first
/// two on one facet, the last two on the opposite facet.
///
/// `base` is the lexicographically smallest of the four leg start points, so
/// the leg at `base` carries positive arc-length in the leg measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub e: Vec3,
    pub base: Vec3,
    pub tau1: Vec3,
    pub tau2: Vec3,
    /// Facet holding the legs at `base` and `base + tau1`.
    pub facet: usize,
    /// Facet holding the other two legs.
    pub opposite_facet: usize,
}

impl Frame {
    pub fn vectors(&self) -> [&Vec3; 3] {
        [&self.e, &self.tau1, &self.tau2]
    }

    pub fn is_degenerate(&self) -> bool {
        det3(&self.e, &self.tau1, &self.tau2).is_zero()
    }

    /// Leg start points with their arc-length signs `(+, -, -, +)`.
    pub fn legs(&self) -> [(Vec3, i8); 4] {
        let b1 = &self.base + &self.tau1;
        let b2 = &self.base + &self.tau2;
        let b3 = &b1 + &self.tau2;
        [(self.base.clone(), 1), (b1, -1), (b2, -1), (b3, 1)]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameList {
    pub frames: Vec<Frame>,
    /// Frames whose `e, tau1, tau2` are linearly dependent; kept out of
    /// `frames`.
    pub degenerate: Vec<Frame>,
}

/// One frame per (facet pair, edge direction on that facet).
pub fn frames(z: &Zonotope) -> FrameList {
    let mut out = FrameList::default();
    let twice_center = z.center() + z.center();
    for (fi, facet) in z.facets().iter().enumerate().step_by(2) {
        let poly = &facet.polygon;
        for (k, e) in poly.steps.iter().enumerate() {
            let (s0, s1) = poly.edge_pair(k);
            // central reflection maps the edge starting at s to one starting at 2c - s - e
            let reflect = |s: &Vec3| &(&twice_center - s) - e;
            let corners = [s0.clone(), s1.clone(), reflect(&s1), reflect(&s0)];
            let k0 = (0..4).min_by(|&a, &b| corners[a].cmp(&corners[b])).unwrap();
            let base = corners[k0].clone();
            let tau1 = &corners[k0 ^ 1] - &base;
            let tau2 = &corners[k0 ^ 2] - &base;
            let (near, far) = if k0 & 2 == 0 { (fi, facet.opposite) } else { (facet.opposite, fi) };
            let frame = Frame { e: e.clone(), base, tau1, tau2, facet: near, opposite_facet: far };
            if frame.is_degenerate() {
                out.degenerate.push(frame);
            } else {
                out.frames.push(frame);
            }
        }
    }
    out
}
