//! Three-dimensional zonotopes `translate + sum [0, v_i]` with rational
//! generators, their facets, vertices and exact point location.

mod frame;
mod mesh;
mod paving;

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det3, rank, Rational, Vec3};

pub use frame::{frames, Frame, FrameList};
pub use mesh::export_off;
pub use paving::{pave, Cell, Paving};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Interior,
    Boundary,
    Outside,
}

/// Generators parallel to one direction (either orientation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionClass {
    /// Primitive integer direction, first nonzero coordinate positive.
    pub direction: Vec3,
    pub members: Vec<usize>,
}

/// A facet: the 2D zonotope of `plane_generators` placed at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integer outward normal.
    pub normal: Vec3,
    pub plane_generators: Vec<usize>,
    pub offset: Vec3,
    /// Index of the facet with normal `-normal`.
    pub opposite: usize,
    /// `<normal, y>` for every `y` on the facet.
    pub level: Rational,
    pub polygon: Polygon,
}

/// Boundary of a centrally symmetric polygon, walked counter-clockwise about
/// the facet's outward normal: `base, base + s_1, ..., base + sum s, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub base: Vec3,
    /// Edge vectors (merged parallel generators) in increasing angle.
    pub steps: Vec<Vec3>,
}

impl Polygon {
    pub fn vertices(&self) -> Vec<Vec3> {
        let mut out = Vec::with_capacity(2 * self.steps.len());
        let mut cur = self.base.clone();
        for s in &self.steps {
            out.push(cur.clone());
            cur = &cur + s;
        }
        for s in &self.steps {
            out.push(cur.clone());
            cur = &cur - s;
        }
        out
    }

    pub fn center(&self) -> Vec3 {
        let total: Vec3 = self.steps.iter().sum();
        &self.base + &total.scale(&crate::exact::q(1, 2))
    }

    /// Start points of the two edges parallel to `steps[k]`.
    pub fn edge_pair(&self, k: usize) -> (Vec3, Vec3) {
        let before: Vec3 = self.steps[..k].iter().sum();
        let after: Vec3 = self.steps[k + 1..].iter().sum();
        (&self.base + &before, &self.base + &after)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    generators: Vec<Vec3>,
    translate: Vec3,
    center: Vec3,
    classes: Vec<DirectionClass>,
    facets: Vec<Facet>,
}

impl Zonotope {
    pub fn build(generators: Vec<Vec3>, translate: Vec3) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::DegenerateZonotope);
        }
        if let Some(i) = generators.iter().position(Vec3::is_zero) {
            return Err(Error::ZeroSegment(i));
        }
        if rank(&generators) < 3 {
            return Err(Error::DegenerateZonotope);
        }
        let half = crate::exact::q(1, 2);
        let center = &translate + &generators.iter().sum::<Vec3>().scale(&half);
        let classes = direction_classes(&generators);

        let mut normals: Vec<Vec3> = Vec::new();
        let mut seen = HashSet::new();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                let n = a.direction.cross(&b.direction).direction();
                if seen.insert(n.clone()) {
                    normals.push(n);
                }
            }
        }

        let mut facets = Vec::with_capacity(2 * normals.len());
        for n in normals {
            for normal in [n.clone(), -n] {
                let idx = facets.len();
                facets.push(make_facet(&generators, &translate, normal, idx ^ 1));
            }
        }
        Ok(Zonotope { generators, translate, center, classes, facets })
    }

    pub fn generators(&self) -> &[Vec3] {
        &self.generators
    }

    pub fn translate(&self) -> &Vec3 {
        &self.translate
    }

    pub fn center(&self) -> &Vec3 {
        &self.center
    }

    pub fn direction_classes(&self) -> &[DirectionClass] {
        &self.classes
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertices, sorted lexicographically.
    pub fn vertices(&self) -> Vec<Vec3> {
        let set: BTreeSet<Vec3> = self.facets.iter().flat_map(|f| f.polygon.vertices()).collect();
        set.into_iter().collect()
    }

    /// `max <u, y>` over the body.
    pub fn support(&self, u: &Vec3) -> Rational {
        self.generators.iter().map(|g| g.dot(u)).filter(|d| d.is_positive()).fold(u.dot(&self.translate), |acc, d| acc + d)
    }

    /// Closed bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = self.translate.clone();
        let mut hi = self.translate.clone();
        for g in &self.generators {
            for i in 0..3 {
                if g[i].is_negative() {
                    lo[i] += &g[i];
                } else {
                    hi[i] += &g[i];
                }
            }
        }
        (lo, hi)
    }

    /// Sum of `|det|` over all linearly independent generator triples.
    pub fn volume(&self) -> Rational {
        let g = &self.generators;
        let mut total = Rational::zero();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                for k in j + 1..g.len() {
                    total += det3(&g[i], &g[j], &g[k]).abs();
                }
            }
        }
        total
    }

    /// Exact location of `x` relative to the closed body, from the facet
    /// inequalities `<n, x> <= level`.
    pub fn contains(&self, x: &Vec3) -> Containment {
        let mut on_boundary = false;
        for f in &self.facets {
            let v = f.normal.dot(x);
            if v > f.level {
                return Containment::Outside;
            }
            on_boundary |= v == f.level;
        }
        if on_boundary {
            Containment::Boundary
        } else {
            Containment::Interior
        }
    }

    /// Indices of facets whose plane contains `x` (only meaningful for `x`
    /// in the body).
    pub fn tight_facets(&self, x: &Vec3) -> Vec<usize> {
        self.facets.iter().enumerate().filter(|(_, f)| f.normal.dot(x) == f.level).map(|(i, _)| i).collect()
    }

    pub fn translated(&self, t: &Vec3) -> Zonotope {
        Zonotope::build(self.generators.clone(), &self.translate + t).expect("translation preserves validity")
    }
}

fn direction_classes(generators: &[Vec3]) -> Vec<DirectionClass> {
    let mut classes: Vec<DirectionClass> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let d = g.direction();
        match classes.iter_mut().find(|c| c.direction == d) {
            Some(c) => c.members.push(i),
            None => classes.push(DirectionClass { direction: d, members: vec![i] }),
        }
    }
    classes
}

fn make_facet(generators: &[Vec3], translate: &Vec3, normal: Vec3, opposite: usize) -> Facet {
    let mut offset = translate.clone();
    let mut plane_generators = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let d = g.dot(&normal);
        if d.is_zero() {
            plane_generators.push(i);
        } else if d.is_positive() {
            offset = &offset + g;
        }
    }
    let level = normal.dot(&offset);
    let polygon = facet_polygon(generators, &plane_generators, &offset, &normal);
    Facet { normal, plane_generators, offset, opposite, level, polygon }
}

fn facet_polygon(generators: &[Vec3], plane: &[usize], offset: &Vec3, normal: &Vec3) -> Polygon {
    let reference = &generators[plane[0]];
    // half-plane of angles [0, pi) measured from `reference` about `normal`
    let upper = |h: &Vec3| {
        let s = reference.cross(h).dot(normal);
        s.is_positive() || (s.is_zero() && reference.dot(h).is_positive())
    };
    let mut base = offset.clone();
    let mut steps: Vec<Vec3> = Vec::new();
    for &i in plane {
        let g = &generators[i];
        let h = if upper(g) {
            g.clone()
        } else {
            base = &base + g;
            -g
        };
        match steps.iter_mut().find(|s| s.is_parallel(&h)) {
            Some(s) => *s = &*s + &h,
            None => steps.push(h),
        }
    }
    steps.sort_by(|a, b| {
        if a == b {
            return std::cmp::Ordering::Equal;
        }
        if a.cross(b).dot(normal).is_positive() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Polygon { base, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    pub(crate) fn cube() -> Zonotope {
        Zonotope::build((0..3).map(Vec3::unit).collect(), Vec3::zero()).unwrap()
    }

    pub(crate) fn rhombic() -> Zonotope {
        let mut g: Vec<Vec3> = (0..3).map(Vec3::unit).collect();
        g.push(Vec3::from_ints(1, 1, 1));
        Zonotope::build(g, Vec3::zero()).unwrap()
    }

    #[test]
    fn unit_cube_census() {
        let z = cube();
        assert_eq!(z.facets().len(), 6);
        assert_eq!(z.vertices().len(), 8);
        assert_eq!(z.center(), &Vec3::new(q(1, 2), q(1, 2), q(1, 2)));
        assert_eq!(z.volume(), int(1));
    }

    #[test]
    fn rhombic_dodecahedron_census() {
        let z = rhombic();
        assert_eq!(z.facets().len(), 12);
        assert_eq!(z.vertices().len(), 14);
        assert_eq!(z.volume(), int(4));
        for f in z.facets() {
            assert_eq!(f.polygon.steps.len(), 2);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let flat = vec![Vec3::unit(0), Vec3::unit(1)];
        assert_eq!(Zonotope::build(flat, Vec3::zero()).unwrap_err(), Error::DegenerateZonotope);
        let with_zero = vec![Vec3::unit(0), Vec3::zero(), Vec3::unit(1), Vec3::unit(2)];
        assert_eq!(Zonotope::build(with_zero, Vec3::zero()).unwrap_err(), Error::ZeroSegment(1));
        assert_eq!(Zonotope::build(vec![], Vec3::zero()).unwrap_err(), Error::DegenerateZonotope);
    }

    #[test]
    fn box_volume() {
        let g = vec![Vec3::from_ints(2, 0, 0), Vec3::from_ints(0, 3, 0), Vec3::unit(2)];
        assert_eq!(Zonotope::build(g, Vec3::zero()).unwrap().volume(), int(6));
    }

    #[test]
    fn cube_point_location() {
        let z = cube();
        let h = q(1, 2);
        assert_eq!(z.contains(&Vec3::new(h.clone(), h.clone(), h.clone())), Containment::Interior);
        assert_eq!(z.contains(&Vec3::new(int(1), h.clone(), h.clone())), Containment::Boundary);
        assert_eq!(z.contains(&Vec3::from_ints(2, 0, 0)), Containment::Outside);
    }

    #[test]
    fn facets_pair_up_and_are_centrally_symmetric() {
        let mut g: Vec<Vec3> = (0..3).map(Vec3::unit).collect();
        g.push(Vec3::from_ints(1, 1, 0));
        g.push(Vec3::new(q(1, 2), int(-1), int(2)));
        g.push(Vec3::from_ints(-1, 0, 0));
        let z = Zonotope::build(g, Vec3::from_ints(1, -2, 3)).unwrap();
        for (i, f) in z.facets().iter().enumerate() {
            let o = &z.facets()[f.opposite];
            assert_eq!(o.opposite, i);
            assert_eq!(o.normal, -f.normal.clone());
            // opposite facets are reflections through the body's center
            let c = z.center();
            let reflected: BTreeSet<Vec3> = f.polygon.vertices().iter().map(|v| &(c + c) - v).collect();
            let other: BTreeSet<Vec3> = o.polygon.vertices().into_iter().collect();
            assert_eq!(reflected, other);
            // each polygon is symmetric about its own center
            let fc = f.polygon.center();
            let verts: BTreeSet<Vec3> = f.polygon.vertices().into_iter().collect();
            let mirrored: BTreeSet<Vec3> = verts.iter().map(|v| &(&fc + &fc) - v).collect();
            assert_eq!(verts, mirrored);
            for v in &verts {
                assert_eq!(f.normal.dot(v), f.level);
                assert_ne!(z.contains(v), Containment::Outside);
            }
        }
    }

    #[test]
    fn polygons_turn_counter_clockwise_about_the_outward_normal() {
        let z = rhombic();
        for f in z.facets() {
            let v = f.polygon.vertices();
            for i in 0..v.len() {
                let a = &v[(i + 1) % v.len()] - &v[i];
                let b = &v[(i + 2) % v.len()] - &v[(i + 1) % v.len()];
                assert!(a.cross(&b).dot(&f.normal).is_positive());
            }
        }
    }
}
