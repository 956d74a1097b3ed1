//! Half-open parallelepiped paving of a zonotope.
//!
//! Cells come from the lower facets of the zonotope lifted to `R^4` with
//! generic heights `h_i`: for every basis `B` of three generators the cell is
//! `sum_{i in B} [0, v_i] + sum_{j not in B, h_j < sum a_ij h_i} v_j`, where
//! `v_j = sum a_ij v_i`. Each cell is then made half-open with respect to a
//! generic direction `w`: a point `x` belongs to a cell iff `x + eps w` is in
//! its interior for small `eps > 0`. After flipping edges so every
//! coordinate of `w` is positive, a cell is `anchor + sum [0, 1) edge_i`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Zonotope;
use crate::exact::{det3, int, solve3, Rational, Vec3};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Indices of the three generators spanning the cell.
    pub generators: [usize; 3],
    pub anchor: Vec3,
    pub edges: [Vec3; 3],
}

impl Cell {
    pub fn volume(&self) -> Rational {
        det3(&self.edges[0], &self.edges[1], &self.edges[2]).abs()
    }

    fn coords(&self, x: &Vec3) -> [Rational; 3] {
        solve3([&self.edges[0], &self.edges[1], &self.edges[2]], &(x - &self.anchor)).expect("cell edges are independent")
    }

    /// Membership in `anchor + sum [0, 1) edge_i`.
    pub fn contains_half_open(&self, x: &Vec3) -> bool {
        self.coords(x).iter().all(|t| !t.is_negative() && *t < Rational::one())
    }

    pub fn contains_closed(&self, x: &Vec3) -> bool {
        self.coords(x).iter().all(|t| !t.is_negative() && *t <= Rational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Paving {
    pub cells: Vec<Cell>,
    /// Lifting heights used to select the cells.
    #[serde(with = "crate::exact::rational_seq")]
    pub heights: Vec<Rational>,
    /// Perturbation direction fixing the half-open convention.
    pub direction: Vec3,
}

impl Paving {
    pub fn volume(&self) -> Rational {
        self.cells.iter().map(Cell::volume).sum()
    }

    /// The unique half-open cell containing `x`, if any.
    pub fn locate(&self, x: &Vec3) -> Option<usize> {
        self.cells.iter().position(|c| c.contains_half_open(x))
    }

    /// Number of half-open cells containing `x` (0 or 1 for a valid paving).
    pub fn multiplicity(&self, x: &Vec3) -> usize {
        self.cells.iter().filter(|c| c.contains_half_open(x)).count()
    }
}

fn bases(g: &[Vec3]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            for k in j + 1..g.len() {
                if !det3(&g[i], &g[j], &g[k]).is_zero() {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// `h_j - sum a_ij h_i` for `v_j` expressed in basis `b`.
fn lift_gap(g: &[Vec3], heights: &[Rational], b: &[usize; 3], j: usize) -> Rational {
    let a = solve3([&g[b[0]], &g[b[1]], &g[b[2]]], &g[j]).expect("basis");
    let mut gap = heights[j].clone();
    for (ai, &bi) in a.iter().zip(b) {
        gap -= ai * &heights[bi];
    }
    gap
}

pub fn pave(z: &Zonotope) -> Paving {
    let g = z.generators();
    let bases = bases(g);

    // heights s^1, s^2, ...: each gap is a nonzero polynomial in s, so some s works
    let heights = (2i64..)
        .map(|s| {
            let s = int(s);
            let mut h = Vec::with_capacity(g.len());
            let mut p = s.clone();
            for _ in 0..g.len() {
                h.push(p.clone());
                p = &p * &s;
            }
            h
        })
        .find(|h| bases.iter().all(|b| (0..g.len()).filter(|j| !b.contains(j)).all(|j| !lift_gap(g, h, b, j).is_zero())))
        .expect("generic heights exist");

    // w = (1, s, s^2) off every plane spanned by two generators
    let direction = (2i64..)
        .map(|s| Vec3::from_ints(1, s, s * s))
        .find(|w| {
            (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].is_parallel(&g[j]) || !det3(w, &g[i], &g[j]).is_zero()))
        })
        .expect("generic direction exists");

    let cells = bases
        .iter()
        .map(|b| {
            let mut anchor = z.translate().clone();
            for j in (0..g.len()).filter(|j| !b.contains(j)) {
                if lift_gap(g, &heights, b, j).is_negative() {
                    anchor = &anchor + &g[j];
                }
            }
            let mut edges = [g[b[0]].clone(), g[b[1]].clone(), g[b[2]].clone()];
            let w_coords = solve3([&edges[0], &edges[1], &edges[2]], &direction).expect("basis");
            for (edge, s) in edges.iter_mut().zip(&w_coords) {
                if s.is_negative() {
                    anchor = &anchor + &*edge;
                    *edge = -edge.clone();
                }
            }
            Cell { generators: *b, anchor, edges }
        })
        .collect();
    Paving { cells, heights, direction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::zonotope::Containment;

    fn zono(g: &[[i64; 3]]) -> Zonotope {
        Zonotope::build(g.iter().map(|v| Vec3::from_ints(v[0], v[1], v[2])).collect(), Vec3::zero()).unwrap()
    }

    #[test]
    fn cube_is_one_cell() {
        let p = pave(&zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(p.cells.len(), 1);
        assert_eq!(p.volume(), int(1));
        assert_eq!(p.cells[0].anchor, Vec3::zero());
        assert_eq!(p.locate(&Vec3::zero()), Some(0));
        assert_eq!(p.locate(&Vec3::from_ints(1, 0, 0)), None);
    }

    #[test]
    fn rhombic_dodecahedron_has_four_unit_cells() {
        let z = zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let p = pave(&z);
        assert_eq!(p.cells.len(), 4);
        assert!(p.cells.iter().all(|c| c.volume() == int(1)));
        assert_eq!(p.volume(), z.volume());
    }

    #[test]
    fn parallel_generators_never_share_a_cell() {
        // bases: {e1,e2,e3} (det 1) and {e2,e3,2e1} (det 2)
        let z = zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 0]]);
        let p = pave(&z);
        assert_eq!(p.cells.len(), 2);
        assert_eq!(p.volume(), int(3));
        assert_eq!(z.volume(), int(3));
    }

    #[test]
    fn grid_points_have_multiplicity_matching_containment() {
        let z = zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, -1, 2]]);
        let p = pave(&z);
        let (lo, hi) = z.bounding_box();
        // a grid that hits many internal cell faces: half-open cells still partition
        let step = q(1, 4);
        let mut x = lo.x().clone();
        while &x <= hi.x() {
            let mut y = lo.y().clone();
            while &y <= hi.y() {
                let mut zc = lo.z().clone();
                while &zc <= hi.z() {
                    let pt = Vec3::new(x.clone(), y.clone(), zc.clone());
                    let m = p.multiplicity(&pt);
                    assert!(m <= 1, "point {pt} in {m} cells");
                    if z.contains(&pt) == Containment::Interior {
                        assert_eq!(m, 1, "interior point {pt} uncovered");
                    }
                    if z.contains(&pt) == Containment::Outside {
                        assert_eq!(m, 0);
                    }
                    zc += &step;
                }
                y += &step;
            }
            x += &step;
        }
    }
}
