mod common;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use common::*;
use zonotile::exact::{rank, Rational, Vec3};
use zonotile::zonotope::{export_off, frames, pave, Containment, Zonotope};

/// Distinct points `t + sum_{i in I} g_i`.
fn subset_sums(z: &Zonotope) -> Vec<Vec3> {
    let g = z.generators();
    let set: BTreeSet<Vec3> = (0u32..1 << g.len())
        .map(|mask| (0..g.len()).filter(|i| mask >> i & 1 == 1).map(|i| g[i].clone()).fold(z.translate().clone(), |a, b| a + b))
        .collect();
    set.into_iter().collect()
}

/// Brute-force hull facets of a finite point set as (primitive outward
/// normal, level): every plane through three points with all points on one
/// side and a 2-dimensional contact set.
fn hull_facets(pts: &[Vec3]) -> BTreeSet<(Vec3, Rational)> {
    let mut out = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let n = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                if n.is_zero() {
                    continue;
                }
                for n in [n.direction(), -n.direction()] {
                    let level = n.dot(&pts[i]);
                    if pts.iter().all(|p| n.dot(p) <= level) {
                        out.insert((n, level));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn facets_match_brute_force_hull() {
    let mut rng = rng(1);
    for _ in 0..25 {
        let z = pool_zonotope(&mut rng, 5).translated(&rand_vec(&mut rng));
        let expected = hull_facets(&subset_sums(&z));
        let got: BTreeSet<(Vec3, Rational)> = z.facets().iter().map(|f| (f.normal.clone(), f.level.clone())).collect();
        assert_eq!(got, expected, "generators {:?}", z.generators());
        for f in z.facets() {
            assert_eq!(z.facets()[f.opposite].normal, -f.normal.clone());
            assert_eq!(f.level, z.support(&f.normal));
        }
    }
}

#[test]
fn vertices_are_hull_points_on_three_independent_facets() {
    let mut rng = rng(2);
    for _ in 0..25 {
        let z = pool_zonotope(&mut rng, 5);
        let facets = hull_facets(&subset_sums(&z));
        let expected: Vec<Vec3> = subset_sums(&z)
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec3> = facets.iter().filter(|(n, l)| n.dot(p) == *l).map(|(n, _)| n.clone()).collect();
                rank(&tight) == 3
            })
            .collect();
        assert_eq!(z.vertices(), expected);
    }
}

#[test]
fn containment_matches_hull_inequalities() {
    let mut rng = rng(3);
    for _ in 0..10 {
        let z = pool_zonotope(&mut rng, 5);
        let facets = hull_facets(&subset_sums(&z));
        let (lo, hi) = z.bounding_box();
        let pad = Vec3::from_ints(1, 1, 1);
        for _ in 0..300 {
            let x = sample_in_box(&mut rng, &(&lo - &pad), &(&hi + &pad));
            let worst = facets.iter().map(|(n, l)| n.dot(&x) - l).max().unwrap();
            let expected = if worst.is_positive() {
                Containment::Outside
            } else if worst.is_zero() {
                Containment::Boundary
            } else {
                Containment::Interior
            };
            assert_eq!(z.contains(&x), expected);
        }
        for v in z.vertices() {
            assert_eq!(z.contains(&v), Containment::Boundary);
        }
        assert_eq!(z.contains(z.center()), Containment::Interior);
    }
}

#[test]
fn mesh_satisfies_euler_formula() {
    let mut rng = rng(4);
    for _ in 0..15 {
        let z = pool_zonotope(&mut rng, 6);
        let off = export_off(&z, 4);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let counts: Vec<usize> = lines.next().unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect();
        let (v, f) = (counts[0], counts[1]);
        let face_lines: Vec<&str> = off.lines().skip(2 + v).collect();
        assert_eq!(face_lines.len(), f);
        let edges: usize = face_lines.iter().map(|l| l.split_whitespace().next().unwrap().parse::<usize>().unwrap()).sum::<usize>() / 2;
        assert_eq!(v + f, edges + 2);
    }
}

#[test]
fn frames_are_opposite_facet_pairs() {
    let mut rng = rng(5);
    for _ in 0..20 {
        let z = pool_zonotope(&mut rng, 6);
        let list = frames(&z);
        assert!(list.degenerate.is_empty());
        for f in &list.frames {
            let facet = &z.facets()[f.facet];
            assert_eq!(facet.opposite, f.opposite_facet);
            assert!(f.e.dot(&facet.normal).is_zero() && f.tau1.dot(&facet.normal).is_zero());
            assert!(!f.tau2.dot(&facet.normal).is_zero());
            assert_eq!(facet.normal.dot(&f.base), facet.level);
            assert!(!f.is_degenerate());
        }
    }
}

#[test]
fn paving_volume_and_random_coverage() {
    let mut rng = rng(6);
    for _ in 0..8 {
        let z = pool_zonotope(&mut rng, 5);
        let p = pave(&z);
        assert_eq!(p.volume(), z.volume());
        let (lo, hi) = z.bounding_box();
        for _ in 0..400 {
            let x = sample_in_box(&mut rng, &lo, &hi);
            match z.contains(&x) {
                Containment::Interior => assert_eq!(p.multiplicity(&x), 1),
                Containment::Outside => assert_eq!(p.multiplicity(&x), 0),
                Containment::Boundary => {}
            }
        }
    }
}
