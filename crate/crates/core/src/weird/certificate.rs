use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::{build_weird, Color, Coloring, WeirdConstruction};
use crate::error::{Error, Result};
use crate::exact::{int, Vec3};
use crate::tiling::{Slab, TranslateSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinePoint {
    pub l: i64,
    pub point: Vec3,
    pub color: Color,
    pub multiplicity: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrregularityReport {
    pub line_generator: Vec3,
    pub l_min: i64,
    pub l_max: i64,
    pub points: Vec<LinePoint>,
    pub mismatches: usize,
    /// Both multiplicities 0 and 1 occur on the window.
    pub both_values_occur: bool,
    pub s_multiplicity_at_zero: usize,
    pub t_multiplicity_at_zero: usize,
    pub holds: bool,
    #[serde(skip)]
    pub translate_set: TranslateSet,
}

/// Builds the translate set with `E_j = T` exactly on the line cosets
/// `j = T l` whose `l` is black, and compares its multiplicity at each
/// `l * gamma_1` with the coloring.
pub fn irregularity_certificate(c: &WeirdConstruction, coloring: &Coloring, l_range: RangeInclusive<i64>) -> Result<IrregularityReport> {
    let cosets = c.cosets();
    if !cosets.contains_line(l_range.clone()) {
        return Err(Error::CosetLineMissing);
    }
    let choice: BTreeMap<i64, Slab> =
        l_range.clone().filter(|&l| coloring.color(l) == Color::Black).map(|l| (cosets.line_index(l), Slab::T)).collect();
    let lam = build_weird(c, choice)?;
    let gen = cosets.line_generator();
    let points: Vec<LinePoint> = l_range
        .clone()
        .map(|l| {
            let point = gen.scale(&int(l));
            let color = coloring.color(l);
            LinePoint { l, multiplicity: lam.multiplicity_at(&point), expected: u64::from(color == Color::Red), point, color }
        })
        .collect();
    let mismatches = points.iter().filter(|p| p.multiplicity != p.expected).count();
    let both_values_occur = points.iter().any(|p| p.multiplicity == 0) && points.iter().any(|p| p.multiplicity == 1);
    let s0 = c.slab_multiplicity(Slab::S, &Vec3::zero());
    let t0 = c.slab_multiplicity(Slab::T, &Vec3::zero());
    Ok(IrregularityReport {
        line_generator: gen,
        l_min: *l_range.start(),
        l_max: *l_range.end(),
        mismatches,
        both_values_occur,
        s_multiplicity_at_zero: s0,
        t_multiplicity_at_zero: t0,
        holds: mismatches == 0 && both_values_occur && s0 != t0,
        points,
        translate_set: lam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weird::ap_coloring;
    use crate::weird::tests::cube_construction;

    #[test]
    fn cube_line_matches_coloring() {
        let c = cube_construction();
        let r = irregularity_certificate(&c, &ap_coloring(200), -50..=50).unwrap();
        assert_eq!(r.mismatches, 0);
        assert!(r.both_values_occur);
        assert!(r.holds);
        assert_eq!((r.s_multiplicity_at_zero, r.t_multiplicity_at_zero), (1, 0));
    }

    #[test]
    fn all_red_gives_all_ones() {
        let r = irregularity_certificate(&cube_construction(), &Coloring::default(), -10..=10).unwrap();
        assert!(r.points.iter().all(|p| p.multiplicity == 1));
        assert!(!r.both_values_occur);
    }

    #[test]
    fn all_black_gives_all_zeros() {
        let mut col = Coloring::default();
        for l in -10..=10 {
            col.colored.insert(l, Color::Black);
        }
        let r = irregularity_certificate(&cube_construction(), &col, -10..=10).unwrap();
        assert!(r.points.iter().all(|p| p.multiplicity == 0));
    }
}
