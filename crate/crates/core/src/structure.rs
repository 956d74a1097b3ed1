//! Intersection property, two-flatness and the resulting classification.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det3, rank, Vec3};
use crate::zonotope::{frames, Frame, Zonotope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionVerdict {
    pub holds: bool,
    /// A nonzero `u` orthogonal to some vector of every frame.
    pub witness: Option<Vec3>,
    /// For each frame, which of `e, tau1, tau2` (0, 1, 2) is orthogonal to
    /// the witness.
    pub certificate: Vec<usize>,
}

/// Index of the first frame vector orthogonal to `u`.
pub fn orthogonal_member(frame: &Frame, u: &Vec3) -> Option<usize> {
    frame.vectors().iter().position(|v| v.dot(u).is_zero())
}

/// Canonical primitive vector orthogonal to `d`: the lexicographically
/// smallest of the normalized `d x e_k`.
pub fn canonical_perpendicular(d: &Vec3) -> Vec3 {
    (0..3).map(|k| d.cross(&Vec3::unit(k))).filter(|c| !c.is_zero()).map(|c| c.direction()).min().expect("nonzero vector")
}

fn certify(frames: &[Frame], u: &Vec3) -> Option<Vec<usize>> {
    frames.iter().map(|f| orthogonal_member(f, u)).collect()
}

pub fn intersection_property(frames: &[Frame]) -> Result<IntersectionVerdict> {
    if frames.is_empty() {
        return Err(Error::EmptyFrames);
    }
    if frames.iter().any(Frame::is_degenerate) {
        return Err(Error::DegenerateFrame);
    }
    let mut dirs: Vec<Vec3> = frames.iter().flat_map(|f| f.vectors().map(Vec3::direction)).collect();
    dirs.sort();
    dirs.dedup();

    let fail = |u: Vec3, cert: Vec<usize>| IntersectionVerdict { holds: false, witness: Some(u), certificate: cert };

    // (i) a direction present in every frame
    for d in &dirs {
        if frames.iter().all(|f| f.vectors().iter().any(|v| v.is_parallel(d))) {
            let u = canonical_perpendicular(d);
            let cert = certify(frames, &u).ok_or_else(|| Error::TheoremContradiction("case (i) witness does not certify".into()))?;
            return Ok(fail(u, cert));
        }
    }
    // (ii) a plane meeting every frame
    let mut candidates: Vec<Vec3> = Vec::new();
    for (i, a) in dirs.iter().enumerate() {
        for b in &dirs[i + 1..] {
            candidates.push(a.cross(b).direction());
        }
    }
    candidates.sort();
    candidates.dedup();
    for u in candidates {
        if let Some(cert) = certify(frames, &u) {
            return Ok(fail(u, cert));
        }
    }
    Ok(IntersectionVerdict { holds: true, witness: None, certificate: vec![] })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFlatVerdict {
    pub is_two_flat: bool,
    pub h1_indices: Vec<usize>,
    pub h2_indices: Vec<usize>,
    pub h1_normal: Option<Vec3>,
    pub h2_normal: Option<Vec3>,
}

/// Normal of the plane spanned by `dirs` (rank 1 or 2).
fn flat_normal(dirs: &[&Vec3]) -> Vec3 {
    for (i, a) in dirs.iter().enumerate() {
        for b in &dirs[i + 1..] {
            let c = a.cross(b);
            if !c.is_zero() {
                return c.direction();
            }
        }
    }
    canonical_perpendicular(dirs[0])
}

pub fn two_flat(z: &Zonotope) -> TwoFlatVerdict {
    let classes = z.direction_classes();
    let n = classes.len();
    let dirs: Vec<&Vec3> = classes.iter().map(|c| &c.direction).collect();
    let verdict = |in_h1: &[bool]| {
        let pick = |want: bool| -> (Vec<usize>, Vec<&Vec3>) {
            let mut idx: Vec<usize> = Vec::new();
            let mut ds = Vec::new();
            for (c, &f) in classes.iter().zip(in_h1) {
                if f == want {
                    idx.extend(&c.members);
                    ds.push(&c.direction);
                }
            }
            idx.sort();
            (idx, ds)
        };
        let (h1, d1) = pick(true);
        let (h2, d2) = pick(false);
        TwoFlatVerdict { is_two_flat: true, h1_indices: h1, h2_indices: h2, h1_normal: Some(flat_normal(&d1)), h2_normal: Some(flat_normal(&d2)) }
    };
    let rest_is_flat = |in_h1: &[bool]| {
        let rest: Vec<Vec3> = dirs.iter().zip(in_h1).filter(|(_, f)| !**f).map(|(d, _)| (*d).clone()).collect();
        rank(&rest) <= 2
    };

    if n <= 4 {
        let in_h1: Vec<bool> = (0..n).map(|i| i < 2).collect();
        return verdict(&in_h1);
    }
    for i in 0..n {
        for j in i + 1..n {
            let in_h1: Vec<bool> = (0..n).map(|k| det3(dirs[i], dirs[j], dirs[k]).is_zero()).collect();
            if rest_is_flat(&in_h1) {
                return verdict(&in_h1);
            }
        }
    }
    for i in 0..n {
        let in_h1: Vec<bool> = (0..n).map(|k| k == i).collect();
        if rest_is_flat(&in_h1) {
            return verdict(&in_h1);
        }
    }
    TwoFlatVerdict { is_two_flat: false, h1_indices: vec![], h2_indices: vec![], h1_normal: None, h2_normal: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every tiling set is a finite union of translated lattices.
    NotTwoFlat { quasi_periodic_guarantee: bool },
    /// Tilings by non-quasi-periodic sets exist.
    TwoFlatRationalDiscrete { weird_tiling_available: bool },
    /// Two-flat, but the generators do not generate a discrete group.
    TwoFlatOther { weird_tiling_available: Option<bool> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub two_flat: TwoFlatVerdict,
    pub intersection: IntersectionVerdict,
    pub frame_count: usize,
}

pub fn classify(z: &Zonotope) -> Result<Classification> {
    let fl = frames(z);
    let intersection = intersection_property(&fl.frames)?;
    let tf = two_flat(z);
    if !intersection.holds && !tf.is_two_flat {
        return Err(Error::TheoremContradiction(format!(
            "intersection property fails (witness {}) but the zonotope is not two-flat",
            intersection.witness.as_ref().map(ToString::to_string).unwrap_or_default()
        )));
    }
    // rational generators always generate a discrete group
    let verdict = if tf.is_two_flat {
        Verdict::TwoFlatRationalDiscrete { weird_tiling_available: true }
    } else {
        Verdict::NotTwoFlat { quasi_periodic_guarantee: true }
    };
    Ok(Classification { verdict, two_flat: tf, intersection, frame_count: fl.frames.len() })
}
