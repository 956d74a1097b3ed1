//! Tilings of two-flat zonotopes by translate sets that are not finite
//! unions of translated lattices.

mod certificate;
mod coloring;

pub use certificate::{irregularity_certificate, IrregularityReport, LinePoint};
pub use coloring::{ap_coloring, ap_schedule, Color, Coloring};

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{coset_reps, int, is_integer, rank, CosetEnumeration, Lattice, Rational, Vec3, Window};
use crate::structure::TwoFlatVerdict;
use crate::tiling::{sample_point, sample_rng, LatticeProbe, Slab, SlabChoiceSet, TranslateSet};
use crate::zonotope::Zonotope;

const MAX_FLAT_GENERATORS: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct WeirdConstruction {
    #[serde(skip)]
    zonotope: Zonotope,
    /// Generator indices of `v_1..v_n`, spanning `H1`.
    pub v_indices: Vec<usize>,
    /// Generator indices of `w_1..w_m`.
    pub w_indices: Vec<usize>,
    pub g: Lattice,
    pub gamma: Lattice,
    #[serde(skip)]
    cosets: CosetEnumeration,
    #[serde(with = "crate::exact::rational_seq")]
    pub coefficients: Vec<Rational>,
    pub s_offsets: Vec<Vec3>,
    pub t_offsets: Vec<Vec3>,
    pub n_value: usize,
    pub base_level: u64,
    pub expected_level: u64,
    pub line_generator: Vec3,
    pub torsion_order: i64,
}

fn primes() -> impl Iterator<Item = i64> {
    (2i64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn subset_sums_avoid(avoid: &Lattice, v: &[Vec3], c: &[Rational]) -> bool {
    (1u32..1 << v.len()).all(|mask| {
        let s: Vec3 = (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i].scale(&c[i])).sum();
        !avoid.contains(&s)
    })
}

/// Coefficients `c_i` with every nonempty subset sum `sum_{i in I} c_i v_i`
/// outside `avoid`. Tries `c_i = 1/p` for primes `p = 2, 3, 5, ...`; once
/// `p` exceeds every lattice coordinate of the `v_i`, `c_i = p^-i` is
/// guaranteed to work and is used if equal coefficients still fail.
pub fn choose_coefficients(avoid: &Lattice, v: &[Vec3]) -> Result<Vec<Rational>> {
    let coords: Vec<Vec<Rational>> = v
        .iter()
        .map(|x| avoid.coordinates(x).ok_or_else(|| Error::Invalid(format!("{x} is outside the span of the lattice"))))
        .collect::<Result<_>>()?;
    let bound = coords.iter().flatten().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    for p in primes() {
        let equal = vec![Rational::new(1.into(), p.into()); v.len()];
        if subset_sums_avoid(avoid, v, &equal) {
            return Ok(equal);
        }
        if coords.iter().flatten().all(is_integer) && int(p) > bound {
            let mut c = Vec::with_capacity(v.len());
            let mut cur = Rational::one();
            for _ in 0..v.len() {
                cur /= int(p);
                c.push(cur.clone());
            }
            if subset_sums_avoid(avoid, v, &c) {
                return Ok(c);
            }
        }
        if p > 10_000 {
            break;
        }
    }
    Err(Error::Invalid("no admissible coefficients found".into()))
}

/// `prod (delta_0 - delta_{c_i v_i})` expanded: even subsets to `S`, odd to `T`.
pub fn subset_sum_offsets(v: &[Vec3], c: &[Rational]) -> (Vec<Vec3>, Vec<Vec3>) {
    let mut s = Vec::new();
    let mut t = Vec::new();
    for mask in 0u32..1 << v.len() {
        let sum: Vec3 = (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i].scale(&c[i])).sum();
        if mask.count_ones() % 2 == 0 {
            s.push(sum);
        } else {
            t.push(sum);
        }
    }
    (s, t)
}

impl WeirdConstruction {
    /// Construction with `v` the generators at `v_indices` and `w` the rest.
    pub fn from_split(z: &Zonotope, v_indices: Vec<usize>) -> Result<Self> {
        let gens = z.generators();
        if v_indices.is_empty() || v_indices.len() > MAX_FLAT_GENERATORS || v_indices.iter().any(|&i| i >= gens.len()) {
            return Err(Error::Invalid("bad generator split".into()));
        }
        let v: Vec<Vec3> = v_indices.iter().map(|&i| gens[i].clone()).collect();
        let w_indices: Vec<usize> = (0..gens.len()).filter(|i| !v_indices.contains(i)).collect();
        let w: Vec<Vec3> = w_indices.iter().map(|&i| gens[i].clone()).collect();
        if rank(&v) != 2 {
            return Err(Error::FlatNotSpanned);
        }
        if rank(&w) > 2 {
            return Err(Error::NotTwoFlat);
        }
        let g = Lattice::from_generators(&v)?;
        let gamma = Lattice::from_generators(gens)?;
        let cosets = coset_reps(&gamma, &g)?;
        // avoiding all of gamma keeps the nonzero offsets off every coset of g
        let coefficients = choose_coefficients(&gamma, &v)?;
        let (s_offsets, t_offsets) = subset_sum_offsets(&v, &coefficients);
        let k = z.volume() / gamma.covolume()?;
        if !is_integer(&k) {
            return Err(Error::TheoremContradiction(format!("volume / covolume = {k} is not an integer")));
        }
        let base_level: u64 = k.to_integer().try_into().map_err(|_| Error::Invalid("level too large".into()))?;
        let n_value = s_offsets.len();
        Ok(WeirdConstruction {
            zonotope: z.clone(),
            v_indices,
            w_indices,
            line_generator: cosets.line_generator(),
            torsion_order: cosets.torsion_order(),
            g,
            gamma,
            cosets,
            coefficients,
            s_offsets,
            t_offsets,
            n_value,
            base_level,
            expected_level: n_value as u64 * base_level,
        })
    }

    pub fn zonotope(&self) -> &Zonotope {
        &self.zonotope
    }

    pub fn cosets(&self) -> &CosetEnumeration {
        &self.cosets
    }

    /// Same construction with other coefficients.
    pub fn with_coefficients(&self, coefficients: Vec<Rational>) -> Result<Self> {
        let v = self.v();
        if coefficients.len() != v.len() || coefficients.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("need one nonzero coefficient per v".into()));
        }
        let (s_offsets, t_offsets) = subset_sum_offsets(&v, &coefficients);
        Ok(WeirdConstruction { coefficients, s_offsets, t_offsets, ..self.clone() })
    }

    pub fn v(&self) -> Vec<Vec3> {
        self.v_indices.iter().map(|&i| self.zonotope.generators()[i].clone()).collect()
    }

    pub fn w(&self) -> Vec<Vec3> {
        self.w_indices.iter().map(|&i| self.zonotope.generators()[i].clone()).collect()
    }

    /// Multiplicity of `p` in `S` or `T`.
    pub fn slab_multiplicity(&self, slab: Slab, p: &Vec3) -> usize {
        let offsets = match slab {
            Slab::S => &self.s_offsets,
            Slab::T => &self.t_offsets,
        };
        offsets.iter().filter(|u| self.g.contains(&(p - *u))).count()
    }
}

pub fn build_construction(z: &Zonotope, flats: &TwoFlatVerdict) -> Result<WeirdConstruction> {
    if !flats.is_two_flat {
        return Err(Error::NotTwoFlat);
    }
    let gens = z.generators();
    let spans_plane = |idx: &[usize]| rank(&idx.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>()) == 2;
    let v_indices = if spans_plane(&flats.h1_indices) {
        flats.h1_indices.clone()
    } else if spans_plane(&flats.h2_indices) {
        flats.h2_indices.clone()
    } else {
        return Err(Error::FlatNotSpanned);
    };
    WeirdConstruction::from_split(z, v_indices)
}

/// `Lambda = union_j (E_j + gamma_j)` with `E_j = choice[j]`, default `S`.
pub fn build_weird(c: &WeirdConstruction, choice: BTreeMap<i64, Slab>) -> Result<TranslateSet> {
    Ok(TranslateSet::SlabChoice(SlabChoiceSet::new(&c.gamma, &c.g, c.s_offsets.clone(), c.t_offsets.clone(), choice, Slab::S)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlabSample {
    pub point: Vec3,
    pub s_count: u64,
    pub t_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlabReport {
    pub holds: bool,
    pub samples: usize,
    pub resamples: usize,
    pub mismatches: Vec<SlabSample>,
}

/// Compares `1_P * delta_G * sum delta_{u+}` with `1_P * delta_G * sum delta_{u-}`
/// at sampled points by exact counting.
pub fn slab_identity_check(c: &WeirdConstruction, window: &Window, samples: usize, seed: u64) -> Result<SlabReport> {
    slab_identity_for(&c.zonotope, &c.g, &c.s_offsets, &c.t_offsets, window, samples, seed)
}

/// The same comparison for arbitrary `G` (any rank) and offset lists.
pub fn slab_identity_for(
    z: &Zonotope,
    g: &Lattice,
    s_offsets: &[Vec3],
    t_offsets: &[Vec3],
    window: &Window,
    samples: usize,
    seed: u64,
) -> Result<SlabReport> {
    let probe = LatticeProbe::new(z, &g.reduced());
    let side = |x: &Vec3, offsets: &[Vec3]| -> Result<u64> { offsets.iter().map(|u| probe.count(&(x - u))).sum() };
    let results: Vec<(SlabSample, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            for attempt in 0..64 {
                let x = sample_point(&mut rng, window);
                match (side(&x, s_offsets), side(&x, t_offsets)) {
                    (Ok(s_count), Ok(t_count)) => return Ok((SlabSample { point: x, s_count, t_count }, attempt)),
                    (Err(Error::Resample), _) | (_, Err(Error::Resample)) => continue,
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
            Err(Error::Invalid("too many boundary hits while sampling".into()))
        })
        .collect::<Result<_>>()?;
    let resamples = results.iter().map(|r| r.1).sum();
    let mismatches: Vec<SlabSample> = results.into_iter().map(|r| r.0).filter(|s| s.s_count != s.t_count).collect();
    Ok(SlabReport { holds: mismatches.is_empty(), samples, resamples, mismatches })
}
