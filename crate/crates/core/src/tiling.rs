//! Translate multisets, exact coverage multiplicity and windowed level
//! verification.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{coset_reps, int, lcm_of_denominators, CosetEnumeration, Lattice, Rational, Vec3, Window};
use crate::zonotope::Zonotope;

/// Which multiset a coset slab uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slab {
    S,
    T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeComponent {
    pub lattice: Lattice,
    pub offset: Vec3,
    pub weight: u64,
}

/// `Lambda = union_j (E_j + gamma_j)` with `E_j` either `S = G + {u+}` or
/// `T = G + {u-}`, and `gamma_j` running over coset representatives of
/// `G` in `Gamma`.
#[derive(Clone, Debug)]
pub struct SlabChoiceSet {
    cosets: CosetEnumeration,
    s_offsets: Vec<Vec3>,
    t_offsets: Vec<Vec3>,
    choice: BTreeMap<i64, Slab>,
    default: Slab,
}

impl SlabChoiceSet {
    pub fn new(
        gamma: &Lattice,
        g: &Lattice,
        s_offsets: Vec<Vec3>,
        t_offsets: Vec<Vec3>,
        choice: BTreeMap<i64, Slab>,
        default: Slab,
    ) -> Result<Self> {
        if s_offsets.len() != t_offsets.len() || !s_offsets.len().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "S and T need the same power-of-two number of offsets, got {} and {}",
                s_offsets.len(),
                t_offsets.len()
            )));
        }
        let cosets = coset_reps(gamma, g)?;
        Ok(SlabChoiceSet { cosets, s_offsets, t_offsets, choice, default })
    }

    pub fn cosets(&self) -> &CosetEnumeration {
        &self.cosets
    }

    pub fn gamma(&self) -> &Lattice {
        self.cosets.gamma()
    }

    pub fn g(&self) -> &Lattice {
        self.cosets.g()
    }

    pub fn offsets(&self, slab: Slab) -> &[Vec3] {
        match slab {
            Slab::S => &self.s_offsets,
            Slab::T => &self.t_offsets,
        }
    }

    /// `N`, the number of offsets in each of `S` and `T`.
    pub fn n_value(&self) -> usize {
        self.s_offsets.len()
    }

    pub fn choice(&self) -> &BTreeMap<i64, Slab> {
        &self.choice
    }

    pub fn default_slab(&self) -> Slab {
        self.default
    }

    pub fn slab(&self, j: i64) -> Slab {
        self.choice.get(&j).copied().unwrap_or(self.default)
    }

    fn lists(&self) -> impl Iterator<Item = (Slab, &Vec3)> {
        self.s_offsets.iter().map(|u| (Slab::S, u)).chain(self.t_offsets.iter().map(|u| (Slab::T, u)))
    }
}

#[derive(Clone, Debug)]
pub enum TranslateSet {
    LatticeUnion(Vec<LatticeComponent>),
    SlabChoice(SlabChoiceSet),
}

impl TranslateSet {
    pub fn lattice(lattice: Lattice) -> Self {
        TranslateSet::LatticeUnion(vec![LatticeComponent { lattice, offset: Vec3::zero(), weight: 1 }])
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, TranslateSet::LatticeUnion(_))
    }

    /// `Lambda + t`.
    pub fn translated(&self, t: &Vec3) -> TranslateSet {
        match self {
            TranslateSet::LatticeUnion(cs) => TranslateSet::LatticeUnion(
                cs.iter().map(|c| LatticeComponent { offset: &c.offset + t, ..c.clone() }).collect(),
            ),
            TranslateSet::SlabChoice(s) => {
                let shift = |v: &[Vec3]| v.iter().map(|u| u + t).collect();
                TranslateSet::SlabChoice(SlabChoiceSet { s_offsets: shift(&s.s_offsets), t_offsets: shift(&s.t_offsets), ..s.clone() })
            }
        }
    }

    /// Multiplicity of the point `p` in the multiset.
    pub fn multiplicity_at(&self, p: &Vec3) -> u64 {
        match self {
            TranslateSet::LatticeUnion(cs) => cs.iter().filter(|c| c.lattice.contains(&(p - &c.offset))).map(|c| c.weight).sum(),
            TranslateSet::SlabChoice(s) => s
                .lists()
                .filter(|(slab, u)| s.cosets.index_of(&(p - *u)).is_some_and(|j| s.slab(j) == *slab))
                .count() as u64,
        }
    }

    /// Points of the multiset in a closed window, with multiplicities, sorted.
    pub fn points_in_box(&self, window: &Window) -> Vec<(Vec3, u64)> {
        let mut acc: BTreeMap<Vec3, u64> = BTreeMap::new();
        match self {
            TranslateSet::LatticeUnion(cs) => {
                for c in cs {
                    for p in c.lattice.points_in_box(&c.offset, window) {
                        *acc.entry(p).or_default() += c.weight;
                    }
                }
            }
            TranslateSet::SlabChoice(s) => {
                for (slab, u) in s.lists() {
                    for p in s.gamma().points_in_box(u, window) {
                        let j = s.cosets.index_of(&(&p - u)).expect("point of gamma + u");
                        if s.slab(j) == slab {
                            *acc.entry(p).or_default() += 1;
                        }
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Exact asymptotic density.
    pub fn density(&self) -> Result<Rational> {
        match self {
            TranslateSet::LatticeUnion(cs) => {
                let mut total = Rational::zero();
                for c in cs {
                    total += int(c.weight as i64) / c.lattice.covolume()?;
                }
                Ok(total)
            }
            TranslateSet::SlabChoice(s) => Ok(int(s.n_value() as i64) / s.gamma().covolume()?),
        }
    }
}

/// Enumerates the points `offset + B c` of a lattice coset lying in
/// `x - P`, reporting boundary incidences.
pub(crate) struct LatticeProbe {
    basis: Vec<Vec3>,
    rows: Vec<Vec3>,
    /// `(h_P(m_i), h_P(-m_i))` for each biorthogonal row `m_i`.
    row_support: Vec<(Rational, Rational)>,
    /// `<n_f, b_i>` per facet.
    beta: Vec<Vec<Rational>>,
    normals: Vec<Vec3>,
    levels: Vec<Rational>,
}

impl LatticeProbe {
    pub(crate) fn new(z: &Zonotope, lattice: &Lattice) -> Self {
        let rows = lattice.biorthogonal();
        let row_support = rows.iter().map(|m| (z.support(m), z.support(&-m))).collect();
        let beta = z.facets().iter().map(|f| lattice.basis().iter().map(|b| f.normal.dot(b)).collect()).collect();
        LatticeProbe {
            basis: lattice.basis().to_vec(),
            rows,
            row_support,
            beta,
            normals: z.facets().iter().map(|f| f.normal.clone()).collect(),
            levels: z.facets().iter().map(|f| f.level.clone()).collect(),
        }
    }

    /// Number of points `offset + Bc` with `x - offset - Bc` in the interior
    /// of `P`, given `y = x - offset`.
    pub(crate) fn count(&self, y: &Vec3) -> Result<u64> {
        let mut n = 0;
        self.hits(y, &mut |_| n += 1)?;
        Ok(n)
    }

    /// Calls `visit` with the lattice coordinates of every point `offset + Bc`
    /// with `x - offset - Bc` in the interior of `P`. Fails with
    /// [`Error::Resample`] if some such point lands on the boundary.
    fn hits(&self, y: &Vec3, visit: &mut dyn FnMut(&[i128])) -> Result<()> {
        // y = x - offset; need y - Bc in P, i.e. sum_i c_i beta_fi >= <n_f, y> - level_f
        let ranges: Vec<(i128, i128)> = self
            .rows
            .iter()
            .zip(&self.row_support)
            .map(|(m, (h_pos, h_neg))| {
                let my = m.dot(y);
                let lo = (&my - h_pos).ceil().to_integer();
                let hi = (&my + h_neg).floor().to_integer();
                (lo.to_i128().expect("range overflow"), hi.to_i128().expect("range overflow"))
            })
            .collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Ok(());
        }
        let rho: Vec<Rational> = self.normals.iter().zip(&self.levels).map(|(n, l)| n.dot(y) - l).collect();

        match self.integer_rows(&rho) {
            Some(rows) => {
                let mut c: Vec<i128> = ranges.iter().map(|r| r.0).collect();
                loop {
                    let mut inside = true;
                    let mut touching = false;
                    for (coeffs, rhs) in &rows {
                        let s: i128 = coeffs.iter().zip(&c).map(|(a, b)| a * b).sum();
                        if s < *rhs {
                            inside = false;
                            break;
                        }
                        touching |= s == *rhs;
                    }
                    if inside {
                        if touching {
                            return Err(Error::Resample);
                        }
                        visit(&c);
                    }
                    if !advance(&mut c, &ranges) {
                        return Ok(());
                    }
                }
            }
            None => self.hits_rational(y, &ranges, visit),
        }
    }

    /// Facet rows scaled to integers: `(coeffs, rhs)` with the same sign
    /// pattern as `sum c_i beta_fi - rho_f`.
    fn integer_rows(&self, rho: &[Rational]) -> Option<Vec<(Vec<i128>, i128)>> {
        self.beta
            .iter()
            .zip(rho)
            .map(|(row, r)| {
                let l = lcm_of_denominators(row.iter().chain(std::iter::once(r)));
                let scale = Rational::from_integer(l);
                let conv = |v: &Rational| (v * &scale).to_integer().to_i128();
                let coeffs = row.iter().map(conv).collect::<Option<Vec<_>>>()?;
                Some((coeffs, conv(r)?))
            })
            .collect()
    }

    fn hits_rational(&self, y: &Vec3, ranges: &[(i128, i128)], visit: &mut dyn FnMut(&[i128])) -> Result<()> {
        let mut c: Vec<i128> = ranges.iter().map(|r| r.0).collect();
        loop {
            let p: Vec3 = self.basis.iter().zip(&c).map(|(b, ci)| b.scale(&Rational::from_integer(BigInt::from(*ci)))).sum();
            let q = y - &p;
            let mut inside = true;
            let mut touching = false;
            for (n, l) in self.normals.iter().zip(&self.levels) {
                let v = n.dot(&q);
                if &v > l {
                    inside = false;
                    break;
                }
                touching |= &v == l;
            }
            if inside {
                if touching {
                    return Err(Error::Resample);
                }
                visit(&c);
            }
            if !advance(&mut c, ranges) {
                return Ok(());
            }
        }
    }
}

fn advance(c: &mut [i128], ranges: &[(i128, i128)]) -> bool {
    for (ci, (lo, hi)) in c.iter_mut().zip(ranges) {
        if *ci < *hi {
            *ci += 1;
            return true;
        }
        *ci = *lo;
    }
    false
}

/// Precomputed data for repeated coverage queries of one `(P, Lambda)` pair.
pub struct CoverageEvaluator<'a> {
    lam: &'a TranslateSet,
    probes: Vec<LatticeProbe>,
}

impl<'a> CoverageEvaluator<'a> {
    pub fn new(z: &Zonotope, lam: &'a TranslateSet) -> Self {
        let probes = match lam {
            TranslateSet::LatticeUnion(cs) => cs.iter().map(|c| LatticeProbe::new(z, &c.lattice.reduced())).collect(),
            TranslateSet::SlabChoice(s) => vec![LatticeProbe::new(z, s.gamma())],
        };
        CoverageEvaluator { lam, probes }
    }

    /// `#{lambda in Lambda : x - lambda in P}` with multiplicity.
    pub fn coverage(&self, x: &Vec3) -> Result<u64> {
        let mut total = 0u64;
        match self.lam {
            TranslateSet::LatticeUnion(cs) => {
                for (c, probe) in cs.iter().zip(&self.probes) {
                    total += probe.count(&(x - &c.offset))? * c.weight;
                }
            }
            TranslateSet::SlabChoice(s) => {
                let probe = &self.probes[0];
                for (slab, u) in s.lists() {
                    probe.hits(&(x - u), &mut |c| {
                        if s.slab(s.cosets.index_of_coords(&[c[0], c[1], c[2]])) == slab {
                            total += 1;
                        }
                    })?;
                }
            }
        }
        Ok(total)
    }
}

/// Coverage multiplicity of `x` by `Lambda + P`.
pub fn coverage(z: &Zonotope, lam: &TranslateSet, x: &Vec3) -> Result<u64> {
    CoverageEvaluator::new(z, lam).coverage(x)
}

pub fn density(lam: &TranslateSet) -> Result<Rational> {
    lam.density()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub point: Vec3,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// Common coverage value, when every sample agrees.
    pub level: Option<u64>,
    /// Samples whose coverage differs from the most frequent value (at most
    /// [`MAX_LISTED_VIOLATIONS`] are listed).
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub histogram: BTreeMap<u64, usize>,
    pub samples: usize,
    pub resamples: usize,
    pub window: Window,
    pub seed: u64,
    #[serde(with = "crate::exact::rational_str")]
    pub density: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub volume: Rational,
    #[serde(with = "crate::exact::rational_str")]
    pub density_times_volume: Rational,
    /// `density * volume == level`, when the level exists.
    pub density_consistent: Option<bool>,
}

pub const MAX_LISTED_VIOLATIONS: usize = 256;

/// Denominator of sampled coordinates (prime, so boundary hits are rare).
const SAMPLE_DENOMINATOR: i64 = 1_000_003;
const MAX_RESAMPLES: usize = 64;

/// Uniform rational point of the window with denominator-limited coordinates.
pub fn sample_point(rng: &mut impl Rng, window: &Window) -> Vec3 {
    Vec3(std::array::from_fn(|i| {
        let t = Rational::new(BigInt::from(rng.gen_range(0..=SAMPLE_DENOMINATOR)), BigInt::from(SAMPLE_DENOMINATOR));
        &window.lo[i] + (&window.hi[i] - &window.lo[i]) * t
    }))
}

/// Independent per-sample stream so results do not depend on scheduling.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn verify_level(z: &Zonotope, lam: &TranslateSet, window: &Window, samples: usize, seed: u64) -> Result<CoverageReport> {
    if samples == 0 {
        return Err(Error::Invalid("samples must be at least 1".into()));
    }
    let eval = CoverageEvaluator::new(z, lam);
    let results: Vec<(Vec3, u64, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            for attempt in 0..MAX_RESAMPLES {
                let x = sample_point(&mut rng, window);
                match eval.coverage(&x) {
                    Ok(m) => return Ok((x, m, attempt)),
                    Err(Error::Resample) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Invalid("too many boundary hits while sampling".into()))
        })
        .collect::<Result<_>>()?;

    let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, m, _) in &results {
        *histogram.entry(*m).or_default() += 1;
    }
    let mode = histogram.iter().max_by_key(|(v, n)| (**n, **v)).map(|(v, _)| *v).unwrap();
    let level = (histogram.len() == 1).then_some(mode);
    let deviating: Vec<Violation> =
        results.iter().filter(|(_, m, _)| *m != mode).map(|(p, m, _)| Violation { point: p.clone(), multiplicity: *m }).collect();
    let density = lam.density()?;
    let volume = z.volume();
    let density_times_volume = &density * &volume;
    Ok(CoverageReport {
        level,
        violation_count: deviating.len(),
        violations: deviating.into_iter().take(MAX_LISTED_VIOLATIONS).collect(),
        histogram,
        samples,
        resamples: results.iter().map(|r| r.2).sum(),
        window: window.clone(),
        seed,
        density_consistent: level.map(|k| density_times_volume == int(k as i64)),
        density,
        volume,
        density_times_volume,
    })
}

impl Serialize for TranslateSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TranslateSetRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TranslateSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TranslateSetRepr::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TranslateSetRepr {
    LatticeUnion {
        components: Vec<LatticeComponent>,
    },
    SlabChoice {
        gamma: Lattice,
        g: Lattice,
        s_offsets: Vec<Vec3>,
        t_offsets: Vec<Vec3>,
        /// Keyed by coset index as a string; tagged enums cannot buffer
        /// integer map keys.
        #[serde(default)]
        choice: BTreeMap<String, Slab>,
        #[serde(default = "default_slab")]
        default: Slab,
    },
}

fn default_slab() -> Slab {
    Slab::S
}

impl From<&TranslateSet> for TranslateSetRepr {
    fn from(t: &TranslateSet) -> Self {
        match t {
            TranslateSet::LatticeUnion(cs) => TranslateSetRepr::LatticeUnion { components: cs.clone() },
            TranslateSet::SlabChoice(s) => TranslateSetRepr::SlabChoice {
                gamma: s.gamma().clone(),
                g: s.g().clone(),
                s_offsets: s.s_offsets.clone(),
                t_offsets: s.t_offsets.clone(),
                choice: s.choice.iter().map(|(j, e)| (j.to_string(), *e)).collect(),
                default: s.default,
            },
        }
    }
}

impl TryFrom<TranslateSetRepr> for TranslateSet {
    type Error = Error;
    fn try_from(r: TranslateSetRepr) -> Result<Self> {
        match r {
            TranslateSetRepr::LatticeUnion { components } => {
                if components.iter().any(|c| c.weight == 0) {
                    return Err(Error::Invalid("lattice weights must be at least 1".into()));
                }
                if components.is_empty() {
                    return Err(Error::Invalid("empty lattice union".into()));
                }
                Ok(TranslateSet::LatticeUnion(components))
            }
            TranslateSetRepr::SlabChoice { gamma, g, s_offsets, t_offsets, choice, default } => {
                let choice = choice
                    .into_iter()
                    .map(|(j, e)| j.trim().parse().map(|j| (j, e)).map_err(|_| Error::Parse(format!("coset index {j:?}"))))
                    .collect::<Result<BTreeMap<i64, Slab>>>()?;
                Ok(TranslateSet::SlabChoice(SlabChoiceSet::new(&gamma, &g, s_offsets, t_offsets, choice, default)?))
            }
        }
    }
}

/// Count lattice points of `offset + L` in `x - P` by scanning a box of
/// lattice coordinates and testing every candidate against the facet
/// inequalities directly. Used as an independent cross-check.
pub fn brute_force_count(z: &Zonotope, lattice: &Lattice, offset: &Vec3, x: &Vec3) -> Option<u64> {
    let (lo, hi) = z.bounding_box();
    let window = Window { lo: x - &hi, hi: x - &lo };
    let mut n = 0;
    for p in lattice.points_in_box(offset, &window) {
        match z.contains(&(x - &p)) {
            crate::zonotope::Containment::Interior => n += 1,
            crate::zonotope::Containment::Boundary => return None,
            crate::zonotope::Containment::Outside => {}
        }
    }
    Some(n)
}
