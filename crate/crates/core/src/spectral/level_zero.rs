//! Numerical check that a leg measure tiles at level zero with `Lambda`:
//! pairings `sum_lambda int phi(y + lambda) d mu(y)` against Gaussians.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dot, integrate_unit, LegMeasure};
use crate::error::Result;
use crate::exact::{Rational, Vec3, Window};
use crate::tiling::{sample_rng, TranslateSet};

/// Standard deviation of the test Gaussians.
const SIGMA: f64 = 1.0;
/// Truncation radius in units of `SIGMA`.
const TRUNCATION: f64 = 8.0;
/// Half side of the box the Gaussian centers are drawn from.
const CENTER_RANGE: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelZeroReport {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub centers: Vec<[f64; 3]>,
    pub values: Vec<f64>,
    pub max_abs: f64,
    pub passed: bool,
}

fn gaussian(d2: f64) -> f64 {
    (-d2 / (2.0 * SIGMA * SIGMA)).exp() / (2.0 * PI * SIGMA * SIGMA).powf(1.5)
}

/// Truncation radius so that the discarded Gaussian mass stays below `tol / 10`.
fn truncation_radius(tol: f64) -> f64 {
    let r = (2.0 * (1e3 / tol.max(1e-300)).ln()).sqrt() * SIGMA;
    r.max(TRUNCATION * SIGMA)
}

pub fn leg_level_zero_check(m: &LegMeasure, lam: &TranslateSet, trials: usize, tol: f64, seed: u64) -> Result<LevelZeroReport> {
    let e = m.frame.e.to_f64();
    let len = super::norm(&e);
    let legs = m.legs_f64();
    let radius = truncation_radius(tol);

    let centers: Vec<[f64; 3]> = (0..trials)
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            std::array::from_fn(|_| rng.gen_range(-CENTER_RANGE..CENTER_RANGE))
        })
        .collect();

    // every lambda within `radius` of (center - leg point) for some center and leg point
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for (s, _) in &legs {
        for end in [*s, [s[0] + e[0], s[1] + e[1], s[2] + e[2]]] {
            for a in 0..3 {
                lo[a] = lo[a].min(-CENTER_RANGE - end[a] - radius);
                hi[a] = hi[a].max(CENTER_RANGE - end[a] + radius);
            }
        }
    }
    let to_q = |x: f64, up: bool| Rational::from_integer((if up { x.ceil() } else { x.floor() } as i64).into());
    let window = Window {
        lo: Vec3(std::array::from_fn(|a| to_q(lo[a], false))),
        hi: Vec3(std::array::from_fn(|a| to_q(hi[a], true))),
    };
    let points: Vec<([f64; 3], f64)> = lam.points_in_box(&window).into_iter().map(|(p, k)| (p.to_f64(), k as f64)).collect();

    let values: Vec<f64> = centers
        .par_iter()
        .map(|c| {
            let r2 = (radius + len) * (radius + len);
            legs.iter()
                .map(|(s, sign)| {
                    // translates whose Gaussian reaches this leg
                    let near: Vec<([f64; 3], f64)> = points
                        .iter()
                        .filter_map(|(p, k)| {
                            let d = [s[0] + p[0] - c[0], s[1] + p[1] - c[1], s[2] + p[2] - c[2]];
                            (dot(&d, &d) <= r2).then_some((d, *k))
                        })
                        .collect();
                    let f = |t: f64| {
                        let v: f64 = near
                            .iter()
                            .map(|(d, k)| {
                                let q = [d[0] + t * e[0], d[1] + t * e[1], d[2] + t * e[2]];
                                k * gaussian(dot(&q, &q))
                            })
                            .sum();
                        Complex64::new(v, 0.0)
                    };
                    integrate_unit(f, tol).re * len * sign
                })
                .sum()
        })
        .collect();
    let max_abs = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(LevelZeroReport { trials, seed, tol, centers, values, max_abs, passed: max_abs <= tol })
}
