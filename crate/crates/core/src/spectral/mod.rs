//! Fourier transforms of leg measures and their zero sets.

mod level_zero;
mod quadrature;
mod support;

pub use level_zero::{leg_level_zero_check, LevelZeroReport};
pub use quadrature::{gauss_legendre, integrate_unit, GL_ORDER};
pub use support::{root_of_unity_sum_is_zero, support_bound_check, SupportReport};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_integer, Rational, Vec3};
use crate::zonotope::Frame;

/// `H(x) = {xi : <xi, x> in Z}`, or `H(x) \ {<xi, x> = 0}` when punctured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFamily {
    pub x: Vec3,
    pub punctured: bool,
}

impl PlaneFamily {
    pub fn new(x: Vec3, punctured: bool) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Invalid("plane family needs a nonzero vector".into()));
        }
        Ok(PlaneFamily { x, punctured })
    }

    pub fn contains(&self, xi: &Vec3) -> bool {
        let t = xi.dot(&self.x);
        is_integer(&t) && !(self.punctured && t == Rational::from_integer(0.into()))
    }

    /// `x / |x|^2`, the spacing vector between consecutive planes.
    pub fn spacing(&self) -> Vec3 {
        self.x.scale(&(Rational::from_integer(1.into()) / self.x.norm2()))
    }

    /// Two vectors spanning `x^perp`.
    pub fn plane_basis(&self) -> [Vec3; 2] {
        let helper = (0..3).map(Vec3::unit).find(|u| !u.is_parallel(&self.x)).unwrap();
        let p = self.x.cross(&helper);
        let q = self.x.cross(&p);
        [p, q]
    }

    /// The point `k x* + s p + t q` on the `k`-th plane.
    pub fn point(&self, k: i64, s: &Rational, t: &Rational) -> Vec3 {
        let [p, q] = self.plane_basis();
        self.spacing().scale(&Rational::from_integer(k.into())) + p.scale(s) + q.scale(t)
    }
}

/// The three plane families whose union is the zero set of a leg measure.
pub fn zero_set_families(frame: &Frame) -> [PlaneFamily; 3] {
    [
        PlaneFamily { x: frame.e.clone(), punctured: true },
        PlaneFamily { x: frame.tau1.clone(), punctured: false },
        PlaneFamily { x: frame.tau2.clone(), punctured: false },
    ]
}

pub fn zero_set_member(frame: &Frame, xi: &Vec3) -> bool {
    zero_set_families(frame).iter().any(|f| f.contains(xi))
}

/// Arc-length measure on the four legs of a frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegMeasure {
    pub frame: Frame,
    /// Sign of each leg in the order of [`Frame::legs`].
    pub signs: [i8; 4],
}

pub const CANONICAL_SIGNS: [i8; 4] = [1, -1, -1, 1];

impl LegMeasure {
    pub fn new(frame: Frame) -> Self {
        LegMeasure { frame, signs: CANONICAL_SIGNS }
    }

    pub fn with_signs(frame: Frame, signs: [i8; 4]) -> Self {
        LegMeasure { frame, signs }
    }

    pub fn is_canonical(&self) -> bool {
        self.signs == CANONICAL_SIGNS
    }

    pub fn total_mass(&self) -> f64 {
        let len = norm(&self.frame.e.to_f64());
        self.signs.iter().map(|s| *s as f64 * len).sum()
    }

    /// Leg start points (as floats) with their signs.
    pub fn legs_f64(&self) -> Vec<([f64; 3], f64)> {
        self.frame.legs().iter().zip(&self.signs).map(|((s, _), sign)| (s.to_f64(), *sign as f64)).collect()
    }
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn expi(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Transform of arc length on `[0, e]`.
fn segment_ft(e: &[f64; 3], xi: &[f64; 3]) -> Complex64 {
    let a = dot(xi, e);
    expi(-PI * a) * (norm(e) * sinc(PI * a))
}

/// `hat mu(xi) = int exp(-2 pi i <xi, t>) d mu(t)`.
pub fn leg_ft(m: &LegMeasure, xi: [f64; 3]) -> Result<Complex64> {
    if m.frame.is_degenerate() {
        return Err(Error::DegenerateFrame);
    }
    let e = m.frame.e.to_f64();
    let seg = segment_ft(&e, &xi);
    if m.is_canonical() {
        let base = m.frame.base.to_f64();
        let a = dot(&m.frame.tau1.to_f64(), &xi);
        let b = dot(&m.frame.tau2.to_f64(), &xi);
        let alpha = Complex64::new(0.0, 2.0) * expi(-PI * a) * (PI * a).sin();
        let beta = Complex64::new(0.0, 2.0) * expi(-PI * b) * (PI * b).sin();
        return Ok(expi(-2.0 * PI * dot(&base, &xi)) * seg * alpha * beta);
    }
    Ok(ft_by_legs(m, &xi, seg))
}

fn ft_by_legs(m: &LegMeasure, xi: &[f64; 3], seg: Complex64) -> Complex64 {
    m.legs_f64().iter().map(|(s, sign)| expi(-2.0 * PI * dot(s, xi)) * seg * *sign).sum()
}

/// The same transform by numerical integration over the four legs.
pub fn leg_ft_numeric(m: &LegMeasure, xi: [f64; 3], tol: f64) -> Complex64 {
    let e = m.frame.e.to_f64();
    let len = norm(&e);
    m.legs_f64()
        .iter()
        .map(|(s, sign)| {
            let f = |t: f64| {
                let p = [s[0] + t * e[0], s[1] + t * e[1], s[2] + t * e[2]];
                expi(-2.0 * PI * dot(&xi, &p))
            };
            integrate_unit(f, tol) * (len * sign)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q, to_f64};
    use crate::tiling::sample_rng;
    use crate::zonotope::{frames, Zonotope};
    use rand::Rng;

    fn cube_frame() -> Frame {
        Frame { e: Vec3::unit(0), base: Vec3::zero(), tau1: Vec3::unit(1), tau2: -Vec3::unit(2), facet: 0, opposite_facet: 1 }
    }

    fn test_zonotope() -> Zonotope {
        let g = vec![Vec3::from_ints(1, 0, 0), Vec3::from_ints(0, 1, 0), Vec3::from_ints(0, 0, 1), Vec3::new(int(1), q(1, 2), q(-1, 3))];
        Zonotope::build(g, Vec3::zero()).unwrap()
    }

    fn rand_q(rng: &mut impl Rng, range: i64) -> Rational {
        q(rng.gen_range(-range * 97..=range * 97), 97)
    }

    fn f64v(v: &Vec3) -> [f64; 3] {
        v.to_f64()
    }

    #[test]
    fn membership_examples() {
        let f = cube_frame();
        assert!(zero_set_member(&f, &Vec3::zero()));
        assert!(!zero_set_member(&f, &Vec3::new(q(1, 2), q(1, 3), q(1, 5))));
        assert!(zero_set_member(&f, &Vec3::new(int(2), q(1, 3), q(1, 5))));
    }

    #[test]
    fn punctured_family_skips_the_origin_plane() {
        let fam = PlaneFamily::new(Vec3::unit(0), true).unwrap();
        assert!(!fam.contains(&Vec3::new(int(0), q(1, 3), int(0))));
        assert!(fam.contains(&Vec3::new(int(-1), q(1, 3), int(0))));
        assert!(PlaneFamily::new(Vec3::zero(), false).is_err());
    }

    #[test]
    fn family_points_lie_on_their_plane() {
        let fam = PlaneFamily::new(Vec3::new(int(2), q(1, 3), int(-1)), false).unwrap();
        for k in -3..=3 {
            let p = fam.point(k, &q(5, 7), &q(-2, 3));
            assert_eq!(p.dot(&fam.x), int(k));
        }
    }

    #[test]
    fn transform_vanishes_at_origin_and_on_tau_planes() {
        let m = LegMeasure::new(cube_frame());
        assert!(leg_ft(&m, [0.0; 3]).unwrap().norm() < 1e-12);
        assert!(leg_ft(&m, [0.3, 1.0, 0.7]).unwrap().norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let z = test_zonotope();
        let mut rng = sample_rng(11, 0);
        for fr in frames(&z).frames {
            let m = LegMeasure::new(fr);
            for _ in 0..10 {
                let xi = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
                let a = leg_ft(&m, xi).unwrap();
                let b = leg_ft_numeric(&m, xi, 1e-12);
                assert!((a - b).norm() <= 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn per_leg_sum_matches_product_form() {
        let z = test_zonotope();
        let m = LegMeasure::new(frames(&z).frames[3].clone());
        let xi = [0.37, -1.2, 2.9];
        let by_legs = ft_by_legs(&m, &xi, segment_ft(&m.frame.e.to_f64(), &xi));
        assert!((leg_ft(&m, xi).unwrap() - by_legs).norm() < 1e-12);
    }

    #[test]
    fn all_positive_legs_do_not_vanish_at_origin() {
        let m = LegMeasure::with_signs(cube_frame(), [1, 1, 1, 1]);
        assert!((leg_ft(&m, [0.0; 3]).unwrap() - 4.0).norm() < 1e-12);
        assert!((m.total_mass() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn transform_vanishes_on_every_zero_plane() {
        let z = test_zonotope();
        let mut rng = sample_rng(12, 0);
        for fr in frames(&z).frames {
            let m = LegMeasure::new(fr.clone());
            for fam in zero_set_families(&fr) {
                for _ in 0..100 {
                    let mut k = rng.gen_range(-3..=3);
                    if fam.punctured && k == 0 {
                        k = 1;
                    }
                    let xi = fam.point(k, &rand_q(&mut rng, 1), &rand_q(&mut rng, 1));
                    assert!(zero_set_member(&fr, &xi));
                    let v = leg_ft(&m, f64v(&xi)).unwrap();
                    assert!(v.norm() <= 1e-9, "|ft| = {} at {xi}", v.norm());
                }
            }
        }
    }

    #[test]
    fn transform_is_nonzero_off_the_zero_set() {
        let z = test_zonotope();
        let mut rng = sample_rng(13, 0);
        for fr in frames(&z).frames {
            let m = LegMeasure::new(fr.clone());
            let mut seen = 0;
            while seen < 100 {
                let xi = Vec3::new(rand_q(&mut rng, 2), rand_q(&mut rng, 2), rand_q(&mut rng, 2));
                let ips: Vec<f64> = fr.vectors().iter().map(|v| to_f64(&v.dot(&xi))).collect();
                if ips.iter().any(|t| (t - t.round()).abs() < 1e-12) {
                    continue;
                }
                seen += 1;
                assert!(!zero_set_member(&fr, &xi));
                // |ft| = |e| |sinc(pi a)| |2 sin(pi b)| |2 sin(pi c)|
                let len = norm(&fr.e.to_f64());
                let expected = len * sinc(PI * ips[0]).abs() * (2.0 * (PI * ips[1]).sin()).abs() * (2.0 * (PI * ips[2]).sin()).abs();
                let v = leg_ft(&m, f64v(&xi)).unwrap().norm();
                assert!(v > 0.0);
                assert!((v - expected).abs() <= 1e-9 * expected.max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_frame_is_rejected() {
        let mut f = cube_frame();
        f.tau2 = Vec3::unit(1);
        assert_eq!(leg_ft(&LegMeasure::new(f), [0.1, 0.2, 0.3]).unwrap_err(), Error::DegenerateFrame);
    }
}
