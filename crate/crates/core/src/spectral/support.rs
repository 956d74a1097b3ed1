//! Support of the transform of a periodic translate set against the zero
//! sets of all frames.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::zero_set_member;
use crate::error::{Error, Result};
use crate::exact::{dual_lattice, lcm_of_denominators, to_f64, Rational, Vec3, Window};
use crate::tiling::TranslateSet;
use crate::zonotope::{frames, Zonotope};

/// Phases with a common denominator above this are summed in floating point.
const EXACT_ORDER_LIMIT: u64 = 4096;
const NUMERIC_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    #[serde(with = "crate::exact::rational_str")]
    pub radius: Rational,
    pub frames: usize,
    /// Nonzero dual points inside the ball.
    pub candidates: usize,
    /// Candidates whose weights cancel exactly; not support points.
    pub exempt: Vec<Vec3>,
    /// Support points outside the common zero set of all frames.
    pub violations: Vec<Vec3>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Is `sum_k c_k exp(2 pi i p_k)` zero? Exact for rational phases with
/// moderate common denominator `Q`: the sum is a polynomial in a primitive
/// `Q`-th root of unity, which vanishes iff the cyclotomic polynomial
/// `Phi_Q` divides it.
pub fn root_of_unity_sum_is_zero(terms: &[(Rational, Rational)]) -> bool {
    let order = lcm_of_denominators(terms.iter().map(|(_, p)| p));
    match order.to_u64().filter(|q| *q <= EXACT_ORDER_LIMIT) {
        Some(q) => {
            let q = q as usize;
            let mut poly = vec![Rational::zero(); q];
            for (c, p) in terms {
                let e = (p * Rational::from_integer(BigInt::from(q))).to_integer().mod_floor(&BigInt::from(q));
                poly[e.to_usize().unwrap()] += c;
            }
            poly_rem(poly, &cyclotomic(q)).iter().all(Zero::is_zero)
        }
        None => {
            let s: Complex64 = terms.iter().map(|(c, p)| Complex64::from_polar(to_f64(c), 2.0 * PI * to_f64(p))).sum();
            s.norm() < NUMERIC_ZERO_TOL
        }
    }
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for the proper divisors `d`.
fn cyclotomic(n: usize) -> Vec<Rational> {
    let mut cache: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    cyclotomic_memo(n, &mut cache)
}

fn cyclotomic_memo(n: usize, cache: &mut BTreeMap<usize, Vec<Rational>>) -> Vec<Rational> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![Rational::zero(); n + 1];
    num[0] = -Rational::one();
    num[n] = Rational::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi = cyclotomic_memo(d, cache);
        num = poly_div_exact(&num, &phi);
    }
    cache.insert(n, num.clone());
    num
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient of `a` by the monic `b`, assuming exact division.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![Rational::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
        }
        quot[k] = c;
    }
    trim(&mut quot);
    quot
}

/// Remainder of `a` modulo the monic `b`.
fn poly_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    while a.len() > db {
        let c = a.pop().unwrap();
        if !c.is_zero() {
            let k = a.len() - db;
            for (i, bi) in b[..db].iter().enumerate() {
                a[k + i] -= &c * bi;
            }
        }
    }
    a
}

/// Checks every support point of the transform of `delta_Lambda` in the
/// closed ball of the given radius against the zero sets of all frames.
pub fn support_bound_check(z: &Zonotope, lam: &TranslateSet, radius: &Rational) -> Result<SupportReport> {
    let TranslateSet::LatticeUnion(components) = lam else {
        return Err(Error::PeriodicRequired);
    };
    let duals = components.iter().map(|c| dual_lattice(&c.lattice)).collect::<Result<Vec<_>>>()?;
    let covols = components.iter().map(|c| c.lattice.covolume()).collect::<Result<Vec<_>>>()?;
    let r2 = radius * radius;
    let window = Window { lo: Vec3([-radius.clone(), -radius.clone(), -radius.clone()]), hi: Vec3([radius.clone(), radius.clone(), radius.clone()]) };

    let mut candidates = BTreeSet::new();
    for d in &duals {
        for xi in d.points_in_box(&Vec3::zero(), &window) {
            if !xi.is_zero() && xi.norm2() <= r2 {
                candidates.insert(xi);
            }
        }
    }

    let fl = frames(z);
    let mut report = SupportReport { radius: radius.clone(), frames: fl.frames.len(), candidates: candidates.len(), exempt: vec![], violations: vec![] };
    for xi in candidates {
        // delta_{L + a} has transform exp(-2 pi i <a, xi>) / covol(L) on L*
        let terms: Vec<(Rational, Rational)> = components
            .iter()
            .zip(&duals)
            .zip(&covols)
            .filter(|((_, d), _)| d.contains(&xi))
            .map(|((c, _), cv)| (Rational::from_integer(c.weight.into()) / cv, -c.offset.dot(&xi)))
            .collect();
        if root_of_unity_sum_is_zero(&terms) {
            report.exempt.push(xi);
        } else if !fl.frames.iter().all(|f| zero_set_member(f, &xi)) {
            report.violations.push(xi);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    use crate::exact::{int, q, Lattice};
    use crate::tiling::LatticeComponent;

    fn cube() -> Zonotope {
        Zonotope::build((0..3).map(Vec3::unit).collect(), Vec3::zero()).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![int(-1), int(1)]);
        assert_eq!(cyclotomic(4), vec![int(1), int(0), int(1)]);
        assert_eq!(cyclotomic(6), vec![int(1), int(-1), int(1)]);
        assert_eq!(cyclotomic(12).len(), 5);
        // Phi_105 is the first with a coefficient -2
        assert!(cyclotomic(105).contains(&int(-2)));
    }

    #[test]
    fn root_sums() {
        assert!(root_of_unity_sum_is_zero(&[(int(1), int(0)), (int(1), q(1, 2))]));
        assert!(!root_of_unity_sum_is_zero(&[(int(1), int(0)), (int(1), q(1, 3))]));
        assert!(root_of_unity_sum_is_zero(&[(int(1), int(0)), (int(1), q(1, 3)), (int(1), q(2, 3))]));
        // 1 + w + ... + w^4 for a primitive 5th root w
        let fifth: Vec<_> = (0..5).map(|k| (int(1), q(k, 5))).collect();
        assert!(root_of_unity_sum_is_zero(&fifth));
        assert!(!root_of_unity_sum_is_zero(&fifth[..4]));
        assert!(root_of_unity_sum_is_zero(&[]));
        assert!(root_of_unity_sum_is_zero(&[(int(2), q(1, 4)), (int(2), q(3, 4))]));
    }

    #[test]
    fn integer_lattice_support_is_in_every_zero_set() {
        let r = support_bound_check(&cube(), &TranslateSet::lattice(Lattice::integer()), &int(3)).unwrap();
        assert!(r.passed());
        assert!(r.exempt.is_empty());
        // nonzero integer points with |xi| <= 3
        assert_eq!(r.candidates, 122);
    }

    #[test]
    fn two_tiling_cancels_odd_first_coordinates() {
        let lam = TranslateSet::LatticeUnion(vec![
            LatticeComponent { lattice: Lattice::integer(), offset: Vec3::zero(), weight: 1 },
            LatticeComponent { lattice: Lattice::integer(), offset: Vec3::new(q(1, 2), int(0), int(0)), weight: 1 },
        ]);
        let r = support_bound_check(&cube(), &lam, &int(3)).unwrap();
        assert!(r.passed());
        assert!(!r.exempt.is_empty());
        assert!(r.exempt.iter().all(|xi| xi.x().to_integer().is_odd()));
    }

    #[test]
    fn a_non_tiling_lattice_violates() {
        // the fcc lattice has covolume 2, so cube translates overlap; its dual
        // holds (1/2, 1/2, 1/2), which no cube frame annihilates
        let l = Lattice::new(vec![Vec3::from_ints(1, 1, 0), Vec3::from_ints(1, 0, 1), Vec3::from_ints(0, 1, 1)]).unwrap();
        let r = support_bound_check(&cube(), &TranslateSet::lattice(l), &int(1)).unwrap();
        assert_eq!(r.violations.len(), 8);
        assert!(r.violations.iter().all(|xi| xi.0.iter().all(|c| c.abs() == q(1, 2))));
    }

    #[test]
    fn slab_choice_input_is_rejected() {
        let gamma = Lattice::integer();
        let g = Lattice::new(vec![Vec3::unit(0), Vec3::unit(1)]).unwrap();
        let set = crate::tiling::SlabChoiceSet::new(&gamma, &g, vec![Vec3::zero()], vec![Vec3::zero()], Default::default(), crate::tiling::Slab::S).unwrap();
        let err = support_bound_check(&cube(), &TranslateSet::SlabChoice(set), &int(1)).unwrap_err();
        assert_eq!(err, Error::PeriodicRequired);
    }
}
