//! Rational lattices in `R^3`: duals, membership, box enumeration and
//! coset enumeration of a rank-2 sublattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntMatrix};
use super::{det3, lcm_of_denominators, rank, solve3, Rational, Vec3, Window};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    basis: Vec<Vec3>,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    basis: Vec<Vec3>,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        Lattice::new(r.basis)
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr { basis: l.basis }
    }
}

impl Lattice {
    pub fn new(basis: Vec<Vec3>) -> Result<Self> {
        if basis.is_empty() || basis.len() > 3 {
            return Err(Error::Invalid(format!("lattice rank must be 1..=3, got {}", basis.len())));
        }
        if rank(&basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Lattice { basis })
    }

    /// `Z^3`.
    pub fn integer() -> Self {
        Lattice { basis: (0..3).map(Vec3::unit).collect() }
    }

    /// Lattice generated (over `Z`) by an arbitrary rational family.
    pub fn from_generators(gens: &[Vec3]) -> Result<Self> {
        let gens: Vec<&Vec3> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Invalid("no nonzero generators".into()));
        }
        let denom = lcm_of_denominators(gens.iter().flat_map(|g| g.0.iter()));
        let scale = Rational::from_integer(denom.clone());
        let mut m = IntMatrix::zeros(3, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for i in 0..3 {
                m[(i, j)] = (&g[i] * &scale).to_integer();
            }
        }
        // column span of m equals the column span of u^-1 * s
        let snf = smith_normal_form(&m);
        let d = snf.diagonal();
        let basis = (0..snf.rank())
            .map(|k| {
                let col = snf.u_inv.col(k);
                Vec3(std::array::from_fn(|i| Rational::new(&col[i] * &d[k], denom.clone())))
            })
            .collect();
        Ok(Lattice::new(basis)?.reduced())
    }

    /// The same lattice with an LLL-reduced basis (`delta = 3/4`).
    pub fn reduced(&self) -> Lattice {
        let mut b = self.basis.clone();
        let delta = Rational::new(3.into(), 4.into());
        let mut k = 1;
        while k < b.len() {
            for j in (0..k).rev() {
                let r = gram_schmidt(&b).1[k][j].round();
                if !r.is_zero() {
                    b[k] = &b[k] - &b[j].scale(&r);
                }
            }
            let (star, mu) = gram_schmidt(&b);
            if star[k].norm2() >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * star[k - 1].norm2() {
                k += 1;
            } else {
                b.swap(k, k - 1);
                k = (k - 1).max(1);
            }
        }
        Lattice { basis: b }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec3] {
        &self.basis
    }

    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        Lattice::new(self.basis.iter().map(|b| b.scale(s)).collect())
    }

    pub fn gram(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|a| self.basis.iter().map(|b| a.dot(b)).collect()).collect()
    }

    /// `det(Gram)`; the square of the covolume within the span.
    pub fn covolume_squared(&self) -> Rational {
        let g = self.gram();
        match self.rank() {
            1 => g[0][0].clone(),
            2 => &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0],
            _ => {
                let d = det3(&self.basis[0], &self.basis[1], &self.basis[2]);
                &d * &d
            }
        }
    }

    /// Covolume of a full-rank lattice.
    pub fn covolume(&self) -> Result<Rational> {
        if self.rank() != 3 {
            return Err(Error::FullRankRequired);
        }
        Ok(det3(&self.basis[0], &self.basis[1], &self.basis[2]).abs())
    }

    /// Vectors `m_i` in the span of the basis with `<m_i, b_j> = delta_ij`.
    pub fn biorthogonal(&self) -> Vec<Vec3> {
        let g = self.gram();
        let inv = invert_small(&g);
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|k| self.basis[k].scale(&inv[k][i])).sum())
            .collect()
    }

    /// Coordinates of `x` in the basis, when `x` lies in the span.
    pub fn coordinates(&self, x: &Vec3) -> Option<Vec<Rational>> {
        if self.rank() == 3 {
            return solve3([&self.basis[0], &self.basis[1], &self.basis[2]], x).map(Vec::from);
        }
        let coords: Vec<Rational> = self.biorthogonal().iter().map(|m| m.dot(x)).collect();
        let back: Vec3 = self.combine_rational(&coords);
        (back == *x).then_some(coords)
    }

    pub fn integer_coordinates(&self, x: &Vec3) -> Option<Vec<BigInt>> {
        let c = self.coordinates(x)?;
        c.iter().all(|v| v.is_integer()).then(|| c.iter().map(BigRational::to_integer).collect())
    }

    pub fn contains(&self, x: &Vec3) -> bool {
        self.integer_coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Same point set (mutual containment of bases).
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn combine(&self, coords: &[BigInt]) -> Vec3 {
        self.basis.iter().zip(coords).map(|(b, c)| b.scale(&Rational::from_integer(c.clone()))).sum()
    }

    fn combine_rational(&self, coords: &[Rational]) -> Vec3 {
        self.basis.iter().zip(coords).map(|(b, c)| b.scale(c)).sum()
    }

    /// All points of `offset + L` inside the closed window, sorted.
    pub fn points_in_box(&self, offset: &Vec3, window: &Window) -> Vec<Vec3> {
        let lat = self.reduced();
        let rows = lat.biorthogonal();
        let ranges: Vec<(BigInt, BigInt)> = rows
            .iter()
            .map(|m| {
                // range of <m, y - offset> over the window
                let mut lo = -m.dot(offset);
                let mut hi = lo.clone();
                for i in 0..3 {
                    let (a, b) = (&m[i] * &window.lo[i], &m[i] * &window.hi[i]);
                    let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
                    lo += mn;
                    hi += mx;
                }
                (lo.ceil().to_integer(), hi.floor().to_integer())
            })
            .collect();
        let mut out = Vec::new();
        for_each_in_box(&ranges, &mut |c| {
            let p = offset + lat.combine(c);
            if window.contains(&p) {
                out.push(p);
            }
        });
        out.sort();
        out
    }
}

pub(crate) fn for_each_in_box(ranges: &[(BigInt, BigInt)], f: &mut dyn FnMut(&[BigInt])) {
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return;
    }
    let mut cur: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == ranges.len() {
                return;
            }
            if cur[k] < ranges[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = ranges[k].0.clone();
            k += 1;
        }
    }
}

/// Gram-Schmidt vectors and coefficients `mu[i][j] = <b_i, b*_j> / |b*_j|^2`.
fn gram_schmidt(b: &[Vec3]) -> (Vec<Vec3>, Vec<Vec<Rational>>) {
    let mut star: Vec<Vec3> = Vec::with_capacity(b.len());
    let mut mu = vec![vec![Rational::zero(); b.len()]; b.len()];
    for i in 0..b.len() {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = b[i].dot(&star[j]) / star[j].norm2();
            v = &v - &star[j].scale(&mu[i][j]);
        }
        star.push(v);
    }
    (star, mu)
}

fn invert_small(g: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero()).expect("singular Gram matrix");
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &pivot;
        }
        let prow = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = &*v - &f * pv;
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Dual of a full-rank lattice: `L* = A^{-T} Z^3` for `L = A Z^3`.
pub fn dual_lattice(l: &Lattice) -> Result<Lattice> {
    if l.rank() != 3 {
        return Err(Error::FullRankRequired);
    }
    Lattice::new(l.biorthogonal())
}

/// Dual of a rank-2 lattice inside its own plane.
pub fn subspace_dual(g: &Lattice) -> Result<Lattice> {
    if g.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, got: g.rank() });
    }
    Lattice::new(g.biorthogonal())
}

/// Enumeration of the cosets of a rank-2 sublattice `g` inside a full-rank
/// `gamma`, indexed by a single integer.
///
/// With `u * M * v = diag(d1, d2)` for the inclusion matrix `M` (columns are
/// the `gamma`-coordinates of `g`'s basis), the quotient is
/// `Z/d1 + Z/d2 + Z`. A coset with torsion part `(a1, a2)` and free part `f`
/// gets index `j = f * T + a1 + d1 * a2`, `T = d1 * d2`.
#[derive(Clone, Debug)]
pub struct CosetEnumeration {
    gamma: Lattice,
    g: Lattice,
    u: [[i128; 3]; 3],
    u_inv: IntMatrix,
    d: [i128; 2],
    torsion_order: i64,
}

impl CosetEnumeration {
    pub fn gamma(&self) -> &Lattice {
        &self.gamma
    }

    pub fn g(&self) -> &Lattice {
        &self.g
    }

    pub fn torsion_order(&self) -> i64 {
        self.torsion_order
    }

    pub fn invariant_factors(&self) -> [i64; 2] {
        [self.d[0] as i64, self.d[1] as i64]
    }

    /// Coset index of the `gamma` point with integer coordinates `c`.
    pub fn index_of_coords(&self, c: &[i128; 3]) -> i64 {
        let y: [i128; 3] = std::array::from_fn(|i| (0..3).map(|k| self.u[i][k] * c[k]).sum());
        let a1 = y[0].rem_euclid(self.d[0]);
        let a2 = y[1].rem_euclid(self.d[1]);
        (y[2] * self.torsion_order as i128 + a1 + self.d[0] * a2) as i64
    }

    /// Coset index of a point of `gamma`; `None` if the point is not in `gamma`.
    pub fn index_of(&self, p: &Vec3) -> Option<i64> {
        let c = self.gamma.integer_coordinates(p)?;
        let c: [i128; 3] = std::array::from_fn(|i| c[i].to_i128().expect("coordinate overflow"));
        Some(self.index_of_coords(&c))
    }

    pub fn rep(&self, j: i64) -> Vec3 {
        let t = self.torsion_order;
        let (f, r) = (j.div_euclid(t), j.rem_euclid(t));
        let (a1, a2) = (r as i128 % self.d[0], r as i128 / self.d[0]);
        let y = [BigInt::from(a1), BigInt::from(a2), BigInt::from(f)];
        let c = self.u_inv.mul_vec(&y);
        self.gamma.combine(&c)
    }

    /// `rep(T)`: the free generator. Representatives at indices `T * l` are
    /// exactly `l * rep(T)`.
    pub fn line_generator(&self) -> Vec3 {
        self.rep(self.torsion_order)
    }

    pub fn line_index(&self, l: i64) -> i64 {
        l * self.torsion_order
    }

    /// Checks `rep(T * l) == l * rep(T)` for `l` in the given range.
    pub fn contains_line(&self, ls: std::ops::RangeInclusive<i64>) -> bool {
        let gen = self.line_generator();
        ls.into_iter().all(|l| self.rep(self.line_index(l)) == gen.scale(&Rational::from_integer(l.into())))
    }
}

pub fn coset_reps(gamma: &Lattice, g: &Lattice) -> Result<CosetEnumeration> {
    if gamma.rank() != 3 {
        return Err(Error::FullRankRequired);
    }
    if g.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, got: g.rank() });
    }
    let mut m = IntMatrix::zeros(3, 2);
    for (j, b) in g.basis().iter().enumerate() {
        let c = gamma.integer_coordinates(b).ok_or(Error::NotSublattice)?;
        for i in 0..3 {
            m[(i, j)] = c[i].clone();
        }
    }
    let snf = smith_normal_form(&m);
    let d = snf.diagonal();
    let to_i128 = |v: &BigInt| v.to_i128().ok_or_else(|| Error::Invalid("coset data too large".into()));
    let u: [[i128; 3]; 3] = {
        let mut u = [[0i128; 3]; 3];
        for (i, row) in u.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = to_i128(&snf.u[(i, k)])?;
            }
        }
        u
    };
    let d = [to_i128(&d[0])?, to_i128(&d[1])?];
    debug_assert!(d[0].is_positive() && d[1].is_positive());
    let torsion_order = (d[0] * d[1]) as i64;
    Ok(CosetEnumeration { gamma: gamma.clone(), g: g.clone(), u, u_inv: snf.u_inv, d, torsion_order })
}
