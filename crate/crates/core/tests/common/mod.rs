#![allow(dead_code)]

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zonotile::exact::{det3, int, q, rank, Rational, Vec3};
use zonotile::zonotope::{Frame, Zonotope};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64, z: i64) -> Vec3 {
    Vec3::from_ints(x, y, z)
}

pub fn zono(g: &[[i64; 3]]) -> Zonotope {
    Zonotope::build(g.iter().map(|r| v(r[0], r[1], r[2])).collect(), Vec3::zero()).unwrap()
}

pub fn cube() -> Zonotope {
    zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

pub fn rhombic() -> Zonotope {
    zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
}

pub fn five_generic() -> Zonotope {
    zono(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]])
}

pub fn rand_rational(rng: &mut impl Rng) -> Rational {
    let den = *[1i64, 1, 2, 3].choose(rng).unwrap();
    q(rng.gen_range(-3..=3), den)
}

pub fn rand_vec(rng: &mut impl Rng) -> Vec3 {
    loop {
        let x = Vec3::new(rand_rational(rng), rand_rational(rng), rand_rational(rng));
        if !x.is_zero() {
            return x;
        }
    }
}

/// Small rational pool with many coplanar triples and parallel pairs.
pub fn pool() -> Vec<Vec3> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1], [1, -1, 0], [1, 2, 3], [2, 0, 0], [2, 1, 0], [1, 2, -1]]
        .iter()
        .map(|r| v(r[0], r[1], r[2]))
        .chain([Vec3::new(q(1, 2), int(1), q(-1, 3))])
        .collect()
}

/// Full-dimensional zonotope with 3 to `max` generators drawn from the pool.
pub fn pool_zonotope(rng: &mut impl Rng, max: usize) -> Zonotope {
    let pool = pool();
    loop {
        let n = rng.gen_range(3..=max);
        let g: Vec<Vec3> = pool.choose_multiple(rng, n).cloned().collect();
        if rank(&g) == 3 {
            return Zonotope::build(g, Vec3::zero()).unwrap();
        }
    }
}

/// Random zonotope mixing three kinds: generic generators, a planar
/// polygon plus transversal segments, and a random two-flat sum.
pub fn random_zonotope(rng: &mut impl Rng) -> Zonotope {
    loop {
        let g: Vec<Vec3> = match rng.gen_range(0..3) {
            0 => (0..rng.gen_range(3..=5)).map(|_| rand_vec(rng)).collect(),
            1 => {
                let (a, b) = (rand_vec(rng), rand_vec(rng));
                let mut g: Vec<Vec3> = (0..rng.gen_range(2..=4)).map(|_| plane_combo(rng, &a, &b)).collect();
                g.push(rand_vec(rng));
                g
            }
            _ => {
                let (n, m) = (rng.gen_range(2..=3), rng.gen_range(1..=3));
                random_two_flat(rng, n, m)
            }
        };
        if g.iter().all(|x| !x.is_zero()) && rank(&g) == 3 {
            return Zonotope::build(g, Vec3::zero()).unwrap();
        }
    }
}

fn plane_combo(rng: &mut impl Rng, a: &Vec3, b: &Vec3) -> Vec3 {
    loop {
        let x = a.scale(&q(rng.gen_range(-2..=2), *[1, 2].choose(rng).unwrap())) + b.scale(&q(rng.gen_range(-2..=2), 1));
        if !x.is_zero() {
            return x;
        }
    }
}

/// `n` generators spanning one plane followed by `m` in another plane.
pub fn random_two_flat(rng: &mut impl Rng, n: usize, m: usize) -> Vec<Vec3> {
    loop {
        let (a, b, c) = (rand_vec(rng), rand_vec(rng), rand_vec(rng));
        if det3(&a, &b, &c).is_zero() {
            continue;
        }
        let vs: Vec<Vec3> = (0..n).map(|_| plane_combo(rng, &a, &b)).collect();
        let d = plane_combo(rng, &a, &b);
        let ws: Vec<Vec3> = (0..m).map(|_| plane_combo(rng, &c, &d)).collect();
        if rank(&vs) == 2 && ws.iter().all(|w| !w.is_zero()) {
            let mut g = vs;
            g.extend(ws);
            if rank(&g) == 3 {
                return g;
            }
        }
    }
}

/// Independent intersection-property oracle: the property fails iff some
/// plane through the origin contains a vector of every frame. Candidate
/// planes are spanned by two frame vectors, or by one frame vector and a
/// coordinate axis.
pub fn intersection_oracle(frames: &[Frame]) -> bool {
    let vecs: Vec<Vec3> = frames.iter().flat_map(|f| [f.e.clone(), f.tau1.clone(), f.tau2.clone()]).collect();
    let mut planes: Vec<(Vec3, Vec3)> = Vec::new();
    for (i, a) in vecs.iter().enumerate() {
        for b in &vecs[i + 1..] {
            if !a.is_parallel(b) {
                planes.push((a.clone(), b.clone()));
            }
        }
        for k in 0..3 {
            let e = Vec3::unit(k);
            if !a.is_parallel(&e) {
                planes.push((a.clone(), e));
            }
        }
    }
    let meets_all = |(a, b): &(Vec3, Vec3)| frames.iter().all(|f| [&f.e, &f.tau1, &f.tau2].iter().any(|x| det3(a, b, x).is_zero()));
    !planes.iter().any(meets_all)
}

/// Brute-force two-flatness: some 2-coloring of the direction classes has
/// both color classes of rank at most 2.
pub fn two_flat_oracle(z: &Zonotope) -> bool {
    let dirs: Vec<Vec3> = z.direction_classes().iter().map(|c| c.direction.clone()).collect();
    (0u32..1 << dirs.len()).any(|mask| {
        let (a, b): (Vec<_>, Vec<_>) = dirs.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let a: Vec<Vec3> = a.into_iter().map(|(_, d)| d.clone()).collect();
        let b: Vec<Vec3> = b.into_iter().map(|(_, d)| d.clone()).collect();
        rank(&a) <= 2 && rank(&b) <= 2
    })
}

/// Uniform rational sample of a box with a fixed odd denominator.
pub fn sample_in_box(rng: &mut impl Rng, lo: &Vec3, hi: &Vec3) -> Vec3 {
    const D: i64 = 100_003;
    Vec3(std::array::from_fn(|i| &lo[i] + (&hi[i] - &lo[i]) * q(rng.gen_range(0..=D), D)))
}
