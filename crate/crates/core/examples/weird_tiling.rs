//! Build the coset slab construction for the cube, choose slabs coset by
//! coset, and check that every choice tiles at the same level.
//!
//! Run with `cargo run --release --example weird_tiling`.

use std::collections::BTreeMap;

use zonotile::exact::Window;
use zonotile::io::read_zonotope;
use zonotile::structure::two_flat;
use zonotile::tiling::{verify_level, Slab};
use zonotile::weird::{build_construction, build_weird, slab_identity_check};

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/hexprism.json"))?;
    let c = build_construction(&z, &two_flat(&z))?;
    println!("G basis {}", list(c.g.basis()));
    println!("Gamma basis {}", list(c.gamma.basis()));
    println!("coefficients {}, N = {}, expected level {}", list(&c.coefficients), c.n_value, c.expected_level);
    println!("S offsets {}", list(&c.s_offsets));
    println!("T offsets {}", list(&c.t_offsets));

    let slab = slab_identity_check(&c, &Window::cube(3), 500, 1)?;
    println!("slab identity holds at 500 points: {}", slab.holds);

    for (name, choice) in [
        ("all S", BTreeMap::new()),
        ("T on even cosets", (-10..=10).filter(|j| j % 2 == 0).map(|j| (j, Slab::T)).collect()),
        ("T on j = 0 only", BTreeMap::from([(0, Slab::T)])),
    ] {
        let lam = build_weird(&c, choice)?;
        let r = verify_level(&z, &lam, &Window::cube(3), 2000, 2)?;
        println!("{name:>18}: level {:?}", r.level);
    }
    Ok(())
}
