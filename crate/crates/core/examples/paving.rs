//! Split a zonotope into half-open parallelepipeds and locate points.
//!
//! Run with `cargo run --example paving`.

use zonotile::exact::{q, Vec3};
use zonotile::io::read_zonotope;
use zonotile::zonotope::pave;

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/five.json"))?;
    let p = pave(&z);
    println!("{} cells, total volume {} (zonotope volume {})", p.cells.len(), p.volume(), z.volume());
    for (i, c) in p.cells.iter().enumerate() {
        println!("  cell {i}: generators {:?}, anchor {}, volume {}", c.generators, c.anchor, c.volume());
    }
    let x = Vec3::new(q(3, 2), q(5, 3), q(7, 4));
    println!("{x} lies in cell {:?}", p.locate(&x));
    Ok(())
}
