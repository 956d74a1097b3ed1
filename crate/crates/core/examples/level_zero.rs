//! Pair leg measures convolved with a lattice against Gaussian test
//! functions. Tiling lattices give zero; flipping the leg signs does not.
//!
//! Run with `cargo run --example level_zero`.

use zonotile::exact::Lattice;
use zonotile::io::read_zonotope;
use zonotile::spectral::{leg_level_zero_check, LegMeasure};
use zonotile::tiling::TranslateSet;
use zonotile::zonotope::frames;

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/cube.json"))?;
    let lam = TranslateSet::lattice(Lattice::integer());
    let frame = frames(&z).frames.remove(0);
    let signed = leg_level_zero_check(&LegMeasure::new(frame.clone()), &lam, 10, 1e-6, 3)?;
    println!("signed legs: max |value| {:.2e}, passed {}", signed.max_abs, signed.passed);
    let positive = leg_level_zero_check(&LegMeasure::with_signs(frame, [1, 1, 1, 1]), &lam, 10, 1e-6, 3)?;
    println!("all-positive legs: max |value| {:.3}, passed {}", positive.max_abs, positive.passed);
    Ok(())
}
