//! Sample the coverage of a translate set and compare with the density law.
//!
//! Run with `cargo run --release --example verify_tiling`.

use zonotile::exact::Window;
use zonotile::io::{read_translate_set, read_zonotope};
use zonotile::tiling::verify_level;

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/cube.json"))?;
    for (name, text) in [
        ("Z^3", include_str!("../data/z3.json")),
        ("two shifted copies of Z^3", include_str!("../data/two_lattices.json")),
        ("2Z x Z x Z", include_str!("../data/sparse.json")),
    ] {
        let lam = read_translate_set(text)?;
        let r = verify_level(&z, &lam, &Window::cube(4), 5000, 7)?;
        println!(
            "{name:>26}: level {:?}, histogram {:?}, density x volume = {}",
            r.level, r.histogram, r.density_times_volume
        );
    }
    Ok(())
}
