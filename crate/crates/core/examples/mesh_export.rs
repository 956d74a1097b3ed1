//! Write the boundary of a zonotope as an OFF mesh.
//!
//! Run with `cargo run --example mesh_export > rhombic.off`.

use zonotile::io::read_zonotope;
use zonotile::zonotope::export_off;

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/rhombic.json"))?;
    print!("{}", export_off(&z, 4));
    Ok(())
}
