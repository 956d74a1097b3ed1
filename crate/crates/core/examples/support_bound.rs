//! Check that the dual-lattice Fourier support of a tiling set avoids the
//! zero set of no frame's leg measure.
//!
//! Run with `cargo run --example support_bound`.

use zonotile::exact::{int, Lattice, Vec3};
use zonotile::io::read_zonotope;
use zonotile::spectral::support_bound_check;
use zonotile::tiling::{LatticeComponent, TranslateSet};

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/cube.json"))?;
    let z3 = TranslateSet::lattice(Lattice::integer());
    let r = support_bound_check(&z, &z3, &int(3))?;
    println!("Z^3: {} candidates, {} exempt, {} violations", r.candidates, r.exempt.len(), r.violations.len());

    // face-centred cubic lattice: not a tiling set for the cube
    let fcc = Lattice::new(vec![Vec3::from_ints(1, 1, 0), Vec3::from_ints(1, 0, 1), Vec3::from_ints(0, 1, 1)])?;
    let lam = TranslateSet::LatticeUnion(vec![LatticeComponent { lattice: fcc, offset: Vec3::zero(), weight: 1 }]);
    let r = support_bound_check(&z, &lam, &int(1))?;
    match r.violations.first() {
        Some(xi) => println!("FCC: {} violations, first at {xi}", r.violations.len()),
        None => println!("FCC: no violations"),
    }
    Ok(())
}
