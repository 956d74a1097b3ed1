//! Frames of a zonotope and the Fourier transform of their leg measures,
//! evaluated on and off the predicted zero set.
//!
//! Run with `cargo run --example frames_and_zero_sets`.

use zonotile::exact::{q, Vec3};
use zonotile::io::read_zonotope;
use zonotile::spectral::{leg_ft, leg_ft_numeric, zero_set_families, LegMeasure};
use zonotile::zonotope::frames;

fn main() -> zonotile::Result<()> {
    let z = read_zonotope(include_str!("../data/rhombic.json"))?;
    let list = frames(&z);
    println!("{} frames ({} degenerate)", list.frames.len(), list.degenerate.len());
    for (i, f) in list.frames.iter().enumerate() {
        let m = LegMeasure::new(f.clone());
        println!("frame {i}: e = {}, tau1 = {}, tau2 = {}, base = {}", f.e, f.tau1, f.tau2, f.base);
        for fam in zero_set_families(f) {
            let xi = fam.point(1, &q(1, 3), &q(-2, 7));
            println!("  zero-set point {xi}: |FT| = {:.1e}", leg_ft(&m, xi.to_f64())?.norm());
        }
        let off = Vec3::new(q(1, 5), q(2, 9), q(3, 11)).to_f64();
        let closed = leg_ft(&m, off)?;
        let numeric = leg_ft_numeric(&m, off, 1e-12);
        println!("  generic point: closed form {closed:.6}, quadrature {numeric:.6}");
    }
    Ok(())
}
