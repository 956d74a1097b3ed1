//! Classify a few zonotopes: two-flatness, the intersection property and
//! what each verdict means for multiple tilings.
//!
//! Run with `cargo run --example classify`.

use zonotile::io::{read_zonotope, to_json};
use zonotile::structure::{classify, Verdict};

const SHAPES: [(&str, &str); 4] = [
    ("cube", include_str!("../data/cube.json")),
    ("rhombic", include_str!("../data/rhombic.json")),
    ("hexagonal prism", include_str!("../data/hexprism.json")),
    ("five generators", include_str!("../data/five.json")),
];

fn main() -> zonotile::Result<()> {
    for (name, text) in SHAPES {
        let z = read_zonotope(text)?;
        let c = classify(&z)?;
        let summary = match &c.verdict {
            Verdict::NotTwoFlat { .. } => "every multiple tiling is quasi-periodic".to_string(),
            Verdict::TwoFlatRationalDiscrete { .. } => "admits a non-periodic multiple tiling".to_string(),
            Verdict::TwoFlatOther { weird_tiling_available } => format!("two-flat, weird tiling: {weird_tiling_available:?}"),
        };
        println!("{name:>16}: {} frames, intersection property {}, {summary}", c.frame_count, c.intersection.holds);
    }
    let cube = read_zonotope(SHAPES[0].1)?;
    print!("{}", to_json(&classify(&cube)?));
    Ok(())
}
