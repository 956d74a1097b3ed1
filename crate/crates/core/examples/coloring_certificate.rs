//! Color the integers so that many arithmetic progressions see both colors,
//! then read the coloring back from a weird tiling of the cube along a line.
//!
//! Run with `cargo run --example coloring_certificate`.

use zonotile::io::read_zonotope;
use zonotile::structure::two_flat;
use zonotile::weird::{ap_coloring, build_construction, irregularity_certificate, Color};

fn main() -> zonotile::Result<()> {
    let coloring = ap_coloring(200);
    println!("{} progressions, {} integers colored, audit {}", coloring.processed_aps.len(), coloring.colored.len(), coloring.audit());
    let row: String = (-20..=20).map(|l| if coloring.color(l) == Color::Red { 'R' } else { 'B' }).collect();
    println!("colors on [-20, 20]: {row}");

    let z = read_zonotope(include_str!("../data/cube.json"))?;
    let c = build_construction(&z, &two_flat(&z))?;
    let r = irregularity_certificate(&c, &coloring, -50..=50)?;
    let row: String = r.points.iter().filter(|p| p.l.abs() <= 20).map(|p| char::from(b'0' + p.multiplicity as u8)).collect();
    println!("multiplicity on the line {}: {row}", r.line_generator);
    println!("mismatches {}, both values occur {}, certificate holds {}", r.mismatches, r.both_values_occur, r.holds);
    Ok(())
}
