use std::collections::BTreeMap;
use std::fmt::Write;

use super::Zonotope;
use crate::exact::{to_decimal, Vec3};

/// OFF mesh of the boundary. Faces are listed counter-clockwise seen from
/// outside; coordinates are rendered with `precision` fractional digits.
pub fn export_off(z: &Zonotope, precision: usize) -> String {
    let vertices = z.vertices();
    let index: BTreeMap<&Vec3, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} 0", vertices.len(), z.facets().len()).unwrap();
    for v in &vertices {
        let c: Vec<String> = v.0.iter().map(|r| to_decimal(r, precision)).collect();
        writeln!(out, "{}", c.join(" ")).unwrap();
    }
    for f in z.facets() {
        let poly = f.polygon.vertices();
        let ids: Vec<String> = poly.iter().map(|v| index[v].to_string()).collect();
        writeln!(out, "{} {}", ids.len(), ids.join(" ")).unwrap();
    }
    out
}
