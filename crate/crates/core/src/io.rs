//! JSON input and output formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Vec3;
use crate::tiling::TranslateSet;
use crate::zonotope::Zonotope;

/// `{"generators": [[x, y, z], ...], "translate": [x, y, z]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZonotopeJson {
    pub generators: Vec<Vec3>,
    #[serde(default = "Vec3::zero")]
    pub translate: Vec3,
}

impl From<&Zonotope> for ZonotopeJson {
    fn from(z: &Zonotope) -> Self {
        ZonotopeJson { generators: z.generators().to_vec(), translate: z.translate().clone() }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Pretty JSON with a trailing newline; field order follows declarations.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_zonotope(text: &str) -> Result<Zonotope> {
    let input: ZonotopeJson = serde_json::from_str(text).map_err(parse_err)?;
    Zonotope::build(input.generators, input.translate)
}

pub fn zonotope_json(z: &Zonotope) -> String {
    to_json(&ZonotopeJson::from(z))
}

pub fn read_translate_set(text: &str) -> Result<TranslateSet> {
    serde_json::from_str(text).map_err(parse_err)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsJson {
    Bare(Vec<Vec3>),
    Wrapped { points: Vec<Vec3> },
}

/// A list of points, either `[[x, y, z], ...]` or `{"points": [...]}`.
/// Coordinates may be rational strings, decimal strings or JSON numbers.
pub fn read_points(text: &str) -> Result<Vec<Vec3>> {
    match serde_json::from_str(text).map_err(parse_err)? {
        PointsJson::Bare(p) | PointsJson::Wrapped { points: p } => Ok(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    const CUBE: &str = r#"{"generators": [["1","0","0"],["0","1","0"],["0","0","1"]], "translate": ["0","0","0"]}"#;

    #[test]
    fn zonotope_round_trip_is_byte_identical() {
        let z = read_zonotope(CUBE).unwrap();
        let once = zonotope_json(&z);
        let twice = zonotope_json(&read_zonotope(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn rationals_are_reduced_on_output() {
        let z = read_zonotope(r#"{"generators": [["2/4","0","0"],["0",1,"0"],["0","0","0.25"]]}"#).unwrap();
        assert_eq!(z.generators()[0].x(), &q(1, 2));
        let out = zonotope_json(&z);
        assert!(out.contains("\"1/2\""));
        assert!(out.contains("\"1/4\""));
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(read_zonotope(r#"{"gens": []}"#), Err(Error::Parse(_))));
        assert!(matches!(read_zonotope(r#"{"generators": [["1/0","0","0"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(read_zonotope(r#"{"generators": [["x","0","0"]]}"#), Err(Error::Parse(_))));
        assert_eq!(read_zonotope(r#"{"generators": [["1","0","0"],["0","1","0"]]}"#).unwrap_err(), Error::DegenerateZonotope);
    }

    #[test]
    fn point_lists() {
        let a = read_points(r#"[["1/2", 0.25, "3"]]"#).unwrap();
        let b = read_points(r#"{"points": [["0.5", "1/4", 3]]}"#).unwrap();
        assert_eq!(a, b);
    }
}
