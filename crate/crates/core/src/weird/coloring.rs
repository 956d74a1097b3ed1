use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Black,
}

/// A partial two-coloring of `Z`; uncolored integers read as red.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colored: BTreeMap<i64, Color>,
    /// Arithmetic progressions `a + d Z` in processing order, as `(d, a)`.
    pub processed_aps: Vec<(i64, i64)>,
}

impl Coloring {
    pub fn color(&self, x: i64) -> Color {
        self.colored.get(&x).copied().unwrap_or(Color::Red)
    }

    /// Does `a + d Z` contain colored integers of both colors?
    pub fn has_both_colors(&self, d: i64, a: i64) -> bool {
        let mut seen = [false; 2];
        for (x, c) in &self.colored {
            if (x - a).rem_euclid(d) == 0 {
                seen[*c as usize] = true;
            }
        }
        seen == [true, true]
    }

    /// Every processed progression has both colors.
    pub fn audit(&self) -> bool {
        self.processed_aps.iter().all(|&(d, a)| self.has_both_colors(d, a))
    }
}

/// Progressions `(d, a)` with `d >= 1`, `0 <= a < d`, ordered by `d + a`
/// and then by `d`.
fn base_order() -> impl Iterator<Item = (i64, i64)> {
    (1i64..).flat_map(|s| (1..=s).map(move |d| (d, s - d)).filter(|(d, a)| a < d))
}

/// Processing schedule: blocks `A_1; A_1 A_2; A_1 A_2 A_3; ...` of the base
/// order, so every progression recurs infinitely often.
pub fn ap_schedule() -> impl Iterator<Item = (i64, i64)> {
    (1usize..).flat_map(|len| base_order().take(len))
}

/// Members of `a + d Z` by increasing absolute value, negatives first on ties.
fn members_near_zero(d: i64, a: i64) -> impl Iterator<Item = i64> {
    let first_nonneg = a.rem_euclid(d);
    let first_neg = first_nonneg - d;
    let mut up = first_nonneg;
    let mut down = first_neg;
    std::iter::from_fn(move || {
        if -down <= up {
            let v = down;
            down -= d;
            Some(v)
        } else {
            let v = up;
            up += d;
            Some(v)
        }
    })
}

/// Greedy coloring: for each scheduled progression, the two uncolored members
/// closest to 0 get different colors.
pub fn ap_coloring(num_aps: usize) -> Coloring {
    let mut out = Coloring::default();
    for (d, a) in ap_schedule().take(num_aps) {
        let fresh: Vec<i64> = members_near_zero(d, a).filter(|x| !out.colored.contains_key(x)).take(2).collect();
        out.colored.insert(fresh[0], Color::Red);
        out.colored.insert(fresh[1], Color::Black);
        out.processed_aps.push((d, a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_order_starts_as_expected() {
        let first: Vec<_> = base_order().take(6).collect();
        assert_eq!(first, vec![(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0)]);
    }

    #[test]
    fn schedule_revisits() {
        let s: Vec<_> = ap_schedule().take(6).collect();
        assert_eq!(s, vec![(1, 0), (1, 0), (2, 0), (1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn members_by_distance() {
        let m: Vec<_> = members_near_zero(3, 1).take(5).collect();
        assert_eq!(m, vec![1, -2, 4, -5, 7]);
        let m: Vec<_> = members_near_zero(1, 0).take(4).collect();
        assert_eq!(m, vec![0, -1, 1, -2]);
    }

    #[test]
    fn single_progression() {
        let c = ap_coloring(1);
        assert_eq!(c.colored.len(), 2);
        assert_eq!(c.colored.values().filter(|v| **v == Color::Red).count(), 1);
        assert!(c.audit());
    }

    #[test]
    fn two_hundred_progressions_audit() {
        let c = ap_coloring(200);
        assert_eq!(c.processed_aps.len(), 200);
        assert_eq!(c.colored.len(), 400);
        assert!(c.audit());
    }

    #[test]
    fn uncolored_defaults_to_red() {
        let c = ap_coloring(3);
        assert_eq!(c.color(1_000_000), Color::Red);
    }
}
