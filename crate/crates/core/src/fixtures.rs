//! Named sets used throughout the tests and accepted by the CLI.

use crate::setops::{AdditiveSet, MultiplicativeSet};

/// Conway's sum-dominant set.
pub const CONWAY: [i64; 8] = [0, 2, 3, 4, 7, 11, 12, 14];

/// Symmetric with respect to 1296.
pub const S1: [i64; 12] = [3, 4, 6, 8, 9, 27, 48, 144, 162, 216, 324, 432];
pub const S2: [i64; 13] = [3, 4, 6, 8, 9, 27, 48, 72, 144, 162, 216, 324, 432];
/// The (2,5)-prime switch of `S2`.
pub const S3: [i64; 13] = [
    3, 25, 15, 125, 9, 27, 1875, 1125, 5625, 405, 3375, 2025, 16875,
];
/// `2^CONWAY`.
pub const S4: [i64; 8] = [1, 4, 8, 16, 128, 2048, 4096, 16384];

/// MPTQ subsets of `{2^a 3^b : 0 <= a, b <= 6}`.
pub const GRID_SETS: [[i64; 11]; 5] = [
    [12, 27, 36, 96, 108, 144, 162, 243, 648, 864, 1944],
    [8, 18, 32, 36, 48, 216, 324, 432, 486, 864, 1944],
    [4, 9, 12, 32, 36, 48, 54, 81, 216, 288, 648],
    [1, 6, 8, 9, 24, 72, 108, 288, 324, 432, 2592],
    [3, 18, 24, 27, 72, 108, 324, 864, 972, 1296, 7776],
];

/// Quotient-dominated worked example with `|A*A| = 12`, `|A/A| = 13`.
pub const WORKED: [i64; 5] = [1, 2, 3, 6, 9];

/// A set with two distinct multiplier sequences.
pub const MULTIPLIER_EXAMPLE: [i64; 8] = [5, 1280, -10, -40, 40, 2560, 160, 320];

pub enum Fixture {
    Multiplicative(MultiplicativeSet),
    Additive(AdditiveSet),
}

fn mset(values: &[i64]) -> MultiplicativeSet {
    MultiplicativeSet::from_integers(values.iter().copied()).expect("fixtures contain no zero")
}

pub fn conway() -> AdditiveSet {
    AdditiveSet::from_integers(CONWAY)
}

pub fn s1() -> MultiplicativeSet {
    mset(&S1)
}

pub fn s2() -> MultiplicativeSet {
    mset(&S2)
}

pub fn s3() -> MultiplicativeSet {
    mset(&S3)
}

pub fn s4() -> MultiplicativeSet {
    mset(&S4)
}

pub fn grid_sets() -> Vec<MultiplicativeSet> {
    GRID_SETS.iter().map(|s| mset(s)).collect()
}

pub fn worked() -> MultiplicativeSet {
    mset(&WORKED)
}

pub const NAMES: [&str; 12] = [
    "conway",
    "s1",
    "s2",
    "s3",
    "s4",
    "grid1",
    "grid2",
    "grid3",
    "grid4",
    "grid5",
    "worked",
    "multiplier-example",
];

/// Look up a fixture by name (case-insensitive).
pub fn named(name: &str) -> Option<Fixture> {
    let name = name.to_ascii_lowercase();
    let set = match name.as_str() {
        "conway" => return Some(Fixture::Additive(conway())),
        "s1" => s1(),
        "s2" => s2(),
        "s3" => s3(),
        "s4" => s4(),
        "worked" => worked(),
        "multiplier-example" => mset(&MULTIPLIER_EXAMPLE),
        _ => {
            let idx: usize = name.strip_prefix("grid")?.parse().ok()?;
            mset(GRID_SETS.get(idx.checked_sub(1)?)?)
        }
    };
    Some(Fixture::Multiplicative(set))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(named(name).is_some(), "{name}");
        }
        assert!(named("grid0").is_none());
        assert!(named("grid6").is_none());
        assert!(named("nope").is_none());
        assert!(matches!(named("CONWAY"), Some(Fixture::Additive(_))));
    }
}
