//! Embedded reference data used by the verification suites: worked example
//! patterns in the text format, plus the expected inversion data and trace
//! pivots for the seven-row width-two example.

use std::collections::BTreeSet;

use crate::pattern::{Cell, Pattern};

/// Raw text of every embedded fixture, keyed by its base name.
pub const RAW: &[(&str, &str)] = &[
    ("eq05", include_str!("../fixtures/eq05.txt")),
    ("eq06", include_str!("../fixtures/eq06.txt")),
    ("eq07", include_str!("../fixtures/eq07.txt")),
    ("eq11", include_str!("../fixtures/eq11.txt")),
    ("eq14", include_str!("../fixtures/eq14.txt")),
    ("eq15", include_str!("../fixtures/eq15.txt")),
    ("eq16", include_str!("../fixtures/eq16.txt")),
    ("eq17", include_str!("../fixtures/eq17.txt")),
    ("eq20", include_str!("../fixtures/eq20.txt")),
    ("sec43_step0", include_str!("../fixtures/sec43_step0.txt")),
    ("sec43_step1", include_str!("../fixtures/sec43_step1.txt")),
    ("sec43_step2", include_str!("../fixtures/sec43_step2.txt")),
    ("sec43_step3", include_str!("../fixtures/sec43_step3.txt")),
    ("sec43_step4", include_str!("../fixtures/sec43_step4.txt")),
];

/// Covered-cell list for the inversion example, one `i j` pair per line.
pub const EQ22_RAW: &str = include_str!("../fixtures/eq22.txt");

/// Expected inversion rows consumed by the forward seven-row trace.
pub const SEC43_INVERSION_ROWS: [usize; 4] = [6, 5, 2, 1];

/// Expected pivots of the forward seven-row trace.
pub const SEC43_FORWARD_PIVOTS: [usize; 4] = [7, 6, 5, 2];

/// Expected pivots of the inverse seven-row trace, in processing order
/// (south-east first).
pub const SEC43_INVERSE_PIVOTS: [usize; 4] = [2, 3, 6, 7];

pub fn raw(name: &str) -> &'static str {
    RAW.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("unknown fixture {name}")).1
}

fn parsed(name: &str) -> Pattern {
    Pattern::parse(raw(name)).unwrap_or_else(|e| panic!("fixture {name} must parse: {e}"))
}

/// Strict reference Gog triangle of size 5.
pub fn eq05() -> Pattern {
    parsed("eq05")
}

/// Reference right Gog trapezoid (5,2).
pub fn eq06() -> Pattern {
    parsed("eq06")
}

/// Reference left Gog trapezoid (5,2).
pub fn eq07() -> Pattern {
    parsed("eq07")
}

/// Canonical completion of [`eq07`].
pub fn eq11() -> Pattern {
    parsed("eq11")
}

/// Reference right GOGAm trapezoid (5,2).
pub fn eq14() -> Pattern {
    parsed("eq14")
}

/// Reference left GOGAm trapezoid (5,2).
pub fn eq15() -> Pattern {
    parsed("eq15")
}

/// Canonical completion of [`eq15`].
pub fn eq16() -> Pattern {
    parsed("eq16")
}

/// Result of the four-diagonal subtraction sweep on [`eq11`].
pub fn eq17() -> Pattern {
    parsed("eq17")
}

/// The inversion example triangle (same entries as [`eq05`]).
pub fn eq20() -> Pattern {
    parsed("eq20")
}

/// Covered cells of [`eq20`].
pub fn eq22_cells() -> BTreeSet<Cell> {
    EQ22_RAW
        .lines()
        .map(|line| {
            let mut it = line.split_whitespace().map(|t| t.parse::<usize>().unwrap());
            Cell::new(it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

/// Intermediates of the seven-row width-two trace; step 0 is the input and
/// step 4 the image.
pub fn sec43_step(l: usize) -> Pattern {
    assert!(l <= 4, "trace steps are numbered 0..=4");
    parsed(&format!("sec43_step{l}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_round_trip() {
        for (name, text) in RAW {
            let p = Pattern::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&p.serialize(), text, "{name} must re-serialize byte-identically");
        }
    }

    #[test]
    fn eq20_matches_eq05() {
        assert_eq!(eq20().rows(), eq05().rows());
    }

    #[test]
    fn covered_cell_fixture_has_six_cells() {
        assert_eq!(eq22_cells().len(), 6);
    }
}
