//! Named matrices: the small not-once-separable permutation patterns, their
//! hand-checked vertical witnesses, the construction of `W(Q1)` and the two
//! 11x11 witnesses for `Q1`, plus the table of Q0-like patterns of size at
//! most 6.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::{parse_matrix, Matrix, Pattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMatrix {
    pub name: &'static str,
    pub matrix: Matrix,
    pub source: &'static str,
}

impl NamedMatrix {
    pub fn pattern(&self) -> Pattern {
        Pattern::new(self.matrix.clone()).expect("catalog matrices are non-zero")
    }
}

const ENTRIES: &[(&str, &str, &str)] = &[
    (
        "Q0",
        "outer configuration Q0",
        "
        .1..
        1...
        ...1
        ..1.
        ",
    ),
    (
        "Q1",
        "outer configuration Q1, the only 4x4 not-once-separable class",
        "
        ..1.
        1...
        ...1
        .1..
        ",
    ),
    (
        "Q2",
        "5x5 not-once-separable, Q1-like",
        "
        ...1.
        1....
        ..1..
        ....1
        .1...
        ",
    ),
    (
        "Q3",
        "5x5 not-once-separable, Q1-like",
        "
        ...1.
        1....
        .1...
        ....1
        ..1..
        ",
    ),
    (
        "Q4",
        "5x5 not-once-separable, Q1-like",
        "
        ...1.
        1....
        ....1
        .1...
        ..1..
        ",
    ),
    (
        "Q5",
        "5x5 not-once-separable, Q0-like",
        "
        ..1..
        1....
        ....1
        .1...
        ...1.
        ",
    ),
    (
        "Q6",
        "6x6 Q0-like without a tall anti-identity",
        "
        ..1...
        1.....
        .....1
        .1....
        ...1..
        ....1.
        ",
    ),
    (
        "Q7",
        "6x6 Q0-like without a tall anti-identity",
        "
        ..1...
        1.....
        .....1
        .1....
        ....1.
        ...1..
        ",
    ),
    (
        "Q8",
        "6x6 Q0-like without a tall anti-identity",
        "
        ..1...
        1.....
        ....1.
        .1....
        .....1
        ...1..
        ",
    ),
    (
        "Q9",
        "6x6 Q0-like where W(P) contains P",
        "
        .1....
        ...1..
        1.....
        .....1
        ..1...
        ....1.
        ",
    ),
    (
        "W6",
        "vertical witness for Q6, equal to W(Q6)",
        "
        ..1.......
        1.....1...
        ..........
        .1.......1
        ...1.1....
        ....1..1..
        ........1.
        ",
    ),
    (
        "W7",
        "vertical witness for Q7, equal to W(Q7)",
        "
        ..1.......
        1.....1...
        ..........
        .1.......1
        ....11....
        ...1....1.
        .......1..
        ",
    ),
    (
        "W8",
        "vertical witness for Q8, equal to W(Q8)",
        "
        ..1.......
        1.........
        ....1.....
        .1....1...
        ..........
        ...1....1.
        .....1....
        .........1
        .......1..
        ",
    ),
    (
        "W9",
        "vertical witness for Q9: W(Q9) with the column-6 entry moved up one row",
        "
        .1...1....
        ...1......
        1......1..
        ..........
        ..1......1
        ....1.1...
        ........1.
        ",
    ),
    (
        "WQ1",
        "W(Q1), expandable row 3",
        "
        ..1...
        1...1.
        ......
        .1...1
        ...1..
        ",
    ),
    (
        "WIT_Q1",
        "witness for Q1 composed from rotated W(Q1) and W(Q1), expandable row 9 and column 9",
        "
        .........1.
        .......1...
        ..........1
        ......1....
        .........1.
        .......1...
        ..1........
        1...1......
        ...........
        .1...1.....
        ...1.......
        ",
    ),
    (
        "EXPL_Q1",
        "explicit (saturated) witness for Q1, expandable row 9 and column 9",
        "
        1111.111.11
        .......1.11
        .....111.11
        .....111.1.
        .....1.1.1.
        .111.1.1.11
        .111.1.....
        11.111.....
        ...........
        11.111.....
        1..111...11
        ",
    ),
];

fn catalog() -> &'static [NamedMatrix] {
    static CATALOG: OnceLock<Vec<NamedMatrix>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        ENTRIES
            .iter()
            .map(|&(name, source, text)| NamedMatrix {
                name,
                matrix: parse_matrix(text).unwrap_or_else(|e| panic!("catalog entry {name}: {e}")),
                source,
            })
            .collect()
    })
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

pub fn all() -> &'static [NamedMatrix] {
    catalog()
}

pub fn builtin(name: &str) -> Result<&'static NamedMatrix> {
    catalog()
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
            available: names().into_iter().map(String::from).collect(),
        })
}

/// Shorthand for `builtin(name)?.pattern()`.
pub fn pattern(name: &str) -> Result<Pattern> {
    builtin(name).map(NamedMatrix::pattern)
}

/// How a row of the Q0-like table is shown to have bounded saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableProof {
    /// `W(P)` avoids `P` because `P` has an anti-identity of height `k - 1`.
    AlmostQ1,
    /// A catalog vertical witness, named by its pattern.
    Witness(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub matrix: Matrix,
    pub proof: TableProof,
}

// Every not-once-separable Q0-like permutation matrix of size at most 6 up to
// reflection, as row -> column (1-based), in table order.
const Q0_TABLE: &[(&[usize], TableProof)] = &[
    (&[3, 1, 5, 2, 4], TableProof::AlmostQ1),
    (&[4, 1, 2, 6, 3, 5], TableProof::AlmostQ1),
    (&[3, 1, 6, 2, 4, 5], TableProof::Witness("Q6")),
    (&[3, 1, 5, 2, 6, 4], TableProof::Witness("Q8")),
    (&[3, 1, 6, 2, 5, 4], TableProof::Witness("Q7")),
    (&[4, 1, 6, 2, 3, 5], TableProof::AlmostQ1),
    (&[3, 1, 4, 6, 2, 5], TableProof::AlmostQ1),
    (&[3, 1, 6, 4, 2, 5], TableProof::AlmostQ1),
    (&[3, 1, 5, 6, 2, 4], TableProof::AlmostQ1),
    (&[3, 1, 6, 5, 2, 4], TableProof::AlmostQ1),
    (&[4, 1, 3, 6, 2, 5], TableProof::AlmostQ1),
    (&[4, 1, 6, 3, 2, 5], TableProof::AlmostQ1),
    (&[2, 4, 1, 6, 3, 5], TableProof::Witness("Q9")),
    (&[2, 5, 1, 6, 3, 4], TableProof::AlmostQ1),
    (&[2, 4, 1, 6, 5, 3], TableProof::AlmostQ1),
    (&[2, 5, 1, 6, 4, 3], TableProof::AlmostQ1),
    (&[3, 5, 1, 6, 2, 4], TableProof::AlmostQ1),
];

pub fn q0_table() -> Vec<TableEntry> {
    Q0_TABLE
        .iter()
        .map(|&(perm, proof)| {
            let zero_based: Vec<usize> = perm.iter().map(|c| c - 1).collect();
            TableEntry {
                matrix: Matrix::from_permutation(&zero_based).expect("table entries are permutations"),
                proof,
            }
        })
        .collect()
}
