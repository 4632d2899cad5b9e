//! Structural predicates on patterns.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Pattern, SymmetryOp};

pub fn is_permutation(p: &Matrix) -> bool {
    p.rows() == p.cols() && (0..p.rows()).all(|i| p.row_weight(i) == 1) && (0..p.cols()).all(|j| p.col_weight(j) == 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Orientation {
    /// `(A 0 / 0 B)`
    Diagonal,
    /// `(0 A / B 0)`
    AntiDiagonal,
}

/// A once-separable decomposition: the pattern splits after its first
/// `rows_top` rows and `cols_left` columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Split {
    pub rows_top: usize,
    pub cols_left: usize,
    pub orientation: Orientation,
}

/// Finds the first split (by rows, then columns, diagonal before
/// anti-diagonal) that makes `p` once-separable.
pub fn is_once_separable(p: &Matrix) -> Option<Split> {
    let (m, n) = p.dims();
    let rows = p.row_data();
    for r in 1..m {
        for c in 1..n {
            let left = (1u64 << c) - 1;
            let right = !left;
            let any = |range: std::ops::Range<usize>, mask: u64| rows[range].iter().any(|&b| b & mask != 0);
            let tl = any(0..r, left);
            let tr = any(0..r, right);
            let bl = any(r..m, left);
            let br = any(r..m, right);
            if tl && br && !tr && !bl {
                return Some(Split {
                    rows_top: r,
                    cols_left: c,
                    orientation: Orientation::Diagonal,
                });
            }
            if tr && bl && !tl && !br {
                return Some(Split {
                    rows_top: r,
                    cols_left: c,
                    orientation: Orientation::AntiDiagonal,
                });
            }
        }
    }
    None
}

/// A pattern is non-trivial when it has a row whose only 1 is in the first
/// column, a row whose only 1 is in the last column, a column whose only 1 is
/// in the first row and a column whose only 1 is in the last row.
pub fn is_trivial(p: &Matrix) -> bool {
    let (m, n) = p.dims();
    let row_only_at = |j: usize| (0..m).any(|i| p.row_weight(i) == 1 && p.get(i, j));
    let col_only_at = |i: usize| (0..n).any(|j| p.col_weight(j) == 1 && p.get(i, j));
    !(row_only_at(0) && row_only_at(n - 1) && col_only_at(0) && col_only_at(m - 1))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum OuterClass {
    Q0Like,
    Q1Like,
    Neither,
}

impl OuterClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OuterClass::Q0Like => "Q0like",
            OuterClass::Q1Like => "Q1like",
            OuterClass::Neither => "neither",
        }
    }
}

impl fmt::Display for OuterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for OuterClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

// Relative-order permutations (row -> column, 0-based) of Q0 and Q1.
const Q0_ORDER: [usize; 4] = [1, 0, 3, 2];
const Q1_ORDER: [usize; 4] = [2, 0, 3, 1];

fn exact_outer_class(p: &Matrix) -> OuterClass {
    let (m, n) = p.dims();
    let mut outer: Vec<(usize, usize)> = p
        .ones()
        .filter(|&(i, j)| i == 0 || i == m - 1 || j == 0 || j == n - 1)
        .collect();
    if outer.len() != 4 {
        return OuterClass::Neither;
    }
    outer.sort_unstable();
    let mut cols: Vec<usize> = outer.iter().map(|&(_, j)| j).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.len() != 4 || outer.windows(2).any(|w| w[0].0 == w[1].0) {
        return OuterClass::Neither;
    }
    let order: Vec<usize> = outer.iter().map(|&(_, j)| cols.binary_search(&j).unwrap()).collect();
    if order == Q0_ORDER {
        OuterClass::Q0Like
    } else if order == Q1_ORDER {
        OuterClass::Q1Like
    } else {
        OuterClass::Neither
    }
}

/// Classifies the four outer 1-entries of a strict pattern. Returns the exact
/// class and the class up to row or column reflection.
pub fn outer_class(p: &Pattern) -> Result<(OuterClass, OuterClass)> {
    if p.has_empty_line() {
        return Err(Error::contract(
            "outer class is only defined for patterns without empty rows or columns",
        ));
    }
    Ok(outer_class_unchecked(p))
}

fn outer_class_unchecked(p: &Matrix) -> (OuterClass, OuterClass) {
    let exact = exact_outer_class(p);
    let up_to = [SymmetryOp::ReflectRows, SymmetryOp::ReflectCols]
        .into_iter()
        .fold(exact, |acc, op| {
            if acc == OuterClass::Neither {
                exact_outer_class(&p.apply(op))
            } else {
                acc
            }
        });
    (exact, up_to)
}

/// Two 1-entries forming the 2x2 anti-identity: `bottom` is strictly below
/// and strictly left of `top`. Coordinates are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AntiIdentityOccurrence {
    pub bottom: (usize, usize),
    pub top: (usize, usize),
    pub height: usize,
}

impl AntiIdentityOccurrence {
    /// Whether host row `row` lies strictly between the two entries.
    pub fn straddles(&self, row: usize) -> bool {
        self.top.0 < row && row < self.bottom.0
    }
}

impl Serialize for AntiIdentityOccurrence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            bottom: (usize, usize),
            top: (usize, usize),
            height: usize,
        }
        Record {
            bottom: (self.bottom.0 + 1, self.bottom.1 + 1),
            top: (self.top.0 + 1, self.top.1 + 1),
            height: self.height,
        }
        .serialize(serializer)
    }
}

/// All anti-identity occurrences whose height (rows spanned, inclusive) is at
/// least `min_height`. Every occurrence has height at least 2.
pub fn anti_identity_occurrences(m: &Matrix, min_height: usize) -> Vec<AntiIdentityOccurrence> {
    let ones: Vec<(usize, usize)> = m.ones().collect();
    let mut out = Vec::new();
    for &bottom in &ones {
        for &top in &ones {
            if bottom.0 > top.0 && bottom.1 < top.1 {
                let height = bottom.0 - top.0 + 1;
                if height >= min_height {
                    out.push(AntiIdentityOccurrence { bottom, top, height });
                }
            }
        }
    }
    out
}

pub fn max_anti_identity_height(m: &Matrix) -> usize {
    anti_identity_occurrences(m, 2)
        .iter()
        .map(|o| o.height)
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassLabel {
    pub is_permutation: bool,
    pub once_separable: bool,
    pub trivial: bool,
    pub outer_class: OuterClass,
    pub outer_class_up_to_reflection: OuterClass,
    pub max_anti_identity_height: usize,
}

impl ClassLabel {
    /// Patterns with empty rows or columns get outer class `neither`.
    pub fn of(p: &Pattern) -> ClassLabel {
        let (outer, up_to) = outer_class(p).unwrap_or((OuterClass::Neither, OuterClass::Neither));
        ClassLabel {
            is_permutation: is_permutation(p),
            once_separable: is_once_separable(p).is_some(),
            trivial: is_trivial(p),
            outer_class: outer,
            outer_class_up_to_reflection: up_to,
            max_anti_identity_height: max_anti_identity_height(p),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: [(&str, String); 6] = [
            ("isPermutation", self.is_permutation.to_string()),
            ("onceSeparable", self.once_separable.to_string()),
            ("trivial", self.trivial.to_string()),
            ("outerClass", self.outer_class.to_string()),
            (
                "outerClassUpToReflection",
                self.outer_class_up_to_reflection.to_string(),
            ),
            ("maxAntiIdentityHeight", self.max_anti_identity_height.to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (idx, (k, v)) in rows.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}
