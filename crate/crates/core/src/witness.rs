//! Witnesses: the two-copy construction `W(P)`, expandable rows and columns,
//! witness verification, greedy saturation, block composition and empty-line
//! extension.
//!
//! A row (column) is expandable for `P` when it is empty and putting a 1
//! anywhere in it creates a new occurrence of `P`. A vertical (horizontal)
//! witness avoids `P` and has an expandable row (column); a full witness has
//! both, and an explicit witness is a saturated full witness. Operations that
//! build witnesses re-verify their output instead of trusting the
//! construction.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::classify::is_once_separable;
use crate::contain::{contains, flip_creates_occurrence};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Pattern, SymmetryOp};
use crate::search::is_saturated;

/// Output of [`construct_w`]. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WConstruction {
    /// The pattern the construction was applied to: the input, or its row
    /// reflection when the input had `s > t`.
    pub pattern: Pattern,
    /// Row of the unique 1-entry in the first column of `pattern`.
    pub s: usize,
    /// Row of the unique 1-entry in the last column of `pattern`.
    pub t: usize,
    pub k: usize,
    /// `W(pattern)`, of size `(k + t - s) x (2k - 2)`.
    pub result: Matrix,
    /// `Some(t)` when row `t` of `result` is empty, which holds for
    /// non-trivial patterns.
    pub empty_row: Option<usize>,
    pub reflected: bool,
}

impl WConstruction {
    /// `result` mapped back to the orientation of the input pattern.
    pub fn result_for_input(&self) -> Matrix {
        if self.reflected {
            self.result.apply(SymmetryOp::ReflectRows)
        } else {
            self.result.clone()
        }
    }
}

impl Serialize for WConstruction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Record<'a> {
            k: usize,
            s: usize,
            t: usize,
            reflected: bool,
            empty_row: Option<usize>,
            dims: (usize, usize),
            matrix: &'a Matrix,
        }
        Record {
            k: self.k,
            s: self.s + 1,
            t: self.t + 1,
            reflected: self.reflected,
            empty_row: self.empty_row.map(|r| r + 1),
            dims: self.result.dims(),
            matrix: &self.result,
        }
        .serialize(serializer)
    }
}

/// Overlaps two copies of a square pattern so that the last-column entry of
/// the first copy and the first-column entry of the second copy meet, then
/// deletes that shared column.
///
/// With `d = t - s`, entry `(i, j)` of the result is `p[i][j]` for `j < k - 1`
/// and `i < k`, `p[i - d][j - (k - 2)]` for `j >= k - 1` and `i >= d`, and 0
/// otherwise.
pub fn construct_w(p: &Pattern) -> Result<WConstruction> {
    let k = p.rows();
    if p.cols() != k {
        return Err(Error::contract(format!(
            "W(P) needs a square pattern, got {}x{}",
            k,
            p.cols()
        )));
    }
    if k < 2 {
        return Err(Error::contract("W(P) needs a pattern of size at least 2"));
    }
    let single = |j: usize, side: &str| -> Result<usize> {
        match p.col_ones(j).as_slice() {
            [r] => Ok(*r),
            ones => Err(Error::contract(format!(
                "W(P) needs exactly one 1-entry in the {side} column, found {}",
                ones.len()
            ))),
        }
    };
    let s = single(0, "first")?;
    let t = single(k - 1, "last")?;
    if s == t {
        return Err(Error::contract("first- and last-column entries share a row"));
    }
    let (pattern, s, t, reflected) = if s > t {
        (p.apply(SymmetryOp::ReflectRows), k - 1 - s, k - 1 - t, true)
    } else {
        (p.clone(), s, t, false)
    };
    let d = t - s;
    let (rows, cols) = (k + d, 2 * k - 2);
    let mut result = Matrix::zeros(rows, cols)?;
    for i in 0..rows {
        for j in 0..cols {
            let one = if j < k - 1 {
                i < k && pattern.get(i, j)
            } else {
                i >= d && pattern.get(i - d, j - (k - 2))
            };
            if one {
                result.set(i, j, true);
            }
        }
    }
    let empty_row = result.is_row_empty(t).then_some(t);
    Ok(WConstruction {
        pattern,
        s,
        t,
        k,
        result,
        empty_row,
        reflected,
    })
}

pub fn expandable_rows(m: &Matrix, p: &Pattern) -> Vec<usize> {
    (0..m.rows())
        .filter(|&i| m.is_row_empty(i) && (0..m.cols()).all(|j| flip_creates_occurrence(m, p, (i, j))))
        .collect()
}

pub fn expandable_cols(m: &Matrix, p: &Pattern) -> Vec<usize> {
    (0..m.cols())
        .filter(|&j| m.is_col_empty(j) && (0..m.rows()).all(|i| flip_creates_occurrence(m, p, (i, j))))
        .collect()
}

/// Verification verdict for a candidate witness. Indices are 0-based; the
/// serialized form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub avoids_pattern: bool,
    pub expandable_rows: Vec<usize>,
    pub expandable_cols: Vec<usize>,
    pub is_vertical: bool,
    pub is_horizontal: bool,
    pub is_full: bool,
    pub is_explicit: bool,
    pub pattern_dims: (usize, usize),
    pub witness_dims: (usize, usize),
}

pub fn verify(m: &Matrix, p: &Pattern) -> WitnessReport {
    let avoids_pattern = contains(m, p).is_none();
    let expandable_rows = expandable_rows(m, p);
    let expandable_cols = expandable_cols(m, p);
    let is_vertical = avoids_pattern && !expandable_rows.is_empty();
    let is_horizontal = avoids_pattern && !expandable_cols.is_empty();
    let is_full = is_vertical && is_horizontal;
    let is_explicit = is_full && is_saturated(m, p);
    WitnessReport {
        avoids_pattern,
        expandable_rows,
        expandable_cols,
        is_vertical,
        is_horizontal,
        is_full,
        is_explicit,
        pattern_dims: p.dims(),
        witness_dims: m.dims(),
    }
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Record {
            avoids_pattern: bool,
            expandable_rows: Vec<usize>,
            expandable_cols: Vec<usize>,
            is_vertical: bool,
            is_horizontal: bool,
            is_full: bool,
            is_explicit: bool,
            pattern_dims: (usize, usize),
            witness_dims: (usize, usize),
        }
        Record {
            avoids_pattern: self.avoids_pattern,
            expandable_rows: self.expandable_rows.iter().map(|x| x + 1).collect(),
            expandable_cols: self.expandable_cols.iter().map(|x| x + 1).collect(),
            is_vertical: self.is_vertical,
            is_horizontal: self.is_horizontal,
            is_full: self.is_full,
            is_explicit: self.is_explicit,
            pattern_dims: self.pattern_dims,
            witness_dims: self.witness_dims,
        }
        .serialize(serializer)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let dims = |(a, b): (usize, usize)| format!("{a}x{b}");
        let rows = [
            ("avoidsPattern", self.avoids_pattern.to_string()),
            ("expandableRows", list(&self.expandable_rows)),
            ("expandableCols", list(&self.expandable_cols)),
            ("isVertical", self.is_vertical.to_string()),
            ("isHorizontal", self.is_horizontal.to_string()),
            ("isFull", self.is_full.to_string()),
            ("isExplicit", self.is_explicit.to_string()),
            ("patternDims", dims(self.pattern_dims)),
            ("witnessDims", dims(self.witness_dims)),
        ];
        for (idx, (k, v)) in rows.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "{k:<14}  {v}")?;
        }
        Ok(())
    }
}

/// Greedily adds 1-entries in one row-major pass, keeping each one that does
/// not create an occurrence of `p`. Adding 1s only creates occurrences, so a
/// cell rejected once stays rejected and the result is saturated.
pub fn saturate(m: &Matrix, p: &Pattern) -> Result<Matrix> {
    if let Some(occ) = contains(m, p) {
        return Err(Error::contract(format!(
            "cannot saturate a matrix that contains the pattern at {occ}"
        )));
    }
    let mut out = m.clone();
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            if !out.get(i, j) && !flip_creates_occurrence(&out, p, (i, j)) {
                out.set(i, j, true);
            }
        }
    }
    Ok(out)
}

fn single_one_in_last_row(p: &Matrix) -> bool {
    p.row_weight(p.rows() - 1) == 1
}

fn single_one_in_last_col(p: &Matrix) -> bool {
    p.col_weight(p.cols() - 1) == 1
}

/// Places a horizontal witness top-right and a vertical witness bottom-left:
///
/// ```text
/// ( 0    W_H )
/// ( W_V  0   )
/// ```
///
/// The result is re-verified as a full witness.
pub fn compose(horizontal: &Matrix, vertical: &Matrix, p: &Pattern) -> Result<Matrix> {
    if p.has_empty_line() {
        return Err(Error::contract("compose needs a pattern without empty rows or columns"));
    }
    if let Some(split) = is_once_separable(p) {
        return Err(Error::contract(format!(
            "compose needs a pattern that is not once-separable (splits after {} rows, {} cols)",
            split.rows_top, split.cols_left
        )));
    }
    if !single_one_in_last_row(p) || !single_one_in_last_col(p) {
        return Err(Error::contract(
            "compose needs exactly one 1-entry in the last row and in the last column of the pattern",
        ));
    }
    if !verify(horizontal, p).is_horizontal {
        return Err(Error::contract("first matrix is not a horizontal witness"));
    }
    if !verify(vertical, p).is_vertical {
        return Err(Error::contract("second matrix is not a vertical witness"));
    }
    let (m0, n1) = horizontal.dims();
    let (m1, n0) = vertical.dims();
    let mut out = Matrix::zeros(m0 + m1, n0 + n1)?;
    out.paste(horizontal, 0, n0);
    out.paste(vertical, m0, 0);
    if let Some(occ) = contains(&out, p) {
        return Err(Error::Witness {
            message: "composed matrix contains the pattern".into(),
            occurrence: Some(occ),
        });
    }
    let report = verify(&out, p);
    if !report.is_full {
        return Err(Error::Witness {
            message: format!(
                "composed matrix has expandable rows {:?} and columns {:?}",
                report.expandable_rows, report.expandable_cols
            ),
            occurrence: None,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Right,
}

/// Appends `count` empty rows below a horizontal witness (`Side::Bottom`) or
/// `count` empty columns right of a vertical witness (`Side::Right`). The
/// witness class and its expandable lines are re-verified.
pub fn extend(w: &Matrix, p: &Pattern, side: Side, count: usize) -> Result<Matrix> {
    if count == 0 {
        return Err(Error::contract("extend needs a positive count"));
    }
    if p.has_empty_line() {
        return Err(Error::contract("extend needs a pattern without empty rows or columns"));
    }
    let before = verify(w, p);
    let out = match side {
        Side::Bottom => {
            if !single_one_in_last_row(p) {
                return Err(Error::contract(
                    "extending downwards needs exactly one 1-entry in the last row",
                ));
            }
            if !before.is_horizontal {
                return Err(Error::contract("matrix is not a horizontal witness"));
            }
            w.append_rows(count)
        }
        Side::Right => {
            if !single_one_in_last_col(p) {
                return Err(Error::contract(
                    "extending rightwards needs exactly one 1-entry in the last column",
                ));
            }
            if !before.is_vertical {
                return Err(Error::contract("matrix is not a vertical witness"));
            }
            w.append_cols(count)?
        }
    };
    let after = verify(&out, p);
    let preserved = match side {
        Side::Bottom => after.is_horizontal && after.expandable_cols == before.expandable_cols,
        Side::Right => after.is_vertical && after.expandable_rows == before.expandable_rows,
    };
    if !preserved {
        return Err(Error::Witness {
            message: format!("extended matrix lost its witness class ({side:?})"),
            occurrence: contains(&out, p),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix;

    fn q1() -> Pattern {
        Pattern::new(Matrix::from_permutation(&[2, 0, 3, 1]).unwrap()).unwrap()
    }

    #[test]
    fn w_of_q1() {
        let w = construct_w(&q1()).unwrap();
        assert_eq!((w.k, w.s, w.t, w.reflected), (4, 1, 2, false));
        let expected = Matrix::from_ones(5, 6, [(0, 2), (1, 0), (1, 4), (3, 1), (3, 5), (4, 3)]).unwrap();
        assert_eq!(w.result, expected);
        assert_eq!(w.empty_row, Some(2));
        assert_eq!(expandable_rows(&w.result, &q1()), vec![2]);
        assert!(expandable_rows(&q1(), &q1()).is_empty());
    }

    #[test]
    fn w_reflects_when_leftmost_entry_is_lower() {
        // 2x2 anti-identity: s = 1, t = 0
        let anti = Pattern::new(parse_matrix(".1\n1.").unwrap()).unwrap();
        let w = construct_w(&anti).unwrap();
        assert!(w.reflected);
        assert_eq!((w.s, w.t), (0, 1));
        assert_eq!(w.result, parse_matrix("1.\n..\n.1").unwrap());
        assert_eq!(w.result_for_input(), parse_matrix(".1\n..\n1.").unwrap());
    }

    #[test]
    fn w_preconditions() {
        let bad = |s: &str| construct_w(&Pattern::new(parse_matrix(s).unwrap()).unwrap());
        assert!(matches!(bad("1.1\n.1."), Err(Error::Contract(_))));
        assert!(matches!(bad("1"), Err(Error::Contract(_))));
        assert!(matches!(bad("1.\n1."), Err(Error::Contract(_))));
        assert!(matches!(bad("11\n.."), Err(Error::Contract(_))));
        assert!(matches!(bad("1..\n1.1\n.1."), Err(Error::Contract(_))));
    }

    #[test]
    fn saturate_single_cell_pattern_keeps_zero_grid() {
        let one = Pattern::new(parse_matrix("1").unwrap()).unwrap();
        let z = Matrix::zeros(3, 4).unwrap();
        assert_eq!(saturate(&z, &one).unwrap(), z);
        assert!(matches!(
            saturate(&parse_matrix("1").unwrap(), &one),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn saturate_is_idempotent_on_q1_witness() {
        let w = construct_w(&q1()).unwrap().result;
        let s = saturate(&w, &q1()).unwrap();
        assert_eq!(saturate(&s, &q1()).unwrap(), s);
        assert!(is_saturated(&s, &q1()));
        assert_eq!(expandable_rows(&s, &q1()), vec![2]);
    }

    #[test]
    fn compose_rejects_bad_inputs() {
        let w = construct_w(&q1()).unwrap().result;
        // W(Q1) has no expandable column, so it is not a horizontal witness
        assert!(matches!(compose(&w, &w, &q1()), Err(Error::Contract(_))));
        let sep = Pattern::new(parse_matrix("1.\n.1").unwrap()).unwrap();
        let wh = w.apply(SymmetryOp::Rotate90Ccw);
        assert!(matches!(compose(&wh, &w, &sep), Err(Error::Contract(_))));
        // a horizontal "witness" that contains Q1
        let bad_h = q1().matrix().append_cols(1).unwrap();
        assert!(matches!(compose(&bad_h, &w, &q1()), Err(Error::Contract(_))));
    }

    #[test]
    fn extend_rules() {
        let wv = construct_w(&q1()).unwrap().result;
        let wh = wv.apply(SymmetryOp::Rotate90Ccw);
        let out = extend(&wh, &q1(), Side::Bottom, 5).unwrap();
        assert_eq!(out.dims(), (11, 5));
        assert!(verify(&out, &q1()).is_horizontal);
        let out = extend(&wv, &q1(), Side::Right, 2).unwrap();
        assert_eq!(out.dims(), (5, 8));
        assert!(matches!(extend(&wh, &q1(), Side::Bottom, 0), Err(Error::Contract(_))));
        assert!(matches!(extend(&wv, &q1(), Side::Bottom, 1), Err(Error::Contract(_))));
    }

    #[test]
    fn report_serializes_one_based() {
        let w = construct_w(&q1()).unwrap().result;
        let report = verify(&w, &q1());
        assert!(report.is_vertical && !report.is_horizontal);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["expandableRows"], serde_json::json!([3]));
        assert_eq!(json["isVertical"], true);
        assert!(report.to_string().contains("expandableRows  3"));
    }
}
