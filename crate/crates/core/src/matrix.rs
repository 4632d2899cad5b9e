//! Dense 0-1 matrices, patterns, occurrences and the symmetry action.
//!
//! Each row is packed into a single `u64` with bit `j` holding column `j`, so
//! matrices are limited to [`MAX_COLS`] columns. All indices in this API are
//! 0-based; the text format, `Display` impls and serialized records are
//! 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_COLS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::contract(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if cols > MAX_COLS {
            return Err(Error::contract(format!(
                "at most {MAX_COLS} columns are supported, got {cols}"
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    /// Builds a matrix from 0-based 1-entry positions.
    pub fn from_ones<I>(rows: usize, cols: usize, ones: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Matrix::zeros(rows, cols)?;
        for (i, j) in ones {
            if i >= rows || j >= cols {
                return Err(Error::contract(format!(
                    "entry ({}, {}) outside {rows}x{cols} matrix",
                    i + 1,
                    j + 1
                )));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }

    /// Permutation matrix with a 1 at `(i, perm[i])` (0-based).
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::contract(format!("{perm:?} is not a permutation")));
            }
        }
        Matrix::from_ones(k, k, perm.iter().copied().enumerate())
    }

    pub(crate) fn from_row_bits(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|&r| cols == 64 || r >> cols == 0));
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i] >> j & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "cell out of range");
        if value {
            self.data[i] |= 1 << j;
        } else {
            self.data[i] &= !(1 << j);
        }
    }

    /// Copy of `self` with `(i, j)` set to 1.
    pub fn with_one(&self, i: usize, j: usize) -> Matrix {
        let mut m = self.clone();
        m.set(i, j, true);
        m
    }

    /// Bitmask of the 1-entries in row `i` (bit `j` = column `j`).
    #[inline]
    pub fn row_bits(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub(crate) fn row_data(&self) -> &[u64] {
        &self.data
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.data[i].count_ones() as usize
    }

    pub fn col_weight(&self, j: usize) -> usize {
        self.data.iter().filter(|&&r| r >> j & 1 == 1).count()
    }

    pub fn is_row_empty(&self, i: usize) -> bool {
        self.data[i] == 0
    }

    pub fn is_col_empty(&self, j: usize) -> bool {
        self.col_weight(j) == 0
    }

    /// Rows of the 1-entries in column `j`, top to bottom.
    pub fn col_ones(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    /// Columns of the 1-entries in row `i`, left to right.
    pub fn row_ones(&self, i: usize) -> Vec<usize> {
        (0..self.cols).filter(|&j| self.get(i, j)).collect()
    }

    /// All 1-entries in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let mut bits = self.data[i];
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some((i, j))
            })
        })
    }

    /// All 0-entries in row-major order.
    pub fn zeros_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).filter(move |&j| !self.get(i, j)).map(move |j| (i, j)))
    }

    pub fn has_empty_line(&self) -> bool {
        (0..self.rows).any(|i| self.is_row_empty(i)) || (0..self.cols).any(|j| self.is_col_empty(j))
    }

    /// `self` followed by `count` empty rows.
    pub fn append_rows(&self, count: usize) -> Matrix {
        let mut data = self.data.clone();
        data.extend(std::iter::repeat_n(0, count));
        Matrix::from_row_bits(self.rows + count, self.cols, data)
    }

    /// `self` followed by `count` empty columns on the right.
    pub fn append_cols(&self, count: usize) -> Result<Matrix> {
        if self.cols + count > MAX_COLS {
            return Err(Error::contract(format!(
                "at most {MAX_COLS} columns are supported, got {}",
                self.cols + count
            )));
        }
        Ok(Matrix::from_row_bits(self.rows, self.cols + count, self.data.clone()))
    }

    /// Copies the 1-entries of `block` into `self` with its top-left corner at
    /// `(row, col)`.
    pub fn paste(&mut self, block: &Matrix, row: usize, col: usize) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for (i, &bits) in block.data.iter().enumerate() {
            self.data[row + i] |= bits << col;
        }
    }

    pub fn apply(&self, op: SymmetryOp) -> Matrix {
        let (m, n) = (self.rows, self.cols);
        let (rows, cols) = match op {
            SymmetryOp::Identity | SymmetryOp::Rotate180 | SymmetryOp::ReflectRows | SymmetryOp::ReflectCols => (m, n),
            _ => (n, m),
        };
        let mut out = vec![0u64; rows];
        for (i, j) in self.ones() {
            let (a, b) = match op {
                SymmetryOp::Identity => (i, j),
                SymmetryOp::Rotate90Cw => (j, m - 1 - i),
                SymmetryOp::Rotate90Ccw => (n - 1 - j, i),
                SymmetryOp::Rotate180 => (m - 1 - i, n - 1 - j),
                SymmetryOp::Transpose => (j, i),
                SymmetryOp::AntiTranspose => (n - 1 - j, m - 1 - i),
                SymmetryOp::ReflectRows => (m - 1 - i, j),
                SymmetryOp::ReflectCols => (i, n - 1 - j),
            };
            out[a] |= 1 << b;
        }
        // Transposed shapes may exceed the column limit.
        assert!(cols <= MAX_COLS, "transformed matrix has {cols} columns");
        Matrix::from_row_bits(rows, cols, out)
    }

    /// Rows rendered in the text format, one string per row.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '.' }).collect())
            .collect()
    }
}

/// Orders by dimensions, then by the row-major bit sequence with 0 < 1.
impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols).cmp(&(other.rows, other.cols)).then_with(|| {
            self.data
                .iter()
                .map(|r| r.reverse_bits())
                .cmp(other.data.iter().map(|r| r.reverse_bits()))
        })
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut first_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut bits = 0u64;
        let mut len = 0;
        for (pos, ch) in line.chars().enumerate() {
            let one = match ch {
                '.' | '0' => false,
                '1' | 'X' => true,
                other => {
                    return Err(Error::Format {
                        line: line_no,
                        column: Some(pos + 1),
                        message: format!("illegal character {other:?}"),
                    })
                }
            };
            if pos >= MAX_COLS {
                return Err(Error::Format {
                    line: line_no,
                    column: Some(pos + 1),
                    message: format!("rows longer than {MAX_COLS} cells are not supported"),
                });
            }
            if one {
                bits |= 1 << pos;
            }
            len += 1;
        }
        match cols {
            None => {
                cols = Some(len);
                first_line = line_no;
            }
            Some(c) if c != len => {
                return Err(Error::Format {
                    line: line_no,
                    column: None,
                    message: format!("row has {len} cells but line {first_line} has {c}"),
                })
            }
            _ => {}
        }
        data.push(bits);
    }
    match cols {
        None => Err(Error::Format {
            line: text.lines().count().max(1),
            column: None,
            message: "no matrix rows found".into(),
        }),
        Some(cols) => Ok(Matrix::from_row_bits(data.len(), cols, data)),
    }
}

pub fn format_matrix(m: &Matrix) -> String {
    m.row_strings().join("\n")
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&format_matrix(self))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(serializer)
    }
}

/// A matrix that is not all-zero. `strict` patterns additionally have no
/// empty rows or columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    matrix: Matrix,
    strict: bool,
}

impl Pattern {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.is_zero() {
            return Err(Error::contract("a pattern must contain at least one 1-entry"));
        }
        let strict = !matrix.has_empty_line();
        Ok(Pattern { matrix, strict })
    }

    /// Like [`Pattern::new`] but rejects empty rows and columns.
    pub fn strict(matrix: Matrix) -> Result<Self> {
        let p = Pattern::new(matrix)?;
        if !p.strict {
            return Err(Error::contract("pattern has an empty row or column"));
        }
        Ok(p)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn apply(&self, op: SymmetryOp) -> Pattern {
        Pattern {
            matrix: self.matrix.apply(op),
            strict: self.strict,
        }
    }
}

impl Deref for Pattern {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.matrix
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// An embedding of a pattern into a host: `rows[i]` is the host row of
/// pattern row `i`, `cols[j]` the host column of pattern column `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Occurrence {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Occurrence {
    /// Checks the occurrence against `host` and `pattern` from scratch.
    pub fn is_valid(&self, host: &Matrix, pattern: &Matrix) -> bool {
        self.rows.len() == pattern.rows()
            && self.cols.len() == pattern.cols()
            && self.rows.windows(2).all(|w| w[0] < w[1])
            && self.cols.windows(2).all(|w| w[0] < w[1])
            && self.rows.last().is_some_and(|&r| r < host.rows())
            && self.cols.last().is_some_and(|&c| c < host.cols())
            && pattern.ones().all(|(i, j)| host.get(self.rows[i], self.cols[j]))
    }

    /// Host cells hit by the pattern's 1-entries.
    pub fn image(&self, pattern: &Matrix) -> Vec<(usize, usize)> {
        pattern.ones().map(|(i, j)| (self.rows[i], self.cols[j])).collect()
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "rows [{}] cols [{}]", join(&self.rows), join(&self.cols))
    }
}

impl Serialize for Occurrence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            rows: Vec<usize>,
            cols: Vec<usize>,
        }
        Record {
            rows: self.rows.iter().map(|x| x + 1).collect(),
            cols: self.cols.iter().map(|x| x + 1).collect(),
        }
        .serialize(serializer)
    }
}

/// Geometric symmetries of the rectangular grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SymmetryOp {
    Identity,
    Rotate90Cw,
    Rotate90Ccw,
    Rotate180,
    /// Swap rows and columns (inversion, for permutation matrices).
    Transpose,
    /// Reflection in the anti-diagonal.
    AntiTranspose,
    /// Reverse the order of the rows.
    ReflectRows,
    /// Reverse the order of the columns.
    ReflectCols,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 8] = [
        SymmetryOp::Identity,
        SymmetryOp::Rotate90Cw,
        SymmetryOp::Rotate90Ccw,
        SymmetryOp::Rotate180,
        SymmetryOp::Transpose,
        SymmetryOp::AntiTranspose,
        SymmetryOp::ReflectRows,
        SymmetryOp::ReflectCols,
    ];

    pub fn inverse(self) -> SymmetryOp {
        match self {
            SymmetryOp::Rotate90Cw => SymmetryOp::Rotate90Ccw,
            SymmetryOp::Rotate90Ccw => SymmetryOp::Rotate90Cw,
            other => other,
        }
    }

    /// Whether the op swaps the row and column dimensions.
    pub fn swaps_dims(self) -> bool {
        matches!(
            self,
            SymmetryOp::Rotate90Cw | SymmetryOp::Rotate90Ccw | SymmetryOp::Transpose | SymmetryOp::AntiTranspose
        )
    }
}

pub fn apply_symmetry(m: &Matrix, op: SymmetryOp) -> Matrix {
    m.apply(op)
}
