//! Pattern containment.
//!
//! The search assigns pattern columns to host columns left to right. After
//! each assignment the pattern rows are matched greedily to the earliest host
//! rows whose bit rows cover the already-assigned columns; greedy earliest
//! matching is exact for a fixed column map, and on a partial map it is a
//! relaxation, so a failure prunes the whole subtree. The first occurrence in
//! this order (lexicographically least column map, then earliest rows) is
//! returned.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Occurrence, Pattern};

/// Returns an occurrence of `pattern` in `host`, or `None` if `host` avoids it.
pub fn contains(host: &Matrix, pattern: &Pattern) -> Option<Occurrence> {
    Search::new(host, pattern, None).run()
}

pub fn avoids(host: &Matrix, pattern: &Pattern) -> bool {
    contains(host, pattern).is_none()
}

/// Returns an occurrence that maps some 1-entry of `pattern` onto the host
/// cell `(row, col)`, which must be a 1-entry.
pub fn contains_using(host: &Matrix, pattern: &Pattern, cell: (usize, usize)) -> Result<Option<Occurrence>> {
    let (r, c) = cell;
    if r >= host.rows() || c >= host.cols() {
        return Err(Error::contract(format!(
            "cell ({}, {}) outside {}x{} host",
            r + 1,
            c + 1,
            host.rows(),
            host.cols()
        )));
    }
    if !host.get(r, c) {
        return Err(Error::contract(format!(
            "host cell ({}, {}) is not a 1-entry",
            r + 1,
            c + 1
        )));
    }
    Ok(occurrence_through(host, pattern, cell))
}

pub(crate) fn occurrence_through(host: &Matrix, pattern: &Pattern, (r, c): (usize, usize)) -> Option<Occurrence> {
    pattern.ones().find_map(|(pi, pj)| {
        Search::new(
            host,
            pattern,
            Some(Forced {
                prow: pi,
                pcol: pj,
                hrow: r,
                hcol: c,
            }),
        )
        .run()
    })
}

/// Whether setting the 0-entry `cell` of `host` to 1 creates an occurrence
/// that uses it.
pub(crate) fn flip_creates_occurrence(host: &Matrix, pattern: &Pattern, (r, c): (usize, usize)) -> bool {
    let flipped = host.with_one(r, c);
    occurrence_through(&flipped, pattern, (r, c)).is_some()
}

#[derive(Clone, Copy)]
struct Forced {
    prow: usize,
    pcol: usize,
    hrow: usize,
    hcol: usize,
}

struct Search<'a> {
    host: &'a [u64],
    host_rows: usize,
    host_cols: usize,
    /// Pattern row `i` as a bitmask over pattern columns.
    pattern_rows: Vec<u64>,
    pattern_cols: usize,
    forced: Option<Forced>,
    col_map: Vec<usize>,
    row_map: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a Matrix, pattern: &Pattern, forced: Option<Forced>) -> Self {
        let pattern_rows = pattern.row_data().to_vec();
        Search {
            host: host.row_data(),
            host_rows: host.rows(),
            host_cols: host.cols(),
            pattern_rows,
            pattern_cols: pattern.cols(),
            forced,
            col_map: Vec::with_capacity(pattern.cols()),
            row_map: vec![0; pattern.rows()],
        }
    }

    fn run(mut self) -> Option<Occurrence> {
        if self.pattern_rows.len() > self.host_rows || self.pattern_cols > self.host_cols {
            return None;
        }
        if let Some(f) = self.forced {
            if f.prow > f.hrow
                || self.pattern_rows.len() - f.prow > self.host_rows - f.hrow
                || f.pcol > f.hcol
                || self.pattern_cols - f.pcol > self.host_cols - f.hcol
            {
                return None;
            }
        }
        if self.extend() {
            Some(Occurrence {
                rows: self.row_map,
                cols: self.col_map,
            })
        } else {
            None
        }
    }

    /// Column range allowed for the next pattern column.
    fn next_col_range(&self) -> (usize, usize) {
        let j = self.col_map.len();
        let lo = self.col_map.last().map_or(0, |&c| c + 1);
        let hi = self.host_cols - (self.pattern_cols - j);
        match self.forced {
            Some(f) if j == f.pcol => (f.hcol.max(lo), f.hcol.min(hi)),
            Some(f) if j < f.pcol => (lo, hi.min(f.hcol - (f.pcol - j))),
            _ => (lo, hi),
        }
    }

    fn extend(&mut self) -> bool {
        if self.col_map.len() == self.pattern_cols {
            return self.match_rows();
        }
        let (lo, hi) = self.next_col_range();
        for c in lo..=hi {
            self.col_map.push(c);
            if self.match_rows() && self.extend() {
                return true;
            }
            self.col_map.pop();
        }
        false
    }

    /// Greedily matches every pattern row against the assigned columns,
    /// filling `row_map`. Returns false if no row map exists.
    fn match_rows(&mut self) -> bool {
        let assigned = self.col_map.len();
        let assigned_mask = if assigned == 64 {
            u64::MAX
        } else {
            (1u64 << assigned) - 1
        };
        let k = self.pattern_rows.len();
        let mut next = 0;
        for i in 0..k {
            let mut need = 0u64;
            let mut bits = self.pattern_rows[i] & assigned_mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                need |= 1 << self.col_map[j];
            }
            let last = self.host_rows - (k - i);
            let found = match self.forced {
                Some(f) if i == f.prow => (f.hrow >= next && self.host[f.hrow] & need == need).then_some(f.hrow),
                Some(f) if i < f.prow => {
                    let bound = last.min(f.hrow - (f.prow - i));
                    (next..=bound).find(|&r| self.host[r] & need == need)
                }
                _ => (next..=last).find(|&r| self.host[r] & need == need),
            };
            match found {
                Some(r) => {
                    self.row_map[i] = r;
                    next = r + 1;
                }
                None => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix;

    fn pat(s: &str) -> Pattern {
        Pattern::new(parse_matrix(s).unwrap()).unwrap()
    }

    #[test]
    fn q1_contains_itself_with_identity_maps() {
        let q1 = pat("..1.\n1...\n...1\n.1..");
        let occ = contains(&q1, &q1).unwrap();
        assert_eq!(occ.rows, vec![0, 1, 2, 3]);
        assert_eq!(occ.cols, vec![0, 1, 2, 3]);
        let occ = contains_using(&q1, &q1, (0, 2)).unwrap().unwrap();
        assert_eq!(occ.rows, vec![0, 1, 2, 3]);
    }

    #[test]
    fn simple_cases() {
        let id2 = pat("1.\n.1");
        let anti = pat(".1\n1.");
        let m = parse_matrix("1..\n...\n..1").unwrap();
        let occ = contains(&m, &id2).unwrap();
        assert_eq!((occ.rows, occ.cols), (vec![0, 2], vec![0, 2]));
        assert!(contains(&m, &anti).is_none());
        // pattern larger than host
        assert!(contains(&parse_matrix("11").unwrap(), &id2).is_none());
    }

    #[test]
    fn forced_cell_must_be_used() {
        let p = pat("11");
        let m = parse_matrix("11.1").unwrap();
        let occ = contains_using(&m, &p, (0, 3)).unwrap().unwrap();
        assert_eq!(occ.cols, vec![0, 3]);
        // the first pattern entry is tried first, so (0, 1) plays its role
        let occ = contains_using(&m, &p, (0, 1)).unwrap().unwrap();
        assert_eq!(occ.cols, vec![1, 3]);
        // Diagonal pattern cannot use a cell in the first row and last column.
        let id2 = pat("1.\n.1");
        let m = parse_matrix("1.1\n.1.").unwrap();
        assert!(contains(&m, &id2).is_some());
        assert!(contains_using(&m, &id2, (0, 2)).unwrap().is_none());
    }

    #[test]
    fn contains_using_rejects_zero_cell() {
        let q1 = pat("..1.\n1...\n...1\n.1..");
        assert!(matches!(contains_using(&q1, &q1, (0, 0)), Err(Error::Contract(_))));
        assert!(matches!(contains_using(&q1, &q1, (9, 0)), Err(Error::Contract(_))));
    }

    #[test]
    fn empty_pattern_lines_match_anything() {
        let p = Pattern::new(parse_matrix("1.\n..\n.1").unwrap()).unwrap();
        let m = parse_matrix("1..\n...\n..1").unwrap();
        let occ = contains(&m, &p).unwrap();
        assert!(occ.is_valid(&m, &p));
        assert!(contains(&parse_matrix("1.\n.1").unwrap(), &p).is_none());
    }
}
