//! Test-only oracles. Nothing here calls into the containment search.

#![allow(dead_code)]

use itertools::Itertools;
use patsat::{Matrix, Pattern};

/// All `p x q` submatrices of `host` induced by row and column subsets, as
/// row-major bit masks (bit `i * q + j`).
pub fn induced_submatrices(host: &Matrix, p: usize, q: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if p > host.rows() || q > host.cols() {
        return out;
    }
    for rows in (0..host.rows()).combinations(p) {
        for cols in (0..host.cols()).combinations(q) {
            let mut mask = 0u64;
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    if host.get(r, c) {
                        mask |= 1 << (a * q + b);
                    }
                }
            }
            out.push(mask);
        }
    }
    out
}

pub fn pattern_mask(p: &Matrix) -> u64 {
    let q = p.cols();
    p.ones().fold(0, |acc, (i, j)| acc | 1 << (i * q + j))
}

/// Subset-enumeration containment.
pub fn brute_contains(host: &Matrix, pattern: &Matrix) -> bool {
    let need = pattern_mask(pattern);
    induced_submatrices(host, pattern.rows(), pattern.cols())
        .into_iter()
        .any(|sub| sub & need == need)
}

pub fn brute_saturated(m: &Matrix, p: &Matrix) -> bool {
    if brute_contains(m, p) {
        return false;
    }
    (0..m.rows())
        .cartesian_product(0..m.cols())
        .filter(|&(i, j)| !m.get(i, j))
        .all(|(i, j)| {
            let mut f = m.clone();
            f.set(i, j, true);
            brute_contains(&f, p)
        })
}

/// Every `m x n` matrix, indexed by the row-major bit mask (bit `i * n + j`).
pub fn all_matrices(m: usize, n: usize) -> impl Iterator<Item = Matrix> {
    (0u64..1 << (m * n)).map(move |bits| {
        Matrix::from_ones(m, n, (0..m * n).filter(|b| bits >> b & 1 == 1).map(|b| (b / n, b % n))).unwrap()
    })
}

/// `(sat, ex)` over all `m x n` matrices.
pub fn brute_sat_ex(p: &Matrix, m: usize, n: usize) -> (usize, usize) {
    let mut sat = usize::MAX;
    let mut ex = 0;
    for mat in all_matrices(m, n) {
        if brute_contains(&mat, p) {
            continue;
        }
        ex = ex.max(mat.weight());
        if mat.weight() < sat && brute_saturated(&mat, p) {
            sat = mat.weight();
        }
    }
    (sat, ex)
}

pub fn pattern(text: &str) -> Pattern {
    Pattern::new(patsat::parse_matrix(text).unwrap()).unwrap()
}

/// 1-based coordinates to a matrix.
pub fn from_one_based(rows: usize, cols: usize, ones: &[(usize, usize)]) -> Matrix {
    Matrix::from_ones(rows, cols, ones.iter().map(|&(i, j)| (i - 1, j - 1))).unwrap()
}

pub fn perm_one_based(word: &[usize]) -> Pattern {
    let zero: Vec<usize> = word.iter().map(|c| c - 1).collect();
    Pattern::new(Matrix::from_permutation(&zero).unwrap()).unwrap()
}
