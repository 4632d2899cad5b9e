//! Exhaustive ground truth on small grids: saturation checks, exact `sat` and
//! `ex`, permutation enumeration and canonical forms under symmetry groups.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::contain::{avoids, flip_creates_occurrence};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Pattern, SymmetryOp};

/// Whether `m` avoids `p` and turning any 0-entry into a 1 creates an
/// occurrence.
pub fn is_saturated(m: &Matrix, p: &Pattern) -> bool {
    avoids(m, p) && m.zeros_iter().all(|cell| flip_creates_occurrence(m, p, cell))
}

/// The largest grid, in cells, the exhaustive searches accept.
pub const CELL_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_cells: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_cells: 20,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    fn check(&self, m: usize, n: usize) -> Result<()> {
        if self.max_cells == 0 {
            return Err(Error::contract("max_cells must be at least 1"));
        }
        if m == 0 || n == 0 {
            return Err(Error::contract("grid dimensions must be positive"));
        }
        let cells = m.saturating_mul(n);
        if cells > self.max_cells || cells > CELL_LIMIT {
            return Err(Error::Budget {
                message: format!(
                    "{m}x{n} grid has {cells} cells, limit is {}",
                    self.max_cells.min(CELL_LIMIT)
                ),
                partial_bound: None,
            });
        }
        Ok(())
    }
}

/// An exact extremal value together with the lexicographically least
/// matrix attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremum {
    pub value: usize,
    pub matrix: Matrix,
}

struct Deadline(Option<Instant>);

impl Deadline {
    fn new(budget: &SearchBudget) -> Self {
        Deadline(budget.time_limit.map(|d| Instant::now() + d))
    }

    fn passed(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

/// Cell `pos` in row-major order; bit `cells - 1 - pos` of the sort key, so
/// that comparing keys numerically is the row-major order with 0 < 1.
fn matrix_from_cells(m: usize, n: usize, cells: &[usize]) -> Matrix {
    let mut data = vec![0u64; m];
    for &pos in cells {
        data[pos / n] |= 1 << (pos % n);
    }
    Matrix::from_row_bits(m, n, data)
}

/// Minimum weight of an `m x n` matrix saturated for `p`.
///
/// Weights are tried in increasing order; every weight-`w` matrix is
/// enumerated, sharded by its first 1-entry.
pub fn sat_exact(p: &Pattern, m: usize, n: usize, budget: &SearchBudget) -> Result<Extremum> {
    budget.check(m, n)?;
    let deadline = Deadline::new(budget);
    let cells = m * n;
    for w in 0..=cells {
        let timed_out = AtomicBool::new(false);
        let found: Option<Matrix> = if w == 0 {
            let z = Matrix::zeros(m, n)?;
            is_saturated(&z, p).then_some(z)
        } else {
            (0..=cells - w)
                .into_par_iter()
                .filter_map(|first| {
                    let mut best: Option<Matrix> = None;
                    for (count, rest) in (first + 1..cells).combinations(w - 1).enumerate() {
                        if count % 256 == 0 && (timed_out.load(Ordering::Relaxed) || deadline.passed()) {
                            timed_out.store(true, Ordering::Relaxed);
                            return None;
                        }
                        let mut chosen = Vec::with_capacity(w);
                        chosen.push(first);
                        chosen.extend(rest);
                        let cand = matrix_from_cells(m, n, &chosen);
                        if best.as_ref().is_some_and(|b| &cand >= b) {
                            continue;
                        }
                        if is_saturated(&cand, p) {
                            best = Some(cand);
                        }
                    }
                    best
                })
                .min()
        };
        if timed_out.load(Ordering::Relaxed) {
            return Err(Error::Budget {
                message: format!("time limit reached while testing weight {w}"),
                partial_bound: Some(w),
            });
        }
        if let Some(matrix) = found {
            return Ok(Extremum { value: w, matrix });
        }
    }
    // The all-ones matrix is saturated whenever it avoids p, and otherwise some
    // smaller avoiding matrix can be filled up to a saturated one.
    unreachable!("every grid has a saturated matrix")
}

/// Maximum weight of an `m x n` matrix avoiding `p`.
///
/// Depth-first over cells in row-major order, trying 0 before 1, so the first
/// matrix reaching the final optimum is the lexicographically least one. The
/// incumbent is seeded with the greedy row-major saturation of the zero grid.
pub fn ex_exact(p: &Pattern, m: usize, n: usize, budget: &SearchBudget) -> Result<Extremum> {
    budget.check(m, n)?;
    let deadline = Deadline::new(budget);
    let seed = crate::witness::saturate(&Matrix::zeros(m, n)?, p)?;
    let mut state = ExSearch {
        pattern: p,
        n,
        cells: m * n,
        current: Matrix::zeros(m, n)?,
        weight: 0,
        // ties with the seed must still be explored for the least matrix
        threshold: seed.weight(),
        best: None,
        deadline,
        nodes: 0,
        timed_out: false,
    };
    state.dfs(0);
    if state.timed_out {
        let bound = state.best.as_ref().map_or(seed.weight(), |b| b.weight());
        return Err(Error::Budget {
            message: "time limit reached during branch and bound".into(),
            partial_bound: Some(bound),
        });
    }
    let matrix = state.best.expect("the seed weight is always attainable");
    Ok(Extremum {
        value: matrix.weight(),
        matrix,
    })
}

struct ExSearch<'a> {
    pattern: &'a Pattern,
    n: usize,
    cells: usize,
    current: Matrix,
    weight: usize,
    /// Leaves below this weight are not recorded.
    threshold: usize,
    best: Option<Matrix>,
    deadline: Deadline,
    nodes: u64,
    timed_out: bool,
}

impl ExSearch<'_> {
    fn dfs(&mut self, pos: usize) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.passed() {
            self.timed_out = true;
            return;
        }
        if self.weight + (self.cells - pos) < self.threshold {
            return;
        }
        if pos == self.cells {
            self.best = Some(self.current.clone());
            self.threshold = self.weight + 1;
            return;
        }
        let (i, j) = (pos / self.n, pos % self.n);
        self.dfs(pos + 1);
        if self.weight + (self.cells - pos) < self.threshold {
            return;
        }
        if !flip_creates_occurrence(&self.current, self.pattern, (i, j)) {
            self.current.set(i, j, true);
            self.weight += 1;
            self.dfs(pos + 1);
            self.weight -= 1;
            self.current.set(i, j, false);
        }
    }
}

/// Maximum permutation size accepted by [`permutation_matrices`].
pub const MAX_PERMUTATION_SIZE: usize = 8;

/// All `k x k` permutation matrices in lexicographic order of the
/// permutation (row `i` has its 1 in column `perm[i]`).
pub fn permutation_matrices(k: usize) -> Result<impl Iterator<Item = Pattern>> {
    if k == 0 || k > MAX_PERMUTATION_SIZE {
        return Err(Error::contract(format!(
            "permutation size must be in 1..={MAX_PERMUTATION_SIZE}, got {k}"
        )));
    }
    Ok((0..k)
        .permutations(k)
        .map(|perm| Pattern::new(Matrix::from_permutation(&perm).expect("valid permutation")).expect("non-zero")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryGroup {
    /// Identity only.
    Trivial,
    /// Identity, row reflection, column reflection and the half turn.
    ReflectionsOnly,
    /// The dihedral group of the square (all eight ops).
    RotationsAndReflections,
    /// Closure of the dihedral group under transposition. Transposition is
    /// already dihedral, so this is the same eight ops.
    Full,
}

impl SymmetryGroup {
    pub fn elements(self) -> &'static [SymmetryOp] {
        use SymmetryOp::*;
        match self {
            SymmetryGroup::Trivial => &[Identity],
            SymmetryGroup::ReflectionsOnly => &[Identity, ReflectRows, ReflectCols, Rotate180],
            SymmetryGroup::RotationsAndReflections | SymmetryGroup::Full => &SymmetryOp::ALL,
        }
    }
}

pub fn orbit(m: &Matrix, group: SymmetryGroup) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = group.elements().iter().map(|&op| m.apply(op)).collect();
    out.sort();
    out.dedup();
    out
}

/// Least member of the orbit of `m` (dimensions first, then row-major bits
/// with 0 < 1).
pub fn canonical_form(m: &Matrix, group: SymmetryGroup) -> Matrix {
    group
        .elements()
        .iter()
        .map(|&op| m.apply(op))
        .min()
        .expect("groups contain the identity")
}
