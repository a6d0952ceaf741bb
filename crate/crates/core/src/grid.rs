//! The n×k constrained grid-completion problem.
//!
//! A [`GridInstance`] asks for an arrangement of the `n·k` ground-set
//! elements into `n` rows and `k` columns such that row `i` contains its
//! prescribed set `I_i` and every column is a basis. [`solve`] and
//! [`count_solutions`] run an exact backtracking search; [`brute_force_count`]
//! enumerates every assignment with no pruning and serves as the reference.
//!
//! Cells are filled column by column, top to bottom. Row `i` accepts its
//! remaining `I_i` elements and, while it has free capacity `k − |I_i|`
//! left, any unconstrained element; candidates are tried in increasing index
//! order. A partial column must stay independent. In decision mode the row-0
//! entries are forced to increase from left to right, which picks one
//! representative per column permutation.

use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::sync::atomic::{AtomicBool, Ordering};
use core::time::Duration;

use crate::error::{Error, Result};
use crate::matroid::MatroidOracle;
use crate::tracker::Tracker;

/// Largest `n·k` accepted by [`brute_force_count`].
pub const BRUTE_FORCE_MAX_CELLS: usize = 9;

const ABORT_POLL_MASK: u64 = (1 << 12) - 1;

/// Whether the row sets must be independent for the instance to satisfy the
/// hypotheses. The search itself ignores this flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndependenceMode {
    Required,
    NotRequired,
}

#[derive(Debug, Clone)]
pub struct GridInstance {
    matroid: Arc<MatroidOracle>,
    rows: usize,
    cols: usize,
    row_sets: Vec<Vec<usize>>,
    mode: IndependenceMode,
}

impl GridInstance {
    /// Checks shape and index ranges only; the remaining hypotheses are left
    /// to [`check_hypotheses`] so that invalid instances can be represented
    /// and diagnosed.
    pub fn new(
        matroid: Arc<MatroidOracle>,
        rows: usize,
        cols: usize,
        row_sets: Vec<Vec<usize>>,
        mode: IndependenceMode,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInstance("grid needs at least one row and one column".into()));
        }
        if row_sets.len() != rows {
            return Err(Error::InvalidInstance(format!(
                "{} row sets given for {rows} rows",
                row_sets.len()
            )));
        }
        let mut sorted = Vec::with_capacity(rows);
        for (i, set) in row_sets.into_iter().enumerate() {
            let norm = matroid.normalize(&set)?;
            if norm.len() != set.len() {
                return Err(Error::InvalidInstance(format!("row {i} repeats an element")));
            }
            sorted.push(norm);
        }
        Ok(GridInstance { matroid, rows, cols, row_sets: sorted, mode })
    }

    pub fn matroid(&self) -> &MatroidOracle {
        &self.matroid
    }

    pub fn matroid_arc(&self) -> &Arc<MatroidOracle> {
        &self.matroid
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The prescribed sets `I_i`, each sorted.
    pub fn row_sets(&self) -> &[Vec<usize>] {
        &self.row_sets
    }

    pub fn mode(&self) -> IndependenceMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: IndependenceMode) -> Self {
        self.mode = mode;
        self
    }
}

/// The first hypothesis an instance fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypothesisFailure {
    #[error("ground set has {actual} elements but an {rows}x{cols} grid has {expected} cells")]
    GroundSize { rows: usize, cols: usize, expected: usize, actual: usize },
    #[error("row {row} prescribes {size} elements, more than the {cols} columns")]
    RowTooLarge { row: usize, size: usize, cols: usize },
    #[error("rows {first} and {second} both contain element {element}")]
    RowsOverlap { first: usize, second: usize, element: usize },
    #[error("ground set has rank {actual}, expected {expected}")]
    RankMismatch { expected: usize, actual: usize },
    #[error("row {row} is dependent but independence is required")]
    DependentRow { row: usize },
    #[error("ground set is not a disjoint union of {parts} bases")]
    NoBasisPartition { parts: usize },
}

/// Size, disjointness and capacity checks that the search depends on.
pub fn check_structure(inst: &GridInstance) -> core::result::Result<(), HypothesisFailure> {
    let expected = inst.rows * inst.cols;
    let actual = inst.matroid.size();
    if expected != actual {
        return Err(HypothesisFailure::GroundSize { rows: inst.rows, cols: inst.cols, expected, actual });
    }
    let mut owner: Vec<Option<usize>> = vec![None; actual];
    for (row, set) in inst.row_sets.iter().enumerate() {
        if set.len() > inst.cols {
            return Err(HypothesisFailure::RowTooLarge { row, size: set.len(), cols: inst.cols });
        }
        for &e in set {
            if let Some(first) = owner[e] {
                return Err(HypothesisFailure::RowsOverlap { first, second: row, element: e });
            }
            owner[e] = Some(row);
        }
    }
    Ok(())
}

/// All grid-completion hypotheses. The basis-partition search is the only
/// expensive part and can be skipped.
pub fn check_hypotheses(
    inst: &GridInstance,
    check_basis_partition: bool,
) -> core::result::Result<(), HypothesisFailure> {
    check_structure(inst)?;
    let r = inst.matroid.full_rank();
    if r != inst.rows {
        return Err(HypothesisFailure::RankMismatch { expected: inst.rows, actual: r });
    }
    if inst.mode == IndependenceMode::Required {
        for (row, set) in inst.row_sets.iter().enumerate() {
            if inst.matroid.rank_normalized(set) != set.len() {
                return Err(HypothesisFailure::DependentRow { row });
            }
        }
    }
    if check_basis_partition && inst.matroid.find_basis_partition(inst.cols).is_none() {
        return Err(HypothesisFailure::NoBasisPartition { parts: inst.cols });
    }
    Ok(())
}

pub fn validate_instance(inst: &GridInstance) -> bool {
    check_hypotheses(inst, true).is_ok()
}

/// An `n×k` arrangement of element indices, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    cells: Vec<Vec<usize>>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidGrid("grid must be a non-empty rectangle".into()));
        }
        Ok(Grid { cells: rows })
    }

    pub(crate) fn from_column_major(n: usize, k: usize, cells: &[usize]) -> Self {
        let rows = (0..n).map(|i| (0..k).map(|c| cells[c * n + i]).collect()).collect();
        Grid { cells: rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn n_rows(&self) -> usize {
        self.cells.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<usize> {
        self.cells.iter().map(|r| r[col]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.n_cols()).map(|c| self.column(c)).collect()
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for row in &mut self.cells {
            row.swap(a, b);
        }
    }

    /// Column `c` of the result is column `order[c]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> Grid {
        let rows = self.cells.iter().map(|r| order.iter().map(|&c| r[c]).collect()).collect();
        Grid { cells: rows }
    }
}

/// Explains why `grid` does not solve `inst`.
pub fn check_grid(inst: &GridInstance, grid: &Grid) -> Result<()> {
    let (n, k, m) = (inst.rows, inst.cols, inst.matroid.size());
    if grid.n_rows() != n || grid.n_cols() != k {
        return Err(Error::InvalidGrid(format!(
            "grid is {}x{}, instance is {n}x{k}",
            grid.n_rows(),
            grid.n_cols()
        )));
    }
    let mut seen = vec![0usize; m];
    for &e in grid.cells.iter().flatten() {
        if e >= m {
            return Err(Error::ElementOutOfRange { index: e, size: m });
        }
        seen[e] += 1;
    }
    if let Some(e) = seen.iter().position(|&c| c != 1) {
        return Err(Error::InvalidGrid(format!("element {e} appears {} times", seen[e])));
    }
    for (i, set) in inst.row_sets.iter().enumerate() {
        if let Some(e) = set.iter().find(|e| !grid.cells[i].contains(e)) {
            return Err(Error::InvalidGrid(format!("element {e} of I_{i} is not in row {i}")));
        }
    }
    for c in 0..k {
        if !inst.matroid.is_basis(&grid.column(c))? {
            return Err(Error::InvalidGrid(format!("column {c} is not a basis")));
        }
    }
    Ok(())
}

pub fn validate_grid(inst: &GridInstance, grid: &Grid) -> bool {
    check_grid(inst, grid).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// First grid in search order (decision mode, SAT only).
    pub grid: Option<Grid>,
    /// Number of labelled grids (count mode only).
    pub count: Option<u64>,
    /// Successful cell placements.
    pub nodes: u64,
    /// Wall-clock time, when the caller measured it.
    pub elapsed: Option<Duration>,
}

impl SolveReport {
    pub fn is_sat(&self) -> bool {
        self.status == SolveStatus::Sat
    }
}

fn structural_error(failure: HypothesisFailure) -> Error {
    match failure {
        HypothesisFailure::GroundSize { expected, actual, .. } => {
            Error::GroundSizeMismatch { expected, actual }
        }
        other => Error::InvalidInstance(format!("{other}")),
    }
}

struct Search<'a> {
    n: usize,
    k: usize,
    m: usize,
    row_of: Vec<Option<usize>>,
    constrained_left: Vec<usize>,
    free_left: Vec<usize>,
    placed: Vec<bool>,
    cells: Vec<usize>,
    trackers: Vec<Tracker<'a>>,
    symmetry: bool,
    counting: bool,
    forced_first: Option<usize>,
    abort: Option<&'a AtomicBool>,
    aborted: bool,
    nodes: u64,
    count: u64,
    found: Option<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a GridInstance, counting: bool, symmetry: bool) -> Result<Self> {
        check_structure(inst).map_err(structural_error)?;
        let (n, k, m) = (inst.rows, inst.cols, inst.matroid.size());
        let mut row_of = vec![None; m];
        for (i, set) in inst.row_sets.iter().enumerate() {
            for &e in set {
                row_of[e] = Some(i);
            }
        }
        Ok(Search {
            n,
            k,
            m,
            row_of,
            constrained_left: inst.row_sets.iter().map(Vec::len).collect(),
            free_left: inst.row_sets.iter().map(|s| k - s.len()).collect(),
            placed: vec![false; m],
            cells: vec![usize::MAX; n * k],
            trackers: (0..k).map(|_| Tracker::new(&inst.matroid)).collect(),
            symmetry,
            counting,
            forced_first: None,
            abort: None,
            aborted: false,
            nodes: 0,
            count: 0,
            found: None,
        })
    }

    /// Candidate filter shared by the search and branch enumeration. Does
    /// not touch the column tracker.
    fn admissible(&self, pos: usize, e: usize) -> Option<bool> {
        let (c, i) = (pos / self.n, pos % self.n);
        if self.placed[e] {
            return None;
        }
        let constrained = match self.row_of[e] {
            Some(r) if r == i => true,
            Some(_) => return None,
            None => false,
        };
        if !constrained && self.free_left[i] == 0 {
            return None;
        }
        let left_after = self.constrained_left[i] - usize::from(constrained);
        if self.k - c - 1 < left_after {
            return None;
        }
        Some(constrained)
    }

    fn lower_bound(&self, pos: usize) -> usize {
        let (c, i) = (pos / self.n, pos % self.n);
        if self.symmetry && i == 0 && c > 0 {
            self.cells[(c - 1) * self.n] + 1
        } else {
            0
        }
    }

    /// Returns `true` when the search should stop.
    fn run(&mut self, pos: usize) -> bool {
        if pos == self.n * self.k {
            if self.counting {
                self.count += 1;
                return false;
            }
            self.found = Some(self.cells.clone());
            return true;
        }
        let (c, i) = (pos / self.n, pos % self.n);
        let (lo, hi) = match (pos, self.forced_first) {
            (0, Some(f)) => (f, f + 1),
            _ => (self.lower_bound(pos), self.m),
        };
        for e in lo..hi {
            let Some(constrained) = self.admissible(pos, e) else {
                continue;
            };
            if !self.trackers[c].try_push(e) {
                continue;
            }
            self.nodes += 1;
            if self.nodes & ABORT_POLL_MASK == 0 {
                if let Some(flag) = self.abort {
                    if flag.load(Ordering::Relaxed) {
                        self.aborted = true;
                        return true;
                    }
                }
            }
            self.placed[e] = true;
            self.cells[pos] = e;
            if constrained {
                self.constrained_left[i] -= 1;
            } else {
                self.free_left[i] -= 1;
            }
            if self.run(pos + 1) {
                return true;
            }
            if constrained {
                self.constrained_left[i] += 1;
            } else {
                self.free_left[i] += 1;
            }
            self.placed[e] = false;
            self.trackers[c].pop();
        }
        false
    }

    fn report(self) -> SolveReport {
        let grid = self.found.as_ref().map(|cells| Grid::from_column_major(self.n, self.k, cells));
        let status = if self.counting {
            if self.count > 0 { SolveStatus::Sat } else { SolveStatus::Unsat }
        } else if grid.is_some() {
            SolveStatus::Sat
        } else {
            SolveStatus::Unsat
        };
        SolveReport {
            status,
            grid,
            count: self.counting.then_some(self.count),
            nodes: self.nodes,
            elapsed: None,
        }
    }
}

fn rank_matches(inst: &GridInstance) -> bool {
    inst.matroid.full_rank() == inst.rows
}

/// Decides the instance, returning the first grid in search order.
pub fn solve(inst: &GridInstance) -> Result<SolveReport> {
    solve_with_symmetry(inst, true)
}

/// Decision search with symmetry breaking switched on or off.
pub fn solve_with_symmetry(inst: &GridInstance, symmetry_breaking: bool) -> Result<SolveReport> {
    let mut search = Search::new(inst, false, symmetry_breaking)?;
    if rank_matches(inst) {
        search.run(0);
    }
    Ok(search.report())
}

/// Counts every labelled grid; no symmetry is quotiented out.
pub fn count_report(inst: &GridInstance) -> Result<SolveReport> {
    let mut search = Search::new(inst, true, false)?;
    if rank_matches(inst) {
        search.run(0);
    }
    Ok(search.report())
}

pub fn count_solutions(inst: &GridInstance) -> Result<u64> {
    Ok(count_report(inst)?.count.unwrap_or(0))
}

/// Elements that may occupy the top-left cell in decision mode; each one
/// roots an independent subtree for [`solve_branch`].
pub fn first_cell_candidates(inst: &GridInstance) -> Result<Vec<usize>> {
    let search = Search::new(inst, false, true)?;
    if !rank_matches(inst) {
        return Ok(Vec::new());
    }
    let mut probe = Tracker::new(&inst.matroid);
    Ok((0..search.m)
        .filter(|&e| search.admissible(0, e).is_some())
        .filter(|&e| {
            let ok = probe.try_push(e);
            if ok {
                probe.pop();
            }
            ok
        })
        .collect())
}

/// Decision search restricted to grids whose top-left cell is `first`.
/// Returns `None` if `abort` was raised before the subtree was exhausted.
pub fn solve_branch(inst: &GridInstance, first: usize, abort: &AtomicBool) -> Result<Option<SolveReport>> {
    let mut search = Search::new(inst, false, true)?;
    if first >= search.m {
        return Err(Error::ElementOutOfRange { index: first, size: search.m });
    }
    search.forced_first = Some(first);
    search.abort = Some(abort);
    if rank_matches(inst) {
        search.run(0);
    }
    if search.aborted {
        return Ok(None);
    }
    Ok(Some(search.report()))
}

/// Counts solutions by trying every assignment of elements to cells and
/// filtering with the rank oracle. No pruning; only for `n·k ≤ 9`.
pub fn brute_force_count(inst: &GridInstance) -> Result<u64> {
    let (n, k, m) = (inst.rows, inst.cols, inst.matroid.size());
    if n * k > BRUTE_FORCE_MAX_CELLS {
        return Err(Error::TooLarge { size: n * k, cap: BRUTE_FORCE_MAX_CELLS });
    }
    if m != n * k {
        return Err(Error::GroundSizeMismatch { expected: n * k, actual: m });
    }
    let matroid = &inst.matroid;
    let accepts = |perm: &[usize]| -> bool {
        // perm is row-major: cell (i, c) holds perm[i * k + c].
        for (i, set) in inst.row_sets.iter().enumerate() {
            let row = &perm[i * k..(i + 1) * k];
            if set.iter().any(|e| !row.contains(e)) {
                return false;
            }
        }
        (0..k).all(|c| {
            let col: Vec<usize> = (0..n).map(|i| perm[i * k + c]).collect();
            matroid.is_basis(&col).unwrap_or(false)
        })
    };
    // Heap's algorithm, iterative form.
    let mut perm: Vec<usize> = (0..m).collect();
    let mut stack = vec![0usize; m];
    let mut count = u64::from(accepts(&perm));
    let mut i = 1;
    while i < m {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            count += u64::from(accepts(&perm));
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{k4_c2_instance, mcdiarmid_instance, uniform_matroid};
    use crate::matroid::{BasesRep, GraphicRep};

    fn u24_free() -> GridInstance {
        GridInstance::new(Arc::new(uniform_matroid(2, 4)), 2, 2, vec![vec![], vec![]], IndependenceMode::Required)
            .unwrap()
    }

    fn three_parallel() -> GridInstance {
        let rep = BasesRep::new(1, 3, vec![vec![0], vec![1], vec![2]]).unwrap();
        let m = MatroidOracle::bases(3, rep).unwrap();
        GridInstance::new(Arc::new(m), 1, 3, vec![vec![0, 1, 2]], IndependenceMode::Required).unwrap()
    }

    #[test]
    fn single_row_is_sat() {
        let inst = three_parallel();
        let report = solve(&inst).unwrap();
        assert!(report.is_sat());
        assert_eq!(report.grid.unwrap().rows(), &[vec![0, 1, 2]]);
        assert_eq!(count_solutions(&inst).unwrap(), 6);
    }

    #[test]
    fn k4_is_unsat() {
        let inst = k4_c2_instance().instance;
        assert_eq!(solve(&inst).unwrap().status, SolveStatus::Unsat);
        assert_eq!(count_solutions(&inst).unwrap(), 0);
        assert!(validate_instance(&inst));
    }

    #[test]
    fn u24_counts_every_arrangement() {
        assert_eq!(count_solutions(&u24_free()).unwrap(), 24);
        assert_eq!(brute_force_count(&u24_free()).unwrap(), 24);
    }

    #[test]
    fn loops_never_form_bases() {
        let m = MatroidOracle::graphic(GraphicRep::new(2, vec![(0, 0), (1, 1)]).unwrap());
        // Rank 0 for a one-row grid: no column can be a basis of size 1.
        let inst = GridInstance::new(Arc::new(m), 1, 2, vec![vec![]], IndependenceMode::NotRequired).unwrap();
        assert_eq!(brute_force_count(&inst).unwrap(), 0);
        assert_eq!(count_solutions(&inst).unwrap(), 0);
        assert_eq!(solve(&inst).unwrap().status, SolveStatus::Unsat);
    }

    #[test]
    fn overlapping_rows_fail_validation() {
        let inst = GridInstance::new(
            Arc::new(uniform_matroid(2, 4)),
            2,
            2,
            vec![vec![0, 1], vec![1]],
            IndependenceMode::Required,
        )
        .unwrap();
        assert_eq!(
            check_hypotheses(&inst, false),
            Err(HypothesisFailure::RowsOverlap { first: 0, second: 1, element: 1 })
        );
        assert!(!validate_instance(&inst));
        assert!(matches!(solve(&inst), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn ground_size_mismatch_is_an_error() {
        let inst = GridInstance::new(Arc::new(uniform_matroid(2, 5)), 2, 2, vec![vec![], vec![]], IndependenceMode::Required)
            .unwrap();
        assert_eq!(solve(&inst), Err(Error::GroundSizeMismatch { expected: 4, actual: 5 }));
    }

    #[test]
    fn mcdiarmid_fails_only_the_independence_hypothesis() {
        let inst = mcdiarmid_instance().instance;
        assert!(validate_instance(&inst));
        let strict = inst.with_mode(IndependenceMode::Required);
        assert_eq!(check_hypotheses(&strict, true), Err(HypothesisFailure::DependentRow { row: 0 }));
    }

    #[test]
    fn grid_validation() {
        let inst = u24_free();
        let g = solve(&inst).unwrap().grid.unwrap();
        assert!(validate_grid(&inst, &g));
        let mut swapped = g.clone();
        swapped.swap_columns(0, 1);
        assert!(validate_grid(&inst, &swapped));

        let constrained = GridInstance::new(
            Arc::new(uniform_matroid(2, 4)),
            2,
            2,
            vec![vec![0], vec![]],
            IndependenceMode::Required,
        )
        .unwrap();
        let g = solve(&constrained).unwrap().grid.unwrap();
        assert!(validate_grid(&constrained, &g));
        let evicted = Grid::from_rows(vec![g.rows()[1].clone(), g.rows()[0].clone()]).unwrap();
        assert!(!validate_grid(&constrained, &evicted));
        assert!(matches!(check_grid(&constrained, &evicted), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn branches_cover_the_decision_search() {
        let inst = u24_free();
        let firsts = first_cell_candidates(&inst).unwrap();
        assert_eq!(firsts, vec![0, 1, 2, 3]);
        let flag = AtomicBool::new(false);
        let first_sat = firsts
            .iter()
            .find_map(|&f| solve_branch(&inst, f, &flag).unwrap().filter(SolveReport::is_sat))
            .unwrap();
        assert_eq!(first_sat.grid, solve(&inst).unwrap().grid);
    }

    #[test]
    fn brute_force_rejects_large_instances() {
        let inst = GridInstance::new(
            Arc::new(uniform_matroid(2, 10)),
            2,
            5,
            vec![vec![], vec![]],
            IndependenceMode::Required,
        )
        .unwrap();
        assert_eq!(brute_force_count(&inst), Err(Error::TooLarge { size: 10, cap: 9 }));
    }
}
