//! Descent from a Rota instance to a Rota grid.
//!
//! A *transversal* meets each given basis `B_i` exactly once. A double
//! partition `(β, τ)` splits the ground set into `n` bases `β_j` and into
//! `n` transversals `τ_j`. Its potential
//!
//! ```text
//! μ(β, τ) = Σ_{i ≠ j} |β_i ∩ τ_j|
//! ```
//!
//! is zero exactly when `β_j = τ_j` for every `j`; the grid with `B_i ∩ τ_j`
//! in cell `(i, j)` then has every row equal to a `B_i` and every column a
//! basis.
//!
//! While `μ > 0`, a block of `k` indices containing an offending pair
//! `(i, j)` is chosen. With `S` the union of the block's `β` parts and `T`
//! the union of its `τ` parts, the matroid `M|S` with row sets
//! `I_i = B_i ∩ T ∩ S` is a k-column grid instance. A grid for it supplies
//! new bases for the block; a companion grid whose row `i` holds
//! `B_i ∩ T`, agreeing with the solved grid on the `I_i` elements, supplies
//! new transversals. The block's own off-diagonal terms vanish and every
//! other term is unchanged, so `μ` drops by at least one per step.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{self, Grid, GridInstance, IndependenceMode, SolveReport};
use crate::matroid::MatroidOracle;

/// A matroid of rank `n` on `n²` elements with a partition into bases
/// `B_0..B_{n-1}`.
#[derive(Debug, Clone)]
pub struct RotaInstance {
    matroid: Arc<MatroidOracle>,
    bases: Vec<Vec<usize>>,
    basis_of: Vec<usize>,
}

impl RotaInstance {
    pub fn new(matroid: Arc<MatroidOracle>, bases: Vec<Vec<usize>>) -> Result<Self> {
        let n = bases.len();
        if n == 0 {
            return Err(Error::InvalidInstance("a Rota instance needs at least one basis".into()));
        }
        if matroid.size() != n * n {
            return Err(Error::GroundSizeMismatch { expected: n * n, actual: matroid.size() });
        }
        if matroid.full_rank() != n {
            return Err(Error::InvalidInstance(format!(
                "matroid has rank {} but {n} bases were given",
                matroid.full_rank()
            )));
        }
        if !matroid.is_disjoint_union_of_bases(&bases) {
            return Err(Error::InvalidInstance("given sets are not a disjoint union of bases".into()));
        }
        let mut basis_of = vec![0; n * n];
        let mut sorted = Vec::with_capacity(n);
        for (i, mut b) in bases.into_iter().enumerate() {
            b.sort_unstable();
            for &e in &b {
                basis_of[e] = i;
            }
            sorted.push(b);
        }
        Ok(RotaInstance { matroid, bases: sorted, basis_of })
    }

    /// Rank, and number of given bases.
    pub fn n(&self) -> usize {
        self.bases.len()
    }

    pub fn matroid(&self) -> &Arc<MatroidOracle> {
        &self.matroid
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    /// Index `i` of the basis `B_i` containing `element`.
    pub fn basis_of(&self, element: usize) -> usize {
        self.basis_of[element]
    }

    /// The full `n×n` grid instance whose rows are the given bases.
    pub fn as_grid_instance(&self) -> GridInstance {
        let n = self.n();
        GridInstance::new(self.matroid.clone(), n, n, self.bases.clone(), IndependenceMode::Required)
            .expect("bases are in range and disjoint")
    }

    pub fn is_transversal(&self, set: &[usize]) -> bool {
        let mut hit = vec![false; self.n()];
        set.len() == self.n()
            && set.iter().all(|&e| {
                let b = self.basis_of[e];
                !core::mem::replace(&mut hit[b], true)
            })
    }
}

/// Paired partitions: `beta` into bases and `tau` into transversals. Every
/// part is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePartition {
    pub beta: Vec<Vec<usize>>,
    pub tau: Vec<Vec<usize>>,
}

fn part_index(parts: &[Vec<usize>], m: usize) -> Option<Vec<usize>> {
    let mut owner = vec![usize::MAX; m];
    for (j, part) in parts.iter().enumerate() {
        for &e in part {
            if e >= m || owner[e] != usize::MAX {
                return None;
            }
            owner[e] = j;
        }
    }
    owner.iter().all(|&o| o != usize::MAX).then_some(owner)
}

impl DoublePartition {
    pub fn check(&self, inst: &RotaInstance) -> Result<()> {
        let (n, m) = (inst.n(), inst.matroid.size());
        if self.beta.len() != n || self.tau.len() != n {
            return Err(Error::InvalidPartition(format!("expected {n} bases and {n} transversals")));
        }
        if !inst.matroid.is_disjoint_union_of_bases(&self.beta) {
            return Err(Error::InvalidPartition("beta is not a partition into bases".into()));
        }
        if part_index(&self.tau, m).is_none() {
            return Err(Error::InvalidPartition("tau is not a partition of the ground set".into()));
        }
        if let Some(j) = self.tau.iter().position(|t| !inst.is_transversal(t)) {
            return Err(Error::InvalidPartition(format!("tau_{j} is not a transversal")));
        }
        Ok(())
    }

    /// `Σ_{i≠j} |β_i ∩ τ_j|`, i.e. the number of elements whose `β` part and
    /// `τ` part have different indices.
    pub fn mu(&self) -> usize {
        let m: usize = self.beta.iter().map(Vec::len).sum();
        let beta_of = part_index(&self.beta, m).expect("beta partitions the ground set");
        let tau_of = part_index(&self.tau, m).expect("tau partitions the ground set");
        beta_of.iter().zip(&tau_of).filter(|(b, t)| b != t).count()
    }

    /// `|β_i ∩ τ_j|`.
    pub fn overlap(&self, i: usize, j: usize) -> usize {
        self.beta[i].iter().filter(|e| self.tau[j].binary_search(e).is_ok()).count()
    }
}

/// `β_i = B_i`; `τ_j` takes the `j`-th smallest element of every `B_i`.
pub fn initial_double_partition(inst: &RotaInstance) -> DoublePartition {
    let n = inst.n();
    let beta = inst.bases.clone();
    let tau = (0..n)
        .map(|j| {
            let mut t: Vec<usize> = inst.bases.iter().map(|b| b[j]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    DoublePartition { beta, tau }
}

/// How the offending pair `(i, j)` is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockPolicy {
    /// Lexicographically first `(i, j)`, `i ≠ j`, with `β_i ∩ τ_j ≠ ∅`.
    #[default]
    FirstPair,
    /// The pair with the largest `|β_i ∩ τ_j|`, ties broken lexicographically.
    LargestOverlap,
}

/// Sorted `k`-subset of part indices holding an offending pair, padded with
/// the smallest other indices.
pub fn select_block(dp: &DoublePartition, k: usize, policy: BlockPolicy) -> Result<Vec<usize>> {
    let n = dp.beta.len();
    if k < 3 || n < k {
        return Err(Error::BadBlockSize { n, k });
    }
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let pick = match policy {
        BlockPolicy::FirstPair => pairs.into_iter().find(|&(i, j)| dp.overlap(i, j) > 0),
        BlockPolicy::LargestOverlap => pairs
            .map(|(i, j)| (dp.overlap(i, j), i, j))
            .filter(|&(o, _, _)| o > 0)
            // max_by_key keeps the last maximum; reverse the index order so
            // the lexicographically first pair wins ties.
            .max_by_key(|&(o, i, j)| (o, core::cmp::Reverse((i, j))))
            .map(|(_, i, j)| (i, j)),
    };
    let (i, j) = pick.ok_or(Error::MuIsZero)?;
    let mut block = vec![i, j];
    block.extend((0..n).filter(|&x| x != i && x != j).take(k - 2));
    block.sort_unstable();
    Ok(block)
}

/// A k-column grid instance over `M|S` together with the bookkeeping needed
/// to map its solution back.
#[derive(Debug, Clone)]
pub struct Subinstance {
    pub instance: GridInstance,
    /// Element `e` of the restriction is element `to_parent[e]` of `M`.
    pub to_parent: Vec<usize>,
    pub block: Vec<usize>,
    /// `S`, sorted.
    pub s: Vec<usize>,
    /// `T`, sorted.
    pub t: Vec<usize>,
}

impl Subinstance {
    fn to_sub(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok()
    }
}

pub fn build_subinstance(inst: &RotaInstance, dp: &DoublePartition, block: &[usize]) -> Result<Subinstance> {
    let n = inst.n();
    let k = block.len();
    if block.iter().any(|&b| b >= n) {
        return Err(Error::InvalidParameter(format!("block {block:?} out of range for {n} parts")));
    }
    let mut s: Vec<usize> = block.iter().flat_map(|&b| dp.beta[b].iter().copied()).collect();
    let mut t: Vec<usize> = block.iter().flat_map(|&b| dp.tau[b].iter().copied()).collect();
    s.sort_unstable();
    t.sort_unstable();
    let restriction = inst.matroid.restrict(&s)?;
    let to_parent = restriction.to_parent;
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            s.iter()
                .enumerate()
                .filter(|&(_, &e)| inst.basis_of(e) == i && t.binary_search(&e).is_ok())
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    let oracle = restriction.oracle.with_name(format!("{}|S{block:?}", inst.matroid.name()));
    let instance = GridInstance::new(Arc::new(oracle), n, k, rows, IndependenceMode::Required)?;
    Ok(Subinstance { instance, to_parent, block: block.to_vec(), s, t })
}

/// New double partition from a solved subinstance: the grid's columns
/// become the block's bases, and the companion grid's columns become its
/// transversals.
pub fn rebuild(inst: &RotaInstance, dp: &DoublePartition, sub: &Subinstance, subgrid: &Grid) -> Result<DoublePartition> {
    grid::check_grid(&sub.instance, subgrid)?;
    let (n, k) = (inst.n(), sub.block.len());
    let mut next = dp.clone();
    for (c, &b) in sub.block.iter().enumerate() {
        let mut col: Vec<usize> = subgrid.column(c).iter().map(|&e| sub.to_parent[e]).collect();
        col.sort_unstable();
        next.beta[b] = col;
    }
    let mut companion = vec![vec![usize::MAX; k]; n];
    for (i, row) in companion.iter_mut().enumerate() {
        let in_t: Vec<usize> = sub.t.iter().copied().filter(|&e| inst.basis_of(e) == i).collect();
        if in_t.len() != k {
            return Err(Error::InvalidPartition(format!(
                "B_{i} ∩ T has {} elements, expected {k}",
                in_t.len()
            )));
        }
        let mut vacant_fill = Vec::new();
        for e in in_t {
            match sub.to_sub(e) {
                Some(local) => {
                    let c = subgrid.rows()[i]
                        .iter()
                        .position(|&x| x == local)
                        .ok_or_else(|| Error::InvalidGrid(format!("element {e} missing from row {i}")))?;
                    row[c] = e;
                }
                None => vacant_fill.push(e),
            }
        }
        let mut fill = vacant_fill.into_iter();
        for cell in row.iter_mut().filter(|c| **c == usize::MAX) {
            *cell = fill.next().expect("B_i ∩ T has exactly k elements");
        }
    }
    for (c, &b) in sub.block.iter().enumerate() {
        let mut col: Vec<usize> = companion.iter().map(|r| r[c]).collect();
        col.sort_unstable();
        next.tau[b] = col;
    }
    next.check(inst)?;
    Ok(next)
}

/// Solves the k-column subinstances. Implemented by [`ExactSolver`] and by
/// any `Fn(&GridInstance) -> Result<SolveReport>`.
pub trait SubSolver {
    fn solve(&self, inst: &GridInstance) -> Result<SolveReport>;
}

/// The exact backtracking solver from [`grid::solve`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSolver;

impl SubSolver for ExactSolver {
    fn solve(&self, inst: &GridInstance) -> Result<SolveReport> {
        grid::solve(inst)
    }
}

impl<F> SubSolver for F
where
    F: Fn(&GridInstance) -> Result<SolveReport>,
{
    fn solve(&self, inst: &GridInstance) -> Result<SolveReport> {
        self(inst)
    }
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub block: Vec<usize>,
    pub mu_before: usize,
    pub mu_after: usize,
    pub subinstance: Subinstance,
    pub report: SolveReport,
}

/// An instance meeting every grid-completion hypothesis for which the
/// solver found no grid.
#[derive(Debug, Clone)]
pub struct CounterexampleCertificate {
    /// `M′` with rows `I_i`.
    pub instance: GridInstance,
    /// `k` disjoint bases of `M′`, in its own indices.
    pub bases: Vec<Vec<usize>>,
    /// Map from `M′` indices back to the Rota instance's matroid.
    pub to_parent: Vec<usize>,
    pub report: SolveReport,
}

// Advanced is the common case; only the rare certificate is boxed.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum StepOutcome {
    Advanced { partition: DoublePartition, record: StepRecord },
    Counterexample(alloc::boxed::Box<CounterexampleCertificate>),
}

pub fn descent_step<S: SubSolver + ?Sized>(
    inst: &RotaInstance,
    dp: &DoublePartition,
    k: usize,
    policy: BlockPolicy,
    solver: &S,
) -> Result<StepOutcome> {
    let mu_before = dp.mu();
    let block = select_block(dp, k, policy)?;
    let sub = build_subinstance(inst, dp, &block)?;
    let report = solver.solve(&sub.instance)?;
    let Some(subgrid) = report.grid.clone().filter(|_| report.is_sat()) else {
        let bases = block
            .iter()
            .map(|&b| dp.beta[b].iter().map(|&e| sub.to_sub(e).expect("β_b ⊆ S")).collect())
            .collect();
        return Ok(StepOutcome::Counterexample(alloc::boxed::Box::new(CounterexampleCertificate {
            instance: sub.instance,
            bases,
            to_parent: sub.to_parent,
            report,
        })));
    };
    let partition = rebuild(inst, dp, &sub, &subgrid)?;
    let mu_after = partition.mu();
    if mu_after >= mu_before {
        return Err(Error::InvalidPartition(format!("mu did not decrease ({mu_before} -> {mu_after})")));
    }
    Ok(StepOutcome::Advanced {
        partition,
        record: StepRecord { block, mu_before, mu_after, subinstance: sub, report },
    })
}

#[derive(Debug, Clone)]
pub enum DescentOutcome {
    Grid(Grid),
    Counterexample(alloc::boxed::Box<CounterexampleCertificate>),
}

#[derive(Debug, Clone)]
pub struct DescentTrace {
    pub initial_mu: usize,
    pub steps: Vec<StepRecord>,
    pub outcome: DescentOutcome,
}

impl DescentTrace {
    pub fn grid(&self) -> Option<&Grid> {
        match &self.outcome {
            DescentOutcome::Grid(g) => Some(g),
            DescentOutcome::Counterexample(_) => None,
        }
    }
}

/// Grid whose rows are the `B_i` and whose columns are the `τ_j`; only
/// meaningful once `μ = 0`.
pub fn grid_from_transversals(inst: &RotaInstance, dp: &DoublePartition) -> Result<Grid> {
    let n = inst.n();
    let mut rows = vec![vec![usize::MAX; n]; n];
    for (j, t) in dp.tau.iter().enumerate() {
        for &e in t {
            rows[inst.basis_of(e)][j] = e;
        }
    }
    Grid::from_rows(rows)
}

/// Runs the descent from [`initial_double_partition`] until `μ = 0`.
///
/// With `n ≤ 2`, or fewer rows than the block size `k`, the full `n×n`
/// instance goes straight to the solver.
pub fn rota_solve<S: SubSolver + ?Sized>(
    inst: &RotaInstance,
    k: usize,
    policy: BlockPolicy,
    solver: &S,
) -> Result<DescentTrace> {
    let n = inst.n();
    let full = inst.as_grid_instance();
    if n <= 2 || n < k {
        let report = solver.solve(&full)?;
        let outcome = match report.grid.clone().filter(|_| report.is_sat()) {
            Some(g) => {
                grid::check_grid(&full, &g)?;
                DescentOutcome::Grid(g)
            }
            None => DescentOutcome::Counterexample(alloc::boxed::Box::new(CounterexampleCertificate {
                bases: inst.bases.clone(),
                to_parent: (0..n * n).collect(),
                instance: full,
                report,
            })),
        };
        return Ok(DescentTrace { initial_mu: 0, steps: Vec::new(), outcome });
    }
    if k < 3 {
        return Err(Error::BadBlockSize { n, k });
    }
    let mut dp = initial_double_partition(inst);
    let initial_mu = dp.mu();
    let mut steps = Vec::new();
    while dp.mu() > 0 {
        match descent_step(inst, &dp, k, policy, solver)? {
            StepOutcome::Advanced { partition, record } => {
                dp = partition;
                steps.push(record);
            }
            StepOutcome::Counterexample(cert) => {
                return Ok(DescentTrace { initial_mu, steps, outcome: DescentOutcome::Counterexample(cert) });
            }
        }
    }
    let g = grid_from_transversals(inst, &dp)?;
    grid::check_grid(&full, &g)?;
    Ok(DescentTrace { initial_mu, steps, outcome: DescentOutcome::Grid(g) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SolveStatus;
    use crate::instances::{random_rota_instance, uniform_matroid};

    fn u39_rota() -> RotaInstance {
        RotaInstance::new(Arc::new(uniform_matroid(3, 9)), vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap()
    }

    /// Direct double loop over all ordered pairs.
    fn mu_by_pairs(dp: &DoublePartition) -> usize {
        let n = dp.beta.len();
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    total += dp.beta[i].iter().filter(|e| dp.tau[j].contains(e)).count();
                }
            }
        }
        total
    }

    #[test]
    fn mu_of_identical_partitions_is_zero() {
        let dp = DoublePartition { beta: vec![vec![0, 1], vec![2, 3]], tau: vec![vec![0, 1], vec![2, 3]] };
        assert_eq!(dp.mu(), 0);
    }

    #[test]
    fn mu_after_one_swap_is_two() {
        // τ built from β by swapping 2 and 3 between the first two parts.
        let dp = DoublePartition {
            beta: vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
            tau: vec![vec![0, 1, 3], vec![2, 4, 5], vec![6, 7, 8]],
        };
        assert_eq!(dp.mu(), 2);
        assert_eq!(mu_by_pairs(&dp), 2);
    }

    #[test]
    fn mu_matches_pair_recount_on_random_instances() {
        for seed in 0..5 {
            let inst = random_rota_instance(4, seed).unwrap();
            let dp = initial_double_partition(&inst);
            assert_eq!(dp.mu(), mu_by_pairs(&dp));
            let trace = rota_solve(&inst, 3, BlockPolicy::FirstPair, &ExactSolver).unwrap();
            let mut dp = initial_double_partition(&inst);
            for step in &trace.steps {
                let StepOutcome::Advanced { partition, .. } =
                    descent_step(&inst, &dp, 3, BlockPolicy::FirstPair, &ExactSolver).unwrap()
                else {
                    panic!("unexpected certificate");
                };
                assert_eq!(partition.mu(), mu_by_pairs(&partition));
                assert_eq!(partition.mu(), step.mu_after);
                dp = partition;
            }
        }
    }

    #[test]
    fn initial_partition_shape() {
        let inst = u39_rota();
        let dp = initial_double_partition(&inst);
        dp.check(&inst).unwrap();
        assert_eq!(dp.tau, vec![vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]]);
        assert_eq!(dp.mu(), 6);

        let single = RotaInstance::new(Arc::new(uniform_matroid(1, 1)), vec![vec![0]]).unwrap();
        let dp = initial_double_partition(&single);
        assert_eq!(dp.beta, vec![vec![0]]);
        assert_eq!(dp.tau, vec![vec![0]]);
    }

    #[test]
    fn block_selection() {
        let inst = u39_rota();
        let dp = initial_double_partition(&inst);
        assert_eq!(select_block(&dp, 3, BlockPolicy::FirstPair).unwrap(), vec![0, 1, 2]);
        assert_eq!(select_block(&dp, 4, BlockPolicy::FirstPair), Err(Error::BadBlockSize { n: 3, k: 4 }));
        assert_eq!(select_block(&dp, 2, BlockPolicy::FirstPair), Err(Error::BadBlockSize { n: 3, k: 2 }));
        let settled = DoublePartition { beta: dp.beta.clone(), tau: dp.beta.clone() };
        assert_eq!(select_block(&settled, 3, BlockPolicy::FirstPair), Err(Error::MuIsZero));
    }

    #[test]
    fn padding_uses_smallest_free_indices() {
        // Six parts of one element each; β_1 ∩ τ_4 is the first offending pair.
        let beta: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
        let mut tau = beta.clone();
        tau.swap(1, 4);
        let dp = DoublePartition { beta, tau };
        assert_eq!(select_block(&dp, 3, BlockPolicy::FirstPair).unwrap(), vec![0, 1, 4]);
        assert_eq!(select_block(&dp, 3, BlockPolicy::LargestOverlap).unwrap(), vec![0, 1, 4]);
    }

    #[test]
    fn full_block_subinstance_keeps_everything() {
        let inst = u39_rota();
        let dp = initial_double_partition(&inst);
        let sub = build_subinstance(&inst, &dp, &[0, 1, 2]).unwrap();
        assert_eq!(sub.s, (0..9).collect::<Vec<_>>());
        assert_eq!(sub.t, (0..9).collect::<Vec<_>>());
        assert_eq!(sub.instance.row_sets(), inst.bases());
    }

    #[test]
    fn one_step_reduces_mu() {
        let inst = u39_rota();
        let dp = DoublePartition {
            beta: inst.bases().to_vec(),
            tau: vec![vec![0, 1, 3], vec![2, 4, 5], vec![6, 7, 8]],
        };
        assert!(dp.check(&inst).is_err(), "τ_0 meets B_0 twice");
        let dp = DoublePartition {
            beta: vec![vec![0, 1, 3], vec![2, 4, 5], vec![6, 7, 8]],
            tau: vec![vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]],
        };
        dp.check(&inst).unwrap();
        let before = dp.mu();
        let StepOutcome::Advanced { partition, record } =
            descent_step(&inst, &dp, 3, BlockPolicy::FirstPair, &ExactSolver).unwrap()
        else {
            panic!("uniform subinstances are always solvable");
        };
        assert!(partition.mu() < before);
        assert_eq!(record.mu_before, before);
    }

    #[test]
    fn unsat_subsolve_becomes_a_certificate() {
        let inst = u39_rota();
        let dp = initial_double_partition(&inst);
        let refuse = |_: &GridInstance| -> Result<SolveReport> {
            Ok(SolveReport { status: SolveStatus::Unsat, grid: None, count: None, nodes: 0, elapsed: None })
        };
        let StepOutcome::Counterexample(cert) = descent_step(&inst, &dp, 3, BlockPolicy::FirstPair, &refuse).unwrap()
        else {
            panic!("expected a certificate");
        };
        assert_eq!(cert.instance.rows(), 3);
        assert_eq!(cert.instance.cols(), 3);
        assert_eq!(cert.instance.row_sets(), inst.bases());
        assert!(cert.instance.matroid().is_disjoint_union_of_bases(&cert.bases));
        let trace = rota_solve(&inst, 3, BlockPolicy::FirstPair, &refuse).unwrap();
        assert!(matches!(trace.outcome, DescentOutcome::Counterexample(_)));
    }

    #[test]
    fn small_rota_instances_are_solved_directly() {
        let inst =
            RotaInstance::new(Arc::new(uniform_matroid(2, 4)), vec![vec![0, 1], vec![2, 3]]).unwrap();
        let trace = rota_solve(&inst, 3, BlockPolicy::FirstPair, &ExactSolver).unwrap();
        assert!(trace.steps.is_empty());
        let g = trace.grid().unwrap();
        assert!(grid::validate_grid(&inst.as_grid_instance(), g));
    }

    #[test]
    fn uniform_rota_grid_rows_are_the_bases() {
        let inst = u39_rota();
        let trace = rota_solve(&inst, 3, BlockPolicy::FirstPair, &ExactSolver).unwrap();
        let g = trace.grid().unwrap();
        for (row, b) in g.rows().iter().zip(inst.bases()) {
            let mut r = row.clone();
            r.sort_unstable();
            assert_eq!(&r, b);
        }
        assert!(trace.steps.len() <= trace.initial_mu);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(RotaInstance::new(Arc::new(uniform_matroid(2, 4)), vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(RotaInstance::new(Arc::new(uniform_matroid(2, 5)), vec![vec![0, 1], vec![2, 3]]).is_err());
    }
}
