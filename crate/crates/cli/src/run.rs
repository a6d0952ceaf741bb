//! Timed and multi-threaded drivers around the core solvers.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use basisgrid_core::descent::SubSolver;
use basisgrid_core::grid::{self, GridInstance, SolveReport, SolveStatus};
use basisgrid_core::instances::CatalogEntry;
use basisgrid_core::matroid::MatroidOracle;
use basisgrid_core::sweep::{self, RowFamily, SweepReport};
use basisgrid_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Decide,
    Count,
}

/// Runs the solver in `mode`, filling in the elapsed time. `threads > 1`
/// splits decision searches over the top-left cell; counting is always
/// single-threaded.
pub fn solve_timed(inst: &GridInstance, mode: Mode, threads: usize) -> Result<SolveReport> {
    let start = Instant::now();
    let mut report = match mode {
        Mode::Count => grid::count_report(inst)?,
        Mode::Decide if threads > 1 => parallel_decide(inst, threads)?,
        Mode::Decide => grid::solve(inst)?,
    };
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

/// Decision search with the first-cell branches shared among `threads`
/// workers. Returns the same grid as the sequential search: a SAT branch
/// cancels only the branches after it, and the earliest SAT branch wins.
pub fn parallel_decide(inst: &GridInstance, threads: usize) -> Result<SolveReport> {
    let branches = grid::first_cell_candidates(inst)?;
    let flags: Vec<AtomicBool> = branches.iter().map(|_| AtomicBool::new(false)).collect();
    let results: Vec<Mutex<Option<SolveReport>>> = branches.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let best_sat = AtomicUsize::new(usize::MAX);
    let first_error = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..threads.max(1).min(branches.len().max(1)) {
            scope.spawn(|| loop {
                let b = next.fetch_add(1, Ordering::SeqCst);
                if b >= branches.len() {
                    break;
                }
                if b > best_sat.load(Ordering::SeqCst) {
                    continue;
                }
                match grid::solve_branch(inst, branches[b], &flags[b]) {
                    Ok(Some(report)) => {
                        if report.is_sat() {
                            best_sat.fetch_min(b, Ordering::SeqCst);
                            for f in &flags[b + 1..] {
                                f.store(true, Ordering::SeqCst);
                            }
                        }
                        *results[b].lock().unwrap() = Some(report);
                    }
                    Ok(None) => {}
                    Err(e) => {
                        first_error.lock().unwrap().get_or_insert(e);
                        flags.iter().for_each(|f| f.store(true, Ordering::SeqCst));
                    }
                }
            });
        }
    });

    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    let results: Vec<Option<SolveReport>> = results.into_iter().map(|m| m.into_inner().unwrap()).collect();
    let nodes = results.iter().flatten().map(|r| r.nodes).sum();
    let winner = results.iter().flatten().find(|r| r.is_sat());
    Ok(SolveReport {
        status: if winner.is_some() { SolveStatus::Sat } else { SolveStatus::Unsat },
        grid: winner.and_then(|r| r.grid.clone()),
        count: None,
        nodes,
        elapsed: None,
    })
}

/// Exact decision solver that records wall-clock time per call.
#[derive(Debug, Clone, Copy, Default)]
pub struct TimedSolver;

impl SubSolver for TimedSolver {
    fn solve(&self, inst: &GridInstance) -> Result<SolveReport> {
        solve_timed(inst, Mode::Decide, 1)
    }
}

/// Sweeps all row families of one matroid, spreading chunks of families
/// over `threads` workers.
pub fn sweep_matroid(matroid: &Arc<MatroidOracle>, threads: usize) -> Result<SweepReport> {
    sweep::check_sweep_preconditions(matroid)?;
    let families = sweep::enumerate_row_families(matroid)?;
    if threads <= 1 {
        return sweep::sweep_families(matroid, &families);
    }
    let chunk = families.len().div_ceil(threads * 8).max(1);
    let chunks: Vec<&[RowFamily]> = families.chunks(chunk).collect();
    let next = AtomicUsize::new(0);
    let partials = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(c) = chunks.get(i) else { break };
                let r = sweep::sweep_families(matroid, c);
                partials.lock().unwrap().push(r);
            });
        }
    });
    let mut total = SweepReport { matroid: matroid.name().to_string(), ..SweepReport::default() };
    for r in partials.into_inner().unwrap() {
        total = total.merge(r?);
    }
    Ok(total)
}

/// Sweeps every catalog entry in order.
pub fn sweep_catalog(entries: &[CatalogEntry], threads: usize) -> Result<Vec<SweepReport>> {
    entries
        .iter()
        .map(|e| {
            let mut r = sweep_matroid(&e.oracle, threads)?;
            r.matroid = e.name.clone();
            Ok(r)
        })
        .collect()
}
