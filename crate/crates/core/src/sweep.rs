//! Row-family enumeration and the rank-3, nine-element verification sweep.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::grid::{self, GridInstance, IndependenceMode};
use crate::matroid::MatroidOracle;
use crate::tracker::Tracker;

/// An ordered tuple `(I_0, …, I_{n−1})` of pairwise-disjoint sorted sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowFamily(pub Vec<Vec<usize>>);

/// Calls `f` on every ordered family of `rows` pairwise-disjoint sets of size
/// at most `cap`, independent when `require_independent` is set. Each element
/// is assigned in index order to no row or to one of the rows; the empty
/// family comes first.
pub fn for_each_row_family<F>(matroid: &MatroidOracle, rows: usize, cap: usize, require_independent: bool, mut f: F)
where
    F: FnMut(&[Vec<usize>]),
{
    let mut sets = vec![Vec::new(); rows];
    let mut trackers: Vec<Tracker<'_>> = (0..rows).map(|_| Tracker::new(matroid)).collect();
    family_rec(0, matroid.size(), cap, require_independent, &mut sets, &mut trackers, &mut f);
}

fn family_rec<F: FnMut(&[Vec<usize>])>(
    e: usize,
    m: usize,
    cap: usize,
    independent: bool,
    sets: &mut [Vec<usize>],
    trackers: &mut [Tracker<'_>],
    f: &mut F,
) {
    if e == m {
        f(sets);
        return;
    }
    family_rec(e + 1, m, cap, independent, sets, trackers, f);
    for r in 0..sets.len() {
        if sets[r].len() == cap {
            continue;
        }
        if independent && !trackers[r].try_push(e) {
            continue;
        }
        sets[r].push(e);
        family_rec(e + 1, m, cap, independent, sets, trackers, f);
        sets[r].pop();
        if independent {
            trackers[r].pop();
        }
    }
}

fn check_rank3_nine(matroid: &MatroidOracle) -> Result<()> {
    if matroid.size() != 9 {
        return Err(Error::InvalidParameter(format!(
            "sweep needs a nine-element matroid, got {} elements",
            matroid.size()
        )));
    }
    if matroid.full_rank() != 3 {
        return Err(Error::InvalidParameter(format!("sweep needs rank 3, got {}", matroid.full_rank())));
    }
    Ok(())
}

/// Every family of three disjoint independent sets of size at most 3 in a
/// rank-3 matroid on nine elements.
pub fn enumerate_row_families(matroid: &MatroidOracle) -> Result<Vec<RowFamily>> {
    check_rank3_nine(matroid)?;
    let mut out = Vec::new();
    for_each_row_family(matroid, 3, 3, true, |sets| out.push(RowFamily(sets.to_vec())));
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub matroid: String,
    pub families: u64,
    pub sat: u64,
    pub unsat: u64,
    /// Every family for which no grid exists, sorted.
    pub unsat_examples: Vec<RowFamily>,
}

impl SweepReport {
    /// Order-independent combination of partial reports for one matroid.
    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.families += other.families;
        self.sat += other.sat;
        self.unsat += other.unsat;
        self.unsat_examples.extend(other.unsat_examples);
        self.unsat_examples.sort();
        if self.matroid.is_empty() {
            self.matroid = other.matroid;
        }
        self
    }
}

/// Checks that the matroid is rank 3 on nine elements and splits into three
/// disjoint bases.
pub fn check_sweep_preconditions(matroid: &MatroidOracle) -> Result<()> {
    check_rank3_nine(matroid)?;
    if matroid.find_basis_partition(3).is_none() {
        return Err(Error::InvalidParameter("matroid is not a disjoint union of three bases".into()));
    }
    Ok(())
}

/// Solves the 3×3 instance for each family in `families`.
pub fn sweep_families(matroid: &Arc<MatroidOracle>, families: &[RowFamily]) -> Result<SweepReport> {
    let mut report = SweepReport { matroid: String::from(matroid.name()), ..SweepReport::default() };
    for fam in families {
        let inst = GridInstance::new(matroid.clone(), 3, 3, fam.0.clone(), IndependenceMode::Required)?;
        report.families += 1;
        if grid::solve(&inst)?.is_sat() {
            report.sat += 1;
        } else {
            report.unsat += 1;
            report.unsat_examples.push(fam.clone());
        }
    }
    report.unsat_examples.sort();
    Ok(report)
}

/// Runs the solver on every row family of a rank-3, nine-element matroid
/// that is a disjoint union of three bases.
pub fn verify_c3_for_matroid(matroid: &Arc<MatroidOracle>) -> Result<SweepReport> {
    check_sweep_preconditions(matroid)?;
    let families = enumerate_row_families(matroid)?;
    sweep_families(matroid, &families)
}
