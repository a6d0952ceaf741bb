//! Reference computations that share no code with the library: plain
//! rational elimination, DFS component counts and literal basis-family
//! lookups.
#![allow(dead_code)]

use basisgrid_core::matroid::{self, MatroidOracle, Representation};
use num_rational::BigRational;
use num_traits::Zero;

pub fn members(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|&e| mask >> e & 1 == 1).collect()
}

pub fn rational_rank(columns: &[Vec<BigRational>]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let dim = columns[0].len();
    // rows = coordinates, one column per vector
    let mut a: Vec<Vec<BigRational>> = (0..dim).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(p) = (rank..dim).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn graph_rank(vertices: usize, edges: &[(usize, usize)], set: &[usize]) -> usize {
    let mut adj = vec![Vec::new(); vertices];
    for &e in set {
        let (u, w) = edges[e];
        adj[u].push(w);
        adj[w].push(u);
    }
    let mut seen = vec![false; vertices];
    let mut components = 0;
    for s in 0..vertices {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    vertices - components
}

/// Largest subset of `set` contained in a member of `family`.
pub fn family_rank(family: &[Vec<usize>], set: &[usize]) -> usize {
    let k = set.len();
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let sub: Vec<usize> = members(mask, k).into_iter().map(|i| set[i]).collect();
        if sub.len() > best && family.iter().any(|b| sub.iter().all(|e| b.contains(e))) {
            best = sub.len();
        }
    }
    best
}

pub fn reference_rank(m: &MatroidOracle, set: &[usize]) -> usize {
    match m.representation() {
        Representation::Linear(l) => {
            let cols: Vec<Vec<BigRational>> = set.iter().map(|&e| l.columns()[e].clone()).collect();
            rational_rank(&cols)
        }
        Representation::Graphic(g) => graph_rank(g.vertices(), g.edges(), set),
        Representation::Bases(b) => family_rank(b.bases(), set),
    }
}

pub fn reference_is_basis(m: &MatroidOracle, set: &[usize], rank: usize) -> bool {
    set.len() == rank && reference_rank(m, set) == rank
}

/// Rank of every subset, indexed by bitmask.
pub fn rank_table(m: &MatroidOracle) -> Vec<usize> {
    let n = m.size();
    (0u32..(1 << n)).map(|mask| m.rank(&members(mask, n)).unwrap()).collect()
}

/// Every `r`-subset of `0..m` with reference rank `r`.
pub fn reference_bases(m: &MatroidOracle) -> Vec<Vec<usize>> {
    let n = m.size();
    let r = reference_rank(m, &(0..n).collect::<Vec<_>>());
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize == r)
        .map(|mask| members(mask, n))
        .filter(|s| reference_rank(m, s) == r)
        .collect();
    out.sort();
    out
}

pub fn int_linear(dim: usize, cols: &[Vec<i64>]) -> MatroidOracle {
    MatroidOracle::linear(matroid::LinearRep::from_integers(dim, cols).unwrap())
}
