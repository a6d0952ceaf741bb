//! Built-in instances and seeded matroid generators.
//!
//! Named instances:
//!
//! | id              | matroid                                   | grid | expected |
//! |-----------------|-------------------------------------------|------|----------|
//! | `k4-c2`         | M(K4), rows = the three non-incident pairs | 3×2  | UNSAT    |
//! | `oxley-j`       | eight integer vectors in 4-space           | 4×2  | UNSAT    |
//! | `mcdiarmid`     | K4 plus a second copy of the edges at 4    | 3×3  | UNSAT (dependent rows) |
//! | `odd-wheel-<k>` | wheel with k−1 copies of every spoke       | k×k  | UNSAT (dependent rows) |
//! | `u39`           | U(3,9), no row constraints                 | 3×3  | SAT      |
//!
//! For the odd wheel, "k−1 copies of each spoke" is read as total spoke
//! multiplicity k−1, and row `i` pairs the copies of spoke `i` with the rim
//! edge opposite it. With k = 3 this is exactly the McDiarmid instance.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::RotaInstance;
use crate::error::{Error, Result};
use crate::grid::{GridInstance, IndependenceMode};
use crate::matroid::{BasesRep, Combinations, GraphicRep, LinearRep, MatroidOracle};

/// Redraw budget for the random generators.
const MAX_DRAWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expected {
    Sat,
    Unsat,
    /// Used as a sweep target rather than a single decision.
    Sweep,
}

#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub id: String,
    pub instance: GridInstance,
    pub expected: Expected,
    pub note: &'static str,
}

/// Names accepted by [`by_name`], with `odd-wheel-<k>` shown for k = 3, 5.
pub const BUILTIN_NAMES: &[&str] = &["k4-c2", "oxley-j", "mcdiarmid", "odd-wheel-3", "odd-wheel-5", "u39"];

pub fn by_name(name: &str) -> Result<NamedInstance> {
    match name {
        "k4-c2" => Ok(k4_c2_instance()),
        "oxley-j" => Ok(oxley_j_instance()),
        "mcdiarmid" => Ok(mcdiarmid_instance()),
        "u39" => Ok(u39_instance()),
        _ => match name.strip_prefix("odd-wheel-").map(str::parse::<usize>) {
            Some(Ok(k)) => odd_wheel_instance(k),
            _ => Err(Error::InvalidParameter(format!("unknown instance `{name}`"))),
        },
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// M(K4) on vertices 1..4 (stored as 0..3); elements 12, 13, 14, 23, 24, 34.
pub fn k4_graph() -> MatroidOracle {
    let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    MatroidOracle::graphic(GraphicRep::new(4, edges).expect("valid K4"))
        .with_name("M(K4)")
        .with_labels(labels(&["12", "13", "14", "23", "24", "34"]))
        .expect("six labels")
}

pub fn k4_c2_instance() -> NamedInstance {
    let rows = vec![vec![0, 5], vec![1, 4], vec![2, 3]];
    let instance = GridInstance::new(Arc::new(k4_graph()), 3, 2, rows, IndependenceMode::Required)
        .expect("valid K4 rows");
    NamedInstance {
        id: "k4-c2".into(),
        instance,
        expected: Expected::Unsat,
        note: "M(K4) with the three pairs of non-incident edges as rows; refutes the two-column version",
    }
}

/// The eight vectors, listed row pair by row pair.
pub const OXLEY_J_VECTORS: [[i64; 4]; 8] = [
    [-2, 3, 0, 1],
    [0, 0, 1, 1],
    [0, 2, 0, 1],
    [1, 0, 3, 1],
    [1, 0, 0, 1],
    [0, 1, 2, 1],
    [0, 1, 0, 1],
    [4, 0, 0, 1],
];

pub fn oxley_j_matroid() -> MatroidOracle {
    let cols: Vec<Vec<i64>> = OXLEY_J_VECTORS.iter().map(|v| v.to_vec()).collect();
    let names = OXLEY_J_VECTORS
        .iter()
        .map(|v| format!("({},{},{},{})", v[0], v[1], v[2], v[3]))
        .collect();
    MatroidOracle::linear(LinearRep::from_integers(4, &cols).expect("4-dimensional columns"))
        .with_name("J")
        .with_labels(names)
        .expect("eight labels")
}

pub fn oxley_j_instance() -> NamedInstance {
    let rows = vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
    let instance = GridInstance::new(Arc::new(oxley_j_matroid()), 4, 2, rows, IndependenceMode::Required)
        .expect("valid J rows");
    NamedInstance {
        id: "oxley-j".into(),
        instance,
        expected: Expected::Unsat,
        note: "rank-4 vector matroid J with four prescribed pairs; second two-column counterexample",
    }
}

/// K4 plus parallel copies 14', 24', 34'; elements
/// 12, 13, 14, 23, 24, 34, 14', 24', 34'.
pub fn mcdiarmid_graph() -> MatroidOracle {
    let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 3), (1, 3), (2, 3)];
    MatroidOracle::graphic(GraphicRep::new(4, edges).expect("valid multigraph"))
        .with_name("K4+3")
        .with_labels(labels(&["12", "13", "14", "23", "24", "34", "14'", "24'", "34'"]))
        .expect("nine labels")
}

pub fn mcdiarmid_instance() -> NamedInstance {
    let rows = vec![vec![2, 6, 3], vec![4, 7, 1], vec![5, 8, 0]];
    let instance = GridInstance::new(Arc::new(mcdiarmid_graph()), 3, 3, rows, IndependenceMode::NotRequired)
        .expect("valid rows");
    NamedInstance {
        id: "mcdiarmid".into(),
        instance,
        expected: Expected::Unsat,
        note: "dependent rows {14,14',23}, {24,24',13}, {34,34',12}; refutes the version without independent rows",
    }
}

/// Wheel on rim vertices `0..k` and hub `k`. Elements `0..k` are the rim
/// edges `{i, i+1 mod k}`; spoke `i` copy `c` is element
/// `k + i·multiplicity + c`.
pub fn multi_wheel(k: usize, spoke_multiplicity: usize) -> Result<MatroidOracle> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("a wheel needs at least 3 spokes, got {k}")));
    }
    let hub = k;
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let mut names: Vec<String> = (0..k).map(|i| format!("r{i}")).collect();
    for i in 0..k {
        for c in 0..spoke_multiplicity {
            edges.push((i, hub));
            names.push(format!("s{i}.{c}"));
        }
    }
    MatroidOracle::graphic(GraphicRep::new(k + 1, edges)?)
        .with_name(format!("W{k}x{spoke_multiplicity}"))
        .with_labels(names)
}

pub fn odd_wheel_instance(k: usize) -> Result<NamedInstance> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("odd wheel needs odd k >= 3, got {k}")));
    }
    let copies = k - 1;
    let matroid = multi_wheel(k, copies)?;
    let rows = (0..k)
        .map(|i| {
            let mut row: Vec<usize> = (0..copies).map(|c| k + i * copies + c).collect();
            row.push((i + (k - 1) / 2) % k);
            row
        })
        .collect();
    let instance = GridInstance::new(Arc::new(matroid), k, k, rows, IndependenceMode::NotRequired)?;
    Ok(NamedInstance {
        id: format!("odd-wheel-{k}"),
        instance,
        expected: Expected::Unsat,
        note: "spoke copies plus the opposite rim edge in each row; rows are dependent",
    })
}

pub fn uniform_matroid(rank: usize, size: usize) -> MatroidOracle {
    assert!(rank <= size, "U({rank},{size}) needs rank <= size");
    let family: Vec<Vec<usize>> = Combinations::new(size, rank).collect();
    let rep = BasesRep::new(rank, size, family).expect("combinations are distinct");
    MatroidOracle::bases(size, rep)
        .expect("indices in range")
        .with_name(format!("U({rank},{size})"))
}

pub fn u39_instance() -> NamedInstance {
    let instance = GridInstance::new(
        Arc::new(uniform_matroid(3, 9)),
        3,
        3,
        vec![vec![], vec![], vec![]],
        IndependenceMode::Required,
    )
    .expect("valid");
    NamedInstance {
        id: "u39".into(),
        instance,
        expected: Expected::Sat,
        note: "uniform matroid U(3,9) with no prescribed elements",
    }
}

/// The bases `{0,1,2}, {3,4,5}, {6,7,8}` of `U(3,9)` as a Rota instance.
pub fn u39_rota() -> RotaInstance {
    RotaInstance::new(Arc::new(uniform_matroid(3, 9)), vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]])
        .expect("blocks of U(3,9) are bases")
}

/// Maps each edge of `a` to a distinct edge of `b` with the same endpoints
/// under `vertex_map`, preferring the lowest unused index of `b`.
pub fn edge_bijection(a: &GraphicRep, b: &GraphicRep, vertex_map: &[usize]) -> Option<Vec<usize>> {
    if a.edges().len() != b.edges().len() || vertex_map.len() != a.vertices() {
        return None;
    }
    let key = |(u, w): (usize, usize)| (u.min(w), u.max(w));
    let mut used = vec![false; b.edges().len()];
    a.edges()
        .iter()
        .map(|&(u, w)| {
            let target = key((vertex_map[u], vertex_map[w]));
            let j = (0..b.edges().len()).find(|&j| !used[j] && key(b.edges()[j]) == target)?;
            used[j] = true;
            Some(j)
        })
        .collect()
}

/// A generated matroid with its advertised basis partition.
#[derive(Debug, Clone)]
pub struct Generated {
    pub oracle: MatroidOracle,
    pub partition: Vec<Vec<usize>>,
}

/// Rank-`rank` vector matroid on `size` elements with integer entries in
/// `-bound..=bound`, redrawn until it splits into `size / rank` disjoint
/// bases.
pub fn random_linear_matroid(rank: usize, size: usize, bound: i64, seed: u64) -> Result<Generated> {
    if rank == 0 || !size.is_multiple_of(rank) || bound < 1 {
        return Err(Error::InvalidParameter(format!(
            "need rank > 0 dividing size and bound >= 1 (rank {rank}, size {size}, bound {bound})"
        )));
    }
    let parts = size / rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let cols: Vec<Vec<i64>> =
            (0..size).map(|_| (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let oracle = MatroidOracle::linear(LinearRep::from_integers(rank, &cols)?);
        if oracle.full_rank() != rank {
            continue;
        }
        if let Some(partition) = oracle.find_basis_partition(parts) {
            return Ok(Generated { oracle: oracle.with_name(format!("linear-r{rank}-m{size}-s{seed}")), partition });
        }
    }
    Err(Error::InvalidParameter("no admissible matrix within the redraw budget".into()))
}

/// Loopless random multigraph on `vertices` vertices with `edges` edges,
/// redrawn until it splits into `edges / (vertices − 1)` spanning trees.
pub fn random_graphic_matroid(vertices: usize, edges: usize, seed: u64) -> Result<Generated> {
    if vertices < 2 || !edges.is_multiple_of(vertices - 1) {
        return Err(Error::InvalidParameter(format!(
            "{edges} edges cannot split into spanning trees on {vertices} vertices"
        )));
    }
    let parts = edges / (vertices - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let list: Vec<(usize, usize)> = (0..edges)
            .map(|_| {
                let u = rng.gen_range(0..vertices);
                let mut w = rng.gen_range(0..vertices - 1);
                if w >= u {
                    w += 1;
                }
                (u.min(w), u.max(w))
            })
            .collect();
        let oracle = MatroidOracle::graphic(GraphicRep::new(vertices, list)?);
        if let Some(partition) = oracle.find_basis_partition(parts) {
            return Ok(Generated {
                oracle: oracle.with_name(format!("graphic-v{vertices}-e{edges}-s{seed}")),
                partition,
            });
        }
    }
    Err(Error::InvalidParameter("no admissible multigraph within the redraw budget".into()))
}

/// Random vector matroid of rank `n` on `n²` elements in which each `B_i`
/// is drawn (entries in `-1..=1`) until it is a basis, then the element
/// order is shuffled.
pub fn random_rota_instance(n: usize, seed: u64) -> Result<RotaInstance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut found = None;
        for _ in 0..MAX_DRAWS {
            let cols: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            let probe = MatroidOracle::linear(LinearRep::from_integers(n, &cols)?);
            if probe.full_rank() == n {
                found = Some(cols);
                break;
            }
        }
        blocks.push(found.ok_or_else(|| Error::InvalidParameter("basis redraw budget exhausted".into()))?);
    }
    let mut positions: Vec<usize> = (0..n * n).collect();
    positions.shuffle(&mut rng);
    let mut columns = vec![Vec::new(); n * n];
    let mut bases = vec![Vec::with_capacity(n); n];
    for (i, block) in blocks.into_iter().enumerate() {
        for (c, col) in block.into_iter().enumerate() {
            let p = positions[i * n + c];
            columns[p] = col;
            bases[i].push(p);
        }
    }
    let oracle = MatroidOracle::linear(LinearRep::from_integers(n, &columns)?).with_name(format!("rota-n{n}-s{seed}"));
    RotaInstance::new(Arc::new(oracle), bases)
}

/// One matroid of the rank-3, nine-element sweep catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub oracle: Arc<MatroidOracle>,
    pub partition: Vec<Vec<usize>>,
}

/// `U(3,9)`, then `linear` seeded vector matroids (entries alternately in
/// `-1..=1` and `-2..=2`), then `graphic` seeded 4-vertex, 9-edge
/// multigraphs.
pub fn catalog(seed: u64, linear: usize, graphic: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::with_capacity(1 + linear + graphic);
    out.push(CatalogEntry {
        name: "U(3,9)".into(),
        oracle: Arc::new(uniform_matroid(3, 9)),
        partition: vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
    });
    for i in 0..linear {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let g = random_linear_matroid(3, 9, 1 + (i as i64 % 2), s)?;
        out.push(CatalogEntry { name: format!("linear-{i}"), oracle: Arc::new(g.oracle.with_name(format!("linear-{i}"))), partition: g.partition });
    }
    for i in 0..graphic {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(500_000 + i as u64);
        let g = random_graphic_matroid(4, 9, s)?;
        out.push(CatalogEntry { name: format!("graphic-{i}"), oracle: Arc::new(g.oracle.with_name(format!("graphic-{i}"))), partition: g.partition });
    }
    Ok(out)
}
