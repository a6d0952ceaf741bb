//! Ground sets, matroid representations and exact rank oracles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::IntColumns;
use crate::tracker::Tracker;

/// Largest ground set [`MatroidOracle::enumerate_bases`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Rank memoisation is keyed by a `u64` bitmask, so it only applies up to
/// this many elements.
const CACHE_MAX_ELEMENTS: usize = 64;
const CACHE_MAX_ENTRIES: usize = 1 << 18;

/// Elements `0..size`, optionally with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Self {
        GroundSet { size, labels: None }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of an element, falling back to its index.
    pub fn label(&self, element: usize) -> String {
        match &self.labels {
            Some(l) => l[element].clone(),
            None => element.to_string(),
        }
    }
}

/// Exact rational vectors in `dim`-space, one per element.
#[derive(Clone)]
pub struct LinearRep {
    dim: usize,
    columns: Vec<Vec<BigRational>>,
    ints: IntColumns,
}

impl LinearRep {
    pub fn new(dim: usize, columns: Vec<Vec<BigRational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be positive".into()));
        }
        if let Some(bad) = columns.iter().position(|c| c.len() != dim) {
            return Err(Error::InvalidRepresentation(format!(
                "column {bad} has length {} but dimension is {dim}",
                columns[bad].len()
            )));
        }
        let ints = IntColumns::from_rational(&columns);
        Ok(LinearRep { dim, columns, ints })
    }

    /// Convenience constructor from integer columns.
    pub fn from_integers(dim: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::new(dim, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<BigRational>] {
        &self.columns
    }

    pub(crate) fn ints(&self) -> &IntColumns {
        &self.ints
    }
}

// `ints` is derived from `columns`.
impl PartialEq for LinearRep {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.columns == other.columns
    }
}

impl Eq for LinearRep {}

impl fmt::Debug for LinearRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearRep")
            .field("dim", &self.dim)
            .field("columns", &self.columns)
            .finish()
    }
}

/// A multigraph; edge `e` is element `e`. Parallel edges and self-loops are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicRep {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphicRep {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidRepresentation("vertex count must be positive".into()));
        }
        if let Some(&(u, w)) = edges.iter().find(|&&(u, w)| u >= vertices || w >= vertices) {
            return Err(Error::InvalidRepresentation(format!(
                "edge ({u}, {w}) references a vertex outside 0..{vertices}"
            )));
        }
        Ok(GraphicRep { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// An explicit family of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasesRep {
    rank: usize,
    bases: Vec<Vec<usize>>,
}

impl BasesRep {
    /// Members are sorted; the family is sorted and must not contain
    /// duplicates.
    pub fn new(rank: usize, ground_size: usize, family: Vec<Vec<usize>>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut bases = Vec::with_capacity(family.len());
        for mut b in family {
            b.sort_unstable();
            if b.len() != rank {
                return Err(Error::RaggedFamily);
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidRepresentation(format!("basis {b:?} repeats an element")));
            }
            if let Some(&e) = b.iter().find(|&&e| e >= ground_size) {
                return Err(Error::ElementOutOfRange { index: e, size: ground_size });
            }
            bases.push(b);
        }
        bases.sort();
        if let Some(w) = bases.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRepresentation(format!("duplicate basis {:?}", w[0])));
        }
        Ok(BasesRep { rank, bases })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Linear(LinearRep),
    Graphic(GraphicRep),
    Bases(BasesRep),
}

/// Immutable rank oracle over one of the supported representations.
///
/// Rank answers for ground sets of at most 64 elements are memoised behind a
/// spin lock, so a single oracle can be shared across solver threads.
pub struct MatroidOracle {
    name: String,
    ground: GroundSet,
    rep: Representation,
    cache: spin::Mutex<BTreeMap<u64, u32>>,
}

impl Clone for MatroidOracle {
    fn clone(&self) -> Self {
        MatroidOracle {
            name: self.name.clone(),
            ground: self.ground.clone(),
            rep: self.rep.clone(),
            cache: spin::Mutex::new(BTreeMap::new()),
        }
    }
}

impl fmt::Debug for MatroidOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatroidOracle")
            .field("name", &self.name)
            .field("ground", &self.ground)
            .field("rep", &self.rep)
            .finish()
    }
}

/// A restriction `M|S` together with the map from its element indices back
/// to the parent's.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub oracle: MatroidOracle,
    pub to_parent: Vec<usize>,
}

/// A witness that a family violates the basis-exchange axiom: removing `x`
/// from `a` cannot be repaired by any element of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub x: usize,
}

impl MatroidOracle {
    pub fn new(ground_size: usize, rep: Representation) -> Result<Self> {
        let implied = match &rep {
            Representation::Linear(l) => l.columns.len(),
            Representation::Graphic(g) => g.edges.len(),
            Representation::Bases(b) => {
                // BasesRep::new has checked indices against its own ground size,
                // which may differ from this one.
                if let Some(&e) = b.bases.iter().flatten().find(|&&e| e >= ground_size) {
                    return Err(Error::ElementOutOfRange { index: e, size: ground_size });
                }
                ground_size
            }
        };
        if implied != ground_size {
            return Err(Error::InvalidRepresentation(format!(
                "representation describes {implied} elements but ground set has {ground_size}"
            )));
        }
        Ok(MatroidOracle {
            name: String::new(),
            ground: GroundSet::new(ground_size),
            rep,
            cache: spin::Mutex::new(BTreeMap::new()),
        })
    }

    pub fn linear(rep: LinearRep) -> Self {
        let m = rep.columns.len();
        Self::new(m, Representation::Linear(rep)).expect("column count defines the ground set")
    }

    pub fn graphic(rep: GraphicRep) -> Self {
        let m = rep.edges.len();
        Self::new(m, Representation::Graphic(rep)).expect("edge count defines the ground set")
    }

    pub fn bases(ground_size: usize, rep: BasesRep) -> Result<Self> {
        Self::new(ground_size, Representation::Bases(rep))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.ground.size {
            return Err(Error::InvalidRepresentation(format!(
                "{} labels for {} elements",
                labels.len(),
                self.ground.size
            )));
        }
        self.ground.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// Sorted, deduplicated copy of `elements`, after range checking.
    pub fn normalize(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut v = elements.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&e) = v.last() {
            if e >= self.ground.size {
                return Err(Error::ElementOutOfRange { index: e, size: self.ground.size });
            }
        }
        Ok(v)
    }

    pub fn rank(&self, elements: &[usize]) -> Result<usize> {
        let set = self.normalize(elements)?;
        Ok(self.rank_normalized(&set))
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ground.size).collect();
        self.rank_normalized(&all)
    }

    /// `set` must be sorted, deduplicated and in range.
    pub(crate) fn rank_normalized(&self, set: &[usize]) -> usize {
        if set.is_empty() {
            return 0;
        }
        let key = (self.ground.size <= CACHE_MAX_ELEMENTS)
            .then(|| set.iter().fold(0u64, |acc, &e| acc | (1u64 << e)));
        if let Some(key) = key {
            if let Some(&r) = self.cache.lock().get(&key) {
                return r as usize;
            }
        }
        let r = self.compute_rank(set);
        if let Some(key) = key {
            let mut cache = self.cache.lock();
            if cache.len() < CACHE_MAX_ENTRIES {
                cache.insert(key, r as u32);
            }
        }
        r
    }

    fn compute_rank(&self, set: &[usize]) -> usize {
        match &self.rep {
            Representation::Linear(l) => l.ints.rank_of(set),
            Representation::Graphic(g) => {
                let mut uf = UnionFind::new(g.vertices);
                set.iter().filter(|&&e| uf.union(g.edges[e].0, g.edges[e].1)).count()
            }
            // The largest independent subset of A is A ∩ B for some basis B,
            // and every A ∩ B is independent.
            Representation::Bases(b) => b
                .bases
                .iter()
                .map(|basis| sorted_intersection_len(basis, set))
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_independent(&self, elements: &[usize]) -> Result<bool> {
        let set = self.normalize(elements)?;
        Ok(set.len() == elements.len() && self.rank_normalized(&set) == set.len())
    }

    pub fn is_basis(&self, elements: &[usize]) -> Result<bool> {
        Ok(self.is_independent(elements)? && elements.len() == self.full_rank())
    }

    /// `{x : rank(A ∪ {x}) = rank(A)}`.
    pub fn closure(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let set = self.normalize(elements)?;
        let base = self.rank_normalized(&set);
        let mut out = Vec::new();
        for x in 0..self.ground.size {
            if set.binary_search(&x).is_ok() {
                out.push(x);
                continue;
            }
            let mut with = set.clone();
            let pos = with.binary_search(&x).unwrap_err();
            with.insert(pos, x);
            if self.rank_normalized(&with) == base {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub fn loops(&self) -> Vec<usize> {
        self.closure(&[]).expect("empty set is always in range")
    }

    /// `M|S`, re-indexed so element `i` of the result is `S[i]` (in
    /// increasing order).
    pub fn restrict(&self, subset: &[usize]) -> Result<Restriction> {
        let s = self.normalize(subset)?;
        let rep = match &self.rep {
            Representation::Linear(l) => {
                let cols = s.iter().map(|&e| l.columns[e].clone()).collect();
                Representation::Linear(LinearRep::new(l.dim, cols)?)
            }
            Representation::Graphic(g) => {
                let edges = s.iter().map(|&e| g.edges[e]).collect();
                Representation::Graphic(GraphicRep::new(g.vertices, edges)?)
            }
            Representation::Bases(b) => {
                let r = self.rank_normalized(&s);
                let index_of: BTreeMap<usize, usize> =
                    s.iter().enumerate().map(|(i, &e)| (e, i)).collect();
                let family: BTreeSet<Vec<usize>> = b
                    .bases
                    .iter()
                    .map(|basis| {
                        basis.iter().filter_map(|e| index_of.get(e).copied()).collect::<Vec<_>>()
                    })
                    .filter(|v| v.len() == r)
                    .collect();
                Representation::Bases(BasesRep::new(r, s.len(), family.into_iter().collect())?)
            }
        };
        let mut oracle = MatroidOracle::new(s.len(), rep)?.with_name(format!("{}|S", self.name));
        if let Some(labels) = &self.ground.labels {
            oracle.ground.labels = Some(s.iter().map(|&e| labels[e].clone()).collect());
        }
        Ok(Restriction { oracle, to_parent: s })
    }

    pub fn enumerate_bases(&self) -> Result<Vec<Vec<usize>>> {
        self.enumerate_bases_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Every `r`-subset of rank `r`, in lexicographic order.
    pub fn enumerate_bases_capped(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let m = self.ground.size;
        if m > cap {
            return Err(Error::TooLarge { size: m, cap });
        }
        let r = self.full_rank();
        let mut out = Vec::new();
        for combo in Combinations::new(m, r) {
            if self.rank_normalized(&combo) == r {
                out.push(combo);
            }
        }
        Ok(out)
    }

    /// Parts are pairwise disjoint, cover the ground set, and are each bases.
    pub fn is_disjoint_union_of_bases(&self, parts: &[Vec<usize>]) -> bool {
        let mut seen = alloc::vec![false; self.ground.size];
        for part in parts {
            for &e in part {
                if e >= self.ground.size || seen[e] {
                    return false;
                }
                seen[e] = true;
            }
        }
        seen.iter().all(|&s| s) && parts.iter().all(|p| self.is_basis(p).unwrap_or(false))
    }

    /// Searches for a partition of the ground set into `k` disjoint bases.
    ///
    /// Elements are assigned in index order; a new part is opened only after
    /// all earlier parts are non-empty, so part permutations are not revisited.
    pub fn find_basis_partition(&self, k: usize) -> Option<Vec<Vec<usize>>> {
        let m = self.ground.size;
        let r = self.full_rank();
        if k == 0 {
            return (m == 0).then(Vec::new);
        }
        if r * k != m {
            return None;
        }
        if r == 0 {
            let mut parts = alloc::vec![Vec::new(); k];
            parts[0] = (0..m).collect();
            return (m == 0).then_some(parts);
        }
        let mut trackers: Vec<Tracker<'_>> = (0..k).map(|_| Tracker::new(self)).collect();
        let mut assignment = alloc::vec![0usize; m];
        if partition_rec(0, m, r, &mut trackers, &mut assignment, 0) {
            let mut parts = alloc::vec![Vec::new(); k];
            for (e, &p) in assignment.iter().enumerate() {
                parts[p].push(e);
            }
            Some(parts)
        } else {
            None
        }
    }
}

fn partition_rec(
    e: usize,
    m: usize,
    r: usize,
    trackers: &mut [Tracker<'_>],
    assignment: &mut [usize],
    opened: usize,
) -> bool {
    if e == m {
        return true;
    }
    let limit = (opened + 1).min(trackers.len());
    for p in 0..limit {
        if trackers[p].len() == r || !trackers[p].try_push(e) {
            continue;
        }
        assignment[e] = p;
        if partition_rec(e + 1, m, r, trackers, assignment, opened.max(p + 1)) {
            return true;
        }
        trackers[p].pop();
    }
    false
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Checks the basis-exchange axiom: for all `A, B` in the family and every
/// `x ∈ A∖B` some `y ∈ B∖A` has `(A∖{x}) ∪ {y}` in the family.
pub fn verify_basis_axioms(family: &[Vec<usize>]) -> Result<bool> {
    Ok(find_exchange_violation(family)?.is_none())
}

pub fn find_exchange_violation(family: &[Vec<usize>]) -> Result<Option<ExchangeViolation>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if family.iter().any(|b| b.len() != first.len()) {
        return Err(Error::RaggedFamily);
    }
    let members: BTreeSet<Vec<usize>> = family
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    for a in &members {
        for b in &members {
            for &x in a.iter().filter(|x| b.binary_search(x).is_err()) {
                let repaired = b.iter().filter(|y| a.binary_search(y).is_err()).any(|&y| {
                    let mut c: Vec<usize> = a.iter().copied().filter(|&e| e != x).collect();
                    c.push(y);
                    c.sort_unstable();
                    members.contains(&c)
                });
                if !repaired {
                    return Ok(Some(ExchangeViolation { a: a.clone(), b: b.clone(), x }));
                }
            }
        }
    }
    Ok(None)
}

/// Lexicographic `r`-subsets of `0..m`.
pub(crate) struct Combinations {
    m: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(m: usize, r: usize) -> Self {
        Combinations { m, current: (r <= m).then(|| (0..r).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let r = cur.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.m - r + i {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Plain union-find for graphic rank queries.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Builds a rational from a numerator and positive denominator.
pub fn rational(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(num.into(), den.into())
}
