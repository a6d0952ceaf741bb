//! Incremental independence tests used inside the searches.
//!
//! A tracker holds a stack of elements that is independent in the matroid;
//! `try_push` adds an element only if independence is preserved and `pop`
//! undoes the most recent successful push.

use alloc::vec::Vec;

use crate::exact::{eliminate_i128, normalize_i128};
use crate::matroid::{MatroidOracle, Representation};

pub(crate) enum Tracker<'a> {
    Graphic(GraphicTracker<'a>),
    Linear(LinearTracker<'a>),
    Bases(BasesTracker<'a>),
}

impl<'a> Tracker<'a> {
    pub(crate) fn new(oracle: &'a MatroidOracle) -> Self {
        match oracle.representation() {
            Representation::Graphic(g) => Tracker::Graphic(GraphicTracker {
                edges: g.edges(),
                parent: (0..g.vertices()).collect(),
                size: alloc::vec![1; g.vertices()],
                unions: Vec::new(),
            }),
            Representation::Linear(l) => Tracker::Linear(LinearTracker {
                oracle,
                small: l.ints().small.as_deref(),
                echelon: Vec::new(),
                elements: Vec::new(),
                fallback_from: None,
            }),
            Representation::Bases(b) => Tracker::Bases(BasesTracker {
                bases: b.bases(),
                alive: alloc::vec![(0..b.bases().len() as u32).collect()],
                elements: Vec::new(),
            }),
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Tracker::Graphic(t) => t.unions.len(),
            Tracker::Linear(t) => t.elements.len(),
            Tracker::Bases(t) => t.elements.len(),
        }
    }

    pub(crate) fn try_push(&mut self, element: usize) -> bool {
        match self {
            Tracker::Graphic(t) => t.try_push(element),
            Tracker::Linear(t) => t.try_push(element),
            Tracker::Bases(t) => t.try_push(element),
        }
    }

    pub(crate) fn pop(&mut self) {
        match self {
            Tracker::Graphic(t) => t.pop(),
            Tracker::Linear(t) => t.pop(),
            Tracker::Bases(t) => t.pop(),
        }
    }
}

/// Union-find with union by size and no path compression, so unions can be
/// rolled back.
pub(crate) struct GraphicTracker<'a> {
    edges: &'a [(usize, usize)],
    parent: Vec<usize>,
    size: Vec<usize>,
    unions: Vec<(usize, usize)>,
}

impl GraphicTracker<'_> {
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn try_push(&mut self, element: usize) -> bool {
        let (u, w) = self.edges[element];
        let (mut a, mut b) = (self.find(u), self.find(w));
        if a == b {
            return false;
        }
        if self.size[a] > self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[a] = b;
        self.size[b] += self.size[a];
        self.unions.push((a, b));
        true
    }

    fn pop(&mut self) {
        let (a, b) = self.unions.pop().expect("pop on empty tracker");
        self.parent[a] = a;
        self.size[b] -= self.size[a];
    }
}

/// Row echelon form over the integers. `echelon[i]` is the reduced image of
/// `elements[i]` for every `i` below `fallback_from`; past that point an
/// intermediate overflowed and independence is decided by the oracle's
/// arbitrary-precision rank instead.
pub(crate) struct LinearTracker<'a> {
    oracle: &'a MatroidOracle,
    small: Option<&'a [Vec<i64>]>,
    echelon: Vec<(usize, Vec<i128>)>,
    elements: Vec<usize>,
    fallback_from: Option<usize>,
}

impl LinearTracker<'_> {
    fn reduce(&self, element: usize) -> Option<Vec<i128>> {
        let small = self.small?;
        let mut v: Vec<i128> = small[element].iter().map(|&x| x as i128).collect();
        normalize_i128(&mut v);
        for (pivot, row) in &self.echelon {
            eliminate_i128(&mut v, row, *pivot)?;
        }
        Some(v)
    }

    fn try_push(&mut self, element: usize) -> bool {
        if self.fallback_from.is_none() {
            if let Some(v) = self.reduce(element) {
                return match v.iter().position(|&x| x != 0) {
                    Some(pivot) => {
                        self.echelon.push((pivot, v));
                        self.elements.push(element);
                        true
                    }
                    None => false,
                };
            }
        }
        let mut set = self.elements.clone();
        set.push(element);
        set.sort_unstable();
        if set.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if self.oracle.rank_normalized(&set) == set.len() {
            if self.fallback_from.is_none() {
                self.fallback_from = Some(self.elements.len());
            }
            self.elements.push(element);
            true
        } else {
            false
        }
    }

    fn pop(&mut self) {
        self.elements.pop().expect("pop on empty tracker");
        if self.echelon.len() > self.elements.len() {
            self.echelon.pop();
        }
        if self.fallback_from.is_some_and(|f| self.elements.len() <= f) {
            self.fallback_from = None;
        }
    }
}

/// Keeps, for each stack depth, the indices of bases containing the stack.
pub(crate) struct BasesTracker<'a> {
    bases: &'a [Vec<usize>],
    alive: Vec<Vec<u32>>,
    elements: Vec<usize>,
}

impl BasesTracker<'_> {
    fn try_push(&mut self, element: usize) -> bool {
        if self.elements.contains(&element) {
            return false;
        }
        let current = self.alive.last().expect("root level always present");
        let next: Vec<u32> = current
            .iter()
            .copied()
            .filter(|&b| self.bases[b as usize].binary_search(&element).is_ok())
            .collect();
        if next.is_empty() {
            return false;
        }
        self.alive.push(next);
        self.elements.push(element);
        true
    }

    fn pop(&mut self) {
        self.elements.pop().expect("pop on empty tracker");
        self.alive.pop();
    }
}
