//! Exact matroid computations for constrained grid completion: lay out the
//! elements of a matroid in a grid so that rows hold given sets and every
//! column is a basis.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`matroid`]: rank oracles over linear (exact rational), graphic
//!   (multigraph) and explicit-bases representations.
//! * [`grid`]: the n×k grid instance type, an exact backtracking solver and
//!   counter, and an unpruned brute-force counter used as an oracle.
//! * [`descent`]: double partitions, the potential μ and the descent loop that
//!   turns a Rota instance into a grid by repeatedly solving k-column
//!   subinstances.
//! * [`instances`]: built-in counterexample instances and seeded generators.
//! * [`sweep`]: enumeration of row families and the rank-3, nine-element
//!   verification sweep.
//!
//! File formats, timing, parallel drivers and the command-line tool live in
//! the `basisgrid` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod descent;
mod error;
mod exact;
pub mod grid;
pub mod instances;
pub mod matroid;
pub mod sweep;
mod tracker;

pub use error::{Error, Result};
pub use grid::{Grid, GridInstance, IndependenceMode, SolveReport, SolveStatus};
pub use matroid::{BasesRep, GraphicRep, GroundSet, LinearRep, MatroidOracle, Representation};
