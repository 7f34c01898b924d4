//! Recognition of graphs whose odd cycles pairwise share at most one edge,
//! kernel-perfect orientations of their line graphs, and the list edge
//! colorings, tuple colorings and online-coloring strategies they yield.

pub mod blocks;
pub mod cli;
pub mod color;
pub mod cycles;
pub mod digraph;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod named;
pub mod orient;
pub mod paint;
pub mod recognize;
pub mod verify;

pub use error::*;
pub use graph::{bipartition, line_graph, Graph, LineGraph, Subgraph};
