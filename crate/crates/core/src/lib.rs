//! Kernelization for induced-subgraph deletion problems parameterized by
//! vertex cover.
//!
//! Given a graph, a vertex cover of it, and a deletion budget, the library
//! shrinks the instance to an equivalent one whose size depends only on the
//! cover, using GF(2) incidence vectors of the vertices outside the cover.
//! Around that core live exhaustive obstruction detectors, a brute-force
//! reference solver, hardness constructions, and a randomized verification
//! harness that replays the whole pipeline against independent oracles.

pub mod caps;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod hardness;
pub mod harness;
pub mod incidence;
pub mod kernel;
pub mod obstructions;
pub mod solver;

pub use caps::Caps;
pub use error::{Error, Result};

/// Runs every code block in the guide as a doc-test, so the book cannot
/// drift from the API it documents.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(readme, "../../../README.md");
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(graphs, "../../../book/src/graphs.md");
    chapter!(gf2, "../../../book/src/gf2.md");
    chapter!(incidence, "../../../book/src/incidence.md");
    chapter!(reduction, "../../../book/src/reduction.md");
    chapter!(obstructions, "../../../book/src/obstructions.md");
    chapter!(solver, "../../../book/src/solver.md");
    chapter!(adjacency, "../../../book/src/adjacency.md");
    chapter!(hardness, "../../../book/src/hardness.md");
    chapter!(harness, "../../../book/src/harness.md");
    chapter!(cli, "../../../book/src/cli.md");
}
