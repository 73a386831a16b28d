//! Tight components of uniform hypergraphs under minimum codegree conditions.
//!
//! The crate bundles:
//! - [`hypergraph`]: k-uniform (multi-)hypergraphs, codegrees, tight components, links;
//! - [`geometry`]: small finite fields and projective planes;
//! - [`constructions`]: the extremal 3-graph families (three-part, split-W,
//!   projective-plane colourings) and graph analogues;
//! - [`bounds`]: exact-rational bound curves for the tight-component function;
//! - [`matchings`]: matching and fractional matching numbers, intersecting families;
//! - [`search`]: exhaustive and sampled oracles over small 3-graphs;
//! - [`cli`]: the `tightcomp` command-line front end.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod hypergraph;
pub mod matchings;
pub mod plot;
pub mod search;
mod simplex;
mod union_find;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, TightDecomposition};
pub use num_rational::BigRational as Rational;
