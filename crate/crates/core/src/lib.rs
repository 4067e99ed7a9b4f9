//! Exact intersection theory on weighted dual graphs of resolved surface
//! singularities.
//!
//! * [`rational`], [`linalg`]: exact rationals, symmetric matrices, solving
//!   and definiteness.
//! * [`graph`], [`resolution`], [`ade`]: the dual-graph model,
//!   codiscrepancy, anticanonical degrees, pushforward products and
//!   Dynkin recognition.
//! * [`quotient`]: Hirzebruch–Jung chains and T-singularities.
//! * [`catalog`]: germ templates and gluing.
//! * [`k2a`]: the two-curve feasibility arithmetic.

pub mod ade;
pub mod catalog;
pub mod graph;
pub mod k2a;
pub mod linalg;
pub mod quotient;
pub mod rational;
pub mod resolution;
pub mod sections;

pub use ade::{ade_classify, white_components, AdeFamily, AdeType, DynkinCheck};
pub use graph::{Color, Graph, GraphBuilder, GraphError, Vertex};
pub use linalg::{definiteness, solve_linear, Definiteness, LinalgError, SymMatrix};
pub use rational::Rational;
pub use resolution::{
    anticanonical_degree, codiscrepancy, contractibility, intersection_matrix, pushforward_product,
    Codiscrepancy, Resolution, ResolutionError,
};
