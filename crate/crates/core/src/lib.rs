//! Exact Nielsen coincidence computations for pairs of multivalued circle maps.
//!
//! Multimaps are stored as piecewise-linear lifts with rational breakpoints, so every
//! coincidence, count and class index is computed exactly.

pub mod bezout;
pub mod coincidence;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod multimap;
pub mod par;
pub mod rational;
pub mod torus;

pub use coincidence::{
    domain_coincidences, graph_intersections, predict_counts, Count, DomainCoincidences,
    GraphCoincidences, GraphIntersection,
};
pub use error::{Error, Result};
pub use homotopy::{counterexample_pairs, make_linear_homotopy, sweep_counts, LinearHomotopy};
pub use multimap::{power_map, LiftBranch, MultiMap, UnitPoint, Violation};
pub use par::Strategy;
pub use rational::Rational;
pub use torus::{class_index, graph_split, nielsen_number, ClassIndex, TorusLoop};
