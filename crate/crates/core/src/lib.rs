//! Exact combinatorics for finite-dimensional CAT(0) cube complexes.
//!
//! Complexes are handled through their 1-skeleta, which are median graphs.
//! On top of distances, intervals and medians the crate provides hyperplanes
//! (Θ-classes of edges), the search for pairwise disjoint hyperplane
//! triples, simplicial group actions with elliptic/hyperbolic certificates,
//! and a procedure that turns a finitely generated action into either a
//! global fixed cube or a verified hyperbolic group element.

pub mod action;
pub mod complex;
pub mod fixed_point;
pub mod hyperplane;
pub mod io;
pub mod oracle;
pub mod triple;

pub use action::{Automorphism, Budget, Certificate, Classification, GroupAction, Word};
pub use complex::{Cube, CubeComplex, FiniteComplex, OrientedEdge, Vertex};
pub use fixed_point::{fixed_point_or_witness, FixedPointOutcome};
pub use hyperplane::{Hyperplane, Sign};
