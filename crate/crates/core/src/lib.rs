//! Exact classification and definability algebra for convex semilinear sets.

pub mod affine;
pub mod algebra;
pub mod cell;
pub mod cellset;
pub mod classify;
pub mod constraint;
pub mod constructions;
pub mod dd;
pub mod error;
pub mod fm;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;

pub use affine::AffineMap;
pub use cell::{Bound, Cell, Interval};
pub use cellset::{CellSet, PieceList};
pub use classify::{classify, ClassTag, ConvexClass};
pub use constraint::{LinConstraint, Rel};
pub use error::{Error, NotConvexWitness, Result};
pub use linalg::Vector;
pub use polyhedron::{Generators, HPolyhedron, SeparationCertificate, SeparationKind};
pub use rational::Rational;
