//! Exact computer algebra for finitely generated torsion-free nilpotent
//! groups.
//!
//! A group is presented by a nilpotent Lie algebra over ℚ with a basis
//! adapted to its lower central series. From that table the crate builds
//! Mal'cev coordinates of the second kind and the polynomial group law, the
//! filtered algebra of polynomial maps with its difference calculus, the
//! duality between group homomorphisms and co-multiplicative morphisms of
//! polynomial algebras, and quasi-isometry invariants (graded Lie algebra,
//! Betti numbers). No floating point is used anywhere.

pub mod exact;


pub mod cohomology;
pub mod corpus;
pub mod duality;
pub mod group;
pub mod io;
pub mod lie;
pub mod polymap;
pub use exact::{Degree, ElemDegree, MultiPoly, Rational};
pub use lie::{BasisLabel, LieAlgebraSpec, LieElement};
pub use group::{Group, GroupElement, GroupError, SymbolicMul};
pub use polymap::{PolyMap, PolyMapError, TensorPolyMap};
pub use duality::{AlgebraMorphism, GroupHom};
