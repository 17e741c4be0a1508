//! Group homomorphisms and the morphisms of polynomial algebras they induce.
//!
//! A homomorphism `φ : H → G` of simply connected nilpotent groups pulls
//! polynomial maps back, `Ψ = φ* : Pol(G) → Pol(H)`, and `Ψ` is strongly
//! unital, degree-preserving and co-multiplicative. Conversely such a `Ψ`
//! determines `φ` on the generators of `H` by reading off
//! `(Ψζ_{g_a})(h_{1,ℓ})`.

mod fingerprint;
mod hom;
mod morphism;

pub use fingerprint::{compare, fingerprint, Comparison, Fingerprint, InvariantMatch};
pub use hom::{verify_iso, GroupHom};
pub use morphism::{
    check_comultiplicative, check_morphism_flags, pullback_hom, reconstruct_hom, AlgebraMorphism, ComultCheck,
    ComultWitness, MorphismFlags,
};

use crate::group::GroupError;
use crate::polymap::PolyMapError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("expected {expected} generator images, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("element or map belongs to the wrong group")]
    GroupMismatch,
    #[error("level-1 basis vectors do not generate the source algebra")]
    NotGenerated,
    #[error("induced Lie algebra map does not preserve brackets on {0:?}")]
    NotHomomorphism(Vec<(usize, usize)>),
    #[error("expected {expected} basis images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("no basis monomial with exponents {0:?} in the truncation")]
    UnknownMonomial(Vec<u32>),
    #[error("morphism flags fail: {0:?}")]
    FlagsFailed(Vec<String>),
    #[error("truncation degree {degree} is below the class {class}")]
    DegreeTooSmall { degree: u32, class: usize },
    #[error("pullback of the reconstructed homomorphism differs on the monomial {0:?}")]
    PullbackMismatch(Vec<u32>),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    PolyMap(#[from] PolyMapError),
}
