//! Exact computations in the Hopf algebras Symm, NSymm and QSymm and the
//! structures built from them: Witt vectors, basic products, Steenrod
//! operations, the diamond product and the `MU ∧ ΩΣCP^∞` coaction model.

pub mod combinat;
pub mod composition;
pub mod diamond;
pub mod element;
pub mod linalg;
pub mod lyndon;
pub mod ncps;
pub mod nsymm;
pub mod poly;
pub mod qsymm;
pub mod ring;
pub mod steenrod;
pub mod witt;

pub use composition::Composition;
pub use element::{AlgebraElement, Element, TensorElement};
pub use ring::{Ring, RingError, Scalar};
