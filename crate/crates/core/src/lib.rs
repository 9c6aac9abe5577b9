//! Exact computations in the centraliser algebras `S_K(λ) = 1_λ S_K(2,r) 1_λ`
//! of Schur algebras for two-part partitions `λ = (λ₁, λ₂)`.
//!
//! * [`padic`]: digit combinatorics, Lucas binomials, the two-part p-Kostka
//!   matrix, carries and the index sets of `B(m,g)`.
//! * [`algebra`]: the canonical basis `b(0), …, b(λ₂)` with its
//!   structure constants, over `F_p` or `Q`.
//! * [`idempotents`]: the characteristic-2 primitive idempotents `e_{m,g}`,
//!   blocks, and exhaustive checks.
//! * [`oracle`]: an independent model on the weight space of `E^{⊗r}`.

pub mod algebra;
pub mod error;
pub mod field;
pub mod idempotents;
pub mod linalg;
pub mod oracle;
pub mod padic;

pub use algebra::{AlgebraContext, AlgebraElement, AlgebraExt, ModAlgebra, RationalAlgebra};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
