//! Exact computations over the standard bigraded polynomial ring
//! `S = K[x_1..x_m, y_1..y_n]`, `K = F_p`.
//!
//! The crate decides relative Cohen–Macaulayness of finitely presented
//! bigraded modules with respect to `P = (x)` and `Q = (y)`, computes graded
//! components `H^i_Q(M)_j` as finitely presented `K[x]`-modules from a free
//! resolution of `M`, and cross-checks them strand by strand through graded
//! local duality over `K[y]`.
#![no_std]

extern crate alloc;

pub mod corpus;
pub mod error;
pub mod field;
pub mod free;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod local_cohomology;
pub mod oracle;
pub mod poly;
pub mod rcm;
pub mod resolution;
pub mod ring;

pub use error::{Error, Ideal, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use free::{BihomMatrix, FreeModule, ModuleVector};
pub use groebner::{GroebnerBasis, ModuleOrder};
pub use poly::Polynomial;
pub use resolution::{free_resolution, FreeResolution, PresentedModule};
pub use ring::{BiDegree, Monomial, Ring};
