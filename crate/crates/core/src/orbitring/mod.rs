//! The limit ring `A(∞,m)` in its orbit basis `e_α`.

mod index;
mod product;

pub use index::{canonicalize, OrbitIndex, TaggedTuple};
pub use product::{basis_product, enumerate_basis, expand_e_k_of, expand_e_k_of_in, MultiSymElement};
