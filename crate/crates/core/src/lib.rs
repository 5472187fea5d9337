//! Finitely presented modules over `F_p[x_1..x_m]/I`, Koszul complexes, and
//! certificates for rebuilding a module from its Koszul homology.

pub mod balls;
pub mod cert;
pub mod complexes;
pub mod error;
pub mod field;
pub mod fpmod;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod reconstruct;
pub mod ring;
pub mod vector;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use ring::Ring;
pub use vector::FreeVector;
