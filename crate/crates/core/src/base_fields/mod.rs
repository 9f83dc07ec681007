//! Exact arithmetic in F2[x] and F2(x), places, local expansions and local symbols.

pub mod local;
pub mod parse;
pub mod place;
pub mod poly;
pub mod rational;

pub use local::{laurent_expand, local_digits, local_symbol, residue, LaurentPoly, ResidueElement};
pub use parse::parse_rational;
pub use place::{Place, Valuation};
pub use poly::BinaryPoly;
pub use rational::RationalFunction;
