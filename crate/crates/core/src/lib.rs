//! Exact computations on Bruhat–Tits buildings of `SL(n)` over rational
//! function fields, group actions induced by representation families, and
//! the valuations of trace functions at ideal points.

pub mod characters;
pub mod field;
pub mod group;
pub mod lattice;
pub mod random;
pub mod triangle;
