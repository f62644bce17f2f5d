//! Exact computations in Brandt semigroup algebras `ℂB(G,n)`: primitive
//! orthogonal idempotents, Cartan matrices, and Brandt semigroup codes.

pub mod brandt;
pub mod cartan;
pub mod cli;
pub mod codes;
pub mod cyclotomic;
pub mod exactla;
pub mod groups;
pub mod idempotents;
