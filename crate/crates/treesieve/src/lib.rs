//! Exact counting and randomized detection of Hamiltonian paths, perfect
//! and maximum matchings, and star covers.
//!
//! Everything runs through one engine: the problem is encoded as a
//! weighted spanning-tree (or arborescence) generating determinant on an
//! auxiliary graph, and substituting roots of unity for designated vertex
//! variables sieves the expansion down to the terms describing the target
//! objects. Counting instances evaluate the determinant over several word
//! size prime fields and reassemble the integer by the Chinese remainder
//! theorem; detection instances add random isolating weights and accept as
//! soon as one evaluation is nonzero.
//!
//! Modules:
//! - [`algebra`]: prime fields, determinants, interpolation, CRT.
//! - [`graph`]: graph type, file format, auxiliary constructions.
//! - [`sieve`]: the substitution-sum engine.
//! - [`matching`]: blossom matching and the structure of maximum matchings.
//! - [`apps`]: the problem-level entry points.
//! - [`oracle`]: brute-force reference counters used by the test suites.

pub mod algebra;
pub mod apps;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod sieve;
