//! Exact-arithmetic computation of the σ (Kirk) and ω (Li) link-homotopy
//! invariants of two-component 2-sphere link maps in the 4-sphere, and an
//! instance-level check that ω₋ is determined by σ₊.
//!
//! - [`laurent`]: Laurent-polynomial algebra over ℤ and GF(2), with the bar
//!   involution, the derivative-evaluation parity map, and exact division.
//! - [`wall`]: intersection-number calculus for an infinite-cyclic
//!   fundamental group, including the surgery update rules.
//! - [`linkmap`]: the combinatorial double-point model, σ by two routes,
//!   Whitney-disk data, and ω.
//! - [`theorem`]: the σ↔ω relation and its checked derivation replay.
//! - [`generate`]: seed-reproducible sampling of consistent instances.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to drive from concurrent test
//! runners without synchronization.

pub mod generate;
pub mod gf2;
pub mod laurent;
pub mod linkmap;
pub mod theorem;
pub mod wall;

pub use gf2::Gf2;
pub use laurent::{CoeffRing, LaurentError, LaurentPoly, PolyParseError};
pub use linkmap::{
    ConstructedDiskWitness, DoublePoint, LinkMapModel, Side, WhitneyDiskDatum, WitnessHandle,
};
pub use theorem::{KirkDecomposition, TheoremVerdict, ThetaCoefficients};
pub use wall::{Sign, SignedIntersection, WallClass};
