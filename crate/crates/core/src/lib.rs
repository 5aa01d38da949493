//! Exact noncommutative series arithmetic over quantum tori, monomial
//! automorphisms and their crossed products, together with a verifier for
//! quantum-dilogarithm identities, RTT relations and the tetrahedron
//! equation for R-operators built from them.
//!
//! All arithmetic is exact. Scalars are either rational functions of `q`
//! ([`coeff::RationalQ`]) or big rationals for a fixed numeric `q`.

pub mod autom;
pub mod cli;
pub mod coeff;
pub mod crossed;
pub mod lattice;
pub mod report;
pub mod rtt;
pub mod series;
pub mod torus;
pub mod uttalg;

mod error;

pub use error::Error;
