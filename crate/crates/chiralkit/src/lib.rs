//! Exact computational models of two-dimensional conformal spacetimes at
//! desk scale: lightcone geometry, piecewise-Möbius reparametrizations, the
//! two-object skeletal spacetime categories and their localization at Cauchy
//! morphisms, a law-checking harness for algebra-valued functors, and the
//! Abelian current with exact chiral extraction.
//!
//! Start with the runnable programs in `examples/`:
//!
//! - `orthogonality` — the causal-disjointness decision procedures
//! - `mobius_maps` — piecewise-Möbius embeddings, composition, inversion
//! - `cauchy_localization` — the development functor and its unit
//! - `zigzag` — the span-of-spans diagrams connecting cylinder morphisms
//! - `star_product` — Weyl algebra, CCR commutators, the -1/4 pair
//! - `propagator` — sign-kernel propagator on the plane and the cylinder
//! - `chiralization` — chiral components, unit identity, chirality detection
//! - `scenario` — the declarative batch runner behind the `chiralkit` binary
//!
//! The `chiralkit` binary exposes the same functionality as subcommands
//! (`run`, `orthogonality`, `chiralize`, `commutator`, `zigzag`).

pub mod aqft;
pub mod current;
pub mod geometry;
pub mod maps1d;
pub mod rat;
pub mod sampling;
pub mod scalar;
pub mod scenario;
pub mod skelcat;

pub use rat::Rat;
