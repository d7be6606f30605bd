//! Exact Choquet integration on finite ordered set systems.
//!
//! The classical Choquet integral aggregates a weighting f: N → ℝ against a
//! capacity on the *power set* of N. This crate works in a broader setting:
//! the family ℱ of measurable sets may be **any** finite collection of
//! non-empty subsets covering N, carrying an order ⪯ that refines
//! containment. The integral of f ≥ 0 against a valuation v: ℱ → ℝ is
//! defined by a linear program,
//!
//! ```text
//! ∫ f dv  =  min { ⟨f, x⟩ : x ≥ 0, x(F) ≥ v(F) for all F ∈ ℱ }
//!         =  max { ⟨v, y⟩ : y ≥ 0, Σ_F y_F·1_F ≤ f },
//! ```
//!
//! and the crate computes it **exactly** — all arithmetic is arbitrary-
//! precision rational, every reported optimum ships with primal and dual
//! certificates that are re-verified before being returned, and every
//! randomized routine is seed-deterministic.
//!
//! # Module map
//!
//! - [`set_system`] — ground sets, bitset subsets, ordered families with
//!   biggest-first indexing, the 0/1 incidence matrix and its integer
//!   inverse, and structural classification (weakly union-closed, algebra,
//!   intersection system, …) with witnesses.
//! - [`valuation`] — valuations on a family, weightings on the ground set,
//!   Möbius inversion, beliefs/capacities/densities, the positive/negative
//!   belief decomposition, and functions on all of 2^N.
//! - [`lp`] — the exact simplex solver and the covering/packing program
//!   pair with self-verified certificates.
//! - [`integral`] — the integral itself plus the closed forms it agrees
//!   with: the Möbius min-form, the layer-cake formula through the
//!   canonical extension to 2^N, the atom form on set algebras, and the
//!   shift rule for weightings with negative entries.
//! - [`monge`] — the greedy packing algorithm, its step-by-step trace, and
//!   per-system certification of when greedy equals the linear program.
//! - [`generators`] — seeded random systems, valuations, and weightings of
//!   every structural class, plus exhaustive enumeration at small n.
//! - [`verify`] — reseedable randomized self-check suites with violation
//!   dumps and exact replay.
//! - [`io`] — the JSON schemas for systems, valuations, and weightings.
//! - [`rational`] — exact rationals, parsing, and decimal rendering.
//! - [`cli`] — the `choquet` binary: `integrate`, `monge`, `classify`,
//!   `mobius`, `decompose`, `extend`, `lehrer`, `verify`.
//!
//! # A first integral
//!
//! ```
//! use std::sync::Arc;
//! use choquet::integral::integral;
//! use choquet::rational::rat;
//! use choquet::set_system::{ElemSet, GroundSet, OrderSpec, SetSystem};
//! use choquet::valuation::{Valuation, Weighting};
//!
//! let sys = SetSystem::build(
//!     GroundSet::new(["a", "b"]).unwrap(),
//!     vec![
//!         ElemSet::from_indices([0]),
//!         ElemSet::from_indices([1]),
//!         ElemSet::from_indices([0, 1]),
//!     ],
//!     OrderSpec::Containment,
//! ).unwrap();
//!
//! // Built order is biggest-first: [{a,b}, {a}, {b}].
//! let v = Valuation::new(Arc::clone(&sys), vec![rat(5), rat(2), rat(3)]).unwrap();
//! let f = Weighting::new(vec![rat(3), rat(5)]);
//!
//! let result = integral(&v, &f).unwrap();
//! assert_eq!(result.value, rat(21));
//! ```
//!
//! The companion guide (the `book/` directory of this workspace, compiled
//! as doc-tests by the `choquet-guide` crate) walks through the theory a
//! chapter at a time with runnable examples.

pub mod cli;
pub mod generators;
pub mod integral;
pub mod io;
pub mod lp;
pub mod monge;
pub mod rational;
pub mod set_system;
pub mod valuation;
pub mod verify;
