//! Companion guide to the [`choquet`] crate, one module per chapter.
//!
//! Each module's documentation *is* a chapter of the rendered book under
//! `book/` — the files are embedded with `include_str!`, so every code
//! fence in the book compiles and runs as a doc-test of this crate. The
//! guide cannot drift from the library without breaking `cargo test`.

// The chapters' code fences are the real consumers of these dependencies.
use choquet as _;
use num_bigint as _;
use num_traits as _;
use rand as _;
use rand_chacha as _;

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/ordered-systems.md")]
pub mod ordered_systems {}

#[doc = include_str!("../../../book/src/valuations.md")]
pub mod valuations {}

#[doc = include_str!("../../../book/src/integration.md")]
pub mod integration {}

#[doc = include_str!("../../../book/src/greedy.md")]
pub mod greedy {}

#[doc = include_str!("../../../book/src/structure.md")]
pub mod structure {}

#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
