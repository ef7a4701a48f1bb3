//! Invariants of virtual links presented by signed Gauss codes.
//!
//! The crate is organized around one pipeline:
//!
//! * [`diagram`] parses and manipulates Gauss codes (Reidemeister moves,
//!   deterministic fuzzing, arc tables),
//! * [`linking`] extracts the matrix of virtual linking numbers and the
//!   graphs built from it,
//! * [`lattice`] provides exact arithmetic on subgroups of `Z^m` in
//!   Hermite normal form,
//! * [`tcquandle`] builds the translation-commutative quandle attached to
//!   a linking matrix as a family of subgroups, decides isomorphism of
//!   such families, and converts between families and finite tables,
//! * [`coloring`] counts quandle colorings of a diagram three independent
//!   ways,
//! * [`groups`] produces Wirtinger and reduced nilpotent group
//!   presentations.
//!
//! All public functions are pure: they take inputs by reference and
//! return owned values, so everything here is safe to use from multiple
//! threads without synchronization.

pub mod caps;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod linking;
pub mod tcquandle;

pub use caps::Caps;
pub use error::{Error, Result};
