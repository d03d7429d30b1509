//! Exact modular representation theory for small group algebras over
//! finite fields: MeatAxe, Loewy structure, Heller translates, bounded
//! complexes, perverse complexes for a perversity function, local twists by
//! relatively projective modules, and the shipped case book.

pub mod blocks;
pub mod casebook;
pub mod complex;
pub mod decompose;
pub mod error;
pub mod algebra;
pub mod field;
pub mod group;
pub mod hom;
pub mod local;
pub mod matrix;
pub mod meataxe;
pub mod module;
pub mod perverse;
pub mod report;
pub mod structure;
pub mod twists;

pub use error::{Error, Result};
pub use field::{Field, Fp, Gf2, Gf3, Gf4, Gf9, Quad};
pub use matrix::{EchelonBasis, Matrix};
pub use group::FiniteGroup;
pub use algebra::Algebra;
pub use module::{Module, Morphism};
