//! Exact arithmetic in pro-p Iwahori-Hecke rings of split reductive groups.

pub mod error;
pub mod field;
pub mod lattice;
pub mod laurent;
pub mod ring;
pub mod root_datum;
pub mod affine_weyl;
pub mod extended_group;
pub mod hecke;
pub mod bernstein;
pub mod modules;

pub use error::{Error, Result};
pub mod verify;
