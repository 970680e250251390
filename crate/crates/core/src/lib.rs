//! Braid groups, Garside normal forms and the coset monoid `B_∞ // H`
//! built from the stabilizer subgroups `H(α)`, together with the Burau,
//! symmetric-group and Artin projections used to study it.

pub mod artin;
pub mod burau;
pub mod coset;
pub mod error;
pub mod garside;
pub mod grid;
pub mod laurent;
pub mod sym;
pub mod word;

pub use error::{Error, Result};
pub use garside::{braid_equal, normal_form, GarsideNF};
pub use word::{BraidWord, Letter};
