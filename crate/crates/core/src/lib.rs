//! Finite groups as Cayley tables, classes of groups and their closures,
//! regularity checks, and the Steinitz lattice of supernatural numbers.

pub mod checks;
pub mod classes;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod group;
pub mod primes;
pub mod regularity;
pub mod steinitz;
pub mod structure;
pub mod subnormality;

pub use classes::{is_member, ClassSpec, Limits, NamedClass};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use steinitz::{ExponentFunction, Supernatural};
