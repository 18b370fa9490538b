pub mod automaton;
pub mod error;
pub mod fixtures;
pub mod mobius;
pub mod oracle;
pub mod poset;
pub mod polyrat;
pub mod strong;
pub mod transfer;
pub mod wilf;
pub mod word;

pub use error::{Error, Result};
pub use word::{Composition, Weight};
