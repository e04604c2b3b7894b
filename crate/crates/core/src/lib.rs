pub mod doc;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod gen;
pub mod index;
pub mod oracle;
pub mod perm;
pub mod render;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{Backend, BandedPermutation, BinaryWindow};
