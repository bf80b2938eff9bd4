//! Right-set statistics for Bruhat ideals of dominant elements in affine Weyl
//! groups of type `Ã_n`.

pub mod affine_group;
pub mod bruhat;
pub mod error;
pub mod fixtures;
pub mod ko_analysis;
pub mod table_io;
pub mod verify;
pub mod weights;

pub use affine_group::{AffineElement, AffineWeylGroup, RightSet, Word};
pub use error::{Error, Result};
pub use weights::{RankConfig, Weight};
