//! Exact arithmetic in abstract twisted Brin–Thompson groups `SV_G` over a
//! pluggable label-group action `G ↷ S`.

pub mod element;
pub mod error;
pub mod forest;
pub mod kuznetsov;
pub mod label;
pub mod sample;
pub mod subgroups;
pub mod syntax;

pub use error::{Error, Result};
