//! Files, datasets, replication sweeps and reports around `peerassign-core`.
//!
//! Every file format uses 1-based paper and reviewer IDs; the core crate is
//! 0-based and the conversion happens here.

pub mod error;
pub mod io;
pub mod sweep;
pub mod table;
pub mod uiuc;
pub mod verify;

pub use error::FormatError;
