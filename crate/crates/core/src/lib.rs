//! Germ-level correspondence between twisted `GL_r`-bundles at a node of a
//! curve and Gieseker vector bundles, in exact arithmetic over `F_p`.

pub mod batch;
pub mod chain_kgl;
pub mod correspondence;
pub mod eq_matrix;
pub mod error;
pub mod field_series;
pub mod invariance;

pub use error::{Error, Result};

/// Default prime when neither a job nor the environment supplies one.
pub const DEFAULT_PRIME: u64 = 13;
/// Default series precision.
pub const DEFAULT_PRECISION: i64 = 16;
/// Environment variable overriding [`DEFAULT_PRIME`].
pub const PRIME_ENV: &str = "GT_DEFAULT_PRIME";
/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
