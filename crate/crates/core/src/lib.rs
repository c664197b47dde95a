//! Exact Choquet integration and Radon–Nikodym derivatives for monotone
//! measures on finite spaces, with truncation models for countable ones.
//!
//! All arithmetic is exact over the nonnegative rationals extended by `+∞`.

pub mod choquet;
pub mod classical;
pub mod decomposition;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod function;
pub mod gen;
pub mod lp;
pub mod measure;
pub mod props;
pub mod sigma;
pub mod solver;
pub mod space;
pub mod spec;
pub mod witness;

pub use error::Error;
pub use ext::ExtRational;
pub use function::SimpleFunction;
pub use measure::{MonotoneMeasure, SetFunction};
pub use space::{MeasurableSet, MeasurableSpace};
