//! Exact characteristic-class calculus on projective space.

pub mod bundle;
pub mod checks;
pub mod chow;
pub mod error;
mod intser;
pub mod koszul;
pub mod ktheory;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod rr;
pub mod series;
pub mod symroots;

pub use bundle::BundleClass;
pub use chow::ChowClass;
pub use error::{Error, Result};
pub use ktheory::KClass;
pub use rational::Rational;
pub use rr::{HrrReport, TrackedBundle};
pub use series::TruncatedSeries;
