//! Elastic alignment of univariate time series.
//!
//! Provides DTW over a Sakoe-Chiba band together with four variants:
//! affine DTW ([`adtw`]), regional DTW ([`rdtw`]), global-affine regional
//! DTW ([`gardtw`]) and local-affine regional DTW ([`lardtw`]). The
//! [`simulate`] module generates aligned pairs with known ground truth and
//! [`evaluate`] scores alignments and runs 1-NN classification.
//!
//! All indices exposed by the API are 1-based.

pub mod affine;
pub mod bench;
pub mod combined;
pub mod dp;
pub mod error;
pub mod evaluate;
pub mod io;
pub mod path;
pub mod regional;
pub mod series;
pub mod simulate;
mod window;

#[cfg(test)]
mod testutil;

pub use affine::{adtw, affine_fit, apply_affine, AffineParams, EmConfig, EmOutcome, ScalingBounds};
pub use combined::{gardtw, gardtw_affine_fit, lardtw, local_affine_fit, local_cost, WindowStats};
pub use dp::{dp_align, dtw, pointwise_cost, Alignment, BandConfig, BandCostTable, CellCost};
pub use error::{Error, Result};
pub use path::{validate_path, AlignmentPath};
pub use regional::{rdtw, regional_cost_direct, regional_cost_table};
pub use series::TimeSeries;
