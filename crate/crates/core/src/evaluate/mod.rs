//! Alignment-quality scores, 1-NN classification with cross-validated
//! parameter tuning, and method comparison tables.

mod classify;
mod compare;
mod scores;

use std::fmt;

pub use classify::{
    align_with, difference_measure, one_nn, stratified_folds, tune_params, Decision, LabeledDataset, MethodAlignment,
    MethodKind, MethodParams, OneNnReport, TuneOutcome, TuningGrid,
};
pub use compare::{average_ranks, significantly_different, win_loss, WinLoss, CRITICAL_DIFFERENCE};
pub use scores::{mc_score, mg_score, two_level_average};

use crate::series::TimeSeries;

/// Non-fatal conditions reported alongside a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// A constant series was normalized to all zeros.
    ZeroVariance,
    /// A class with a single training item; it is always placed in fold 1.
    SingletonClass(String),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ZeroVariance => write!(f, "zero-variance series normalized to all zeros"),
            Warning::SingletonClass(label) => {
                write!(
                    f,
                    "class {label:?} has a single training item; it is kept in fold 1 only"
                )
            }
        }
    }
}

/// Subtracts the mean and divides by the population standard deviation.
/// A constant series maps to all zeros and yields [`Warning::ZeroVariance`].
pub fn z_normalize(s: &TimeSeries) -> (TimeSeries, Option<Warning>) {
    let first = s[0];
    if s.values().iter().all(|&v| v == first) {
        return (
            TimeSeries::from_vec_unchecked(vec![0.0; s.len()]),
            Some(Warning::ZeroVariance),
        );
    }
    let mean = s.mean();
    let sd = s.std_dev();
    let values = s.values().iter().map(|v| (v - mean) / sd).collect();
    (TimeSeries::from_vec_unchecked(values), None)
}
