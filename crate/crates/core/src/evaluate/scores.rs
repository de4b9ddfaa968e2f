use crate::error::{Error, Result};
use crate::path::AlignmentPath;
use crate::simulate::TrueAlignment;

/// Displacement of an alignment from the ground truth, over all `s` indices.
///
/// For every truth pair `(i, b_t)` adds the smallest `|b_t - b|` over the
/// alignment's pairs `(i, b)`, then divides by `n(n - 1)/2`. Lower is better.
pub fn mg_score(truth: &TrueAlignment, p: &AlignmentPath, n: usize) -> Result<f64> {
    displacement(truth, p, n, |_| true)
}

/// As [`mg_score`], restricted to `s` indices flagged in the truth's component mask.
pub fn mc_score(truth: &TrueAlignment, p: &AlignmentPath, n: usize) -> Result<f64> {
    let mask = truth
        .component_mask()
        .ok_or_else(|| Error::data("component score needs a true alignment with a component mask"))?;
    displacement(truth, p, n, |i| mask.get(i - 1).copied().unwrap_or(false))
}

fn displacement(truth: &TrueAlignment, p: &AlignmentPath, n: usize, include: impl Fn(usize) -> bool) -> Result<f64> {
    if n < 2 {
        return Ok(0.0);
    }
    // b-values matched to each s index by the alignment
    let mut matched: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (a, b) in p.iter() {
        if a == 0 || a > n {
            return Err(Error::data(format!("alignment index {a} is outside 1..={n}")));
        }
        matched[a].push(b);
    }
    let mut total = 0usize;
    for &(a, bt) in truth.pairs() {
        if a > n {
            return Err(Error::data(format!("truth index {a} is outside 1..={n}")));
        }
        if !include(a) {
            continue;
        }
        let best = matched[a]
            .iter()
            .map(|&b| b.abs_diff(bt))
            .min()
            .ok_or_else(|| Error::data(format!("alignment does not match s index {a}")))?;
        total += best;
    }
    Ok(total as f64 / (n as f64 * (n - 1) as f64 / 2.0))
}

/// Mean within each group, then mean of the group means.
pub fn two_level_average(groups: &[Vec<f64>]) -> f64 {
    let means: Vec<f64> = groups
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| g.iter().sum::<f64>() / g.len() as f64)
        .collect();
    means.iter().sum::<f64>() / means.len() as f64
}
