use crate::error::{Error, Result};

/// Critical rank difference for 12 methods over 43 datasets at the 0.05 level.
pub const CRITICAL_DIFFERENCE: f64 = 2.356;

/// Per-dataset comparison of two methods' error rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinLoss {
    /// `(wins + ties/2) / (losses + ties/2)`; infinite when there are no losses or ties.
    pub ratio: f64,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Counts datasets where method `a` has a lower (win), equal (tie) or
/// higher (loss) error than method `b`.
pub fn win_loss(errors_a: &[f64], errors_b: &[f64]) -> Result<WinLoss> {
    if errors_a.len() != errors_b.len() {
        return Err(Error::data(format!(
            "error lists differ in length: {} vs {}",
            errors_a.len(),
            errors_b.len()
        )));
    }
    if errors_a.is_empty() {
        return Err(Error::data("cannot compare empty error lists"));
    }
    let (mut wins, mut ties, mut losses) = (0, 0, 0);
    for (a, b) in errors_a.iter().zip(errors_b) {
        if a < b {
            wins += 1;
        } else if a > b {
            losses += 1;
        } else {
            ties += 1;
        }
    }
    let den = losses as f64 + 0.5 * ties as f64;
    let ratio = if den == 0.0 {
        f64::INFINITY
    } else {
        (wins as f64 + 0.5 * ties as f64) / den
    };
    Ok(WinLoss {
        ratio,
        wins,
        ties,
        losses,
    })
}

/// Mean rank of each method; `errors[method][dataset]`, lower error ranks first,
/// tied errors share the mean of the ranks they span.
pub fn average_ranks(errors: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = errors.len();
    let datasets = errors.first().map_or(0, Vec::len);
    if k == 0 || datasets == 0 {
        return Err(Error::data(
            "rank computation needs at least one method and one dataset",
        ));
    }
    if errors.iter().any(|row| row.len() != datasets) {
        return Err(Error::data("every method needs an error for every dataset"));
    }
    let mut totals = vec![0.0; k];
    let mut order: Vec<usize> = (0..k).collect();
    for d in 0..datasets {
        order.sort_by(|&x, &y| errors[x][d].total_cmp(&errors[y][d]));
        let mut start = 0;
        while start < k {
            let mut end = start + 1;
            while end < k && errors[order[end]][d] == errors[order[start]][d] {
                end += 1;
            }
            // positions start..end hold ranks start+1..=end
            let rank = (start + 1 + end) as f64 / 2.0;
            for &method in &order[start..end] {
                totals[method] += rank;
            }
            start = end;
        }
    }
    Ok(totals.into_iter().map(|t| t / datasets as f64).collect())
}

/// True when two average ranks differ by more than `critical_difference`.
pub fn significantly_different(rank_a: f64, rank_b: f64, critical_difference: f64) -> bool {
    (rank_a - rank_b).abs() > critical_difference
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fixture(wins: usize, ties: usize, losses: usize) -> (Vec<f64>, Vec<f64>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for _ in 0..wins {
            a.push(0.1);
            b.push(0.2);
        }
        for _ in 0..ties {
            a.push(0.3);
            b.push(0.3);
        }
        for _ in 0..losses {
            a.push(0.4);
            b.push(0.2);
        }
        (a, b)
    }

    #[test]
    fn published_win_loss_rows() {
        let (a, b) = fixture(25, 8, 10);
        let wl = win_loss(&a, &b).unwrap();
        assert_eq!((wl.wins, wl.ties, wl.losses), (25, 8, 10));
        assert!((wl.ratio - 29.0 / 14.0).abs() < 1e-15);
        assert_eq!(format!("{:.1}", wl.ratio), "2.1");

        let (a, b) = fixture(15, 16, 12);
        let wl = win_loss(&a, &b).unwrap();
        assert!((wl.ratio - 1.15).abs() < 1e-15);
    }

    #[test]
    fn win_loss_edges() {
        let a = [0.1, 0.2, 0.3];
        assert_eq!(
            win_loss(&a, &a).unwrap(),
            WinLoss {
                ratio: 1.0,
                wins: 0,
                ties: 3,
                losses: 0
            }
        );
        assert_eq!(win_loss(&[0.0, 0.1], &[0.5, 0.5]).unwrap().ratio, f64::INFINITY);
        assert!(win_loss(&[0.1], &[0.1, 0.2]).is_err());
        assert!(win_loss(&[], &[]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            average_ranks(&[vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap(),
            vec![1.0, 2.0]
        );
        assert_eq!(
            average_ranks(&[vec![0.2], vec![0.2], vec![0.2], vec![0.2]]).unwrap(),
            vec![2.5; 4]
        );
        assert_eq!(
            average_ranks(&[vec![0.1], vec![0.1], vec![0.3]]).unwrap(),
            vec![1.5, 1.5, 3.0]
        );
        assert!(average_ranks(&[vec![0.1], vec![]]).is_err());
        assert!(significantly_different(1.0, 3.5, CRITICAL_DIFFERENCE));
        assert!(!significantly_different(1.0, 3.0, CRITICAL_DIFFERENCE));
    }

    proptest! {
        #[test]
        fn ranks_sum_to_triangular_number(errors in prop::collection::vec(prop::collection::vec(0u8..5, 1), 1..8)) {
            let errors: Vec<Vec<f64>> = errors.into_iter().map(|r| r.into_iter().map(|e| e as f64 / 10.0).collect()).collect();
            let k = errors.len() as f64;
            let ranks = average_ranks(&errors).unwrap();
            prop_assert!((ranks.iter().sum::<f64>() - k * (k + 1.0) / 2.0).abs() < 1e-9);
        }

        #[test]
        fn self_comparison_is_all_ties(errors in prop::collection::vec(0.0f64..1.0, 1..20)) {
            let wl = win_loss(&errors, &errors).unwrap();
            prop_assert_eq!(wl, WinLoss { ratio: 1.0, wins: 0, ties: errors.len(), losses: 0 });
        }
    }
}
