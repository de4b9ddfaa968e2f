/// An ordered sequence of matched index pairs `(a_k, b_k)`, 1-based.
///
/// A path produced by the aligners always satisfies the boundary,
/// monotonicity and step-size constraints; paths read from files or built
/// by hand may not, so check them with [`validate_path`] before relying on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlignmentPath {
    pairs: Vec<(usize, usize)>,
}

impl AlignmentPath {
    pub fn from_pairs(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    /// The path `(1,1), (2,2), ..., (n,n)`.
    pub fn diagonal(n: usize) -> Self {
        Self {
            pairs: (1..=n).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<(usize, usize)> {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(k, &(a, b))| a == k + 1 && b == k + 1)
    }
}

impl From<Vec<(usize, usize)>> for AlignmentPath {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        Self::from_pairs(pairs)
    }
}

/// True iff `p` satisfies the boundary, monotonicity and step-size
/// constraints for series of lengths `n` and `m`.
pub fn validate_path(p: &AlignmentPath, n: usize, m: usize) -> bool {
    let pairs = p.pairs();
    let (Some(&first), Some(&last)) = (pairs.first(), pairs.last()) else {
        return false;
    };
    if first != (1, 1) || last != (n, m) {
        return false;
    }
    pairs.windows(2).all(|w| {
        let (a0, b0) = w[0];
        let (a1, b1) = w[1];
        a1 >= a0 && b1 >= b0 && a1 - a0 <= 1 && b1 - b0 <= 1 && (a1, b1) != (a0, b0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_simple_paths() {
        assert!(validate_path(&vec![(1, 1), (2, 2)].into(), 2, 2));
        assert!(validate_path(&vec![(1, 1), (2, 1), (2, 2), (3, 3)].into(), 3, 3));
        assert!(validate_path(&vec![(1, 1)].into(), 1, 1));
    }

    #[test]
    fn rejects_step_size_violation() {
        assert!(!validate_path(&vec![(1, 1), (3, 2)].into(), 3, 2));
    }

    #[test]
    fn rejects_boundary_and_monotonicity_violations() {
        assert!(!validate_path(&AlignmentPath::default(), 1, 1));
        assert!(!validate_path(&vec![(1, 2), (2, 2)].into(), 2, 2));
        assert!(!validate_path(&vec![(1, 1), (2, 1)].into(), 2, 2));
        assert!(!validate_path(&vec![(1, 1), (2, 2), (2, 1), (2, 2)].into(), 2, 2));
        assert!(!validate_path(&vec![(1, 1), (1, 1), (2, 2)].into(), 2, 2));
    }

    #[test]
    fn diagonal_helper() {
        let p = AlignmentPath::diagonal(4);
        assert!(p.is_diagonal());
        assert!(validate_path(&p, 4, 4));
        assert!(!AlignmentPath::from_pairs(vec![(1, 1), (2, 1), (2, 2)]).is_diagonal());
    }
}
