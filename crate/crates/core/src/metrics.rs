//! Classifier scoring: ROC AUC by rank statistics and balanced accuracy.

use serde::{Deserialize, Serialize};

/// Area under the ROC curve via the Mann–Whitney U statistic.
///
/// `positives[i]` marks the true class. Tied scores share their average
/// rank, so a constant score gives 0.5. Returns NaN when either class is
/// empty.
pub fn roc_auc(scores: &[f64], positives: &[bool]) -> f64 {
    assert_eq!(
        scores.len(),
        positives.len(),
        "scores and labels differ in length"
    );
    let n_pos = positives.iter().filter(|&&p| p).count();
    let n_neg = positives.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return f64::NAN;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    let mut rank_sum_pos = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // ranks start..end (0-based) share the mean 1-based rank
        let mean_rank = (start + end + 1) as f64 / 2.0;
        let tied_pos = order[start..end].iter().filter(|&&i| positives[i]).count();
        rank_sum_pos += mean_rank * tied_pos as f64;
        start = end;
    }
    let u = rank_sum_pos - (n_pos * (n_pos + 1)) as f64 / 2.0;
    u / (n_pos as f64 * n_neg as f64)
}

/// Binary confusion counts; "positive" is the Gaussian / significant class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub true_positive: usize,
    pub false_positive: usize,
    pub true_negative: usize,
    pub false_negative: usize,
}

impl Confusion {
    pub fn record(&mut self, predicted: bool, actual: bool) {
        match (predicted, actual) {
            (true, true) => self.true_positive += 1,
            (true, false) => self.false_positive += 1,
            (false, false) => self.true_negative += 1,
            (false, true) => self.false_negative += 1,
        }
    }

    pub fn merge(&mut self, other: &Confusion) {
        self.true_positive += other.true_positive;
        self.false_positive += other.false_positive;
        self.true_negative += other.true_negative;
        self.false_negative += other.false_negative;
    }

    pub fn total(&self) -> usize {
        self.true_positive + self.false_positive + self.true_negative + self.false_negative
    }

    pub fn sensitivity(&self) -> f64 {
        self.true_positive as f64 / (self.true_positive + self.false_negative) as f64
    }

    pub fn specificity(&self) -> f64 {
        self.true_negative as f64 / (self.true_negative + self.false_positive) as f64
    }

    pub fn accuracy(&self) -> f64 {
        (self.true_positive + self.true_negative) as f64 / self.total() as f64
    }

    /// Mean of sensitivity and specificity. With one class absent this is
    /// the rate of the class that is present; NaN for an empty matrix.
    pub fn balanced_accuracy(&self) -> f64 {
        let has_pos = self.true_positive + self.false_negative > 0;
        let has_neg = self.true_negative + self.false_positive > 0;
        match (has_pos, has_neg) {
            (true, true) => 0.5 * (self.sensitivity() + self.specificity()),
            (true, false) => self.sensitivity(),
            (false, true) => self.specificity(),
            (false, false) => f64::NAN,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auc_simple_cases() {
        assert_eq!(
            roc_auc(&[0.1, 0.2, 0.8, 0.9], &[false, false, true, true]),
            1.0
        );
        assert_eq!(
            roc_auc(&[0.9, 0.8, 0.2, 0.1], &[false, false, true, true]),
            0.0
        );
        assert_eq!(roc_auc(&[0.5; 4], &[false, true, false, true]), 0.5);
        // one inversion out of four pairs
        assert_eq!(
            roc_auc(&[0.1, 0.6, 0.5, 0.9], &[false, false, true, true]),
            0.75
        );
        assert!(roc_auc(&[0.1, 0.2], &[true, true]).is_nan());
    }

    #[test]
    fn auc_matches_pair_counting() {
        let scores = [0.3, 0.3, 0.7, 0.1, 0.7, 0.5, 0.9, 0.3];
        let labels = [true, false, true, false, false, true, true, false];
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                if labels[i] && !labels[j] {
                    pairs += 1.0;
                    wins += match scores[i].partial_cmp(&scores[j]).unwrap() {
                        std::cmp::Ordering::Greater => 1.0,
                        std::cmp::Ordering::Equal => 0.5,
                        std::cmp::Ordering::Less => 0.0,
                    };
                }
            }
        }
        assert!((roc_auc(&scores, &labels) - wins / pairs).abs() < 1e-15);
    }

    #[test]
    fn hard_decision_auc_is_balanced_accuracy() {
        let predicted = [true, true, false, false, true, false, true];
        let actual = [true, false, false, true, true, false, true];
        let mut c = Confusion::default();
        for (p, a) in predicted.iter().zip(&actual) {
            c.record(*p, *a);
        }
        let scores: Vec<f64> = predicted
            .iter()
            .map(|&p| if p { 1.0 } else { 0.0 })
            .collect();
        assert!((roc_auc(&scores, &actual) - c.balanced_accuracy()).abs() < 1e-15);
    }

    #[test]
    fn balanced_accuracy_edges() {
        let mut c = Confusion::default();
        assert!(c.balanced_accuracy().is_nan());
        c.record(true, true);
        c.record(false, true);
        assert_eq!(c.balanced_accuracy(), 0.5);
        c.record(false, false);
        assert_eq!(c.balanced_accuracy(), 0.75);
        assert_eq!(c.total(), 3);
    }
}
