//! Repair of unbalanced `¿ ... ?` pairs after consolidation.

use serde::Serialize;

use crate::labels::{Lead, Trail};
use crate::utterance::TokenPrediction;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairScanResult {
    /// `(lead index, trail index)` of each question span.
    pub matched_pairs: Vec<(usize, usize)>,
    pub unmatched_leads: Vec<usize>,
    pub unmatched_trails: Vec<usize>,
}

impl PairScanResult {
    pub fn is_well_formed(&self) -> bool {
        self.unmatched_leads.is_empty() && self.unmatched_trails.is_empty()
    }
}

/// Greedy left-to-right pairing of `¿` leads with `?` trails.
///
/// A `¿` opens a span, replacing (and orphaning) any span still open. The
/// next `?`, possibly on the same token, closes it. A `?` with nothing open
/// is unmatched. Spans never nest.
pub fn pair_scan(labels: &[TokenPrediction]) -> PairScanResult {
    let mut result = PairScanResult::default();
    let mut open: Option<usize> = None;
    for (i, label) in labels.iter().enumerate() {
        if label.lead == Lead::OpenQuestion {
            if let Some(prev) = open.replace(i) {
                result.unmatched_leads.push(prev);
            }
        }
        if label.trail == Trail::CloseQuestion {
            match open.take() {
                Some(start) => result.matched_pairs.push((start, i)),
                None => result.unmatched_trails.push(i),
            }
        }
    }
    result.unmatched_leads.extend(open);
    result
}

/// First index of the unpunctuated word run that ends at `end`.
///
/// The run stops after any token with a trail mark and at any token with a
/// lead mark.
fn chunk_start(labels: &[TokenPrediction], end: usize) -> usize {
    let mut start = end;
    while start > 0 && labels[start].lead == Lead::None && labels[start - 1].trail == Trail::None {
        start -= 1;
    }
    start
}

/// Drop orphaned `¿` marks, then give every orphaned `?` a `¿` on the first
/// token of its word chunk. Trail slots are never modified.
pub fn apply_heuristics(labels: &[TokenPrediction]) -> Vec<TokenPrediction> {
    let mut out = labels.to_vec();
    let scan = pair_scan(&out);
    for &i in &scan.unmatched_leads {
        out[i].lead = Lead::None;
    }
    for &j in &scan.unmatched_trails {
        let start = chunk_start(&out, j);
        if out[start].lead == Lead::OpenQuestion {
            // Already opened by an earlier pair; leave that pairing alone.
            log::warn!("token {start} already carries a matched '¿'; close at {j} left unpaired");
            continue;
        }
        out[start].lead = Lead::OpenQuestion;
    }
    out
}
