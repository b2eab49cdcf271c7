//! Positional precision/recall/F1 over punctuation marks, punctuation-free
//! WER, LLM output reliability and latency summaries.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::aligner::{align_tokens, EditCounts};
use crate::error::{Error, Result};
use crate::labels::{is_mark_char, MarkLabel};
use crate::utterance::TokenPrediction;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Counts {
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// `2PR / (P + R)`, zero when both are zero.
    ///
    /// Evaluated as `2tp / (2tp + fp + fn)`: one rounding step, so equal
    /// ratios always compare equal.
    pub fn f1(&self) -> f64 {
        ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_)
    }

    /// Number of reference occurrences.
    pub fn support(&self) -> u64 {
        self.tp + self.fn_
    }
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn mark_index(mark: MarkLabel) -> Option<usize> {
    MarkLabel::SCORED.iter().position(|&m| m == mark)
}

/// Per-mark tp/fp/fn over the four scored marks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MarkConfusion {
    counts: [Counts; 4],
}

impl MarkConfusion {
    pub fn counts(&self, mark: MarkLabel) -> Counts {
        mark_index(mark).map(|i| self.counts[i]).unwrap_or_default()
    }

    pub fn counts_mut(&mut self, mark: MarkLabel) -> Option<&mut Counts> {
        mark_index(mark).map(move |i| &mut self.counts[i])
    }

    pub fn precision(&self, mark: MarkLabel) -> f64 {
        self.counts(mark).precision()
    }

    pub fn recall(&self, mark: MarkLabel) -> f64 {
        self.counts(mark).recall()
    }

    pub fn f1(&self, mark: MarkLabel) -> f64 {
        self.counts(mark).f1()
    }

    /// Counts pooled across all marks.
    pub fn pooled(&self) -> Counts {
        self.counts
            .iter()
            .copied()
            .fold(Counts::default(), Add::add)
    }

    pub fn micro_f1(&self) -> f64 {
        self.pooled().f1()
    }

    /// A copy keeping only the given marks; the rest are zeroed.
    pub fn restricted_to(&self, marks: &[MarkLabel]) -> MarkConfusion {
        let mut out = MarkConfusion::default();
        for &m in marks {
            if let Some(c) = out.counts_mut(m) {
                *c = self.counts(m);
            }
        }
        out
    }

    fn record(&mut self, predicted: MarkLabel, reference: MarkLabel) {
        if predicted == reference {
            if let Some(c) = self.counts_mut(predicted) {
                c.tp += 1;
            }
            return;
        }
        if let Some(c) = self.counts_mut(predicted) {
            c.fp += 1;
        }
        if let Some(c) = self.counts_mut(reference) {
            c.fn_ += 1;
        }
    }
}

impl AddAssign for MarkConfusion {
    fn add_assign(&mut self, o: MarkConfusion) {
        for (a, b) in self.counts.iter_mut().zip(o.counts) {
            *a = *a + b;
        }
    }
}

impl Add for MarkConfusion {
    type Output = MarkConfusion;

    fn add(mut self, o: MarkConfusion) -> MarkConfusion {
        self += o;
        self
    }
}

impl Sum for MarkConfusion {
    fn sum<I: Iterator<Item = MarkConfusion>>(iter: I) -> Self {
        iter.fold(MarkConfusion::default(), Add::add)
    }
}

/// Score one position-aligned label sequence. A mark counts as a hit only
/// on the same token and slot as the reference.
pub fn score_utterance(
    pred: &[TokenPrediction],
    reference: &[TokenPrediction],
) -> Result<MarkConfusion> {
    if pred.len() != reference.len() {
        return Err(Error::length(
            "predicted vs reference labels",
            reference.len(),
            pred.len(),
        ));
    }
    let mut c = MarkConfusion::default();
    for (p, r) in pred.iter().zip(reference) {
        c.record(MarkLabel::from(p.lead), MarkLabel::from(r.lead));
        c.record(MarkLabel::from(p.trail), MarkLabel::from(r.trail));
    }
    Ok(c)
}

pub fn score_marks(
    pred: &[Vec<TokenPrediction>],
    reference: &[Vec<TokenPrediction>],
) -> Result<MarkConfusion> {
    if pred.len() != reference.len() {
        return Err(Error::length(
            "predicted vs reference utterances",
            reference.len(),
            pred.len(),
        ));
    }
    pred.iter()
        .zip(reference)
        .map(|(p, r)| score_utterance(p, r))
        .sum()
}

/// Lowercased words with every `¿ ? , .` removed; tokens that were only
/// punctuation disappear.
pub fn normalize_words<S: AsRef<str>>(words: &[S]) -> Vec<String> {
    words
        .iter()
        .flat_map(|w| {
            let cleaned: String = w.as_ref().chars().filter(|&c| !is_mark_char(c)).collect();
            cleaned
                .split_whitespace()
                .map(str::to_lowercase)
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Edit counts and reference length pooled over a corpus, on
/// punctuation-stripped words.
pub fn wer_counts<H: AsRef<str>, R: AsRef<str>>(
    hyp: &[Vec<H>],
    reference: &[Vec<R>],
) -> Result<(EditCounts, usize)> {
    if hyp.len() != reference.len() {
        return Err(Error::length(
            "hypothesis vs reference utterances",
            reference.len(),
            hyp.len(),
        ));
    }
    let mut total = EditCounts::default();
    let mut n_ref = 0;
    for (h, r) in hyp.iter().zip(reference) {
        let (h, r) = (normalize_words(h), normalize_words(r));
        let c = align_tokens(&h, &r).counts();
        total.substitutions += c.substitutions;
        total.deletions += c.deletions;
        total.insertions += c.insertions;
        n_ref += r.len();
    }
    Ok((total, n_ref))
}

/// `(S + D + I) / N_ref` pooled over the corpus, with punctuation removed
/// from both sides first.
pub fn compute_wer<H: AsRef<str>, R: AsRef<str>>(
    hyp: &[Vec<H>],
    reference: &[Vec<R>],
) -> Result<f64> {
    let (counts, n_ref) = wer_counts(hyp, reference)?;
    if n_ref == 0 {
        return Err(Error::validation("reference corpus has no words"));
    }
    Ok(counts.total() as f64 / n_ref as f64)
}

/// Whether an LLM output keeps the input words intact: same words in the
/// same order once punctuation and casing are ignored.
pub fn check_reliability<S: AsRef<str>>(input_words: &[S], llm_output: &str) -> bool {
    let cleaned: String = llm_output.chars().filter(|&c| !is_mark_char(c)).collect();
    let mut produced = cleaned.split_whitespace().map(str::to_lowercase);
    let mut expected = input_words.iter().map(|w| w.as_ref().to_lowercase());
    loop {
        match (produced.next(), expected.next()) {
            (None, None) => return true,
            (Some(a), Some(b)) if a == b => continue,
            _ => return false,
        }
    }
}

/// Latency statistics in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatencySummary {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub p50: f64,
    pub p95: f64,
}

/// Mean latency plus min/max and nearest-rank p50/p95.
pub fn summarize_latency(samples: &[f64]) -> Result<LatencySummary> {
    if samples.is_empty() {
        return Err(Error::validation("no latency samples"));
    }
    if let Some(bad) = samples.iter().find(|s| !s.is_finite() || **s < 0.0) {
        return Err(Error::validation(format!("invalid latency sample {bad}")));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let rank = |p: f64| sorted[((p * n as f64).ceil() as usize).clamp(1, n) - 1];
    Ok(LatencySummary {
        count: n,
        mean: sorted.iter().sum::<f64>() / n as f64,
        min: sorted[0],
        max: sorted[n - 1],
        p50: rank(0.50),
        p95: rank(0.95),
    })
}

/// Scores for one mark, as percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarkScore {
    pub mark: MarkLabel,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

/// Evaluation summary. Every rate is a percentage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub utterances: usize,
    pub marks: Vec<MarkScore>,
    pub micro_f1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wer: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reliability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency: Option<LatencySummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EvalReport {
    /// Report over `marks` only; micro-F1 pools just those marks.
    pub fn from_confusion(
        confusion: &MarkConfusion,
        marks: &[MarkLabel],
        utterances: usize,
    ) -> Self {
        let confusion = confusion.restricted_to(marks);
        let scores = marks
            .iter()
            .map(|&mark| {
                let c = confusion.counts(mark);
                MarkScore {
                    mark,
                    precision: 100.0 * c.precision(),
                    recall: 100.0 * c.recall(),
                    f1: 100.0 * c.f1(),
                    tp: c.tp,
                    fp: c.fp,
                    fn_: c.fn_,
                }
            })
            .collect();
        EvalReport {
            utterances,
            marks: scores,
            micro_f1: 100.0 * confusion.micro_f1(),
            wer: None,
            reliability: None,
            latency: None,
            notes: Vec::new(),
        }
    }

    pub fn mark(&self, mark: MarkLabel) -> Option<&MarkScore> {
        self.marks.iter().find(|s| s.mark == mark)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{Lead, Trail};

    fn labels_from_trails(trails: &[Trail]) -> Vec<TokenPrediction> {
        trails.iter().map(|&t| TokenPrediction::trail(t)).collect()
    }

    #[test]
    fn identical_sequences_score_perfectly() {
        let r = vec![
            TokenPrediction::trail(Trail::Comma),
            TokenPrediction::new(Lead::OpenQuestion, Trail::None),
            TokenPrediction::trail(Trail::CloseQuestion),
        ];
        let c = score_utterance(&r, &r).unwrap();
        assert_eq!(
            c.pooled(),
            Counts {
                tp: 3,
                fp: 0,
                fn_: 0
            }
        );
        for m in [
            MarkLabel::OpenQuestion,
            MarkLabel::CloseQuestion,
            MarkLabel::Comma,
        ] {
            assert_eq!(c.f1(m), 1.0);
        }
        assert_eq!(c.f1(MarkLabel::Period), 0.0);
        assert_eq!(c.micro_f1(), 1.0);
    }

    #[test]
    fn wrong_mark_is_fp_and_fn() {
        let c = score_utterance(
            &[TokenPrediction::trail(Trail::Period)],
            &[TokenPrediction::trail(Trail::CloseQuestion)],
        )
        .unwrap();
        assert_eq!(
            c.counts(MarkLabel::Period),
            Counts {
                tp: 0,
                fp: 1,
                fn_: 0
            }
        );
        assert_eq!(
            c.counts(MarkLabel::CloseQuestion),
            Counts {
                tp: 0,
                fp: 0,
                fn_: 1
            }
        );
    }

    #[test]
    fn pooled_micro_f1() {
        // utterance 1: 2 tp, 1 fp; utterance 2: 1 tp, 2 fn
        let u1p = labels_from_trails(&[Trail::Comma, Trail::Period, Trail::Comma]);
        let u1r = labels_from_trails(&[Trail::Comma, Trail::Period, Trail::None]);
        let u2p = labels_from_trails(&[Trail::None, Trail::None, Trail::CloseQuestion]);
        let u2r = labels_from_trails(&[Trail::Comma, Trail::Comma, Trail::CloseQuestion]);
        let c = score_marks(&[u1p, u2p], &[u1r, u2r]).unwrap();
        assert_eq!(
            c.pooled(),
            Counts {
                tp: 3,
                fp: 1,
                fn_: 2
            }
        );
        assert!((c.micro_f1() - 6.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn score_length_mismatch() {
        assert!(score_utterance(&[TokenPrediction::NONE], &[]).is_err());
        assert!(score_marks(&[vec![]], &[]).is_err());
    }

    fn words(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }

    #[test]
    fn wer_examples() {
        let r = words("okey los sábados están abiertos");
        assert_eq!(
            compute_wer(std::slice::from_ref(&r), std::slice::from_ref(&r)).unwrap(),
            0.0
        );
        let h = words("okey los domingos están abiertos");
        assert_eq!(compute_wer(&[h], &[r]).unwrap(), 0.2);
        let h = words("okey , los sábados ?");
        assert_eq!(
            compute_wer(&[h], &[words("okey los sábados")]).unwrap(),
            0.0
        );
        assert!(compute_wer::<&str, &str>(&[vec![]], &[vec![]]).is_err());
        assert!(compute_wer::<&str, &str>(&[], &[]).is_err());
    }

    #[test]
    fn wer_denominator_is_reference_length() {
        let four = words("a b c d");
        let five = words("a b c d e");
        assert_eq!(
            compute_wer(std::slice::from_ref(&four), std::slice::from_ref(&five)).unwrap(),
            0.2
        );
        assert_eq!(compute_wer(&[five], &[four]).unwrap(), 0.25);
    }

    #[test]
    fn reliability() {
        let input = ["okey", "los", "sábados"];
        assert!(check_reliability(&input, "Okey, ¿los sábados?"));
        assert!(!check_reliability(&input, "Bueno, okey, ¿los sábados?"));
        assert!(!check_reliability(&input, "Okey, ¿sábados los?"));
        assert!(!check_reliability(&input, "Okey, ¿los sábados!"));
        assert!(!check_reliability(&input, "Okey los"));
        assert!(check_reliability::<&str>(&[], "  "));
    }

    #[test]
    fn latency() {
        let s = summarize_latency(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.mean, 1.0);
        let s = summarize_latency(&[0.5, 1.5]).unwrap();
        assert_eq!(
            (s.mean, s.min, s.max, s.p50, s.p95),
            (1.0, 0.5, 1.5, 0.5, 1.5)
        );
        let samples: Vec<f64> = (1..=20).map(f64::from).collect();
        let s = summarize_latency(&samples).unwrap();
        assert_eq!((s.p50, s.p95), (10.0, 19.0));
        assert!(summarize_latency(&[]).is_err());
        assert!(summarize_latency(&[f64::NAN]).is_err());
    }

    #[test]
    fn report_percentages() {
        let r = labels_from_trails(&[Trail::CloseQuestion, Trail::Period]);
        let p = labels_from_trails(&[Trail::CloseQuestion, Trail::CloseQuestion]);
        let c = score_utterance(&p, &r).unwrap();
        let rep = EvalReport::from_confusion(&c, &[MarkLabel::CloseQuestion], 1);
        let cq = rep.mark(MarkLabel::CloseQuestion).unwrap();
        assert_eq!((cq.precision, cq.recall), (50.0, 100.0));
        assert_eq!(rep.marks.len(), 1);
        assert!((rep.micro_f1 - 100.0 * 2.0 / 3.0).abs() < 1e-9);
    }
}
