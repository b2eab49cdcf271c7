//! Hybrid acoustic/lexical punctuation restoration for Spanish transcripts.
//!
//! An ASR decoder that emits `?` (the acoustic channel) and a text model that
//! predicts every mark with a confidence (the lexical channel) are combined
//! per token by two thresholds, then unbalanced `¿ ... ?` pairs are repaired
//! and the result is rendered.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`labels`], [`utterance`], [`text`] | label alphabet, data model, rendering |
//! | [`consolidator`] | threshold rule and grid search |
//! | [`postprocessor`] | question pair repair |
//! | [`aligner`] | Levenshtein alignment and mark transfer |
//! | [`metrics`] | F1, WER, reliability, latency |
//! | [`predictors`] | prediction files, rule baseline, LLM client |
//! | [`pipeline`], [`report`] | end-to-end flows and report output |

pub mod aligner;
pub mod consolidator;
pub mod error;
pub mod labels;
pub mod metrics;
pub mod pipeline;
pub mod postprocessor;
pub mod predictors;
pub mod report;
pub mod synth;
pub mod text;
pub mod utterance;

pub use aligner::{align_tokens, transfer_marks, EditKind, EditOp, EditScript};
pub use consolidator::{
    consolidate_sequence, consolidate_token, tune_thresholds, ConsolidationOutcome, GridSpec,
    Objective, OutcomeSource, TuneResult,
};
pub use error::{Error, Result};
pub use labels::{AcousticMark, Lead, MarkLabel, Trail};
pub use metrics::{
    check_reliability, compute_wer, score_marks, score_utterance, summarize_latency, wer_counts,
    EvalReport, LatencySummary, MarkConfusion,
};
pub use pipeline::{evaluate, restore_corpus, restore_utterance, EvalMode};
pub use postprocessor::{apply_heuristics, pair_scan, PairScanResult};
pub use text::{attach_marks, strip_marks};
pub use utterance::{AcousticPrediction, Thresholds, TokenPrediction, Utterance};
