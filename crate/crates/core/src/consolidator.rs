//! Acoustic/lexical consolidation by probability thresholding, and grid
//! search for the two thresholds.

use rayon::prelude::*;
use serde::Serialize;

use crate::aligner::project_onto_reference;
use crate::error::{Error, Result};
use crate::labels::{AcousticMark, Trail};
use crate::metrics::{score_utterance, MarkConfusion};
use crate::postprocessor::apply_heuristics;
use crate::utterance::{AcousticPrediction, Thresholds, TokenPrediction, Utterance};

/// Which rule produced a consolidated trail mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OutcomeSource {
    LexicalKept,
    AcousticOverride,
    DemotedToPeriod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsolidationOutcome {
    pub trail: Trail,
    pub source: OutcomeSource,
}

impl ConsolidationOutcome {
    fn kept(trail: Trail) -> Self {
        ConsolidationOutcome {
            trail,
            source: OutcomeSource::LexicalKept,
        }
    }
}

/// Resolve the trail slot of one token.
///
/// * acoustic `?` against a lexical `.`/`,`: the acoustic question wins when
///   the lexical confidence is at most `t_declarative`;
/// * no acoustic `?` against a lexical `?`: demoted to `.` when the lexical
///   confidence is at most `t_question`;
/// * anything else keeps the lexical mark.
///
/// The lexical confidence is only required on the first two paths.
pub fn consolidate_token(
    acoustic: AcousticPrediction,
    lexical: &TokenPrediction,
    th: Thresholds,
) -> Result<ConsolidationOutcome> {
    let prob = || {
        lexical.prob.ok_or_else(|| {
            Error::validation(format!(
                "lexical prob required to consolidate trail {}",
                lexical.trail
            ))
        })
    };
    let acoustic_question = acoustic.trail == AcousticMark::CloseQuestion;
    let outcome = match lexical.trail {
        Trail::Period | Trail::Comma if acoustic_question => {
            if prob()? <= th.declarative() {
                ConsolidationOutcome {
                    trail: Trail::CloseQuestion,
                    source: OutcomeSource::AcousticOverride,
                }
            } else {
                ConsolidationOutcome::kept(lexical.trail)
            }
        }
        Trail::CloseQuestion if !acoustic_question => {
            if prob()? <= th.question() {
                ConsolidationOutcome {
                    trail: Trail::Period,
                    source: OutcomeSource::DemotedToPeriod,
                }
            } else {
                ConsolidationOutcome::kept(Trail::CloseQuestion)
            }
        }
        other => ConsolidationOutcome::kept(other),
    };
    Ok(outcome)
}

/// Consolidate every token of an utterance. Lead slots and confidences pass
/// through unchanged.
pub fn consolidate_sequence(u: &Utterance, th: Thresholds) -> Result<Vec<TokenPrediction>> {
    let acoustic = u
        .acoustic
        .as_ref()
        .ok_or_else(|| Error::validation(format!("utterance {}: no acoustic track", u.id)))?;
    if acoustic.len() != u.lexical.len() {
        return Err(Error::length(
            format!("utterance {}: acoustic vs lexical track", u.id),
            u.lexical.len(),
            acoustic.len(),
        ));
    }
    acoustic
        .iter()
        .zip(&u.lexical)
        .enumerate()
        .map(|(i, (a, l))| {
            let outcome = consolidate_token(*a, l, th)
                .map_err(|e| Error::validation(format!("utterance {} token {i}: {e}", u.id)))?;
            Ok(TokenPrediction {
                trail: outcome.trail,
                ..*l
            })
        })
        .collect()
}

/// One axis of the threshold grid: `start, start + step, ...` up to `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            start: 0.5,
            stop: 1.0,
            step: 0.05,
        }
    }
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let spec = GridSpec { start, stop, step };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::validation(format!(
                "grid step {} must be > 0",
                self.step
            )));
        }
        if self.start.is_nan() || self.stop.is_nan() || self.start > self.stop {
            return Err(Error::validation(format!(
                "grid start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        if self.start < 0.0 || self.stop > 1.0 {
            return Err(Error::validation(format!(
                "grid [{}, {}] must lie within [0, 1]",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    /// Points per axis: `floor((stop - start) / step) + 1`.
    pub fn point_count(&self) -> usize {
        // The epsilon keeps e.g. 0.4..=0.7 step 0.1 at 4 points despite float error.
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    /// Axis values, rounded to 12 decimals so that e.g. 0.75 prints as 0.75.
    pub fn points(&self) -> Vec<f64> {
        (0..self.point_count())
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                ((v * 1e12).round() / 1e12).min(self.stop)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    #[default]
    MicroF1,
    CqF1,
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "micro-f1" => Ok(Objective::MicroF1),
            "cq-f1" => Ok(Objective::CqF1),
            _ => Err(Error::validation(format!("unknown objective {s:?}"))),
        }
    }
}

/// Scores for one grid point (fractions in [0, 1]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPointScore {
    pub t_question: f64,
    pub t_declarative: f64,
    pub micro_f1: f64,
    pub cq_f1: f64,
}

impl GridPointScore {
    pub fn objective(&self, objective: Objective) -> f64 {
        match objective {
            Objective::MicroF1 => self.micro_f1,
            Objective::CqF1 => self.cq_f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneResult {
    pub best: Thresholds,
    pub objective: Objective,
    pub value: f64,
    /// Every evaluated point, `t_question`-major in grid order.
    pub surface: Vec<GridPointScore>,
}

/// Confusion counts of the full hybrid pipeline (consolidation then pair
/// repair) against the reference tracks of `dev`.
pub fn hybrid_confusion(dev: &[Utterance], th: Thresholds) -> Result<MarkConfusion> {
    let mut total = MarkConfusion::default();
    for u in dev {
        let reference = u
            .reference
            .as_ref()
            .ok_or_else(|| Error::validation(format!("utterance {}: no reference track", u.id)))?;
        let repaired = apply_heuristics(&consolidate_sequence(u, th)?);
        let projected = project_onto_reference(u, &repaired)?;
        total += score_utterance(&projected, reference)?;
    }
    Ok(total)
}

/// Exhaustive grid search over `grid × grid`.
///
/// The winner maximizes the objective; ties go to the higher `?` F1, then
/// the lower `t_question`, then the lower `t_declarative`. Points are
/// evaluated in parallel but reduced in grid order, so the result does not
/// depend on scheduling.
pub fn tune_thresholds(
    dev: &[Utterance],
    grid: GridSpec,
    objective: Objective,
) -> Result<TuneResult> {
    if dev.is_empty() {
        return Err(Error::validation("development set is empty"));
    }
    grid.validate()?;
    for u in dev {
        if u.acoustic.is_none() || u.reference.is_none() {
            return Err(Error::validation(format!(
                "utterance {}: tuning needs acoustic and reference tracks",
                u.id
            )));
        }
    }
    let axis = grid.points();
    let pairs: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&q| axis.iter().map(move |&d| (q, d)))
        .collect();
    let surface = pairs
        .par_iter()
        .map(|&(q, d)| {
            let confusion = hybrid_confusion(dev, Thresholds::new(q, d)?)?;
            Ok(GridPointScore {
                t_question: q,
                t_declarative: d,
                micro_f1: confusion.micro_f1(),
                cq_f1: confusion.f1(crate::labels::MarkLabel::CloseQuestion),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best = surface[0];
    for p in &surface[1..] {
        if better(p, &best, objective) {
            best = *p;
        }
    }
    Ok(TuneResult {
        best: Thresholds::new(best.t_question, best.t_declarative)?,
        objective,
        value: best.objective(objective),
        surface,
    })
}

fn better(a: &GridPointScore, b: &GridPointScore, objective: Objective) -> bool {
    let (oa, ob) = (a.objective(objective), b.objective(objective));
    if oa != ob {
        return oa > ob;
    }
    if a.cq_f1 != b.cq_f1 {
        return a.cq_f1 > b.cq_f1;
    }
    if a.t_question != b.t_question {
        return a.t_question < b.t_question;
    }
    a.t_declarative < b.t_declarative
}
