use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::Trail;
use crate::utterance::TokenPrediction;

/// Word lists and confidences for the rule-based lexical baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RuleTable {
    pub interrogative_cues: BTreeSet<String>,
    pub discourse_markers: BTreeSet<String>,
    pub cue_question_prob: f64,
    pub default_period_prob: f64,
    pub marker_comma_prob: f64,
}

impl Default for RuleTable {
    fn default() -> Self {
        let set = |ws: &[&str]| ws.iter().map(|w| w.to_string()).collect();
        RuleTable {
            interrogative_cues: set(&[
                "qué", "que", "cómo", "como", "cuándo", "cuando", "dónde", "donde", "cuál", "cual",
                "quién", "quien", "por",
            ]),
            discourse_markers: set(&["okey", "bueno", "pues", "entonces"]),
            cue_question_prob: 0.90,
            default_period_prob: 0.80,
            marker_comma_prob: 0.85,
        }
    }
}

impl RuleTable {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("cue_question_prob", self.cue_question_prob),
            ("default_period_prob", self.default_period_prob),
            ("marker_comma_prob", self.marker_comma_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::validation(format!("{name} {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Deterministic stand-in for a trained lexical model.
///
/// The last word ends with `?` when any word is an interrogative cue and with
/// `.` otherwise; non-final discourse markers get `,`. Leads are never set.
pub fn rule_lexical_predict<S: AsRef<str>>(
    words: &[S],
    rules: &RuleTable,
) -> Result<Vec<TokenPrediction>> {
    if words.is_empty() {
        return Err(Error::validation(
            "cannot predict marks for an empty utterance",
        ));
    }
    let lower: Vec<String> = words.iter().map(|w| w.as_ref().to_lowercase()).collect();
    let question = lower.iter().any(|w| rules.interrogative_cues.contains(w));
    let last = lower.len() - 1;
    let out = lower
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if i == last {
                if question {
                    TokenPrediction::trail(Trail::CloseQuestion).with_prob(rules.cue_question_prob)
                } else {
                    TokenPrediction::trail(Trail::Period).with_prob(rules.default_period_prob)
                }
            } else if rules.discourse_markers.contains(w) {
                TokenPrediction::trail(Trail::Comma).with_prob(rules.marker_comma_prob)
            } else {
                TokenPrediction::NONE.with_prob(1.0)
            }
        })
        .collect();
    Ok(out)
}
