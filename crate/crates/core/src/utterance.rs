use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{is_mark_char, AcousticMark, Lead, Trail};

/// Labels for one token, with the lexical model's confidence when it came from one.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TokenPrediction {
    pub lead: Lead,
    pub trail: Trail,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<f64>,
}

impl TokenPrediction {
    pub const NONE: TokenPrediction = TokenPrediction {
        lead: Lead::None,
        trail: Trail::None,
        prob: None,
    };

    pub fn new(lead: Lead, trail: Trail) -> Self {
        TokenPrediction {
            lead,
            trail,
            prob: None,
        }
    }

    pub fn trail(trail: Trail) -> Self {
        TokenPrediction::new(Lead::None, trail)
    }

    pub fn with_prob(mut self, prob: f64) -> Self {
        self.prob = Some(prob);
        self
    }

    /// Same marks, confidence dropped.
    pub fn marks_only(self) -> Self {
        TokenPrediction::new(self.lead, self.trail)
    }

    pub fn has_mark(&self) -> bool {
        self.lead != Lead::None || self.trail != Trail::None
    }

    pub fn validate(&self) -> Result<()> {
        match self.prob {
            Some(p) if !(0.0..=1.0).contains(&p) => {
                Err(Error::validation(format!("prob {p} outside [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AcousticPrediction {
    pub trail: AcousticMark,
}

impl AcousticPrediction {
    pub const NONE: AcousticPrediction = AcousticPrediction {
        trail: AcousticMark::None,
    };
    pub const QUESTION: AcousticPrediction = AcousticPrediction {
        trail: AcousticMark::CloseQuestion,
    };

    /// Lift into the general two-slot form (no lead, no confidence).
    pub fn to_token(self) -> TokenPrediction {
        let trail = match self.trail {
            AcousticMark::None => Trail::None,
            AcousticMark::CloseQuestion => Trail::CloseQuestion,
        };
        TokenPrediction::trail(trail)
    }
}

/// One transcript segment with its parallel label tracks.
///
/// `reference_words` is only set when the reference transcript differs from
/// the hypothesis `words`; the `reference` track then follows it instead of
/// `words`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Utterance {
    pub id: String,
    pub words: Vec<String>,
    pub lexical: Vec<TokenPrediction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acoustic: Option<Vec<AcousticPrediction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<TokenPrediction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_words: Option<Vec<String>>,
}

impl Utterance {
    pub fn new(id: impl Into<String>, words: Vec<String>, lexical: Vec<TokenPrediction>) -> Self {
        Utterance {
            id: id.into(),
            words,
            lexical,
            acoustic: None,
            reference: None,
            reference_words: None,
        }
    }

    pub fn with_acoustic(mut self, acoustic: Vec<AcousticPrediction>) -> Self {
        self.acoustic = Some(acoustic);
        self
    }

    pub fn with_reference(mut self, reference: Vec<TokenPrediction>) -> Self {
        self.reference = Some(reference);
        self
    }

    /// Words the reference track is positioned on.
    pub fn reference_words(&self) -> &[String] {
        self.reference_words.as_deref().unwrap_or(&self.words)
    }

    /// True when the reference transcript differs from the hypothesis
    /// (ignoring case).
    pub fn has_distinct_reference_words(&self) -> bool {
        match &self.reference_words {
            None => false,
            Some(r) => {
                r.len() != self.words.len()
                    || r.iter()
                        .zip(&self.words)
                        .any(|(a, b)| a.to_lowercase() != b.to_lowercase())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_words(&self.words, "words")?;
        let n = self.words.len();
        if self.lexical.len() != n {
            return Err(Error::length(
                "lexical track vs words",
                n,
                self.lexical.len(),
            ));
        }
        for (i, p) in self.lexical.iter().enumerate() {
            p.validate()
                .map_err(|e| Error::validation(format!("lexical[{i}]: {e}")))?;
        }
        if let Some(a) = &self.acoustic {
            if a.len() != n {
                return Err(Error::length("acoustic track vs words", n, a.len()));
            }
        }
        if let Some(rw) = &self.reference_words {
            validate_words(rw, "reference_words")?;
        }
        if let Some(r) = &self.reference {
            let m = self.reference_words().len();
            if r.len() != m {
                return Err(Error::length("reference track vs words", m, r.len()));
            }
            if let Some(i) = r.iter().position(|p| p.prob.is_some()) {
                return Err(Error::validation(format!(
                    "reference[{i}]: prob must be absent"
                )));
            }
        }
        Ok(())
    }
}

fn validate_words(words: &[String], field: &str) -> Result<()> {
    for (i, w) in words.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::validation(format!("{field}[{i}] is empty")));
        }
        if let Some(c) = w.chars().find(|&c| is_mark_char(c) || c.is_whitespace()) {
            return Err(Error::validation(format!(
                "{field}[{i}] {w:?} contains {c:?}"
            )));
        }
    }
    Ok(())
}

/// The (T_question, T_declarative) pair used to resolve channel conflicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    t_question: f64,
    t_declarative: f64,
}

impl Thresholds {
    pub fn new(t_question: f64, t_declarative: f64) -> Result<Self> {
        for (name, v) in [("t_question", t_question), ("t_declarative", t_declarative)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::validation(format!("{name} {v} outside [0, 1]")));
            }
        }
        Ok(Thresholds {
            t_question,
            t_declarative,
        })
    }

    pub fn question(&self) -> f64 {
        self.t_question
    }

    pub fn declarative(&self) -> f64 {
        self.t_declarative
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            t_question: 0.75,
            t_declarative: 0.75,
        }
    }
}
