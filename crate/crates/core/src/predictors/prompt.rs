//! Zero- and few-shot prompts for punctuation restoration with an LLM.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{Lead, MarkLabel, Trail};
use crate::text::strip_marks;

const INSTRUCTION: &str = "Without any explanation or modification, add punctuation to the \
following Spanish transcript from human conversations, use only punctuation marks from this \
list: comma(,), period(.), open_question(¿) and close_question(?).";

const INPUT: &str = "### Input:";
const OUTPUT: &str = "### Output:";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptMode {
    ZeroShot,
    FewShot,
}

/// One in-context example: unpunctuated input and its punctuated output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shot {
    pub input: String,
    pub output: String,
}

impl Shot {
    pub fn new(input: impl Into<String>, output: impl Into<String>) -> Self {
        Shot {
            input: input.into(),
            output: output.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub mode: PromptMode,
    pub shots: Vec<Shot>,
}

impl PromptTemplate {
    pub fn zero_shot() -> Self {
        PromptTemplate {
            mode: PromptMode::ZeroShot,
            shots: Vec::new(),
        }
    }

    /// Few-shot template; needs exactly three examples that together use
    /// all four marks.
    pub fn few_shot(shots: Vec<Shot>) -> Result<Self> {
        let t = PromptTemplate {
            mode: PromptMode::FewShot,
            shots,
        };
        t.validate()?;
        Ok(t)
    }

    /// Built-in examples, used when no shot file is given.
    pub fn default_few_shot() -> Self {
        PromptTemplate::few_shot(vec![
            Shot::new("hola buenos días", "Hola, buenos días."),
            Shot::new(
                "okey los sábados están abiertos",
                "Okey, ¿los sábados están abiertos?",
            ),
            Shot::new(
                "sí claro me puede dar su número de cuenta",
                "Sí, claro. ¿Me puede dar su número de cuenta?",
            ),
        ])
        .expect("built-in shots are valid")
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            PromptMode::ZeroShot if !self.shots.is_empty() => {
                Err(Error::validation("zero-shot prompt takes no examples"))
            }
            PromptMode::ZeroShot => Ok(()),
            PromptMode::FewShot => {
                if self.shots.len() != 3 {
                    return Err(Error::validation(format!(
                        "few-shot prompt needs exactly 3 examples, got {}",
                        self.shots.len()
                    )));
                }
                let mut seen = Vec::new();
                for (i, shot) in self.shots.iter().enumerate() {
                    if shot.input.contains(['\n', '\r']) || shot.output.contains(['\n', '\r']) {
                        return Err(Error::validation(format!(
                            "example {i} spans several lines"
                        )));
                    }
                    let (_, labels) = strip_marks(&shot.output)
                        .map_err(|e| Error::validation(format!("example {i} output: {e}")))?;
                    for l in labels {
                        if l.lead == Lead::OpenQuestion {
                            seen.push(MarkLabel::OpenQuestion);
                        }
                        if l.trail != Trail::None {
                            seen.push(l.trail.into());
                        }
                    }
                }
                match MarkLabel::SCORED.iter().find(|m| !seen.contains(m)) {
                    Some(missing) => Err(Error::validation(format!(
                        "few-shot examples never use {missing}"
                    ))),
                    None => Ok(()),
                }
            }
        }
    }
}

/// Instantiate the prompt with `text` as the query.
pub fn build_prompt(text: &str, template: &PromptTemplate) -> Result<String> {
    if text.trim().is_empty() {
        return Err(Error::validation("prompt text is empty"));
    }
    if text.contains(['\n', '\r']) {
        return Err(Error::validation("prompt text must be a single line"));
    }
    template.validate()?;
    let mut p = String::new();
    match template.mode {
        PromptMode::ZeroShot => {
            p.push_str(INSTRUCTION);
            p.push_str(" Return the punctuated utterance only.\n\nAdd punctuation marks to:\n");
        }
        PromptMode::FewShot => {
            p.push_str(INSTRUCTION);
            p.push_str("\nReturn the punctuated utterance only.\nHere are some examples:\n");
            for shot in &template.shots {
                p.push_str(&format!(
                    "{INPUT} {}\n{OUTPUT} {}\n\n",
                    shot.input, shot.output
                ));
            }
            p.push_str("Now, add punctuation marks to:\n");
        }
    }
    p.push_str(&format!("{INPUT} {text}\n{OUTPUT}"));
    Ok(p)
}

/// Recover the query text from a rendered prompt.
pub fn extract_query(prompt: &str) -> Option<&str> {
    prompt
        .lines()
        .rev()
        .find_map(|l| l.strip_prefix(INPUT))
        .map(str::trim_start)
}
