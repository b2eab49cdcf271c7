//! Rendering labeled tokens to punctuated text and back.

use crate::error::{Error, Result};
use crate::labels::{Lead, MarkLabel, Trail};
use crate::utterance::TokenPrediction;

/// Render words with their marks.
///
/// Words are joined by single spaces, `¿` is glued to the front of a word and
/// `? , .` to its end. The first word, and any word after a `.` or `?`, is
/// capitalized.
pub fn attach_marks<S: AsRef<str>>(words: &[S], labels: &[TokenPrediction]) -> Result<String> {
    if words.len() != labels.len() {
        return Err(Error::length("labels vs words", words.len(), labels.len()));
    }
    let mut out = String::new();
    let mut sentence_start = true;
    for (i, (word, label)) in words.iter().zip(labels).enumerate() {
        if i > 0 {
            out.push(' ');
        }
        if label.lead == Lead::OpenQuestion {
            out.push('¿');
        }
        let word = word.as_ref();
        if sentence_start {
            let mut chars = word.chars();
            if let Some(first) = chars.next() {
                out.extend(first.to_uppercase());
                out.push_str(chars.as_str());
            }
        } else {
            out.push_str(word);
        }
        if let Some(c) = MarkLabel::from(label.trail).symbol() {
            out.push(c);
        }
        sentence_start = matches!(label.trail, Trail::Period | Trail::CloseQuestion);
    }
    Ok(out)
}

/// Split punctuated text into lowercased words and their marks.
///
/// Only `¿ ? , .` are accepted besides letters, digits and whitespace.
pub fn strip_marks(text: &str) -> Result<(Vec<String>, Vec<TokenPrediction>)> {
    let mut words: Vec<String> = Vec::new();
    let mut labels: Vec<TokenPrediction> = Vec::new();
    let mut current = String::new();
    let mut pending_lead: Option<usize> = None;

    // Closes the word being built, if any.
    let flush = |current: &mut String,
                 pending_lead: &mut Option<usize>,
                 words: &mut Vec<String>,
                 labels: &mut Vec<TokenPrediction>| {
        if current.is_empty() {
            return;
        }
        words.push(current.to_lowercase());
        current.clear();
        let lead = if pending_lead.take().is_some() {
            Lead::OpenQuestion
        } else {
            Lead::None
        };
        labels.push(TokenPrediction::new(lead, Trail::None));
    };

    for (offset, c) in text.chars().enumerate() {
        if c.is_alphanumeric() {
            current.push(c);
        } else if c.is_whitespace() {
            flush(&mut current, &mut pending_lead, &mut words, &mut labels);
        } else if c == '¿' {
            flush(&mut current, &mut pending_lead, &mut words, &mut labels);
            if pending_lead.is_some() {
                return Err(Error::validation(format!(
                    "repeated '¿' at offset {offset}"
                )));
            }
            pending_lead = Some(offset);
        } else if let Some(mark) = MarkLabel::from_symbol(c) {
            flush(&mut current, &mut pending_lead, &mut words, &mut labels);
            if pending_lead.is_some() {
                return Err(Error::validation(format!(
                    "{c:?} at offset {offset} follows '¿' with no word in between"
                )));
            }
            let last = labels.last_mut().ok_or_else(|| {
                Error::validation(format!("{c:?} at offset {offset} has no preceding word"))
            })?;
            if last.trail != Trail::None {
                return Err(Error::validation(format!(
                    "multiple trailing marks on one word at offset {offset}"
                )));
            }
            last.trail = Trail::try_from(mark)?;
        } else {
            return Err(Error::validation(format!(
                "unsupported character {c:?} at offset {offset}"
            )));
        }
    }
    flush(&mut current, &mut pending_lead, &mut words, &mut labels);
    if let Some(offset) = pending_lead {
        return Err(Error::validation(format!(
            "'¿' at offset {offset} is not followed by a word"
        )));
    }
    Ok((words, labels))
}
