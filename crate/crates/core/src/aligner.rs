//! Word-level Levenshtein alignment and transfer of marks from a hypothesis
//! onto reference positions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::{Lead, Trail};
use crate::utterance::{TokenPrediction, Utterance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EditKind {
    Match,
    Substitute,
    /// Extra hypothesis word.
    Insert,
    /// Reference word missing from the hypothesis.
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EditOp {
    pub kind: EditKind,
    pub hyp: Option<usize>,
    #[serde(rename = "ref")]
    pub reference: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

/// Substitution, deletion and insertion counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EditCounts {
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
}

impl EditCounts {
    pub fn total(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }
}

impl EditScript {
    pub fn counts(&self) -> EditCounts {
        let mut c = EditCounts::default();
        for op in &self.ops {
            match op.kind {
                EditKind::Match => {}
                EditKind::Substitute => c.substitutions += 1,
                EditKind::Delete => c.deletions += 1,
                EditKind::Insert => c.insertions += 1,
            }
        }
        c
    }

    pub fn cost(&self) -> usize {
        self.counts().total()
    }

    pub fn hyp_len(&self) -> usize {
        self.ops.iter().filter(|op| op.hyp.is_some()).count()
    }

    pub fn ref_len(&self) -> usize {
        self.ops.iter().filter(|op| op.reference.is_some()).count()
    }
}

/// Minimal unit-cost alignment of `hyp` against `reference`, comparing words
/// case-insensitively.
///
/// Among equal-cost scripts the backtrace (run from the end) prefers a
/// diagonal step, then a deletion, then an insertion, which makes the
/// script canonical.
pub fn align_tokens<H: AsRef<str>, R: AsRef<str>>(hyp: &[H], reference: &[R]) -> EditScript {
    let h: Vec<String> = hyp.iter().map(|w| w.as_ref().to_lowercase()).collect();
    let r: Vec<String> = reference
        .iter()
        .map(|w| w.as_ref().to_lowercase())
        .collect();
    let (n, m) = (h.len(), r.len());
    let width = m + 1;
    let mut dist = vec![0usize; (n + 1) * width];
    for (j, d) in dist[..width].iter_mut().enumerate() {
        *d = j;
    }
    for i in 1..=n {
        dist[i * width] = i;
        for j in 1..=m {
            let sub = dist[(i - 1) * width + j - 1] + usize::from(h[i - 1] != r[j - 1]);
            let del = dist[i * width + j - 1] + 1;
            let ins = dist[(i - 1) * width + j] + 1;
            dist[i * width + j] = sub.min(del).min(ins);
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dist[i * width + j];
        if i > 0 && j > 0 {
            let same = h[i - 1] == r[j - 1];
            if here == dist[(i - 1) * width + j - 1] + usize::from(!same) {
                let kind = if same {
                    EditKind::Match
                } else {
                    EditKind::Substitute
                };
                i -= 1;
                j -= 1;
                ops.push(EditOp {
                    kind,
                    hyp: Some(i),
                    reference: Some(j),
                });
                continue;
            }
        }
        if j > 0 && here == dist[i * width + j - 1] + 1 {
            j -= 1;
            ops.push(EditOp {
                kind: EditKind::Delete,
                hyp: None,
                reference: Some(j),
            });
        } else {
            i -= 1;
            ops.push(EditOp {
                kind: EditKind::Insert,
                hyp: Some(i),
                reference: None,
            });
        }
    }
    ops.reverse();
    EditScript { ops }
}

/// Move hypothesis marks onto reference positions along `script`.
///
/// Aligned pairs copy the whole label. An inserted word's trail goes to the
/// closest earlier aligned reference word and its lead to the closest later
/// one; either is dropped when no such word exists. Deleted reference words
/// get no marks. When marks collide the stronger one wins
/// (`?` > `.` > `,` on trails, `¿` on leads).
pub fn transfer_marks(
    hyp_labels: &[TokenPrediction],
    script: &EditScript,
    ref_len: usize,
) -> Result<Vec<TokenPrediction>> {
    if hyp_labels.len() != script.hyp_len() {
        return Err(Error::length(
            "hypothesis labels vs edit script",
            script.hyp_len(),
            hyp_labels.len(),
        ));
    }
    if ref_len != script.ref_len() {
        return Err(Error::length(
            "reference length vs edit script",
            script.ref_len(),
            ref_len,
        ));
    }
    let mut out = vec![TokenPrediction::NONE; ref_len];
    let mut last_aligned: Option<usize> = None;
    let mut pending_lead = Lead::None;

    fn merge_trail(slot: &mut Trail, t: Trail) {
        if t.priority() > slot.priority() {
            *slot = t;
        }
    }
    fn merge_lead(slot: &mut Lead, l: Lead) {
        if l.priority() > slot.priority() {
            *slot = l;
        }
    }

    for op in &script.ops {
        match (op.kind, op.hyp, op.reference) {
            (EditKind::Match | EditKind::Substitute, Some(h), Some(r)) => {
                let label = hyp_labels[h];
                let mut target = label;
                merge_lead(&mut target.lead, pending_lead);
                out[r] = target;
                pending_lead = Lead::None;
                last_aligned = Some(r);
            }
            (EditKind::Insert, Some(h), None) => {
                let label = hyp_labels[h];
                if let Some(r) = last_aligned {
                    merge_trail(&mut out[r].trail, label.trail);
                }
                merge_lead(&mut pending_lead, label.lead);
            }
            (EditKind::Delete, None, Some(_)) => {}
            _ => {
                return Err(Error::validation(format!("malformed edit op {op:?}")));
            }
        }
    }
    Ok(out)
}

/// Labels for the reference positions of `u`.
///
/// When the reference transcript matches the hypothesis words the labels are
/// returned as they are; otherwise they are transferred through an alignment.
pub fn project_onto_reference(
    u: &Utterance,
    labels: &[TokenPrediction],
) -> Result<Vec<TokenPrediction>> {
    if !u.has_distinct_reference_words() {
        return Ok(labels.to_vec());
    }
    let reference = u.reference_words();
    let script = align_tokens(&u.words, reference);
    transfer_marks(labels, &script, reference.len())
}
