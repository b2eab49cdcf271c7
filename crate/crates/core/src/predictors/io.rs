//! Line-delimited JSON prediction files.
//!
//! One utterance per line:
//!
//! ```json
//! {"id": "u1", "words": ["okey", "los"],
//!  "lexical": [{"lead": "NONE", "trail": "COMMA", "prob": 0.9}, ...],
//!  "acoustic": [{"trail": "NONE"}, ...],
//!  "reference": [{"lead": "NONE", "trail": "COMMA"}, ...]}
//! ```
//!
//! `acoustic`, `reference` and `reference_words` are optional. Blank lines
//! are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::utterance::{AcousticPrediction, TokenPrediction, Utterance};

/// Whether a record must carry a `lexical` track.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexicalTrack {
    Required,
    /// Missing tracks decode as empty; the caller fills them in.
    Optional,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    id: String,
    words: Vec<String>,
    #[serde(default)]
    lexical: Option<Vec<TokenPrediction>>,
    #[serde(default)]
    acoustic: Option<Vec<AcousticPrediction>>,
    #[serde(default)]
    reference: Option<Vec<TokenPrediction>>,
    #[serde(default)]
    reference_words: Option<Vec<String>>,
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<Vec<Utterance>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    read_predictions(BufReader::new(file), path)
}

pub fn read_predictions<R: BufRead>(reader: R, name: impl Into<PathBuf>) -> Result<Vec<Utterance>> {
    read_records(reader, name, LexicalTrack::Required)
}

/// Decode and validate every record, reporting failures with their line
/// number and the JSON path of the offending field.
pub fn read_records<R: BufRead>(
    reader: R,
    name: impl Into<PathBuf>,
    lexical: LexicalTrack,
) -> Result<Vec<Utterance>> {
    let file = name.into();
    let parse_error = |line: usize, path: &str, message: String| Error::Parse {
        file: file.clone(),
        line,
        path: path.to_string(),
        message,
    };
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let de = &mut serde_json::Deserializer::from_str(&line);
        let record: Record = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            parse_error(lineno, &path, e.into_inner().to_string())
        })?;
        let lexical_track = match (record.lexical, lexical) {
            (Some(l), _) => l,
            (None, LexicalTrack::Optional) => Vec::new(),
            (None, LexicalTrack::Required) => {
                return Err(parse_error(
                    lineno,
                    "lexical",
                    "missing field `lexical`".into(),
                ))
            }
        };
        let u = Utterance {
            id: record.id,
            words: record.words,
            lexical: lexical_track,
            acoustic: record.acoustic,
            reference: record.reference,
            reference_words: record.reference_words,
        };
        let check = if lexical == LexicalTrack::Optional && u.lexical.is_empty() {
            Utterance {
                lexical: vec![TokenPrediction::NONE; u.words.len()],
                ..u.clone()
            }
            .validate()
        } else {
            u.validate()
        };
        check.map_err(|e| parse_error(lineno, &u.id, e.to_string()))?;
        out.push(u);
    }
    Ok(out)
}

pub fn write_predictions<W: Write>(mut writer: W, utterances: &[Utterance]) -> Result<()> {
    for u in utterances {
        serde_json::to_writer(&mut writer, u).map_err(std::io::Error::from)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}
