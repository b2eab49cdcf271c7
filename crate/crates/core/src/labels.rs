//! Punctuation label alphabet and the per-token slot types.
//!
//! A token carries two independent slots: a *lead* slot in front of the word
//! (only `¿` can go there) and a *trail* slot after it (`?`, `,` or `.`).
//! The slot enums make an out-of-place mark unrepresentable once decoded;
//! conversion from the flat [`MarkLabel`] alphabet is where slot violations
//! are reported.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The five-label punctuation alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkLabel {
    #[serde(rename = "O_Q")]
    OpenQuestion,
    #[serde(rename = "C_Q")]
    CloseQuestion,
    #[serde(rename = "COMMA")]
    Comma,
    #[serde(rename = "PERIOD")]
    Period,
    #[serde(rename = "NONE")]
    None,
}

impl MarkLabel {
    pub const ALL: [MarkLabel; 5] = [
        MarkLabel::OpenQuestion,
        MarkLabel::CloseQuestion,
        MarkLabel::Comma,
        MarkLabel::Period,
        MarkLabel::None,
    ];

    /// The four scored marks, in report order.
    pub const SCORED: [MarkLabel; 4] = [
        MarkLabel::OpenQuestion,
        MarkLabel::CloseQuestion,
        MarkLabel::Comma,
        MarkLabel::Period,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MarkLabel::OpenQuestion => "O_Q",
            MarkLabel::CloseQuestion => "C_Q",
            MarkLabel::Comma => "COMMA",
            MarkLabel::Period => "PERIOD",
            MarkLabel::None => "NONE",
        }
    }

    /// The rendered character, if any.
    pub fn symbol(self) -> Option<char> {
        match self {
            MarkLabel::OpenQuestion => Some('¿'),
            MarkLabel::CloseQuestion => Some('?'),
            MarkLabel::Comma => Some(','),
            MarkLabel::Period => Some('.'),
            MarkLabel::None => None,
        }
    }

    pub fn from_symbol(c: char) -> Option<MarkLabel> {
        match c {
            '¿' => Some(MarkLabel::OpenQuestion),
            '?' => Some(MarkLabel::CloseQuestion),
            ',' => Some(MarkLabel::Comma),
            '.' => Some(MarkLabel::Period),
            _ => None,
        }
    }

    pub fn is_none(self) -> bool {
        self == MarkLabel::None
    }
}

impl fmt::Display for MarkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MarkLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MarkLabel::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::validation(format!("unknown mark label {s:?}")))
    }
}

/// Is `c` one of `¿ ? , .`?
pub fn is_mark_char(c: char) -> bool {
    MarkLabel::from_symbol(c).is_some()
}

/// Mark allowed in front of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "MarkLabel", into = "MarkLabel")]
pub enum Lead {
    #[default]
    None,
    OpenQuestion,
}

/// Mark allowed after a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "MarkLabel", into = "MarkLabel")]
pub enum Trail {
    #[default]
    None,
    CloseQuestion,
    Comma,
    Period,
}

/// Mark the acoustic channel can emit: it only ever predicts `?`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "MarkLabel", into = "MarkLabel")]
pub enum AcousticMark {
    #[default]
    None,
    CloseQuestion,
}

impl Trail {
    pub const ALL: [Trail; 4] = [
        Trail::None,
        Trail::CloseQuestion,
        Trail::Comma,
        Trail::Period,
    ];

    /// Collision priority used when two marks land on one slot.
    pub fn priority(self) -> u8 {
        match self {
            Trail::None => 0,
            Trail::Comma => 1,
            Trail::Period => 2,
            Trail::CloseQuestion => 3,
        }
    }
}

impl Lead {
    pub fn priority(self) -> u8 {
        match self {
            Lead::None => 0,
            Lead::OpenQuestion => 1,
        }
    }
}

macro_rules! slot_conversions {
    ($slot:ident, $name:literal, { $($variant:ident),+ }) => {
        impl From<$slot> for MarkLabel {
            fn from(s: $slot) -> MarkLabel {
                match s {
                    $($slot::$variant => MarkLabel::$variant,)+
                }
            }
        }

        impl TryFrom<MarkLabel> for $slot {
            type Error = Error;

            fn try_from(m: MarkLabel) -> Result<Self, Error> {
                match m {
                    $(MarkLabel::$variant => Ok($slot::$variant),)+
                    #[allow(unreachable_patterns)]
                    other => Err(Error::validation(format!(
                        "{} is not allowed in the {} slot",
                        other,
                        $name
                    ))),
                }
            }
        }

        impl fmt::Display for $slot {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(MarkLabel::from(*self).as_str())
            }
        }
    };
}

slot_conversions!(Lead, "lead", { None, OpenQuestion });
slot_conversions!(Trail, "trail", { None, CloseQuestion, Comma, Period });
slot_conversions!(AcousticMark, "acoustic trail", { None, CloseQuestion });
