//! Labeled argument texts: the built-in examples and user-supplied files.
//!
//! User files hold one text per line as `id<TAB>label<TAB>text`. Blank lines
//! and lines starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Circular,
    NonCircular,
    Inductive,
    Syllogism,
    Absurd,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Circular => "circular",
            Label::NonCircular => "non-circular",
            Label::Inductive => "inductive",
            Label::Syllogism => "syllogism",
            Label::Absurd => "absurd",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "circular" => Ok(Label::Circular),
            "non-circular" => Ok(Label::NonCircular),
            "inductive" => Ok(Label::Inductive),
            "syllogism" => Ok(Label::Syllogism),
            "absurd" => Ok(Label::Absurd),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    User,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentText {
    pub id: String,
    pub label: Label,
    pub text: String,
    pub source: Source,
    /// How the text was transcribed, when it differs from the original.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const BUILTIN: &[(&str, Label, &str, Option<&str>)] = &[
    (
        "c1",
        Label::Circular,
        "There is no way they can win because they do not have enough support. They do not have enough support because there is no way they can win.",
        Some("typographic quotes removed"),
    ),
    (
        "c2",
        Label::Circular,
        "There is no way for the crew to win because the crew does not have good rowers. The crew does not have good rowers because there is no way for the crew to win.",
        Some("typographic quotes removed"),
    ),
    (
        "c3",
        Label::Circular,
        "The Russian crew must lose  because the coach did not hire Siberian rowers. The team did not enlist the good Siberian rowers because there is no way for the Russian crew to win.",
        Some("typographic quotes removed; double space kept as transcribed"),
    ),
    (
        "nc1",
        Label::NonCircular,
        "There is no way they can win if they do not have enough support. They do not have enough support, so there is no way they can win.",
        Some("typographic quotes removed"),
    ),
    (
        "nc2",
        Label::NonCircular,
        "No way the anarchists can lose the primary elections if they have enough support. The anarchists have strong support, so there is no way they can lose the primaries.",
        Some("typographic quotes removed"),
    ),
    (
        "ind1",
        Label::Inductive,
        "Gold is going up. Platinum is also going up. We should buy all metals, including copper and silver.",
        Some("typographic quotes removed"),
    ),
    (
        "syl1",
        Label::Syllogism,
        "Every animal is created by evolution. The lion is an animal. The lion is created by evolution.",
        Some("typographic quotes removed"),
    ),
    (
        "abs1",
        Label::Absurd,
        "The body may perhaps compensates for the loss of a true metaphysics. Yeah, I think it's a good environment for learning English. Wednesday is hump day, but has anyone asked the camel",
        Some("source text continues past an ellipsis; only the quoted portion is kept"),
    ),
];

/// The eight built-in argument texts.
pub fn builtin_corpus() -> Vec<ArgumentText> {
    BUILTIN
        .iter()
        .map(|&(id, label, text, note)| ArgumentText {
            id: id.to_string(),
            label,
            text: text.to_string(),
            source: Source::Builtin,
            note: note.map(str::to_string),
        })
        .collect()
}

/// Parses `id<TAB>label<TAB>text` lines.
pub fn parse_corpus(contents: &str) -> Result<Vec<ArgumentText>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in contents.lines().enumerate() {
        let line_no = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| Error::MalformedCorpus { line: line_no, reason };
        let mut fields = line.splitn(3, '\t');
        let (Some(id), Some(label), Some(text)) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed("expected id<TAB>label<TAB>text".to_string()));
        };
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(malformed(format!("invalid id {id:?}")));
        }
        if text.trim().is_empty() {
            return Err(malformed("empty text".to_string()));
        }
        let label: Label = label.parse().map_err(malformed)?;
        if !seen.insert(id.to_string()) {
            return Err(malformed(format!("duplicate id {id:?}")));
        }
        out.push(ArgumentText {
            id: id.to_string(),
            label,
            text: text.to_string(),
            source: Source::User,
            note: None,
        });
    }
    Ok(out)
}

pub fn load_corpus_file(path: impl AsRef<Path>) -> Result<Vec<ArgumentText>> {
    let path = path.as_ref();
    let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&contents)
}

/// Serializes texts in the user-file format.
pub fn format_corpus(texts: &[ArgumentText]) -> String {
    texts
        .iter()
        .map(|t| format!("{}\t{}\t{}\n", t.id, t.label, t.text))
        .collect()
}

/// Built-in texts followed by user texts; ids must stay unique.
pub fn merged_corpus(user: Vec<ArgumentText>) -> Result<Vec<ArgumentText>> {
    let mut all = builtin_corpus();
    for text in user {
        if all.iter().any(|t| t.id == text.id) {
            return Err(Error::Config(format!("text id {:?} is already defined", text.id)));
        }
        all.push(text);
    }
    Ok(all)
}

pub fn find<'a>(corpus: &'a [ArgumentText], id: &str) -> Result<&'a ArgumentText> {
    corpus
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownText(id.to_string()))
}
