//! GloVe text-format embedding tables and the tokenizer that feeds them.
//!
//! A GloVe text file has no header: every line is a token followed by its
//! components, all separated by single spaces:
//!
//! ```text
//! the 0.418 0.24968 -0.41242
//! , 0.013441 0.23682 -0.16899
//! ```
//!
//! Components are stored in single precision (the precision GloVe files are
//! written with); projections widen them to `f64`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Immutable token → vector map with a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    tokens: Vec<String>,
    // row-major, `tokens.len() * dimension` components
    data: Vec<f32>,
    index: HashMap<String, usize>,
    source_path: String,
}

impl EmbeddingTable {
    /// Builds a table from in-memory entries, enforcing the same invariants as
    /// the file loader.
    pub fn from_entries<I, S>(dimension: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f32>)>,
        S: Into<String>,
    {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut table = EmbeddingTable::empty(dimension, "<memory>".to_string());
        for (i, (token, vector)) in entries.into_iter().enumerate() {
            let line = i + 1;
            if vector.len() != dimension {
                return Err(Error::DimensionMismatch {
                    line,
                    expected: dimension,
                    found: vector.len(),
                });
            }
            if let Some(bad) = vector.iter().find(|v| !v.is_finite()) {
                return Err(Error::MalformedLine {
                    line,
                    reason: format!("non-finite component {bad}"),
                });
            }
            table.insert(line, token.into(), &vector)?;
        }
        Ok(table)
    }

    fn empty(dimension: usize, source_path: String) -> Self {
        EmbeddingTable {
            dimension,
            tokens: Vec::new(),
            data: Vec::new(),
            index: HashMap::new(),
            source_path,
        }
    }

    fn insert(&mut self, line: usize, token: String, vector: &[f32]) -> Result<()> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::MalformedLine {
                line,
                reason: format!("invalid token {token:?}"),
            });
        }
        if self.index.contains_key(&token) {
            return Err(Error::MalformedLine {
                line,
                reason: format!("duplicate token {token:?}"),
            });
        }
        self.index.insert(token.clone(), self.tokens.len());
        self.tokens.push(token);
        self.data.extend_from_slice(vector);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    pub fn get(&self, token: &str) -> Option<&[f32]> {
        self.index.get(token).map(|&row| self.row(row))
    }

    fn row(&self, row: usize) -> &[f32] {
        &self.data[row * self.dimension..(row + 1) * self.dimension]
    }

    /// Entries in file order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.tokens
            .iter()
            .enumerate()
            .map(|(row, token)| (token.as_str(), self.row(row)))
    }

    /// Writes the table back out in GloVe text format.
    pub fn write_glove<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (token, vector) in self.iter() {
            out.write_all(token.as_bytes())?;
            for v in vector {
                write!(out, " {v}")?;
            }
            out.write_all(b"\n")?;
        }
        out.flush()
    }
}

/// Parses a GloVe text stream.
///
/// The table dimension is the component count of the first line. Every later
/// line must have the same count; if `expected_dimension` is given the first
/// line must match it too. Errors carry the 1-based line number.
pub fn load_glove<R: BufRead>(
    mut source: R,
    expected_dimension: Option<usize>,
) -> Result<EmbeddingTable> {
    load_glove_named(&mut source, expected_dimension, "<stream>".to_string())
}

/// Opens and parses a GloVe file from disk.
pub fn load_glove_path(
    path: impl AsRef<Path>,
    expected_dimension: Option<usize>,
) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::with_capacity(1 << 20, file);
    load_glove_named(reader, expected_dimension, path.display().to_string())
}

fn load_glove_named<R: BufRead>(
    mut source: R,
    expected_dimension: Option<usize>,
    source_path: String,
) -> Result<EmbeddingTable> {
    if expected_dimension == Some(0) {
        return Err(Error::ZeroDimension);
    }
    let mut table: Option<EmbeddingTable> = None;
    let mut buf = String::new();
    let mut components: Vec<f32> = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        let read = source.read_line(&mut buf).map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::MalformedLine {
                line: line_no + 1,
                reason: "invalid UTF-8".to_string(),
            },
            _ => Error::io(PathBuf::from(&source_path), e),
        })?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let line = buf
            .strip_suffix('\n')
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .unwrap_or(&buf);

        let mut fields = line.split(' ');
        let token = fields.next().unwrap_or_default();
        if token.is_empty() {
            return Err(Error::MalformedLine {
                line: line_no,
                reason: "empty token".to_string(),
            });
        }
        components.clear();
        for field in fields {
            let value: f32 = field.parse().map_err(|_| Error::MalformedLine {
                line: line_no,
                reason: format!("cannot parse component {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::MalformedLine {
                    line: line_no,
                    reason: format!("non-finite component {field:?}"),
                });
            }
            components.push(value);
        }

        let table = match &mut table {
            Some(t) => t,
            None => {
                if components.is_empty() {
                    return Err(Error::MalformedLine {
                        line: line_no,
                        reason: "no vector components".to_string(),
                    });
                }
                if let Some(expected) = expected_dimension {
                    if expected != components.len() {
                        return Err(Error::DimensionMismatch {
                            line: line_no,
                            expected,
                            found: components.len(),
                        });
                    }
                }
                table.insert(EmbeddingTable::empty(components.len(), source_path.clone()))
            }
        };
        if components.len() != table.dimension {
            return Err(Error::DimensionMismatch {
                line: line_no,
                expected: table.dimension,
                found: components.len(),
            });
        }
        table.insert(line_no, token.to_string(), &components)?;
    }
    table.ok_or(Error::EmptyFile)
}

/// A token stream, plus the out-of-vocabulary tokens dropped from it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    /// `(position, token)` with positions into `tokens`, strictly increasing.
    pub skipped: Vec<(usize, String)>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

const PUNCTUATION: &[char] = &['.', ',', ';', ':', '!', '?', '"', '(', ')', '…', '—'];

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Lowercases and splits text roughly the way GloVe vocabularies were built:
/// punctuation marks become their own tokens and a word is split before each
/// apostrophe (`it's` → `it`, `'s`).
pub fn tokenize(text: &str) -> TokenSequence {
    let lowered = text.to_lowercase();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, tokens: &mut Vec<String>| {
        if !current.is_empty() {
            tokens.push(std::mem::take(current));
        }
    };
    for c in lowered.chars() {
        if c.is_whitespace() {
            flush(&mut current, &mut tokens);
        } else if PUNCTUATION.contains(&c) {
            flush(&mut current, &mut tokens);
            tokens.push(c.to_string());
        } else if is_apostrophe(c) {
            flush(&mut current, &mut tokens);
            current.push('\'');
        } else {
            current.push(c);
        }
    }
    flush(&mut current, &mut tokens);
    TokenSequence {
        tokens,
        skipped: Vec::new(),
    }
}

/// Replaces each token by its embedding vector, dropping tokens the table
/// does not know. The returned sequence keeps every token and lists the
/// dropped ones in `skipped`.
pub fn lookup_sequence(
    table: &EmbeddingTable,
    tokens: &TokenSequence,
) -> Result<(Vec<Vec<f64>>, TokenSequence)> {
    let mut vectors = Vec::with_capacity(tokens.len());
    let mut skipped = Vec::new();
    for (position, token) in tokens.tokens.iter().enumerate() {
        match table.get(token) {
            Some(v) => vectors.push(v.iter().map(|&x| f64::from(x)).collect()),
            None => skipped.push((position, token.clone())),
        }
    }
    if vectors.is_empty() {
        return Err(Error::AllTokensSkipped(tokens.len()));
    }
    Ok((
        vectors,
        TokenSequence {
            tokens: tokens.tokens.clone(),
            skipped,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(words: &[&str]) -> TokenSequence {
        TokenSequence {
            tokens: words.iter().map(|s| s.to_string()).collect(),
            skipped: vec![],
        }
    }

    fn strs(seq: &TokenSequence) -> Vec<&str> {
        seq.tokens.iter().map(String::as_str).collect()
    }

    #[test]
    fn parses_two_line_file() {
        let t = load_glove("a 1.0 2.0\nb 3.0 4.0".as_bytes(), None).unwrap();
        assert_eq!(t.dimension(), 2);
        assert_eq!(t.len(), 2);
        assert_eq!(t.get("a").unwrap(), &[1.0, 2.0]);
        assert_eq!(t.get("b").unwrap(), &[3.0, 4.0]);
    }

    #[test]
    fn ragged_line_is_rejected_with_line_number() {
        let err = load_glove("a 1.0 2.0\nb 3.0".as_bytes(), None).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                line: 2,
                expected: 2,
                found: 1
            }
        ));
    }

    #[test]
    fn expected_dimension_is_checked() {
        let err = load_glove("a 1.0 2.0\n".as_bytes(), Some(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { line: 1, .. }));
        assert!(load_glove("a 1.0 2.0\n".as_bytes(), Some(2)).is_ok());
    }

    #[test]
    fn malformed_lines() {
        for (input, line) in [
            ("a 1.0 x\n", 1),
            ("a 1.0 2.0\n 1.0 2.0\n", 2),
            ("a 1.0  2.0\n", 1),
            ("a 1.0 2.0\n\n", 2),
            ("a inf 2.0\n", 1),
            ("a\n", 1),
            ("a 1 2\na 3 4\n", 2),
        ] {
            match load_glove(input.as_bytes(), None) {
                Err(Error::MalformedLine { line: l, .. }) => assert_eq!(l, line, "{input:?}"),
                other => panic!("{input:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_file() {
        assert!(matches!(load_glove("".as_bytes(), None), Err(Error::EmptyFile)));
    }

    #[test]
    fn crlf_line_endings() {
        let t = load_glove("a 1 2\r\nb 3 4\r\n".as_bytes(), None).unwrap();
        assert_eq!(t.get("b").unwrap(), &[3.0, 4.0]);
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(strs(&tokenize("They can win.")), ["they", "can", "win", "."]);
        assert_eq!(
            strs(&tokenize("it's a good environment")),
            ["it", "'s", "a", "good", "environment"]
        );
        assert!(tokenize("").is_empty());
        assert!(tokenize(" \t\n").is_empty());
        assert_eq!(
            strs(&tokenize("support, so (maybe) \"no\"…")),
            ["support", ",", "so", "(", "maybe", ")", "\"", "no", "\"", "…"]
        );
        assert_eq!(strs(&tokenize("rock'n'roll")), ["rock", "'n", "'roll"]);
        assert_eq!(strs(&tokenize("it\u{2019}s")), ["it", "'s"]);
    }

    #[test]
    fn lookup_examples() {
        let table = EmbeddingTable::from_entries(2, [("a", vec![1.0, 2.0])]).unwrap();
        let (v, seq) = lookup_sequence(&table, &toks(&["a", "a"])).unwrap();
        assert_eq!(v, vec![vec![1.0, 2.0], vec![1.0, 2.0]]);
        assert!(seq.skipped.is_empty());

        let (v, seq) = lookup_sequence(&table, &toks(&["a", "zzzqq", "a"])).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(seq.skipped, vec![(1, "zzzqq".to_string())]);

        assert!(matches!(
            lookup_sequence(&table, &toks(&["zzzqq"])),
            Err(Error::AllTokensSkipped(1))
        ));
    }

    fn arb_table() -> impl Strategy<Value = EmbeddingTable> {
        (1usize..6).prop_flat_map(|dim| {
            prop::collection::btree_map(
                "[a-z'.,]{1,6}",
                prop::collection::vec(-1.0e3f32..1.0e3, dim),
                1..20,
            )
            .prop_map(move |m| EmbeddingTable::from_entries(dim, m).unwrap())
        })
    }

    proptest! {
        #[test]
        fn glove_round_trip(table in arb_table()) {
            let mut buf = Vec::new();
            table.write_glove(&mut buf).unwrap();
            let back = load_glove(buf.as_slice(), Some(table.dimension())).unwrap();
            prop_assert_eq!(back.dimension(), table.dimension());
            prop_assert!(back.iter().eq(table.iter()));
        }

        #[test]
        fn tokenize_is_idempotent(text in "[a-zA-Z '’.,;:!?\"()…—-]{0,60}") {
            let once = tokenize(&text);
            let twice = tokenize(&once.tokens.join(" "));
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn lookup_accounts_for_every_token(
            words in prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "x", "y"]), 1..30)
        ) {
            let table = EmbeddingTable::from_entries(
                3,
                [("a", vec![1.0, 0.0, 0.0]), ("b", vec![0.0, 1.0, 0.0]), ("c", vec![0.0, 0.0, 1.0])],
            ).unwrap();
            let seq = toks(&words);
            match lookup_sequence(&table, &seq) {
                Ok((vectors, out)) => {
                    prop_assert_eq!(vectors.len() + out.skipped.len(), seq.len());
                    prop_assert!(out.skipped.windows(2).all(|w| w[0].0 < w[1].0));
                    prop_assert!(vectors.iter().all(|v| v.len() == 3));
                }
                Err(Error::AllTokensSkipped(n)) => {
                    prop_assert_eq!(n, seq.len());
                    prop_assert!(words.iter().all(|w| *w == "x" || *w == "y"));
                }
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
