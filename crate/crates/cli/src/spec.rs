//! The textual braid format: `n=<strands>; colors=<j1,...,jn>; word=<±i ...>`.

use rtlink::{ColoredBraidWord, Spin};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at byte {position}: {reason}")]
    Parse { position: usize, reason: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

fn parse_err(position: usize, reason: impl Into<String>) -> SpecError {
    SpecError::Parse { position, reason: reason.into() }
}

/// Splits `text` on `sep`, yielding trimmed pieces with their byte offsets.
fn pieces(text: &str, base: usize, sep: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        if i == text.len() || sep(ch) {
            let raw = &text[start..i];
            let lead = raw.len() - raw.trim_start().len();
            if !raw.trim().is_empty() {
                out.push((base + start + lead, raw.trim()));
            }
            start = i + ch.len_utf8();
        }
    }
    out
}

pub fn parse_braid_spec(text: &str) -> Result<ColoredBraidWord, SpecError> {
    let mut n: Option<(usize, usize)> = None;
    let mut colors: Option<(usize, Vec<Spin>)> = None;
    let mut word: Option<Vec<i32>> = None;
    for (pos, field) in pieces(text, 0, |c| c == ';') {
        let (key, value) = field.split_once('=').ok_or_else(|| parse_err(pos, format!("expected key=value, got {field:?}")))?;
        let value_pos = pos + key.len() + 1 + (value.len() - value.trim_start().len());
        let key = key.trim();
        let value = value.trim();
        let duplicate = || parse_err(pos, format!("duplicate field {key:?}"));
        match key {
            "n" => {
                if n.is_some() {
                    return Err(duplicate());
                }
                let v = value.parse().map_err(|_| parse_err(value_pos, format!("invalid strand count {value:?}")))?;
                n = Some((pos, v));
            }
            "colors" => {
                if colors.is_some() {
                    return Err(duplicate());
                }
                let mut cs = Vec::new();
                for (p, tok) in pieces(value, value_pos, |c| c == ',' || c.is_whitespace()) {
                    cs.push(tok.parse::<Spin>().map_err(|e| parse_err(p, e))?);
                }
                colors = Some((value_pos, cs));
            }
            "word" => {
                if word.is_some() {
                    return Err(duplicate());
                }
                let mut w = Vec::new();
                for (p, tok) in pieces(value, value_pos, |c| c == ',' || c.is_whitespace()) {
                    let g: i32 = tok
                        .strip_prefix('+')
                        .unwrap_or(tok)
                        .parse()
                        .map_err(|_| parse_err(p, format!("invalid generator {tok:?}")))?;
                    w.push(g);
                }
                word = Some(w);
            }
            other => return Err(parse_err(pos, format!("unknown field {other:?}"))),
        }
    }
    let (_, n) = n.ok_or_else(|| parse_err(text.len(), "missing field \"n\""))?;
    let (_, colors) = colors.ok_or_else(|| parse_err(text.len(), "missing field \"colors\""))?;
    let word = word.unwrap_or_default();
    ColoredBraidWord::new(n, colors, word).map_err(|e| SpecError::Semantic(e.to_string()))
}
