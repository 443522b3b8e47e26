//! Line-oriented text formats for graphs, characters and words.
//!
//! Graph files hold one `vertices: a b c` line and any number of
//! `edges: a-b b-c` lines. Character files hold `name = p/q` lines; unlisted
//! generators are zero. Word files hold one word per line as
//! whitespace-separated letters `x`, `x^-1`, `x'` or `x^k`, with `1` for the
//! empty word. In every format `#` starts a comment and blank lines are
//! ignored.

use std::str::FromStr;

use num_traits::Zero;

use crate::character::{Basis, Character};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Rational;
use crate::words::Word;

/// Numbered, comment-stripped, nonblank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.')
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut labels: Option<Vec<String>> = None;
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    for (line, content) in content_lines(text) {
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `vertices:` or `edges:`"))?;
        match key.trim() {
            "vertices" => {
                if labels.is_some() {
                    return Err(Error::parse(line, "second `vertices:` line"));
                }
                let mut vs: Vec<String> = Vec::new();
                for tok in rest.split_whitespace() {
                    if !valid_label(tok) {
                        return Err(Error::parse(line, format!("invalid vertex name `{tok}`")));
                    }
                    if vs.iter().any(|v| v == tok) {
                        return Err(Error::parse(line, format!("duplicate vertex `{tok}`")));
                    }
                    vs.push(tok.to_owned());
                }
                labels = Some(vs);
            }
            "edges" => {
                if labels.is_none() {
                    return Err(Error::parse(line, "`edges:` before `vertices:`"));
                }
                for tok in rest.split_whitespace() {
                    let (a, b) = tok
                        .split_once('-')
                        .filter(|(a, b)| valid_label(a) && valid_label(b))
                        .ok_or_else(|| Error::parse(line, format!("malformed edge `{tok}`")))?;
                    edges.push((line, a.to_owned(), b.to_owned()));
                }
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    let labels = labels.ok_or_else(|| Error::parse(0, "missing `vertices:` line"))?;
    let mut index_edges = Vec::with_capacity(edges.len());
    for (line, a, b) in &edges {
        let find = |v: &str| {
            labels
                .iter()
                .position(|l| l == v)
                .ok_or_else(|| Error::parse(*line, format!("unknown vertex `{v}`")))
        };
        let (i, j) = (find(a)?, find(b)?);
        if i == j {
            return Err(Error::parse(*line, format!("self-loop at `{a}`")));
        }
        let key = (i.min(j), i.max(j));
        if index_edges.contains(&key) {
            return Err(Error::parse(*line, format!("duplicate edge `{a}-{b}`")));
        }
        index_edges.push(key);
    }
    Graph::from_index_edges(labels, &index_edges).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn render_graph(g: &Graph) -> String {
    format!("{g}\n")
}

pub fn parse_character(text: &str, basis: &Basis) -> Result<Character> {
    let mut values = vec![Rational::zero(); basis.len()];
    let mut seen = vec![false; basis.len()];
    for (line, content) in content_lines(text) {
        let (name, value) = content
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected `name = value`"))?;
        let name = name.trim();
        let i = basis
            .index_of(name)
            .ok_or_else(|| Error::parse(line, format!("unknown generator `{name}`")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::parse(line, format!("`{name}` assigned twice")));
        }
        let value = value.trim();
        values[i] = Rational::from_str(value)
            .map_err(|_| Error::parse(line, format!("`{value}` is not a rational number")))?;
    }
    Character::new(basis.clone(), values)
}

pub fn render_character(c: &Character) -> String {
    c.basis()
        .names()
        .iter()
        .zip(c.values())
        .map(|(n, v)| format!("{n} = {v}\n"))
        .collect()
}

/// Parses one word; `line` is used for error positions.
pub fn parse_word(text: &str, basis: &Basis, line: usize) -> Result<Word> {
    let mut syllables = Vec::new();
    let mut column = 0;
    for tok in text.split(char::is_whitespace) {
        column += 1;
        if tok.is_empty() {
            continue;
        }
        let col = column;
        column += tok.chars().count();
        if tok == "1" {
            continue;
        }
        let err = |msg: String| Error::parse(line, format!("column {col}: {msg}"));
        let (name, exp) = if let Some(name) = tok.strip_suffix('\'') {
            (name, -1)
        } else if let Some((name, exp)) = tok.rsplit_once('^') {
            let exp = exp
                .parse::<i64>()
                .map_err(|_| err(format!("bad exponent in `{tok}`")))?;
            (name, exp)
        } else {
            (tok, 1)
        };
        let g = basis
            .index_of(name)
            .ok_or_else(|| err(format!("unknown generator `{name}`")))?;
        syllables.push((g, exp));
    }
    Ok(Word::from_syllables(&syllables))
}

/// One word per nonblank line.
pub fn parse_words(text: &str, basis: &Basis) -> Result<Vec<Word>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            (!content.trim().is_empty()).then_some((i + 1, content))
        })
        .map(|(line, content)| parse_word(content, basis, line))
        .collect()
}

pub fn render_word(w: &Word, basis: &Basis) -> String {
    w.display(basis).to_string()
}
