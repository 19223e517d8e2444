//! The line-based poset file format and Graphviz export.
//!
//! ```text
//! # Hasse covers or any strict relations; chains like a<b<c are allowed
//! elements = 1 2 3
//! order = 1<3 2<3
//! dim main = 4 ; 1:2 2:2 3:3
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::forms::DimVector;
use crate::poset::Poset;

/// A parsed poset file: the poset and its named dimension vectors in file
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetFile {
    pub poset: Poset,
    pub vectors: Vec<(String, DimVector)>,
}

impl PosetFile {
    pub fn vector(&self, name: &str) -> Option<&DimVector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Drops whitespace next to `<` and `:` so `a < b` reads as `a<b`.
fn glue(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut pending_space = false;
    for ch in s.chars() {
        if ch.is_whitespace() {
            pending_space = true;
            continue;
        }
        let glued = matches!(ch, '<' | ':') || out.ends_with(['<', ':']);
        if pending_space && !glued && !out.is_empty() {
            out.push(' ');
        }
        pending_space = false;
        out.push(ch);
    }
    out
}

fn column_of(raw: &str, token: &str) -> usize {
    raw.find(token).map_or(1, |i| raw[..i].chars().count() + 1)
}

struct RawVector {
    line: usize,
    raw: String,
    name: String,
    alpha0: i64,
    entries: Vec<(String, i64)>,
}

fn parse_int(raw: &str, line: usize, tok: &str) -> Result<i64> {
    tok.parse::<i64>().map_err(|_| {
        syntax(
            line,
            column_of(raw, tok),
            format!("expected an integer, found `{tok}`"),
        )
    })
}

/// Parses a poset file. Relations are closed transitively; every `dim`
/// line must give a non-negative value for every element.
pub fn parse_poset_file(text: &str) -> Result<PosetFile> {
    let mut elements: Option<Vec<String>> = None;
    let mut relations: Vec<(String, String)> = Vec::new();
    let mut raw_vectors: Vec<RawVector> = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((head, body)) = content.split_once('=') else {
            return Err(syntax(lineno, 1, "expected `keyword = ...`"));
        };
        let head: Vec<&str> = head.split_whitespace().collect();
        match head.as_slice() {
            ["elements"] => {
                if elements.is_some() {
                    return Err(syntax(lineno, 1, "`elements` given twice"));
                }
                let labels: Vec<String> = body.split_whitespace().map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(syntax(
                        lineno,
                        column_of(raw_line, "="),
                        "no elements listed",
                    ));
                }
                elements = Some(labels);
            }
            ["order"] => {
                for tok in glue(body).split_whitespace() {
                    let parts: Vec<&str> = tok.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(syntax(
                            lineno,
                            column_of(
                                raw_line,
                                parts.iter().find(|p| !p.is_empty()).unwrap_or(&tok),
                            ),
                            format!("malformed relation `{tok}`, expected `a<b`"),
                        ));
                    }
                    relations.extend(
                        parts
                            .windows(2)
                            .map(|w| (w[0].to_string(), w[1].to_string())),
                    );
                }
            }
            ["dim", rest @ ..] if rest.len() <= 1 => {
                let name = rest.first().map_or("default", |n| *n).to_string();
                if raw_vectors.iter().any(|v| v.name == name) {
                    return Err(syntax(
                        lineno,
                        1,
                        format!("dimension vector `{name}` defined twice"),
                    ));
                }
                let Some((a0, entries)) = body.split_once(';') else {
                    return Err(syntax(
                        lineno,
                        column_of(raw_line, "="),
                        "expected `alpha0 ; label:value ...`",
                    ));
                };
                let a0 = a0.trim();
                let alpha0 = parse_int(raw_line, lineno, a0)?;
                let mut parsed = Vec::new();
                for tok in glue(entries).split_whitespace() {
                    let Some((label, value)) = tok.split_once(':') else {
                        return Err(syntax(
                            lineno,
                            column_of(raw_line, tok),
                            format!("expected `label:value`, found `{tok}`"),
                        ));
                    };
                    parsed.push((label.to_string(), parse_int(raw_line, lineno, value)?));
                }
                raw_vectors.push(RawVector {
                    line: lineno,
                    raw: raw_line.to_string(),
                    name,
                    alpha0,
                    entries: parsed,
                });
            }
            _ => {
                return Err(syntax(
                    lineno,
                    1,
                    format!("unknown keyword `{}`", head.join(" ")),
                ))
            }
        }
    }

    let Some(labels) = elements else {
        return Err(syntax(1, 1, "missing `elements = ...` line"));
    };
    let poset = Poset::new(labels, relations)?;
    let mut vectors = Vec::with_capacity(raw_vectors.len());
    for rv in raw_vectors {
        if rv.alpha0 < 0 {
            return Err(Error::NegativeDimension {
                label: "0".into(),
                value: rv.alpha0,
            });
        }
        let mut alpha: Vec<Option<i64>> = vec![None; poset.len()];
        for (label, value) in &rv.entries {
            let s = poset.index_of(label)?;
            if *value < 0 {
                return Err(Error::NegativeDimension {
                    label: label.clone(),
                    value: *value,
                });
            }
            if alpha[s].replace(*value).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let alpha = alpha
            .into_iter()
            .enumerate()
            .map(|(s, v)| {
                v.ok_or_else(|| {
                    syntax(
                        rv.line,
                        rv.raw.trim_end().chars().count() + 1,
                        format!(
                            "dimension vector `{}` has no value for element `{}`",
                            rv.name,
                            poset.label(s)
                        ),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        vectors.push((rv.name, DimVector::new(rv.alpha0, alpha)));
    }
    Ok(PosetFile { poset, vectors })
}

/// Writes `p` (as Hasse covers) and the vectors in the file format.
pub fn render_poset_file(p: &Poset, vectors: &[(String, DimVector)]) -> String {
    let mut out = String::new();
    let labels: Vec<&str> = p.labels().iter().map(|l| l.as_str()).collect();
    writeln!(out, "elements = {}", labels.join(" ")).unwrap();
    let covers: Vec<String> = p
        .hasse_covers()
        .into_iter()
        .map(|(s, t)| format!("{}<{}", p.label(s), p.label(t)))
        .collect();
    if !covers.is_empty() {
        writeln!(out, "order = {}", covers.join(" ")).unwrap();
    }
    for (name, v) in vectors {
        let entries: Vec<String> = (0..p.len())
            .map(|s| format!("{}:{}", p.label(s), v.alpha[s]))
            .collect();
        writeln!(out, "dim {name} = {} ; {}", v.alpha0, entries.join(" ")).unwrap();
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph of the Hasse diagram, edges pointing upward. Nodes are
/// labelled `label` or `label:α_s`.
pub fn dot_export(p: &Poset, alpha: Option<&DimVector>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    if let Some(a) = alpha {
        writeln!(out, "  // alpha0 = {}", a.alpha0).unwrap();
    }
    for s in 0..p.len() {
        let text = match alpha {
            Some(a) => format!("{}:{}", p.label(s), a.alpha[s]),
            None => p.label(s).to_string(),
        };
        writeln!(out, "  {} [label={}];", dot_id(p.label(s)), dot_id(&text)).unwrap();
    }
    for (s, t) in p.hasse_covers() {
        writeln!(out, "  {} -> {};", dot_id(p.label(s)), dot_id(p.label(t))).unwrap();
    }
    out.push_str("}\n");
    out
}
