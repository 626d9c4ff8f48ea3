//! Text and binary graph formats.
//!
//! **Arc list.** Lines starting with `#` and blank lines are ignored. The
//! first remaining line is `n <count>`; every later line is `u v`, meaning
//! the arc `u → v`.
//!
//! ```text
//! # a directed triangle
//! n 3
//! 0 1
//! 1 2
//! 2 0
//! ```
//!
//! **digraph6.** The byte `&`, then the vertex count `N(n)`, then the `n²`
//! adjacency-matrix bits in row-major order (bit `(u, v)` set iff `u → v`),
//! packed six to a byte, most significant first, zero-padded, each byte
//! offset by 63. `N(n)` is the single byte `n + 63` for `n <= 62`, and
//! otherwise `126` followed by three bytes holding `n` in 18 bits (or
//! `126 126` followed by six bytes holding it in 36 bits).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, GraphError, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("digraph6: {0}")]
    BadHeader(String),
    #[error("digraph6: nonzero padding bits")]
    BadPadding,
    #[error("digraph6: expected {expected} matrix bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Arclist,
    Digraph6,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "arclist" => Ok(GraphFormat::Arclist),
            "digraph6" => Ok(GraphFormat::Digraph6),
            other => Err(format!("unknown format `{other}` (arclist, digraph6)")),
        }
    }
}

/// Serialized graph bytes tagged with their format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub format: GraphFormat,
    pub payload: Vec<u8>,
}

impl GraphFile {
    pub fn encode(d: &Digraph, format: GraphFormat) -> Self {
        let payload = match format {
            GraphFormat::Arclist => write_arclist(d).into_bytes(),
            GraphFormat::Digraph6 => {
                let mut bytes = write_digraph6(d);
                bytes.push(b'\n');
                bytes
            }
        };
        GraphFile { format, payload }
    }

    /// Guesses the format: a payload whose first non-space byte is `&` is digraph6.
    pub fn detect(payload: Vec<u8>) -> Self {
        let format = match payload.iter().find(|b| !b.is_ascii_whitespace()) {
            Some(b'&') => GraphFormat::Digraph6,
            _ => GraphFormat::Arclist,
        };
        GraphFile { format, payload }
    }

    pub fn decode(&self) -> Result<Digraph, FormatError> {
        match self.format {
            GraphFormat::Arclist => {
                let text = std::str::from_utf8(&self.payload).map_err(|e| FormatError::Syntax {
                    line: 0,
                    message: format!("invalid UTF-8: {e}"),
                })?;
                parse_arclist(text)
            }
            GraphFormat::Digraph6 => parse_digraph6(&self.payload),
        }
    }
}

pub fn parse_arclist(text: &str) -> Result<Digraph, FormatError> {
    let mut n: Option<usize> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| FormatError::Syntax {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => match fields.as_slice() {
                ["n", count] => {
                    let count = count
                        .parse()
                        .map_err(|_| syntax(format!("bad vertex count `{count}`")))?;
                    n = Some(count);
                }
                _ => return Err(syntax(format!("expected `n <count>`, found `{line}`"))),
            },
            Some(_) => match fields.as_slice() {
                [u, v] => {
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| syntax(format!("bad vertex `{s}`")))
                    };
                    arcs.push((parse(u)?, parse(v)?));
                }
                _ => return Err(syntax(format!("expected `u v`, found `{line}`"))),
            },
        }
    }
    let n = n.ok_or_else(|| FormatError::Syntax {
        line: text.lines().count().max(1),
        message: "missing `n <count>` line".into(),
    })?;
    Ok(Digraph::new(n, arcs)?)
}

pub fn write_arclist(d: &Digraph) -> String {
    let mut out = format!("n {}\n", d.order());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_digraph6(bytes: &[u8]) -> Result<Digraph, FormatError> {
    let bytes = bytes.trim_ascii();
    let rest = bytes
        .strip_prefix(b"&")
        .ok_or_else(|| FormatError::BadHeader("missing `&` prefix".into()))?;
    let (n, body) = decode_order(rest)?;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let bits = n * n;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::BadLength {
            expected,
            found: body.len(),
        });
    }
    let mut rows = vec![VertexSet::new(); n];
    for (i, &byte) in body.iter().enumerate() {
        let value = sextet(byte)?;
        for k in 0..6 {
            if value >> (5 - k) & 1 == 0 {
                continue;
            }
            let bit = i * 6 + k;
            if bit >= bits {
                return Err(FormatError::BadPadding);
            }
            rows[bit / n].insert(bit % n);
        }
    }
    Ok(Digraph::from_out_neighborhoods(rows)?)
}

pub fn write_digraph6(d: &Digraph) -> Vec<u8> {
    let n = d.order();
    let mut out = vec![b'&'];
    encode_order(n, &mut out);
    let bits = n * n;
    let mut acc = 0u8;
    for bit in 0..bits.div_ceil(6) * 6 {
        acc <<= 1;
        if bit < bits && d.has_arc(bit / n, bit % n) {
            acc |= 1;
        }
        if bit % 6 == 5 {
            out.push(acc + 63);
            acc = 0;
        }
    }
    out
}

fn sextet(byte: u8) -> Result<u8, FormatError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(FormatError::BadHeader(format!("byte {byte} outside 63..=126")))
    }
}

fn decode_order(rest: &[u8]) -> Result<(usize, &[u8]), FormatError> {
    let big = |digits: &[u8]| -> Result<usize, FormatError> {
        digits
            .iter()
            .try_fold(0usize, |acc, &b| Ok(acc << 6 | sextet(b)? as usize))
    };
    match rest {
        [126, 126, tail @ ..] if tail.len() >= 6 => Ok((big(&tail[..6])?, &tail[6..])),
        [126, 126, ..] => Err(FormatError::BadHeader("truncated 8-byte size".into())),
        [126, tail @ ..] if tail.len() >= 3 => Ok((big(&tail[..3])?, &tail[3..])),
        [126, ..] => Err(FormatError::BadHeader("truncated 4-byte size".into())),
        [b, tail @ ..] => Ok((sextet(*b)? as usize, tail)),
        [] => Err(FormatError::BadHeader("missing size".into())),
    }
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
}
