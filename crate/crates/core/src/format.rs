//! Plain-text quiver and representation files.
//!
//! ```text
//! quiver A2
//! vertices: 1 2
//! arrow a: 1 -> 2
//! ```
//!
//! ```text
//! rep P1 over Q
//! dim 1 = 1
//! dim 2 = 1
//! map a = [[1]]
//! ```
//!
//! `#` starts a comment. A matrix with no rows is written `[]`; a matrix with
//! rows but no columns is written `[[],[]]`.

use std::collections::HashMap;

use crate::error::{Error, ParseError, Result};
use crate::quiver::{Arrow, DimVector, Quiver};
use crate::rep::Representation;
use crate::xlinalg::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub name: String,
    pub quiver: Quiver,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFile {
    pub name: String,
    pub rep: Representation,
}

/// Non-blank lines with comments stripped: (line number, column offset of
/// the first non-space character, trimmed text).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let col = body.len() - body.trim_start().len() + 1;
        Some((i + 1, col, trimmed))
    })
}

fn is_token(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '#' | '=' | '[' | ']' | ','))
        && !s.contains("->")
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, col, msg))
}

pub fn parse_quiver_file(text: &str) -> Result<QuiverFile> {
    let mut lines = content_lines(text);
    let (ln, col, header) = lines.next().ok_or_else(|| err(1, 1, "empty quiver file"))?;
    let name = match header.strip_prefix("quiver") {
        Some(rest) if rest.starts_with(char::is_whitespace) && !rest.trim().is_empty() => {
            rest.trim()
        }
        _ => return Err(err(ln, col, "expected `quiver <name>`")),
    };
    let mut labels: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    for (ln, col, line) in lines {
        if let Some(rest) = line.strip_prefix("vertices:") {
            if labels.is_some() {
                return Err(err(ln, col, "duplicate `vertices:` line"));
            }
            let mut ls = Vec::new();
            for v in rest.split_whitespace() {
                if !is_token(v) {
                    return Err(err(ln, col, format!("invalid vertex name `{v}`")));
                }
                if index.insert(v.to_string(), ls.len()).is_some() {
                    return Err(err(ln, col, format!("duplicate vertex `{v}`")));
                }
                ls.push(v.to_string());
            }
            if ls.is_empty() {
                return Err(err(ln, col, "no vertices declared"));
            }
            labels = Some(ls);
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            if labels.is_none() {
                return Err(err(ln, col, "arrow declared before `vertices:`"));
            }
            let (id, ends) = rest
                .split_once(':')
                .ok_or_else(|| err(ln, col, "expected `arrow <id>: <src> -> <dst>`"))?;
            let id = id.trim();
            if !is_token(id) {
                return Err(err(ln, col, format!("invalid arrow id `{id}`")));
            }
            let (src, dst) = ends
                .split_once("->")
                .ok_or_else(|| err(ln, col, "expected `<src> -> <dst>`"))?;
            let lookup = |v: &str| {
                index
                    .get(v.trim())
                    .copied()
                    .ok_or_else(|| err(ln, col, format!("unknown vertex `{}`", v.trim())))
            };
            let (source, target) = (lookup(src)?, lookup(dst)?);
            if arrows.iter().any(|a| a.id == id) {
                return Err(err(ln, col, format!("duplicate arrow id `{id}`")));
            }
            arrows.push(Arrow {
                id: id.to_string(),
                source,
                target,
            });
        } else {
            return Err(err(ln, col, format!("unrecognised line `{line}`")));
        }
    }
    let labels = labels.ok_or_else(|| err(ln, col, "missing `vertices:` line"))?;
    Ok(QuiverFile {
        name: name.to_string(),
        quiver: Quiver::new(labels, arrows)?,
    })
}

pub fn write_quiver_file(name: &str, q: &Quiver) -> String {
    let mut out = format!("quiver {name}\nvertices: {}\n", q.labels().join(" "));
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.id,
            q.label(a.source),
            q.label(a.target)
        ));
    }
    out
}

/// Splits `[[a,b],[c,d]]` into rows of entry strings. `[]` has no rows.
fn parse_matrix_text(text: &str) -> std::result::Result<Vec<Vec<String>>, String> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or("a matrix must be enclosed in `[...]`")?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or("expected `[` to open a row")?;
        let close = body.find(']').ok_or("unclosed row")?;
        let row = body[..close].trim();
        if row.contains('[') {
            return Err("nested brackets inside a row".into());
        }
        rows.push(if row.is_empty() {
            Vec::new()
        } else {
            row.split(',').map(|e| e.trim().to_string()).collect()
        });
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err("trailing comma".into());
            }
        } else if !rest.is_empty() {
            return Err("expected `,` between rows".into());
        }
    }
    if rows.iter().flatten().any(|e| e.is_empty()) {
        return Err("empty matrix entry".into());
    }
    Ok(rows)
}

/// A `map` line: its position and the matrix entries as written.
type MatrixLine = (usize, usize, Vec<Vec<String>>);

/// Parses a representation of `q`. Undeclared dimensions are zero; every
/// arrow whose matrix has at least one entry must be given.
pub fn parse_rep_file(text: &str, q: &Quiver) -> Result<RepFile> {
    let mut lines = content_lines(text);
    let (ln, col, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, "empty representation file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (name, field) = match words.as_slice() {
        ["rep", name, "over", field] => {
            let field: FieldSpec = field
                .parse()
                .map_err(|e: Error| err(ln, col, e.to_string()))?;
            (name.to_string(), field)
        }
        _ => return Err(err(ln, col, "expected `rep <name> over <field>`")),
    };
    let n = q.vertex_count();
    let mut dims: Vec<Option<usize>> = vec![None; n];
    let mut maps: Vec<Option<MatrixLine>> = vec![None; q.arrows().len()];
    for (ln, col, line) in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err(ln, col, format!("unrecognised line `{line}`")))?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        match lhs.as_slice() {
            ["dim", v] => {
                let i = q
                    .vertex_index(v)
                    .ok_or_else(|| err(ln, col, format!("unknown vertex `{v}`")))?;
                let d: usize = rhs
                    .trim()
                    .parse()
                    .map_err(|_| err(ln, col, format!("`{}` is not a dimension", rhs.trim())))?;
                if dims[i].replace(d).is_some() {
                    return Err(err(ln, col, format!("duplicate dimension for `{v}`")));
                }
            }
            ["map", id] => {
                let k = q
                    .arrow_index(id)
                    .ok_or_else(|| err(ln, col, format!("unknown arrow `{id}`")))?;
                let rows = parse_matrix_text(rhs).map_err(|m| err(ln, col, m))?;
                if maps[k].replace((ln, col, rows)).is_some() {
                    return Err(err(ln, col, format!("duplicate map for `{id}`")));
                }
            }
            _ => return Err(err(ln, col, format!("unrecognised line `{line}`"))),
        }
    }
    let dims = DimVector::new(dims.into_iter().map(|d| d.unwrap_or(0)).collect());
    let mut matrices = Vec::with_capacity(maps.len());
    for (a, entry) in q.arrows().iter().zip(maps) {
        let (r, c) = (dims[a.target], dims[a.source]);
        let Some((ln, col, rows)) = entry else {
            if r * c > 0 {
                return Err(err(ln, col, format!("missing map for arrow `{}`", a.id)));
            }
            matrices.push(Matrix::zeros(field, r, c));
            continue;
        };
        let shape_ok = rows.len() == r && rows.iter().all(|row| row.len() == c);
        if !shape_ok {
            return Err(err(
                ln,
                col,
                format!("arrow `{}` needs a {r}x{c} matrix", a.id),
            ));
        }
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| field.parse_scalar(e))
                    .collect::<Result<Vec<Scalar>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| err(ln, col, e.to_string()))?;
        matrices.push(Matrix::from_rows(field, c, entries)?);
    }
    Ok(RepFile {
        name,
        rep: Representation::new(q.clone(), field, dims, matrices)?,
    })
}

pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn write_rep_file(name: &str, m: &Representation) -> String {
    let q = m.quiver();
    let mut out = format!("rep {name} over {}\n", m.field());
    for i in 0..q.vertex_count() {
        out.push_str(&format!("dim {} = {}\n", q.label(i), m.dims()[i]));
    }
    for (a, f) in q.arrows().iter().zip(m.maps()) {
        out.push_str(&format!("map {} = {}\n", a.id, format_matrix(f)));
    }
    out
}
