//! Reader and writer for the OFF polygon-mesh format.
//!
//! ```text
//! OFF
//! V F E
//! x y z          (V lines)
//! k i1 ... ik    (F lines)
//! ```
//!
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. The counts may share the header line. Trailing tokens on face
//! lines (per-face colours) are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-empty line with comments removed, with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid {what} count {token:?}")))
}

pub fn parse(text: &str) -> Result<OffMesh> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (header_line, header) = lines
        .next_content()
        .ok_or_else(|| Error::parse(1, "empty file"))?;
    let head = header[0].trim_start_matches('\u{feff}');
    if head != "OFF" {
        return Err(Error::parse(
            header_line,
            format!("expected OFF header, found {head:?}"),
        ));
    }
    let (count_line, counts) = if header.len() > 1 {
        (header_line, header[1..].to_vec())
    } else {
        lines
            .next_content()
            .ok_or_else(|| Error::parse(header_line, "missing counts line"))?
    };
    if counts.len() < 2 || counts.len() > 3 {
        return Err(Error::parse(count_line, "counts line must be \"V F E\""));
    }
    let n_vertices = parse_count(counts[0], count_line, "vertex")?;
    let n_faces = parse_count(counts[1], count_line, "face")?;
    if let Some(e) = counts.get(2) {
        parse_count(e, count_line, "edge")?;
    }

    let mut vertices = Vec::new();
    while vertices.len() < n_vertices {
        let (ln, tokens) = lines.next_content().ok_or_else(|| {
            Error::parse(
                count_line,
                format!(
                    "unexpected end of file after {} of {n_vertices} vertices",
                    vertices.len()
                ),
            )
        })?;
        if tokens.len() != 3 {
            return Err(Error::parse(
                ln,
                format!("vertex needs 3 coordinates, found {}", tokens.len()),
            ));
        }
        let mut v = [0.0; 3];
        for (slot, tok) in v.iter_mut().zip(&tokens) {
            let x: f64 = tok
                .parse()
                .map_err(|_| Error::parse(ln, format!("invalid coordinate {tok:?}")))?;
            if !x.is_finite() {
                return Err(Error::parse(ln, format!("non-finite coordinate {tok:?}")));
            }
            *slot = x;
        }
        vertices.push(v);
    }

    let mut faces = Vec::new();
    while faces.len() < n_faces {
        let (ln, tokens) = lines.next_content().ok_or_else(|| {
            Error::parse(
                count_line,
                format!(
                    "unexpected end of file after {} of {n_faces} faces",
                    faces.len()
                ),
            )
        })?;
        let k = parse_count(tokens[0], ln, "face vertex")?;
        if tokens.len() - 1 < k {
            return Err(Error::parse(
                ln,
                format!("face declares {k} vertices but lists {}", tokens.len() - 1),
            ));
        }
        let face = tokens[1..=k]
            .iter()
            .map(|tok| {
                let i = parse_count(tok, ln, "vertex index")?;
                if i >= n_vertices {
                    return Err(Error::parse(ln, format!("vertex index {i} out of range")));
                }
                Ok(i)
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(face);
    }

    if let Some((ln, _)) = lines.next_content() {
        return Err(Error::parse(ln, "trailing data after the last face"));
    }
    Ok(OffMesh { vertices, faces })
}

/// Writes coordinates with 17 significant digits.
pub fn write(mesh: &OffMesh, edge_count: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(
        out,
        "{} {} {}",
        mesh.vertices.len(),
        mesh.faces.len(),
        edge_count
    );
    for v in &mesh.vertices {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
    }
    for f in &mesh.faces {
        let _ = write!(out, "{}", f.len());
        for i in f {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}
