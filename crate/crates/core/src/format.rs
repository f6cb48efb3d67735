//! Point-set and motion-path file formats.
//!
//! Canonical point-set format: one header line `halving-points v1`, then one
//! point per line as `<x> <y>` where each coordinate is an integer, a
//! fraction `p/q`, or a decimal literal. `#` starts a comment. Writers emit
//! reduced fractions, so `save(load(f))` is byte-identical for canonical
//! files.
//!
//! A JSON document with the same fields (`version`, list of `[x, y]`
//! coordinate strings) is accepted interchangeably on load.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deform::MotionPath;
use crate::kernel::{Point, Scalar};
use crate::pointset::PointSet;

pub const POINTS_HEADER: &str = "halving-points v1";
pub const PATH_HEADER: &str = "halving-path v1";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("not a rational number at line {line}, column {column}: {token:?}")]
    NonRationalNumber {
        line: usize,
        column: usize,
        token: String,
    },
}

impl FormatError {
    fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Token with its 1-based starting column.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 0usize;
    for piece in line.split_whitespace() {
        let at = line[col..].find(piece).expect("token came from this line") + col;
        out.push((at + 1, piece));
        col = at + piece.len();
    }
    out
}

fn parse_coordinate(line_no: usize, column: usize, token: &str) -> Result<Scalar, FormatError> {
    Scalar::from_str(token).map_err(|_| FormatError::NonRationalNumber {
        line: line_no,
        column,
        token: token.to_string(),
    })
}

fn parse_point_line(line_no: usize, line: &str) -> Result<Option<Point>, FormatError> {
    let body = strip_comment(line);
    let tokens = tokens_with_columns(body);
    match tokens.as_slice() {
        [] => Ok(None),
        [(cx, tx), (cy, ty)] => {
            let x = parse_coordinate(line_no, *cx, tx)?;
            let y = parse_coordinate(line_no, *cy, ty)?;
            Ok(Some(Point::new(x, y)))
        }
        [(c, _)] => Err(FormatError::parse(
            line_no,
            *c,
            "expected two coordinates per line",
        )),
        [_, _, (c, t), ..] => Err(FormatError::parse(
            line_no,
            *c,
            format!("unexpected trailing token {t:?}"),
        )),
    }
}

/// Parse the canonical text format.
pub fn parse_points(text: &str) -> Result<PointSet, FormatError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((idx, line)) => {
                let body = strip_comment(line).trim();
                if body.is_empty() {
                    continue;
                }
                break (idx + 1, body);
            }
            None => return Err(FormatError::parse(1, 1, "empty document, missing header")),
        }
    };
    if header.1 != POINTS_HEADER {
        return Err(FormatError::parse(
            header.0,
            1,
            format!("expected header {POINTS_HEADER:?}, found {:?}", header.1),
        ));
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        if let Some(p) = parse_point_line(idx + 1, line)? {
            points.push(p);
        }
    }
    Ok(PointSet::new(points))
}

/// Canonical serialization: header plus one reduced-fraction point per line.
pub fn points_to_string(set: &PointSet) -> String {
    let mut out = String::from(POINTS_HEADER);
    out.push('\n');
    for p in set.iter() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PointsDoc {
    version: u32,
    points: Vec<[String; 2]>,
}

/// Structured-object (JSON) serialization of the same data model.
pub fn points_to_json(set: &PointSet) -> String {
    let doc = PointsDoc {
        version: FORMAT_VERSION,
        points: set
            .iter()
            .map(|p| [p.x.to_string(), p.y.to_string()])
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializing strings cannot fail");
    s.push('\n');
    s
}

pub fn parse_points_json(text: &str) -> Result<PointSet, FormatError> {
    let doc: PointsDoc = serde_json::from_str(text).map_err(|e| {
        FormatError::parse(e.line().max(1), e.column().max(1), e.to_string())
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(FormatError::parse(
            1,
            1,
            format!("unsupported version {}", doc.version),
        ));
    }
    let mut points = Vec::with_capacity(doc.points.len());
    for (idx, [tx, ty]) in doc.points.iter().enumerate() {
        let x = Scalar::from_str(tx).map_err(|_| FormatError::NonRationalNumber {
            line: idx + 1,
            column: 1,
            token: tx.clone(),
        })?;
        let y = Scalar::from_str(ty).map_err(|_| FormatError::NonRationalNumber {
            line: idx + 1,
            column: 2,
            token: ty.clone(),
        })?;
        points.push(Point::new(x, y));
    }
    Ok(PointSet::new(points))
}

/// Parse either format, sniffing JSON by a leading `{`.
pub fn parse_points_any(text: &str) -> Result<PointSet, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_points_json(text)
    } else {
        parse_points(text)
    }
}

pub fn load_points(path: &Path) -> Result<PointSet, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_points_any(&text)
}

pub fn save_points(path: &Path, set: &PointSet) -> Result<(), FormatError> {
    fs::write(path, points_to_string(set)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_motion_path(text: &str) -> Result<MotionPath, FormatError> {
    let mut moving: Option<usize> = None;
    let mut waypoints = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        if !saw_header {
            if body != PATH_HEADER {
                return Err(FormatError::parse(
                    line_no,
                    1,
                    format!("expected header {PATH_HEADER:?}, found {body:?}"),
                ));
            }
            saw_header = true;
            continue;
        }
        if moving.is_none() {
            let tokens = tokens_with_columns(body);
            match tokens.as_slice() {
                [(_, "moving"), (c, idx_token)] => {
                    let index = idx_token.parse::<usize>().map_err(|_| {
                        FormatError::parse(line_no, *c, format!("bad index {idx_token:?}"))
                    })?;
                    moving = Some(index);
                    continue;
                }
                _ => {
                    return Err(FormatError::parse(
                        line_no,
                        1,
                        "expected `moving <index>` after the header",
                    ))
                }
            }
        }
        if let Some(p) = parse_point_line(line_no, body)? {
            waypoints.push(p);
        }
    }
    if !saw_header {
        return Err(FormatError::parse(1, 1, "empty document, missing header"));
    }
    let moving = moving
        .ok_or_else(|| FormatError::parse(1, 1, "missing `moving <index>` line"))?;
    if waypoints.is_empty() {
        return Err(FormatError::parse(1, 1, "path has no waypoints"));
    }
    Ok(MotionPath::new(moving, waypoints))
}

pub fn motion_path_to_string(spec: &MotionPath) -> String {
    let mut out = String::from(PATH_HEADER);
    out.push('\n');
    out.push_str(&format!("moving {}\n", spec.moving));
    for p in &spec.waypoints {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

pub fn load_motion_path(path: &Path) -> Result<MotionPath, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_motion_path(&text)
}
