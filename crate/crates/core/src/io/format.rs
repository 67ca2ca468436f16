//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! [orbit]
//! name twofp
//! b1_Y 1
//!
//! [arcs]
//! arc (5,2) (3,1) index -1
//!
//! [circles]
//! circle (5,2) (12,5) (3,1) fixed 3 index 0
//!
//! [isolated]
//! point 1
//!
//! [boundaries]
//! boundary genus 0 index 0
//!
//! [pic_t]
//! generators 2
//! relation 2 0
//!
//! [euler_class]
//! coords 1 0
//! ```
//!
//! `[orbit]` is required; every other section is optional and may appear at
//! most once. The grammar is documented in `docs/presentation-format.md`.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::abelian::{GroupPresentation, IntMatrix};
use crate::orbit::{
    validate, BoundarySurface, IsolatedFixedPoint, Violation, Weight, WeightedArc,
    WeightedCircle, WeightedOrbitSpace,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("presentation violates legality: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Semantic(Vec<Violation>),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

pub(crate) fn int<T: std::str::FromStr>(line: usize, tok: Token<'_>, what: &str) -> Result<T, FormatError> {
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn weight(line: usize, tok: Token<'_>) -> Result<Weight, FormatError> {
    let bad = || syntax(line, tok.column, format!("expected a weight `(alpha,beta)`, found `{}`", tok.text));
    let inner = tok
        .text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let alpha = a.trim().parse().map_err(|_| bad())?;
    let beta = b.trim().parse().map_err(|_| bad())?;
    Ok(Weight::new(alpha, beta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Orbit,
    Arcs,
    Circles,
    Isolated,
    Boundaries,
    PicT,
    EulerClass,
}

impl Section {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "orbit" => Section::Orbit,
            "arcs" => Section::Arcs,
            "circles" => Section::Circles,
            "isolated" => Section::Isolated,
            "boundaries" => Section::Boundaries,
            "pic_t" => Section::PicT,
            "euler_class" => Section::EulerClass,
            _ => return None,
        })
    }
}

/// Expects `keyword` at `toks[at]` followed by one value token.
fn keyed<'a>(
    line: usize,
    toks: &[Token<'a>],
    at: usize,
    keyword: &str,
    end_column: usize,
) -> Result<Token<'a>, FormatError> {
    match (toks.get(at), toks.get(at + 1)) {
        (Some(k), Some(v)) if k.text == keyword => Ok(*v),
        (Some(k), _) if k.text != keyword => {
            Err(syntax(line, k.column, format!("expected `{keyword}`, found `{}`", k.text)))
        }
        (Some(k), None) => Err(syntax(line, k.column, format!("`{keyword}` needs a value"))),
        _ => Err(syntax(line, end_column, format!("expected `{keyword}`"))),
    }
}

/// Weights from `toks[from..]` up to the first non-weight token.
fn weights(line: usize, toks: &[Token<'_>], from: usize) -> Result<(Vec<Weight>, usize), FormatError> {
    let mut out = Vec::new();
    let mut i = from;
    while let Some(t) = toks.get(i) {
        if !t.text.starts_with('(') {
            break;
        }
        out.push(weight(line, *t)?);
        i += 1;
    }
    Ok((out, i))
}

fn no_trailing(line: usize, toks: &[Token<'_>], used: usize) -> Result<(), FormatError> {
    match toks.get(used) {
        Some(t) => Err(syntax(line, t.column, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

/// Parses without checking legality.
pub fn parse_unchecked(text: &str) -> Result<WeightedOrbitSpace, FormatError> {
    let mut y = WeightedOrbitSpace::empty("", 0);
    let mut section: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    let mut name: Option<String> = None;
    let mut b1: Option<u32> = None;
    let mut generators: Option<(usize, usize)> = None;
    let mut relation_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        let col0 = raw[..indent].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let label = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(ln, col0, "unterminated section header"))?;
            let s = Section::parse(label.trim())
                .ok_or_else(|| syntax(ln, col0 + 1, format!("unknown section `{label}`")))?;
            if seen.contains(&s) {
                return Err(syntax(ln, col0, format!("duplicate section `[{label}]`")));
            }
            if seen.is_empty() && s != Section::Orbit {
                return Err(syntax(ln, col0, "the first section must be `[orbit]`"));
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        let toks = tokens(raw);
        let end = raw.chars().count() + 1;
        let head = toks[0];
        let Some(current) = section else {
            return Err(syntax(ln, head.column, "content before the `[orbit]` header"));
        };
        match current {
            Section::Orbit => match head.text {
                "name" => {
                    if name.is_some() {
                        return Err(syntax(ln, head.column, "duplicate `name`"));
                    }
                    let value = raw.trim()["name".len()..].trim();
                    if value.is_empty() {
                        return Err(syntax(ln, end, "`name` needs a value"));
                    }
                    name = Some(value.to_string());
                }
                "b1_Y" => {
                    if b1.is_some() {
                        return Err(syntax(ln, head.column, "duplicate `b1_Y`"));
                    }
                    let v = toks
                        .get(1)
                        .ok_or_else(|| syntax(ln, end, "`b1_Y` needs a value"))?;
                    b1 = Some(int(ln, *v, "a nonnegative integer")?);
                    no_trailing(ln, &toks, 2)?;
                }
                other => return Err(syntax(ln, head.column, format!("unknown key `{other}`"))),
            },
            Section::Arcs => {
                if head.text != "arc" {
                    return Err(syntax(ln, head.column, format!("expected `arc`, found `{}`", head.text)));
                }
                let (segments, at) = weights(ln, &toks, 1)?;
                if segments.is_empty() {
                    return Err(syntax(ln, toks.get(1).map_or(end, |t| t.column), "an arc needs at least one weight"));
                }
                let index = int(ln, keyed(ln, &toks, at, "index", end)?, "an integer index")?;
                no_trailing(ln, &toks, at + 2)?;
                y.arcs.push(WeightedArc { segments, index });
            }
            Section::Circles => {
                if head.text != "circle" {
                    return Err(syntax(ln, head.column, format!("expected `circle`, found `{}`", head.text)));
                }
                let (segments, at) = weights(ln, &toks, 1)?;
                if segments.is_empty() {
                    return Err(syntax(ln, toks.get(1).map_or(end, |t| t.column), "a circle needs at least one weight"));
                }
                let fixed = int(ln, keyed(ln, &toks, at, "fixed", end)?, "a fixed point count")?;
                let index = int(ln, keyed(ln, &toks, at + 2, "index", end)?, "an integer index")?;
                no_trailing(ln, &toks, at + 4)?;
                y.circles.push(WeightedCircle {
                    segments,
                    fixed_point_count: fixed,
                    index,
                });
            }
            Section::Isolated => {
                let index = int(ln, keyed(ln, &toks, 0, "point", end)?, "an integer index")?;
                no_trailing(ln, &toks, 2)?;
                y.isolated.push(IsolatedFixedPoint { index });
            }
            Section::Boundaries => {
                if head.text != "boundary" {
                    return Err(syntax(ln, head.column, format!("expected `boundary`, found `{}`", head.text)));
                }
                let genus = int(ln, keyed(ln, &toks, 1, "genus", end)?, "a nonnegative genus")?;
                let index = int(ln, keyed(ln, &toks, 3, "index", end)?, "an integer index")?;
                no_trailing(ln, &toks, 5)?;
                y.boundaries.push(BoundarySurface { genus, index });
            }
            Section::PicT => match head.text {
                "generators" => {
                    if generators.is_some() {
                        return Err(syntax(ln, head.column, "duplicate `generators`"));
                    }
                    let v = toks
                        .get(1)
                        .ok_or_else(|| syntax(ln, end, "`generators` needs a value"))?;
                    generators = Some((int(ln, *v, "a generator count")?, ln));
                    no_trailing(ln, &toks, 2)?;
                }
                "relation" => {
                    let Some((g, _)) = generators else {
                        return Err(syntax(ln, head.column, "`relation` before `generators`"));
                    };
                    let row = toks[1..]
                        .iter()
                        .map(|t| int::<BigInt>(ln, *t, "an integer"))
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != g {
                        return Err(syntax(
                            ln,
                            head.column,
                            format!("relation has {} entries, expected {g}", row.len()),
                        ));
                    }
                    relation_rows.push(row);
                }
                other => return Err(syntax(ln, head.column, format!("unknown key `{other}`"))),
            },
            Section::EulerClass => {
                if head.text != "coords" {
                    return Err(syntax(ln, head.column, format!("expected `coords`, found `{}`", head.text)));
                }
                if y.euler_class.is_some() {
                    return Err(syntax(ln, head.column, "duplicate `coords`"));
                }
                let coords = toks[1..]
                    .iter()
                    .map(|t| int::<BigInt>(ln, *t, "an integer"))
                    .collect::<Result<Vec<_>, _>>()?;
                y.euler_class = Some(coords);
            }
        }
    }

    if seen.is_empty() {
        return Err(syntax(last_line.max(1), 1, "missing `[orbit]` section"));
    }
    y.name = name.ok_or_else(|| syntax(last_line.max(1), 1, "missing `name` in `[orbit]`"))?;
    y.b1_y = b1.ok_or_else(|| syntax(last_line.max(1), 1, "missing `b1_Y` in `[orbit]`"))?;
    if seen.contains(&Section::PicT) {
        let (g, ln) = generators
            .ok_or_else(|| syntax(last_line, 1, "`[pic_t]` needs `generators`"))?;
        let relations = IntMatrix::from_rows(g, &relation_rows).expect("row lengths checked");
        y.pic_t = Some(
            GroupPresentation::new(g, relations).map_err(|e| syntax(ln, 1, e.to_string()))?,
        );
    }
    if seen.contains(&Section::EulerClass) && y.euler_class.is_none() {
        return Err(syntax(last_line, 1, "`[euler_class]` needs `coords`"));
    }
    Ok(y)
}

/// Parses and validates a presentation.
pub fn parse(text: &str) -> Result<WeightedOrbitSpace, FormatError> {
    let y = parse_unchecked(text)?;
    let violations = validate(&y);
    if violations.is_empty() {
        Ok(y)
    } else {
        Err(FormatError::Semantic(violations))
    }
}

pub fn parse_file(path: impl AsRef<Path>) -> Result<WeightedOrbitSpace, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

/// Sorts components by kind, then index, then weights, and trims the name.
/// Weights are normalized on construction, so they are left alone.
pub fn canonicalize(y: &WeightedOrbitSpace) -> WeightedOrbitSpace {
    let mut c = y.clone();
    c.name = c.name.trim().to_string();
    c.arcs.sort_by(|a, b| (a.index, &a.segments).cmp(&(b.index, &b.segments)));
    c.circles.sort_by(|a, b| {
        (a.index, a.fixed_point_count, &a.segments).cmp(&(b.index, b.fixed_point_count, &b.segments))
    });
    c.isolated.sort_by_key(|p| p.index);
    c.boundaries.sort_by_key(|b| (b.index, b.genus));
    c
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Canonical text of a presentation; empty sections are omitted.
pub fn serialize(y: &WeightedOrbitSpace) -> String {
    let y = canonicalize(y);
    let mut out = String::new();
    let _ = writeln!(out, "[orbit]\nname {}\nb1_Y {}", y.name, y.b1_y);
    if !y.arcs.is_empty() {
        out.push_str("\n[arcs]\n");
        for a in &y.arcs {
            let _ = writeln!(out, "arc {} index {}", join(&a.segments), a.index);
        }
    }
    if !y.circles.is_empty() {
        out.push_str("\n[circles]\n");
        for c in &y.circles {
            let _ = writeln!(
                out,
                "circle {} fixed {} index {}",
                join(&c.segments),
                c.fixed_point_count,
                c.index
            );
        }
    }
    if !y.isolated.is_empty() {
        out.push_str("\n[isolated]\n");
        for p in &y.isolated {
            let _ = writeln!(out, "point {}", p.index);
        }
    }
    if !y.boundaries.is_empty() {
        out.push_str("\n[boundaries]\n");
        for b in &y.boundaries {
            let _ = writeln!(out, "boundary genus {} index {}", b.genus, b.index);
        }
    }
    if let Some(p) = &y.pic_t {
        let _ = writeln!(out, "\n[pic_t]\ngenerators {}", p.generators());
        for i in 0..p.relations().rows() {
            let row = p.relations().row(i);
            if row.is_empty() {
                out.push_str("relation\n");
            } else {
                let _ = writeln!(out, "relation {}", join(row));
            }
        }
    }
    if let Some(coords) = &y.euler_class {
        if coords.is_empty() {
            out.push_str("\n[euler_class]\ncoords\n");
        } else {
            let _ = writeln!(out, "\n[euler_class]\ncoords {}", join(coords));
        }
    }
    out
}
