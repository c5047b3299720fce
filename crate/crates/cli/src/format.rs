//! The line-oriented element text format.
//!
//! ```text
//! # a comment
//! piece <a> <b> slope <s> offset <t>   affine action on the interior (a, b)
//! point <x> <y>                        h(x) = y, one line per piece left endpoint
//! ```
//!
//! Rationals are written `p/q` (`q > 0`); bare integers parse as `p/1`.
//! Serialization is canonical and byte-stable: minimal-partition pieces
//! sorted by left endpoint, then the point lines sorted by `x`, every
//! rational in lowest terms as `p/q`, `\n` line endings.

use std::collections::BTreeSet;
use std::fmt;

use flipsig_core::{format_rat, parse_rat, Error as CoreError, Interval, PwMap, Rat, RatPoint};
use num_traits::{One, Signed, Zero};

/// Parse failure: syntax errors carry line and column, semantic errors wrap
/// the core validation error and the offending line when attributable.
#[derive(Debug)]
pub enum ParseError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Semantic {
        line: Option<usize>,
        source: CoreError,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                column,
                message,
            } => write!(f, "syntax error at line {line}, column {column}: {message}"),
            ParseError::Semantic {
                line: Some(line),
                source,
            } => write!(f, "invalid element at line {line}: {source}"),
            ParseError::Semantic { line: None, source } => {
                write!(f, "invalid element: {source}")
            }
        }
    }
}

impl std::error::Error for ParseError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ParseError::Semantic { source, .. } => Some(source),
            ParseError::Syntax { .. } => None,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, source: CoreError) -> ParseError {
    ParseError::Semantic {
        line: Some(line),
        source,
    }
}

/// Tokens of one line with their 1-based starting columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_rat_at(line_no: usize, col: usize, token: &str) -> Result<Rat, ParseError> {
    parse_rat(token).map_err(|_| syntax(line_no, col, format!("expected a rational, found `{token}`")))
}

fn expect_keyword(
    line_no: usize,
    tok: Option<&(usize, &str)>,
    word: &str,
) -> Result<(), ParseError> {
    match tok {
        Some(&(_, t)) if t == word => Ok(()),
        Some(&(col, t)) => Err(syntax(line_no, col, format!("expected `{word}`, found `{t}`"))),
        None => Err(syntax(line_no, 1, format!("missing `{word}`"))),
    }
}

struct RawElement {
    pieces: Vec<(usize, Interval, Rat, Rat)>,
    points: Vec<(usize, RatPoint, RatPoint)>,
}

fn parse_lines(doc: &str) -> Result<RawElement, ParseError> {
    let mut raw = RawElement {
        pieces: Vec::new(),
        points: Vec::new(),
    };
    for (idx, full_line) in doc.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.split_once('#') {
            Some((head, _)) => head,
            None => full_line,
        };
        let tokens = tokenize(line);
        let Some(&(first_col, keyword)) = tokens.first() else {
            continue;
        };
        match keyword {
            "piece" => {
                if tokens.len() != 7 {
                    return Err(syntax(
                        line_no,
                        first_col,
                        "expected `piece <a> <b> slope <s> offset <t>`",
                    ));
                }
                let a = parse_rat_at(line_no, tokens[1].0, tokens[1].1)?;
                let b = parse_rat_at(line_no, tokens[2].0, tokens[2].1)?;
                expect_keyword(line_no, tokens.get(3), "slope")?;
                let slope = parse_rat_at(line_no, tokens[4].0, tokens[4].1)?;
                expect_keyword(line_no, tokens.get(5), "offset")?;
                let offset = parse_rat_at(line_no, tokens[6].0, tokens[6].1)?;
                let source = Interval::from_rats(a, b).map_err(|e| semantic(line_no, e))?;
                raw.pieces.push((line_no, source, slope, offset));
            }
            "point" => {
                if tokens.len() != 3 {
                    return Err(syntax(line_no, first_col, "expected `point <x> <y>`"));
                }
                let x = parse_rat_at(line_no, tokens[1].0, tokens[1].1)?;
                let y = parse_rat_at(line_no, tokens[2].0, tokens[2].1)?;
                let x = RatPoint::new(x).map_err(|e| semantic(line_no, e))?;
                let y = RatPoint::new(y).map_err(|e| semantic(line_no, e))?;
                raw.points.push((line_no, x, y));
            }
            other => {
                return Err(syntax(
                    line_no,
                    first_col,
                    format!("expected `piece` or `point`, found `{other}`"),
                ));
            }
        }
    }
    Ok(raw)
}

/// Attributes the validation failures of [`PwMap::build`] to input lines
/// where possible, then defers to the canonical builder.
fn validate_with_lines(raw: &RawElement) -> Result<(), ParseError> {
    if raw.pieces.is_empty() {
        return Err(ParseError::Semantic {
            line: None,
            source: CoreError::BadTiling("no pieces".into()),
        });
    }
    let mut sorted: Vec<_> = raw.pieces.iter().collect();
    sorted.sort_by(|a, b| a.1.left().cmp(b.1.left()));
    if !sorted[0].1.left().is_zero() {
        return Err(semantic(
            sorted[0].0,
            CoreError::BadTiling(format!("first piece starts at {}", sorted[0].1.left())),
        ));
    }
    for pair in sorted.windows(2) {
        if !pair[0].1.is_followed_by(&pair[1].1) {
            return Err(semantic(
                pair[1].0,
                CoreError::BadTiling(format!(
                    "gap or overlap between {} and {}",
                    pair[0].1, pair[1].1
                )),
            ));
        }
    }
    let last = sorted.last().expect("nonempty");
    if !last.1.right().is_one() {
        return Err(semantic(
            last.0,
            CoreError::BadTiling("last piece does not end at 1".into()),
        ));
    }

    for &&(line, _, ref slope, _) in &sorted {
        if slope.is_zero() {
            return Err(semantic(line, CoreError::ZeroSlope));
        }
    }
    let mut images: Vec<(Rat, Rat, usize)> = Vec::new();
    for &&(line, ref source, ref slope, ref offset) in &sorted {
        let at = |x: &Rat| slope * x + offset;
        let (lo, hi) = if slope.is_positive() {
            (at(source.left().value()), at(source.right()))
        } else {
            (at(source.right()), at(source.left().value()))
        };
        if lo.is_negative() || hi > Rat::one() {
            return Err(semantic(line, CoreError::ImageOutOfUnit));
        }
        images.push((lo, hi, line));
    }

    let lefts: BTreeSet<&RatPoint> = sorted.iter().map(|p| p.1.left()).collect();
    let mut seen_x: BTreeSet<&RatPoint> = BTreeSet::new();
    let mut seen_y: BTreeSet<&RatPoint> = BTreeSet::new();
    for (line, x, y) in &raw.points {
        if !seen_x.insert(x) {
            return Err(semantic(
                *line,
                CoreError::PointImageMismatch(format!("{x} listed twice")),
            ));
        }
        if !lefts.contains(x) {
            return Err(semantic(
                *line,
                CoreError::PointImageMismatch(format!("{x} is not a piece left endpoint")),
            ));
        }
        if !seen_y.insert(y) {
            return Err(semantic(
                *line,
                CoreError::NotBijective("two breakpoints share an image".into()),
            ));
        }
    }
    for &&(line, ref source, _, _) in &sorted {
        if !seen_x.contains(source.left()) {
            return Err(semantic(
                line,
                CoreError::PointImageMismatch(format!("no image given for {}", source.left())),
            ));
        }
    }

    // When the interior images tile we can also attribute stray images.
    images.sort_by(|a, b| a.0.cmp(&b.0));
    let tiling = images[0].0.is_zero()
        && images.last().expect("nonempty").1.is_one()
        && images.windows(2).all(|w| w[0].1 == w[1].0);
    if tiling {
        let uncovered: BTreeSet<RatPoint> = images
            .iter()
            .map(|(lo, _, _)| RatPoint::new(lo.clone()).expect("image bound below 1"))
            .collect();
        for (line, _, y) in &raw.points {
            if !uncovered.contains(y) {
                return Err(semantic(
                    *line,
                    CoreError::NotBijective(format!(
                        "breakpoint image {y} is not an uncovered point"
                    )),
                ));
            }
        }
    }
    Ok(())
}

/// Parses a document into a canonical element, reporting syntax errors with
/// line and column and validation errors with the offending line.
pub fn parse_element(doc: &str) -> Result<PwMap, ParseError> {
    let raw = parse_lines(doc)?;
    validate_with_lines(&raw)?;
    let pieces = raw
        .pieces
        .iter()
        .map(|(_, source, slope, offset)| (source.clone(), slope.clone(), offset.clone()))
        .collect();
    let points = raw
        .points
        .iter()
        .map(|(_, x, y)| (x.clone(), y.clone()))
        .collect();
    PwMap::build(pieces, points).map_err(|source| ParseError::Semantic { line: None, source })
}

/// Canonical serialization; `parse_element(serialize_element(h)) == h` and
/// equal elements serialize to identical bytes.
pub fn serialize_element(h: &PwMap) -> String {
    let mut out = String::new();
    for piece in h.pieces() {
        out.push_str(&format!(
            "piece {} {} slope {} offset {}\n",
            piece.source().left(),
            format_rat(piece.source().right()),
            format_rat(piece.slope()),
            format_rat(piece.offset()),
        ));
    }
    for (x, y) in h.point_images() {
        out.push_str(&format!("point {x} {y}\n"));
    }
    out
}
