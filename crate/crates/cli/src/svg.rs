//! SVG rendering of an element's graph over the unit square.

use std::fmt::Write;

use flipsig_core::{PwMap, Rat};
use num_traits::ToPrimitive;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 32.0;
const TOTAL: f64 = SIZE + 2.0 * MARGIN;

fn px(v: &Rat) -> f64 {
    MARGIN + SIZE * v.to_f64().unwrap_or(0.0)
}

fn py(v: &Rat) -> f64 {
    MARGIN + SIZE * (1.0 - v.to_f64().unwrap_or(0.0))
}

/// Renders the graph of `h`: one line segment per affine piece and one
/// filled circle per breakpoint image, inside a framed unit square.
pub fn render(h: &PwMap) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{TOTAL}\" height=\"{TOTAL}\" viewBox=\"0 0 {TOTAL} {TOTAL}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"none\" stroke=\"#888888\"/>"
    );
    for piece in h.pieces() {
        let a = piece.source().left().value();
        let b = piece.source().right();
        let _ = writeln!(
            out,
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>",
            px(a),
            py(&piece.eval(a)),
            px(b),
            py(&piece.eval(b)),
        );
    }
    for (x, y) in h.point_images() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3\" fill=\"#c43030\"/>",
            px(x.value()),
            py(y.value()),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Minimal well-formedness scan used by the self-check battery: tags are
/// balanced, quotes close, exactly one root element.
pub fn looks_well_formed(xml: &str) -> bool {
    let mut stack: Vec<String> = Vec::new();
    let mut roots = 0usize;
    let mut rest = xml;
    while let Some(open) = rest.find('<') {
        let tail = &rest[open + 1..];
        let Some(close_rel) = find_tag_end(tail) else {
            return false;
        };
        let tag = &tail[..close_rel];
        rest = &tail[close_rel + 1..];
        if tag.starts_with('?') {
            if !tag.ends_with('?') {
                return false;
            }
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            match stack.pop() {
                Some(top) if top == name.trim() => {
                    if stack.is_empty() {
                        roots += 1;
                    }
                }
                _ => return false,
            }
            continue;
        }
        let self_closing = tag.ends_with('/');
        let body = tag.strip_suffix('/').unwrap_or(tag);
        let name = body.split_whitespace().next().unwrap_or("");
        if name.is_empty() {
            return false;
        }
        if self_closing {
            if stack.is_empty() {
                roots += 1;
            }
        } else {
            stack.push(name.to_string());
        }
    }
    stack.is_empty() && roots == 1 && !rest.contains('>')
}

/// Index of the closing `>` of a tag, skipping quoted attribute values.
fn find_tag_end(s: &str) -> Option<usize> {
    let mut quote: Option<char> = None;
    for (idx, ch) in s.char_indices() {
        match quote {
            Some(q) => {
                if ch == q {
                    quote = None;
                }
            }
            None => match ch {
                '"' | '\'' => quote = Some(ch),
                '>' => return Some(idx),
                _ => {}
            },
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use flipsig_core::{Interval, PwMap};

    #[test]
    fn render_has_one_line_per_piece_and_one_marker_per_breakpoint() {
        let f = PwMap::flip(&Interval::from_ints(1, 4, 1, 2).unwrap());
        let svg = render(&f);
        assert_eq!(svg.matches("<line ").count(), f.pieces().len());
        assert_eq!(svg.matches("<circle ").count(), f.point_images().len());
        assert!(looks_well_formed(&svg));
    }

    #[test]
    fn the_mini_checker_rejects_malformed_documents() {
        assert!(!looks_well_formed("<svg><line></svg>"));
        assert!(!looks_well_formed("<svg>"));
        assert!(!looks_well_formed("<svg></svg><svg></svg>"));
        assert!(looks_well_formed("<a><b/><c>text</c></a>"));
    }
}
