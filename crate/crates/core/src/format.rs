//! Plain-text formats for diagrams and patterns.
//!
//! ```text
//! frontdiagram v1
//! L1 L3 X2 X2 X2 R1 R1
//! orient: +
//! ```
//!
//! The events line holds whitespace-separated tokens `L<i>`, `R<i>`,
//! `X<i>` and may be empty. The orientation line carries one `+` or `-`
//! per component in index order. Lines starting with `#` are ignored.
//! Printing emits single spaces and a trailing newline, so canonical files
//! round-trip byte for byte.

use thiserror::Error;

use crate::front::{Event, EventKind, FrontDiagram, FrontError, Orientation};
use crate::satellites::{PatternError, PatternFront};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`")]
    Expected { line: usize, expected: String },
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error("line {line}: trailing content")]
    Trailing { line: usize },
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

pub fn parse_event(token: &str) -> Option<Event> {
    let mut chars = token.chars();
    let kind = match chars.next()? {
        'L' => EventKind::LeftCusp,
        'R' => EventKind::RightCusp,
        'X' => EventKind::Crossing,
        _ => return None,
    };
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let level: usize = rest.parse().ok()?;
    if level == 0 {
        return None;
    }
    Some(Event { kind, level })
}

pub fn parse_events(line: &str) -> Result<Vec<Event>, String> {
    line.split_whitespace()
        .map(|t| parse_event(t).ok_or_else(|| t.to_string()))
        .collect()
}

pub fn events_to_string(events: &[Event]) -> String {
    events.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// Iterator over meaningful lines with 1-based line numbers.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    pending: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), pending: None }
    }

    pub(crate) fn push_back(&mut self, line: (usize, &'a str)) {
        self.pending = Some(line);
    }

    pub(crate) fn next_line(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        if let Some(l) = self.pending.take() {
            return Ok(l);
        }
        for (i, l) in self.inner.by_ref() {
            if l.trim_start().starts_with('#') {
                continue;
            }
            return Ok((i + 1, l.trim_end()));
        }
        Err(ParseError::Truncated(what))
    }

    pub(crate) fn finish(mut self) -> Result<(), ParseError> {
        if let Some((n, l)) = self.pending.take() {
            if !l.trim().is_empty() {
                return Err(ParseError::Trailing { line: n });
            }
        }
        for (i, l) in self.inner.by_ref() {
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Err(ParseError::Trailing { line: i + 1 });
            }
        }
        Ok(())
    }
}

fn expect_exact(lines: &mut Lines<'_>, text: &'static str) -> Result<(), ParseError> {
    let (n, l) = lines.next_line(text)?;
    if l.trim() != text {
        return Err(ParseError::Expected { line: n, expected: text.to_string() });
    }
    Ok(())
}

pub(crate) fn read_events(lines: &mut Lines<'_>) -> Result<Vec<Event>, ParseError> {
    let (n, l) = lines.next_line("event line")?;
    parse_events(l).map_err(|token| ParseError::BadToken { line: n, token })
}

pub(crate) fn read_orientations(lines: &mut Lines<'_>) -> Result<Vec<Orientation>, ParseError> {
    let (n, l) = lines.next_line("orient line")?;
    let rest = l
        .trim()
        .strip_prefix("orient:")
        .ok_or_else(|| ParseError::Expected { line: n, expected: "orient:".into() })?;
    rest.split_whitespace()
        .map(|t| match t {
            "+" => Ok(Orientation::Positive),
            "-" => Ok(Orientation::Negative),
            _ => Err(ParseError::BadToken { line: n, token: t.into() }),
        })
        .collect()
}

pub(crate) fn read_diagram_block(lines: &mut Lines<'_>) -> Result<FrontDiagram, ParseError> {
    expect_exact(lines, "frontdiagram v1")?;
    let events = read_events(lines)?;
    let orient = read_orientations(lines)?;
    Ok(FrontDiagram::new(events, orient)?)
}

pub fn parse_diagram(text: &str) -> Result<FrontDiagram, ParseError> {
    let mut lines = Lines::new(text);
    let d = read_diagram_block(&mut lines)?;
    lines.finish()?;
    Ok(d)
}

pub fn print_diagram(d: &FrontDiagram) -> String {
    let mut s = String::from("frontdiagram v1\n");
    s.push_str(&events_to_string(d.events()));
    s.push('\n');
    s.push_str("orient:");
    for o in d.orientations() {
        s.push(' ');
        s.push(o.symbol());
    }
    s.push('\n');
    s
}

pub fn parse_pattern(text: &str) -> Result<PatternFront, ParseError> {
    let mut lines = Lines::new(text);
    expect_exact(&mut lines, "pattern v1")?;
    let (n, l) = lines.next_line("strands line")?;
    let k: usize = l
        .trim()
        .strip_prefix("strands:")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| ParseError::Expected { line: n, expected: "strands: <k>".into() })?;
    let events = read_events(&mut lines)?;
    lines.finish()?;
    Ok(PatternFront::new(k, events)?)
}

pub fn print_pattern(p: &PatternFront) -> String {
    format!("pattern v1\nstrands: {}\n{}\n", p.strands(), events_to_string(p.events()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;

    #[test]
    fn round_trip() {
        let text = "frontdiagram v1\nL1 L3 X2 X2 X2 R1 R1\norient: +\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(print_diagram(&d), text);
        let e = "frontdiagram v1\n\norient:\n";
        assert_eq!(print_diagram(&parse_diagram(e).unwrap()), e);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            parse_diagram("frontdiagram v1\nL1 Q1\norient: +\n"),
            Err(ParseError::BadToken { line: 2, .. })
        ));
        assert!(matches!(parse_diagram("frontdiagram v2\n"), Err(ParseError::Expected { line: 1, .. })));
        assert!(matches!(
            parse_diagram("frontdiagram v1\nL1 X1\norient: +\n"),
            Err(ParseError::Front(FrontError::NonzeroFinalStrands(2)))
        ));
        assert!(parse_event("L0").is_none());
        assert!(parse_event("X+1").is_none());
    }

    #[test]
    fn comments_skipped() {
        let d = parse_diagram("# unknot\nfrontdiagram v1\nL1 R1\norient: -\n").unwrap();
        assert_eq!(d.events(), word("L1 R1").as_slice());
        assert_eq!(d.orientations(), &[Orientation::Negative]);
    }

    #[test]
    fn pattern_round_trip() {
        let text = "pattern v1\nstrands: 2\nX1 X1 X1\n";
        let p = parse_pattern(text).unwrap();
        assert_eq!(print_pattern(&p), text);
    }
}
