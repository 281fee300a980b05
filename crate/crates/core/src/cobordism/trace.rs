//! Cobordism traces, their text format and the replay checker.
//!
//! ```text
//! trace v1
//! chi: 1
//! orientable: true
//! frontdiagram v1
//!
//! orient:
//! birth 0@1 h=5d1c...
//! surgery 1@1 h=...
//! iso commute 3 h=...
//! frontdiagram v1
//! L1 R1
//! orient: +
//! ```
//!
//! Steps are listed bottom to top. Besides the four decomposable moves a
//! line may hold an isotopy rewrite prefixed by `iso`. The optional
//! `h=` suffix is the hash of the diagram reached after the step. A birth
//! line may end in `-` to give the new unknot the negative orientation.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::moves::{apply_move, pinch_is_orientable, surgery_is_orientable, DecomposableMove, Site};
use crate::format::{events_to_string, print_diagram, read_diagram_block, Lines, ParseError};
use crate::front::{FrontDiagram, Orientation};
use crate::isotopy::{apply_rewrite, Rewrite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Move(DecomposableMove),
    Isotopy(Rewrite),
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceStep::Move(m) => write!(f, "{m}"),
            TraceStep::Isotopy(r) => write!(f, "iso {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: TraceStep,
    /// Hash of the diagram after the step, if recorded.
    pub hash: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismTrace {
    pub bottom: FrontDiagram,
    pub steps: Vec<TraceEntry>,
    pub top: FrontDiagram,
    pub chi: i64,
    pub orientable: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MoveCounts {
    pub births: usize,
    pub deaths: usize,
    pub pinches: usize,
    pub surgeries: usize,
    pub isotopies: usize,
}

impl MoveCounts {
    pub fn chi(&self) -> i64 {
        (self.births + self.deaths) as i64 - (self.pinches + self.surgeries) as i64
    }
}

/// Short content hash of a diagram's event word.
pub fn diagram_hash(d: &FrontDiagram) -> String {
    let digest = Sha256::digest(events_to_string(d.events()).as_bytes());
    digest[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl CobordismTrace {
    pub fn counts(&self) -> MoveCounts {
        let mut c = MoveCounts::default();
        for e in &self.steps {
            match e.step {
                TraceStep::Move(DecomposableMove::Birth { .. }) => c.births += 1,
                TraceStep::Move(DecomposableMove::Death { .. }) => c.deaths += 1,
                TraceStep::Move(DecomposableMove::Pinch { .. }) => c.pinches += 1,
                TraceStep::Move(DecomposableMove::Surgery { .. }) => c.surgeries += 1,
                TraceStep::Isotopy(_) => c.isotopies += 1,
            }
        }
        c
    }

    /// Diagrams from bottom to top, one per step boundary.
    pub fn replay(&self) -> Result<Vec<FrontDiagram>, String> {
        let mut out = vec![self.bottom.clone()];
        for (k, e) in self.steps.iter().enumerate() {
            let cur = out.last().expect("non-empty");
            let next = match e.step {
                TraceStep::Move(m) => apply_move(cur, &m).map_err(|err| format!("step {k} ({}): {err}", e.step))?,
                TraceStep::Isotopy(r) => apply_rewrite(cur, r).map_err(|err| format!("step {k} ({}): {err}", e.step))?,
            };
            out.push(next);
        }
        Ok(out)
    }

    /// The trace read from the top down: births become deaths and
    /// surgeries become pinches. Isotopies are skipped.
    pub fn downward_moves(&self) -> Vec<DecomposableMove> {
        let Ok(diagrams) = self.replay() else { return Vec::new() };
        let mut out = Vec::new();
        for (k, e) in self.steps.iter().enumerate().rev() {
            let after = &diagrams[k + 1];
            match e.step {
                TraceStep::Move(DecomposableMove::Birth { site, .. }) => {
                    let (t, _) = after.touched(site.index);
                    out.push(DecomposableMove::Death { component: after.branch_component(t) });
                }
                TraceStep::Move(DecomposableMove::Surgery { site }) => out.push(DecomposableMove::Pinch { site }),
                TraceStep::Move(DecomposableMove::Pinch { site }) => out.push(DecomposableMove::Surgery { site }),
                TraceStep::Move(DecomposableMove::Death { .. }) => {}
                TraceStep::Isotopy(_) => {}
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("trace v1\n");
        let _ = writeln!(s, "chi: {}", self.chi);
        let _ = writeln!(s, "orientable: {}", self.orientable);
        s.push_str(&print_diagram(&self.bottom));
        for e in &self.steps {
            match &e.hash {
                Some(h) => {
                    let _ = writeln!(s, "{} h={}", e.step, h);
                }
                None => {
                    let _ = writeln!(s, "{}", e.step);
                }
            }
        }
        s.push_str(&print_diagram(&self.top));
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let (n, l) = lines.next_line("trace header")?;
        if l.trim() != "trace v1" {
            return Err(ParseError::Expected { line: n, expected: "trace v1".into() });
        }
        let mut chi = None;
        let mut orientable = false;
        let mut peek = lines.next_line("diagram block")?;
        loop {
            let t = peek.1.trim();
            if let Some(v) = t.strip_prefix("chi:") {
                chi = Some(v.trim().parse::<i64>().map_err(|_| ParseError::BadToken { line: peek.0, token: v.trim().into() })?);
            } else if let Some(v) = t.strip_prefix("orientable:") {
                orientable = match v.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(ParseError::BadToken { line: peek.0, token: other.into() }),
                };
            } else {
                break;
            }
            peek = lines.next_line("diagram block")?;
        }
        lines.push_back(peek);
        let bottom = read_diagram_block(&mut lines)?;
        let mut steps = Vec::new();
        let top = loop {
            let (n, l) = lines.next_line("move or top diagram")?;
            if l.trim() == "frontdiagram v1" {
                lines.push_back((n, l));
                break read_diagram_block(&mut lines)?;
            }
            steps.push(parse_step(n, l.trim())?);
        };
        lines.finish()?;
        let mut t = CobordismTrace { bottom, steps, top, chi: 0, orientable };
        t.chi = chi.unwrap_or_else(|| t.counts().chi());
        Ok(t)
    }
}

fn parse_step(n: usize, line: &str) -> Result<TraceEntry, ParseError> {
    let bad = || ParseError::BadToken { line: n, token: line.to_string() };
    let (body, hash) = match line.rsplit_once(" h=") {
        Some((b, h)) => (b.trim(), Some(h.trim().to_string())),
        None => (line, None),
    };
    let parts: Vec<&str> = body.split_whitespace().collect();
    let step = match parts.as_slice() {
        ["iso", rest @ ..] => TraceStep::Isotopy(Rewrite::parse(&rest.join(" ")).ok_or_else(bad)?),
        ["birth", site] => TraceStep::Move(DecomposableMove::Birth {
            site: site.parse().map_err(|_| bad())?,
            orientation: Orientation::Positive,
        }),
        ["birth", site, sign] => TraceStep::Move(DecomposableMove::Birth {
            site: site.parse().map_err(|_| bad())?,
            orientation: match *sign {
                "+" => Orientation::Positive,
                "-" => Orientation::Negative,
                _ => return Err(bad()),
            },
        }),
        ["death", c] => TraceStep::Move(DecomposableMove::Death { component: c.parse().map_err(|_| bad())? }),
        ["pinch", site] => TraceStep::Move(DecomposableMove::Pinch { site: site.parse::<Site>().map_err(|_| bad())? }),
        ["surgery", site] => TraceStep::Move(DecomposableMove::Surgery { site: site.parse::<Site>().map_err(|_| bad())? }),
        _ => return Err(bad()),
    };
    Ok(TraceEntry { step, hash })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFailure {
    /// Offending step, or `None` for whole-trace checks.
    pub step: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub valid: bool,
    pub failure: Option<TraceFailure>,
}

impl TraceCheck {
    fn fail(step: Option<usize>, reason: String) -> Self {
        TraceCheck { valid: false, failure: Some(TraceFailure { step, reason }) }
    }
}

/// Replays a trace with every precondition checked. Also verifies the
/// Euler characteristic and, for traces flagged orientable, that every
/// saddle joins oppositely oriented strands.
pub fn check_trace(t: &CobordismTrace) -> TraceCheck {
    let counts = t.counts();
    if counts.chi() != t.chi {
        return TraceCheck::fail(None, format!("recorded chi {} but moves give {}", t.chi, counts.chi()));
    }
    let mut cur = t.bottom.clone();
    for (k, e) in t.steps.iter().enumerate() {
        if t.orientable {
            let ok = match e.step {
                TraceStep::Move(DecomposableMove::Surgery { site }) => surgery_is_orientable(&cur, site),
                TraceStep::Move(DecomposableMove::Pinch { site }) => pinch_is_orientable(&cur, site),
                _ => Ok(true),
            };
            if ok == Ok(false) {
                return TraceCheck::fail(Some(k), format!("saddle `{}` joins strands oriented the same way", e.step));
            }
        }
        let next = match e.step {
            TraceStep::Move(m) => apply_move(&cur, &m).map_err(|err| err.to_string()),
            TraceStep::Isotopy(r) => apply_rewrite(&cur, r).map_err(|err| err.to_string()),
        };
        cur = match next {
            Ok(d) => d,
            Err(reason) => return TraceCheck::fail(Some(k), format!("`{}`: {reason}", e.step)),
        };
        if let Some(h) = &e.hash {
            let actual = diagram_hash(&cur);
            if *h != actual {
                return TraceCheck::fail(Some(k), format!("hash mismatch after `{}`: recorded {h}, got {actual}", e.step));
            }
        }
    }
    if cur.events() != t.top.events() {
        return TraceCheck::fail(None, "replay does not reach the recorded top diagram".into());
    }
    if t.orientable && cur.orientations() != t.top.orientations() {
        return TraceCheck::fail(None, "replay reaches the top diagram with other orientations".into());
    }
    TraceCheck { valid: true, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;

    fn unknot_trace() -> CobordismTrace {
        let top = FrontDiagram::positive(word("L1 R1")).unwrap();
        CobordismTrace {
            bottom: FrontDiagram::empty(),
            steps: vec![TraceEntry {
                step: TraceStep::Move(DecomposableMove::Birth { site: Site::new(0, 1), orientation: Orientation::Positive }),
                hash: Some(diagram_hash(&top)),
            }],
            top,
            chi: 1,
            orientable: true,
        }
    }

    #[test]
    fn round_trip_and_check() {
        let t = unknot_trace();
        assert!(check_trace(&t).valid);
        let text = t.to_text();
        let back = CobordismTrace::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_text(), text);
        assert_eq!(t.downward_moves(), vec![DecomposableMove::Death { component: 0 }]);
    }

    #[test]
    fn bad_chi_rejected() {
        let mut t = unknot_trace();
        t.chi = 0;
        let c = check_trace(&t);
        assert!(!c.valid);
        assert_eq!(c.failure.unwrap().step, None);
    }

    #[test]
    fn death_on_linked_component_rejected() {
        let bottom = FrontDiagram::positive(word("L1 L3 X2 X2 R3 R1")).unwrap();
        let t = CobordismTrace {
            top: FrontDiagram::positive(word("L1 R1")).unwrap(),
            bottom,
            steps: vec![TraceEntry { step: TraceStep::Move(DecomposableMove::Death { component: 1 }), hash: None }],
            chi: 1,
            orientable: true,
        };
        let c = check_trace(&t);
        assert!(!c.valid);
        assert_eq!(c.failure.unwrap().step, Some(0));
    }
}
