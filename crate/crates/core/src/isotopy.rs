//! Legendrian Reidemeister rewrites on event words.
//!
//! Local forms (strand `s` at position `p`):
//!
//! * R1 fish below `s`: `L(p+1) X(p) R(p+1)`; above: `L(p) X(p+1) R(p)`.
//! * R2, a cusp pushed through a neighbouring strand:
//!   `L(p+1) = L(p) X(p+1) X(p)`, `L(p) = L(p+1) X(p) X(p+1)`,
//!   `R(p+1) = X(p) X(p+1) R(p)`, `R(p) = X(p+1) X(p) R(p+1)`.
//! * R3: `X(p) X(p+1) X(p) = X(p+1) X(p) X(p+1)`.
//! * Commute: adjacent events with separate supports swap, with levels
//!   adjusted. A right cusp followed by a left cusp in the same gap can be
//!   pulled apart two ways, placing the new eye above or below.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::front::{Event, EventKind, FrontDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Above => "above",
            Side::Below => "below",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteKind {
    Commute,
    R1Insert,
    R1Remove,
    R2Push,
    R2Pull,
    R3Triple,
}

pub const ALL_KINDS: [RewriteKind; 6] = [
    RewriteKind::Commute,
    RewriteKind::R1Insert,
    RewriteKind::R1Remove,
    RewriteKind::R2Push,
    RewriteKind::R2Pull,
    RewriteKind::R3Triple,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rewrite {
    /// Swap events `index` and `index+1`; `split` pulls apart `R(k) L(k)`.
    Commute { index: usize, split: Option<Side> },
    /// Insert a fish on the strand at position `strand` before event `index`.
    R1Insert { index: usize, strand: usize, side: Side },
    /// Remove the fish occupying events `index..index+3`.
    R1Remove { index: usize },
    /// Push the cusp at `index` through its neighbour on `side`.
    R2Push { index: usize, side: Side },
    /// Pull back the cusp-and-two-crossings group at `index..index+3`.
    R2Pull { index: usize },
    /// Triple-point move on crossings `index..index+3`.
    R3Triple { index: usize },
}

impl Rewrite {
    pub fn kind(&self) -> RewriteKind {
        match self {
            Rewrite::Commute { .. } => RewriteKind::Commute,
            Rewrite::R1Insert { .. } => RewriteKind::R1Insert,
            Rewrite::R1Remove { .. } => RewriteKind::R1Remove,
            Rewrite::R2Push { .. } => RewriteKind::R2Push,
            Rewrite::R2Pull { .. } => RewriteKind::R2Pull,
            Rewrite::R3Triple { .. } => RewriteKind::R3Triple,
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            Rewrite::Commute { index, .. }
            | Rewrite::R1Insert { index, .. }
            | Rewrite::R1Remove { index }
            | Rewrite::R2Push { index, .. }
            | Rewrite::R2Pull { index }
            | Rewrite::R3Triple { index } => index,
        }
    }

    pub fn parse(s: &str) -> Option<Rewrite> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let side = |t: &str| match t {
            "above" => Some(Side::Above),
            "below" => Some(Side::Below),
            _ => None,
        };
        let num = |t: &str| t.parse::<usize>().ok();
        match parts.as_slice() {
            ["commute", i] => Some(Rewrite::Commute { index: num(i)?, split: None }),
            ["commute", i, s] => Some(Rewrite::Commute { index: num(i)?, split: Some(side(s)?) }),
            ["r1-insert", site, s] => {
                let (i, k) = site.split_once('@')?;
                Some(Rewrite::R1Insert { index: num(i)?, strand: num(k)?, side: side(s)? })
            }
            ["r1-remove", i] => Some(Rewrite::R1Remove { index: num(i)? }),
            ["r2-push", i, s] => Some(Rewrite::R2Push { index: num(i)?, side: side(s)? }),
            ["r2-pull", i] => Some(Rewrite::R2Pull { index: num(i)? }),
            ["r3", i] => Some(Rewrite::R3Triple { index: num(i)? }),
            _ => None,
        }
    }
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Rewrite::Commute { index, split: None } => write!(f, "commute {index}"),
            Rewrite::Commute { index, split: Some(s) } => write!(f, "commute {index} {}", s.name()),
            Rewrite::R1Insert { index, strand, side } => write!(f, "r1-insert {index}@{strand} {}", side.name()),
            Rewrite::R1Remove { index } => write!(f, "r1-remove {index}"),
            Rewrite::R2Push { index, side } => write!(f, "r2-push {index} {}", side.name()),
            Rewrite::R2Pull { index } => write!(f, "r2-pull {index}"),
            Rewrite::R3Triple { index } => write!(f, "r3 {index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotopyError {
    #[error("rewrite `{0}` does not apply")]
    InapplicableRewrite(Rewrite),
}

// Vertical positions: strand k is 2k, the gap above strand k is 2k-1.
fn in_region(e: Event) -> (usize, usize) {
    let l = e.level;
    match e.kind {
        EventKind::LeftCusp => (2 * l - 1, 2 * l - 1),
        _ => (2 * l, 2 * l + 2),
    }
}

fn out_region(e: Event) -> (usize, usize) {
    let l = e.level;
    match e.kind {
        EventKind::RightCusp => (2 * l - 1, 2 * l - 1),
        _ => (2 * l, 2 * l + 2),
    }
}

fn shift(e: Event, by: isize) -> Event {
    Event { kind: e.kind, level: (e.level as isize + by) as usize }
}

/// Swaps two adjacent events with separate supports, returning the new
/// pair in word order, or `None` when they interact.
pub fn commute_pair(e1: Event, e2: Event) -> Option<(Event, Event)> {
    let (o_lo, o_hi) = out_region(e1);
    let (i_lo, i_hi) = in_region(e2);
    if i_hi < o_lo {
        Some((e2, shift(e1, e2.delta())))
    } else if i_lo > o_hi {
        Some((shift(e2, -e1.delta()), e1))
    } else {
        None
    }
}

/// Whether `e2` sits strictly above `e1` in the slice between them.
pub(crate) fn above(e1: Event, e2: Event) -> bool {
    in_region(e2).1 < out_region(e1).0
}

fn split_pair(e1: Event, e2: Event, side: Side) -> Option<(Event, Event)> {
    if e1.is_right() && e2.is_left() && e1.level == e2.level {
        let k = e1.level;
        Some(match side {
            Side::Above => (Event::left(k), Event::right(k + 2)),
            Side::Below => (Event::left(k + 2), Event::right(k)),
        })
    } else {
        None
    }
}

fn fish(p: usize, side: Side) -> [Event; 3] {
    match side {
        Side::Below => [Event::left(p + 1), Event::cross(p), Event::right(p + 1)],
        Side::Above => [Event::left(p), Event::cross(p + 1), Event::right(p)],
    }
}

fn match_fish(w: &[Event]) -> Option<(usize, Side)> {
    if let [a, b, c] = w {
        if a.is_left() && b.is_crossing() && c.is_right() && a.level == c.level {
            if b.level + 1 == a.level {
                return Some((b.level, Side::Below));
            }
            if b.level == a.level + 1 {
                return Some((a.level, Side::Above));
            }
        }
    }
    None
}

/// Long form of an R2 push. The cusp keeps its identity inside the window.
fn r2_long(e: Event, side: Side, strands: usize) -> Option<[Event; 3]> {
    let q = e.level;
    match (e.kind, side) {
        (EventKind::LeftCusp, Side::Above) if q >= 2 => {
            let p = q - 1;
            Some([Event::left(p), Event::cross(p + 1), Event::cross(p)])
        }
        (EventKind::LeftCusp, Side::Below) if q <= strands => {
            Some([Event::left(q + 1), Event::cross(q), Event::cross(q + 1)])
        }
        (EventKind::RightCusp, Side::Above) if q >= 2 => {
            let p = q - 1;
            Some([Event::cross(p), Event::cross(p + 1), Event::right(p)])
        }
        (EventKind::RightCusp, Side::Below) if q + 2 <= strands => {
            Some([Event::cross(q + 1), Event::cross(q), Event::right(q + 1)])
        }
        _ => None,
    }
}

/// Short form and side of an R2 long window, if it is one.
fn r2_short(w: &[Event]) -> Option<(Event, Side)> {
    let [a, b, c] = w else { return None };
    if a.is_left() && b.is_crossing() && c.is_crossing() {
        let p = a.level;
        if b.level == p + 1 && c.level == p {
            return Some((Event::left(p + 1), Side::Above));
        }
        if p >= 2 && b.level == p - 1 && c.level == p {
            return Some((Event::left(p - 1), Side::Below));
        }
    }
    if a.is_crossing() && b.is_crossing() && c.is_right() {
        let p = c.level;
        if a.level == p && b.level == p + 1 {
            return Some((Event::right(p + 1), Side::Above));
        }
        if p >= 2 && a.level == p && b.level == p - 1 {
            return Some((Event::right(p - 1), Side::Below));
        }
    }
    None
}

fn match_r3(w: &[Event]) -> Option<[Event; 3]> {
    let [a, b, c] = w else { return None };
    if !(a.is_crossing() && b.is_crossing() && c.is_crossing()) || a.level != c.level {
        return None;
    }
    let p = a.level;
    if b.level == p + 1 || b.level + 1 == p {
        Some([Event::cross(b.level), Event::cross(p), Event::cross(b.level)])
    } else {
        None
    }
}

/// A planned splice: replace `start..end` by `events`, carrying arc signs.
struct Plan {
    start: usize,
    end: usize,
    events: Vec<Event>,
    hints: Vec<Option<i8>>,
}

fn plan(d: &FrontDiagram, r: Rewrite, hints: &[Option<i8>]) -> Option<Plan> {
    let ev = d.events();
    let n = ev.len();
    let window = |i: usize, len: usize| if i + len <= n { Some(&ev[i..i + len]) } else { None };
    match r {
        Rewrite::Commute { index, split } => {
            let w = window(index, 2)?;
            let (a, b) = match split {
                None => commute_pair(w[0], w[1])?,
                Some(side) => split_pair(w[0], w[1], side)?,
            };
            let hs = match split {
                None => vec![hints[index + 1], hints[index]],
                Some(_) => vec![hints[index + 1], None],
            };
            Some(Plan { start: index, end: index + 2, events: vec![a, b], hints: hs })
        }
        Rewrite::R1Insert { index, strand, side } => {
            if index > n || strand == 0 || strand > d.strands_before(index) {
                return None;
            }
            Some(Plan { start: index, end: index, events: fish(strand, side).to_vec(), hints: vec![None; 3] })
        }
        Rewrite::R1Remove { index } => {
            match_fish(window(index, 3)?)?;
            Some(Plan { start: index, end: index + 3, events: vec![], hints: vec![] })
        }
        Rewrite::R2Push { index, side } => {
            let e = *ev.get(index)?;
            let long = r2_long(e, side, d.strands_before(index))?;
            let hs = if e.is_left() { vec![hints[index], None, None] } else { vec![None; 3] };
            Some(Plan { start: index, end: index + 1, events: long.to_vec(), hints: hs })
        }
        Rewrite::R2Pull { index } => {
            let (short, _) = r2_short(window(index, 3)?)?;
            Some(Plan { start: index, end: index + 3, events: vec![short], hints: vec![hints[index]] })
        }
        Rewrite::R3Triple { index } => {
            let other = match_r3(window(index, 3)?)?;
            Some(Plan { start: index, end: index + 3, events: other.to_vec(), hints: vec![None; 3] })
        }
    }
}

fn execute(d: &FrontDiagram, p: Plan, hints: &[Option<i8>]) -> FrontDiagram {
    let ev = d.events();
    let mut events = Vec::with_capacity(ev.len() + p.events.len());
    let mut hs = Vec::with_capacity(ev.len() + p.events.len());
    events.extend_from_slice(&ev[..p.start]);
    hs.extend_from_slice(&hints[..p.start]);
    events.extend(p.events);
    hs.extend(p.hints);
    events.extend_from_slice(&ev[p.end..]);
    hs.extend_from_slice(&hints[p.end..]);
    FrontDiagram::from_hints(events, &hs).expect("rewrites preserve validity")
}

pub fn apply_rewrite(d: &FrontDiagram, r: Rewrite) -> Result<FrontDiagram, IsotopyError> {
    let hints = d.hints();
    let p = plan(d, r, &hints).ok_or(IsotopyError::InapplicableRewrite(r))?;
    Ok(execute(d, p, &hints))
}

/// Whether `r` applies to `d`.
pub fn is_applicable(d: &FrontDiagram, r: Rewrite) -> bool {
    plan(d, r, &d.hints()).is_some()
}

/// All sites of one kind, in word order.
pub fn rewrites_of_kind(d: &FrontDiagram, kind: RewriteKind) -> Vec<Rewrite> {
    let ev = d.events();
    let n = ev.len();
    let mut out = Vec::new();
    match kind {
        RewriteKind::Commute => {
            for index in 0..n.saturating_sub(1) {
                let (a, b) = (ev[index], ev[index + 1]);
                if commute_pair(a, b).is_some() {
                    out.push(Rewrite::Commute { index, split: None });
                } else if split_pair(a, b, Side::Above).is_some() {
                    out.push(Rewrite::Commute { index, split: Some(Side::Above) });
                    out.push(Rewrite::Commute { index, split: Some(Side::Below) });
                }
            }
        }
        RewriteKind::R1Insert => {
            for index in 0..=n {
                for strand in 1..=d.strands_before(index) {
                    out.push(Rewrite::R1Insert { index, strand, side: Side::Above });
                    out.push(Rewrite::R1Insert { index, strand, side: Side::Below });
                }
            }
        }
        RewriteKind::R1Remove => {
            for index in 0..n.saturating_sub(2) {
                if match_fish(&ev[index..index + 3]).is_some() {
                    out.push(Rewrite::R1Remove { index });
                }
            }
        }
        RewriteKind::R2Push => {
            for index in 0..n {
                if ev[index].is_crossing() {
                    continue;
                }
                for side in [Side::Above, Side::Below] {
                    if r2_long(ev[index], side, d.strands_before(index)).is_some() {
                        out.push(Rewrite::R2Push { index, side });
                    }
                }
            }
        }
        RewriteKind::R2Pull => {
            for index in 0..n.saturating_sub(2) {
                if r2_short(&ev[index..index + 3]).is_some() {
                    out.push(Rewrite::R2Pull { index });
                }
            }
        }
        RewriteKind::R3Triple => {
            for index in 0..n.saturating_sub(2) {
                if match_r3(&ev[index..index + 3]).is_some() {
                    out.push(Rewrite::R3Triple { index });
                }
            }
        }
    }
    out
}

/// Every applicable rewrite, ordered by kind and then by word position.
pub fn applicable_rewrites(d: &FrontDiagram) -> Vec<Rewrite> {
    ALL_KINDS.iter().flat_map(|&k| rewrites_of_kind(d, k)).collect()
}

/// The rewrite undoing `r`, expressed on `apply_rewrite(d, r)`.
pub fn inverse(d: &FrontDiagram, r: Rewrite) -> Result<Rewrite, IsotopyError> {
    if !is_applicable(d, r) {
        return Err(IsotopyError::InapplicableRewrite(r));
    }
    let ev = d.events();
    Ok(match r {
        Rewrite::Commute { index, split: Some(_) } => Rewrite::Commute { index, split: None },
        Rewrite::Commute { index, split: None } => {
            let (a, b) = (ev[index], ev[index + 1]);
            if a.is_left() && b.is_right() {
                if b.level == a.level + 2 {
                    Rewrite::Commute { index, split: Some(Side::Above) }
                } else if a.level == b.level + 2 {
                    Rewrite::Commute { index, split: Some(Side::Below) }
                } else {
                    Rewrite::Commute { index, split: None }
                }
            } else {
                Rewrite::Commute { index, split: None }
            }
        }
        Rewrite::R1Insert { index, .. } => Rewrite::R1Remove { index },
        Rewrite::R1Remove { index } => {
            let (strand, side) = match_fish(&ev[index..index + 3]).expect("checked");
            Rewrite::R1Insert { index, strand, side }
        }
        Rewrite::R2Push { index, .. } => Rewrite::R2Pull { index },
        Rewrite::R2Pull { index } => {
            let (_, side) = r2_short(&ev[index..index + 3]).expect("checked");
            Rewrite::R2Push { index, side }
        }
        Rewrite::R3Triple { index } => Rewrite::R3Triple { index },
    })
}

/// Applies `steps` uniformly sampled rewrites. Each step picks a rewrite
/// kind uniformly among those with a site, then a site uniformly. Kinds
/// that lengthen the word are suspended once it grows past
/// `max(2n, n + 24)` events.
pub fn random_shuffle(d: &FrontDiagram, steps: usize, seed: u64) -> FrontDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n0 = d.len();
    let cap = (2 * n0).max(n0 + 24);
    let mut cur = d.clone();
    for _ in 0..steps {
        let grow_ok = cur.len() <= cap;
        let mut choices: Vec<(RewriteKind, Vec<Rewrite>)> = Vec::new();
        for kind in ALL_KINDS {
            let growing = matches!(kind, RewriteKind::R1Insert | RewriteKind::R2Push);
            if growing && !grow_ok {
                continue;
            }
            if kind == RewriteKind::R1Insert {
                // sampled lazily, the full list is large
                if !cur.is_empty() {
                    choices.push((kind, Vec::new()));
                }
                continue;
            }
            let sites = rewrites_of_kind(&cur, kind);
            if !sites.is_empty() {
                choices.push((kind, sites));
            }
        }
        let Some((kind, sites)) = choices.choose(&mut rng) else { continue };
        let r = if *kind == RewriteKind::R1Insert {
            let total: usize = (0..=cur.len()).map(|j| cur.strands_before(j)).sum();
            let mut pick = rng.gen_range(0..2 * total);
            let side = if pick % 2 == 0 { Side::Above } else { Side::Below };
            pick /= 2;
            let mut index = 0;
            while pick >= cur.strands_before(index) {
                pick -= cur.strands_before(index);
                index += 1;
            }
            Rewrite::R1Insert { index, strand: pick + 1, side }
        } else {
            *sites.choose(&mut rng).expect("non-empty")
        };
        cur = apply_rewrite(&cur, r).expect("sampled from applicable sites");
    }
    cur
}
