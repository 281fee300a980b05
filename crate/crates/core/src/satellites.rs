//! Contact-framed copies and Legendrian satellites.
//!
//! The k-copy replaces each strand by k vertical translates. A left cusp
//! becomes k stacked cusps followed by the crossings that sort their upper
//! branches above their lower ones; a right cusp is the mirror image; a
//! crossing becomes a k x k grid. A pattern is an annular front on k
//! strands spliced into one block of the copy.

use thiserror::Error;

use crate::front::{classical_invariants, ClassicalInvariants, Event, EventKind, FrontDiagram, FrontError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern needs at least one strand")]
    NoStrands,
    #[error("event {index} ({event}) is out of range on {strands} strands")]
    LevelOutOfBounds { index: usize, event: Event, strands: usize },
    #[error("pattern ends with {0} strands")]
    StrandCountChanged(usize),
    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatelliteError {
    #[error("companion has {0} components, expected a knot")]
    CompanionNotKnot(usize),
    #[error("no strand {strand} after event {event}")]
    BadSplicePoint { event: usize, strand: usize },
    #[error(transparent)]
    Front(#[from] FrontError),
}

/// How the pattern's boundary strands are wired through the annulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wiring {
    /// For each boundary point (inputs `0..k`, then outputs `k..2k`), the
    /// boundary point at the other end of its strand.
    pub partner: Vec<usize>,
    /// Closed components lying inside the annulus.
    pub closed: usize,
}

impl Wiring {
    /// Components of the closure when output `j` is glued to input `j`.
    pub fn closure_components(&self) -> usize {
        let k = self.partner.len() / 2;
        let mut seen = vec![false; 2 * k];
        let mut loops = 0;
        for s in 0..2 * k {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                let q = self.partner[p];
                seen[q] = true;
                // cross the seam
                p = if q < k { q + k } else { q - k };
            }
        }
        loops + self.closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFront {
    strands: usize,
    events: Vec<Event>,
    wiring: Wiring,
}

impl PatternFront {
    pub fn new(strands: usize, events: Vec<Event>) -> Result<Self, PatternError> {
        if strands == 0 {
            return Err(PatternError::NoStrands);
        }
        let wiring = wire(strands, &events)?;
        Ok(PatternFront { strands, events, wiring })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn wiring(&self) -> &Wiring {
        &self.wiring
    }

    /// The pattern read in the opposite direction around the annulus.
    pub fn reversed(&self) -> Self {
        let events = self.events.iter().rev().map(Event::mirrored).collect();
        PatternFront::new(self.strands, events).expect("reversal keeps validity")
    }
}

fn wire(k: usize, events: &[Event]) -> Result<Wiring, PatternError> {
    // union-find over boundary points and cap endpoints
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    let mut stack: Vec<usize> = (0..k).collect();
    let mut closed = 0;
    for (index, &e) in events.iter().enumerate() {
        let m = stack.len();
        let l = e.level;
        let ok = match e.kind {
            EventKind::LeftCusp => l >= 1 && l <= m + 1,
            _ => l >= 1 && l < m,
        };
        if !ok {
            return Err(PatternError::LevelOutOfBounds { index, event: e, strands: m });
        }
        match e.kind {
            EventKind::LeftCusp => {
                let a = parent.len();
                parent.push(a);
                stack.insert(l - 1, a);
                stack.insert(l - 1, a);
            }
            EventKind::RightCusp => {
                let (x, y) = (find(&mut parent, stack[l - 1]), find(&mut parent, stack[l]));
                if x == y {
                    closed += 1;
                } else {
                    parent[y] = x;
                }
                stack.drain(l - 1..=l);
            }
            EventKind::Crossing => stack.swap(l - 1, l),
        }
    }
    if stack.len() != k {
        return Err(PatternError::StrandCountChanged(stack.len()));
    }
    // endpoints: inputs 0..k, outputs k..2k
    let mut by_root: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        by_root.entry(find(&mut parent, i)).or_default().push(i);
    }
    for (j, &s) in stack.iter().enumerate() {
        by_root.entry(find(&mut parent, s)).or_default().push(k + j);
    }
    let mut partner = vec![0; 2 * k];
    for ends in by_root.values() {
        // every strand through the annulus has exactly two boundary ends
        debug_assert_eq!(ends.len(), 2);
        partner[ends[0]] = ends[1];
        partner[ends[1]] = ends[0];
    }
    Ok(Wiring { partner, closed })
}

/// Built-in patterns: `identity`, `half_twist`, `stab_core`, `whitehead`.
///
/// `stab_core` takes `+1` or `-1` and is a single zigzag on one strand.
/// `whitehead` is the 2-strand clasp `L3 X2 X2 R1`: a cap dips below both
/// strands, clasps the lower one twice and closes them off.
pub fn builtin_pattern(name: &str, param: i64) -> Result<PatternFront, PatternError> {
    let (k, events) = match name {
        "identity" if param >= 1 => (param as usize, Vec::new()),
        "half_twist" if param >= 0 => (2, vec![Event::cross(1); param as usize]),
        "stab_core" if param == 1 => (1, vec![Event::left(2), Event::right(1)]),
        "stab_core" if param == -1 => (1, vec![Event::left(1), Event::right(2)]),
        "whitehead" => (2, vec![Event::left(3), Event::cross(2), Event::cross(2), Event::right(1)]),
        _ => return Err(PatternError::UnknownPattern(format!("{name}({param})"))),
    };
    PatternFront::new(k, events)
}

/// Parses `half_twist(3)`, `stab_core(-)`, `identity(2)`, `whitehead`.
pub fn pattern_by_name(spec: &str) -> Result<PatternFront, PatternError> {
    let unknown = || PatternError::UnknownPattern(spec.to_string());
    let (name, param) = match spec.split_once('(') {
        Some((n, rest)) => {
            let p = rest.strip_suffix(')').ok_or_else(unknown)?.trim();
            let v = match p {
                "+" => 1,
                "-" => -1,
                _ => p.parse().map_err(|_| unknown())?,
            };
            (n.trim(), v)
        }
        None => (spec.trim(), 0),
    };
    builtin_pattern(name, param)
}

/// Bubble-sorts `arr` into `target` order, emitting the swap levels.
fn sort_word(mut arr: Vec<usize>, key: impl Fn(usize) -> usize, base: usize, out: &mut Vec<Event>) {
    loop {
        let mut done = true;
        for i in 0..arr.len().saturating_sub(1) {
            if key(arr[i]) > key(arr[i + 1]) {
                arr.swap(i, i + 1);
                out.push(Event::cross(base + i));
                done = false;
            }
        }
        if done {
            return;
        }
    }
}

/// Gadget replacing `L(i)` in a k-copy.
fn left_gadget(i: usize, k: usize) -> Vec<Event> {
    let b = (i - 1) * k + 1;
    let mut out: Vec<Event> = (0..k).map(|j| Event::left(b + 2 * j)).collect();
    // after stacking: T1 B1 T2 B2 ...; want T1..Tk B1..Bk
    let arr: Vec<usize> = (0..2 * k).collect();
    sort_word(arr, |x| if x % 2 == 0 { x / 2 } else { k + x / 2 }, b, &mut out);
    out
}

fn right_gadget(i: usize, k: usize) -> Vec<Event> {
    left_gadget(i, k).iter().rev().map(Event::mirrored).collect()
}

fn crossing_gadget(i: usize, k: usize) -> Vec<Event> {
    let b = (i - 1) * k + 1;
    let mut out = Vec::with_capacity(k * k);
    let arr: Vec<usize> = (0..2 * k).collect();
    sort_word(arr, |x| (x + k) % (2 * k), b, &mut out);
    out
}

fn gadget(e: Event, k: usize) -> Vec<Event> {
    match e.kind {
        EventKind::LeftCusp => left_gadget(e.level, k),
        EventKind::RightCusp => right_gadget(e.level, k),
        EventKind::Crossing => crossing_gadget(e.level, k),
    }
}

/// Where a pattern goes: just after companion event `event`, on the block
/// of companion strand `strand` (1-based, counted after the event).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplicePoint {
    pub event: usize,
    pub strand: usize,
}

impl SplicePoint {
    /// Upper branch of the first left cusp.
    pub const FIRST: SplicePoint = SplicePoint { event: 0, strand: 1 };
}

/// Contact-framed k-copy, copies oriented like the companion.
pub fn k_copy(d: &FrontDiagram, k: usize) -> FrontDiagram {
    splice_copy(d, k, &[]).expect("k-copy of a valid front is valid")
}

fn splice_copy(d: &FrontDiagram, k: usize, patterns: &[(&PatternFront, SplicePoint)]) -> Result<FrontDiagram, SatelliteError> {
    let slices = d.slices();
    let mut events = Vec::new();
    let mut hints = Vec::new();
    for (i, &e) in d.events().iter().enumerate() {
        let g = gadget(e, k);
        let sign = e.is_left().then(|| d.direction(d.touched(i).1));
        hints.extend(g.iter().map(|x| if x.is_left() { sign } else { None }));
        events.extend(g);
        for (p, at) in patterns.iter().filter(|(_, at)| at.event == i) {
            let after = &slices[i + 1];
            let Some(&branch) = after.get(at.strand.wrapping_sub(1)) else {
                return Err(SatelliteError::BadSplicePoint { event: at.event, strand: at.strand });
            };
            let word = if d.direction(branch) > 0 { (*p).clone() } else { p.reversed() };
            let shift = (at.strand - 1) * k;
            events.extend(word.events().iter().map(|x| x.shifted(shift)));
            hints.extend(std::iter::repeat(None).take(word.events().len()));
        }
    }
    for (_, at) in patterns {
        if at.event >= d.len() {
            return Err(SatelliteError::BadSplicePoint { event: at.event, strand: at.strand });
        }
    }
    Ok(FrontDiagram::from_hints(events, &hints)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMeta {
    pub strands: usize,
    pub events: usize,
    /// Component count predicted from the pattern's wiring.
    pub predicted_components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatelliteResult {
    pub diagram: FrontDiagram,
    pub companion_invariants: ClassicalInvariants,
    pub pattern_meta: PatternMeta,
}

pub fn satellite(companion: &FrontDiagram, pattern: &PatternFront) -> Result<SatelliteResult, SatelliteError> {
    satellite_at(companion, &[(pattern, SplicePoint::FIRST)])
}

/// Satellite with several patterns on the same k-copy. The predicted
/// component count composes the wirings in companion order.
pub fn satellite_at(companion: &FrontDiagram, patterns: &[(&PatternFront, SplicePoint)]) -> Result<SatelliteResult, SatelliteError> {
    let nc = companion.component_count();
    if nc != 1 {
        return Err(SatelliteError::CompanionNotKnot(nc));
    }
    let k = patterns.first().map_or(1, |(p, _)| p.strands());
    let diagram = splice_copy(companion, k, patterns)?;
    let predicted = if patterns.len() == 1 {
        patterns[0].0.wiring().closure_components()
    } else {
        let word: Vec<Event> = patterns.iter().flat_map(|(p, _)| p.events().iter().copied()).collect();
        PatternFront::new(k, word).map_or(0, |p| p.wiring().closure_components())
    };
    Ok(SatelliteResult {
        companion_invariants: classical_invariants(companion),
        pattern_meta: PatternMeta {
            strands: k,
            events: patterns.iter().map(|(p, _)| p.events().len()).sum(),
            predicted_components: predicted,
        },
        diagram,
    })
}

/// Direct zigzag stabilization on the upper branch of the first left cusp.
/// `sign` is the resulting change in rotation number.
pub fn stabilize(d: &FrontDiagram, sign: i8) -> Result<FrontDiagram, FrontError> {
    if d.is_empty() {
        return Ok(d.clone());
    }
    let rot = classical_invariants(d).rot;
    for z in [[Event::left(2), Event::right(1)], [Event::left(1), Event::right(2)]] {
        let s = d.splice(1, 1, &z)?;
        if classical_invariants(&s).rot == rot + sign as i64 {
            return Ok(s);
        }
    }
    unreachable!("the two zigzags shift rot by opposite amounts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;
    use crate::rulings::count_rulings;

    fn unknot() -> FrontDiagram {
        FrontDiagram::positive(word("L1 R1")).unwrap()
    }

    #[test]
    fn two_copy_of_unknot() {
        let c = k_copy(&unknot(), 2);
        assert_eq!(c.events(), word("L1 L3 X2 X2 R3 R1").as_slice());
        assert_eq!(c.component_count(), 2);
        assert_eq!(c.linking_number(0, 1), -1);
    }

    #[test]
    fn copy_of_one_is_identity() {
        let t = FrontDiagram::positive(word("L1 L3 X2 X2 X2 R1 R1")).unwrap();
        assert_eq!(k_copy(&t, 1), t);
        let id = builtin_pattern("identity", 1).unwrap();
        assert_eq!(satellite(&t, &id).unwrap().diagram, t);
    }

    #[test]
    fn two_copy_of_trefoil() {
        let t = FrontDiagram::positive(word("L1 L3 X2 X2 X2 R1 R1")).unwrap();
        let c = k_copy(&t, 2);
        let inv = classical_invariants(&c);
        assert_eq!(inv.per_component, vec![(1, 0), (1, 0)]);
    }

    #[test]
    fn half_twist_cubed_on_unknot() {
        let p = builtin_pattern("half_twist", 3).unwrap();
        let s = satellite(&unknot(), &p).unwrap();
        assert_eq!(s.diagram.component_count(), 1);
        assert_eq!(s.pattern_meta.predicted_components, 1);
        let inv = classical_invariants(&s.diagram);
        assert_eq!((inv.tb, inv.rot), (-1, 0));
        assert_eq!(count_rulings(&s.diagram), 1);
    }

    #[test]
    fn stab_core_matches_zigzag() {
        for sign in [1i8, -1] {
            let p = builtin_pattern("stab_core", sign as i64).unwrap();
            let s = satellite(&unknot(), &p).unwrap().diagram;
            let z = stabilize(&unknot(), sign).unwrap();
            let (a, b) = (classical_invariants(&s), classical_invariants(&z));
            assert_eq!((a.tb, a.rot), (b.tb, b.rot));
            assert_eq!((a.tb, a.rot), (-2, sign as i64));
        }
    }

    #[test]
    fn wiring() {
        let w = builtin_pattern("whitehead", 0).unwrap();
        assert_eq!(w.wiring().partner, vec![1, 0, 3, 2]);
        assert_eq!(w.wiring().closure_components(), 1);
        let h = builtin_pattern("half_twist", 2).unwrap();
        assert_eq!(h.wiring().closure_components(), 2);
        assert_eq!(builtin_pattern("half_twist", 0).unwrap(), builtin_pattern("identity", 2).unwrap());
        assert!(matches!(pattern_by_name("spiral(2)"), Err(PatternError::UnknownPattern(_))));
        assert_eq!(pattern_by_name("stab_core(-)").unwrap(), builtin_pattern("stab_core", -1).unwrap());
    }

    #[test]
    fn rejects_non_knot_companion() {
        let two = FrontDiagram::positive(word("L1 R1 L1 R1")).unwrap();
        let p = builtin_pattern("identity", 2).unwrap();
        assert_eq!(satellite(&two, &p).unwrap_err(), SatelliteError::CompanionNotKnot(2));
    }
}
