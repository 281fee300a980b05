//! Event-word model of generic front projections.
//!
//! A front is read left to right as a word of events acting on a vertical
//! stack of strands numbered from the top, starting at 1. `L(i)` opens a
//! new pair of strands at positions `i, i+1`, `R(i)` closes the strands at
//! `i, i+1` and `X(i)` swaps them.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub level: usize,
}

impl Event {
    pub const fn left(level: usize) -> Self {
        Event { kind: EventKind::LeftCusp, level }
    }

    pub const fn right(level: usize) -> Self {
        Event { kind: EventKind::RightCusp, level }
    }

    pub const fn cross(level: usize) -> Self {
        Event { kind: EventKind::Crossing, level }
    }

    pub fn is_left(&self) -> bool {
        self.kind == EventKind::LeftCusp
    }

    pub fn is_right(&self) -> bool {
        self.kind == EventKind::RightCusp
    }

    pub fn is_crossing(&self) -> bool {
        self.kind == EventKind::Crossing
    }

    /// Change in strand count across the event.
    pub fn delta(&self) -> isize {
        match self.kind {
            EventKind::LeftCusp => 2,
            EventKind::RightCusp => -2,
            EventKind::Crossing => 0,
        }
    }

    /// The same event seen in the horizontally mirrored front.
    pub fn mirrored(&self) -> Self {
        let kind = match self.kind {
            EventKind::LeftCusp => EventKind::RightCusp,
            EventKind::RightCusp => EventKind::LeftCusp,
            EventKind::Crossing => EventKind::Crossing,
        };
        Event { kind, level: self.level }
    }

    pub fn shifted(&self, by: usize) -> Self {
        Event { kind: self.kind, level: self.level + by }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            EventKind::LeftCusp => 'L',
            EventKind::RightCusp => 'R',
            EventKind::Crossing => 'X',
        };
        write!(f, "{}{}", c, self.level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn from_sign(s: i8) -> Self {
        if s >= 0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    pub fn reversed(self) -> Self {
        Orientation::from_sign(-self.sign())
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Positive => '+',
            Orientation::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("event {index}: level {level} out of bounds for {strands} strands")]
    LevelOutOfBounds { index: usize, level: usize, strands: usize },
    #[error("word ends with {0} open strands")]
    NonzeroFinalStrands(usize),
    #[error("component {0} has no orientation")]
    OrientationMissing(usize),
    #[error("{given} orientation symbols for {components} components")]
    ExtraOrientation { given: usize, components: usize },
}

/// One of the two branches leaving a left cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub arc: usize,
    pub top: bool,
}

#[derive(Clone, Debug)]
struct Analysis {
    counts: Vec<usize>,
    touched: Vec<(Branch, Branch)>,
    arc_event: Vec<usize>,
    arc_component: Vec<usize>,
    // s(arc): horizontal direction of the bottom branch, +1 = rightward
    arc_sign: Vec<i8>,
    component_arcs: Vec<Vec<usize>>,
    // (arc a, arc b, f) with s(b) = f * s(a)
    links: Vec<Vec<(usize, i8)>>,
}

fn analyze(events: &[Event]) -> Result<Analysis, FrontError> {
    let mut counts = Vec::with_capacity(events.len() + 1);
    let mut touched = Vec::with_capacity(events.len());
    let mut stack: Vec<Branch> = Vec::new();
    let mut arc_event = Vec::new();
    let mut links: Vec<Vec<(usize, i8)>> = Vec::new();
    for (index, e) in events.iter().enumerate() {
        let m = stack.len();
        counts.push(m);
        let l = e.level;
        let ok = match e.kind {
            EventKind::LeftCusp => l >= 1 && l <= m + 1,
            _ => l >= 1 && l < m,
        };
        if !ok {
            return Err(FrontError::LevelOutOfBounds { index, level: l, strands: m });
        }
        match e.kind {
            EventKind::LeftCusp => {
                let arc = arc_event.len();
                arc_event.push(index);
                links.push(Vec::new());
                let t = Branch { arc, top: true };
                let b = Branch { arc, top: false };
                stack.insert(l - 1, b);
                stack.insert(l - 1, t);
                touched.push((t, b));
            }
            EventKind::RightCusp => {
                let u = stack[l - 1];
                let w = stack[l];
                touched.push((u, w));
                stack.drain(l - 1..=l);
                // directions of the meeting branches must be opposite
                let tu: i8 = if u.top { -1 } else { 1 };
                let tw: i8 = if w.top { -1 } else { 1 };
                let f = -tu * tw;
                if u.arc != w.arc {
                    links[u.arc].push((w.arc, f));
                    links[w.arc].push((u.arc, f));
                }
            }
            EventKind::Crossing => {
                touched.push((stack[l - 1], stack[l]));
                stack.swap(l - 1, l);
            }
        }
    }
    counts.push(stack.len());
    if !stack.is_empty() {
        return Err(FrontError::NonzeroFinalStrands(stack.len()));
    }
    let n_arcs = arc_event.len();
    let mut arc_component = vec![usize::MAX; n_arcs];
    let mut component_arcs = Vec::new();
    for start in 0..n_arcs {
        if arc_component[start] != usize::MAX {
            continue;
        }
        let c = component_arcs.len();
        let mut members = vec![start];
        arc_component[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(b, _) in &links[a] {
                if arc_component[b] == usize::MAX {
                    arc_component[b] = c;
                    members.push(b);
                    queue.push_back(b);
                }
            }
        }
        members.sort_unstable();
        component_arcs.push(members);
    }
    Ok(Analysis {
        counts,
        touched,
        arc_event,
        arc_component,
        arc_sign: vec![1; n_arcs],
        component_arcs,
        links,
    })
}

impl Analysis {
    /// Propagates arc signs through each component from a seed arc.
    fn assign(&mut self, seeds: &[(usize, i8)]) {
        let mut sign = vec![0i8; self.arc_event.len()];
        let mut queue = VecDeque::new();
        for &(arc, s) in seeds {
            sign[arc] = s;
            queue.push_back(arc);
        }
        while let Some(a) = queue.pop_front() {
            for &(b, f) in &self.links[a] {
                if sign[b] == 0 {
                    sign[b] = sign[a] * f;
                    queue.push_back(b);
                }
            }
        }
        self.arc_sign = sign;
    }
}

/// A validated front diagram. Immutable once built.
#[derive(Clone, Debug)]
pub struct FrontDiagram {
    events: Vec<Event>,
    orientations: Vec<Orientation>,
    info: Analysis,
}

impl PartialEq for FrontDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events && self.orientations == other.orientations
    }
}

impl Eq for FrontDiagram {}

impl std::hash::Hash for FrontDiagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.events.hash(state);
        self.orientations.hash(state);
    }
}

/// Validates an event word together with one orientation per component.
pub fn validate(events: Vec<Event>, orientations: Vec<Orientation>) -> Result<FrontDiagram, FrontError> {
    FrontDiagram::new(events, orientations)
}

impl FrontDiagram {
    pub fn new(events: Vec<Event>, orientations: Vec<Orientation>) -> Result<Self, FrontError> {
        let mut info = analyze(&events)?;
        let nc = info.component_arcs.len();
        if orientations.len() < nc {
            return Err(FrontError::OrientationMissing(orientations.len()));
        }
        if orientations.len() > nc {
            return Err(FrontError::ExtraOrientation { given: orientations.len(), components: nc });
        }
        let seeds: Vec<(usize, i8)> = info
            .component_arcs
            .iter()
            .zip(&orientations)
            .map(|(arcs, o)| (arcs[0], o.sign()))
            .collect();
        info.assign(&seeds);
        Ok(FrontDiagram { events, orientations, info })
    }

    /// Builds a diagram with every component oriented `+`.
    pub fn positive(events: Vec<Event>) -> Result<Self, FrontError> {
        let nc = analyze(&events)?.component_arcs.len();
        Self::new(events, vec![Orientation::Positive; nc])
    }

    pub fn empty() -> Self {
        FrontDiagram::new(Vec::new(), Vec::new()).expect("empty word is valid")
    }

    /// Builds a diagram whose orientation is inherited from per-event arc
    /// signs. Each component takes its direction from the first hinted arc
    /// it contains; components without hints are oriented `+`.
    pub(crate) fn from_hints(events: Vec<Event>, hints: &[Option<i8>]) -> Result<Self, FrontError> {
        let mut info = analyze(&events)?;
        let mut seeds = Vec::new();
        for arcs in &info.component_arcs {
            let seed = arcs
                .iter()
                .find_map(|&a| hints.get(info.arc_event[a]).copied().flatten().map(|s| (a, s)))
                .unwrap_or((arcs[0], 1));
            seeds.push(seed);
        }
        info.assign(&seeds);
        let orientations = info
            .component_arcs
            .iter()
            .map(|arcs| Orientation::from_sign(info.arc_sign[arcs[0]]))
            .collect();
        Ok(FrontDiagram { events, orientations, info })
    }

    /// Per-event arc signs: `Some(s)` at each left cusp.
    pub(crate) fn hints(&self) -> Vec<Option<i8>> {
        let mut h = vec![None; self.events.len()];
        for (a, &e) in self.info.arc_event.iter().enumerate() {
            h[e] = Some(self.info.arc_sign[a]);
        }
        h
    }

    /// Replaces `events[start..end]` and re-derives orientations from the
    /// arcs that survive outside the window.
    pub fn splice(&self, start: usize, end: usize, replacement: &[Event]) -> Result<Self, FrontError> {
        self.splice_hinted(start, end, replacement, &vec![None; replacement.len()])
    }

    /// As [`splice`](Self::splice), with orientation hints for the
    /// replacement's left cusps.
    pub(crate) fn splice_hinted(
        &self,
        start: usize,
        end: usize,
        replacement: &[Event],
        replacement_hints: &[Option<i8>],
    ) -> Result<Self, FrontError> {
        let old = self.hints();
        let mut events = Vec::with_capacity(self.events.len() + replacement.len());
        let mut hints = Vec::with_capacity(events.capacity());
        events.extend_from_slice(&self.events[..start]);
        hints.extend_from_slice(&old[..start]);
        events.extend_from_slice(replacement);
        hints.extend_from_slice(replacement_hints);
        events.extend_from_slice(&self.events[end..]);
        hints.extend_from_slice(&old[end..]);
        FrontDiagram::from_hints(events, &hints)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Strand count just before event `i` (`i == len()` gives the final 0).
    pub fn strands_before(&self, i: usize) -> usize {
        self.info.counts[i]
    }

    pub fn max_strands(&self) -> usize {
        self.info.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn component_count(&self) -> usize {
        self.info.component_arcs.len()
    }

    pub fn arc_count(&self) -> usize {
        self.info.arc_event.len()
    }

    /// Event index of the left cusp that created `arc`.
    pub fn arc_event(&self, arc: usize) -> usize {
        self.info.arc_event[arc]
    }

    pub fn arc_component(&self, arc: usize) -> usize {
        self.info.arc_component[arc]
    }

    pub fn component_arcs(&self, c: usize) -> &[usize] {
        &self.info.component_arcs[c]
    }

    /// Branches at positions `level, level+1` involved in event `i`
    /// (after the event for a left cusp, before it otherwise).
    pub fn touched(&self, i: usize) -> (Branch, Branch) {
        self.info.touched[i]
    }

    pub fn branch_component(&self, b: Branch) -> usize {
        self.info.arc_component[b.arc]
    }

    /// Horizontal direction of a branch: +1 rightward, -1 leftward.
    pub fn direction(&self, b: Branch) -> i8 {
        let s = self.info.arc_sign[b.arc];
        if b.top {
            -s
        } else {
            s
        }
    }

    /// Component owning a cusp event, or the upper strand's component for
    /// a crossing.
    pub fn event_component(&self, i: usize) -> usize {
        self.branch_component(self.info.touched[i].0)
    }

    /// Branches present just before event `j`, top to bottom.
    pub fn slice(&self, j: usize) -> Vec<Branch> {
        let mut stack: Vec<Branch> = Vec::new();
        for (i, e) in self.events[..j].iter().enumerate() {
            let l = e.level;
            match e.kind {
                EventKind::LeftCusp => {
                    let (t, b) = self.info.touched[i];
                    stack.insert(l - 1, b);
                    stack.insert(l - 1, t);
                }
                EventKind::RightCusp => {
                    stack.drain(l - 1..=l);
                }
                EventKind::Crossing => stack.swap(l - 1, l),
            }
        }
        stack
    }

    /// Every slice, `slices()[j]` being the strands before event `j`.
    pub fn slices(&self) -> Vec<Vec<Branch>> {
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let mut stack: Vec<Branch> = Vec::new();
        out.push(stack.clone());
        for (i, e) in self.events.iter().enumerate() {
            let l = e.level;
            match e.kind {
                EventKind::LeftCusp => {
                    let (t, b) = self.info.touched[i];
                    stack.insert(l - 1, b);
                    stack.insert(l - 1, t);
                }
                EventKind::RightCusp => {
                    stack.drain(l - 1..=l);
                }
                EventKind::Crossing => stack.swap(l - 1, l),
            }
            out.push(stack.clone());
        }
        out
    }

    /// Sign of the crossing at event `i` (+1 when both strands run the same way).
    pub fn crossing_sign(&self, i: usize) -> i8 {
        let (u, w) = self.info.touched[i];
        if self.direction(u) == self.direction(w) {
            1
        } else {
            -1
        }
    }

    /// Whether the cusp at event `i` is traversed downward.
    pub fn is_down_cusp(&self, i: usize) -> bool {
        let (u, _) = self.info.touched[i];
        match self.events[i].kind {
            EventKind::LeftCusp => self.info.arc_sign[u.arc] > 0,
            EventKind::RightCusp => self.direction(u) > 0,
            EventKind::Crossing => false,
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.events.len())
            .filter(|&i| self.events[i].is_crossing())
            .map(|i| self.crossing_sign(i) as i64)
            .sum()
    }

    pub fn cusp_count(&self) -> usize {
        self.events.iter().filter(|e| !e.is_crossing()).count()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_right()).count()
    }

    /// Linking number between two distinct components.
    pub fn linking_number(&self, a: usize, b: usize) -> i64 {
        let mut twice = 0i64;
        for (i, e) in self.events.iter().enumerate() {
            if !e.is_crossing() {
                continue;
            }
            let (u, w) = self.info.touched[i];
            let (cu, cw) = (self.branch_component(u), self.branch_component(w));
            if (cu == a && cw == b) || (cu == b && cw == a) {
                twice += self.crossing_sign(i) as i64;
            }
        }
        twice / 2
    }

    /// Same diagram with one component's orientation reversed.
    pub fn with_reversed(&self, c: usize) -> Self {
        let mut o = self.orientations.clone();
        o[c] = o[c].reversed();
        FrontDiagram::new(self.events.clone(), o).expect("orientation change keeps validity")
    }

    /// The sublink formed by the given components, with crossings against
    /// other components dropped.
    pub fn sublink(&self, keep: &[usize]) -> Self {
        let kept = |b: Branch| keep.contains(&self.branch_component(b));
        let mut stack: Vec<Branch> = Vec::new();
        let mut events = Vec::new();
        let mut orient_of_arc = Vec::new();
        for (i, e) in self.events.iter().enumerate() {
            let l = e.level;
            let (u, w) = self.info.touched[i];
            let rank = |stack: &[Branch], upto: usize| stack[..upto].iter().filter(|&&b| kept(b)).count();
            match e.kind {
                EventKind::LeftCusp => {
                    if kept(u) {
                        events.push(Event::left(rank(&stack, l - 1) + 1));
                        orient_of_arc.push(Some(self.info.arc_sign[u.arc]));
                    }
                    stack.insert(l - 1, w);
                    stack.insert(l - 1, u);
                }
                EventKind::RightCusp => {
                    if kept(u) {
                        events.push(Event::right(rank(&stack, l - 1) + 1));
                        orient_of_arc.push(None);
                    }
                    stack.drain(l - 1..=l);
                }
                EventKind::Crossing => {
                    if kept(u) && kept(w) {
                        events.push(Event::cross(rank(&stack, l - 1) + 1));
                        orient_of_arc.push(None);
                    }
                    stack.swap(l - 1, l);
                }
            }
        }
        FrontDiagram::from_hints(events, &orient_of_arc).expect("sublink of a valid front is valid")
    }

    /// The horizontally mirrored front, orientations carried along.
    pub fn mirrored(&self) -> Self {
        let events: Vec<Event> = self.events.iter().rev().map(Event::mirrored).collect();
        let n = self.events.len();
        // a right cusp of the original becomes a left cusp whose top branch
        // is the original upper branch, now running the other way
        let mut hints = vec![None; n];
        for (i, e) in self.events.iter().enumerate() {
            if e.is_right() {
                let (u, _) = self.info.touched[i];
                hints[n - 1 - i] = Some(self.direction(u));
            }
        }
        FrontDiagram::from_hints(events, &hints).expect("mirror of a valid front is valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub rot: i64,
    /// (tb, rot) of each component taken on its own.
    pub per_component: Vec<(i64, i64)>,
}

pub fn classical_invariants(d: &FrontDiagram) -> ClassicalInvariants {
    let nc = d.component_count();
    let mut self_writhe = vec![0i64; nc];
    let mut rights = vec![0i64; nc];
    let mut downs = vec![0i64; nc];
    let mut ups = vec![0i64; nc];
    for (i, e) in d.events.iter().enumerate() {
        let c = d.event_component(i);
        match e.kind {
            EventKind::Crossing => {
                let (u, w) = d.touched(i);
                if d.branch_component(u) == d.branch_component(w) {
                    self_writhe[c] += d.crossing_sign(i) as i64;
                }
            }
            _ => {
                if e.is_right() {
                    rights[c] += 1;
                }
                if d.is_down_cusp(i) {
                    downs[c] += 1;
                } else {
                    ups[c] += 1;
                }
            }
        }
    }
    let per_component: Vec<(i64, i64)> = (0..nc)
        .map(|c| (self_writhe[c] - rights[c], (downs[c] - ups[c]) / 2))
        .collect();
    let down: i64 = downs.iter().sum();
    let up: i64 = ups.iter().sum();
    ClassicalInvariants {
        tb: d.writhe() - d.right_cusp_count() as i64,
        rot: (down - up) / 2,
        per_component,
    }
}

/// Components of a diagram as lists of arc indices, ordered by first cusp.
pub fn components(d: &FrontDiagram) -> Vec<Vec<usize>> {
    (0..d.component_count()).map(|c| d.component_arcs(c).to_vec()).collect()
}

/// Shorthand word constructor: `word("L1 L3 X2 R1")`.
pub fn word(s: &str) -> Vec<Event> {
    crate::format::parse_events(s).expect("literal event word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_basics() {
        let d = FrontDiagram::positive(word("L1 R1")).unwrap();
        assert_eq!(d.component_count(), 1);
        let inv = classical_invariants(&d);
        assert_eq!((inv.tb, inv.rot), (-1, 0));
    }

    #[test]
    fn empty_and_unclosed() {
        let d = validate(vec![], vec![]).unwrap();
        assert_eq!(d.component_count(), 0);
        assert_eq!(
            validate(word("L1 X1"), vec![Orientation::Positive]).unwrap_err(),
            FrontError::NonzeroFinalStrands(2)
        );
    }

    #[test]
    fn level_bounds() {
        let err = validate(vec![Event::left(2)], vec![]).unwrap_err();
        assert_eq!(err, FrontError::LevelOutOfBounds { index: 0, level: 2, strands: 0 });
        let err = FrontDiagram::positive(word("L1 X2 R1")).unwrap_err();
        assert!(matches!(err, FrontError::LevelOutOfBounds { index: 1, .. }));
    }

    #[test]
    fn orientation_count_checked() {
        let w = word("L1 R1 L1 R1");
        assert_eq!(
            validate(w.clone(), vec![Orientation::Positive]).unwrap_err(),
            FrontError::OrientationMissing(1)
        );
        assert!(validate(w, vec![Orientation::Positive, Orientation::Negative]).is_ok());
    }

    #[test]
    fn trefoil_invariants() {
        let d = FrontDiagram::positive(word("L1 L3 X2 X2 X2 R1 R1")).unwrap();
        assert_eq!(d.writhe(), 3);
        let inv = classical_invariants(&d);
        assert_eq!((inv.tb, inv.rot), (1, 0));
        let r = d.with_reversed(0);
        assert_eq!(classical_invariants(&r).tb, 1);
    }

    #[test]
    fn stabilized_rotation_flips_with_orientation() {
        let d = FrontDiagram::positive(word("L1 L3 R2 R1")).unwrap();
        let inv = classical_invariants(&d);
        assert_eq!(inv.tb, -2);
        assert_eq!(inv.rot.abs(), 1);
        assert_eq!(classical_invariants(&d.with_reversed(0)).rot, -inv.rot);
    }

    #[test]
    fn two_unknots_unlinked() {
        let d = FrontDiagram::positive(word("L1 R1 L1 R1")).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.linking_number(0, 1), 0);
        let inv = classical_invariants(&d);
        assert_eq!(inv.per_component, vec![(-1, 0), (-1, 0)]);
    }

    #[test]
    fn sublink_and_mirror() {
        let d = FrontDiagram::positive(word("L1 L3 X2 X2 R3 R1")).unwrap();
        assert_eq!(d.component_count(), 2);
        let s = d.sublink(&[1]);
        assert_eq!(s.events(), word("L1 R1").as_slice());
        let m = d.mirrored();
        assert_eq!(classical_invariants(&m).tb, classical_invariants(&d).tb);
        assert_eq!(m.mirrored(), d);
    }
}
