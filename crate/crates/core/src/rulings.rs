//! Normal rulings: enumeration, counting and extension through moves.
//!
//! A ruling state pairs the strands at a generic slice. Left cusps pair
//! their two new strands, right cusps require their strands to be paired,
//! and at a crossing the partners either travel with the strands or, at a
//! switch, stay where they are. A crossing of two paired strands is never
//! allowed: companion paths of one eye only meet at its cusps.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cobordism::{apply_move, DecomposableMove};
use crate::front::{EventKind, FrontDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulingError {
    #[error("crossing strands {0} and {1} are paired")]
    CrossingStrandsPaired(usize, usize),
    #[error("event {0} is not a crossing")]
    NotACrossing(usize),
    #[error("switch at event {0} is not normal")]
    NotNormal(usize),
    #[error("event {0}: cusp strands are not paired")]
    CuspUnpaired(usize),
    #[error("crossing at event {0} joins paired strands")]
    PairedCrossing(usize),
    #[error("ruling does not extend through the move")]
    NoExtension,
    #[error("state is not a fixed-point-free involution")]
    BadState,
}

/// Fixed-point-free involution on strand positions `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RulingState {
    // 0-based partner table
    pair: Vec<u8>,
}

impl RulingState {
    pub fn empty() -> Self {
        RulingState { pair: Vec::new() }
    }

    /// Builds a state from 1-based pairs.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self, RulingError> {
        let mut pair = vec![u8::MAX; m];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > m || b > m {
                return Err(RulingError::BadState);
            }
            if pair[a - 1] != u8::MAX || pair[b - 1] != u8::MAX {
                return Err(RulingError::BadState);
            }
            pair[a - 1] = (b - 1) as u8;
            pair[b - 1] = (a - 1) as u8;
        }
        if pair.contains(&u8::MAX) {
            return Err(RulingError::BadState);
        }
        Ok(RulingState { pair })
    }

    pub fn strands(&self) -> usize {
        self.pair.len()
    }

    /// 1-based partner of 1-based position `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.pair[i - 1] as usize + 1
    }

    /// Pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.pair.len())
            .filter(|&i| (self.pair[i] as usize) > i)
            .map(|i| (i + 1, self.pair[i] as usize + 1))
            .collect()
    }

    fn left(&self, l: usize) -> Self {
        let at = l - 1;
        let mut pair: Vec<u8> = self
            .pair
            .iter()
            .map(|&p| if p as usize >= at { p + 2 } else { p })
            .collect();
        pair.insert(at, at as u8 + 1);
        pair.insert(at + 1, at as u8);
        RulingState { pair }
    }

    fn right(&self, l: usize) -> Option<Self> {
        let at = l - 1;
        if self.pair[at] as usize != at + 1 {
            return None;
        }
        let mut pair = self.pair.clone();
        pair.drain(at..=at + 1);
        for p in pair.iter_mut() {
            if *p as usize > at {
                *p -= 2;
            }
        }
        Some(RulingState { pair })
    }

    fn crossed(&self, l: usize) -> Self {
        let (a, b) = (l - 1, l);
        let mut pair = self.pair.clone();
        pair.swap(a, b);
        for p in pair.iter_mut() {
            if *p as usize == a {
                *p = b as u8;
            } else if *p as usize == b {
                *p = a as u8;
            }
        }
        RulingState { pair }
    }
}

/// Normality of a switch at a crossing of strands `level, level+1`: the
/// two eyes meeting there must be disjoint or nested.
pub fn is_normal_switch(state: &RulingState, level: usize) -> Result<bool, RulingError> {
    let i = level;
    if state.partner(i) == i + 1 {
        return Err(RulingError::CrossingStrandsPaired(i, i + 1));
    }
    let a = state.partner(i);
    let b = state.partner(i + 1);
    let j1 = (a.min(i), a.max(i));
    let j2 = (b.min(i + 1), b.max(i + 1));
    let disjoint = j1.1 < j2.0 || j2.1 < j1.0;
    let nested = (j1.0 >= j2.0 && j1.1 <= j2.1) || (j2.0 >= j1.0 && j2.1 <= j1.1);
    Ok(disjoint || nested)
}

/// Successor states across event `i`: `(state, switched)`.
fn successors(d: &FrontDiagram, i: usize, s: &RulingState) -> Vec<(RulingState, bool)> {
    let e = d.events()[i];
    match e.kind {
        EventKind::LeftCusp => vec![(s.left(e.level), false)],
        EventKind::RightCusp => s.right(e.level).map(|t| vec![(t, false)]).unwrap_or_default(),
        EventKind::Crossing => {
            if s.partner(e.level) == e.level + 1 {
                return Vec::new();
            }
            let mut out = vec![(s.crossed(e.level), false)];
            if is_normal_switch(s, e.level) == Ok(true) {
                out.push((s.clone(), true));
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalRuling {
    /// Switched crossings as ascending event indices.
    pub switches: Vec<usize>,
    /// State before each event, with the final (empty) state last.
    pub states: Vec<RulingState>,
}

impl NormalRuling {
    /// Rebuilds and checks a ruling from its switch set.
    pub fn from_switches(d: &FrontDiagram, switches: &[usize]) -> Result<Self, RulingError> {
        let set: HashSet<usize> = switches.iter().copied().collect();
        for &i in switches {
            if i >= d.len() || !d.events()[i].is_crossing() {
                return Err(RulingError::NotACrossing(i));
            }
        }
        let mut s = RulingState::empty();
        let mut states = Vec::with_capacity(d.len() + 1);
        for (i, e) in d.events().iter().enumerate() {
            states.push(s.clone());
            s = match e.kind {
                EventKind::LeftCusp => s.left(e.level),
                EventKind::RightCusp => s.right(e.level).ok_or(RulingError::CuspUnpaired(i))?,
                EventKind::Crossing => {
                    if set.contains(&i) {
                        if !is_normal_switch(&s, e.level)? {
                            return Err(RulingError::NotNormal(i));
                        }
                        s
                    } else {
                        if s.partner(e.level) == e.level + 1 {
                            return Err(RulingError::PairedCrossing(i));
                        }
                        s.crossed(e.level)
                    }
                }
            };
        }
        states.push(s);
        let mut switches = switches.to_vec();
        switches.sort_unstable();
        switches.dedup();
        Ok(NormalRuling { switches, states })
    }

    /// Whether strands `level, level+1` are paired just before event `j`.
    pub fn paired_at(&self, j: usize, level: usize) -> bool {
        let s = &self.states[j];
        level < s.strands() && s.partner(level) == level + 1
    }
}

/// All normal rulings, sorted lexicographically by switch set.
pub fn enumerate_rulings(d: &FrontDiagram) -> Vec<NormalRuling> {
    let n = d.len();
    // forward reachable states, then keep those that can finish
    let mut layers: Vec<HashSet<RulingState>> = Vec::with_capacity(n + 1);
    layers.push(HashSet::from([RulingState::empty()]));
    for i in 0..n {
        let mut next = HashSet::new();
        for s in &layers[i] {
            for (t, _) in successors(d, i, s) {
                next.insert(t);
            }
        }
        layers.push(next);
    }
    for i in (0..n).rev() {
        let (head, tail) = layers.split_at_mut(i + 1);
        let after = &tail[0];
        head[i].retain(|s| successors(d, i, s).iter().any(|(t, _)| after.contains(t)));
    }
    let mut out = Vec::new();
    if layers[n].is_empty() {
        return out;
    }
    let mut states = Vec::with_capacity(n + 1);
    let mut switches = Vec::new();
    dfs(d, &layers, 0, RulingState::empty(), &mut states, &mut switches, &mut out);
    out.sort_by(|a, b| a.switches.cmp(&b.switches));
    out
}

fn dfs(
    d: &FrontDiagram,
    ok: &[HashSet<RulingState>],
    i: usize,
    s: RulingState,
    states: &mut Vec<RulingState>,
    switches: &mut Vec<usize>,
    out: &mut Vec<NormalRuling>,
) {
    if i == d.len() {
        let mut all = states.clone();
        all.push(s);
        out.push(NormalRuling { switches: switches.clone(), states: all });
        return;
    }
    for (t, switched) in successors(d, i, &s) {
        if !ok[i + 1].contains(&t) {
            continue;
        }
        states.push(s.clone());
        if switched {
            switches.push(i);
        }
        dfs(d, ok, i + 1, t, states, switches, out);
        if switched {
            switches.pop();
        }
        states.pop();
    }
}

/// Number of normal rulings, by dynamic programming over states.
pub fn count_rulings(d: &FrontDiagram) -> u128 {
    let mut cur: HashMap<RulingState, u128> = HashMap::from([(RulingState::empty(), 1)]);
    for i in 0..d.len() {
        let mut next: HashMap<RulingState, u128> = HashMap::new();
        for (s, c) in &cur {
            for (t, _) in successors(d, i, s) {
                *next.entry(t).or_insert(0) += c;
            }
        }
        if next.is_empty() {
            return 0;
        }
        cur = next;
    }
    cur.values().sum()
}

pub fn has_ruling(d: &FrontDiagram) -> bool {
    count_rulings(d) > 0
}

/// Carries a ruling of the lower diagram through a birth or a surgery.
/// Neither move creates or destroys crossings, so the switch set carries
/// over with shifted indices and no other switch set can restrict to `r`.
pub fn extend_ruling_through_move(
    lower: &FrontDiagram,
    r: &NormalRuling,
    mv: &DecomposableMove,
) -> Result<(FrontDiagram, NormalRuling), RulingError> {
    let upper = apply_move(lower, mv).map_err(|_| RulingError::NoExtension)?;
    let switches: Vec<usize> = match *mv {
        DecomposableMove::Birth { site, .. } => {
            r.switches.iter().map(|&i| if i >= site.index { i + 2 } else { i }).collect()
        }
        DecomposableMove::Surgery { site } => {
            r.switches.iter().map(|&i| if i > site.index { i - 2 } else { i }).collect()
        }
        _ => return Err(RulingError::NoExtension),
    };
    let ext = NormalRuling::from_switches(&upper, &switches).map_err(|_| RulingError::NoExtension)?;
    Ok((upper, ext))
}

/// Text listing: one line per ruling, then `count: n`.
pub fn format_rulings(rulings: &[NormalRuling]) -> String {
    let mut s = String::new();
    for (k, r) in rulings.iter().enumerate() {
        let list: Vec<String> = r.switches.iter().map(|i| i.to_string()).collect();
        let body = if list.is_empty() { "-".to_string() } else { list.join(" ") };
        let _ = writeln!(s, "ruling {}: {}", k + 1, body);
    }
    let _ = writeln!(s, "count: {}", rulings.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;

    fn d(s: &str) -> FrontDiagram {
        FrontDiagram::positive(word(s)).unwrap()
    }

    #[test]
    fn normality_examples() {
        let s = RulingState::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(is_normal_switch(&s, 2), Ok(true));
        let s = RulingState::from_pairs(4, &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(is_normal_switch(&s, 2), Err(RulingError::CrossingStrandsPaired(2, 3)));
        let s = RulingState::from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(is_normal_switch(&s, 2), Ok(false));
        assert_eq!(is_normal_switch(&s, 3), Ok(false));
        assert_eq!(is_normal_switch(&s, 1), Ok(false));
        let s = RulingState::from_pairs(4, &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(is_normal_switch(&s, 3), Ok(true));
    }

    #[test]
    fn basic_counts() {
        let u = enumerate_rulings(&d("L1 R1"));
        assert_eq!(u.len(), 1);
        assert!(u[0].switches.is_empty());
        let t = d("L1 L3 X2 X2 X2 R1 R1");
        assert_eq!(enumerate_rulings(&t).len(), 3);
        assert_eq!(count_rulings(&t), 3);
        assert_eq!(count_rulings(&d("L1 L3 R2 R1")), 0);
        assert_eq!(count_rulings(&FrontDiagram::empty()), 1);
    }

    #[test]
    fn enumerated_rulings_revalidate() {
        let t = d("L1 L3 L5 X2 X4 X3 X3 X2 X4 X3 X3 X2 X4 R1 R1 R1");
        let rs = enumerate_rulings(&t);
        assert_eq!(rs.len() as u128, count_rulings(&t));
        for r in &rs {
            assert_eq!(&NormalRuling::from_switches(&t, &r.switches).unwrap(), r);
        }
    }

    #[test]
    fn output_format() {
        let rs = enumerate_rulings(&d("L1 R1"));
        assert_eq!(format_rulings(&rs), "ruling 1: -\ncount: 1\n");
    }
}
