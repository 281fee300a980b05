//! Free simplification and commute normal forms.
//!
//! Simplification removes R1 fishes, pulls back R2 pairs and kills
//! isolated unknots, gathering each pattern through plain commutes. None
//! of these steps can make a filling harder to find, so the search applies
//! them eagerly without charging its isotopy budget.

use sha2::{Digest, Sha256};

use super::moves::{isolate, Site};
use crate::front::{Event, EventKind, FrontDiagram};
use crate::isotopy::{above, apply_rewrite, commute_pair, Rewrite};

/// A step taken while reading a cobordism from the top down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DownStep {
    Iso(Rewrite),
    Pinch(Site),
    /// Removes the adjacent pair at `site`, owned by `component`.
    Death { component: usize, site: Site },
}

/// Moves the event at `from` left to `to` through plain commutes.
fn bubble_left(word: &mut [Event], from: usize, to: usize, swaps: &mut Vec<usize>) -> bool {
    let mut t = from;
    let mark = swaps.len();
    let saved: Vec<Event> = word[to..=from].to_vec();
    while t > to {
        match commute_pair(word[t - 1], word[t]) {
            Some((a, b)) => {
                word[t - 1] = a;
                word[t] = b;
                swaps.push(t - 1);
                t -= 1;
            }
            None => {
                word[to..=from].copy_from_slice(&saved);
                swaps.truncate(mark);
                return false;
            }
        }
    }
    true
}

/// Reduction templates anchored at a left cusp `L(q)`: the two events
/// that must follow it.
fn templates(q: usize) -> Vec<[Event; 2]> {
    let mut out = Vec::new();
    if q >= 2 {
        out.push([Event::cross(q - 1), Event::right(q)]);
        out.push([Event::cross(q - 1), Event::cross(q)]);
    }
    out.push([Event::cross(q + 1), Event::right(q)]);
    out.push([Event::cross(q + 1), Event::cross(q)]);
    out
}

/// Finds a left-anchored fish or R2 group, returning the commute swap
/// indices and the anchor position.
fn gather_left(word: &[Event]) -> Option<(Vec<usize>, usize)> {
    let n = word.len();
    for a in 0..n {
        if !word[a].is_left() {
            continue;
        }
        for tpl in templates(word[a].level) {
            for t1 in a + 1..n {
                let mut w = word.to_vec();
                let mut swaps = Vec::new();
                if !bubble_left(&mut w, t1, a + 1, &mut swaps) || w[a + 1] != tpl[0] {
                    continue;
                }
                for t2 in a + 2..n {
                    let mut w2 = w.clone();
                    let mut s2 = swaps.clone();
                    if bubble_left(&mut w2, t2, a + 2, &mut s2) && w2[a + 2] == tpl[1] {
                        return Some((s2, a));
                    }
                }
            }
        }
    }
    None
}

fn reduction_at(d: &FrontDiagram, a: usize) -> Rewrite {
    if d.events()[a + 2].is_right() {
        Rewrite::R1Remove { index: a }
    } else {
        Rewrite::R2Pull { index: a }
    }
}

/// Applies a sequence of rewrites, recording them.
fn run(d: &FrontDiagram, rs: &[Rewrite], steps: &mut Vec<DownStep>) -> Option<FrontDiagram> {
    let mut cur = d.clone();
    for &r in rs {
        cur = apply_rewrite(&cur, r).ok()?;
        steps.push(DownStep::Iso(r));
    }
    Some(cur)
}

/// One reducing move (with its gathering commutes), if any is found.
fn reduce_once(d: &FrontDiagram) -> Option<(FrontDiagram, Vec<DownStep>)> {
    let n = d.len();
    if let Some((swaps, a)) = gather_left(d.events()) {
        let rs: Vec<Rewrite> = swaps.iter().map(|&i| Rewrite::Commute { index: i, split: None }).collect();
        let mut steps = Vec::new();
        let mid = run(d, &rs, &mut steps)?;
        let r = reduction_at(&mid, a);
        let out = run(&mid, &[r], &mut steps)?;
        return Some((out, steps));
    }
    // right-anchored groups are left-anchored in the mirror image
    let mirror: Vec<Event> = d.events().iter().rev().map(Event::mirrored).collect();
    if let Some((swaps, a)) = gather_left(&mirror) {
        let rs: Vec<Rewrite> = swaps.iter().map(|&i| Rewrite::Commute { index: n - 2 - i, split: None }).collect();
        let mut steps = Vec::new();
        let mid = run(d, &rs, &mut steps)?;
        let start = n - 3 - a;
        let r = if mid.events()[start].is_left() {
            Rewrite::R1Remove { index: start }
        } else {
            Rewrite::R2Pull { index: start }
        };
        let out = run(&mid, &[r], &mut steps)?;
        return Some((out, steps));
    }
    None
}

fn death_once(d: &FrontDiagram) -> Option<(FrontDiagram, Vec<DownStep>)> {
    for c in 0..d.component_count() {
        if let Ok((rs, site)) = isolate(d, c) {
            let mut steps = Vec::new();
            let mid = run(d, &rs, &mut steps)?;
            let out = mid.splice(site.index, site.index + 2, &[]).ok()?;
            steps.push(DownStep::Death { component: c, site });
            return Some((out, steps));
        }
    }
    None
}

/// Applies deaths and reducing moves until none is left.
pub(crate) fn simplify(d: &FrontDiagram) -> (FrontDiagram, Vec<DownStep>) {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    loop {
        if let Some((next, s)) = death_once(&cur).or_else(|| reduce_once(&cur)) {
            cur = next;
            steps.extend(s);
        } else {
            return (cur, steps);
        }
    }
}

/// Foata-style layers: each event sits one layer above the latest event
/// occupying any position it reads.
fn layers(word: &[Event]) -> Vec<u32> {
    let mut pos: Vec<u32> = vec![0];
    let mut out = Vec::with_capacity(word.len());
    for e in word {
        let l = e.level;
        let layer = match e.kind {
            EventKind::LeftCusp => {
                let g = 2 * l - 2;
                let old = pos[g];
                let layer = old + 1;
                pos.splice(g..=g, [old, layer, layer, layer, old]);
                layer
            }
            EventKind::Crossing => {
                let r = 2 * l - 1..=2 * l + 1;
                let layer = 1 + pos[r.clone()].iter().copied().max().unwrap_or(0);
                pos[r].iter_mut().for_each(|p| *p = layer);
                layer
            }
            EventKind::RightCusp => {
                let layer = 1 + pos[2 * l - 1..=2 * l + 1].iter().copied().max().unwrap_or(0);
                let merged = layer.max(pos[2 * l - 2]).max(pos[2 * l + 2]);
                pos.splice(2 * l - 2..=2 * l + 2, [merged]);
                layer
            }
        };
        out.push(layer);
    }
    out
}

/// Commute normal form: events sorted by layer, then top to bottom.
/// Orientation hints travel with their events.
pub fn commute_normal_form(d: &FrontDiagram) -> FrontDiagram {
    let mut word = d.events().to_vec();
    let mut hints = d.hints();
    let mut lay = layers(&word);
    let n = word.len();
    for _ in 0..n * n + 1 {
        let mut changed = false;
        for j in 0..n.saturating_sub(1) {
            let (e1, e2) = (word[j], word[j + 1]);
            let swap = lay[j + 1] < lay[j] || (lay[j + 1] == lay[j] && above(e1, e2));
            if !swap {
                continue;
            }
            if let Some((a, b)) = commute_pair(e1, e2) {
                word[j] = a;
                word[j + 1] = b;
                hints.swap(j, j + 1);
                lay.swap(j, j + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    FrontDiagram::from_hints(word, &hints).expect("commutes preserve validity")
}

/// Hash of the commute normal form, orientations included.
pub fn canonical_key(d: &FrontDiagram) -> [u8; 32] {
    let c = commute_normal_form(d);
    let mut h = Sha256::new();
    for e in c.events() {
        h.update([e.kind as u8, e.level as u8]);
    }
    h.update([0xff]);
    for o in c.orientations() {
        h.update([o.sign() as u8]);
    }
    h.finalize().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;
    use crate::isotopy::random_shuffle;

    fn d(s: &str) -> FrontDiagram {
        FrontDiagram::positive(word(s)).unwrap()
    }

    #[test]
    fn simplify_kills_unlinks() {
        for w in ["L1 R1", "L1 R1 L1 R1", "L1 L3 R1 R1", "L1 L2 X1 R2 R1", "L1 L3 X2 X1 R2 R1"] {
            let (out, _) = simplify(&d(w));
            assert!(out.is_empty(), "{w}");
        }
    }

    #[test]
    fn simplify_leaves_knots() {
        let (out, _) = simplify(&d("L1 L3 X2 X2 X2 R1 R1"));
        assert_eq!(out.len(), 7);
        let (out, _) = simplify(&d("L1 L3 R2 R1"));
        assert!(!out.is_empty());
    }

    #[test]
    fn simplify_steps_replay() {
        let u = random_shuffle(&d("L1 R1"), 60, 3);
        let (out, steps) = simplify(&u);
        let mut cur = u.clone();
        for s in steps {
            cur = match s {
                DownStep::Iso(r) => apply_rewrite(&cur, r).unwrap(),
                DownStep::Death { site, .. } => cur.splice(site.index, site.index + 2, &[]).unwrap(),
                DownStep::Pinch(_) => unreachable!(),
            };
        }
        assert_eq!(cur, out);
    }

    #[test]
    fn normal_form_identifies_commuted_words() {
        let a = d("L1 R1 L1 L3 R3 R1");
        let b = apply_rewrite(&a, Rewrite::Commute { index: 2, split: None }).unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&a), canonical_key(&d("L1 L3 X2 X2 X2 R1 R1")));
    }
}
