//! Bounded search for decomposable fillings.
//!
//! The search reads the cobordism from the top down: it pinches, applies
//! free simplification (see `simplify`) and, when the isotopy budget
//! allows, spends budgeted rewrites (R2 pushes, R3 moves and the two ways
//! of pulling apart `R(k) L(k)`). Pinch depth is deepened iteratively, and
//! within each depth so is the per-level budget, so the first trace found
//! uses the fewest pinches and then the smallest budget. States are
//! memoized on the hash of their commute normal form.

use std::collections::HashSet;

use super::moves::{pinch, pinch_is_orientable, DecomposableMove, PinchMode, Site};
use super::simplify::{canonical_key, simplify, DownStep};
use super::trace::{diagram_hash, CobordismTrace, TraceEntry, TraceStep};
use crate::front::{Event, FrontDiagram};
use crate::isotopy::{apply_rewrite, commute_pair, inverse, rewrites_of_kind, Rewrite, RewriteKind};
use crate::rulings::{has_ruling, NormalRuling};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_pinches: usize,
    /// Budgeted rewrites allowed between consecutive pinches.
    pub isotopy_budget: usize,
    /// Restrict to pinches between oppositely oriented strands.
    pub orientable_only: bool,
    /// Required Euler characteristic of the filling, if any.
    pub target_chi: Option<i64>,
}

impl SearchConfig {
    pub fn new(max_pinches: usize, isotopy_budget: usize) -> Self {
        SearchConfig { max_pinches, isotopy_budget, orientable_only: true, target_chi: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub memo_hits: usize,
    pub pruned: usize,
}

type Path = Vec<(DownStep, FrontDiagram)>;

/// Pinch sites up to commutation: a site is kept only when the event just
/// before it touches the two strands, so each pair of adjacent strand
/// segments is offered once.
pub fn pinch_sites(d: &FrontDiagram) -> Vec<Site> {
    let ev = d.events();
    let mut out = Vec::new();
    for index in 1..ev.len() {
        let m = d.strands_before(index);
        for level in 1..m {
            if commute_pair(ev[index - 1], Event::right(level)).is_none() {
                out.push(Site::new(index, level));
            }
        }
    }
    out
}

/// Whether the link and each of its components admit a normal ruling.
fn rulings_exist(d: &FrontDiagram) -> bool {
    if !has_ruling(d) {
        return false;
    }
    let nc = d.component_count();
    nc <= 1 || (0..nc).all(|c| has_ruling(&d.sublink(&[c])))
}

fn budgeted_rewrites(d: &FrontDiagram) -> Vec<Rewrite> {
    let mut out: Vec<Rewrite> = rewrites_of_kind(d, RewriteKind::Commute)
        .into_iter()
        .filter(|r| matches!(r, Rewrite::Commute { split: Some(_), .. }))
        .collect();
    out.extend(rewrites_of_kind(d, RewriteKind::R3Triple));
    out.extend(rewrites_of_kind(d, RewriteKind::R2Push));
    out
}

struct Searcher<'a> {
    cfg: &'a SearchConfig,
    budget: usize,
    failed: HashSet<([u8; 32], usize, usize)>,
    stats: SearchStats,
}

impl Searcher<'_> {
    fn dfs(&mut self, start: FrontDiagram, pinches: usize, budget: usize, path: &mut Path) -> bool {
        self.stats.nodes += 1;
        let mark = path.len();
        let (d, steps) = simplify(&start);
        record_steps(path, &start, &steps);
        if d.is_empty() {
            let chi_ok = match self.cfg.target_chi {
                None => true,
                Some(chi) => path_chi(path) == chi,
            };
            if chi_ok {
                return true;
            }
            path.truncate(mark);
            return false;
        }
        if !rulings_exist(&d) {
            self.stats.pruned += 1;
            path.truncate(mark);
            return false;
        }
        let key = (canonical_key(&d), pinches, budget);
        if self.failed.contains(&key) {
            self.stats.memo_hits += 1;
            path.truncate(mark);
            return false;
        }
        if pinches > 0 {
            for site in pinch_sites(&d) {
                if self.cfg.orientable_only && pinch_is_orientable(&d, site) != Ok(true) {
                    continue;
                }
                let Ok(next) = pinch(&d, site, PinchMode::Any) else { continue };
                path.push((DownStep::Pinch(site), d.clone()));
                if self.dfs(next, pinches - 1, self.budget, path) {
                    return true;
                }
                path.pop();
            }
        }
        if budget > 0 {
            for r in budgeted_rewrites(&d) {
                let next = apply_rewrite(&d, r).expect("enumerated rewrite");
                path.push((DownStep::Iso(r), d.clone()));
                if self.dfs(next, pinches, budget - 1, path) {
                    return true;
                }
                path.pop();
            }
        }
        self.failed.insert(key);
        path.truncate(mark);
        false
    }
}

fn path_chi(path: &Path) -> i64 {
    path.iter()
        .map(|(s, _)| match s {
            DownStep::Pinch(_) => -1,
            DownStep::Death { .. } => 1,
            DownStep::Iso(_) => 0,
        })
        .sum()
}

/// Searches for a decomposable filling of `d`, returning the trace with the
/// fewest pinches found within the bounds.
pub fn search_decomposable_filling(d: &FrontDiagram, max_pinches: usize, isotopy_budget: usize) -> Option<CobordismTrace> {
    search_with(d, &SearchConfig::new(max_pinches, isotopy_budget)).0
}

pub fn search_with(d: &FrontDiagram, cfg: &SearchConfig) -> (Option<CobordismTrace>, SearchStats) {
    let mut total = SearchStats::default();
    for pinches in 0..=cfg.max_pinches {
        for budget in 0..=cfg.isotopy_budget {
            let mut s = Searcher { cfg, budget, failed: HashSet::new(), stats: SearchStats::default() };
            let mut path = Path::new();
            let found = s.dfs(d.clone(), pinches, budget, &mut path);
            total.nodes += s.stats.nodes;
            total.memo_hits += s.stats.memo_hits;
            total.pruned += s.stats.pruned;
            if found {
                return (Some(build_trace(d, &path)), total);
            }
        }
    }
    (None, total)
}

/// Searches pinch sequences whose sites join strands paired by the ruling,
/// carrying the ruling down through each pinch.
pub fn ruling_fillability(d: &FrontDiagram, r: &NormalRuling, max_pinches: usize) -> Option<CobordismTrace> {
    for pinches in 0..=max_pinches {
        let mut path = Path::new();
        let mut failed = HashSet::new();
        if ruled_dfs(d, &r.switches, pinches, &mut path, &mut failed) {
            return Some(build_trace(d, &path));
        }
    }
    None
}

fn ruled_dfs(
    d: &FrontDiagram,
    switches: &[usize],
    pinches: usize,
    path: &mut Path,
    failed: &mut HashSet<(Vec<Event>, Vec<usize>, usize)>,
) -> bool {
    let mark = path.len();
    let (s, steps) = simplify(d);
    if s.is_empty() {
        record_steps(path, d, &steps);
        return true;
    }
    if pinches == 0 {
        return false;
    }
    let key = (d.events().to_vec(), switches.to_vec(), pinches);
    if failed.contains(&key) {
        return false;
    }
    let Ok(ruling) = NormalRuling::from_switches(d, switches) else { return false };
    for site in pinch_sites(d) {
        if !ruling.paired_at(site.index, site.level) {
            continue;
        }
        let Ok(next) = pinch(d, site, PinchMode::Any) else { continue };
        let shifted: Vec<usize> = switches.iter().map(|&i| if i >= site.index { i + 2 } else { i }).collect();
        path.push((DownStep::Pinch(site), d.clone()));
        if ruled_dfs(&next, &shifted, pinches - 1, path, failed) {
            return true;
        }
        path.truncate(mark);
    }
    failed.insert(key);
    false
}

/// Appends simplification steps with the diagram each one starts from.
pub(crate) fn record_steps(path: &mut Path, start: &FrontDiagram, steps: &[DownStep]) {
    let mut cur = start.clone();
    for &s in steps {
        let next = match s {
            DownStep::Iso(r) => apply_rewrite(&cur, r).expect("recorded rewrite"),
            DownStep::Death { site, .. } => cur.splice(site.index, site.index + 2, &[]).expect("isolated pair"),
            DownStep::Pinch(site) => pinch(&cur, site, PinchMode::Any).expect("recorded pinch"),
        };
        path.push((s, cur));
        cur = next;
    }
}

/// Turns a top-down path into a bottom-up trace from the empty diagram.
pub(crate) fn build_trace(top: &FrontDiagram, path: &Path) -> CobordismTrace {
    let mut steps = Vec::new();
    let mut orientable = true;
    for k in (0..path.len()).rev() {
        let (step, before) = &path[k];
        let upward = match *step {
            DownStep::Iso(r) => TraceStep::Isotopy(inverse(before, r).expect("recorded rewrite")),
            DownStep::Pinch(site) => {
                orientable &= pinch_is_orientable(before, site) == Ok(true);
                TraceStep::Move(DecomposableMove::Surgery { site })
            }
            DownStep::Death { component, site } => TraceStep::Move(DecomposableMove::Birth {
                site,
                orientation: before.orientations()[component],
            }),
        };
        steps.push(TraceEntry { step: upward, hash: Some(diagram_hash(before)) });
    }
    let mut t = CobordismTrace { bottom: FrontDiagram::empty(), steps, top: top.clone(), chi: 0, orientable };
    t.chi = t.counts().chi();
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::check_trace;
    use crate::front::word;
    use crate::rulings::enumerate_rulings;

    fn front(s: &str) -> FrontDiagram {
        FrontDiagram::positive(word(s)).unwrap()
    }

    #[test]
    fn unlinks_need_no_pinches() {
        for s in ["L1 R1", "L1 R1 L1 R1", "L1 L3 R3 R1 L1 R1"] {
            let d = front(s);
            let t = search_decomposable_filling(&d, 0, 0).unwrap();
            let c = t.counts();
            assert_eq!((c.births, c.surgeries), (d.component_count(), 0));
            assert!(check_trace(&t).valid);
        }
    }

    #[test]
    fn trefoil_is_a_genus_one_filling() {
        let d = front("L1 L3 X2 X2 X2 R1 R1");
        assert!(search_decomposable_filling(&d, 1, 2).is_none());
        let t = search_decomposable_filling(&d, 2, 0).unwrap();
        assert_eq!(t.chi, -1);
        assert!(t.orientable);
        assert!(check_trace(&t).valid);
        let mut cfg = SearchConfig::new(3, 0);
        cfg.target_chi = Some(1);
        assert!(search_with(&d, &cfg).0.is_none());
    }

    #[test]
    fn stabilized_fronts_are_pruned() {
        let (t, stats) = search_with(&front("L1 L1 R2 R1"), &SearchConfig::new(2, 1));
        assert!(t.is_none());
        assert!(stats.pruned > 0);
    }

    #[test]
    fn hopf_link_fills_only_when_linking_is_positive() {
        use crate::front::Orientation;
        let ev = word("L1 L3 X2 X2 R1 R1");
        let pos = FrontDiagram::new(ev.clone(), vec![Orientation::Positive, Orientation::Negative]).unwrap();
        assert_eq!(pos.linking_number(0, 1), 1);
        let t = search_decomposable_filling(&pos, 1, 0).unwrap();
        assert_eq!(t.chi, 0);
        assert!(check_trace(&t).valid);
        let neg = FrontDiagram::positive(ev).unwrap();
        assert_eq!(neg.linking_number(0, 1), -1);
        assert!(search_decomposable_filling(&neg, 2, 1).is_none());
    }

    #[test]
    fn ruling_fillability_of_small_fronts() {
        let u = front("L1 R1");
        let r = enumerate_rulings(&u).remove(0);
        assert_eq!(ruling_fillability(&u, &r, 0).unwrap().counts().surgeries, 0);
        let t = front("L1 L3 X2 X2 X2 R1 R1");
        let found: Vec<bool> = enumerate_rulings(&t).iter().map(|r| ruling_fillability(&t, r, 3).is_some()).collect();
        assert_eq!(found, [false, true, false]);
    }
}
