//! Surgery presentations: a max-tb unlink plus surgery sites on it.

use petgraph::algo::{connected_components, is_cyclic_undirected};
use petgraph::graph::UnGraph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::moves::{pinch, surgery, CobordismError, PinchMode, Site};
use super::trace::{CobordismTrace, TraceStep};
use super::DecomposableMove;
use crate::front::{classical_invariants, Event, FrontDiagram};
use crate::isotopy::random_shuffle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentation graph is not a tree")]
    NotATree,
    #[error("arc {0} is not a right-cusp/left-cusp pair of the base")]
    ArcSiteInvalid(usize),
    #[error("base component {0} is not a max-tb unknot")]
    NotMaxTbUnlink(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    base: FrontDiagram,
    arcs: Vec<Site>,
}

/// Incidence graph: one vertex per base component, one edge per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationGraph {
    pub vertices: usize,
    /// `(arc, u, v)` for arcs joining distinct components.
    pub edges: Vec<(usize, usize, usize)>,
    /// Arcs with both ends on one component.
    pub self_arcs: Vec<usize>,
}

impl PresentationGraph {
    fn graph(&self) -> UnGraph<(), usize> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<_> = (0..self.vertices).map(|_| g.add_node(())).collect();
        for &(a, u, v) in &self.edges {
            g.add_edge(nodes[u], nodes[v], a);
        }
        g
    }

    pub fn is_tree(&self) -> bool {
        if !self.self_arcs.is_empty() || self.edges.len() + 1 != self.vertices {
            return false;
        }
        let g = self.graph();
        connected_components(&g) == 1 && !is_cyclic_undirected(&g)
    }
}

impl SurgeryPresentation {
    /// Checks that each arc is an `R(k) L(k)` pair of the base, that arcs
    /// do not share events, and that every base component has tb = -1 and
    /// rot = 0 with zero pairwise linking. These are necessary conditions
    /// for a max-tb unlink; callers supply bases that are isotopic to one.
    pub fn new(base: FrontDiagram, arcs: Vec<Site>) -> Result<Self, PresentationError> {
        let inv = classical_invariants(&base);
        for (c, &(tb, rot)) in inv.per_component.iter().enumerate() {
            if tb != -1 || rot != 0 {
                return Err(PresentationError::NotMaxTbUnlink(c));
            }
            for c2 in c + 1..base.component_count() {
                if base.linking_number(c, c2) != 0 {
                    return Err(PresentationError::NotMaxTbUnlink(c2));
                }
            }
        }
        let ev = base.events();
        for (a, s) in arcs.iter().enumerate() {
            let ok = s.index + 1 < ev.len()
                && ev[s.index] == Event::right(s.level)
                && ev[s.index + 1] == Event::left(s.level)
                && arcs[..a].iter().all(|t| t.index.abs_diff(s.index) >= 2);
            if !ok {
                return Err(PresentationError::ArcSiteInvalid(a));
            }
        }
        Ok(SurgeryPresentation { base, arcs })
    }

    pub fn base(&self) -> &FrontDiagram {
        &self.base
    }

    pub fn arcs(&self) -> &[Site] {
        &self.arcs
    }

    /// Site of arc `a` once the arcs in `done` have been surgered.
    fn site_after(&self, a: usize, done: &[usize]) -> Site {
        let s = self.arcs[a];
        let before = done.iter().filter(|&&b| self.arcs[b].index < s.index).count();
        Site::new(s.index - 2 * before, s.level)
    }

    /// Random connected presentation with `n` arcs on an `(n+1)`-component
    /// unlink. The base is a shuffled row of standard unknots; arcs are
    /// chosen among its `R(k) L(k)` pairs so that they span a tree.
    pub fn random_tree(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let row: Vec<Event> = (0..=n).flat_map(|_| [Event::left(1), Event::right(1)]).collect();
        let row = FrontDiagram::positive(row).expect("row of unknots");
        for attempt in 0u64.. {
            let base = if attempt == 0 { row.clone() } else { random_shuffle(&row, 40, seed ^ (attempt << 32)) };
            let ev = base.events();
            let mut sites: Vec<Site> = (0..ev.len().saturating_sub(1))
                .filter(|&i| ev[i].is_right() && ev[i + 1] == Event::left(ev[i].level))
                .map(|i| Site::new(i, ev[i].level))
                .collect();
            sites.shuffle(&mut rng);
            let mut parent: Vec<usize> = (0..base.component_count()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut arcs: Vec<Site> = Vec::new();
            for s in sites {
                if arcs.iter().any(|t| t.index.abs_diff(s.index) < 2) {
                    continue;
                }
                let u = base.event_component(s.index);
                let v = base.event_component(s.index + 1);
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    arcs.push(s);
                }
            }
            if arcs.len() == n {
                if let Ok(p) = SurgeryPresentation::new(base, arcs) {
                    return p;
                }
            }
        }
        unreachable!()
    }

    /// Reads a trace as births and isotopies followed only by surgeries.
    /// Returns a presentation when every surgery pair is already adjacent
    /// in the diagram reached before the first surgery, i.e. when the
    /// arcs commute syntactically.
    pub fn from_trace(t: &CobordismTrace) -> Option<Self> {
        let diagrams = t.replay().ok()?;
        let first = t
            .steps
            .iter()
            .position(|e| matches!(e.step, TraceStep::Move(DecomposableMove::Surgery { .. })))
            .unwrap_or(t.steps.len());
        let base = diagrams[first].clone();
        let mut arcs = Vec::new();
        let mut removed: Vec<usize> = Vec::new();
        for e in &t.steps[first..] {
            let TraceStep::Move(DecomposableMove::Surgery { site }) = e.step else { return None };
            // map back to base positions, skipping events already removed
            let mut idx = site.index;
            let mut sorted = removed.clone();
            sorted.sort_unstable();
            for r in sorted {
                if r <= idx {
                    idx += 1;
                }
            }
            if removed.contains(&(idx + 1)) {
                return None;
            }
            removed.push(idx);
            removed.push(idx + 1);
            arcs.push(Site::new(idx, site.level));
        }
        SurgeryPresentation::new(base, arcs).ok()
    }
}

pub fn presentation_graph(p: &SurgeryPresentation) -> PresentationGraph {
    let mut edges = Vec::new();
    let mut self_arcs = Vec::new();
    for (a, s) in p.arcs.iter().enumerate() {
        let u = p.base.event_component(s.index);
        let v = p.base.event_component(s.index + 1);
        if u == v {
            self_arcs.push(a);
        } else {
            edges.push((a, u.min(v), u.max(v)));
        }
    }
    PresentationGraph { vertices: p.base.component_count(), edges, self_arcs }
}

/// Performs the surgeries in list order.
pub fn apply_presentation(p: &SurgeryPresentation) -> Result<FrontDiagram, CobordismError> {
    let mut cur = p.base.clone();
    let mut done = Vec::new();
    for a in 0..p.arcs.len() {
        cur = surgery(&cur, p.site_after(a, &done))?;
        done.push(a);
    }
    Ok(cur)
}

/// Arcs in an order that builds the tree by attaching leaves, so pinching
/// them in reverse splits off one leaf component at a time.
pub fn leaf_pinch_order(p: &SurgeryPresentation) -> Result<Vec<usize>, PresentationError> {
    let g = presentation_graph(p);
    if !g.is_tree() {
        return Err(PresentationError::NotATree);
    }
    let mut degree = vec![0usize; g.vertices];
    for &(_, u, v) in &g.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut alive: Vec<bool> = vec![true; g.edges.len()];
    let mut peel = Vec::new();
    while peel.len() < g.edges.len() {
        let k = (0..g.edges.len())
            .find(|&k| alive[k] && (degree[g.edges[k].1] == 1 || degree[g.edges[k].2] == 1))
            .expect("a finite tree has a leaf edge");
        let (a, u, v) = g.edges[k];
        alive[k] = false;
        degree[u] -= 1;
        degree[v] -= 1;
        peel.push(a);
    }
    peel.reverse();
    Ok(peel)
}

/// Pinches a surgered presentation back along `order` reversed, returning
/// every intermediate diagram starting from the surgered one.
pub fn pinch_back(p: &SurgeryPresentation, order: &[usize]) -> Result<Vec<FrontDiagram>, CobordismError> {
    let mut cur = apply_presentation(p)?;
    let mut present: Vec<usize> = (0..p.arcs.len()).collect();
    let mut out = vec![cur.clone()];
    for &a in order.iter().rev() {
        present.retain(|&b| b != a);
        let others: Vec<usize> = present.clone();
        let s = p.site_after(a, &others);
        cur = pinch(&cur, s, PinchMode::Any)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;

    fn unlink(n: usize) -> FrontDiagram {
        FrontDiagram::positive((0..n).flat_map(|_| [Event::left(1), Event::right(1)]).collect()).unwrap()
    }

    #[test]
    fn single_arc() {
        let p = SurgeryPresentation::new(unlink(2), vec![Site::new(1, 1)]).unwrap();
        let k = apply_presentation(&p).unwrap();
        assert_eq!(k.events(), word("L1 R1").as_slice());
        let g = presentation_graph(&p);
        assert!(g.is_tree());
        assert_eq!(leaf_pinch_order(&p).unwrap(), vec![0]);
    }

    #[test]
    fn path_of_three() {
        let p = SurgeryPresentation::new(unlink(3), vec![Site::new(3, 1), Site::new(1, 1)]).unwrap();
        assert_eq!(apply_presentation(&p).unwrap().component_count(), 1);
        let order = leaf_pinch_order(&p).unwrap();
        let back = pinch_back(&p, &order).unwrap();
        assert_eq!(back.last().unwrap().events(), p.base().events());
    }

    #[test]
    fn self_arc_is_not_a_tree() {
        // a fish on one unknot gives a self-joining cusp pair
        let base = FrontDiagram::positive(word("L1 L3 R1 L1 R1 R1")).unwrap_or_else(|_| unlink(1));
        if let Ok(p) = SurgeryPresentation::new(base.clone(), vec![Site::new(2, 1)]) {
            let g = presentation_graph(&p);
            if !g.self_arcs.is_empty() {
                assert_eq!(leaf_pinch_order(&p), Err(PresentationError::NotATree));
            }
        }
        let bad = SurgeryPresentation::new(unlink(2), vec![Site::new(0, 1)]);
        assert_eq!(bad, Err(PresentationError::ArcSiteInvalid(0)));
    }
}
