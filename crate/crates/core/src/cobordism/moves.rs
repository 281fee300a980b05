use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::front::{Event, FrontDiagram, FrontError, Orientation};
use crate::isotopy::{commute_pair, Rewrite};

/// A position in the word (`index` events precede it) and a strand level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub index: usize,
    pub level: usize,
}

impl Site {
    pub fn new(index: usize, level: usize) -> Self {
        Site { index, level }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.index, self.level)
    }
}

impl FromStr for Site {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, k) = s.split_once('@').ok_or_else(|| format!("site `{s}` is not of the form i@k"))?;
        let index = i.parse().map_err(|_| format!("bad index in site `{s}`"))?;
        let level = k.parse().map_err(|_| format!("bad level in site `{s}`"))?;
        if level == 0 {
            return Err(format!("level must be positive in site `{s}`"));
        }
        Ok(Site { index, level })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinchMode {
    Any,
    OrientableOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecomposableMove {
    Birth { site: Site, orientation: Orientation },
    Death { component: usize },
    Pinch { site: Site },
    Surgery { site: Site },
}

impl DecomposableMove {
    /// Contribution to the Euler characteristic.
    pub fn chi(&self) -> i64 {
        match self {
            DecomposableMove::Birth { .. } | DecomposableMove::Death { .. } => 1,
            DecomposableMove::Pinch { .. } | DecomposableMove::Surgery { .. } => -1,
        }
    }
}

impl fmt::Display for DecomposableMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposableMove::Birth { site, orientation: Orientation::Positive } => write!(f, "birth {site}"),
            DecomposableMove::Birth { site, orientation: Orientation::Negative } => write!(f, "birth {site} -"),
            DecomposableMove::Death { component } => write!(f, "death {component}"),
            DecomposableMove::Pinch { site } => write!(f, "pinch {site}"),
            DecomposableMove::Surgery { site } => write!(f, "surgery {site}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("no pair of adjacent strands at site {0}")]
    NotAdjacent(Site),
    #[error("strands at site {0} are oriented the same way")]
    OrientationClash(Site),
    #[error("no right-cusp/left-cusp pair at site {0}")]
    NotCuspPair(Site),
    #[error("component {0} is not an isolated standard unknot")]
    NotIsolatedUnknot(usize),
    #[error("no birth possible at site {0}")]
    InvalidSite(Site),
    #[error(transparent)]
    Front(#[from] FrontError),
}

fn check_adjacent(d: &FrontDiagram, site: Site) -> Result<(), CobordismError> {
    if site.index > d.len() || site.level == 0 || site.level + 1 > d.strands_before(site.index) {
        return Err(CobordismError::NotAdjacent(site));
    }
    Ok(())
}

/// Whether the two strands at a pinch site run in opposite directions.
pub fn pinch_is_orientable(d: &FrontDiagram, site: Site) -> Result<bool, CobordismError> {
    check_adjacent(d, site)?;
    let s = d.slice(site.index);
    Ok(d.direction(s[site.level - 1]) != d.direction(s[site.level]))
}

/// Replaces two adjacent strands by a right-cusp/left-cusp pair.
pub fn pinch(d: &FrontDiagram, site: Site, mode: PinchMode) -> Result<FrontDiagram, CobordismError> {
    if !pinch_is_orientable(d, site)? && mode == PinchMode::OrientableOnly {
        return Err(CobordismError::OrientationClash(site));
    }
    let k = site.level;
    // the new left cusp's lower branch continues the lower strand
    let lower = d.direction(d.slice(site.index)[k]);
    Ok(d.splice_hinted(site.index, site.index, &[Event::right(k), Event::left(k)], &[None, Some(lower)])?)
}

fn check_cusp_pair(d: &FrontDiagram, site: Site) -> Result<(), CobordismError> {
    let ev = d.events();
    let i = site.index;
    if i + 1 >= ev.len() || ev[i] != Event::right(site.level) || ev[i + 1] != Event::left(site.level) {
        return Err(CobordismError::NotCuspPair(site));
    }
    Ok(())
}

/// Whether a surgery reconnects strands consistently with orientations.
pub fn surgery_is_orientable(d: &FrontDiagram, site: Site) -> Result<bool, CobordismError> {
    check_cusp_pair(d, site)?;
    let (upper, _) = d.touched(site.index);
    let (top, _) = d.touched(site.index + 1);
    Ok(d.direction(upper) == d.direction(top))
}

/// Replaces the pair `R(k) L(k)` at events `index, index+1` by two strands.
pub fn surgery(d: &FrontDiagram, site: Site) -> Result<FrontDiagram, CobordismError> {
    check_cusp_pair(d, site)?;
    Ok(d.splice(site.index, site.index + 2, &[])?)
}

/// Inserts a standard unknot `L(k) R(k)` before event `index`.
pub fn birth(d: &FrontDiagram, site: Site, orientation: Orientation) -> Result<FrontDiagram, CobordismError> {
    if site.index > d.len() || site.level == 0 || site.level > d.strands_before(site.index) + 1 {
        return Err(CobordismError::InvalidSite(site));
    }
    let mut hints = d.hints();
    let mut events = d.events().to_vec();
    events.splice(site.index..site.index, [Event::left(site.level), Event::right(site.level)]);
    hints.splice(site.index..site.index, [Some(orientation.sign()), None]);
    Ok(FrontDiagram::from_hints(events, &hints)?)
}

/// Commutes that bring component `c`'s right cusp next to its left cusp,
/// and the site of the resulting adjacent pair.
pub fn isolate(d: &FrontDiagram, c: usize) -> Result<(Vec<Rewrite>, Site), CobordismError> {
    if c >= d.component_count() || d.component_arcs(c).len() != 1 {
        return Err(CobordismError::NotIsolatedUnknot(c));
    }
    let ev = d.events();
    let a = d.arc_event(d.component_arcs(c)[0]);
    let mut b = None;
    for (i, e) in ev.iter().enumerate() {
        if e.is_left() {
            continue;
        }
        let (u, w) = d.touched(i);
        let touches = d.branch_component(u) == c || d.branch_component(w) == c;
        if touches && e.is_crossing() {
            return Err(CobordismError::NotIsolatedUnknot(c));
        }
        if touches && e.is_right() {
            b = Some(i);
        }
    }
    let mut b = b.ok_or(CobordismError::NotIsolatedUnknot(c))?;
    let mut word = ev.to_vec();
    let mut steps = Vec::new();
    while b > a + 1 {
        let (x, y) = commute_pair(word[b - 1], word[b]).ok_or(CobordismError::NotIsolatedUnknot(c))?;
        word[b - 1] = x;
        word[b] = y;
        steps.push(Rewrite::Commute { index: b - 1, split: None });
        b -= 1;
    }
    Ok((steps, Site::new(a, word[a].level)))
}

/// Removes an isolated standard unknot component.
pub fn death(d: &FrontDiagram, c: usize) -> Result<FrontDiagram, CobordismError> {
    let (steps, site) = isolate(d, c)?;
    let mut cur = d.clone();
    for r in steps {
        cur = crate::isotopy::apply_rewrite(&cur, r).expect("commutes computed by isolate");
    }
    Ok(cur.splice(site.index, site.index + 2, &[])?)
}

pub fn apply_move(d: &FrontDiagram, mv: &DecomposableMove) -> Result<FrontDiagram, CobordismError> {
    match *mv {
        DecomposableMove::Birth { site, orientation } => birth(d, site, orientation),
        DecomposableMove::Death { component } => death(d, component),
        DecomposableMove::Pinch { site } => pinch(d, site, PinchMode::Any),
        DecomposableMove::Surgery { site } => surgery(d, site),
    }
}
