//! SVG 1.1 rendering of fronts, ruling overlays and trace filmstrips.
//!
//! Event `i` occupies the column `[x_i, x_i + COL]`; strand position `p`
//! sits at height `TOP + p * ROW`. Cusps are drawn as quadratic arcs with a
//! horizontal tangent at the cusp point. Coordinates are printed with one
//! decimal so output is byte-stable.

use std::fmt::Write;

use crate::cobordism::{CobordismTrace, DecomposableMove, TraceStep};
use crate::front::{EventKind, FrontDiagram};
use crate::rulings::NormalRuling;

const COL: f64 = 30.0;
const ROW: f64 = 20.0;
const LEFT: f64 = 20.0;
const TOP: f64 = 10.0;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    /// Color strands by ruling disk and mark switches.
    pub ruling: Option<NormalRuling>,
    pub title: Option<String>,
}

fn y(p: usize) -> f64 {
    TOP + p as f64 * ROW
}

fn x(i: usize) -> f64 {
    LEFT + i as f64 * COL
}

/// Disk id carried by each strand position in every slice.
fn disk_ids(d: &FrontDiagram, r: &NormalRuling) -> Vec<Vec<usize>> {
    let mut ids: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut out = vec![ids.clone()];
    for (i, e) in d.events().iter().enumerate() {
        let l = e.level;
        match e.kind {
            EventKind::LeftCusp => {
                ids.insert(l - 1, next);
                ids.insert(l - 1, next);
                next += 1;
            }
            EventKind::RightCusp => {
                ids.drain(l - 1..=l);
            }
            EventKind::Crossing => {
                if r.switches.binary_search(&i).is_err() {
                    ids.swap(l - 1, l);
                }
            }
        }
        out.push(ids.clone());
    }
    out
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn path(&mut self, dy: f64, d: &str, color: &str) {
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" transform="translate(0,{dy:.1})" fill="none" stroke="{color}" stroke-width="1.5"/>"#
        );
    }

    fn line(x0: f64, y0: f64, x1: f64, y1: f64) -> String {
        if (y0 - y1).abs() < 1e-9 {
            format!("M{x0:.1},{y0:.1} L{x1:.1},{y1:.1}")
        } else {
            let m = (x0 + x1) / 2.0;
            format!("M{x0:.1},{y0:.1} C{m:.1},{y0:.1} {m:.1},{y1:.1} {x1:.1},{y1:.1}")
        }
    }

    fn cusp(cx: f64, cy: f64, ex: f64, ey: f64) -> String {
        let qx = (cx + ex) / 2.0;
        format!("M{cx:.1},{cy:.1} Q{qx:.1},{ey:.1} {ex:.1},{ey:.1}")
    }
}

fn draw(canvas: &mut Canvas, d: &FrontDiagram, ruling: Option<&NormalRuling>, dy: f64) {
    let ids = ruling.map(|r| disk_ids(d, r));
    let color = |j: usize, p: usize| -> &'static str {
        match &ids {
            Some(ids) => PALETTE[ids[j][p] % PALETTE.len()],
            None => "#000000",
        }
    };
    for (i, e) in d.events().iter().enumerate() {
        let m = d.strands_before(i);
        let l = e.level;
        let (x0, x1) = (x(i), x(i) + COL);
        match e.kind {
            EventKind::LeftCusp => {
                for p in 0..m {
                    let q = if p + 1 >= l { p + 2 } else { p };
                    canvas.path(dy, &Canvas::line(x0, y(p), x1, y(q)), color(i, p));
                }
                let cy = (y(l - 1) + y(l)) / 2.0;
                canvas.path(dy, &Canvas::cusp(x0 + COL / 2.0, cy, x1, y(l - 1)), color(i + 1, l - 1));
                canvas.path(dy, &Canvas::cusp(x0 + COL / 2.0, cy, x1, y(l)), color(i + 1, l));
            }
            EventKind::RightCusp => {
                for p in 0..m {
                    if p + 1 == l || p == l {
                        continue;
                    }
                    let q = if p > l { p - 2 } else { p };
                    canvas.path(dy, &Canvas::line(x0, y(p), x1, y(q)), color(i, p));
                }
                let cy = (y(l - 1) + y(l)) / 2.0;
                canvas.path(dy, &Canvas::cusp(x0 + COL / 2.0, cy, x0, y(l - 1)), color(i, l - 1));
                canvas.path(dy, &Canvas::cusp(x0 + COL / 2.0, cy, x0, y(l)), color(i, l));
            }
            EventKind::Crossing => {
                for p in 0..m {
                    let q = if p + 1 == l {
                        l
                    } else if p == l {
                        l - 1
                    } else {
                        p
                    };
                    canvas.path(dy, &Canvas::line(x0, y(p), x1, y(q)), color(i, p));
                }
                if ruling.is_some_and(|r| r.switches.binary_search(&i).is_ok()) {
                    let (cx, cy) = (x0 + COL / 2.0, (y(l - 1) + y(l)) / 2.0);
                    let _ = writeln!(
                        canvas.body,
                        r##"<circle cx="{cx:.1}" cy="{:.1}" r="3.0" fill="none" stroke="#000000"/>"##,
                        cy + dy
                    );
                }
            }
        }
    }
}

fn height(d: &FrontDiagram) -> f64 {
    y(d.max_strands().max(1)) + TOP
}

fn wrap(width: f64, height: f64, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">\n\
         {body}</svg>\n"
    )
}

fn label(canvas: &mut Canvas, text: &str, dy: f64) {
    let _ = writeln!(
        canvas.body,
        r#"<text x="{LEFT:.1}" y="{:.1}" font-family="monospace" font-size="10">{}</text>"#,
        dy + 8.0,
        text.replace('&', "&amp;").replace('<', "&lt;")
    );
}

pub fn render_svg(d: &FrontDiagram, opts: &RenderOptions) -> String {
    let mut canvas = Canvas { body: String::new() };
    let mut dy = 0.0;
    if let Some(t) = &opts.title {
        label(&mut canvas, t, 0.0);
        dy = 12.0;
    }
    draw(&mut canvas, d, opts.ruling.as_ref(), dy);
    let width = x(d.len()) + LEFT;
    wrap(width, height(d) + dy, &canvas.body)
}

/// Panels of a filmstrip read from the top down: the top diagram, then
/// the diagram left after each pinch or death.
pub fn filmstrip_panels(t: &CobordismTrace) -> Result<Vec<(String, FrontDiagram)>, String> {
    let diagrams = t.replay()?;
    let mut out = vec![("top".to_string(), t.top.clone())];
    for k in (0..t.steps.len()).rev() {
        if let TraceStep::Move(m) = &t.steps[k].step {
            // named as read downward
            let name = match m {
                DecomposableMove::Surgery { site } => format!("pinch {site}"),
                DecomposableMove::Birth { .. } => "death".to_string(),
                DecomposableMove::Pinch { site } => format!("surgery {site}"),
                DecomposableMove::Death { component } => format!("birth {component}"),
            };
            out.push((name, diagrams[k].clone()));
        }
    }
    Ok(out)
}

pub fn render_filmstrip(t: &CobordismTrace) -> Result<String, String> {
    let panels = filmstrip_panels(t)?;
    let mut canvas = Canvas { body: String::new() };
    let mut dy = 0.0;
    let mut width: f64 = 0.0;
    for (name, d) in &panels {
        label(&mut canvas, name, dy);
        draw(&mut canvas, d, None, dy + 12.0);
        dy += height(d) + 16.0;
        width = width.max(x(d.len()) + LEFT);
    }
    Ok(wrap(width.max(120.0), dy, &canvas.body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::word;
    use crate::rulings::enumerate_rulings;

    #[test]
    fn unknot_one_pair() {
        let d = FrontDiagram::positive(word("L1 R1")).unwrap();
        let r = enumerate_rulings(&d).remove(0);
        let svg = render_svg(&d, &RenderOptions { ruling: Some(r), title: None });
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(PALETTE[0]));
        assert!(!svg.contains(PALETTE[1]));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn trefoil_ruling_overlay() {
        let d = FrontDiagram::positive(word("L1 L3 X2 X2 X2 R1 R1")).unwrap();
        let rs = enumerate_rulings(&d);
        let r = rs[1].clone();
        let n = r.switches.len();
        let svg = render_svg(&d, &RenderOptions { ruling: Some(r), title: Some("trefoil".into()) });
        assert!(svg.contains(PALETTE[0]) && svg.contains(PALETTE[1]) && !svg.contains(PALETTE[2]));
        assert_eq!(svg.matches("<circle").count(), n);
        assert_eq!(svg, render_svg(&d, &RenderOptions { ruling: Some(rs[1].clone()), title: Some("trefoil".into()) }));
    }
}
