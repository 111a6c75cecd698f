//! Weight-scatter figures: the window sets, the support of the resolution
//! of `𝒦`, and the generation closure with and without `𝒦`. Each figure is
//! plain data plus a minimal hand-written SVG.

use std::fmt::Write;

use serde::Serialize;

use crate::bott::{k_resolution, WeymanComplex};
use crate::closure::{standard_closure, ClosureState, Item};
use crate::git::Side;
use crate::windows::{WindowSet, DEFAULT_BOX};
use crate::{Result, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Panel {
    pub title: String,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Figure {
    pub name: String,
    pub title: String,
    pub panels: Vec<Panel>,
}

const CELL: i64 = 22;
const HALF: i64 = 7;
const MARGIN: i64 = 30;

fn series(label: &str, color: &str, points: impl IntoIterator<Item = Weight>) -> Series {
    let mut points: Vec<Weight> = points.into_iter().collect();
    points.sort();
    points.dedup();
    Series { label: label.into(), color: color.into(), points }
}

impl Figure {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Panels side by side; `(a,b)` is drawn at `x = a`, `y = b` upwards.
    pub fn to_svg(&self) -> String {
        let side = 2 * HALF * CELL;
        let width = self.panels.len() as i64 * (side + 2 * MARGIN);
        let height = side + 2 * MARGIN + 20 * self.panels.iter().map(|p| p.series.len() as i64).max().unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#);
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        for (i, panel) in self.panels.iter().enumerate() {
            let ox = i as i64 * (side + 2 * MARGIN) + MARGIN;
            let oy = MARGIN;
            let cx = ox + HALF * CELL;
            let cy = oy + HALF * CELL;
            let _ = writeln!(s, r#"<g id="panel{i}">"#);
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, cx, oy - 10, escape(&panel.title));
            for k in -HALF..=HALF {
                let (x, y) = (cx + k * CELL, cy - k * CELL);
                let stroke = if k == 0 { "#888" } else { "#eee" };
                let _ = writeln!(s, r#"<line x1="{x}" y1="{oy}" x2="{x}" y2="{}" stroke="{stroke}"/>"#, oy + side);
                let _ = writeln!(s, r#"<line x1="{ox}" y1="{y}" x2="{}" y2="{y}" stroke="{stroke}"/>"#, ox + side);
            }
            for (j, ser) in panel.series.iter().enumerate() {
                let r = 6 - 2 * j.min(2) as i64;
                for p in ser.points.iter().filter(|p| p.a.abs() <= HALF && p.b.abs() <= HALF) {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{}" cy="{}" r="{r}" fill="{}"><title>{p}</title></circle>"#,
                        cx + p.a * CELL,
                        cy - p.b * CELL,
                        ser.color
                    );
                }
                let ly = oy + side + 20 + 20 * j as i64;
                let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="5" fill="{}"/>"#, ox + 6, ly - 4, ser.color);
                let _ = writeln!(s, r#"<text x="{}" y="{ly}">{} ({})</text>"#, ox + 16, escape(&ser.label), ser.points.len());
            }
            let _ = writeln!(s, "</g>");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `∇₋` and `∇₊`; the one weight separating them is drawn on its own.
pub fn window_figure() -> Figure {
    let minus = WindowSet::standard(Side::Minus).enumerate(DEFAULT_BOX);
    let plus = WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX);
    let extra: Vec<Weight> = minus.difference(&plus).copied().collect();
    Figure {
        name: "windows".into(),
        title: "Window sets ∇₋ and ∇₊".into(),
        panels: vec![
            Panel { title: "∇₋".into(), series: vec![series("∇₋", "#1f77b4", minus.iter().copied())] },
            Panel {
                title: "∇₊".into(),
                series: vec![series("∇₊", "#1f77b4", plus.iter().copied()), series("∇₋ ∖ ∇₊", "#d62728", extra)],
            },
        ],
    }
}

/// Support of a Weyman complex over `∇₋`, first term highlighted.
pub fn complex_figure(name: &str, title: &str, cx: &WeymanComplex) -> Figure {
    let minus = WindowSet::standard(Side::Minus).enumerate(DEFAULT_BOX);
    let first: Vec<Weight> = cx.term(cx.min_degree()).support();
    let last: Vec<Weight> = cx.term(cx.max_degree()).support();
    Figure {
        name: name.into(),
        title: title.into(),
        panels: vec![Panel {
            title: title.into(),
            series: vec![
                series("∇₋", "#c7c7c7", minus),
                series("terms", "#2ca02c", cx.support()),
                series("first term", "#1f77b4", first),
                series("last term", "#d62728", last),
            ],
        }],
    }
}

pub fn k_figure() -> Figure {
    complex_figure("k-resolution", "Free resolution of 𝒦", &k_resolution())
}

fn closure_panel(title: &str, st: &ClosureState, highlight: &[Weight]) -> Panel {
    let initial: Vec<Weight> =
        st.initial.iter().filter_map(|i| if let Item::Bundle(w) = i { Some(*w) } else { None }).collect();
    let derived: Vec<Weight> = st.weights().into_iter().filter(|w| !initial.contains(w)).collect();
    let hl: Vec<Weight> = highlight.iter().copied().filter(|w| st.contains(w)).collect();
    Panel {
        title: title.into(),
        series: vec![series("initial", "#1f77b4", initial), series("generated", "#ff7f0e", derived), series("marked", "#d62728", hl)],
    }
}

/// The closure of `∇₊` under the `λ₁` sequences, then with `𝒦` added.
pub fn closure_figure() -> Result<Figure> {
    let without = standard_closure(false, DEFAULT_BOX)?;
    let with = standard_closure(true, DEFAULT_BOX)?;
    let marked = [Weight::new(0, -3), Weight::new(-2, -4), Weight::new(-6, -6)];
    Ok(Figure {
        name: "closure".into(),
        title: "Generation closure without and with 𝒦".into(),
        panels: vec![closure_panel("without 𝒦", &without, &marked), closure_panel("with 𝒦", &with, &marked)],
    })
}

pub fn all_figures() -> Result<Vec<Figure>> {
    Ok(vec![window_figure(), k_figure(), closure_figure()?])
}
