//! Schematic SVG drawings.
//!
//! Every curve is drawn through the rank slots it occupies along the sweep:
//! crossing `t` of the full sequence sits at angle `2*pi*t/T` measured
//! clockwise from 12 o'clock (radial) or at abscissa `t` (cylindrical), and
//! the two curves it swaps meet halfway between their slots. The drawing is
//! topologically faithful, not geometric.

use std::f64::consts::TAU;
use std::fmt::Write;

use thiserror::Error;

use crate::validate::sweep::SweepState;
use crate::validate::ValidDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Radial,
    Cylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    Polyline,
    Curve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutOptions {
    pub layout: Layout,
    /// Width and height of the square canvas.
    pub size: f64,
    pub margin: f64,
    /// Distance between adjacent rank slots; derived from the canvas if unset.
    pub spacing: Option<f64>,
    pub smoothing: Smoothing,
    pub shade_by_cardinality: bool,
    pub show_crossings: bool,
    pub stroke_width: f64,
    /// Stroke colors, cycled over the curves.
    pub palette: Vec<String>,
}

const DEFAULT_PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324", "#469990", "#808000",
    "#000075", "#a9a9a9",
];

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions {
            layout: Layout::Radial,
            size: 800.0,
            margin: 20.0,
            spacing: None,
            smoothing: Smoothing::Polyline,
            shade_by_cardinality: false,
            show_crossings: false,
            stroke_width: 1.5,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("{n} rank slots of spacing {spacing} do not fit the available extent {extent}")]
    DoesNotFit { n: usize, spacing: f64, extent: f64 },
    #[error("canvas size and margin leave no room to draw")]
    NoRoom,
    #[error("palette is empty")]
    EmptyPalette,
}

/// Maps (sweep parameter, rank level) to canvas coordinates.
struct Frame {
    layout: Layout,
    total: f64,
    center: f64,
    outer: f64,
    margin: f64,
    width: f64,
    spacing: f64,
}

impl Frame {
    fn new(n: usize, total: usize, options: &LayoutOptions) -> Result<Frame, RenderError> {
        let half = options.size / 2.0;
        let extent = match options.layout {
            // Leave a small disc in the middle for the innermost face.
            Layout::Radial => (half - options.margin) * 0.88,
            Layout::Cylindrical => options.size - 2.0 * options.margin,
        };
        if extent <= 0.0 {
            return Err(RenderError::NoRoom);
        }
        let spacing = options.spacing.unwrap_or(extent / n as f64);
        if spacing <= 0.0 || spacing * n as f64 > extent + 1e-9 {
            return Err(RenderError::DoesNotFit { n, spacing, extent });
        }
        Ok(Frame {
            layout: options.layout,
            total: total as f64,
            center: half,
            outer: half - options.margin,
            margin: options.margin,
            width: options.size - 2.0 * options.margin,
            spacing,
        })
    }

    fn point(&self, u: f64, level: f64) -> (f64, f64) {
        match self.layout {
            Layout::Radial => {
                let theta = TAU * u / self.total;
                let r = self.outer - (level + 0.5) * self.spacing;
                (self.center + r * theta.sin(), self.center - r * theta.cos())
            }
            Layout::Cylindrical => (
                self.margin + u * self.width / self.total,
                self.margin + (level + 0.5) * self.spacing,
            ),
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn path_data(points: &[(f64, f64)], smoothing: Smoothing, closed: bool) -> String {
    let mut d = String::new();
    match smoothing {
        Smoothing::Polyline => {
            for (i, &(x, y)) in points.iter().enumerate() {
                let _ = write!(d, "{}{},{} ", if i == 0 { "M" } else { "L" }, num(x), num(y));
            }
        }
        Smoothing::Curve => {
            // Quadratic segments through the midpoints, with the sampled
            // points as control points.
            let mid = |a: (f64, f64), b: (f64, f64)| ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let count = points.len();
            let segments = if closed { count } else { count - 1 };
            let start = if closed { mid(points[count - 1], points[0]) } else { points[0] };
            let _ = write!(d, "M{},{} ", num(start.0), num(start.1));
            for i in 0..segments {
                let (control, next) = if closed {
                    (points[i], mid(points[i], points[(i + 1) % count]))
                } else if i + 2 == count {
                    (points[i + 1], points[i + 1])
                } else {
                    (points[i + 1], mid(points[i + 1], points[i + 2]))
                };
                let _ = write!(d, "Q{},{} {},{} ", num(control.0), num(control.1), num(next.0), num(next.1));
            }
        }
    }
    if closed {
        d.push('Z');
    } else {
        d.pop();
    }
    d
}

fn shade(k: u32, n: usize) -> String {
    let level = 240 - (k as usize * 170 / n) as u32;
    format!("#{level:02x}{level:02x}{:02x}", (level + 10).min(255))
}

/// Renders the diagram as a standalone SVG 1.1 document.
pub fn render_svg(diagram: &ValidDiagram, options: &LayoutOptions) -> Result<String, RenderError> {
    if options.palette.is_empty() {
        return Err(RenderError::EmptyPalette);
    }
    let n = diagram.order().n();
    let full = diagram.full_sequence();
    let total = full.len();
    let frame = Frame::new(n, total, options)?;
    // Extra samples between crossings keep small diagrams round.
    let sub = 256usize.div_ceil(total).saturating_sub(1);
    let step = 1.0 / (sub + 1) as f64;

    let mut strands: Vec<Vec<(f64, f64)>> = vec![Vec::with_capacity(total * (sub + 1)); n];
    let mut crossings = Vec::with_capacity(total);
    let mut state = SweepState::identity(n);
    let mut rank = vec![0usize; n];
    for (t, &g) in full.iter().enumerate() {
        for (r, &c) in state.ranks().iter().enumerate() {
            rank[c as usize] = r;
        }
        let (a, b) = state.pair(g);
        let meet = g as f64 - 0.5;
        let u = t as f64;
        for c in 0..n {
            let level = if c == a as usize || c == b as usize { meet } else { rank[c] as f64 };
            strands[c].push(frame.point(u, level));
        }
        crossings.push(frame.point(u, meet));
        state.step(g);
        for (r, &c) in state.ranks().iter().enumerate() {
            for j in 1..=sub {
                strands[c as usize].push(frame.point(u + j as f64 * step, r as f64));
            }
        }
    }

    let mut out = String::new();
    let size = num(options.size);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}" data-n="{n}" data-crossings="{total}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    if options.shade_by_cardinality {
        let _ = writeln!(out, r#"  <g class="faces" stroke="none">"#);
        // A first pass sets every gap's opening position; faces are read off the second.
        let mut state = SweepState::identity(n);
        for &g in full.iter() {
            state.step(g);
        }
        for (t, &g) in full.iter().enumerate() {
            let opened = state.opened_at(g) as f64 - 1.0 - total as f64;
            let closed = state.step(g).set;
            let close = t as f64;
            let inner = g as f64 - 0.5;
            let mut polygon = vec![frame.point(opened, inner)];
            let mut u = opened + step;
            let mut back = Vec::new();
            while u < close - 1e-9 {
                polygon.push(frame.point(u, g as f64 - 1.0));
                back.push(frame.point(u, g as f64));
                u += step;
            }
            polygon.push(frame.point(close, inner));
            polygon.extend(back.into_iter().rev());
            let points: Vec<String> = polygon.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
            let _ = writeln!(
                out,
                r#"    <polygon data-set="{}" fill="{}" points="{}"/>"#,
                closed.bitstring(n),
                shade(closed.cardinality(), n),
                points.join(" ")
            );
        }
        let _ = writeln!(out, "  </g>");
    }

    let closed = options.layout == Layout::Radial;
    let _ = writeln!(out, r#"  <g class="curves" fill="none" stroke-width="{}">"#, num(options.stroke_width));
    for (c, points) in strands.iter_mut().enumerate() {
        if !closed {
            let first = points[0];
            points.push((frame.point(total as f64, 0.0).0, first.1));
        }
        let _ = writeln!(
            out,
            r#"    <path data-curve="{}" stroke="{}" d="{}"/>"#,
            c + 1,
            options.palette[c % options.palette.len()],
            path_data(points, options.smoothing, closed)
        );
    }
    let _ = writeln!(out, "  </g>");

    if options.show_crossings {
        let _ = writeln!(out, r#"  <g class="crossings" fill="black">"#);
        for &(x, y) in &crossings {
            let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="1.5"/>"#, num(x), num(y));
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
