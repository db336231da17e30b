//! Number-line diagrams: points on a horizontal axis, one arc per pair.

use std::collections::BTreeSet;
use std::fmt::Write;

use involution::{PointPair, ProjPoint};
use thiserror::Error;

use crate::dsl::ast::{Binding, Script, Statement};
use crate::run::first_souche;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("script binds no pairs")]
    NothingToRender,
    #[error("only configurations over Q can be drawn on a line")]
    UnorderedField,
}

impl RenderError {
    pub fn kind(&self) -> &'static str {
        match self {
            RenderError::NothingToRender => "NothingToRender",
            RenderError::UnorderedField => "UnorderedField",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Style {
    pub width: f64,
    pub height: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style { width: 800.0, height: 300.0 }
    }
}

/// Maps projective points to horizontal pixel positions.
struct Scale {
    lo: f64,
    hi: f64,
    left: f64,
    right: f64,
    infinity: f64,
}

impl Scale {
    fn new(values: &[f64], style: &Style) -> Self {
        let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if values.is_empty() {
            (lo, hi) = (-1.0, 1.0);
        } else if lo == hi {
            (lo, hi) = (lo - 1.0, hi + 1.0);
        }
        let margin = 0.1 * style.width;
        Scale { lo, hi, left: margin, right: style.width - margin, infinity: style.width - margin / 2.0 }
    }

    fn x(&self, p: &ProjPoint) -> f64 {
        match p.affine().and_then(|s| s.to_f64()) {
            Some(v) => self.left + (v - self.lo) / (self.hi - self.lo) * (self.right - self.left),
            None => self.infinity,
        }
    }
}

fn label(p: &ProjPoint) -> String {
    if p.is_infinite() {
        "∞".into()
    } else {
        p.to_string()
    }
}

/// Draws every pair bound by the script. Output depends only on the script
/// and the style.
pub fn render(script: &Script, style: &Style) -> Result<String, RenderError> {
    if !script.field.is_rationals() {
        return Err(RenderError::UnorderedField);
    }
    let pairs: Vec<&PointPair> = script
        .statements
        .iter()
        .filter_map(|s| match s {
            Statement::Bind(Binding::Pair { pair, .. }) => Some(pair),
            _ => None,
        })
        .collect();
    if pairs.is_empty() {
        return Err(RenderError::NothingToRender);
    }
    let souche = first_souche(script);

    let mut points = BTreeSet::new();
    for p in &pairs {
        for m in p.members() {
            points.insert(m.clone());
        }
    }
    let values: Vec<f64> =
        points.iter().chain(souche.iter()).filter_map(|p| p.affine().and_then(|s| s.to_f64())).collect();
    let scale = Scale::new(&values, style);
    let axis = 0.75 * style.height;

    let spans: Vec<f64> = pairs.iter().map(|p| (scale.x(p.first()) - scale.x(p.second())).abs()).collect();
    let widest = spans.iter().copied().fold(0.0, f64::max);
    let rise = if widest > 0.0 { (0.5f64).min((axis - 20.0) / widest) } else { 0.5 };

    let (w, h) = (style.width, style.height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    let _ = writeln!(out, r#"<line class="axis" x1="0" y1="{axis:.2}" x2="{w:.0}" y2="{axis:.2}" stroke="black"/>"#);
    for (pair, span) in pairs.iter().zip(&spans) {
        let (x1, x2) = (scale.x(pair.first()), scale.x(pair.second()));
        if pair.is_double() {
            let _ = writeln!(
                out,
                r#"<circle class="arc" cx="{x1:.2}" cy="{:.2}" r="6" fill="none" stroke="steelblue"/>"#,
                axis - 6.0
            );
        } else {
            // A cubic with both controls at 4/3 the height peaks at exactly that height.
            let top = axis - 4.0 / 3.0 * rise * span;
            let _ = writeln!(
                out,
                r#"<path class="arc" d="M {x1:.2} {axis:.2} C {x1:.2} {top:.2} {x2:.2} {top:.2} {x2:.2} {axis:.2}" fill="none" stroke="steelblue"/>"#
            );
        }
    }
    for p in &points {
        let x = scale.x(p);
        let _ = writeln!(out, r#"<circle class="point" cx="{x:.2}" cy="{axis:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text class="label" x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            axis + 20.0,
            label(p)
        );
    }
    if let Some(a) = &souche {
        let x = scale.x(a);
        let _ = writeln!(
            out,
            r#"<line class="souche" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="firebrick" stroke-width="2"/>"#,
            axis - 12.0,
            axis + 12.0
        );
        let _ = writeln!(
            out,
            r#"<text class="souche-label" x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle" fill="firebrick">{}</text>"#,
            axis + 36.0,
            a
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
