//! SVG 1.1 drawings of an instance with an optional overlay.
//!
//! The unit square maps onto a 1000x1000 viewport with the y axis flipped,
//! so the origin sits in the bottom-left corner. Only packing pieces and
//! strips are emitted as `<rect>`; the frame and staircase are polygons so
//! rect counts stay meaningful.

use std::fmt::Write as _;

use cakecut::model::{AnchoredRect, Instance, Packing};
use cakecut::staircase::{decompose, StaircaseDecomposition};
use cakecut::{Error, Result, Scalar};

const SIZE: f64 = 1000.0;
const DOT_RADIUS: f64 = 6.0;

#[derive(Clone, Copy, Debug)]
pub enum Overlay<'a> {
    None,
    Packing(&'a Packing),
    Decomposition(&'a StaircaseDecomposition),
}

fn sx(v: &Scalar) -> f64 {
    v.to_f64() * SIZE
}

fn sy(v: &Scalar) -> f64 {
    (1.0 - v.to_f64()) * SIZE
}

fn rect_element(out: &mut String, r: &AnchoredRect, class: &str) {
    writeln!(
        out,
        r#"  <rect class="{class}" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
        sx(&r.anchor.x),
        sy(&r.top),
        sx(&r.width()),
        sx(&r.height()),
    )
    .unwrap();
}

fn staircase_polygon(dec: &StaircaseDecomposition) -> String {
    let mut pts = vec![(0.0, SIZE), (0.0, 0.0)];
    let mut top = Scalar::one();
    for m in &dec.minima {
        pts.push((sx(&m.x), sy(&top)));
        pts.push((sx(&m.x), sy(&m.y)));
        top = m.y.clone();
    }
    pts.push((SIZE, sy(&top)));
    pts.push((SIZE, SIZE));
    pts.iter()
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders `inst` with its staircase shaded, plus the overlay. Fails with
/// [`Error::InconsistentOverlay`] if the overlay references a point that is
/// not in the instance.
pub fn render_svg(inst: &Instance, overlay: Overlay<'_>) -> Result<String> {
    let own;
    let dec = match overlay {
        Overlay::Decomposition(d) => {
            if let Some(m) = d.minima.iter().find(|m| !inst.contains(m)) {
                return Err(Error::InconsistentOverlay(format!("minimum ({}, {}) not in instance", m.x, m.y)));
            }
            d
        }
        _ => {
            own = decompose(inst);
            &own
        }
    };
    if let Overlay::Packing(p) = overlay {
        if let Some(r) = p.rects.iter().find(|r| !inst.contains(&r.anchor)) {
            return Err(Error::InconsistentOverlay(format!(
                "anchor ({}, {}) not in instance",
                r.anchor.x, r.anchor.y
            )));
        }
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n",
    );
    out.push_str(
        "  <style type=\"text/css\">\
         .staircase{fill:#d9d9d9;stroke:none}\
         .piece{fill:#8fb8de;fill-opacity:0.6;stroke:#1f4e79;stroke-width:2}\
         .strip{fill:#f4c27a;fill-opacity:0.35;stroke:#a0522d;stroke-width:2}\
         .frame{fill:none;stroke:#000;stroke-width:2}\
         .point{fill:#c00000}\
         </style>\n",
    );
    writeln!(out, r#"  <polygon class="staircase" points="{}"/>"#, staircase_polygon(dec)).unwrap();
    match overlay {
        Overlay::Packing(p) => p.rects.iter().for_each(|r| rect_element(&mut out, r, "piece")),
        Overlay::Decomposition(d) => d.strips.iter().for_each(|s| rect_element(&mut out, &s.rect, "strip")),
        Overlay::None => {}
    }
    out.push_str("  <polygon class=\"frame\" points=\"0,0 1000,0 1000,1000 0,1000\"/>\n");
    for p in inst.points() {
        writeln!(
            out,
            r#"  <circle class="point" cx="{:.3}" cy="{:.3}" r="{DOT_RADIUS}"/>"#,
            sx(&p.x),
            sy(&p.y)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
