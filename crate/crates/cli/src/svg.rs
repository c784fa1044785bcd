use std::fmt::Write;

use tropmirror::lattice::vector::rat_to_f64;
use tropmirror::{TropicalComplex, Window};

pub const SIZE: f64 = 800.0;

/// `X = sx x + ox`, `Y = sy y + oy`, with `sy < 0` so that y points up.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub sx: f64,
    pub sy: f64,
    pub ox: f64,
    pub oy: f64,
}

impl Viewport {
    pub fn new(w: &Window) -> Self {
        let sx = SIZE / (w.hi[0] - w.lo[0]);
        let sy = -SIZE / (w.hi[1] - w.lo[1]);
        Self {
            sx,
            sy,
            ox: -sx * w.lo[0],
            oy: -sy * w.hi[1],
        }
    }

    pub fn map(&self, p: &[f64]) -> (f64, f64) {
        (self.sx * p[0] + self.ox, self.sy * p[1] + self.oy)
    }
}

fn polygon_order(mut pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    pts.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    pts
}

/// Tropical curve in black, rescaled cloud in gray and `Q` shaded, all in
/// world coordinates `window`.
pub fn overlay(pi: &TropicalComplex, cloud: &[Vec<f64>], window: &Window) -> String {
    let vp = Viewport::new(window);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(
        s,
        r#"<metadata>{{"world_to_viewport":{{"x":[{},{}],"y":[{},{}]}},"window":[{},{},{},{}]}}</metadata>"#,
        vp.sx, vp.ox, vp.sy, vp.oy, window.lo[0], window.hi[0], window.lo[1], window.hi[1]
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="view"><rect x="0" y="0" width="800" height="800"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#);
    let _ = writeln!(s, r#"<g clip-path="url(#view)">"#);
    if let Some(q) = pi.q() {
        let pts = polygon_order(q.vertices().iter().map(|v| v.to_f64()).collect());
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = vp.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#6a9fd8" fill-opacity="0.3" stroke="none"/>"##,
            coords.join(" ")
        );
    }
    let _ = writeln!(s, r##"<g fill="#999999">"##);
    for p in cloud {
        let (x, y) = vp.map(p);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="0.8"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5" fill="none">"#);
    let reach = window.diameter() + window.center().iter().map(|c| c.abs()).sum::<f64>();
    for f in pi.faces_of_dim(1) {
        let verts: Vec<Vec<f64>> = f.vertices.iter().map(|&i| pi.vertices()[i].to_f64()).collect();
        let (a, b) = match (verts.as_slice(), f.rays.first()) {
            ([a, b], _) => (a.clone(), b.clone()),
            ([a], Some(r)) => {
                let d: Vec<f64> = r.coords().iter().map(rat_to_f64).collect();
                let len = d.iter().map(|x| x * x).sum::<f64>().sqrt();
                (a.clone(), a.iter().zip(&d).map(|(x, y)| x + reach * y / len).collect())
            }
            _ => continue,
        };
        let (x1, y1) = vp.map(&a);
        let (x2, y2) = vp.map(&b);
        let _ = writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
    }
    let _ = writeln!(s, "</g>\n</g>\n</svg>");
    s
}
