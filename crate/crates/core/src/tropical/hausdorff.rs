use rayon::prelude::*;

use super::complex::TropicalComplex;
use crate::error::{Error, Result};
use crate::geom::{distance, norm, Window};

/// Grid points per axis used for faces of dimension two and higher.
const FACE_GRID: usize = 60;

/// Dense sample of the hypersurface clipped to the window, spaced by `step`
/// along edges.
pub fn sample_pi(pi: &TropicalComplex, window: &Window, step: f64) -> Vec<Vec<f64>> {
    let verts: Vec<Vec<f64>> = pi.vertices().iter().map(|v| v.to_f64()).collect();
    let center = window.center();
    let mut out = Vec::new();
    for f in pi.faces() {
        match f.dim {
            0 => {
                let v = &verts[f.vertices[0]];
                if window.contains(v) {
                    out.push(v.clone());
                }
            }
            1 => {
                let a = &verts[f.vertices[0]];
                let (dir, len) = if f.vertices.len() == 2 {
                    let b = &verts[f.vertices[1]];
                    let d: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                    let l = norm(&d);
                    (d.iter().map(|x| x / l).collect::<Vec<_>>(), l)
                } else {
                    let r = f.rays[0].to_f64();
                    let l = norm(&r);
                    let reach = distance(a, &center) + window.diameter();
                    (r.iter().map(|x| x / l).collect(), reach)
                };
                let steps = (len / step).ceil().max(1.0) as usize;
                for k in 0..=steps {
                    let s = len * k as f64 / steps as f64;
                    let p: Vec<f64> = a.iter().zip(&dir).map(|(x, d)| x + s * d).collect();
                    if window.contains(&p) {
                        out.push(p);
                    }
                }
            }
            _ => {
                let poly = pi.face_polyhedron(f);
                let n = window.dim();
                let total = FACE_GRID.pow(n as u32);
                for idx in 0..total {
                    let mut rem = idx;
                    let g: Vec<f64> = (0..n)
                        .map(|i| {
                            let k = rem % FACE_GRID;
                            rem /= FACE_GRID;
                            window.lo[i] + (window.hi[i] - window.lo[i]) * k as f64 / (FACE_GRID - 1) as f64
                        })
                        .collect();
                    if let Some(p) = poly.project(&g) {
                        if window.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Symmetric windowed Hausdorff distance between a point cloud and the
/// hypersurface, with the default sampling step (1/1000 of the window
/// diagonal).
pub fn hausdorff_distance(cloud: &[Vec<f64>], pi: &TropicalComplex, window: &Window) -> Result<f64> {
    hausdorff_distance_with_step(cloud, pi, window, window.diameter() / 1000.0)
}

pub fn hausdorff_distance_with_step(
    cloud: &[Vec<f64>],
    pi: &TropicalComplex,
    window: &Window,
    step: f64,
) -> Result<f64> {
    let inside: Vec<&Vec<f64>> = cloud.iter().filter(|p| window.contains(p)).collect();
    let samples = sample_pi(pi, window, step);
    if inside.is_empty() || samples.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let facets = pi.facet_polyhedra();
    let to_pi = inside
        .par_iter()
        .map(|p| pi.distance(&facets, p))
        .reduce(|| 0.0, f64::max);
    let to_cloud = samples
        .par_iter()
        .map(|s| {
            cloud
                .iter()
                .map(|c| distance(s, c))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max);
    Ok(to_pi.max(to_cloud))
}
