//! SVG figures in the affine chart `z = 1`: arrangement lines dotted black,
//! the conic through the vertices dashed red, the Pascal line and the
//! quartic solid green. Curves are traced by marching squares on a sampling
//! grid; this is the only place where floating point is used.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::geometry::{LinearForm, ProjPoint};
use crate::hexagon::{Hexagon, PascalOutcome};
use crate::linalg::Rational;
use crate::poly::HomPoly;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    /// Bounding box of the points with a margin, at least `2 × 2`.
    pub fn around(points: &[(f64, f64)]) -> Viewport {
        if points.is_empty() {
            return Viewport {
                xmin: -1.0,
                xmax: 1.0,
                ymin: -1.0,
                ymax: 1.0,
            };
        }
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
            points.iter().map(pick).fold(init, f)
        };
        let (x0, x1) = (
            fold(f64::min, f64::INFINITY, |p| p.0),
            fold(f64::max, f64::NEG_INFINITY, |p| p.0),
        );
        let (y0, y1) = (
            fold(f64::min, f64::INFINITY, |p| p.1),
            fold(f64::max, f64::NEG_INFINITY, |p| p.1),
        );
        let span = (x1 - x0).max(y1 - y0).max(2.0);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = 0.6 * span;
        Viewport {
            xmin: cx - half,
            xmax: cx + half,
            ymin: cy - half,
            ymax: cy + half,
        }
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        let eps = 1e-9 * (self.xmax - self.xmin);
        x >= self.xmin - eps && x <= self.xmax + eps && y >= self.ymin - eps && y <= self.ymax + eps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stroke {
    Arrangement,
    Conic,
    Pascal,
    Quartic,
}

impl Stroke {
    fn style(self) -> &'static str {
        match self {
            Stroke::Arrangement => {
                r#"stroke="black" stroke-width="1.5" stroke-dasharray="1.5 4" stroke-linecap="round""#
            }
            Stroke::Conic => r#"stroke="red" stroke-width="1.5" stroke-dasharray="8 5""#,
            Stroke::Pascal => r#"stroke="green" stroke-width="2""#,
            Stroke::Quartic => r#"stroke="green" stroke-width="2""#,
        }
    }
}

/// A figure: straight lines and implicit curves with their stroke classes.
#[derive(Clone, Debug)]
pub struct SvgScene {
    pub size: u32,
    pub view: Viewport,
    pub lines: Vec<(LinearForm, Stroke)>,
    pub curves: Vec<(HomPoly, Stroke)>,
    pub points: Vec<ProjPoint>,
    pub grid: usize,
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn affine(p: &ProjPoint) -> Option<(f64, f64)> {
    p.affine().map(|(x, y)| (to_f64(&x), to_f64(&y)))
}

impl SvgScene {
    /// Lines of the arrangement, the line at infinity left out; the viewport
    /// frames the finite multiple points.
    pub fn for_arrangement(a: &Arrangement) -> SvgScene {
        let lat = a.lattice();
        let points: Vec<ProjPoint> = lat.points.iter().map(|p| p.point.clone()).collect();
        let finite: Vec<(f64, f64)> = points.iter().filter_map(affine).collect();
        SvgScene {
            size: 600,
            view: Viewport::around(&finite),
            lines: a
                .lines()
                .iter()
                .map(|l| (l.clone(), Stroke::Arrangement))
                .collect(),
            curves: Vec::new(),
            points: lat
                .points
                .iter()
                .filter(|p| p.multiplicity >= 3)
                .map(|p| p.point.clone())
                .collect(),
            grid: 400,
        }
    }

    /// Adds the conic through the vertices, the Pascal line and the quartic
    /// when they exist.
    pub fn with_hexagon(mut self, h: &Hexagon) -> SvgScene {
        if let Some(c) = h.on_conic() {
            self.curves.push((c.form, Stroke::Conic));
        }
        if let Ok(PascalOutcome::Line(l)) = h.pascal_line() {
            self.lines.push((l, Stroke::Pascal));
        }
        if let Ok(s) = h.tangent_system() {
            if s.has_solution() {
                let mut q = HomPoly::zero(4);
                for (c, qi) in s.solution.iter().zip(h.quartic_basis().iter()) {
                    q += &qi.scale(c);
                }
                self.curves.push((q, Stroke::Quartic));
            }
        }
        self
    }

    fn to_px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let s = self.size as f64;
        (
            (x - self.view.xmin) / (self.view.xmax - self.view.xmin) * s,
            (self.view.ymax - y) / (self.view.ymax - self.view.ymin) * s,
        )
    }

    /// The visible segment of `ax + by + c = 0`, if any.
    pub fn clip(&self, l: &LinearForm) -> Option<((f64, f64), (f64, f64))> {
        let [a, b, c] = l.rational_coords().map(|x| to_f64(&x));
        if a == 0.0 && b == 0.0 {
            return None;
        }
        let v = &self.view;
        let mut hits: Vec<(f64, f64)> = Vec::new();
        if b != 0.0 {
            for x in [v.xmin, v.xmax] {
                hits.push((x, -(a * x + c) / b));
            }
        }
        if a != 0.0 {
            for y in [v.ymin, v.ymax] {
                hits.push((-(b * y + c) / a, y));
            }
        }
        hits.retain(|&p| v.contains(p));
        let first = *hits.first()?;
        let far = hits
            .iter()
            .copied()
            .max_by(|p, q| dist(first, *p).total_cmp(&dist(first, *q)))?;
        (dist(first, far) > 0.0).then_some((first, far))
    }

    /// Zero set of `f` in the viewport as line segments.
    pub fn trace(&self, f: &HomPoly) -> Vec<((f64, f64), (f64, f64))> {
        let terms: Vec<(i32, i32, f64)> = f
            .terms()
            .map(|((a, b, _), c)| (a as i32, b as i32, to_f64(c)))
            .collect();
        let eval = |x: f64, y: f64| {
            terms
                .iter()
                .map(|&(a, b, c)| c * x.powi(a) * y.powi(b))
                .sum::<f64>()
        };
        let n = self.grid;
        let v = &self.view;
        let xs: Vec<f64> = (0..=n)
            .map(|i| v.xmin + (v.xmax - v.xmin) * i as f64 / n as f64)
            .collect();
        let ys: Vec<f64> = (0..=n)
            .map(|j| v.ymin + (v.ymax - v.ymin) * j as f64 / n as f64)
            .collect();
        let vals: Vec<Vec<f64>> = ys
            .iter()
            .map(|&y| xs.iter().map(|&x| eval(x, y)).collect())
            .collect();
        let cross = |p: (f64, f64), fp: f64, q: (f64, f64), fq: f64| -> Option<(f64, f64)> {
            if (fp < 0.0) == (fq < 0.0) || fp == fq {
                return None;
            }
            let t = fp / (fp - fq);
            Some((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)))
        };
        let mut segs = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let c = [
                    (xs[i], ys[j]),
                    (xs[i + 1], ys[j]),
                    (xs[i + 1], ys[j + 1]),
                    (xs[i], ys[j + 1]),
                ];
                let f = [
                    vals[j][i],
                    vals[j][i + 1],
                    vals[j + 1][i + 1],
                    vals[j + 1][i],
                ];
                let pts: Vec<(f64, f64)> = (0..4)
                    .filter_map(|e| cross(c[e], f[e], c[(e + 1) % 4], f[(e + 1) % 4]))
                    .collect();
                match pts.len() {
                    2 => segs.push((pts[0], pts[1])),
                    4 => {
                        // saddle: pair edges according to the sign at the centre
                        let centre = eval((c[0].0 + c[2].0) / 2.0, (c[0].1 + c[2].1) / 2.0);
                        if (centre < 0.0) == (f[0] < 0.0) {
                            segs.push((pts[0], pts[1]));
                            segs.push((pts[2], pts[3]));
                        } else {
                            segs.push((pts[0], pts[3]));
                            segs.push((pts[1], pts[2]));
                        }
                    }
                    _ => {}
                }
            }
        }
        segs
    }

    pub fn render(&self) -> String {
        let s = self.size;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
        );
        let _ = writeln!(out, r#"<rect width="{s}" height="{s}" fill="white"/>"#);
        for (f, stroke) in &self.curves {
            let mut d = String::new();
            for (p, q) in self.trace(f) {
                let (p, q) = (self.to_px(p), self.to_px(q));
                let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", p.0, p.1, q.0, q.1);
            }
            if !d.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<path class="{}" d="{d}" fill="none" {}/>"#,
                    class(*stroke),
                    stroke.style()
                );
            }
        }
        for (l, stroke) in &self.lines {
            if let Some((p, q)) = self.clip(l) {
                let (p, q) = (self.to_px(p), self.to_px(q));
                let _ = writeln!(
                    out,
                    r#"<line class="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {}><title>{l}</title></line>"#,
                    class(*stroke),
                    p.0,
                    p.1,
                    q.0,
                    q.1,
                    stroke.style()
                );
            }
        }
        for p in &self.points {
            if let Some(a) = affine(p).filter(|&a| self.view.contains(a)) {
                let (x, y) = self.to_px(a);
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"><title>{p}</title></circle>"#
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn class(s: Stroke) -> &'static str {
    match s {
        Stroke::Arrangement => "arrangement",
        Stroke::Conic => "conic",
        Stroke::Pascal => "pascal",
        Stroke::Quartic => "quartic",
    }
}

fn dist(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;

    #[test]
    fn triangle_shows_two_lines() {
        // z = 0 is the line at infinity of the chart
        let svg = SvgScene::for_arrangement(&Builtin::Triangle.arrangement()).render();
        assert_eq!(svg.matches("<line ").count(), 2);
    }

    #[test]
    fn clipped_endpoints_lie_on_the_frame() {
        let scene = SvgScene::for_arrangement(&Builtin::Az.arrangement());
        for (l, _) in &scene.lines {
            if let Some((p, q)) = scene.clip(l) {
                for (x, y) in [p, q] {
                    let v = &scene.view;
                    let on_edge = [x - v.xmin, v.xmax - x, y - v.ymin, v.ymax - y]
                        .iter()
                        .any(|d| d.abs() < 1e-9);
                    assert!(on_edge);
                }
            }
        }
    }

    #[test]
    fn circle_is_traced_near_radius_one() {
        let mut scene = SvgScene::for_arrangement(&Builtin::Triangle.arrangement());
        scene.view = Viewport {
            xmin: -2.0,
            xmax: 2.0,
            ymin: -2.0,
            ymax: 2.0,
        };
        let segs = scene.trace(&crate::poly::parse("x^2+y^2-z^2").unwrap());
        assert!(segs.len() > 100);
        for (p, _) in segs {
            assert!((p.0.hypot(p.1) - 1.0).abs() < 0.02);
        }
    }
}
