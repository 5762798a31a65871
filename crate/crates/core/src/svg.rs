//! Minimal SVG writer for figures. World coordinates are y-up; the document
//! flips them so pictures appear the usual way round.

use std::fmt::Write;

pub struct Svg {
    min: [f64; 2],
    max: [f64; 2],
    scale: f64,
    body: String,
}

impl Svg {
    /// `bounds` is `[xmin, ymin, xmax, ymax]` in world units; `width` in pixels.
    pub fn new(bounds: [f64; 4], width: f64) -> Svg {
        let w = (bounds[2] - bounds[0]).max(1e-12);
        let pad = 0.04 * w.max(bounds[3] - bounds[1]);
        Svg {
            min: [bounds[0] - pad, bounds[1] - pad],
            max: [bounds[2] + pad, bounds[3] + pad],
            scale: width / (w + 2.0 * pad),
            body: String::new(),
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.min[0]) * self.scale, (self.max[1] - p[1]) * self.scale)
    }

    pub fn polygon(&mut self, pts: &[[f64; 2]], fill: &str, stroke: &str) {
        let mut s = String::new();
        for &p in pts {
            let (x, y) = self.map(p);
            let _ = write!(s, "{x:.3},{y:.3} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="0.6"/>"#,
            s.trim_end()
        );
    }

    pub fn line(&mut self, a: [f64; 2], b: [f64; 2], stroke: &str, width: f64) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    pub fn text(&mut self, p: [f64; 2], size: f64, content: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.3}" y="{y:.3}" font-size="{size}" font-family="sans-serif" text-anchor="middle" dominant-baseline="middle">{content}</text>"#
        );
    }

    pub fn finish(self) -> String {
        let w = (self.max[0] - self.min[0]) * self.scale;
        let h = (self.max[1] - self.min[1]) * self.scale;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Diverging blue-white-red colour for `t` in [-1, 1].
pub fn diverging(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (r, g, b) = if t >= 0.0 {
        (255.0, 255.0 * (1.0 - t), 255.0 * (1.0 - t))
    } else {
        (255.0 * (1.0 + t), 255.0 * (1.0 + t), 255.0)
    };
    format!("#{:02x}{:02x}{:02x}", r as u8, g as u8, b as u8)
}

pub fn bounds_of(points: impl IntoIterator<Item = [f64; 2]>) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in points {
        b[0] = b[0].min(p[0]);
        b[1] = b[1].min(p[1]);
        b[2] = b[2].max(p[0]);
        b[3] = b[3].max(p[1]);
    }
    b
}
