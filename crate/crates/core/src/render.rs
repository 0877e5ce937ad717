//! SVG 1.1 output: y-up geometry mapped to an 800x800 y-down viewBox with a 5% margin.

use crate::body::ConvexBody;
use crate::geometry::{BoundaryPiece, PieceLoop, Point};
use crate::scalar::Scalar;
use crate::subdivision::KSubdivision;

pub const VIEWBOX: f64 = 800.0;
pub const MARGIN: f64 = 0.05;

/// Affine map from body coordinates to the viewBox.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    /// Fits the box `[lo, hi]` into the viewBox, preserving aspect ratio and centering.
    pub fn fit<T: Scalar>(lo: Point<T>, hi: Point<T>) -> Self {
        let (lx, ly, hx, hy) = (lo.x.as_f64(), lo.y.as_f64(), hi.x.as_f64(), hi.y.as_f64());
        let span = (hx - lx).max(hy - ly).max(f64::MIN_POSITIVE);
        let inner = VIEWBOX * (1.0 - 2.0 * MARGIN);
        let scale = inner / span;
        let ox = VIEWBOX * 0.5 - (lx + hx) * 0.5 * scale;
        let oy = VIEWBOX * 0.5 + (ly + hy) * 0.5 * scale;
        Frame { scale, ox, oy }
    }

    pub fn map<T: Scalar>(&self, p: Point<T>) -> (f64, f64) {
        (
            self.ox + p.x.as_f64() * self.scale,
            self.oy - p.y.as_f64() * self.scale,
        )
    }

    pub fn length<T: Scalar>(&self, r: T) -> f64 {
        r.as_f64() * self.scale
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Path data of a closed loop. The y flip reverses orientation, so a
/// counterclockwise arc is emitted with sweep flag 0.
pub fn loop_path_data<T: Scalar>(l: &PieceLoop<T>, frame: &Frame) -> String {
    let mut d = String::new();
    let Some(first) = l.pieces().first() else {
        return d;
    };
    let (x, y) = frame.map(first.start());
    d.push_str(&format!("M {} {}", num(x), num(y)));
    for p in l.pieces() {
        let (x, y) = frame.map(p.end());
        match p {
            BoundaryPiece::Segment { .. } => d.push_str(&format!(" L {} {}", num(x), num(y))),
            BoundaryPiece::Arc {
                radius,
                orientation,
                ..
            } => {
                let r = num(frame.length(*radius));
                let large = u8::from(p.sweep() > T::PI());
                let sweep = u8::from(!orientation.is_ccw());
                d.push_str(&format!(
                    " A {r} {r} 0 {large} {sweep} {} {}",
                    num(x),
                    num(y)
                ));
            }
        }
    }
    d.push_str(" Z");
    d
}

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn header() -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">\n",
        v = VIEWBOX
    )
}

/// One `<path>` per region, filled from a fixed palette, outlined in black.
pub fn render_subdivision<T: Scalar>(s: &KSubdivision<T>) -> String {
    let (lo, hi) = s.body().bbox();
    let frame = Frame::fit(lo, hi);
    let mut out = header();
    for (i, r) in s.regions().iter().enumerate() {
        out.push_str(&format!(
            "  <path id=\"region-{i}\" d=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"1.5\" stroke-linejoin=\"round\"/>\n",
            loop_path_data(r, &frame),
            PALETTE[i % PALETTE.len()]
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// The body outline as a single path.
pub fn render_body<T: Scalar>(c: &ConvexBody<T>) -> String {
    let (lo, hi) = c.bbox();
    let frame = Frame::fit(lo, hi);
    let mut out = header();
    out.push_str(&format!(
        "  <path id=\"body\" d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
        loop_path_data(c.boundary(), &frame)
    ));
    let (cx, cy) = frame.map(c.center());
    out.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n",
        num(cx),
        num(cy)
    ));
    out.push_str("</svg>\n");
    out
}
