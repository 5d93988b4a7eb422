//! Sampled closed curves with a winding-number containment test.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Distance to the curve under which containment is reported as undecided.
pub const DEFAULT_CONTAINMENT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Containment {
    Inside { winding: i32 },
    Outside,
    /// Too close to the sampled curve for the winding number to be trusted.
    OnBoundary { distance: f64 },
}

/// A closed polygon approximating a curve. The closing edge from the last
/// sample back to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRegion {
    samples: Vec<Complex64>,
    tolerance: f64,
    strips: StripIndex,
}

/// Edges bucketed by the horizontal strips their y-range meets, so that
/// containment queries only look at edges near the query's height.
#[derive(Debug, Clone, PartialEq)]
struct StripIndex {
    y_min: f64,
    y_max: f64,
    height: f64,
    edges: Vec<Vec<u32>>,
}

impl StripIndex {
    fn build(samples: &[Complex64]) -> Self {
        let n = samples.len();
        let y_min = samples.iter().map(|z| z.im).fold(f64::INFINITY, f64::min);
        let y_max = samples.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
        let count = (n / 8).clamp(1, 4096);
        let height = ((y_max - y_min) / count as f64).max(f64::MIN_POSITIVE);
        let mut idx = Self { y_min, y_max, height, edges: vec![Vec::new(); count] };
        for i in 0..n {
            let (a, b) = (samples[i], samples[(i + 1) % n]);
            for s in idx.strip(a.im.min(b.im))..=idx.strip(a.im.max(b.im)) {
                idx.edges[s].push(i as u32);
            }
        }
        idx
    }

    fn strip(&self, y: f64) -> usize {
        (((y - self.y_min) / self.height).floor().max(0.0) as usize).min(self.edges.len() - 1)
    }

    /// Edge indices whose strips meet `[lo, hi]`; empty if the band misses the curve.
    fn near(&self, lo: f64, hi: f64) -> impl Iterator<Item = usize> + '_ {
        let (start, end) = if hi < self.y_min || lo > self.y_max {
            (0, 0)
        } else {
            (self.strip(lo), self.strip(hi) + 1)
        };
        (start..end).flat_map(move |s| self.edges[s].iter().map(|&e| e as usize))
    }
}

impl BoundaryRegion {
    /// Takes curve samples in parameter order. A duplicated endpoint (first
    /// equal to last) is dropped.
    pub fn new(mut samples: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        if samples.len() >= 2 {
            let (first, last) = (samples[0], samples[samples.len() - 1]);
            if (first - last).norm() <= 1e-15 * (1.0 + first.norm()) {
                samples.pop();
            }
        }
        if samples.len() < 3 {
            return Err(Error::InvalidParameter("a closed curve needs at least 3 samples".into()));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("curve samples must be finite".into()));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::OutOfRange { name: "tolerance", value: tolerance });
        }
        let strips = StripIndex::build(&samples);
        Ok(Self { samples, tolerance, strips })
    }

    /// Samples `f(e^{i t})` at `resolution` equally spaced `t` in [0, 2pi).
    pub fn from_parametrization<F>(f: F, resolution: usize, tolerance: f64) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let h = std::f64::consts::TAU / resolution as f64;
        Self::new((0..resolution).map(|k| f(k as f64 * h)).collect(), tolerance)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn edge(&self, i: usize) -> (Complex64, Complex64) {
        (self.samples[i], self.samples[(i + 1) % self.samples.len()])
    }

    fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        (0..self.samples.len()).map(move |i| self.edge(i))
    }

    /// Signed number of turns the polygon makes around `p`.
    pub fn winding_number(&self, p: Complex64) -> i32 {
        let mut wn = 0;
        // only edges spanning the height of p can cross the rightward ray
        for (a, b) in self.strips.near(p.im, p.im).map(|i| self.edge(i)) {
            let cross = (b.re - a.re) * (p.im - a.im) - (p.re - a.re) * (b.im - a.im);
            if a.im <= p.im {
                if b.im > p.im && cross > 0.0 {
                    wn += 1;
                }
            } else if b.im <= p.im && cross < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    /// Euclidean distance from `p` to the polygon.
    pub fn distance(&self, p: Complex64) -> f64 {
        self.edges()
            .map(|(a, b)| segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn classify(&self, p: Complex64) -> Containment {
        // any edge within the tolerance lies in the strips around p.im
        let tol = self.tolerance;
        let d = self
            .strips
            .near(p.im - tol, p.im + tol)
            .map(|i| {
                let (a, b) = self.edge(i);
                segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min);
        if d <= tol {
            return Containment::OnBoundary { distance: d };
        }
        match self.winding_number(p) {
            0 => Containment::Outside,
            w => Containment::Inside { winding: w },
        }
    }

    /// Longest edge of the polygon, including the closing one.
    pub fn max_gap(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).fold(0.0, f64::max)
    }

    pub fn centroid(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    /// SVG path data, one `M`/`L` command per sample, closed with `Z`.
    pub fn svg_path(&self) -> String {
        let mut d = String::new();
        for (k, z) in self.samples.iter().enumerate() {
            let cmd = if k == 0 { 'M' } else { 'L' };
            // y is flipped so the picture has the usual orientation
            let _ = write!(d, "{cmd}{:.9} {:.9} ", z.re, -z.im);
        }
        d.push('Z');
        d
    }

    /// Standalone SVG document containing the curve as a single path.
    pub fn to_svg(&self) -> String {
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in &self.samples {
            xmin = xmin.min(z.re);
            xmax = xmax.max(z.re);
            ymin = ymin.min(-z.im);
            ymax = ymax.max(-z.im);
        }
        let pad = 0.05 * (xmax - xmin).max(ymax - ymin).max(1e-9);
        let (x0, y0) = (xmin - pad, ymin - pad);
        let (w, h) = (xmax - xmin + 2.0 * pad, ymax - ymin + 2.0 * pad);
        let stroke = 0.002 * w.max(h);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.9} {y0:.9} {w:.9} {h:.9}\">\n\
             <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke:.9}\"/>\n</svg>\n",
            self.svg_path()
        )
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}
