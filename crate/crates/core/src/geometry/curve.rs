use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::series::{is_finite, PowerSeries};
use crate::{Error, Result};

/// Points closer than this to a sampled curve have no reliable winding
/// number.
pub const ON_CURVE_TOLERANCE: f64 = 1e-9;

/// Minimum number of samples on a boundary curve.
pub const MIN_CURVE_SAMPLES: usize = 256;

/// Image of the circle `|z| = rho` under an analytic map, sampled at
/// `rho e^{2 pi i k / M}` and closed by joining the last sample to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    rho: f64,
    points: Vec<Complex64>,
}

impl BoundaryCurve {
    pub fn sample(f: &PowerSeries, rho: f64, samples: usize) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::OutOfRange {
                name: "rho",
                value: rho,
            });
        }
        Self::from_points(
            rho,
            (0..samples)
                .map(|k| f.eval(Self::node(rho, k, samples)))
                .collect(),
        )
    }

    pub fn from_points(rho: f64, points: Vec<Complex64>) -> Result<Self> {
        if points.len() < MIN_CURVE_SAMPLES {
            return Err(Error::InvalidGrid(
                "boundary curve needs at least 256 samples",
            ));
        }
        if !points.iter().copied().all(is_finite) {
            return Err(Error::NonFinite("boundary curve"));
        }
        Ok(Self { rho, points })
    }

    /// The `k`-th sampling node `rho e^{2 pi i k / m}`.
    pub fn node(rho: f64, k: usize, m: usize) -> Complex64 {
        Complex64::from_polar(rho, TAU * k as f64 / m as f64)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn segment(&self, k: usize) -> (Complex64, Complex64) {
        let n = self.points.len();
        (self.points[k % n], self.points[(k + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        (0..self.points.len()).map(move |k| self.segment(k))
    }

    /// Same curve traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self {
            rho: self.rho,
            points,
        }
    }

    /// Same curve with samples cyclically shifted by `by`.
    pub fn rotated(&self, by: usize) -> Self {
        let mut points = self.points.clone();
        let n = points.len();
        points.rotate_left(by % n);
        Self {
            rho: self.rho,
            points,
        }
    }

    /// Distance from `w` to the polyline and the index of the nearest segment.
    pub fn distance(&self, w: Complex64) -> (f64, usize) {
        self.segments()
            .enumerate()
            .map(|(k, (a, b))| (point_segment_distance(w, a, b), k))
            .fold(
                (f64::INFINITY, 0),
                |best, cur| if cur.0 < best.0 { cur } else { best },
            )
    }

    /// Looks for a pair of non-adjacent segments that cross.
    ///
    /// Segments are swept in order of their left end; a segment is only
    /// compared with the active ones whose x-extent still overlaps it.
    pub fn find_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.points.len();
        let mut order: Vec<usize> = (0..n).collect();
        let bounds = |k: usize| {
            let (a, b) = self.segment(k);
            (a.re.min(b.re), a.re.max(b.re))
        };
        order.sort_by(|&i, &j| bounds(i).0.total_cmp(&bounds(j).0).then(i.cmp(&j)));
        let mut active: Vec<usize> = Vec::new();
        for &k in &order {
            let (lo, _) = bounds(k);
            active.retain(|&j| bounds(j).1 >= lo);
            let (a, b) = self.segment(k);
            for &j in &active {
                if adjacent(j, k, n) {
                    continue;
                }
                let (c, d) = self.segment(j);
                if segments_intersect(a, b, c, d) {
                    return Some((j.min(k), j.max(k)));
                }
            }
            active.push(k);
        }
        None
    }
}

fn adjacent(i: usize, j: usize, n: usize) -> bool {
    i == j || (i + 1) % n == j || (j + 1) % n == i
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn on_segment(p: Complex64, a: Complex64, b: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

pub(crate) fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Even-odd ray test. For a simple curve this is `winding != 0`.
pub(crate) fn encloses(curve: &BoundaryCurve, w: Complex64) -> bool {
    let mut inside = false;
    for (a, b) in curve.segments() {
        if (a.im > w.im) != (b.im > w.im) {
            let x = a.re + (w.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if x > w.re {
                inside = !inside;
            }
        }
    }
    inside
}

/// Winding number of the closed polyline around `w`: the signed angle swept
/// by `p_k - w` over one traversal, divided by `2 pi` and rounded.
pub fn winding_number(curve: &BoundaryCurve, w: Complex64) -> Result<i32> {
    let (distance, _) = curve.distance(w);
    if distance < ON_CURVE_TOLERANCE {
        return Err(Error::PointOnCurve { distance });
    }
    let total: f64 = curve
        .segments()
        .map(|(a, b)| ((b - w) / (a - w)).arg())
        .sum();
    Ok(libm::round(total / (2.0 * PI)) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(r: f64, m: usize) -> BoundaryCurve {
        BoundaryCurve::from_points(0.5, (0..m).map(|k| BoundaryCurve::node(r, k, m)).collect())
            .unwrap()
    }

    #[test]
    fn unit_circle_winding() {
        let c = circle(1.0, 256);
        assert_eq!(winding_number(&c, Complex64::new(0.0, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&c, Complex64::new(2.0, 0.0)).unwrap(), 0);
        assert_eq!(
            winding_number(&c.reversed(), Complex64::new(0.1, 0.2)).unwrap(),
            -1
        );
    }

    #[test]
    fn image_of_quadratic_contains_image_of_origin() {
        let f = PowerSeries::quadratic(Complex64::new(0.4, 0.0), 4).unwrap();
        let curve = BoundaryCurve::sample(&f, 0.9, 512).unwrap();
        assert_eq!(
            winding_number(&curve, f.eval(Complex64::new(0.0, 0.0))).unwrap(),
            1
        );
        assert!(curve.find_self_intersection().is_none());
    }

    #[test]
    fn on_curve_is_an_error() {
        let c = circle(1.0, 256);
        let vertex = c.points()[3];
        assert!(matches!(
            winding_number(&c, vertex),
            Err(Error::PointOnCurve { .. })
        ));
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(
            BoundaryCurve::from_points(0.5, alloc::vec![Complex64::new(0.0, 0.0); 10]).is_err()
        );
    }

    #[test]
    fn figure_eight_self_intersects() {
        // lemniscate of Gerono, crossing itself at the origin
        let m = 512;
        let pts = (0..m)
            .map(|k| {
                let t = TAU * k as f64 / m as f64;
                Complex64::new(libm::sin(t), libm::sin(t) * libm::cos(t))
            })
            .collect();
        let c = BoundaryCurve::from_points(0.9, pts).unwrap();
        assert!(c.find_self_intersection().is_some());
    }

    #[test]
    fn ray_test_matches_winding_on_simple_curve() {
        let f = PowerSeries::quadratic(Complex64::new(0.3, 0.2), 4).unwrap();
        let curve = BoundaryCurve::sample(&f, 0.95, 256).unwrap();
        for k in 0..400 {
            let w = Complex64::new(
                -1.5 + 3.0 * (k % 20) as f64 / 19.0,
                -1.5 + 3.0 * (k / 20) as f64 / 19.0,
            );
            if let Ok(n) = winding_number(&curve, w) {
                assert_eq!(encloses(&curve, w), n == 1);
            }
        }
    }

    #[test]
    fn double_traversal_of_circle_is_caught() {
        let f = PowerSeries::from_real(&[0.0, 0.0, 1.0]).unwrap();
        let curve = BoundaryCurve::sample(&f, 0.8, 512).unwrap();
        assert!(curve.find_self_intersection().is_some());
    }

    #[test]
    fn segment_distance() {
        let a = Complex64::new(0.0, 0.0);
        let b = Complex64::new(2.0, 0.0);
        assert_eq!(point_segment_distance(Complex64::new(1.0, 0.5), a, b), 0.5);
        assert_eq!(point_segment_distance(Complex64::new(3.0, 0.0), a, b), 1.0);
    }
}
