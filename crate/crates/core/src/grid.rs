use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

/// Polar sampling of the open unit disk: `angles_per_radius` equally spaced
/// angles on each circle `|z| = r`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvaluationGrid {
    radii: Vec<f64>,
    angles_per_radius: usize,
}

/// A grid sample and its position in the sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub z: Complex64,
    pub radius_index: usize,
    pub angle_index: usize,
}

impl EvaluationGrid {
    pub const DEFAULT_RADII: [f64; 8] = [0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.9999, 0.99999];
    pub const DEFAULT_ANGLES: usize = 512;

    pub fn new(radii: Vec<f64>, angles_per_radius: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii"));
        }
        if angles_per_radius == 0 {
            return Err(Error::InvalidGrid("zero angles per radius"));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::InvalidGrid("radii must lie in (0, 1)"));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing"));
        }
        Ok(Self {
            radii,
            angles_per_radius,
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_radius(&self) -> usize {
        self.angles_per_radius
    }

    pub fn max_radius(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_radius
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn angle(&self, angle_index: usize) -> f64 {
        TAU * angle_index as f64 / self.angles_per_radius as f64
    }

    /// Samples in sweep order: radius-major, angle-minor.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.radii.iter().enumerate().flat_map(move |(ri, &r)| {
            (0..self.angles_per_radius).map(move |ai| GridPoint {
                z: Complex64::from_polar(r, self.angle(ai)),
                radius_index: ri,
                angle_index: ai,
            })
        })
    }
}

impl Default for EvaluationGrid {
    fn default() -> Self {
        Self {
            radii: Self::DEFAULT_RADII.to_vec(),
            angles_per_radius: Self::DEFAULT_ANGLES,
        }
    }
}

/// Location and value of an extremum found by a grid sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub z: Complex64,
    pub radius: f64,
    pub angle: f64,
    pub radius_index: usize,
    pub angle_index: usize,
}

/// Minimizes `functional` over the grid. Ties go to the smallest angle
/// index, then the smallest radius index, so the result does not depend on
/// the order in which samples were produced.
pub fn grid_minimum(
    grid: &EvaluationGrid,
    mut functional: impl FnMut(Complex64) -> Result<f64>,
) -> Result<Extremum> {
    let mut best: Option<Extremum> = None;
    for p in grid.points() {
        let value = functional(p.z)?;
        let candidate = Extremum {
            value,
            z: p.z,
            radius: grid.radii[p.radius_index],
            angle: grid.angle(p.angle_index),
            radius_index: p.radius_index,
            angle_index: p.angle_index,
        };
        best = Some(match best {
            None => candidate,
            Some(b) if precedes(&candidate, &b) => candidate,
            Some(b) => b,
        });
    }
    let mut best = best.ok_or(Error::InvalidGrid("empty grid"))?;
    refine_angle(grid, &mut best, &mut functional)?;
    Ok(best)
}

/// Maximizes `functional` over the grid with the same tie rule.
pub fn grid_maximum(
    grid: &EvaluationGrid,
    mut functional: impl FnMut(Complex64) -> Result<f64>,
) -> Result<Extremum> {
    let mut ext = grid_minimum(grid, |z| functional(z).map(|v| -v))?;
    ext.value = -ext.value;
    Ok(ext)
}

fn precedes(a: &Extremum, b: &Extremum) -> bool {
    if a.value != b.value {
        return a.value < b.value;
    }
    (a.angle_index, a.radius_index) < (b.angle_index, b.radius_index)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
pub(crate) fn golden_section(
    mut lo: f64,
    mut hi: f64,
    iterations: usize,
    f: &mut impl FnMut(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iterations {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// One golden-section pass along the circle through the grid extremum,
/// bracketed by the neighbouring angles.
fn refine_angle(
    grid: &EvaluationGrid,
    best: &mut Extremum,
    functional: &mut impl FnMut(Complex64) -> Result<f64>,
) -> Result<()> {
    let step = TAU / grid.angles_per_radius as f64;
    let r = best.radius;
    let (theta, value) = golden_section(best.angle - step, best.angle + step, 48, &mut |t| {
        functional(Complex64::from_polar(r, t))
    })?;
    if value < best.value {
        best.value = value;
        let wrapped = theta % TAU;
        best.angle = if wrapped < 0.0 {
            wrapped + TAU
        } else {
            wrapped
        };
        best.z = Complex64::from_polar(r, best.angle);
    }
    Ok(())
}
