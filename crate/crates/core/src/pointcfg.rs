//! Zeros of the slices as a labeled point configuration on `ℂℙ¹`.
//!
//! A slice `qᵢ` vanishes on finitely many points `(x : y)`; each carries the
//! multiplicity with which it occurs in every slice. The monomial part
//! `xᵃ yᵇ` is split off exactly (contributing `(0:1)` with multiplicity `a`
//! and `(1:0)` with multiplicity `b`); the remainder is made square-free
//! exactly and only its simple roots are found numerically.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::binary::{distinct_zero_count, BinaryForm};
use crate::error::{Error, Result};
use crate::roots::{max_residual, polynomial_roots};
use crate::surface::SurfaceForm;
use crate::Tolerances;

/// Residual bound for numerically found roots, relative to the largest
/// coefficient of the square-free factor.
const ROOT_RESIDUAL: f64 = 1e-8;

/// A point of `ℂℙ¹` stored with its larger coordinate equal to `1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectivePoint {
    pub u: Complex64,
    pub v: Complex64,
}

impl ProjectivePoint {
    /// Canonical representative of `(u : v)`. Panics on `(0, 0)`.
    pub fn new(u: Complex64, v: Complex64) -> Self {
        assert!(
            !(u.is_zero() && v.is_zero()),
            "(0:0) is not a projective point"
        );
        if u.norm() >= v.norm() {
            Self {
                u: Complex64::one(),
                v: v / u,
            }
        } else {
            Self {
                u: u / v,
                v: Complex64::one(),
            }
        }
    }

    /// The point `(t : 1)`.
    pub fn affine(t: Complex64) -> Self {
        Self::new(t, Complex64::one())
    }

    pub fn zero() -> Self {
        Self::new(Complex64::zero(), Complex64::one())
    }

    pub fn infinity() -> Self {
        Self::new(Complex64::one(), Complex64::zero())
    }

    pub fn coords(&self) -> [Complex64; 2] {
        [self.u, self.v]
    }

    /// Chordal distance `|u₁v₂ − u₂v₁| / (‖p₁‖ ‖p₂‖)`, in `[0, 1]`.
    pub fn chordal(&self, other: &Self) -> f64 {
        let cross = (self.u * other.v - other.u * self.v).norm();
        let n1 = (self.u.norm_sqr() + self.v.norm_sqr()).sqrt();
        let n2 = (other.u.norm_sqr() + other.v.norm_sqr()).sqrt();
        cross / (n1 * n2)
    }

    fn sort_key(&self) -> [f64; 4] {
        [self.u.re, self.u.im, self.v.re, self.v.im]
    }

    pub(crate) fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.sort_key(), other.sort_key());
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

/// Multiplicity of a point in each slice `q₀..q₅`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub mult: [u32; 6],
}

impl Label {
    pub fn single(slice: usize, mult: u32) -> Self {
        let mut l = Self::default();
        l.mult[slice] = mult;
        l
    }
}

#[derive(Clone, Debug)]
pub struct LabeledConfig {
    pub points: Vec<(ProjectivePoint, Label)>,
    /// Smallest chordal distance between two listed points (1 when fewer
    /// than two points).
    pub condition_margin: f64,
}

impl LabeledConfig {
    /// Builds a configuration from explicit points, merging duplicates
    /// within the cluster tolerance and sorting canonically.
    pub fn from_points(points: Vec<(ProjectivePoint, Label)>, tol: &Tolerances) -> Result<Self> {
        let mut merged: Vec<(ProjectivePoint, Label)> = Vec::with_capacity(points.len());
        for (p, lab) in points {
            merge_point(&mut merged, p, &lab, tol.cluster)?;
        }
        Ok(Self::finish(merged))
    }

    fn finish(mut points: Vec<(ProjectivePoint, Label)>) -> Self {
        points.sort_by(|a, b| a.0.lex_cmp(&b.0));
        let mut margin: f64 = 1.0;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                margin = margin.min(points[i].0.chordal(&points[j].0));
            }
        }
        Self {
            points,
            condition_margin: margin,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total multiplicity per slice.
    pub fn slice_totals(&self) -> [u32; 6] {
        let mut t = [0u32; 6];
        for (_, l) in &self.points {
            for (k, m) in l.mult.iter().enumerate() {
                t[k] += m;
            }
        }
        t
    }

    /// Index of the point within `tol` of `p`.
    pub fn locate(&self, p: &ProjectivePoint, tol: f64) -> Option<usize> {
        self.points.iter().position(|(q, _)| q.chordal(p) < tol)
    }
}

fn merge_point(
    acc: &mut Vec<(ProjectivePoint, Label)>,
    p: ProjectivePoint,
    lab: &Label,
    eps: f64,
) -> Result<()> {
    let mut hit = None;
    for (k, (q, _)) in acc.iter().enumerate() {
        let d = q.chordal(&p);
        if d < eps {
            hit = Some(k);
        } else if d < 10.0 * eps {
            return Err(Error::IllConditioned { distance: d });
        }
    }
    match hit {
        Some(k) => {
            for (m, add) in acc[k].1.mult.iter_mut().zip(lab.mult.iter()) {
                *m += add;
            }
        }
        None => acc.push((p, *lab)),
    }
    Ok(())
}

/// Zeros of a nonzero binary form with multiplicities summing to its
/// degree.
pub fn binary_form_roots(
    q: &BinaryForm,
    tol: &Tolerances,
) -> Result<Vec<(ProjectivePoint, usize)>> {
    let fact = q
        .factorization()
        .ok_or_else(|| Error::Invalid("cannot factor the zero form".into()))?;
    let mut out = Vec::new();
    if fact.x_power > 0 {
        out.push((ProjectivePoint::zero(), fact.x_power));
    }
    if fact.y_power > 0 {
        out.push((ProjectivePoint::infinity(), fact.y_power));
    }
    for (g, k) in &fact.squarefree {
        let coeffs = g.to_complex();
        let roots = polynomial_roots(&coeffs);
        let res = max_residual(&coeffs, &roots);
        if !(res < ROOT_RESIDUAL) {
            return Err(Error::ToleranceBreakdown(format!(
                "root residual {res:e} exceeds {ROOT_RESIDUAL:e}"
            )));
        }
        out.extend(roots.into_iter().map(|t| (ProjectivePoint::affine(t), *k)));
    }
    // every listed zero is exactly distinct; numerical coincidence means the
    // data cannot be separated at this tolerance
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let d = out[i].0.chordal(&out[j].0);
            if d < 10.0 * tol.cluster {
                return Err(Error::IllConditioned { distance: d });
            }
        }
    }
    Ok(out)
}

/// Merges the zeros of `q₀..q₄` into one labeled configuration.
pub fn build_config(sf: &SurfaceForm, tol: &Tolerances) -> Result<LabeledConfig> {
    let mut merged: Vec<(ProjectivePoint, Label)> = Vec::new();
    for (i, q) in sf.nonconstant_slices() {
        for (p, k) in binary_form_roots(q, tol)? {
            merge_point(&mut merged, p, &Label::single(i, k as u32), tol.cluster)?;
        }
    }
    let exact = distinct_zero_count(sf.nonconstant_slices().map(|(_, q)| q));
    if exact != merged.len() {
        return Err(Error::ToleranceBreakdown(format!(
            "found {} distinct zeros numerically but {} exactly",
            merged.len(),
            exact
        )));
    }
    Ok(LabeledConfig::finish(merged))
}
