//! Complex 2×2 matrices and tolerance-based lookup.

use alloc::vec::Vec;
use core::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Zero};

/// Row-major `[[a, b], [c, d]]`, acting on column vectors `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [Complex64; 4]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([a, b, c, d])
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::one(), Complex64::one())
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self([a, Complex64::zero(), Complex64::zero(), d])
    }

    /// Matrix whose columns are `p` and `q`.
    pub fn from_columns(p: [Complex64; 2], q: [Complex64; 2]) -> Self {
        Self([p[0], q[0], p[1], q[1]])
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.0;
        a * d - b * c
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        let [a, b, c, d] = self.0;
        Some(Self([d / det, -b / det, -c / det, a / det]))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|e| e * s))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|e| -e))
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let [a, b, c, d] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Scales to determinant one (one of the two square roots is chosen).
    pub fn to_unit_det(&self) -> Self {
        self.scale(Complex64::one() / self.det().sqrt())
    }

    /// Relative Frobenius distance `‖a − b‖ / max(‖a‖, ‖b‖, 1)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let diff = Self(core::array::from_fn(|k| self.0[k] - other.0[k])).frobenius();
        diff / self.frobenius().max(other.frobenius()).max(1.0)
    }

    /// Distance in `PSL(2)`: the smaller of the distances to `other` and
    /// `−other`.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        self.distance(other).min(self.distance(&other.neg()))
    }

    pub fn is_scalar(&self, tol: f64) -> bool {
        let [a, b, c, d] = self.0;
        let s = self.frobenius().max(1.0);
        b.norm() <= tol * s && c.norm() <= tol * s && (a - d).norm() <= tol * s
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

const KEY_WEIGHTS: [f64; 8] = [1.0, 0.618, 0.414, 0.732, 0.302, 0.847, 0.161, 0.557];

fn key(m: &Mat2) -> f64 {
    m.0.iter()
        .enumerate()
        .map(|(k, e)| KEY_WEIGHTS[2 * k] * e.re + KEY_WEIGHTS[2 * k + 1] * e.im)
        .sum()
}

/// Finds stored matrices within a relative tolerance of a query, in
/// `O(log n)` plus the size of a thin window on a fixed linear functional.
#[derive(Clone, Debug)]
pub struct MatrixIndex {
    mats: Vec<Mat2>,
    sorted: Vec<(f64, usize)>,
    tol: f64,
}

impl MatrixIndex {
    pub fn new(mats: Vec<Mat2>, tol: f64) -> Self {
        let mut sorted: Vec<(f64, usize)> =
            mats.iter().enumerate().map(|(i, m)| (key(m), i)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { mats, sorted, tol }
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.mats
    }

    /// Index of the stored matrix closest to `m`, if within tolerance.
    pub fn find(&self, m: &Mat2) -> Option<usize> {
        let k = key(m);
        let weight_sum: f64 = KEY_WEIGHTS.iter().sum();
        let window = 2.0 * weight_sum * self.tol * (m.frobenius() + 1.0);
        let start = self.sorted.partition_point(|(v, _)| *v < k - window);
        let mut best: Option<(f64, usize)> = None;
        for &(v, i) in &self.sorted[start..] {
            if v > k + window {
                break;
            }
            let d = self.mats[i].distance(m);
            if d <= self.tol && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Lookup up to sign.
    pub fn find_projective(&self, m: &Mat2) -> Option<usize> {
        self.find(m).or_else(|| self.find(&m.neg()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat2::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 0.0), c(3.0, -1.0));
        let p = m * m.inverse().unwrap();
        assert!(p.distance(&Mat2::identity()) < 1e-14);
        assert!((m.to_unit_det().det() - Complex64::one()).norm() < 1e-14);
    }

    #[test]
    fn index_finds_neighbours() {
        let mats: Vec<Mat2> = (0..50)
            .map(|k| {
                let t = k as f64 * 0.1;
                Mat2::new(c(t.cos(), t.sin()), c(0.0, 0.0), c(0.0, t), c(1.0, 0.0))
            })
            .collect();
        let idx = MatrixIndex::new(mats.clone(), 1e-7);
        for (i, m) in mats.iter().enumerate() {
            let mut q = *m;
            q.0[2] += c(1e-10, -1e-10);
            assert_eq!(idx.find(&q), Some(i));
            assert_eq!(idx.find_projective(&q.neg()), Some(i));
        }
        let far = Mat2::diag(c(5.0, 0.0), c(5.0, 0.0));
        assert_eq!(idx.find(&far), None);
    }
}
