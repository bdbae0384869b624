//! Exact binary forms `q(x, y) = Σ cₐ xᵃ y^(d−a)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::mat2::Mat2;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    /// `coeffs[a]` multiplies `xᵃ y^(degree−a)`.
    coeffs: Vec<Coefficient>,
}

/// A binary form split as `xᵃ · yᵇ · r(x, y)` with `r(x, 1)` written as
/// a product of square-free factors.
#[derive(Clone, Debug)]
pub struct FormFactorization {
    /// Power of `x`: the zero `(0:1)` with this multiplicity.
    pub x_power: usize,
    /// Power of `y`: the zero `(1:0)` with this multiplicity.
    pub y_power: usize,
    /// `(gₖ, k)`: monic square-free `gₖ(t)` whose roots `t` are zeros
    /// `(t:1)` of multiplicity `k`.
    pub squarefree: Vec<(UPoly, usize)>,
}

impl BinaryForm {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Coefficient::zero(); degree + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Coefficient>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        Self {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    /// `c · xⁿ yᵐ`.
    pub fn monomial(n: usize, m: usize, c: Coefficient) -> Self {
        let mut f = Self::zero(n + m);
        f.set(n, c);
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, x_power: usize) -> &Coefficient {
        &self.coeffs[x_power]
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn set(&mut self, x_power: usize, c: Coefficient) {
        self.coeffs[x_power] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `Some((n, m))` when the form is a single term `c·xⁿ yᵐ`.
    pub fn monomial_exponents(&self) -> Option<(usize, usize)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (a, _) = it.next()?;
        it.next().is_none().then_some((a, self.degree - a))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Coefficient::to_complex).collect()
    }

    /// Evaluates at the point `(x, y)` in floating point.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        let mut xp = Complex64::one();
        let ypow: Vec<Complex64> = powers(y, self.degree);
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c.to_complex() * xp * ypow[self.degree - a];
            }
            xp *= x;
        }
        acc
    }

    /// Coefficients of `q(A·(x, y))`, i.e. the substitution
    /// `x ↦ a x + b y`, `y ↦ c x + d y`.
    pub fn substitute(&self, m: &Mat2) -> Vec<Complex64> {
        let [a, b, c, d] = m.0;
        // (a x + b y)^k and (c x + d y)^k as coefficient vectors in x-power
        let lx = linear_powers(a, b, self.degree);
        let ly = linear_powers(c, d, self.degree);
        let mut out = vec![Complex64::zero(); self.degree + 1];
        for (k, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let cz = coef.to_complex();
            let px = &lx[k];
            let py = &ly[self.degree - k];
            for (i, u) in px.iter().enumerate() {
                for (j, v) in py.iter().enumerate() {
                    out[i + j] += cz * u * v;
                }
            }
        }
        out
    }

    /// Splits off the monomial part exactly and decomposes the remaining
    /// dehomogenized polynomial into square-free factors. `None` for zero.
    pub fn factorization(&self) -> Option<FormFactorization> {
        let lo = self.coeffs.iter().position(|c| !c.is_zero())?;
        let hi = self.coeffs.iter().rposition(|c| !c.is_zero())?;
        let rest = UPoly::new(self.coeffs[lo..=hi].to_vec());
        Some(FormFactorization {
            x_power: lo,
            y_power: self.degree - hi,
            squarefree: rest.squarefree_decomposition(),
        })
    }

    /// Dehomogenized remainder `r(t, 1)` after removing `xᵃ yᵇ`.
    pub(crate) fn affine_part(&self) -> Option<(usize, usize, UPoly)> {
        let lo = self.coeffs.iter().position(|c| !c.is_zero())?;
        let hi = self.coeffs.iter().rposition(|c| !c.is_zero())?;
        Some((
            lo,
            self.degree - hi,
            UPoly::new(self.coeffs[lo..=hi].to_vec()),
        ))
    }
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(n + 1);
    let mut p = Complex64::one();
    for _ in 0..=n {
        v.push(p);
        p *= z;
    }
    v
}

/// `(α x + β y)^k` for `k = 0..=n`, as coefficient vectors indexed by the
/// power of `x`.
fn linear_powers(alpha: Complex64, beta: Complex64, n: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = vec![Complex64::one()];
    for _ in 0..=n {
        out.push(cur.clone());
        let mut next = vec![Complex64::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * alpha;
            next[i] += c * beta;
        }
        cur = next;
    }
    out
}

/// Exact number of distinct zeros on `ℂℙ¹` of the product of the given
/// nonzero forms.
pub fn distinct_zero_count<'a, I: IntoIterator<Item = &'a BinaryForm>>(forms: I) -> usize {
    let mut has_x = false;
    let mut has_y = false;
    let mut prod = UPoly::one();
    for f in forms {
        if let Some((xp, yp, r)) = f.affine_part() {
            has_x |= xp > 0;
            has_y |= yp > 0;
            prod = prod.mul(&r);
        }
    }
    prod.distinct_root_count() + usize::from(has_x) + usize::from(has_y)
}
