//! Dense univariate polynomials over `ℚ(i)`, just enough for exact
//! square-free decomposition of dehomogenized slices.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::coeff::Coefficient;

/// Coefficients in ascending order; no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(pub Vec<Coefficient>);

impl UPoly {
    pub fn new(mut c: Vec<Coefficient>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    pub fn one() -> Self {
        Self(vec![Coefficient::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&Coefficient> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Self(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Coefficient::from_int(k as i64))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self(Vec::new());
        }
        let mut out = vec![Coefficient::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut out = vec![Coefficient::zero(); n];
        for (k, c) in self.0.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.0.iter().enumerate() {
            out[k] -= c;
        }
        Self::new(out)
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let lead_inv = d
            .lead()
            .expect("division by zero polynomial")
            .inv()
            .unwrap();
        let mut rem = self.0.clone();
        let dd = d.degree();
        if rem.len() < d.0.len() {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![Coefficient::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Yun's square-free decomposition: monic, pairwise coprime,
    /// square-free `gₖ` with `self = lead · Π gₖ^k`. Factors of degree 0
    /// are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let fp = self.derivative();
        let b = self.gcd(&fp);
        let mut c = self.exact_div(&b);
        let mut d = fp.exact_div(&b).sub(&c.derivative());
        let mut k = 1;
        while c.degree() > 0 {
            let a = c.gcd(&d);
            c = c.exact_div(&a);
            d = d.exact_div(&a).sub(&c.derivative());
            if a.degree() > 0 {
                out.push((a, k));
            }
            k += 1;
        }
        out
    }

    /// Number of distinct complex roots.
    pub fn distinct_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        self.degree() - self.gcd(&self.derivative()).degree()
    }

    pub fn to_complex(&self) -> Vec<num_complex::Complex64> {
        self.0.iter().map(Coefficient::to_complex).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&k| Coefficient::from_int(k)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn yun_multiplicities() {
        // (t^2+1)^3 (t-2)
        let base = p(&[1, 0, 1]);
        let f = base.mul(&base).mul(&base).mul(&p(&[-2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, alloc::vec![(p(&[-2, 1]), 1), (base, 3)]);
        assert_eq!(f.distinct_root_count(), 3);
    }

    #[test]
    fn division_identity() {
        let a = p(&[5, -3, 0, 2, 7]);
        let d = p(&[1, 4, 3]);
        let (q, r) = a.div_rem(&d);
        let back = q.mul(&d).sub(&a.sub(&r));
        assert!(back.is_zero());
        assert!(r.degree() < d.degree());
    }
}
