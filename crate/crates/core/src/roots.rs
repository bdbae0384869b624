//! Roots of univariate complex polynomials as eigenvalues of the
//! companion matrix, computed with shifted QR on the Hessenberg form.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

const MAX_SWEEPS_PER_ROOT: usize = 60;

/// Roots of `Σ coeffs[k] tᵏ` (ascending coefficients, nonzero leading
/// term). Each root is polished by a few Newton steps on the polynomial.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.is_zero()) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    match n {
        0 => return Vec::new(),
        1 => return vec![-c[0] / c[1]],
        _ => {}
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let mut h = companion(&monic);
    let mut eig = hessenberg_eigenvalues(&mut h, n);
    for z in eig.iter_mut() {
        *z = newton_polish(&monic, *z);
    }
    eig
}

/// Companion matrix (row-major, `n×n`) of a monic polynomial: ones on the
/// subdiagonal, `−cₖ` in the last column. Already upper Hessenberg.
fn companion(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let mut m = vec![Complex64::zero(); n * n];
    for i in 1..n {
        m[i * n + i - 1] = Complex64::one();
    }
    for i in 0..n {
        m[i * n + n - 1] = -monic[i];
    }
    m
}

fn hessenberg_eigenvalues(h: &mut [Complex64], n: usize) -> Vec<Complex64> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut out = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            out.push(h[idx(0, 0)]);
            break;
        }
        // deflation: find the lowest l with negligible h[l][l-1]
        let mut l = hi;
        while l > 0 {
            let s = h[idx(l - 1, l - 1)].norm() + h[idx(l, l)].norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[idx(l, l - 1)].norm() <= f64::EPSILON * s {
                h[idx(l, l - 1)] = Complex64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            out.push(h[idx(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > MAX_SWEEPS_PER_ROOT * n {
            // give up on convergence; remaining diagonal entries are the
            // best estimates and Newton polishing follows
            for k in (0..=hi).rev() {
                out.push(h[idx(k, k)]);
            }
            break;
        }
        let shift = if iter % 11 == 10 {
            // exceptional shift
            h[idx(hi, hi)] + Complex64::new(h[idx(hi, hi - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(
                h[idx(hi - 1, hi - 1)],
                h[idx(hi - 1, hi)],
                h[idx(hi, hi - 1)],
                h[idx(hi, hi)],
            )
        };
        qr_step(h, n, l, hi, shift);
    }
    out
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr * 0.25 - det).sqrt();
    let l1 = tr * 0.5 + disc;
    let l2 = tr * 0.5 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the active window `lo..=hi` using
/// Givens rotations; rotations are applied to the full rows/columns of the
/// window only, which is enough for eigenvalues.
fn qr_step(h: &mut [Complex64], n: usize, lo: usize, hi: usize, shift: Complex64) {
    let idx = |i: usize, j: usize| i * n + j;
    for k in lo..=hi {
        h[idx(k, k)] -= shift;
    }
    let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[idx(k, k)];
        let b = h[idx(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::one(), Complex64::zero())
        } else {
            (a / r, b / r)
        };
        // G = [[c*, s*], [-s, c]] applied to rows k, k+1
        for j in k..=hi {
            let x = h[idx(k, j)];
            let y = h[idx(k + 1, j)];
            h[idx(k, j)] = c.conj() * x + s.conj() * y;
            h[idx(k + 1, j)] = -s * x + c * y;
        }
        rots.push((c, s));
    }
    for (off, (c, s)) in rots.into_iter().enumerate() {
        let k = lo + off;
        // multiply columns k, k+1 on the right by Gᴴ
        for i in lo..=hi.min(k + 2) {
            let x = h[idx(i, k)];
            let y = h[idx(i, k + 1)];
            h[idx(i, k)] = x * c + y * s;
            h[idx(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }
    for k in lo..=hi {
        h[idx(k, k)] += shift;
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn newton_polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut p, _) = horner(c, z);
    for _ in 0..8 {
        let (_, dp) = horner(c, z);
        if dp.is_zero() {
            break;
        }
        let cand = z - p / dp;
        let (pc, _) = horner(c, cand);
        if !(pc.norm() < p.norm()) {
            break;
        }
        z = cand;
        p = pc;
    }
    z
}

/// `max |p(root)| / max |coeff|` over the given roots, evaluated in the
/// chart where the root has modulus at most one.
pub fn max_residual(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
    roots
        .iter()
        .map(|&z| {
            if z.norm() <= 1.0 {
                horner(coeffs, z).0.norm()
            } else {
                horner(&rev, z.inv()).0.norm()
            }
        })
        .fold(0.0, f64::max)
        / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut c = vec![Complex64::one()];
        for r in roots {
            let mut next = vec![Complex64::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        c
    }

    fn matches(found: &[Complex64], expected: &[Complex64], tol: f64) -> bool {
        let mut used = vec![false; expected.len()];
        found.len() == expected.len()
            && found.iter().all(|f| {
                match expected
                    .iter()
                    .enumerate()
                    .find(|(i, e)| !used[*i] && (*f - **e).norm() < tol)
                {
                    Some((i, _)) => {
                        used[i] = true;
                        true
                    }
                    None => false,
                }
            })
    }

    #[test]
    fn tenth_roots_of_minus_one() {
        let mut c = vec![Complex64::zero(); 11];
        c[0] = Complex64::one();
        c[10] = Complex64::one();
        let roots = polynomial_roots(&c);
        let expected: Vec<Complex64> = (0..10)
            .map(|k| Complex64::from_polar(1.0, PI * (2 * k + 1) as f64 / 10.0))
            .collect();
        assert!(matches(&roots, &expected, 1e-12));
        assert!(max_residual(&c, &roots) < 1e-12);
    }

    #[test]
    fn recovers_scattered_roots() {
        let expected = [
            Complex64::new(3.0, -1.0),
            Complex64::new(-0.25, 0.5),
            Complex64::new(0.0, 2.0),
            Complex64::new(-7.0, 0.0),
            Complex64::new(0.1, 0.1),
            Complex64::new(1.5, 1.5),
        ];
        let roots = polynomial_roots(&from_roots(&expected));
        assert!(matches(&roots, &expected, 1e-9));
    }

    #[test]
    fn linear_and_constant() {
        assert!(polynomial_roots(&[Complex64::one()]).is_empty());
        let r = polynomial_roots(&[Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)]);
        assert!((r[0] + Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }
}
