//! Slow, independent recomputations used to cross-check the main path.
//!
//! Nothing here calls into the lattice solver or the Möbius search: the
//! diagonal count enumerates exponent pairs directly, and the
//! configuration count builds each candidate map from a null vector of a
//! linear system instead of the three-point frame construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;

use crate::binary::BinaryForm;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::pointcfg::{Label, LabeledConfig, ProjectivePoint};
use crate::surface::{validate, SurfaceForm};
use crate::Tolerances;

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `(a, b)` with `α = e^{2πi a/M}`, `β = e^{2πi b/M}`.
    Exponents(u64, u64),
    Matrix(Mat2),
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub method: String,
    pub count: usize,
    pub witnesses: Vec<Witness>,
}

/// Counts `(a, b) ∈ (ℤ/M)²` with `n a + m b ≡ 0 (mod M)` for every row.
pub fn brute_force_diagonal(rows: &[(u32, u32)], modulus: u64) -> Result<OracleReport> {
    if modulus == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    let mut witnesses = Vec::new();
    for a in 0..modulus {
        for b in 0..modulus {
            if rows
                .iter()
                .all(|&(n, m)| (u64::from(n) * a + u64::from(m) * b) % modulus == 0)
            {
                witnesses.push(Witness::Exponents(a, b));
            }
        }
    }
    Ok(OracleReport {
        method: format!("exhaustive exponent pairs mod {modulus}"),
        count: witnesses.len(),
        witnesses,
    })
}

/// [`brute_force_diagonal`] on the monomials of a surface whose
/// nonconstant slices are all monomials in `x, y`.
pub fn brute_force_diagonal_form(sf: &SurfaceForm, modulus: u64) -> Result<OracleReport> {
    let mut rows = Vec::new();
    for (i, q) in sf.nonconstant_slices() {
        let (n, m) = q
            .monomial_exponents()
            .ok_or_else(|| Error::Invalid(format!("slice q{i} is not a monomial in x and y")))?;
        rows.push((n as u32, m as u32));
    }
    brute_force_diagonal(&rows, modulus)
}

/// Null vector `(a, b, c, d)` of the three conditions `A pⱼ ∥ rⱼ`, as
/// signed 3×3 minors.
fn map_from_conditions(p: [[Complex64; 2]; 3], r: [[Complex64; 2]; 3]) -> Mat2 {
    let rows: Vec<[Complex64; 4]> = (0..3)
        .map(|j| {
            let [p0, p1] = p[j];
            let [r0, r1] = r[j];
            [-r1 * p0, -r1 * p1, r0 * p0, r0 * p1]
        })
        .collect();
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m = |i: usize, j: usize| rows[i][cols[j]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    Mat2([minor(0), -minor(1), minor(2), -minor(3)])
}

fn unit_det(m: &Mat2) -> Option<Mat2> {
    let det = m.0[0] * m.0[3] - m.0[1] * m.0[2];
    if det.norm() < 1e-12 * m.frobenius() * m.frobenius() {
        return None;
    }
    let s = Complex64::one() / det.sqrt();
    Some(Mat2(m.0.map(|e| e * s)))
}

fn same_up_to_sign(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    let scale = a.frobenius().max(b.frobenius()).max(1.0);
    let minus: f64 =
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
    let plus: f64 =
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (x + y).norm_sqr())
            .sum::<f64>()
            .sqrt();
    minus.min(plus) < tol * scale
}

fn chordal(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    (a[0] * b[1] - a[1] * b[0]).norm() / (na * nb)
}

fn permutes(pts: &[([Complex64; 2], Label)], m: &Mat2, tol: f64) -> bool {
    let mut used = vec![false; pts.len()];
    for (p, lab) in pts {
        let img = [m.0[0] * p[0] + m.0[1] * p[1], m.0[2] * p[0] + m.0[3] * p[1]];
        let hit = pts
            .iter()
            .enumerate()
            .find(|(k, (q, l))| !used[*k] && l == lab && chordal(img, *q) < tol);
        match hit {
            Some((k, _)) => used[k] = true,
            None => return false,
        }
    }
    true
}

/// Symmetry group of a labeled configuration, intersected over every
/// unordered anchor triple, with an exhaustive closure check.
pub fn brute_force_config_group(cfg: &LabeledConfig, tol: &Tolerances) -> Result<OracleReport> {
    let pts: Vec<([Complex64; 2], Label)> =
        cfg.points.iter().map(|(p, l)| (p.coords(), *l)).collect();
    let n = pts.len();
    if n < 3 {
        return Err(Error::Invalid("need at least three points".into()));
    }
    let mut group: Option<Vec<Mat2>> = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut found: Vec<Mat2> = Vec::new();
                for ra in (0..n).filter(|&k| pts[k].1 == pts[a].1) {
                    for rb in (0..n).filter(|&k| k != ra && pts[k].1 == pts[b].1) {
                        for rc in (0..n).filter(|&k| k != ra && k != rb && pts[k].1 == pts[c].1) {
                            let m = map_from_conditions(
                                [pts[a].0, pts[b].0, pts[c].0],
                                [pts[ra].0, pts[rb].0, pts[rc].0],
                            );
                            let Some(m) = unit_det(&m) else { continue };
                            if permutes(&pts, &m, tol.cluster)
                                && !found.iter().any(|f| same_up_to_sign(f, &m, tol.matching))
                            {
                                found.push(m);
                            }
                        }
                    }
                }
                group = Some(match group {
                    None => found,
                    Some(prev) => prev
                        .into_iter()
                        .filter(|g| found.iter().any(|f| same_up_to_sign(f, g, tol.matching)))
                        .collect(),
                });
            }
        }
    }
    let group = group.unwrap_or_default();
    for x in &group {
        for y in &group {
            let p = *x * *y;
            if !group.iter().any(|g| same_up_to_sign(g, &p, tol.matching)) {
                return Err(Error::ToleranceBreakdown(
                    "oracle symmetry set is not closed under composition".into(),
                ));
            }
        }
    }
    Ok(OracleReport {
        method: format!(
            "intersection over all {} anchor triples",
            n * (n - 1) * (n - 2) / 6
        ),
        count: group.len(),
        witnesses: group.into_iter().map(Witness::Matrix).collect(),
    })
}

fn small_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Coefficient {
    let v = rng.random_range(1..=3i64);
    Coefficient::from_int(if rng.random_bool(0.5) { v } else { -v })
}

fn random_slice<R: Rng + ?Sized>(rng: &mut R, i: usize, style: u32) -> BinaryForm {
    let deg = 10 - 2 * i;
    let mut f = BinaryForm::zero(deg);
    match style {
        // one monomial
        0 => f.set(rng.random_range(0..=deg), small_nonzero(rng)),
        // x^a y^b + x^b y^a
        1 => {
            let a = rng.random_range(0..=deg);
            let c = small_nonzero(rng);
            f.set(a, c.clone());
            f.set(deg - a, c);
        }
        // a few terms with small coefficients
        _ => {
            for _ in 0..rng.random_range(1..=3) {
                f.set(rng.random_range(0..=deg), small_nonzero(rng));
            }
        }
    }
    f
}

/// Draws slices until the surface is admissible and its configuration is
/// numerically well separated. `q₅ = 1`.
pub fn random_valid_surface<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerances) -> SurfaceForm {
    loop {
        let style = rng.random_range(0..3u32);
        let q: [BinaryForm; 6] = core::array::from_fn(|i| {
            if i == 5 {
                BinaryForm::from_coeffs(vec![Coefficient::one()])
            } else if rng.random_bool(0.5) {
                random_slice(rng, i, style)
            } else {
                BinaryForm::zero(10 - 2 * i)
            }
        });
        let sf = SurfaceForm::from_slices(q);
        if let Ok(report) = validate(&sf, tol) {
            if report.is_valid && report.warnings.is_empty() {
                return sf;
            }
        }
    }
}

/// Stereographic image of a nonzero vector in R^3 on the Riemann sphere.
pub fn stereographic(v: [f64; 3]) -> ProjectivePoint {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let [x, y, z] = v.map(|t| t / n);
    if z > 0.0 {
        ProjectivePoint::new(Complex64::new(1.0 + z, 0.0), Complex64::new(x, -y))
    } else {
        ProjectivePoint::new(Complex64::new(x, y), Complex64::new(1.0 - z, 0.0))
    }
}

/// Vertex sets of symmetric figures on the sphere.
fn figure<R: Rng + ?Sized>(rng: &mut R) -> Vec<ProjectivePoint> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw: Vec<[f64; 3]> = match rng.random_range(0..6u32) {
        0 => {
            let k = rng.random_range(3..=6);
            let poles = rng.random_range(0..3u32);
            let mut v: Vec<[f64; 3]> = (0..k)
                .map(|j| {
                    let t = 2.0 * core::f64::consts::PI * j as f64 / k as f64;
                    [t.cos(), t.sin(), 0.0]
                })
                .collect();
            if poles >= 1 {
                v.push([0.0, 0.0, 1.0]);
            }
            if poles == 2 {
                v.push([0.0, 0.0, -1.0]);
            }
            v
        }
        1 => vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        2 => vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        3 => {
            let mut v = Vec::new();
            for s in [
                [1.0, 1.0, 1.0],
                [1.0, 1.0, -1.0],
                [1.0, -1.0, 1.0],
                [1.0, -1.0, -1.0],
            ] {
                v.push(s);
                v.push(s.map(|t: f64| -t));
            }
            v
        }
        4 => {
            let mut v = Vec::new();
            for a in [1.0, -1.0] {
                for b in [phi, -phi] {
                    v.push([0.0, a, b]);
                    v.push([a, b, 0.0]);
                    v.push([b, 0.0, a]);
                }
            }
            v
        }
        _ => (0..rng.random_range(3..=6))
            .map(|_| {
                [
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ]
            })
            .collect(),
    };
    raw.into_iter().map(stereographic).collect()
}

/// A configuration of up to ~16 points built from one or two symmetric
/// figures, optional stray points, and a random Möbius change of
/// coordinates. Retries until the points are well separated.
pub fn random_config<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerances) -> LabeledConfig {
    loop {
        let mut pts: Vec<(ProjectivePoint, Label)> = Vec::new();
        for slot in 0..rng.random_range(1..=2usize) {
            let lab = Label::single(slot, rng.random_range(1..=2));
            pts.extend(figure(rng).into_iter().map(|p| (p, lab)));
        }
        for _ in 0..rng.random_range(0..=2usize) {
            let t = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            pts.push((ProjectivePoint::affine(t), Label::single(2, 1)));
        }
        let mut entry = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let m = Mat2([entry(), entry(), entry(), entry()]);
        if m.det().norm() < 0.3 {
            continue;
        }
        let moved: Vec<(ProjectivePoint, Label)> = pts
            .iter()
            .map(|(p, l)| {
                let [u, v] = m.apply(p.coords());
                (ProjectivePoint::new(u, v), *l)
            })
            .collect();
        let Ok(cfg) = LabeledConfig::from_points(moved, tol) else {
            continue;
        };
        if cfg.len() >= 3 && cfg.len() == pts.len() && cfg.condition_margin > 1e-2 {
            return cfg;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::{parse_polynomial, slice_decompose};
    use rand::SeedableRng;

    #[test]
    fn diagonal_counts() {
        assert_eq!(
            brute_force_diagonal(&[(1, 7), (9, 1)], 62).unwrap().count,
            62
        );
        assert_eq!(
            brute_force_diagonal(&[(1, 0), (0, 1)], 17).unwrap().count,
            1
        );
        assert_eq!(
            brute_force_diagonal(&[(2, 6), (8, 2)], 44).unwrap().count,
            44
        );
        assert!(brute_force_diagonal(&[(1, 0)], 0).is_err());
    }

    #[test]
    fn diagonal_from_form() {
        let sf =
            slice_decompose(&parse_polynomial("w^2 - z^5 - x*y^7*z - x^9*y").unwrap()).unwrap();
        assert_eq!(brute_force_diagonal_form(&sf, 62).unwrap().count, 62);
        let sf = slice_decompose(&parse_polynomial("w^2 - z^5 - x^10 - y^10").unwrap()).unwrap();
        assert!(brute_force_diagonal_form(&sf, 10).is_err());
    }

    #[test]
    fn config_counts() {
        let tol = Tolerances::default();
        let sf = slice_decompose(&parse_polynomial("w^2 - z^5 - x^10 - y^10").unwrap()).unwrap();
        let cfg = crate::pointcfg::build_config(&sf, &tol).unwrap();
        assert_eq!(brute_force_config_group(&cfg, &tol).unwrap().count, 20);
        let three = LabeledConfig::from_points(
            vec![
                (ProjectivePoint::zero(), Label::single(0, 1)),
                (ProjectivePoint::infinity(), Label::single(0, 2)),
                (
                    ProjectivePoint::affine(Complex64::one()),
                    Label::single(1, 1),
                ),
            ],
            &tol,
        )
        .unwrap();
        assert_eq!(brute_force_config_group(&three, &tol).unwrap().count, 1);
        let tetra: Vec<_> = [
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ]
        .into_iter()
        .map(|v| (stereographic(v), Label::single(0, 1)))
        .collect();
        let tetra = LabeledConfig::from_points(tetra, &tol).unwrap();
        assert_eq!(brute_force_config_group(&tetra, &tol).unwrap().count, 12);
    }

    #[test]
    fn generators_are_reproducible() {
        let tol = Tolerances::default();
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let s = random_valid_surface(&mut a, &tol);
            assert_eq!(s, random_valid_surface(&mut b, &tol));
            assert!(validate(&s, &tol).unwrap().is_valid);
        }
        let c = random_config(&mut a, &tol);
        assert!(c.len() >= 3);
    }

    #[test]
    fn stereographic_poles() {
        assert!(stereographic([0.0, 0.0, 1.0]).chordal(&ProjectivePoint::infinity()) < 1e-15);
        assert!(stereographic([0.0, 0.0, -1.0]).chordal(&ProjectivePoint::zero()) < 1e-15);
    }
}
