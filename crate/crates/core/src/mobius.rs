//! Möbius symmetries of a labeled configuration and their lifts to
//! automorphisms of the surface.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::mat2::{Mat2, MatrixIndex};
use crate::pointcfg::{Label, LabeledConfig, ProjectivePoint};
use crate::surface::SurfaceForm;
use crate::Tolerances;

/// Isomorphism type of a finite subgroup of `PSL(2, ℂ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MobiusType {
    Trivial,
    Cyclic(u32),
    /// Dihedral group; the payload is the group order `2k`.
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl MobiusType {
    pub fn order(&self) -> u32 {
        match *self {
            MobiusType::Trivial => 1,
            MobiusType::Cyclic(n) | MobiusType::Dihedral(n) => n,
            MobiusType::Tetrahedral => 12,
            MobiusType::Octahedral => 24,
            MobiusType::Icosahedral => 60,
        }
    }

    /// Short group name: `C_k`, `D_k` (order `2k`), `A_4`, `S_4`, `A_5`.
    pub fn group_name(&self) -> alloc::string::String {
        match *self {
            MobiusType::Trivial => "C_1".into(),
            MobiusType::Cyclic(n) => format!("C_{n}"),
            MobiusType::Dihedral(n) => format!("D_{}", n / 2),
            MobiusType::Tetrahedral => "A_4".into(),
            MobiusType::Octahedral => "S_4".into(),
            MobiusType::Icosahedral => "A_5".into(),
        }
    }
}

impl fmt::Display for MobiusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobiusType::Trivial => f.write_str("Trivial"),
            MobiusType::Cyclic(n) => write!(f, "Cyclic({n})"),
            MobiusType::Dihedral(n) => write!(f, "Dihedral({n})"),
            MobiusType::Tetrahedral => f.write_str("Tetrahedral"),
            MobiusType::Octahedral => f.write_str("Octahedral"),
            MobiusType::Icosahedral => f.write_str("Icosahedral"),
        }
    }
}

/// A determinant-one matrix, modulo sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusElement {
    mat: Mat2,
}

impl MobiusElement {
    /// Normalizes to determinant one and fixes the sign so that the first
    /// non-negligible entry has positive real part (positive imaginary part
    /// on a tie). `None` for singular input.
    pub fn new(m: &Mat2) -> Option<Self> {
        let det = m.det();
        if !(det.norm() > 1e-300) {
            return None;
        }
        let u = m.to_unit_det();
        let scale = u.frobenius();
        let lead = u.0.iter().find(|e| e.norm() > 1e-9 * scale)?;
        let flip = if lead.re.abs() > 1e-12 * scale {
            lead.re < 0.0
        } else {
            lead.im < 0.0
        };
        Some(Self {
            mat: if flip { u.neg() } else { u },
        })
    }

    pub fn identity() -> Self {
        Self {
            mat: Mat2::identity(),
        }
    }

    pub fn mat(&self) -> &Mat2 {
        &self.mat
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let [u, v] = self.mat.apply(p.coords());
        ProjectivePoint::new(u, v)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&(self.mat * other.mat)).expect("product of unimodular matrices")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.mat.0;
        Self::new(&Mat2::new(d, -b, -c, a)).expect("unimodular")
    }

    /// Smallest `k ≤ bound` with `selfᵏ = ±Id`.
    pub fn order(&self, tol: f64, bound: usize) -> Option<usize> {
        let id = Mat2::identity();
        let mut p = self.mat;
        for k in 1..=bound {
            if p.projective_distance(&id) < tol {
                return Some(k);
            }
            p = p * self.mat;
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub elements: Vec<MobiusElement>,
    pub type_tag: MobiusType,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The Möbius map sending `p₁, p₂, p₃` to `r₁, r₂, r₃`: with
/// `P = [λ₁p₁ λ₂p₂]` scaled so that `p₃ = λ₁p₁ + λ₂p₂` (and likewise
/// `R`), it is `R P⁻¹`.
pub fn three_point_map(p: [&ProjectivePoint; 3], r: [&ProjectivePoint; 3]) -> Option<Mat2> {
    let frame = |q: [&ProjectivePoint; 3]| -> Option<Mat2> {
        let base = Mat2::from_columns(q[0].coords(), q[1].coords());
        let [l1, l2] = base.inverse()?.apply(q[2].coords());
        let [a0, a1] = q[0].coords();
        let [b0, b1] = q[1].coords();
        Some(Mat2::from_columns([a0 * l1, a1 * l1], [b0 * l2, b1 * l2]))
    };
    let pm = frame(p)?;
    let rm = frame(r)?;
    Some(rm * pm.inverse()?)
}

/// Whether `m` permutes the configuration points, preserving labels.
pub fn preserves(cfg: &LabeledConfig, m: &MobiusElement, tol: f64) -> bool {
    let mut hit = alloc::vec![false; cfg.len()];
    cfg.points.iter().all(|(p, lab)| {
        let img = m.apply(p);
        match cfg.locate(&img, tol) {
            Some(k) if cfg.points[k].1 == *lab && !hit[k] => {
                hit[k] = true;
                true
            }
            _ => false,
        }
    })
}

/// Indices of three distinct points taken from the rarest label classes.
fn anchor_triple(cfg: &LabeledConfig) -> [usize; 3] {
    let mut class: BTreeMap<Label, usize> = BTreeMap::new();
    for (_, l) in &cfg.points {
        *class.entry(*l).or_default() += 1;
    }
    let mut idx: Vec<usize> = (0..cfg.len()).collect();
    idx.sort_by_key(|&i| (class[&cfg.points[i].1], i));
    [idx[0], idx[1], idx[2]]
}

pub fn symmetries_of_config(cfg: &LabeledConfig, tol: &Tolerances) -> Result<SymmetryGroup> {
    if cfg.len() < 3 {
        return Err(Error::Invalid(format!(
            "a configuration with {} point(s) has no finite symmetry group to search",
            cfg.len()
        )));
    }
    let [i1, i2, i3] = anchor_triple(cfg);
    let pts = &cfg.points;
    let anchor = [&pts[i1].0, &pts[i2].0, &pts[i3].0];
    let mut found: Vec<MobiusElement> = Vec::new();
    let same = |i: usize, j: usize| pts[i].1 == pts[j].1;
    for j1 in (0..cfg.len()).filter(|&j| same(i1, j)) {
        for j2 in (0..cfg.len()).filter(|&j| j != j1 && same(i2, j)) {
            for j3 in (0..cfg.len()).filter(|&j| j != j1 && j != j2 && same(i3, j)) {
                let target = [&pts[j1].0, &pts[j2].0, &pts[j3].0];
                let Some(m) = three_point_map(anchor, target).and_then(|m| MobiusElement::new(&m))
                else {
                    continue;
                };
                if preserves(cfg, &m, tol.cluster)
                    && !found
                        .iter()
                        .any(|e| e.mat.projective_distance(&m.mat) < tol.matching)
                {
                    found.push(m);
                }
            }
        }
    }
    check_closure(&found, tol.matching)?;
    let type_tag = classify_mobius_group(&found, tol.matching)?;
    Ok(SymmetryGroup {
        elements: found,
        type_tag,
    })
}

/// Every pairwise product must match a listed element up to sign.
pub fn check_closure(elements: &[MobiusElement], tol: f64) -> Result<()> {
    let index = MatrixIndex::new(elements.iter().map(|e| e.mat).collect(), tol);
    for a in elements {
        for b in elements {
            if index.find_projective(&(a.mat * b.mat)).is_none() {
                return Err(Error::ToleranceBreakdown(format!(
                    "symmetry group of {} elements is not closed under composition",
                    elements.len()
                )));
            }
        }
    }
    Ok(())
}

pub fn classify_mobius_group(elements: &[MobiusElement], tol: f64) -> Result<MobiusType> {
    let n = elements.len();
    if n <= 1 {
        return Ok(MobiusType::Trivial);
    }
    let orders: Vec<usize> = elements
        .iter()
        .map(|e| {
            e.order(tol, n).ok_or_else(|| {
                Error::ToleranceBreakdown(format!(
                    "an element has order exceeding the group order {n}"
                ))
            })
        })
        .collect::<Result<_>>()?;
    if orders.contains(&n) {
        return Ok(MobiusType::Cyclic(n as u32));
    }
    if n.is_multiple_of(2) {
        let k = n / 2;
        for (ri, r) in elements.iter().enumerate().filter(|(i, _)| orders[*i] == k) {
            let rinv = r.inverse();
            let powers: Vec<MobiusElement> = (0..k)
                .scan(MobiusElement::identity(), |acc, _| {
                    let cur = *acc;
                    *acc = acc.compose(r);
                    Some(cur)
                })
                .collect();
            let inverted = elements.iter().enumerate().any(|(si, s)| {
                si != ri
                    && orders[si] == 2
                    && !powers
                        .iter()
                        .any(|p| p.mat.projective_distance(&s.mat) < tol)
                    && s.compose(r)
                        .compose(&s.inverse())
                        .mat
                        .projective_distance(&rinv.mat)
                        < tol
            });
            if inverted {
                return Ok(MobiusType::Dihedral(n as u32));
            }
        }
    }
    let max_order = orders.iter().copied().max().unwrap_or(1);
    match (n, max_order) {
        (12, 3) => Ok(MobiusType::Tetrahedral),
        (24, 4) => Ok(MobiusType::Octahedral),
        (60, 5) => Ok(MobiusType::Icosahedral),
        _ => Err(Error::ToleranceBreakdown(format!(
            "unrecognized finite Möbius group of order {n} (max element order {max_order})"
        ))),
    }
}

/// A configuration symmetry realized by automorphisms `λ·A`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub base: Mat2,
    /// Every `λ` with `λA` fixing all slices.
    pub scalars: Vec<Complex64>,
    /// `cᵢ` with `qᵢ ∘ A = cᵢ qᵢ`, for the nonzero slices `q₀..q₄`.
    pub per_slice_factors: [Option<Complex64>; 5],
}

impl Lift {
    pub fn matrices(&self) -> impl Iterator<Item = Mat2> + '_ {
        self.scalars.iter().map(|&l| self.base.scale(l))
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lift(Lift),
    /// The factors `cᵢ` admit no common `λ`.
    NoLift {
        per_slice_factors: [Option<Complex64>; 5],
    },
}

/// Relative residual allowed in `qᵢ ∘ A = cᵢ qᵢ`.
const PROPORTIONALITY: f64 = 1e-8;
/// Largest distance from `cᵢ` to the root of unity it is snapped to.
const SNAP: f64 = 1e-6;

/// Lifts a configuration symmetry. `group_order` is the order of the
/// symmetry group it came from; each `cᵢ` is a root of unity of order
/// dividing `240·group_order`.
pub fn lift_element(
    m: &MobiusElement,
    sf: &SurfaceForm,
    group_order: usize,
) -> Result<LiftOutcome> {
    let big_n = 2 * 120 * group_order.max(1) as i64;
    let a = m.mat;
    let mut factors: [Option<Complex64>; 5] = [None; 5];
    let mut residues: Vec<(i64, i64)> = Vec::new();
    for (i, q) in sf.nonconstant_slices() {
        let orig = q.to_complex();
        let moved = q.substitute(&a);
        let qq: f64 = orig.iter().map(|c| c.norm_sqr()).sum();
        let dot: Complex64 = orig.iter().zip(&moved).map(|(u, v)| u.conj() * v).sum();
        let c = dot / qq;
        let resid = orig
            .iter()
            .zip(&moved)
            .map(|(u, v)| (v - c * u).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = qq
            .sqrt()
            .max(moved.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt());
        if resid > PROPORTIONALITY * scale {
            return Err(Error::ToleranceBreakdown(format!(
                "slice q{i} is not proportional to its image (relative residual {:.2e})",
                resid / scale
            )));
        }
        let theta = c.arg() / (2.0 * PI);
        let r = (theta * big_n as f64).round() as i64;
        let snapped = unit_root(r, big_n);
        if (snapped - c).norm() > SNAP {
            return Err(Error::ToleranceBreakdown(format!(
                "factor {c} of slice q{i} is not a root of unity"
            )));
        }
        factors[i] = Some(c);
        residues.push(((10 - 2 * i) as i64, r.rem_euclid(big_n)));
    }
    // λ = e^{2πi x}: need dᵢ x ≡ −rᵢ/N. With k = gcd dᵢ = Σ uᵢ dᵢ,
    // k x ≡ −Σ uᵢ rᵢ / N.
    let (mut k, mut mu) = (0i64, 0i64);
    for &(d, r) in &residues {
        let e = k.extended_gcd(&d);
        let sign = if e.gcd < 0 { -1 } else { 1 };
        mu = (sign * (e.x * mu - e.y * r)).rem_euclid(big_n);
        k = sign * e.gcd;
    }
    if k == 0 {
        return Err(Error::Invalid("no nonconstant slice to fix".into()));
    }
    let consistent = residues
        .iter()
        .all(|&(d, r)| (mu * (d / k) + r).rem_euclid(big_n) == 0);
    if !consistent {
        return Ok(LiftOutcome::NoLift {
            per_slice_factors: factors,
        });
    }
    let scalars = (0..k)
        .map(|j| unit_root(mu + j * big_n, big_n * k))
        .collect();
    Ok(LiftOutcome::Lift(Lift {
        base: a,
        scalars,
        per_slice_factors: factors,
    }))
}

/// `e^{2πi r/n}`.
pub fn unit_root(r: i64, n: i64) -> Complex64 {
    let r = r.rem_euclid(n);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

impl Default for MobiusElement {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcfg::build_config;
    use crate::wpoly::{parse_polynomial, slice_decompose};
    use num_traits::One;

    fn form(eq: &str) -> SurfaceForm {
        slice_decompose(&parse_polynomial(eq).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn config(points: &[(ProjectivePoint, Label)]) -> LabeledConfig {
        LabeledConfig::from_points(points.to_vec(), &Tolerances::default()).unwrap()
    }

    fn stereo(v: [f64; 3]) -> ProjectivePoint {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let [x, y, z] = [v[0] / n, v[1] / n, v[2] / n];
        if z > 0.999_999 {
            ProjectivePoint::infinity()
        } else {
            ProjectivePoint::affine(c(x / (1.0 - z), y / (1.0 - z)))
        }
    }

    #[test]
    fn decagon_is_dihedral_20() {
        let sf = form("w^2 - z^5 - x^10 - y^10");
        let cfg = build_config(&sf, &Tolerances::default()).unwrap();
        let g = symmetries_of_config(&cfg, &Tolerances::default()).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(g.type_tag, MobiusType::Dihedral(20));
    }

    #[test]
    fn tetrahedron_is_tetrahedral() {
        let verts = [
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        let pts: Vec<_> = verts
            .iter()
            .map(|v| (stereo(*v), Label::single(0, 1)))
            .collect();
        let g = symmetries_of_config(&config(&pts), &Tolerances::default()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.type_tag, MobiusType::Tetrahedral);
    }

    #[test]
    fn octahedron_is_octahedral() {
        let verts = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let pts: Vec<_> = verts
            .iter()
            .map(|v| (stereo(*v), Label::single(0, 1)))
            .collect();
        let g = symmetries_of_config(&config(&pts), &Tolerances::default()).unwrap();
        assert_eq!(g.type_tag, MobiusType::Octahedral);
    }

    #[test]
    fn distinct_labels_are_rigid() {
        let pts = [
            (ProjectivePoint::zero(), Label::single(0, 1)),
            (ProjectivePoint::infinity(), Label::single(0, 2)),
            (ProjectivePoint::affine(c(1.0, 0.0)), Label::single(1, 1)),
        ];
        let g = symmetries_of_config(&config(&pts), &Tolerances::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.type_tag, MobiusType::Trivial);
    }

    #[test]
    fn three_point_map_hits_targets() {
        let p = [
            ProjectivePoint::affine(c(0.3, 1.0)),
            ProjectivePoint::affine(c(-2.0, 0.5)),
            ProjectivePoint::infinity(),
        ];
        let r = [
            ProjectivePoint::zero(),
            ProjectivePoint::affine(c(1.0, 1.0)),
            ProjectivePoint::affine(c(4.0, -1.0)),
        ];
        let m = MobiusElement::new(
            &three_point_map([&p[0], &p[1], &p[2]], [&r[0], &r[1], &r[2]]).unwrap(),
        )
        .unwrap();
        for (a, b) in p.iter().zip(&r) {
            assert!(m.apply(a).chordal(b) < 1e-12);
        }
        assert!((m.mat().det() - Complex64::one()).norm() < 1e-9);
    }

    #[test]
    fn identity_lifts_to_kernel() {
        let sf = form("w^2 - z^5 - x^10 - y^10");
        let LiftOutcome::Lift(l) = lift_element(&MobiusElement::identity(), &sf, 20).unwrap()
        else {
            panic!("identity must lift");
        };
        assert_eq!(l.scalars.len(), 10);
        let sf = form("w^2 - z^5 - x*y^7*z - x^9*y - x^2*y^2*z^3");
        let LiftOutcome::Lift(l) = lift_element(&MobiusElement::identity(), &sf, 1).unwrap() else {
            panic!("identity must lift");
        };
        assert_eq!(l.scalars.len(), 2);
    }

    #[test]
    fn rotation_of_decagon_lifts() {
        let sf = form("w^2 - z^5 - x^10 - y^10");
        let z10 = unit_root(1, 10);
        let m = MobiusElement::new(&Mat2::diag(Complex64::one(), z10)).unwrap();
        let LiftOutcome::Lift(l) = lift_element(&m, &sf, 20).unwrap() else {
            panic!("rotation must lift");
        };
        // the det-1 representative is diag(ζ₂₀⁻¹, ζ₂₀), which negates q₀
        assert!((l.per_slice_factors[0].unwrap() + Complex64::one()).norm() < 1e-9);
        assert_eq!(l.scalars.len(), 10);
        for a in l.matrices() {
            let moved = sf.q[0].substitute(&a);
            for (u, v) in moved.iter().zip(sf.q[0].to_complex()) {
                assert!((u - v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn incompatible_factors_do_not_lift() {
        let sf = form("w^2 - z^5 - x^3*y^3*z^2 - x^10 - y^10");
        let cfg = build_config(&sf, &Tolerances::default()).unwrap();
        let z20 = unit_root(1, 20);
        let m = MobiusElement::new(&Mat2::diag(z20, z20.inv())).unwrap();
        assert!(preserves(&cfg, &m, 1e-6));
        assert!(matches!(
            lift_element(&m, &sf, 20).unwrap(),
            LiftOutcome::NoLift { .. }
        ));
    }
}
