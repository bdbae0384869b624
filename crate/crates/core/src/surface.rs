//! The normal form `w² − Σ qᵢ(x,y) zⁱ` and its admissibility checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::binary::BinaryForm;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::pointcfg::build_config;
use crate::wpoly::{slice_decompose, weighted_degree, Monomial, WPolynomial, SURFACE_DEGREE};
use crate::Tolerances;

/// `w2_coeff · w² − Σᵢ qᵢ(x, y) zⁱ` with `deg qᵢ = 10 − 2i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceForm {
    pub q: [BinaryForm; 6],
    pub w2_coeff: Coefficient,
}

impl SurfaceForm {
    /// Builds a form with `w2_coeff = 1` from its slices.
    pub fn from_slices(q: [BinaryForm; 6]) -> Self {
        for (i, f) in q.iter().enumerate() {
            assert_eq!(f.degree(), 10 - 2 * i, "slice {i} has the wrong degree");
        }
        Self {
            q,
            w2_coeff: Coefficient::one(),
        }
    }

    /// Divides the whole equation by the `w²` coefficient.
    pub fn normalize(&self) -> Self {
        let inv = self.w2_coeff.inv().expect("w^2 coefficient is nonzero");
        Self {
            q: core::array::from_fn(|i| self.q[i].scale(&inv)),
            w2_coeff: Coefficient::one(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.w2_coeff.is_one()
    }

    /// Nonzero slices among `q₀..q₄`, with their index.
    pub fn nonconstant_slices(&self) -> impl Iterator<Item = (usize, &BinaryForm)> {
        self.q[..5].iter().enumerate().filter(|(_, f)| !f.is_zero())
    }

    /// Reassembles `c·w² − Σ qᵢ zⁱ`.
    pub fn to_polynomial(&self) -> WPolynomial {
        let mut p = WPolynomial::monomial(Monomial::new(0, 0, 0, 2), self.w2_coeff.clone());
        for (i, f) in self.q.iter().enumerate() {
            for (a, c) in f.coeffs().iter().enumerate() {
                let m = Monomial::new(a as u32, (f.degree() - a) as u32, i as u32, 0);
                p.add_term(m, &-c);
            }
        }
        p
    }
}

impl fmt::Display for SurfaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_polynomial(), f)
    }
}

/// Result of eliminating the part linear in `w`.
#[derive(Clone, Debug)]
pub struct SquareCompletion {
    /// Normalized form (`w2_coeff = 1`).
    pub form: SurfaceForm,
    /// `g` in the substitution `w ↦ w − g`, when one was needed.
    pub shift: Option<WPolynomial>,
    /// The `w²` coefficient the equation was divided by, when not 1.
    pub rescaled_by: Option<Coefficient>,
}

/// Rewrites `c·w² + w·g₅ + h₁₀` as `c·w² + h₁₀ − g₅²/(4c)` via
/// `w ↦ w − g₅/(2c)`, then normalizes `c` to one.
pub fn complete_square(p: &WPolynomial) -> Result<SquareCompletion> {
    let w = Monomial::new(0, 0, 0, 1);
    let w2 = Monomial::new(0, 0, 0, 2);
    let mut linear = WPolynomial::zero();
    let mut rest = WPolynomial::zero();
    for (m, c) in p.terms() {
        let d = weighted_degree(m);
        if d != SURFACE_DEGREE {
            return Err(Error::NotHomogeneous { found: d });
        }
        if m.ew == 1 {
            linear.add_term(Monomial::new(m.ex, m.ey, m.ez, 0), c);
        } else {
            rest.add_term(*m, c);
        }
    }
    let c = rest.coeff(&w2).cloned().ok_or(Error::MissingW2)?;
    let shift = if linear.is_empty() {
        None
    } else {
        let four_c = &Coefficient::from_int(4) * &c;
        let sq = &linear * &linear;
        rest = &rest - &sq.scale(&four_c.inv().expect("nonzero"));
        let two_c = &Coefficient::from_int(2) * &c;
        Some(linear.scale(&two_c.inv().expect("nonzero")))
    };
    debug_assert!(rest.terms().all(|(m, _)| m.ew != 1 || *m == w));
    let form = slice_decompose(&rest)?;
    let rescaled_by = (!form.w2_coeff.is_one()).then(|| form.w2_coeff.clone());
    Ok(SquareCompletion {
        form: form.normalize(),
        shift,
        rescaled_by,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    /// No `z⁵` term.
    V1,
    /// `q₀ = q₁ = 0`.
    V2,
    /// Fewer than two distinct linear factors.
    V3,
    /// Two factors but too few slices, or exponents on a single line.
    V4,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::V1 => "V1",
            ViolationCode::V2 => "V2",
            ViolationCode::V3 => "V3",
            ViolationCode::V4 => "V4",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub is_valid: bool,
    pub violations: Vec<Violation>,
    /// `|Y|`, the number of distinct linear factors of `q₀..q₄`.
    pub support_size: usize,
    pub warnings: Vec<String>,
}

impl ValidityReport {
    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

/// Chordal margin below which a warning about near-coincident factors is
/// attached to the report.
const NEAR_COINCIDENT_WARNING: f64 = 1e-3;

/// Checks every admissibility condition and reports all failures.
///
/// Numerical failures while locating the linear factors are returned as
/// errors; they are not properties of the surface.
pub fn validate(sf: &SurfaceForm, tol: &Tolerances) -> Result<ValidityReport> {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    if sf.q[5].is_zero() {
        violations.push(Violation {
            code: ViolationCode::V1,
            message: "the equation has no z^5 term; the point (0:0:1:0) is worse than canonical"
                .into(),
        });
    }
    if sf.q[0].is_zero() && sf.q[1].is_zero() {
        violations.push(Violation {
            code: ViolationCode::V2,
            message: "q0 = q1 = 0; the surface is not normal".into(),
        });
    }
    let cfg = if sf.nonconstant_slices().next().is_some() {
        Some(build_config(sf, tol)?)
    } else {
        None
    };
    let support_size = cfg.as_ref().map_or(0, |c| c.len());
    if support_size < 2 {
        violations.push(Violation {
            code: ViolationCode::V3,
            message: format!("only {support_size} distinct linear factor(s); need at least 2"),
        });
    }
    if let Some(cfg) = cfg.as_ref().filter(|c| c.len() == 2) {
        let present = sf.q.iter().filter(|f| !f.is_zero()).count();
        if present < 3 {
            violations.push(Violation {
                code: ViolationCode::V4,
                message: format!(
                    "two linear factors but only {present} nonzero slice(s); the automorphism group is infinite"
                ),
            });
        }
        let (a, b) = (&cfg.points[0].1, &cfg.points[1].1);
        let all_balanced = sf.nonconstant_slices().all(|(i, _)| a.mult[i] == b.mult[i]);
        let exps: Vec<(i64, i64)> = sf
            .nonconstant_slices()
            .map(|(i, _)| (i64::from(a.mult[i]), i64::from(b.mult[i])))
            .collect();
        let proportional = exps.iter().all(|&(n, m)| n * exps[0].1 == m * exps[0].0);
        if all_balanced {
            violations.push(Violation {
                code: ViolationCode::V4,
                message: "every monomial is balanced in the two factors; the automorphism group is infinite".into(),
            });
        } else if present >= 3 && proportional {
            violations.push(Violation {
                code: ViolationCode::V4,
                message: "the monomial exponents are all proportional; a one-parameter torus acts"
                    .into(),
            });
        }
    }
    if let Some(cfg) = &cfg {
        if cfg.condition_margin < NEAR_COINCIDENT_WARNING {
            warnings.push(format!(
                "linear factors nearly coincide (chordal margin {:.3e})",
                cfg.condition_margin
            ));
        }
    }
    Ok(ValidityReport {
        is_valid: violations.is_empty(),
        violations,
        support_size,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::parse_polynomial;
    use alloc::string::ToString;

    fn poly(s: &str) -> WPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn report(s: &str) -> ValidityReport {
        let sf = complete_square(&poly(s)).unwrap().form;
        validate(&sf, &Tolerances::default()).unwrap()
    }

    #[test]
    fn normal_form_unchanged() {
        let out = complete_square(&poly("w^2 - z^5 - x^10")).unwrap();
        assert!(out.shift.is_none());
        assert_eq!(out.form.to_polynomial(), poly("w^2 - z^5 - x^10"));
    }

    #[test]
    fn completing_the_square() {
        // (w + x^5)^2 - x^10 - z^5
        let out = complete_square(&poly("w^2 + 2*x^5*w - z^5")).unwrap();
        assert_eq!(out.shift, Some(poly("x^5")));
        assert_eq!(out.form.to_polynomial(), poly("w^2 - z^5 - x^10"));
        assert!(out.form.to_polynomial().terms().all(|(m, _)| m.ew != 1));
    }

    #[test]
    fn rescaling_to_unit_w2() {
        let out = complete_square(&poly("2*w^2 - 2*z^5 - 4*x^10 - y^10")).unwrap();
        assert_eq!(out.rescaled_by, Some(Coefficient::from_int(2)));
        assert_eq!(
            out.form.to_polynomial(),
            poly("w^2 - z^5 - 2*x^10 - 1/2*y^10")
        );
    }

    #[test]
    fn missing_w2() {
        assert_eq!(
            complete_square(&poly("w*z^5 - x^10")).unwrap_err(),
            Error::NotHomogeneous { found: 15 }
        );
        assert_eq!(
            complete_square(&poly("w*x^5 - z^5")).unwrap_err(),
            Error::MissingW2
        );
    }

    #[test]
    fn reassembly_is_exact() {
        let p = poly("w^2 - z^5 - (1+2i)*x^3*y^5*z - 3/7*y^4*z^3 - x^9*y");
        let sf = slice_decompose(&p).unwrap();
        assert_eq!(sf.to_polynomial(), p);
        assert_eq!(sf.to_string(), p.to_string());
    }

    #[test]
    fn fermat_is_valid() {
        let r = report("w^2 - z^5 - x^10 - y^10");
        assert!(r.is_valid, "{r:?}");
        assert_eq!(r.support_size, 10);
    }

    #[test]
    fn missing_z5_is_v1() {
        let r = report("w^2 - x^10 - y^10");
        assert!(!r.is_valid);
        assert!(r.has(ViolationCode::V1));
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn balanced_monomial_is_v4() {
        let r = report("w^2 - z^5 - x^5*y^5");
        assert!(r.has(ViolationCode::V4));
        assert_eq!(r.support_size, 2);
        assert!(!r.has(ViolationCode::V1));
    }

    #[test]
    fn all_violations_collected() {
        let r = report("w^2 - x^2*z^4");
        assert!(r.has(ViolationCode::V1));
        assert!(r.has(ViolationCode::V2));
        assert!(r.has(ViolationCode::V3));
        assert_eq!(r.support_size, 1);
        let r = report("w^2");
        assert_eq!(r.support_size, 0);
        assert!(r.has(ViolationCode::V3));
    }

    #[test]
    fn two_factor_conditions() {
        assert!(report("w^2 - z^5 - x*y^7*z - x^9*y").is_valid);
        // three slices, unbalanced: fine
        assert!(report("w^2 - z^5 - x^10 - y^8*z").is_valid);
        // only two slices counting z^5
        let r = report("w^2 - z^5 - x^3*y^7");
        assert!(r.has(ViolationCode::V4));
        // balanced in every slice
        let r = report("w^2 - z^5 - x^5*y^5 - x^4*y^4*z");
        assert!(r.has(ViolationCode::V4));
        // unbalanced but proportional: x -> t^3 x, y -> y / t
        let r = report("w^2 - z^5 - x*y^3*z^3 - x^2*y^6*z");
        assert!(r.has(ViolationCode::V4));
    }

    #[test]
    fn v3_only_with_small_support() {
        for eq in [
            "w^2 - z^5 - x^10",
            "w^2 - z^5 - x^10 - x^8*z",
            "w^2 - z^5 - x^10 - y^10",
            "w^2 - z^5 - x^9*y",
        ] {
            let r = report(eq);
            if r.has(ViolationCode::V3) {
                assert!(r.support_size <= 1, "{eq}");
            }
        }
    }
}
