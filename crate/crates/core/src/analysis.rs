//! The full pipeline from equation text to a named automorphism group.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::autgroup::{assemble, recognize_structure, AutGroup, StructureDescriptor};
use crate::error::Result;
use crate::surface::{complete_square, validate, SurfaceForm, ValidityReport};
use crate::wpoly::{parse, WPolynomial};
use crate::Tolerances;

#[derive(Clone, Debug)]
pub struct Analysis {
    /// The equation in normal form `w² − Σ qᵢ zⁱ`.
    pub equation: String,
    pub form: SurfaceForm,
    pub validity: ValidityReport,
    /// Present exactly when the surface is valid.
    pub group: Option<AutGroup>,
    pub structure: Option<StructureDescriptor>,
    pub warnings: Vec<String>,
}

impl Analysis {
    pub fn is_valid(&self) -> bool {
        self.validity.is_valid
    }

    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(|g| g.order)
    }
}

/// Parses, completes the square, validates and, for valid surfaces,
/// assembles and names the group.
pub fn analyze(text: &str, tol: &Tolerances) -> Result<Analysis> {
    let poly = parse(text)?;
    analyze_polynomial(&poly, tol)
}

pub fn analyze_polynomial(poly: &WPolynomial, tol: &Tolerances) -> Result<Analysis> {
    let completion = complete_square(poly)?;
    let mut warnings = Vec::new();
    if let Some(g) = &completion.shift {
        warnings.push(format!(
            "substituted w -> w - ({g}) to remove terms linear in w"
        ));
    }
    if let Some(c) = &completion.rescaled_by {
        warnings.push(format!("divided the equation by the w^2 coefficient {c}"));
    }
    let mut a = analyze_form(&completion.form, tol)?;
    warnings.append(&mut a.warnings);
    a.warnings = warnings;
    Ok(a)
}

pub fn analyze_form(sf: &SurfaceForm, tol: &Tolerances) -> Result<Analysis> {
    let sf = sf.normalize();
    let validity = validate(&sf, tol)?;
    let mut warnings = validity.warnings.clone();
    let (group, structure) = if validity.is_valid {
        let g = assemble(&sf, tol)?;
        let s = recognize_structure(&g)?;
        if g.config_symmetries > 0 {
            warnings.push(format!(
                "configuration symmetry group has order {} ({} liftable)",
                g.config_symmetries,
                g.order / g.kernel_order.max(1)
            ));
        }
        (Some(g), Some(s))
    } else {
        (None, None)
    };
    Ok(Analysis {
        equation: sf.to_string(),
        form: sf,
        validity,
        group,
        structure,
        warnings,
    })
}
