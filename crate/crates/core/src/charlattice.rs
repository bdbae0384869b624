//! Diagonal automorphisms `(x, y) ↦ (αx, βy)` of surfaces whose slices are
//! monomials in a fixed pair of linear factors.
//!
//! Each monomial `xⁿ yᵐ` imposes `αⁿ βᵐ = 1`. Writing `α = e^{2πi a/N}`,
//! `β = e^{2πi b/N}` turns the system into `n a + m b ≡ 0 (mod N)`, whose
//! solutions are read off the Smith normal form of the stacked rows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::binary::BinaryForm;
use crate::coeff::Coefficient;
use crate::snf::{smith_normal_form, IntMatrix};
use crate::surface::{validate, SurfaceForm};
use crate::Tolerances;
use num_traits::One;

/// Exponent pairs `(n, m)`, one per monomial constraint `αⁿ βᵐ = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentLattice {
    rows: Vec<(u32, u32)>,
}

impl ExponentLattice {
    pub fn new(rows: Vec<(u32, u32)>) -> Self {
        Self { rows }
    }

    /// One row per monomial of every nonzero slice `q₀..q₄`, in the basis
    /// where `x` and `y` are the linear factors.
    pub fn from_monomials(sf: &SurfaceForm) -> Self {
        let mut rows = BTreeSet::new();
        for (_, q) in sf.nonconstant_slices() {
            for (a, c) in q.coeffs().iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    rows.insert((a as u32, (q.degree() - a) as u32));
                }
            }
        }
        Self {
            rows: rows.into_iter().collect(),
        }
    }

    pub fn rows(&self) -> &[(u32, u32)] {
        &self.rows
    }

    pub fn push(&mut self, n: u32, m: u32) {
        self.rows.push((n, m));
    }

    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<[i64; 2]> = self
            .rows
            .iter()
            .map(|&(n, m)| [i64::from(n), i64::from(m)])
            .collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, 2)
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    /// Largest `|nₚ m_q − n_q mₚ|` over pairs of rows.
    pub fn max_pair_det(&self) -> i64 {
        let mut best = 0;
        for (k, &(n1, m1)) in self.rows.iter().enumerate() {
            for &(n2, m2) in &self.rows[k + 1..] {
                let d = i64::from(n1) * i64::from(m2) - i64::from(n2) * i64::from(m1);
                best = best.max(d.abs());
            }
        }
        best
    }
}

/// The group of diagonal solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionGroup {
    /// `C_{d1} × C_{d2}` with `d1 | d2`. An element is an exponent pair
    /// `(a, b)` mod `modulus`; `gens[0]` has order `d1`, `gens[1]` order
    /// `d2`.
    Finite {
        d1: u64,
        d2: u64,
        modulus: u64,
        gens: [(u64, u64); 2],
    },
    Infinite,
}

impl SolutionGroup {
    pub fn order(&self) -> Option<u64> {
        match self {
            SolutionGroup::Finite { d1, d2, .. } => Some(d1 * d2),
            SolutionGroup::Infinite => None,
        }
    }

    /// Every solution `(a, b)` mod `modulus`, as `i·g₁ + j·g₂`.
    pub fn elements(&self) -> Vec<(u64, u64)> {
        let SolutionGroup::Finite {
            d1,
            d2,
            modulus,
            gens,
        } = *self
        else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity((d1 * d2) as usize);
        for i in 0..d1 {
            for j in 0..d2 {
                out.push((
                    (i * gens[0].0 + j * gens[1].0) % modulus,
                    (i * gens[0].1 + j * gens[1].1) % modulus,
                ));
            }
        }
        out
    }

    /// Checks `n a + m b ≡ 0 (mod N)` for both generators and every row.
    pub fn satisfies(&self, lattice: &ExponentLattice) -> bool {
        match self {
            SolutionGroup::Finite { modulus, gens, .. } => gens.iter().all(|&(a, b)| {
                lattice
                    .rows()
                    .iter()
                    .all(|&(n, m)| (u64::from(n) * a + u64::from(m) * b) % modulus == 0)
            }),
            SolutionGroup::Infinite => false,
        }
    }
}

pub fn diagonal_solution_group(lattice: &ExponentLattice) -> SolutionGroup {
    if lattice.rows().len() < 2 {
        return SolutionGroup::Infinite;
    }
    let snf = smith_normal_form(&lattice.matrix());
    let f = snf.invariant_factors();
    if f.len() < 2 || f[1] == 0 {
        return SolutionGroup::Infinite;
    }
    let (d1, d2) = (f[0], f[1]);
    let n = d2;
    let v = &snf.v;
    let g1 = (
        (v[(0, 0)] * (d2 / d1)).rem_euclid(n) as u64,
        (v[(1, 0)] * (d2 / d1)).rem_euclid(n) as u64,
    );
    let g2 = (
        v[(0, 1)].rem_euclid(n) as u64,
        v[(1, 1)].rem_euclid(n) as u64,
    );
    SolutionGroup::Finite {
        d1: d1 as u64,
        d2: d2 as u64,
        modulus: n as u64,
        gens: [g1, g2],
    }
}

/// Order of the group of scalings `λ·Id` fixing every slice: the gcd of
/// `10 − 2i` over nonzero `qᵢ`, `i ≤ 4`. Zero when no such slice exists.
pub fn scalar_kernel_order(sf: &SurfaceForm) -> u32 {
    sf.nonconstant_slices()
        .map(|(i, _)| (10 - 2 * i) as u32)
        .fold(0, |g, d| g.gcd(&d))
}

/// Exponent `n` of `xⁿ y^{10−2i−n}` for each slice `q₀..q₄`, or `None`
/// for an absent slice.
pub type MonomialChoice = [Option<u32>; 5];

/// One admissible two-factor surface from the survey.
#[derive(Clone, Debug)]
pub struct SurveyEntry {
    pub choice: MonomialChoice,
    pub lattice: ExponentLattice,
    pub group: SolutionGroup,
}

impl SurveyEntry {
    /// `w² − z⁵ − Σ x^{nᵢ} y^{mᵢ} zⁱ`.
    pub fn surface(&self) -> SurfaceForm {
        monomial_surface(&self.choice)
    }

    pub fn equation(&self) -> String {
        self.surface().to_string()
    }
}

pub fn monomial_surface(choice: &MonomialChoice) -> SurfaceForm {
    let q = core::array::from_fn(|i| {
        let deg = 10 - 2 * i;
        match choice.get(i).copied().flatten() {
            Some(n) => BinaryForm::monomial(n as usize, deg - n as usize, Coefficient::one()),
            None if i == 5 => BinaryForm::from_coeffs(vec![Coefficient::one()]),
            None => BinaryForm::zero(deg),
        }
    });
    SurfaceForm::from_slices(q)
}

/// Every choice of monomial-or-absent for `q₀..q₄` (with `q₅ = 1`), in
/// lexicographic order with "absent" first.
pub fn monomial_choices() -> Vec<MonomialChoice> {
    let mut out = vec![[None; 5]];
    for i in 0..5 {
        let deg = 10 - 2 * i as u32;
        let mut next = Vec::with_capacity(out.len() * (deg as usize + 2));
        for c in &out {
            let mut c = *c;
            c[i] = None;
            next.push(c);
            for n in 0..=deg {
                c[i] = Some(n);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// The admissible surfaces among [`monomial_choices`], with their lattices
/// and solution groups.
pub fn two_factor_corpus() -> Vec<SurveyEntry> {
    let tol = Tolerances::default();
    monomial_choices()
        .into_iter()
        .filter_map(|choice| {
            let sf = monomial_surface(&choice);
            let report = validate(&sf, &tol).ok()?;
            if !report.is_valid {
                return None;
            }
            let lattice = ExponentLattice::from_monomials(&sf);
            let group = diagonal_solution_group(&lattice);
            Some(SurveyEntry {
                choice,
                lattice,
                group,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyReport {
    pub surfaces: usize,
    pub orders: BTreeSet<u64>,
    pub primes: BTreeSet<u64>,
    pub max_det: i64,
    /// First surface (in enumeration order) whose group order is divisible
    /// by the prime.
    pub witnesses: BTreeMap<u64, String>,
    /// Observed invariant factor pairs `(d1, d2)`.
    pub invariant_factors: BTreeSet<(u64, u64)>,
}

pub fn two_factor_survey() -> SurveyReport {
    summarize(&two_factor_corpus())
}

pub fn summarize(corpus: &[SurveyEntry]) -> SurveyReport {
    let mut rep = SurveyReport {
        surfaces: corpus.len(),
        ..SurveyReport::default()
    };
    for e in corpus {
        let SolutionGroup::Finite { d1, d2, .. } = e.group else {
            continue;
        };
        let order = d1 * d2;
        rep.orders.insert(order);
        rep.invariant_factors.insert((d1, d2));
        rep.max_det = rep.max_det.max(e.lattice.max_pair_det());
        for p in prime_factors(order) {
            rep.primes.insert(p);
            rep.witnesses.entry(p).or_insert_with(|| e.equation());
        }
    }
    rep
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::{parse_polynomial, slice_decompose};

    fn lattice(rows: &[(u32, u32)]) -> ExponentLattice {
        ExponentLattice::new(rows.to_vec())
    }

    #[test]
    fn cyclic_62() {
        let l = lattice(&[(1, 7), (9, 1)]);
        let g = diagonal_solution_group(&l);
        assert_eq!(g.order(), Some(62));
        assert!(matches!(g, SolutionGroup::Finite { d1: 1, d2: 62, .. }));
        assert!(g.satisfies(&l));
        let els = g.elements();
        let distinct: BTreeSet<_> = els.iter().collect();
        assert_eq!(distinct.len(), 62);
    }

    #[test]
    fn product_2_22() {
        let l = lattice(&[(2, 6), (8, 2)]);
        let g = diagonal_solution_group(&l);
        assert!(matches!(g, SolutionGroup::Finite { d1: 2, d2: 22, .. }));
        assert!(g.satisfies(&l));
    }

    #[test]
    fn balanced_is_infinite() {
        assert_eq!(
            diagonal_solution_group(&lattice(&[(5, 5)])),
            SolutionGroup::Infinite
        );
        assert_eq!(
            diagonal_solution_group(&lattice(&[(5, 5), (3, 3)])),
            SolutionGroup::Infinite
        );
    }

    #[test]
    fn lattice_from_equation() {
        let sf =
            slice_decompose(&parse_polynomial("w^2 - z^5 - x*y^7*z - x^9*y").unwrap()).unwrap();
        assert_eq!(
            ExponentLattice::from_monomials(&sf).rows(),
            &[(1, 7), (9, 1)]
        );
    }

    #[test]
    fn kernel_orders() {
        let k =
            |s: &str| scalar_kernel_order(&slice_decompose(&parse_polynomial(s).unwrap()).unwrap());
        assert_eq!(k("w^2 - z^5 - x^10 - y^10"), 10);
        assert_eq!(k("w^2 - z^5 - x*y^7*z - x^9*y"), 2);
        assert_eq!(k("w^2 - z^5 - x*y^7*z - x^2*y^2*z^3"), 4);
    }

    #[test]
    fn choice_count() {
        assert_eq!(monomial_choices().len(), 12 * 10 * 8 * 6 * 4);
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(62), [2, 31]);
        assert_eq!(prime_factors(200), [2, 5]);
        assert!(prime_factors(1).is_empty());
    }
}
