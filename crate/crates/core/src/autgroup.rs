//! The automorphism group as explicit matrices acting on `(x, y)`, with
//! `z` and `w` fixed, and a reading of its isomorphism type.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::charlattice::{
    diagonal_solution_group, scalar_kernel_order, ExponentLattice, SolutionGroup,
};
use crate::error::{Error, Result};
use crate::mat2::{Mat2, MatrixIndex};
use crate::mobius::{
    lift_element, symmetries_of_config, unit_root, LiftOutcome, MobiusElement, MobiusType,
};
use crate::pointcfg::{build_config, LabeledConfig};
use crate::surface::SurfaceForm;
use crate::Tolerances;

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub matrices: Vec<Mat2>,
    pub order: usize,
    /// Order of the subgroup of scalar matrices.
    pub kernel_order: usize,
    /// Type of the image in `PSL(2, ℂ)`.
    pub mobius_type: MobiusType,
    /// Number of distinct linear factors of `q₀..q₄`.
    pub support_size: usize,
    /// Order of the full symmetry group of the labeled configuration
    /// (liftable or not); zero in the two-point case.
    pub config_symmetries: usize,
    tol: f64,
}

impl AutGroup {
    /// Matrix lookup at the group's matching tolerance.
    pub fn index(&self) -> MatrixIndex {
        MatrixIndex::new(self.matrices.clone(), self.tol)
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Small generating set: greedily adds the element of largest order
    /// not yet generated.
    pub fn generators(&self) -> Result<Vec<usize>> {
        let table = multiplication_table(self)?;
        let orders = element_orders(&table, identity_index(self));
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&i| (core::cmp::Reverse(orders[i]), i));
        let mut gens: Vec<usize> = Vec::new();
        let mut span = closure(&table, &[], identity_index(self));
        for i in by_order {
            if span.len() == self.order {
                break;
            }
            if !span.contains(&i) {
                gens.push(i);
                span = closure(&table, &gens, identity_index(self));
            }
        }
        Ok(gens)
    }
}

/// Maximum over nonzero slices of `‖qᵢ ∘ A − qᵢ‖∞ / ‖qᵢ‖∞`.
pub fn equation_residual(sf: &SurfaceForm, a: &Mat2) -> f64 {
    sf.nonconstant_slices()
        .map(|(_, q)| {
            let orig = q.to_complex();
            let moved = q.substitute(a);
            let scale = orig.iter().map(|c| c.norm()).fold(0.0, f64::max);
            orig.iter()
                .zip(&moved)
                .map(|(u, v)| (u - v).norm())
                .fold(0.0, f64::max)
                / scale
        })
        .fold(0.0, f64::max)
}

pub fn assemble(sf: &SurfaceForm, tol: &Tolerances) -> Result<AutGroup> {
    let cfg = build_config(sf, tol)?;
    let kernel = scalar_kernel_order(sf) as usize;
    match cfg.len() {
        0 | 1 => Err(Error::InfiniteGroup),
        2 => assemble_two_points(sf, &cfg, kernel, tol),
        _ => assemble_config(sf, &cfg, kernel, tol),
    }
}

/// Diagonal group in the basis `B = [P_a P_b]` of the two points, where
/// every slice is `c·x'ⁿ y'ᵐ` with `n` the multiplicity at `P_b` and `m`
/// the multiplicity at `P_a`.
fn assemble_two_points(
    sf: &SurfaceForm,
    cfg: &LabeledConfig,
    kernel: usize,
    tol: &Tolerances,
) -> Result<AutGroup> {
    // sorted order puts (0:1) before (1:0), so monomial slices give B = I
    let (pa, la) = cfg.points[1];
    let (pb, lb) = cfg.points[0];
    let mut lattice = ExponentLattice::default();
    for (i, _) in sf.nonconstant_slices() {
        lattice.push(lb.mult[i], la.mult[i]);
    }
    let group = diagonal_solution_group(&lattice);
    let SolutionGroup::Finite { modulus, .. } = &group else {
        return Err(Error::InfiniteGroup);
    };
    let b = Mat2::from_columns(pa.coords(), pb.coords());
    let binv = b
        .inverse()
        .ok_or_else(|| Error::ToleranceBreakdown("the two linear factors coincide".into()))?;
    let n = *modulus as i64;
    let matrices: Vec<Mat2> = group
        .elements()
        .into_iter()
        .map(|(a, bexp)| b * Mat2::diag(unit_root(a as i64, n), unit_root(bexp as i64, n)) * binv)
        .collect();
    let order = matrices.len();
    let quotient = order / kernel.max(1);
    let g = AutGroup {
        order,
        kernel_order: kernel,
        mobius_type: if quotient <= 1 {
            MobiusType::Trivial
        } else {
            MobiusType::Cyclic(quotient as u32)
        },
        support_size: 2,
        config_symmetries: 0,
        matrices,
        tol: tol.matching,
    };
    verify_closed(&g)?;
    Ok(g)
}

fn assemble_config(
    sf: &SurfaceForm,
    cfg: &LabeledConfig,
    kernel: usize,
    tol: &Tolerances,
) -> Result<AutGroup> {
    let sym = symmetries_of_config(cfg, tol)?;
    let mut lifted: Vec<MobiusElement> = Vec::new();
    let mut matrices = Vec::new();
    for m in &sym.elements {
        if let LiftOutcome::Lift(l) = lift_element(m, sf, sym.order())? {
            if l.scalars.len() != kernel {
                return Err(Error::ToleranceBreakdown(format!(
                    "lift has {} scalars but the scalar kernel has order {kernel}",
                    l.scalars.len()
                )));
            }
            lifted.push(*m);
            matrices.extend(l.matrices());
        }
    }
    let mobius_type = crate::mobius::classify_mobius_group(&lifted, tol.matching)?;
    let g = AutGroup {
        order: matrices.len(),
        kernel_order: kernel,
        mobius_type,
        support_size: cfg.len(),
        config_symmetries: sym.order(),
        matrices,
        tol: tol.matching,
    };
    verify_closed(&g)?;
    Ok(g)
}

fn verify_closed(g: &AutGroup) -> Result<()> {
    multiplication_table(g).map(|_| ())
}

/// `table[i][j]` is the index of `matrices[i] · matrices[j]`.
pub fn multiplication_table(g: &AutGroup) -> Result<Vec<Vec<usize>>> {
    let index = g.index();
    g.matrices
        .iter()
        .map(|a| {
            g.matrices
                .iter()
                .map(|b| {
                    index.find(&(*a * *b)).ok_or_else(|| {
                        Error::ToleranceBreakdown(format!(
                            "group of order {} is not closed under products",
                            g.order
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

/// Every row and every column is a permutation of `0..n`.
pub fn is_latin_square(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    let perm = |items: Vec<usize>| {
        let mut seen = vec![false; n];
        items.len() == n
            && items
                .into_iter()
                .all(|k| k < n && !core::mem::replace(&mut seen[k], true))
    };
    table.iter().all(|r| perm(r.clone()))
        && (0..n).all(|j| perm(table.iter().map(|r| r[j]).collect()))
}

fn identity_index(g: &AutGroup) -> usize {
    g.index()
        .find(&Mat2::identity())
        .expect("every automorphism group contains the identity")
}

fn element_orders(table: &[Vec<usize>], e: usize) -> Vec<usize> {
    (0..table.len())
        .map(|i| {
            let mut k = 1;
            let mut p = i;
            while p != e && k <= table.len() {
                p = table[p][i];
                k += 1;
            }
            k
        })
        .collect()
}

/// Subgroup generated by `gens`, by breadth-first closure.
fn closure(table: &[Vec<usize>], gens: &[usize], e: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([e]);
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table[x][g];
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Cyclic(u64),
    AbelianProduct(u64, u64),
    CentralExtension {
        kernel: u64,
        quotient: MobiusType,
        split: bool,
    },
    Unknown(String),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Cyclic(m) => write!(f, "Cyclic({m})"),
            Shape::AbelianProduct(a, b) => write!(f, "AbelianProduct({a}, {b})"),
            Shape::CentralExtension {
                kernel,
                quotient,
                split,
            } => write!(f, "CentralExtension({kernel}, {quotient}, split={split})"),
            Shape::Unknown(d) => write!(f, "Unknown({d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDescriptor {
    pub shape: Shape,
    pub human_name: String,
}

impl StructureDescriptor {
    pub fn split(&self) -> Option<bool> {
        match self.shape {
            Shape::CentralExtension { split, .. } => Some(split),
            _ => None,
        }
    }
}

pub fn recognize_structure(g: &AutGroup) -> Result<StructureDescriptor> {
    let table = multiplication_table(g)?;
    let n = table.len();
    let e = identity_index(g);
    let abelian = (0..n).all(|i| (0..i).all(|j| table[i][j] == table[j][i]));
    if abelian {
        let factors = invariant_factors(&table, e);
        let shape = match factors.as_slice() {
            [] => Shape::Cyclic(1),
            [m] => Shape::Cyclic(*m),
            [a, b] => Shape::AbelianProduct(*a, *b),
            more => Shape::Unknown(format!("abelian with invariant factors {more:?}")),
        };
        let human_name = match &shape {
            Shape::Cyclic(m) => format!("C_{m}"),
            Shape::AbelianProduct(a, b) => format!("C_{a} × C_{b}"),
            _ => format!("abelian group of order {n}"),
        };
        return Ok(StructureDescriptor { shape, human_name });
    }
    let scalars: BTreeSet<usize> = (0..n).filter(|&i| g.matrices[i].is_scalar(g.tol)).collect();
    if scalars.len() != g.kernel_order {
        let shape = Shape::Unknown(format!(
            "{} scalar matrices but kernel order {}",
            scalars.len(),
            g.kernel_order
        ));
        return Ok(StructureDescriptor {
            human_name: format!("group of order {n}"),
            shape,
        });
    }
    let split = has_complement(&table, e, &scalars);
    let k = g.kernel_order;
    let quotient = g.mobius_type;
    Ok(StructureDescriptor {
        human_name: format!(
            "C_{k} {} {}",
            if split { "×" } else { "·" },
            quotient.group_name()
        ),
        shape: Shape::CentralExtension {
            kernel: k as u64,
            quotient,
            split,
        },
    })
}

/// Invariant factors `d₁ | d₂ | …` of an abelian group given by its table,
/// from the sizes of the `p^j`-torsion subgroups.
fn invariant_factors(table: &[Vec<usize>], e: usize) -> Vec<u64> {
    let n = table.len() as u64;
    let orders = element_orders(table, e);
    let mut factors: Vec<u64> = Vec::new();
    for p in crate::charlattice::prime_factors(n) {
        // counts[j] = |{g : g^{p^j} = e}|
        let mut counts = vec![1u64];
        let mut pj = 1u64;
        while *counts.last().expect("nonempty") < p_part(n, p) {
            pj *= p;
            counts.push(
                orders
                    .iter()
                    .filter(|&&o| pj.is_multiple_of(o as u64))
                    .count() as u64,
            );
        }
        // number of cyclic p-factors of order ≥ p^j is log_p(c_j / c_{j−1})
        let mut at_least: Vec<u32> = Vec::new();
        for w in counts.windows(2) {
            at_least.push(ilog(w[1] / w[0], p));
        }
        let mut exps: Vec<u32> = Vec::new();
        for (j, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..cnt - next {
                exps.push(j as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, ex) in exps.into_iter().enumerate() {
            if factors.len() <= slot {
                factors.push(1);
            }
            factors[slot] *= p.pow(ex);
        }
    }
    factors.reverse();
    factors
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Exhaustive search for a subgroup of order `|G|/|K|` meeting `K`
/// trivially. A complement maps isomorphically onto `G/K`, so it is
/// generated by lifts of a generating set of the quotient; all `|K|^r`
/// choices of lifts are tried.
fn has_complement(table: &[Vec<usize>], e: usize, kernel: &BTreeSet<usize>) -> bool {
    let n = table.len();
    let target = n / kernel.len();
    let coset = |x: usize| -> usize {
        kernel
            .iter()
            .map(|&k| table[x][k])
            .min()
            .expect("kernel nonempty")
    };
    let reps: Vec<usize> = (0..n).filter(|&x| coset(x) == x).collect();
    let quotient_span = |gens: &[usize]| -> usize {
        closure(table, gens, e)
            .iter()
            .map(|&x| coset(x))
            .collect::<BTreeSet<_>>()
            .len()
    };
    let gens: Vec<usize> = match reps.iter().find(|&&r| quotient_span(&[r]) == target) {
        Some(&r) => vec![r],
        None => {
            let pair = reps.iter().enumerate().find_map(|(i, &a)| {
                reps[i + 1..]
                    .iter()
                    .find(|&&b| quotient_span(&[a, b]) == target)
                    .map(|&b| vec![a, b])
            });
            match pair {
                Some(p) => p,
                None => return false,
            }
        }
    };
    let kern: Vec<usize> = kernel.iter().copied().collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let lifts: Vec<usize> = gens
            .iter()
            .zip(&choice)
            .map(|(&g, &c)| table[g][kern[c]])
            .collect();
        let h = closure(table, &lifts, e);
        if h.len() == target && h.iter().all(|x| *x == e || !kernel.contains(x)) {
            return true;
        }
        // next choice of lifts
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return false;
            }
            choice[pos] += 1;
            if choice[pos] < kern.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// `Complex64` entries of a matrix as `[re, im]` pairs, row-major.
pub fn matrix_entries(m: &Mat2) -> [[f64; 2]; 4] {
    m.0.map(|z: Complex64| [z.re, z.im])
}
