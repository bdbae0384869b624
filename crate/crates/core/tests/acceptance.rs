//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so that every criterion reports even when an
//! earlier one fails. Criteria listed in `KNOWN` may fail without failing
//! the target; anything else exits non-zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use canaut_core::autgroup::{equation_residual, is_latin_square, multiplication_table};
use canaut_core::charlattice::{
    diagonal_solution_group, two_factor_corpus, two_factor_survey, SolutionGroup,
};
use canaut_core::mobius::symmetries_of_config;
use canaut_core::oracle::{
    brute_force_config_group, brute_force_diagonal, random_config, random_valid_surface,
    stereographic,
};
use canaut_core::pointcfg::{build_config, Label, LabeledConfig};
use canaut_core::snf::{smith_normal_form, IntMatrix};
use canaut_core::{analyze, assemble, AutGroup, MobiusType, Shape, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURES: [(&str, usize); 7] = [
    ("w^2 - z^5 - x*y^7*z - x^9*y", 62),
    ("w^2 - z^5 - x^2*y^6*z - x^8*y^2", 44),
    ("w^2 - z^5 - x^10 - y^10", 200),
    ("w^2 - z^5 - x^2*y^6*z - x^9*y", 52),
    ("w^2 - z^5 - x*y^5*z^2 - x^7*y*z", 34),
    ("w^2 - z^5 - x*y^5*z^2 - x^8*y^2", 38),
    ("w^2 - z^5 - x*y^7*z - x^7*y^3", 46),
];

/// Sub-checks that are expected to fail; see the README.
const KNOWN: [&str; 1] = ["1c name"];

type Outcome = Result<(), String>;
type Criterion = fn() -> Vec<(&'static str, Outcome)>;

struct Report {
    unexpected: usize,
}

impl Report {
    fn line(&mut self, id: &str, what: &str, checks: Vec<(&str, Outcome)>, took: Duration) {
        let failed: Vec<String> = checks
            .iter()
            .filter_map(|(name, o)| o.as_ref().err().map(|e| format!("{name}: {e}")))
            .collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} {status} {what} ({:.2}s)",
            took.as_secs_f64()
        );
        for (name, o) in &checks {
            if let Err(e) = o {
                let known = KNOWN.contains(name);
                println!("    {name}: {e}{}", if known { " [known]" } else { "" });
                if !known {
                    self.unexpected += 1;
                }
            }
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group_of(eq: &str) -> Result<(AutGroup, Shape, String), String> {
    let a = analyze(eq, &Tolerances::default()).map_err(|e| e.to_string())?;
    let g = a.group.ok_or("surface reported invalid")?;
    let s = a.structure.ok_or("no structure")?;
    Ok((g, s.shape, s.human_name))
}

fn criterion_1() -> Vec<(&'static str, Outcome)> {
    let mut out = Vec::new();
    let timed = |eq: &str| {
        let t = Instant::now();
        let r = group_of(eq);
        (r, t.elapsed())
    };
    let (r, dt) = timed(FIXTURES[0].0);
    out.push((
        "1a",
        r.and_then(|(g, s, _)| {
            check(
                g.order == 62 && s == Shape::Cyclic(62) && dt.as_secs_f64() < 1.0,
                || format!("order {} shape {s} in {dt:?}", g.order),
            )
        }),
    ));
    let (r, dt) = timed(FIXTURES[1].0);
    out.push((
        "1b",
        r.and_then(|(g, s, name)| {
            check(
                g.order == 44 && s == Shape::AbelianProduct(2, 22) && dt.as_secs_f64() < 1.0,
                || format!("order {} shape {s} ({name}) in {dt:?}", g.order),
            )
        }),
    ));
    let (r, dt) = timed(FIXTURES[2].0);
    match r {
        Ok((g, _, name)) => {
            out.push((
                "1c order",
                check(
                    g.order == 200
                        && g.kernel_order == 10
                        && g.mobius_type == MobiusType::Dihedral(20)
                        && dt.as_secs_f64() < 1.0,
                    || {
                        format!(
                            "order {} kernel {} image {} in {dt:?}",
                            g.order, g.kernel_order, g.mobius_type
                        )
                    },
                ),
            ));
            out.push((
                "1c name",
                check(name == "C_10 × D_10", || {
                    format!("expected \"C_10 × D_10\", got \"{name}\"")
                }),
            ));
        }
        Err(e) => out.push(("1c order", Err(e))),
    }
    out
}

fn criterion_2() -> Vec<(&'static str, Outcome)> {
    FIXTURES[3..]
        .iter()
        .map(|&(eq, n)| {
            let r = group_of(eq).and_then(|(g, s, _)| {
                check(g.order == n && s == Shape::Cyclic(n as u64), || {
                    format!("{eq}: order {} shape {s}", g.order)
                })
            });
            ("2", r)
        })
        .collect()
}

fn criterion_3() -> Vec<(&'static str, Outcome)> {
    let t = Instant::now();
    let s = two_factor_survey();
    let dt = t.elapsed();
    let allowed = [2, 3, 5, 7, 11, 13, 17, 19, 23, 31];
    vec![
        (
            "3 primes",
            check(
                s.primes.iter().all(|p| allowed.contains(p))
                    && [11, 13, 17, 19, 23, 31]
                        .iter()
                        .all(|p| s.primes.contains(p)),
                || format!("primes {:?}", s.primes),
            ),
        ),
        (
            "3 max_det",
            check(s.max_det == 80, || format!("max det {}", s.max_det)),
        ),
        (
            "3 time",
            check(dt < Duration::from_secs(10), || format!("{dt:?}")),
        ),
    ]
}

fn criterion_4() -> Vec<(&'static str, Outcome)> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut forms: Vec<_> = two_factor_corpus().iter().map(|e| e.surface()).collect();
    forms.extend((0..200).map(|_| random_valid_surface(&mut rng, &tol)));
    let mut bad = Vec::new();
    for sf in &forms {
        match assemble(sf, &tol) {
            Ok(g) if g.order <= 200 && [2, 4, 8, 10].contains(&g.kernel_order) => {}
            Ok(g) => bad.push(format!("{sf}: order {} kernel {}", g.order, g.kernel_order)),
            Err(e) => bad.push(format!("{sf}: {e}")),
        }
    }
    vec![(
        "4",
        check(bad.is_empty(), || {
            format!(
                "{} of {} surfaces: {:?}",
                bad.len(),
                forms.len(),
                &bad[..bad.len().min(3)]
            )
        }),
    )]
}

fn criterion_5() -> Vec<(&'static str, Outcome)> {
    let mut bad = Vec::new();
    for entry in two_factor_corpus() {
        let group = diagonal_solution_group(&entry.lattice);
        let SolutionGroup::Finite { d2, .. } = group else {
            bad.push(format!("{}: infinite", entry.equation()));
            continue;
        };
        let expected = group.order().unwrap_or(0) as usize;
        match brute_force_diagonal(entry.lattice.rows(), d2) {
            Ok(r) if r.count == expected => {}
            Ok(r) => bad.push(format!(
                "{}: oracle {} vs {expected}",
                entry.equation(),
                r.count
            )),
            Err(e) => bad.push(format!("{}: {e}", entry.equation())),
        }
    }
    let lattices = check(bad.is_empty(), || {
        format!("{} mismatches: {:?}", bad.len(), &bad[..bad.len().min(3)])
    });

    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    for k in 0..50 {
        let cfg = random_config(&mut rng, &tol);
        let main = symmetries_of_config(&cfg, &tol).map(|g| g.order());
        let oracle = brute_force_config_group(&cfg, &tol).map(|r| r.count);
        match (main, oracle) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => bad.push(format!("#{k} ({} points): {a:?} vs {b:?}", cfg.len())),
        }
    }
    let configs = check(bad.is_empty(), || format!("{bad:?}"));
    vec![("5 lattices", lattices), ("5 configurations", configs)]
}

fn criterion_6() -> Vec<(&'static str, Outcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for (eq, _) in FIXTURES {
        let a = analyze(eq, &Tolerances::default()).unwrap();
        let g = a.group.as_ref().unwrap();
        for _ in 0..20 {
            let m = &g.matrices[rng.random_range(0..g.matrices.len())];
            let r = equation_residual(&a.form, m);
            if !(r < 1e-7) {
                bad.push(format!("{eq}: residual {r:e}"));
            }
        }
    }
    vec![("6", check(bad.is_empty(), || format!("{bad:?}")))]
}

fn config(points: Vec<(canaut_core::pointcfg::ProjectivePoint, Label)>) -> LabeledConfig {
    LabeledConfig::from_points(points, &Tolerances::default()).unwrap()
}

fn criterion_7() -> Vec<(&'static str, Outcome)> {
    let tol = Tolerances::default();
    let decagon = build_config(&analyze(FIXTURES[2].0, &tol).unwrap().form, &tol)
        .map_err(|e| e.to_string())
        .and_then(|cfg| symmetries_of_config(&cfg, &tol).map_err(|e| e.to_string()))
        .and_then(|g| {
            check(g.type_tag == MobiusType::Dihedral(20), || {
                format!("got {}", g.type_tag)
            })
        });

    let octahedron = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut marked_sets: Vec<Vec<[f64; 3]>> = vec![
        vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        vec![
            [1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [-1.0, 1.0, 0.0],
            [-1.0, -1.0, 0.0],
        ],
        vec![
            [1.0, 1.0, 1.0],
            [-1.0, -1.0, -1.0],
            [1.0, -1.0, 1.0],
            [-1.0, 1.0, -1.0],
        ],
        octahedron[..4].to_vec(),
        vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 1.0, 1.0],
        ],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        marked_sets.push(
            (0..4)
                .map(|_| {
                    [
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ]
                })
                .collect(),
        );
    }
    let mut bad = Vec::new();
    for marked in &marked_sets {
        let mut pts: Vec<_> = octahedron
            .iter()
            .map(|v| (stereographic(*v), Label::single(0, 1)))
            .collect();
        pts.extend(
            marked
                .iter()
                .map(|v| (stereographic(*v), Label::single(1, 1))),
        );
        let cfg = config(pts);
        match symmetries_of_config(&cfg, &tol) {
            Ok(g) if g.order() <= 12 => {}
            Ok(g) => bad.push(format!("{marked:?}: order {}", g.order())),
            Err(e) => bad.push(format!("{marked:?}: {e}")),
        }
    }
    let marked = check(bad.is_empty(), || format!("{bad:?}"));

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut bad = Vec::new();
    let mut forms: Vec<_> = FIXTURES
        .iter()
        .map(|(eq, _)| analyze(eq, &tol).unwrap().form)
        .collect();
    forms.extend((0..200).map(|_| random_valid_surface(&mut rng, &tol)));
    for sf in &forms {
        match assemble(sf, &tol) {
            Ok(g) if g.config_symmetries <= 24 => {}
            Ok(g) => bad.push(format!("{sf}: {}", g.config_symmetries)),
            Err(e) => bad.push(format!("{sf}: {e}")),
        }
    }
    let surfaces = check(bad.is_empty(), || format!("{bad:?}"));
    vec![
        ("7 decagon", decagon),
        ("7 octahedron", marked),
        ("7 surfaces", surfaces),
    ]
}

// U and V entries can be large enough that U·M overflows i64.
fn wide(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| i128::from(m[(i, j)])).collect())
        .collect()
}

fn wide_product(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

fn criterion_8() -> Vec<(&'static str, Outcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    for _ in 0..100 {
        let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.random_range(-30..=30)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        let prod = wide_product(&wide_product(&wide(&s.u), &wide(&m)), &wide(&s.v));
        let mut ok = prod == wide(&s.d) && s.u.det().abs() == 1 && s.v.det().abs() == 1;
        for i in 0..r {
            for j in 0..c {
                ok &= i == j || s.d[(i, j)] == 0;
            }
        }
        let f = s.invariant_factors();
        ok &= f.iter().all(|&d| d > 0);
        ok &= f.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            bad.push(format!("{rows:?}"));
        }
    }
    let snf = check(bad.is_empty(), || format!("{bad:?}"));
    let mut bad = Vec::new();
    for (eq, _) in FIXTURES {
        let g = analyze(eq, &Tolerances::default()).unwrap().group.unwrap();
        match multiplication_table(&g) {
            Ok(t) if is_latin_square(&t) => {}
            Ok(_) => bad.push(format!("{eq}: not a Latin square")),
            Err(e) => bad.push(format!("{eq}: {e}")),
        }
    }
    vec![
        ("8 smith", snf),
        ("8 latin", check(bad.is_empty(), || format!("{bad:?}"))),
    ]
}

fn main() -> ExitCode {
    let mut report = Report { unexpected: 0 };
    let criteria: [(&str, &str, Criterion); 8] = [
        ("1", "worked example orders and names", criterion_1),
        ("2", "prime witness table", criterion_2),
        ("3", "two-factor survey", criterion_3),
        ("4", "order and kernel bounds", criterion_4),
        ("5", "oracle equivalence", criterion_5),
        ("6", "equation fixing", criterion_6),
        ("7", "configuration symmetry bounds", criterion_7),
        ("8", "Smith form and multiplication tables", criterion_8),
    ];
    for (id, what, f) in criteria {
        let t = Instant::now();
        let checks = f();
        report.line(id, what, checks, t.elapsed());
    }
    if report.unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} unexpected failure(s)", report.unexpected);
        ExitCode::FAILURE
    }
}
