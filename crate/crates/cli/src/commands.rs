use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_traits::Zero;

use locdet::arith::{fmt_rational, parse_rational};
use locdet::constructions::{cycle_complex, simplex_boundary, suspension, t_complex, zero_sphere, TFamilySpec};
use locdet::functionals::{local_formula_part1, local_formula_part2, vertex_link_sum, LinearFunctional};
use locdet::geometric::{
    embed_t_complex, gram_check_with, star_class_system, star_isometry_classes, verify_geometric_ld_with,
    AngleOptions, EmbeddedComplex,
};
use locdet::io::ComplexFile;
use locdet::solver::{self, solve, ClassLabel, LDSystem, LDVerdict};
use locdet::{Complex, Error, Execution};

use crate::report::{fmt_rationals, Item, RunReport};
use crate::ConstructKind;

pub const CHECK_FAILED: u8 = 1;
pub const INCONSISTENT: u8 = 3;

pub enum Output {
    Report(RunReport, u8),
    Raw(String),
}

type CmdResult = Result<Output, Error>;

fn load(path: &Path) -> Result<(ComplexFile, Complex), Error> {
    let file = ComplexFile::read(path)?;
    let complex = file.to_complex()?;
    Ok((file, complex))
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn max_dim(family: &[Complex]) -> u32 {
    family.iter().map(|k| k.dim().max(0) as u32).max().unwrap_or(0)
}

pub fn fvector(path: &Path) -> CmdResult {
    let (_, k) = load(path)?;
    let d = k.dim();
    let mut report = RunReport::new(format!("fvector {}", display(path)));
    report.push(Item::new("f-vector").value("f", k.f_vector().to_string()).value("dim", d.to_string()));
    if !k.is_empty() {
        report.push(Item::new("euler characteristic").value("chi", k.euler_characteristic()?.to_string()));
    }
    let lambda = LinearFunctional::charney_davis(d.max(0) as u32).evaluate(&k)?;
    report.push(Item::new("charney-davis").rational("lambda", &lambda));
    let mut flags = Item::new("structure").value("flag", k.is_flag().to_string());
    if d >= 1 {
        flags = flags
            .value("pseudomanifold", k.is_pseudomanifold(d).to_string())
            .value("strict_pseudomanifold", k.is_strict_pseudomanifold(d).to_string());
    }
    report.push(flags);
    Ok(Output::Report(report, 0))
}

fn embed_simple(k: Complex, kind: &ConstructKind) -> Result<EmbeddedComplex, Error> {
    let mut coords = BTreeMap::new();
    match kind {
        ConstructKind::Cycle { n } => {
            for v in 0..*n {
                let theta = 2.0 * std::f64::consts::PI * v as f64 / *n as f64;
                coords.insert(v, vec![theta.cos(), theta.sin()]);
            }
        }
        ConstructKind::SimplexBoundary { k: dim } => {
            let dim = *dim as usize;
            coords.insert(0, vec![-1.0 / dim as f64; dim]);
            for i in 0..dim {
                let mut x = vec![0.0; dim];
                x[i] = 1.0;
                coords.insert(i as u32 + 1, x);
            }
        }
        _ => return Err(Error::InvalidParameter("--embed is supported for cycle, simplex-boundary and tst".into())),
    }
    EmbeddedComplex::new(k, coords)
}

pub fn construct(kind: &ConstructKind, embed: bool, out: Option<&Path>) -> CmdResult {
    let (name, file) = match kind {
        ConstructKind::Tst { s, t, n, m } => {
            let name = format!("T_{{{s},{t}}}(n={n}, m={m})");
            if embed {
                // an absent cycle kind imposes no constraint on its length
                let m = if *t == 0 && m == n { n + 1 } else { *m };
                let n = if *s == 0 && m == *n { m + 1 } else { *n };
                (name.clone(), embed_t_complex(s + t, *t, n, m)?.to_file(Some(name)))
            } else {
                let k = t_complex(TFamilySpec::new(*s, *t, *n, *m))?.complex;
                (name.clone(), ComplexFile::from_complex(Some(name), &k))
            }
        }
        other => {
            let (name, k) = match other {
                ConstructKind::Cycle { n } => (format!("C_{n}"), cycle_complex(*n)?),
                ConstructKind::SimplexBoundary { k } => (format!("boundary of the {k}-simplex"), simplex_boundary(*k)?),
                ConstructKind::Suspension { input } => {
                    let (_, base) = load(input)?;
                    (format!("suspension of {}", display(input)), suspension(&base))
                }
                ConstructKind::ZeroSphere => ("S^0".to_string(), zero_sphere()),
                ConstructKind::Tst { .. } => unreachable!(),
            };
            let file = if embed {
                embed_simple(k, other)?.to_file(Some(name.clone()))
            } else {
                ComplexFile::from_complex(Some(name.clone()), &k)
            };
            (name, file)
        }
    };
    match out {
        None => Ok(Output::Raw(file.to_json())),
        Some(path) => {
            file.write(path)?;
            let k = file.to_complex()?;
            let mut report = RunReport::new(format!("construct {name}"));
            report.push(
                Item::new(name)
                    .value("f", k.f_vector().to_string())
                    .value("embedded", file.coords.is_some().to_string())
                    .value("path", display(path)),
            );
            Ok(Output::Report(report, 0))
        }
    }
}

pub fn verify_local(functional: &crate::FunctionalArg, paths: &[PathBuf], part1: Option<&str>, part2: bool) -> CmdResult {
    let family: Vec<Complex> = paths.iter().map(|p| load(p).map(|(_, k)| k)).collect::<Result<_, _>>()?;
    let f = functional.resolve(max_dim(&family));
    let (label, g) = match (part1, part2) {
        (Some(e), _) => {
            let e = parse_rational(e)?;
            (format!("part1 E={}", fmt_rational(&e)), local_formula_part1(&f, &e)?)
        }
        (None, true) => ("part2".to_string(), local_formula_part2(&f)?),
        (None, false) => return Err(Error::InvalidParameter("choose --part1 E or --part2".into())),
    };
    let mut report = RunReport::new(format!("verify-local {label}"));
    report.push(Item::new("local formula").value("a", fmt_rationals(g.coefficients())));
    let mut all_zero = true;
    for (path, k) in paths.iter().zip(&family) {
        let lhs = vertex_link_sum(k, &g)?;
        let rhs = f.evaluate(k)?;
        let residual = &lhs - &rhs;
        all_zero &= residual.is_zero();
        report.push(
            Item::new(display(path))
                .rational("sum_over_links", &lhs)
                .rational("functional", &rhs)
                .rational("residual", &residual)
                .status(residual.is_zero()),
        );
    }
    report.status = if all_zero { "all residuals zero" } else { "nonzero residual" }.into();
    Ok(Output::Report(report, if all_zero { 0 } else { CHECK_FAILED }))
}

fn push_system<C: ClassLabel>(report: &mut RunReport, rows: &[String], system: &LDSystem<C>) {
    for (i, class) in system.table.classes.iter().enumerate() {
        report.push(Item::new(format!("class {i}")).value("description", class.label()));
    }
    for (row, name) in rows.iter().enumerate() {
        let counts: Vec<String> = system.table.counts[row].iter().map(u64::to_string).collect();
        report.push(
            Item::new(name.clone())
                .value("counts", format!("[{}]", counts.join(", ")))
                .rational("rhs", &system.rhs[row]),
        );
    }
}

fn push_verdict(report: &mut RunReport, verdict: &LDVerdict) -> u8 {
    match verdict {
        LDVerdict::Consistent { h_values } => {
            report.push(Item::new("verdict").value("result", "consistent").value("h", fmt_rationals(h_values)));
            report.status = "consistent".into();
            0
        }
        LDVerdict::Inconsistent { certificate, pairing } => {
            report.push(
                Item::new("verdict")
                    .value("result", "inconsistent")
                    .value("certificate", fmt_rationals(certificate))
                    .rational("pairing", pairing),
            );
            report.status = "inconsistent".into();
            INCONSISTENT
        }
    }
}

pub fn solve_ld(
    functional: &crate::FunctionalArg,
    paths: &[PathBuf],
    demo: Option<&[u32]>,
    geometric: bool,
    tol: f64,
) -> CmdResult {
    let mut report = RunReport::new(format!(
        "solve-ld{}{}",
        if geometric { " --geometric" } else { "" },
        demo.map(|d| format!(" --demo {} {} {}", d[0], d[1], d[2])).unwrap_or_default()
    ));
    let code = match (demo, geometric) {
        (Some(&[p, n, m]), false) => {
            let f = functional.resolve(2 * p.max(1) - 1);
            let d = solver::demo_functional(p, n, m, &f)?;
            let rows: Vec<String> = (0..=p).map(|u| format!("T_{{{},{u}}}", p - u)).collect();
            push_system(&mut report, &rows, &d.system);
            push_verdict(&mut report, &d.verdict)
        }
        (Some(&[p, n, m]), true) => {
            let f = functional.resolve(2 * p.max(1) - 1);
            let d = locdet::geometric::geometric_ld_demo_with(p, n, m, &f, tol, Execution::default())?;
            let rows: Vec<String> = (0..=p).map(|u| format!("T_{{{},{u}}}", p - u)).collect();
            for (row, classes) in rows.iter().zip(&d.member_classes) {
                let sizes: Vec<String> = classes.iter().map(|c| c.members.len().to_string()).collect();
                report.push(
                    Item::new(format!("{row} star classes"))
                        .value("count", classes.len().to_string())
                        .value("sizes", format!("[{}]", sizes.join(", "))),
                );
            }
            push_system(&mut report, &rows, &d.system);
            push_verdict(&mut report, &d.verdict)
        }
        (Some(_), _) => return Err(Error::InvalidParameter("--demo takes P N M".into())),
        (None, false) => {
            let family: Vec<Complex> = paths.iter().map(|p| load(p).map(|(_, k)| k)).collect::<Result<_, _>>()?;
            let f = functional.resolve(max_dim(&family));
            let system = solver::build_system(&family, &f)?;
            let rows: Vec<String> = paths.iter().map(|p| display(p)).collect();
            push_system(&mut report, &rows, &system);
            push_verdict(&mut report, &solve(&system))
        }
        (None, true) => {
            let family: Vec<EmbeddedComplex> =
                paths.iter().map(locdet::geometric::load_embedded).collect::<Result<_, _>>()?;
            let complexes: Vec<Complex> = family.iter().map(|e| e.complex().clone()).collect();
            let f = functional.resolve(max_dim(&complexes));
            let system = star_class_system(&family, &f, tol, Execution::default())?;
            let rows: Vec<String> = paths.iter().map(|p| display(p)).collect();
            push_system(&mut report, &rows, &system);
            push_verdict(&mut report, &solve(&system))
        }
    };
    Ok(Output::Report(report, code))
}

pub fn identities(pmax: u32) -> CmdResult {
    if pmax < 2 {
        return Err(Error::InvalidParameter(format!("--pmax must be at least 2, got {pmax}")));
    }
    let suite = solver::identity_suite(pmax);
    let mut report = RunReport::new(format!("identities --pmax {pmax}"));
    for check in &suite.checks {
        let mut item = Item::new(check.name).value("cases", check.cases.to_string()).status(check.passed());
        if let Some(c) = &check.counterexample {
            item = item.value("counterexample", c.clone());
        }
        report.push(item);
    }
    report.status = if suite.passed() { "all identities hold" } else { "identity failure" }.into();
    Ok(Output::Report(report, if suite.passed() { 0 } else { CHECK_FAILED }))
}

pub fn geometry_check(path: &Path, functional: &crate::FunctionalArg, tol: f64, seed: u64, samples: u64) -> CmdResult {
    let e = locdet::geometric::load_embedded(path)?;
    let n = e.dim();
    let f = functional.resolve(n.max(0) as u32);
    let opts = AngleOptions { samples, seed, exec: Execution::default() };
    let mut report = RunReport::new(format!("geometry check {}", display(path)));

    for sigma in e.complex().facets().iter().filter(|s| s.dim() >= 2) {
        let d = sigma.dim();
        let want = if d % 2 == 0 { 1.0 } else { -1.0 } * (d as f64 - 1.0) / 2.0;
        let got = gram_check_with(&e, sigma, &opts)?;
        let mut item = Item::new(format!("gram {sigma}")).real("sum", got).real("residual", got - want);
        // cones of dimension ≥ 4 are sampled, so the residual is statistical
        if d <= 4 {
            item = item.status((got - want).abs() <= tol);
        }
        report.push(item);
    }

    if n >= 2 && e.complex().is_pseudomanifold(n) {
        let r = verify_geometric_ld_with(&e, &f, &opts)?;
        report.push(
            Item::new("sum of phi")
                .real("sum_phi", r.sum_phi)
                .rational("target", &r.target)
                .real("residual", r.residual)
                .rational("b_minus_one_offset", &r.b_minus_one_offset)
                .status(r.within(tol)),
        );
    } else {
        report.push(Item::new("sum of phi").value("skipped", format!("not a {n}-pseudomanifold")));
    }

    let classes = star_isometry_classes(&e, 1e-9);
    let sizes: Vec<String> = classes.iter().map(|c| c.members.len().to_string()).collect();
    report.push(
        Item::new("star classes")
            .value("count", classes.len().to_string())
            .value("sizes", format!("[{}]", sizes.join(", "))),
    );
    let failed = report.any_failed();
    report.status = if failed { "check failed" } else { "ok" }.into();
    Ok(Output::Report(report, if failed { CHECK_FAILED } else { 0 }))
}
