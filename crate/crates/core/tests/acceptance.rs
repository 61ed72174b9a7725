//! End-to-end acceptance checks. Runs every criterion, prints one line each, and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use locdet::arith::{fmt_rational, int, rat};
use locdet::constructions::{t_complex, t_fvector_closed_form, TFamilySpec};
use locdet::corpus;
use locdet::functionals::{
    local_formula_part1, local_formula_part2, verify_local_formula, vertex_link_sum, LinearFunctional,
};
use locdet::geometric::{self, gram_check, solid_angle, verify_geometric_ld, EmbeddedComplex};
use locdet::solver::{self, build_system, LDVerdict};
use locdet::{Complex, Simplex};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    if start.elapsed() > limit {
        Err(format!("took {:.2?}, limit {limit:?}", start.elapsed()))
    } else {
        Ok(())
    }
}

fn random_pairs(seed: u64, count: usize) -> Vec<(Complex, Complex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (corpus::random_complex(&mut rng, 8), corpus::random_complex(&mut rng, 8))).collect()
}

fn join_convolution() -> Outcome {
    let start = Instant::now();
    for (idx, (k, l)) in random_pairs(1, 200).iter().enumerate() {
        let (fk, fl, fj) = (k.f_vector(), l.f_vector(), k.join(l).f_vector());
        for r in -1..=fj.dim() + 1 {
            let conv: u64 = (-1..=r).map(|i| fk.get(r - i - 1) * fl.get(i)).sum();
            ensure(conv == fj.get(r), || format!("pair {idx}, r={r}: join {} vs convolution {conv}", fj.get(r)))?;
        }
    }
    within_time(start, Duration::from_secs(10))?;
    Ok(format!("200 pairs in {:.2?}", start.elapsed()))
}

fn link_identity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (k, l) in random_pairs(1, 200) {
        for c in [k, l] {
            let f = c.f_vector();
            let links: Vec<_> = c.vertices().iter().map(|&v| c.link(v).unwrap().f_vector()).collect();
            for i in -1..=c.dim() {
                let lhs: u64 = links.iter().map(|lf| lf.get(i)).sum();
                let rhs = (i + 2) as u64 * f.get(i + 1);
                ensure(lhs == rhs, || format!("i={i}: {lhs} != {rhs} on {:?}", c.facet_lists()))?;
            }
            checked += 1;
        }
    }
    within_time(start, Duration::from_secs(5))?;
    Ok(format!("{checked} complexes in {:.2?}", start.elapsed()))
}

fn local_formula_without_constant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let complexes = corpus::mixed_corpus(&mut rng, 50);
    ensure(complexes.iter().any(|k| !k.is_pseudomanifold(k.dim())), || "corpus has no non-manifold".into())?;
    for trial in 0..20 {
        let f = corpus::random_functional(&mut rng, 3, false);
        let g = local_formula_part2(&f).map_err(|e| e.to_string())?;
        let residuals = verify_local_formula(&f, &g, &complexes).map_err(|e| e.to_string())?;
        if let Some(i) = residuals.iter().position(|r| !r.is_zero()) {
            return Err(format!("functional {trial}, complex {i}: residual {}", fmt_rational(&residuals[i])));
        }
    }
    let e = local_formula_part2(&LinearFunctional::euler(3)).map_err(|e| e.to_string())?;
    for (i, k) in complexes.iter().enumerate() {
        let chi = k.euler_characteristic().map_err(|e| e.to_string())?;
        let got = vertex_link_sum(k, &e).map_err(|e| e.to_string())?;
        ensure(got == int(chi), || format!("complex {i}: Euler local sum {} vs χ {chi}", fmt_rational(&got)))?;
    }
    Ok("20 functionals x 50 complexes, all residuals 0; Euler local sum = χ".into())
}

fn local_formula_with_constant() -> Outcome {
    let spheres = corpus::two_spheres();
    ensure(spheres.len() == 10, || format!("only {} spheres", spheres.len()))?;
    let lambda = LinearFunctional::charney_davis(2);
    let g = local_formula_part1(&lambda, &int(2)).map_err(|e| e.to_string())?;
    let residuals = verify_local_formula(&lambda, &g, &spheres).map_err(|e| e.to_string())?;
    ensure(residuals.iter().all(Zero::is_zero), || format!("residuals {residuals:?}"))?;
    Ok("10 distinct 2-spheres, all residuals 0".into())
}

fn closed_form_fvectors() -> Outcome {
    let mut cases = 0;
    for s in 0..=3u32 {
        for t in 0..=3 - s {
            for n in 4..=6 {
                for m in 4..=6 {
                    let spec = TFamilySpec::new(s, t, n, m);
                    let fv = t_complex(spec).map_err(|e| e.to_string())?.complex.f_vector();
                    for r in -1..=2 * (s + t) as i64 + 1 {
                        let closed = t_fvector_closed_form(spec, r);
                        let counted = fv.get(r as i32);
                        ensure(closed == counted.into(), || format!("{spec:?} r={r}: {closed} vs {counted}"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    let f = t_complex(TFamilySpec::new(1, 1, 4, 5)).unwrap().complex.f_vector();
    ensure(f.counts() == [1, 9, 29, 40, 20], || format!("f(T_1,1) = {f}"))?;
    Ok(format!("{cases} (spec, r) cases"))
}

fn combinatorial_demo() -> Outcome {
    let start = Instant::now();
    let d = solver::demo_charney_davis(2, 4, 5).map_err(|e| e.to_string())?;
    ensure(d.system.rhs == vec![int(0), int(0), rat(1, 16)], || format!("rhs {:?}", d.system.rhs))?;
    let LDVerdict::Inconsistent { certificate, pairing } = &d.verdict else {
        return Err("verdict is Consistent".into());
    };
    ensure(*certificate == vec![rat(25, 16), rat(-5, 2), int(1)], || format!("certificate {certificate:?}"))?;
    let q = rat(5, 4) - int(1);
    let expected = &q * &q * LinearFunctional::charney_davis(3).b_minus_one();
    ensure(*pairing == expected && *pairing == rat(1, 16), || format!("pairing {pairing}"))?;
    ensure(d.verdict.verify(&d.system), || "certificate does not re-verify".into())?;
    let members: Vec<Complex> = d.family.iter().map(|t| t.complex.clone()).collect();
    let euler = build_system(&members, &LinearFunctional::euler(3)).map_err(|e| e.to_string())?;
    ensure(solver::solve(&euler).is_consistent(), || "Euler system inconsistent".into())?;
    within_time(start, Duration::from_secs(5))?;
    Ok("λ inconsistent, certificate (25/16, -5/2, 1), pairing 1/16; Euler consistent".into())
}

fn coefficient_identities() -> Outcome {
    let start = Instant::now();
    let report = solver::identity_suite(3);
    if let Some(c) = report.checks.iter().find(|c| !c.passed()) {
        return Err(format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("")));
    }
    let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
    for required in ["trinomial", "vandermonde", "d_ab_vanishes", "g_minus_one", "g_r_vanishes"] {
        ensure(names.contains(&required), || format!("missing {required}"))?;
    }
    within_time(start, Duration::from_secs(30))?;
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    Ok(format!("{} identities, {cases} cases", report.checks.len()))
}

/// Vertex solid angle (steradians) from the three face angles via L'Huilier's theorem.
fn lhuilier(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let ang = |x: &[f64], y: &[f64]| {
        let d: f64 = x.iter().zip(y).map(|(p, q)| p * q).sum();
        let nx = x.iter().map(|p| p * p).sum::<f64>().sqrt();
        let ny = y.iter().map(|p| p * p).sum::<f64>().sqrt();
        (d / (nx * ny)).clamp(-1.0, 1.0).acos()
    };
    let (x, y, z) = (ang(b, c), ang(a, c), ang(a, b));
    let s = (x + y + z) / 2.0;
    let t = ((s / 2.0).tan() * ((s - x) / 2.0).tan() * ((s - y) / 2.0).tan() * ((s - z) / 2.0).tan()).sqrt();
    4.0 * t.atan()
}

fn gram_relation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for (k, want) in [(2usize, 0.5), (3, -1.0)] {
        for i in 0..100 {
            let e = corpus::random_simplex(&mut rng, k);
            let sigma = e.complex().facets()[0].clone();
            let got = gram_check(&e, &sigma).map_err(|e| e.to_string())?;
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() <= 1e-9, || format!("{k}-simplex {i}: {got} vs {want}"))?;
        }
    }
    let h = 1.0 / 2f64.sqrt();
    let pts = [[1.0, 0.0, -h], [-1.0, 0.0, -h], [0.0, 1.0, h], [0.0, -1.0, h]];
    let coords = (0..4u32).map(|v| (v, pts[v as usize].to_vec())).collect();
    let tet = EmbeddedComplex::new(Complex::from_facets([[0u32, 1, 2, 3]]).unwrap(), coords).unwrap();
    let sigma = Simplex::new([0, 1, 2, 3]).unwrap();
    let rel = |p: &[f64; 3], q: &[f64; 3]| [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    let oracle_vertex = lhuilier(&rel(&pts[1], &pts[0]), &rel(&pts[2], &pts[0]), &rel(&pts[3], &pts[0])) / (4.0 * PI);
    let oracle_edge = (1.0f64 / 3.0).acos() / (2.0 * PI);
    let vertex = solid_angle(&tet, &Simplex::new([0]).unwrap(), &sigma).unwrap().value;
    let edge = solid_angle(&tet, &Simplex::new([0, 1]).unwrap(), &sigma).unwrap().value;
    ensure((vertex - oracle_vertex).abs() <= 1e-9, || format!("vertex angle {vertex} vs {oracle_vertex}"))?;
    ensure((edge - oracle_edge).abs() <= 1e-9, || format!("edge angle {edge} vs {oracle_edge}"))?;
    ensure((vertex - 0.04386991402295545).abs() <= 1e-9, || format!("vertex angle {vertex}"))?;
    Ok(format!("200 random simplices, max deviation {worst:.1e}; regular tetrahedron matches oracle"))
}

fn geometric_local_determination() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let octa = corpus::regular_octahedron();
    let sphere = corpus::irregular_sphere(&mut rng);
    let torus = corpus::flat_torus(5, 6);
    let four = corpus::four_simplex_boundary(&mut rng);
    let mut cases: Vec<(String, EmbeddedComplex, LinearFunctional)> = vec![
        ("octahedron/euler".into(), octa.clone(), LinearFunctional::euler(2)),
        ("irregular sphere/euler".into(), sphere.clone(), LinearFunctional::euler(2)),
        ("irregular sphere/random".into(), sphere, corpus::random_functional(&mut rng, 2, true)),
        ("flat torus/euler".into(), torus.clone(), LinearFunctional::euler(2)),
        ("flat torus/random".into(), torus.clone(), corpus::random_functional(&mut rng, 2, true)),
    ];
    for i in 1..=3 {
        cases.push((format!("4-simplex boundary/random {i}"), four.clone(), corpus::random_functional(&mut rng, 3, true)));
    }
    let mut worst: f64 = 0.0;
    for (name, e, f) in &cases {
        let r = verify_geometric_ld(e, f).map_err(|err| format!("{name}: {err}"))?;
        worst = worst.max(r.residual.abs());
        ensure(r.within(1e-8), || format!("{name}: residual {:e}", r.residual))?;
    }
    let octa_sum = verify_geometric_ld(&octa, &LinearFunctional::euler(2)).unwrap().sum_phi;
    ensure((octa_sum - 2.0).abs() <= 1e-8, || format!("octahedron Σφ = {octa_sum}"))?;
    let torus_sum = verify_geometric_ld(&torus, &LinearFunctional::euler(2)).unwrap().sum_phi;
    ensure(torus_sum.abs() <= 1e-8, || format!("flat torus Σφ = {torus_sum}"))?;
    within_time(start, Duration::from_secs(30))?;
    Ok(format!("{} cases, max |residual| {worst:.1e}", cases.len()))
}

fn geometric_demo() -> Outcome {
    let d = geometric::geometric_ld_demo(2, 4, 5, &LinearFunctional::charney_davis(3)).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let per_member: Vec<usize> = d.member_classes.iter().map(Vec::len).collect();
    if per_member.iter().any(|&c| c != 2) {
        problems.push(format!("star classes per member {per_member:?}, expected 2 each"));
    }
    match &d.verdict {
        LDVerdict::Inconsistent { certificate, pairing } => {
            if *certificate != vec![rat(25, 16), rat(-5, 2), int(1)] || *pairing != rat(1, 16) {
                problems.push(format!("certificate {certificate:?}, pairing {pairing}"));
            }
        }
        LDVerdict::Consistent { .. } => problems.push(format!(
            "λ verdict Consistent over {} merged star classes (counts {:?})",
            d.system.table.classes.len(),
            d.system.table.counts
        )),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let zero_constant = [
        LinearFunctional::euler(3),
        LinearFunctional::face_count(3, 3),
        corpus::random_functional(&mut rng, 3, false),
    ];
    for f in &zero_constant {
        let g = geometric::geometric_ld_demo(2, 4, 5, f).map_err(|e| e.to_string())?;
        if !g.verdict.is_consistent() {
            problems.push("a functional with zero constant term was inconsistent".into());
        }
    }
    if problems.is_empty() {
        Ok("λ inconsistent with the combinatorial certificate; zero-constant functionals consistent".into())
    } else {
        Err(problems.join("; "))
    }
}

fn isomorphism_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let k = corpus::random_complex(&mut rng, 8);
        let l = corpus::random_relabel(&mut rng, &k);
        ensure(k.canonical_key() == l.canonical_key(), || format!("relabeled pair {i}: keys differ"))?;
        ensure(k.is_isomorphic(&l), || format!("relabeled pair {i}: not isomorphic"))?;
    }
    let degrees = |k: &Complex| {
        let mut d: Vec<Vec<u64>> = k.vertex_face_counts().into_values().collect();
        d.sort();
        d
    };
    let mut found = 0;
    while found < 500 {
        let k = corpus::random_complex(&mut rng, 8);
        let l = corpus::random_complex(&mut rng, 8);
        if k.f_vector() == l.f_vector() && degrees(&k) == degrees(&l) {
            continue;
        }
        ensure(k.canonical_key() != l.canonical_key(), || format!("non-isomorphic pair {found}: keys equal"))?;
        ensure(!k.is_isomorphic(&l), || format!("non-isomorphic pair {found}: reported isomorphic"))?;
        found += 1;
    }
    within_time(start, Duration::from_secs(20))?;
    Ok(format!("500 + 500 pairs in {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("join convolution", join_convolution),
        ("vertex link identity", link_identity),
        ("local formula, zero constant term", local_formula_without_constant),
        ("local formula, λ on 2-spheres", local_formula_with_constant),
        ("closed-form f-vectors", closed_form_fvectors),
        ("combinatorial impossibility certificate", combinatorial_demo),
        ("coefficient identities", coefficient_identities),
        ("Gram angle relation", gram_relation),
        ("geometric local formula φ", geometric_local_determination),
        ("geometric impossibility demo", geometric_demo),
        ("isomorphism soundness", isomorphism_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
