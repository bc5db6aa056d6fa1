//! End-to-end acceptance battery. Runs without the libtest harness so that
//! every criterion prints exactly one pass/fail line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use conic_core::arrangement::{
    chambers, generic_hyperplane, intersection_lattice, named_family, random_generic, regions_j, Arrangement, Family,
    FamilySpec,
};
use conic_core::exactlin::rational::{rat, rvec, RVector};
use conic_core::exactlin::Subspace;
use conic_core::identities::*;
use conic_core::library::cone_library;
use conic_core::poly::binomial;
use conic_core::volumes::{estimate_iv, exact_iv, stream_rng, SampleConfig};
use conic_core::Cone;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn report_ok(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), format!("{} failed on {}:\n{}", r.identity_name, r.target, r.to_table()))
}

fn within(elapsed: Duration, limit_secs: u64, what: &str) -> Result<(), String> {
    ensure(
        elapsed <= Duration::from_secs(limit_secs),
        format!("{what} took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64()),
    )
}

fn library() -> Vec<(&'static str, Cone)> {
    cone_library().expect("bundled library parses")
}

fn orthant_volumes() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, d) in [2usize, 3, 4, 6].into_iter().enumerate() {
        let c = Cone::orthant(d);
        let start = Instant::now();
        let est = estimate_iv(&c, &SampleConfig::new(100_000, 1000 + i as u64)).map_err(|e| e.to_string())?;
        within(start.elapsed(), 5, &format!("orthant {d}"))?;
        let denom = BigInt::one() << d;
        let exact = exact_iv(&c).ok_or("orthant not recognized")?;
        let rational = exact.rational.ok_or("orthant volumes not rational")?;
        for k in 0..=d {
            let formula = num_rational::BigRational::new(binomial(d, k), denom.clone());
            ensure(rational[k] == formula, format!("exact v_{k}(R^{d}_+) = {} != {formula}", rational[k]))?;
            let z = (est.values[k] - formula.to_f64().unwrap()).abs() / est.std_errors[k];
            worst = worst.max(z);
            ensure(z <= 4.0, format!("d={d} k={k}: z = {z:.2}"))?;
        }
    }
    Ok(format!("max z {worst:.2}"))
}

fn euler_library() -> Outcome {
    let start = Instant::now();
    let lib = library();
    ensure(lib.len() >= 20 && lib.iter().all(|(_, c)| c.d() <= 6), "library must have >= 20 cones with d <= 6")?;
    for (name, c) in &lib {
        let r = verify_euler(c);
        ensure(r.residual_or_z.iter().all(|x| *x == 0.0), format!("{name}: nonzero residual"))?;
        report_ok(&r)?;
    }
    within(start.elapsed(), 10, "Euler battery")?;
    Ok(format!("{} cones, {:.2}s", lib.len(), start.elapsed().as_secs_f64()))
}

fn gauss_bonnet_library() -> Outcome {
    let mut worst: f64 = 0.0;
    let lib = library();
    for (i, (_, c)) in lib.iter().enumerate() {
        let r = verify_gauss_bonnet(c, &SampleConfig::new(100_000, 3000 + i as u64)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        worst = worst.max(r.max_z());
    }
    Ok(format!("{} cones, max z {worst:.2}", lib.len()))
}

fn sommerville_pointed() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (i, (_, c)) in library().iter().enumerate() {
        if !c.is_pointed() || c.d() > 4 {
            continue;
        }
        let r = verify_sommerville(c, &SampleConfig::new(200_000, 4000 + i as u64)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        worst = worst.max(r.max_z());
        n += 1;
    }
    Ok(format!("{n} pointed cones, max z {worst:.2}"))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn random_non_generic(d: usize, n: usize, seed: u64) -> Arrangement {
    let mut rng = stream_rng(seed, 0);
    loop {
        let normals: Vec<RVector> = (0..n).map(|_| (0..d).map(|_| rat(rng.random_range(-1..=1))).collect()).collect();
        if let Ok(a) = Arrangement::new(d, &normals) {
            if a.len() == n && !a.is_generic() {
                return a;
            }
        }
    }
}

fn zaslavsky() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(Arrangement, Option<usize>)> = Vec::new();
    for d in 1..=5 {
        cases.push((named_family(&Family::Braid, d).unwrap(), Some(factorial(d))));
    }
    for d in 1..=4 {
        cases.push((named_family(&Family::BC, d).unwrap(), Some((1 << d) * factorial(d))));
    }
    for d in 2..=4 {
        cases.push((named_family(&Family::D, d).unwrap(), Some((1 << (d - 1)) * factorial(d))));
    }
    for (i, (n, d)) in [(4, 2), (5, 3), (6, 3), (5, 4), (6, 4)].into_iter().enumerate() {
        cases.push((random_generic(n, d, 500 + i as u64).unwrap(), None));
    }
    for (i, (n, d)) in [(4, 3), (5, 3), (6, 4)].into_iter().enumerate() {
        cases.push((random_non_generic(d, n, 600 + i as u64), None));
    }
    for (a, chambers_expected) in &cases {
        report_ok(&verify_zaslavsky(a).map_err(|e| e.to_string())?)?;
        if let Some(r) = chambers_expected {
            let got = chambers(a).map_err(|e| e.to_string())?.len();
            ensure(got == *r, format!("d={} n={}: {got} chambers, expected {r}", a.d(), a.len()))?;
        }
    }
    within(start.elapsed(), 60, "Zaslavsky battery")?;
    Ok(format!("{} arrangements, {:.1}s", cases.len(), start.elapsed().as_secs_f64()))
}

fn family_closed_forms() -> Outcome {
    let mut n = 0;
    let specs = (1..=5)
        .map(|d| (Family::Braid, d))
        .chain((1..=4).map(|d| (Family::BC, d)))
        .chain((2..=4).map(|d| (Family::D, d)));
    for (family, d) in specs {
        report_ok(&verify_family_level_char(&FamilySpec { family, d }).map_err(|e| e.to_string())?)?;
        n += d + 1;
    }
    Ok(format!("{n} level polynomials"))
}

fn generic_arrangements() -> Outcome {
    for (i, (n, d)) in [(3, 2), (4, 3), (5, 3), (5, 4), (6, 4)].into_iter().enumerate() {
        let a = random_generic(n, d, 700 + i as u64).unwrap();
        let r = verify_generic_level_char(&a).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Pass, format!("generic n={n} d={d}: {}", r.to_table()))?;
    }
    // slice lemma on the braid arrangement in R^4
    let a = named_family(&Family::Braid, 4).unwrap();
    let h = generic_hyperplane(&a, 7);
    let ah = a.restriction(&h).map_err(|e| e.to_string())?;
    let (lat, lat_h) = (intersection_lattice(&a), intersection_lattice(&ah));
    for j in 2..=4 {
        let chi = lat.level_char_poly(j).unwrap();
        let chi_h = lat_h.level_char_poly(j - 1).unwrap();
        let mut shifted: Vec<BigInt> = (1..=j).map(|k| chi.coeff(k)).collect();
        shifted[0] += chi.coeff(0);
        let got: Vec<BigInt> = (0..j).map(|k| chi_h.coeff(k)).collect();
        ensure(got == shifted, format!("slice j={j}: {got:?} vs {shifted:?}"))?;
        let r = BigInt::from(regions_j(&a, j).unwrap().len());
        let r_h = BigInt::from(regions_j(&ah, j - 1).unwrap().len());
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        ensure(r_h == r - sign * 2 * chi.coeff(0), format!("slice j={j}: region count"))?;
    }
    Ok("5 generic instances, braid d=4 slice j=2..4".into())
}

fn klivans_swartz() -> Outcome {
    let start = Instant::now();
    let braid3 = named_family(&Family::Braid, 3).unwrap();
    let bc2 = named_family(&Family::BC, 2).unwrap();
    let bc3 = named_family(&Family::BC, 3).unwrap();
    let generic = random_generic(4, 3, 800).unwrap();
    let mut cases: Vec<(&Arrangement, usize)> = Vec::new();
    cases.extend((0..=3).map(|j| (&braid3, j)));
    cases.extend((0..=2).map(|j| (&bc2, j)));
    cases.push((&bc3, 3));
    cases.extend((0..=3).map(|j| (&generic, j)));
    let mut worst: f64 = 0.0;
    for (i, (a, j)) in cases.iter().enumerate() {
        let r = verify_klivans_swartz(a, *j, &SampleConfig::new(100_000, 900 + i as u64)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        worst = worst.max(r.max_z());
    }
    within(start.elapsed(), 180, "Klivans-Swartz battery")?;
    Ok(format!("{} (arrangement, j) pairs, max z {worst:.2}, {:.1}s", cases.len(), start.elapsed().as_secs_f64()))
}

fn kinematic() -> Outcome {
    let line = Cone::subspace(&Subspace::from_span(3, &[rvec(&[2, -1, 3])]));
    let half_space = Cone::from_inequalities(&[rvec(&[0, 0, -1])], 3).unwrap();
    let pairs = [(Cone::orthant(2), Cone::orthant(2)), (Cone::orthant(3), half_space), (Cone::orthant(3), line)];
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for (p, (c, dc)) in pairs.iter().enumerate() {
        let start = Instant::now();
        for k in 0..=c.d() {
            let cfg = SampleConfig::new(DEFAULT_INNER_SAMPLES, 1100 + 10 * p as u64 + k as u64);
            let r = verify_kinematic(c, dc, k, DEFAULT_TRIALS, &cfg).map_err(|e| e.to_string())?;
            report_ok(&r)?;
            worst = worst.max(r.max_z());
        }
        within(start.elapsed(), 120, &format!("pair {p}"))?;
        slowest = slowest.max(start.elapsed().as_secs_f64());
    }
    Ok(format!("3 pairs, all k, max z {worst:.2}, slowest pair {slowest:.1}s"))
}

fn crofton() -> Outcome {
    let line = Cone::subspace(&Subspace::from_span(2, &[rvec(&[1, 3])]));
    let r = verify_crofton_probability(&Cone::orthant(2), &line, 100_000, &SampleConfig::new(100_000, 1200))
        .map_err(|e| e.to_string())?;
    report_ok(&r)?;
    let c = &r.checks[0];
    ensure(c.rhs == 0.5, format!("odd tail {} != 1/2", c.rhs))?;
    Ok(format!("hit rate {:.4}, z {:.2}", c.lhs, c.residual_or_z))
}

fn steiner() -> Outcome {
    let grid = [-1.0, -0.5, 0.3];
    let mut worst: f64 = 0.0;
    let subspaces = [
        Cone::zero(3),
        Cone::full(2),
        Cone::subspace(&Subspace::from_span(2, &[rvec(&[1, 2])])),
        Cone::subspace(&Subspace::from_span(3, &[rvec(&[1, 0, 0]), rvec(&[0, 1, 1])])),
        Cone::full(4),
    ];
    let orthants = (1..=4).map(Cone::orthant);
    for (i, c) in subspaces.into_iter().chain(orthants).enumerate() {
        let r = verify_steiner_mgf(&c, &grid, &SampleConfig::new(100_000, 1300 + i as u64)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        worst = worst.max(r.max_z());
        if c.is_subspace() {
            // v̂ is a point mass, so the sampled MGF is exactly (1-2s)^(-k/2)
            let k = c.dim() as i32;
            for (t, chk) in grid.iter().zip(r.checks.iter().filter(|c| c.label.starts_with("E e^(s|Pg|^2) = "))) {
                let chi2 = (1.0 - 2.0 * steiner_s(*t)).powf(-f64::from(k) / 2.0);
                ensure((chk.rhs - chi2).abs() < 1e-9 * chi2, format!("subspace dim {k}, t={t}: {} vs {chi2}", chk.rhs))?;
            }
        }
    }
    let lib = library();
    for (i, (_, c)) in lib.iter().enumerate() {
        let r = verify_steiner_mgf(c, &[], &SampleConfig::new(100_000, 1400 + i as u64)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        worst = worst.max(r.max_z());
    }
    Ok(format!("9 MGF targets, statdim on {} cones, max z {worst:.2}", lib.len()))
}

fn harmonic() -> Outcome {
    let mut worst: f64 = 0.0;
    let start = Instant::now();
    for family in [Family::Braid, Family::BC] {
        for j in 1..=3 {
            let r = verify_family_statdim(&family, j, &SampleConfig::new(100_000, 1500 + j as u64))
                .map_err(|e| e.to_string())?;
            report_ok(&r)?;
            worst = worst.max(r.max_z());
        }
    }
    Ok(format!("braid and BC, j=1..3, max z {worst:.2}, {:.1}s", start.elapsed().as_secs_f64()))
}

fn determinism() -> Outcome {
    let square = conic_core::library::library_cone("square-cone").unwrap();
    let bc2 = named_family(&Family::BC, 2).unwrap();
    let run = |workers: usize| -> Result<String, String> {
        let cfg = SampleConfig { n_samples: 20_000, seed: 42, workers, tolerance_sigmas: 4.0 };
        let reports = vec![
            verify_gauss_bonnet(&square, &cfg),
            verify_steiner_mgf(&square, &[-0.5, 0.3], &cfg),
            verify_klivans_swartz(&bc2, 2, &cfg),
            verify_kinematic(&Cone::orthant(2), &Cone::orthant(2), 1, 32, &cfg.with_samples(1024)),
            verify_crofton_probability(&Cone::orthant(2), &Cone::orthant(2), 256, &cfg),
        ];
        let reports: Vec<VerificationReport> = reports.into_iter().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        serde_json::to_string(&reports).map_err(|e| e.to_string())
    };
    for workers in [1, 3] {
        let (a, b) = (run(workers)?, run(workers)?);
        ensure(a == b, format!("workers={workers}: reports differ between runs"))?;
    }
    Ok("5 identities, workers 1 and 3, byte-identical JSON".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("orthant intrinsic volumes", orthant_volumes),
        ("Euler relation on the library", euler_library),
        ("Gauss-Bonnet on the library", gauss_bonnet_library),
        ("Sommerville on pointed cones", sommerville_pointed),
        ("Zaslavsky region counts", zaslavsky),
        ("family level polynomials", family_closed_forms),
        ("generic arrangements and slices", generic_arrangements),
        ("Klivans-Swartz sums", klivans_swartz),
        ("kinematic formula", kinematic),
        ("Crofton probability", crofton),
        ("Steiner MGF and statdim routes", steiner),
        ("harmonic statistical dimensions", harmonic),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("{:02}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| id.contains(p.as_str()) || name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {id} PASS {name} ({detail}) [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
