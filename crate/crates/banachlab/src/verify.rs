//! The acceptance battery: nine criteria covering known numerical indices,
//! the condition-number bound, state-pair correction, conjugation transport,
//! the convergence experiment, the 1-Lipschitz property of the numerical
//! radius, gap/opening geometry, oracle equivalence, and determinism.
//!
//! Every criterion is deterministic given the battery seed; thresholds are
//! pinned in code. `run_battery` powers both the `verify-all` subcommand and
//! the acceptance integration test.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bpb::{bpb_correct, defect};
use crate::cert::SearchBudget;
use crate::index::numerical_index;
use crate::lab::{
    condition_bound_check, conjugation_transport_check, radius_sequence_limit_check,
    run_convergence_experiment, PerturbationFamily,
};
use crate::operator::{
    matrix_operator_norm, numerical_radius, radius_dense_oracle_batch, radius_lipschitz_check,
    OperatorRep,
};
use crate::rng;
use crate::space::{Matrix, NormedSpace, ScalarField};
use crate::subspace::{
    gap_opening, operator_opening, operator_opening_upper, Domain, InvertibleMap, Subspace,
};

const SALT_VERIFY: u64 = 0x7e57;

#[derive(Debug, Clone, Copy)]
pub struct BatteryOptions {
    pub seed: u64,
    /// Scales the instance counts of the statistical batteries; 1.0 is the
    /// full acceptance load.
    pub scale: f64,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions { seed: 7, scale: 1.0 }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: u32, name: &str) -> Self {
        CriterionResult { id, name: name.to_string(), passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.passed &= ok;
        self.details.push(format!("{} {detail}", if ok { "ok:" } else { "FAIL:" }));
    }
}

#[derive(Debug, Clone)]
pub struct BatteryReport {
    pub seed: u64,
    pub scale: f64,
    pub results: Vec<CriterionResult>,
    pub passed: bool,
}

pub fn battery_to_value(report: &BatteryReport) -> Value {
    json!({
        "seed": report.seed,
        "scale": report.scale,
        "passed": report.passed,
        "criteria": report.results.iter().map(|c| json!({
            "id": c.id,
            "name": c.name,
            "passed": c.passed,
            "details": c.details,
        })).collect::<Vec<Value>>(),
    })
}

fn scaled(base: usize, scale: f64, min: usize) -> usize {
    ((base as f64 * scale).ceil() as usize).max(min)
}

fn real_lp(dim: usize, p: f64) -> NormedSpace {
    NormedSpace::lp(ScalarField::Real, dim, p).expect("valid parameters")
}

fn hexagon() -> NormedSpace {
    let verts: Vec<Vec<f64>> = (0..6)
        .map(|k| {
            let t = std::f64::consts::PI / 3.0 * k as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    NormedSpace::polyhedral(2, verts).expect("hexagon spans").with_label("hexagon")
}

/// The standard two-dimensional space families used by the statistical
/// batteries.
fn families_2d() -> Vec<NormedSpace> {
    vec![
        real_lp(2, 1.0),
        real_lp(2, 2.0),
        real_lp(2, f64::INFINITY),
        NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 2.0]).expect("valid weights"),
        hexagon(),
    ]
}

fn random_matrix(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, field: ScalarField) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| {
        Complex64::new(
            rng::uniform(rng, -1.0, 1.0),
            match field {
                ScalarField::Real => 0.0,
                ScalarField::Complex => rng::uniform(rng, -1.0, 1.0),
            },
        )
    })
}

fn criterion_1(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(1, "known numerical indices");
    let seed = opts.seed;
    let budget = SearchBudget::new(16, 300);

    let est = numerical_index(&Domain::Space(real_lp(2, 2.0)), budget, seed).expect("search runs");
    c.check(
        est.upper <= 1e-6 && est.heuristic_lower <= 1e-6,
        format!("real l2^2 estimate [{}, {}] (target 0, tol 1e-6)", est.heuristic_lower, est.upper),
    );

    let complex_plane = NormedSpace::lp(ScalarField::Complex, 2, 2.0).expect("valid parameters");
    let est = numerical_index(&Domain::Space(complex_plane.clone()), SearchBudget::new(16, 400), seed)
        .expect("search runs");
    let in_band = est.upper >= 0.5 - 1e-3
        && est.upper <= 0.5 + 1e-6
        && est.heuristic_lower >= 0.5 - 1e-3
        && est.heuristic_lower <= 0.5 + 1e-6;
    c.check(in_band, format!("complex l2^2 estimate [{}, {}] (target 0.5)", est.heuristic_lower, est.upper));
    // dense-sampling cross-check of the shift witness value
    let shift = crate::space::rmat(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let oracle = radius_dense_oracle_batch(
        &Domain::Space(complex_plane),
        std::slice::from_ref(&shift),
        scaled(200_000, opts.scale, 20_000),
        seed,
    )
    .expect("oracle runs");
    c.check(
        (oracle[0].lower - 0.5).abs() <= 1e-3,
        format!("dense oracle for the shift: {} (target 0.5 +- 1e-3)", oracle[0].lower),
    );

    for p in [1.0, f64::INFINITY] {
        let est = numerical_index(&Domain::Space(real_lp(2, p)), budget, seed).expect("search runs");
        let ok = est.upper >= 1.0 - 1e-3
            && est.upper <= 1.0 + 1e-9
            && est.heuristic_lower >= 1.0 - 1e-3
            && est.heuristic_lower <= 1.0 + 1e-9;
        c.check(ok, format!("real l{p}^2 estimate [{}, {}] (target 1)", est.heuristic_lower, est.upper));
    }

    let est = numerical_index(&Domain::Space(real_lp(1, 2.0)), budget, seed).expect("search runs");
    c.check(
        est.upper == 1.0 && est.heuristic_lower == 1.0,
        format!("dim-1 estimate [{}, {}] (exactly 1)", est.heuristic_lower, est.upper),
    );
    c
}

fn criterion_2(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(2, "condition-number bound battery");
    let per_config = scaled(1000, opts.scale, 20);
    let budget = SearchBudget::new(4, 80);
    for dim in [2usize, 3, 4] {
        for p in [1.0, 2.0, f64::INFINITY] {
            let space = real_lp(dim, p);
            let domain = Domain::Space(space.clone());
            let violations: usize = (0..per_config)
                .into_par_iter()
                .map(|i| {
                    let mut rng =
                        rng::stream(opts.seed, SALT_VERIFY, 0x0200 + dim as u64 * 31 + p.to_bits() % 17 + i as u64 * 9973);
                    let eta = rng::uniform(&mut rng, 0.05, 1.9);
                    let raw = random_matrix(&mut rng, dim, ScalarField::Real);
                    let norm = matrix_operator_norm(&domain, &raw, budget, opts.seed)
                        .expect("norm computes");
                    let rho = rng::uniform(&mut rng, 0.1, 0.95);
                    let m = Matrix::identity(dim, dim)
                        + &raw * Complex64::new(rho * eta / 2.0 / norm.upper, 0.0);
                    let map = InvertibleMap::new(space.clone(), m, budget, opts.seed)
                        .expect("near-identity maps are invertible");
                    let rep =
                        condition_bound_check(&map, eta, budget, opts.seed).expect("admissible");
                    usize::from(!rep.pass)
                })
                .sum();
            c.check(violations == 0, format!("dim {dim}, p {p}: {violations} violations in {per_config}"));
        }
    }
    c
}

fn criterion_3(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(3, "state-pair correction battery");
    let per_family = scaled(500, opts.scale, 12);
    let families = families_2d().into_iter().chain([real_lp(3, 2.0)]).collect::<Vec<_>>();
    for (si, space) in families.iter().enumerate() {
        for (ei, eps) in [0.5, 0.2, 0.1].into_iter().enumerate() {
            let failures: Vec<String> = (0..per_family)
                .into_par_iter()
                .filter_map(|i| {
                    let mut rng = rng::stream(
                        opts.seed,
                        SALT_VERIFY,
                        0x0300 + (si * 3 + ei) as u64 * 100_003 + i as u64,
                    );
                    // admissible input: a perturbed exact state pair
                    let (u, ustar) = loop {
                        let x = rng::gaussian_vector(&mut rng, space.dim(), space.field());
                        if space.norm(&x).expect("dim ok") < 1e-9 {
                            continue;
                        }
                        let sp = space.state_pair_at(&x).expect("nonzero");
                        let shrink = 1.0 - rng::uniform(&mut rng, 0.0, 0.3) * eps * eps;
                        let u = &sp.x * Complex64::new(shrink, 0.0);
                        let noise = rng::gaussian_vector(&mut rng, space.dim(), space.field());
                        let mut ustar = &sp.f + noise * Complex64::new(0.05 * eps, 0.0);
                        let nf = space.dual_norm(&ustar).expect("dim ok");
                        if nf > 1.0 {
                            ustar /= Complex64::new(nf, 0.0);
                        }
                        let delta = defect(space, &u, &ustar).expect("inside balls");
                        if delta.abs() < 0.9 * eps * eps / 2.0 {
                            break (u, ustar);
                        }
                    };
                    let out = bpb_correct(space, &u, &ustar, eps).expect("admissible input");
                    let exact = out.corrected.defect <= 1e-8
                        && out.corrected.primal_residual <= 1e-8
                        && out.corrected.dual_residual <= 1e-8;
                    if out.certifies(eps) && exact {
                        None
                    } else {
                        Some(format!(
                            "instance {i}: primal {} dual {} status {:?}",
                            out.primal_distance, out.dual_distance, out.search_status
                        ))
                    }
                })
                .collect();
            c.check(
                failures.is_empty(),
                format!(
                    "{} eps={eps}: {}/{per_family} corrected{}",
                    space.label(),
                    per_family - failures.len(),
                    failures.first().map(|f| format!(" ({f})")).unwrap_or_default()
                ),
            );
        }
    }
    c
}

fn criterion_4(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(4, "conjugation transport battery");
    let instances = scaled(200, opts.scale, 8);
    let budget = SearchBudget::new(8, 150);
    let ambients = [
        real_lp(3, 1.0),
        real_lp(3, 2.0),
        real_lp(3, f64::INFINITY),
        NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 2.0, 0.5]).expect("valid"),
    ];
    let failures: Vec<String> = (0..instances)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = rng::stream(opts.seed, SALT_VERIFY, 0x0400 + i as u64);
            let ambient = ambients[i % ambients.len()].clone();
            let sub = match i % 3 {
                0 => Subspace::full(ambient.clone()),
                1 => Subspace::coordinate_span(ambient.clone(), &[0, 1], "X").expect("spans"),
                _ => {
                    let mut basis = Matrix::zeros(3, 2);
                    basis[(0, 0)] = Complex64::new(1.0, 0.0);
                    basis[(2, 0)] = Complex64::new(0.25, 0.0);
                    basis[(1, 1)] = Complex64::new(1.0, 0.0);
                    Subspace::new(ambient.clone(), basis, "X").expect("full rank")
                }
            };
            let domain = sub.domain();
            // random operator normalized to |T| = 1 via its exact certificate
            let t_raw = random_matrix(&mut rng, sub.dim(), ScalarField::Real);
            let norm = matrix_operator_norm(&domain, &t_raw, budget, opts.seed).expect("computes");
            if norm.upper < 1e-6 {
                return None;
            }
            let t = OperatorRep::new(domain, &t_raw / Complex64::new(norm.upper, 0.0), budget, opts.seed)
                .expect("well formed");
            let eta = rng::uniform(&mut rng, 0.02, 0.45);
            let raw = random_matrix(&mut rng, 3, ScalarField::Real);
            let enorm = matrix_operator_norm(&Domain::Space(ambient.clone()), &raw, budget, opts.seed)
                .expect("computes");
            let rho = rng::uniform(&mut rng, 0.2, 0.9);
            let cmat =
                Matrix::identity(3, 3) + &raw * Complex64::new(rho * eta / 2.0 / enorm.upper, 0.0);
            let map = InvertibleMap::new(ambient, cmat, budget, opts.seed).expect("invertible");
            match conjugation_transport_check(&sub, &t, &map, eta, 100, budget, opts.seed) {
                Ok(report) if report.pass => None,
                Ok(report) => Some(format!(
                    "instance {i}: floor {}/{} radius {}/{} defect {}/{}",
                    report.norm_floor_value,
                    report.norm_floor_bound,
                    report.radius_value,
                    report.radius_bound,
                    report.max_state_defect,
                    report.state_defect_bound
                )),
                Err(e) => Some(format!("instance {i}: {e}")),
            }
        })
        .collect();
    c.check(
        failures.is_empty(),
        format!(
            "{}/{instances} instances hold{}",
            instances - failures.len(),
            failures.first().map(|f| format!(" ({f})")).unwrap_or_default()
        ),
    );
    c
}

fn criterion_5(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(5, "index convergence along shear families");
    let steps = [5u32, 10, 20, 40, 80];
    let budget = SearchBudget::new(12, 200);
    for (p, threshold) in [(1.0, 0.1), (2.0, 0.02)] {
        let ambient = real_lp(3, p);
        let sub = Subspace::coordinate_span(ambient, &[0, 1], "X").expect("spans");
        let family = PerturbationFamily::shear(0, 2);
        match run_convergence_experiment(&sub, &family, &steps, budget, opts.seed) {
            Ok(report) => {
                let all_inside = report.steps.iter().all(|s| s.inside);
                c.check(
                    all_inside,
                    format!("l{p} family: all steps inside sandwich (max violation {})", report.max_violation),
                );
                let last = report.steps.last().expect("steps nonempty");
                c.check(
                    last.deviation <= threshold,
                    format!("l{p} family: final deviation {} <= {threshold}", last.deviation),
                );
                c.check(
                    report.envelope_nonincreasing,
                    format!("l{p} family: deviation envelope nonincreasing"),
                );
            }
            Err(e) => c.check(false, format!("l{p} family failed to run: {e}")),
        }
    }
    c
}

fn criterion_6(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(6, "radius 1-Lipschitz battery");
    let per_family = scaled(1000, opts.scale, 20);
    let budget = SearchBudget::new(8, 150);
    for (si, space) in families_2d().iter().enumerate() {
        let domain = Domain::Space(space.clone());
        let failures: usize = (0..per_family)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng::stream(opts.seed, SALT_VERIFY, 0x0600 + si as u64 * 100_003 + i as u64);
                let a = random_matrix(&mut rng, 2, space.field());
                let b = random_matrix(&mut rng, 2, space.field());
                let s = match OperatorRep::new(domain.clone(), a, budget, opts.seed) {
                    Ok(op) => op,
                    Err(_) => return 1,
                };
                let t = match OperatorRep::new(domain.clone(), b, budget, opts.seed) {
                    Ok(op) => op,
                    Err(_) => return 1,
                };
                match radius_lipschitz_check(&s, &t, budget, opts.seed.wrapping_add(i as u64)) {
                    Ok(rep) if rep.pass => 0,
                    _ => 1,
                }
            })
            .sum();
        c.check(failures == 0, format!("{}: {failures} violations in {per_family} pairs", space.label()));
    }

    // Built-in convergent operator sequences.
    let domain = Domain::Space(NormedSpace::lp(ScalarField::Complex, 2, 2.0).expect("valid"));
    let shift = crate::space::rmat(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let mut rng = rng::stream(opts.seed, SALT_VERIFY, 0x0601);
    let e = random_matrix(&mut rng, 2, ScalarField::Complex);
    let seq: Vec<Matrix> =
        (1..=8).map(|n| &shift + &e * Complex64::new(1.0 / n as f64, 0.0)).collect();
    match radius_sequence_limit_check(&domain, &seq, &shift, SearchBudget::new(12, 250), opts.seed) {
        Ok(rep) => c.check(rep.pass, format!("complex shift sequence: all {} deviations bounded", rep.rows.len())),
        Err(e) => c.check(false, format!("sequence check failed: {e}")),
    }
    let constant = vec![shift.clone(); 4];
    match radius_sequence_limit_check(&domain, &constant, &shift, SearchBudget::new(12, 250), opts.seed) {
        Ok(rep) => c.check(
            rep.pass && rep.rows.iter().all(|r| r.deviation <= 1e-12),
            "constant sequence: zero deviations".to_string(),
        ),
        Err(e) => c.check(false, format!("constant sequence failed: {e}")),
    }
    c
}

fn criterion_7(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(7, "gap and opening geometry");
    let budget = SearchBudget::new(16, 200);
    let seed = opts.seed;
    let ambient = real_lp(2, 2.0);
    let e1 = crate::space::rvec(&[1.0, 0.0]);
    let y = Subspace::line(ambient.clone(), &e1, "Y").expect("line");

    for (theta, name) in [(std::f64::consts::FRAC_PI_2, "pi/2"), (std::f64::consts::FRAC_PI_6, "pi/6")] {
        let dir = crate::space::rvec(&[theta.cos(), theta.sin()]);
        let z = Subspace::line(ambient.clone(), &dir, "Z").expect("line");
        let expect = 2.0 * (theta / 2.0).sin();
        let q = gap_opening(&y, &z, budget, seed).expect("same ambient");
        c.check(
            (q.lower - expect).abs() <= 1e-6 && (q.upper - expect).abs() <= 1e-6,
            format!("gap between lines at {name}: [{}, {}] vs 2 sin({name}/2) = {expect}", q.lower, q.upper),
        );
        let r = operator_opening(&y, &z, &[], budget, seed).expect("same ambient");
        c.check(
            (r.cert.upper - expect).abs() <= 1e-9,
            format!("rotation candidate at {name}: upper {} vs {expect}", r.cert.upper),
        );
    }

    let ambient3 = real_lp(3, 2.0);
    let y1 = Subspace::coordinate_span(ambient3.clone(), &[0], "Y").expect("spans");
    let z2 = Subspace::coordinate_span(ambient3, &[0, 1], "Z").expect("spans");
    let r = operator_opening_upper(&y1, &z2, &[], budget, seed).expect("same ambient");
    c.check(
        r.convention && r.cert.lower == 1.0 && r.cert.upper == 1.0,
        format!("dimension mismatch: value [{}, {}], convention {}", r.cert.lower, r.cert.upper, r.convention),
    );

    let sub = Subspace::coordinate_span(real_lp(3, 1.0), &[0, 1], "Y").expect("spans");
    let q = gap_opening(&sub, &sub.clone(), budget, seed).expect("same ambient");
    c.check(q.lower <= 1e-12 && q.upper <= 1e-12, format!("Q(Y,Y) = [{}, {}]", q.lower, q.upper));
    let id = InvertibleMap::identity(real_lp(3, 1.0));
    let r = operator_opening(&sub, &sub.clone(), &[id], budget, seed).expect("same ambient");
    c.check(r.cert.upper <= 1e-12, format!("r(Y,Y) upper = {}", r.cert.upper));
    c
}

fn criterion_8(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(8, "oracle equivalence");
    let per_family = scaled(50, opts.scale, 4);
    let oracle_count = scaled(1_000_000, opts.scale, 50_000);
    let budget = SearchBudget::new(16, 300);
    let mut families = families_2d();
    families.push(NormedSpace::lp(ScalarField::Complex, 2, 2.0).expect("valid"));
    for (si, space) in families.iter().enumerate() {
        let domain = Domain::Space(space.clone());
        let mut rng = rng::stream(opts.seed, SALT_VERIFY, 0x0800 + si as u64);
        let mats: Vec<Matrix> = (0..per_family).map(|_| random_matrix(&mut rng, 2, space.field())).collect();
        let oracles = radius_dense_oracle_batch(&domain, &mats, oracle_count, opts.seed)
            .expect("oracle runs");
        let mut worst: f64 = 0.0;
        for (m, oracle) in mats.iter().zip(&oracles) {
            let op = OperatorRep::new(domain.clone(), m.clone(), budget, opts.seed).expect("well formed");
            let v = numerical_radius(&op, budget, opts.seed).expect("computes");
            worst = worst.max((v.lower - oracle.lower).abs());
        }
        c.check(
            worst <= 1e-3,
            format!("{}: multistart vs dense oracle, worst gap {worst:.3e} over {per_family} operators", space.label()),
        );
    }

    // Polyhedral renderings agree with the matching closed forms.
    let pairs = [
        (NormedSpace::cross_polytope(2).expect("spans"), real_lp(2, 1.0)),
        (NormedSpace::hypercube(2).expect("spans"), real_lp(2, f64::INFINITY)),
    ];
    let samples = scaled(1000, opts.scale, 50);
    for (poly, lp) in pairs {
        let mut rng = rng::stream(opts.seed, SALT_VERIFY, 0x0801);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = rng::gaussian_vector(&mut rng, 2, ScalarField::Real) * Complex64::new(2.0, 0.0);
            worst = worst.max((poly.norm(&x).expect("dim") - lp.norm(&x).expect("dim")).abs());
            worst = worst.max((poly.dual_norm(&x).expect("dim") - lp.dual_norm(&x).expect("dim")).abs());
        }
        c.check(worst <= 1e-9, format!("{} vs {}: worst norm gap {worst:.3e}", poly.label(), lp.label()));
    }
    c
}

fn criterion_9(opts: &BatteryOptions) -> CriterionResult {
    let mut c = CriterionResult::new(9, "determinism");
    let digest_opts = BatteryOptions { seed: opts.seed, scale: (opts.scale * 0.04).clamp(0.005, 0.05) };

    let run = |threads: Option<usize>| -> String {
        let report = match threads {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("thread pool builds");
                pool.install(|| run_criteria_1_to_8(&digest_opts))
            }
            None => run_criteria_1_to_8(&digest_opts),
        };
        serde_json::to_string(&battery_to_value(&report)).expect("serializes")
    };

    let first = run(None);
    let second = run(None);
    c.check(
        first == second,
        format!("repeated run is byte-identical ({} bytes)", first.len()),
    );
    let one_thread = run(Some(1));
    let two_threads = run(Some(2));
    c.check(
        one_thread == two_threads,
        format!("1-thread and 2-thread runs agree ({} bytes)", one_thread.len()),
    );
    c
}

fn run_criteria_1_to_8(opts: &BatteryOptions) -> BatteryReport {
    let results = vec![
        criterion_1(opts),
        criterion_2(opts),
        criterion_3(opts),
        criterion_4(opts),
        criterion_5(opts),
        criterion_6(opts),
        criterion_7(opts),
        criterion_8(opts),
    ];
    let passed = results.iter().all(|c| c.passed);
    BatteryReport { seed: opts.seed, scale: opts.scale, results, passed }
}

/// Run the full acceptance battery (criteria 1-9).
pub fn run_battery(opts: &BatteryOptions) -> BatteryReport {
    let mut report = run_criteria_1_to_8(opts);
    report.results.push(criterion_9(opts));
    report.passed = report.results.iter().all(|c| c.passed);
    report
}

/// CSV rows for a battery report under the frozen `criterion,name,passed`
/// header.
pub fn battery_csv(report: &BatteryReport) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec!["criterion".to_string(), "name".to_string(), "passed".to_string()];
    let rows = report
        .results
        .iter()
        .map(|c| vec![c.id.to_string(), c.name.clone(), c.passed.to_string()])
        .collect();
    (header, rows)
}
