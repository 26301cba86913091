//! State-pair correction.
//!
//! Given `u` in the unit ball and `u*` in the dual unit ball with defect
//! `delta = 1 - Re u*(u)` below `eps^2 / 2`, there is an exact state pair
//! `(y, y*)` with `|u - y| < eps` and `|u* - y*|* < eps`. This module finds
//! one constructively: candidate unit vectors are paired with the nearest
//! point of their norming face (an exact small LP on non-smooth norms), and
//! a local search over sphere points and faces drives both distances down.
//! Failure to meet the bounds on an admissible input is reported as search
//! stagnation, never as a refutation.

use num_complex::Complex64;

use crate::cert::SearchBudget;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram};
use crate::rng::{self, SALT_BPB};
use crate::space::{
    pairing, real_part, NormKind, NormedSpace, ScalarField, StatePair, Vector, DEFAULT_FACE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Converged,
    Stagnated,
}

/// Outcome of one correction.
#[derive(Debug, Clone)]
pub struct BpbResult {
    pub u: Vector,
    pub u_star: Vector,
    /// `1 - Re u*(u)` of the input pair.
    pub defect: f64,
    pub epsilon: f64,
    pub corrected: StatePair,
    /// `|u - y|`
    pub primal_distance: f64,
    /// `|u* - y*|*`
    pub dual_distance: f64,
    pub search_status: SearchStatus,
}

impl BpbResult {
    /// Does this result certify the claim at tolerance `eps`? Any result
    /// certifying `eps1` certifies every `eps2 >= eps1`.
    pub fn certifies(&self, eps: f64) -> bool {
        self.search_status == SearchStatus::Converged
            && self.primal_distance < eps
            && self.dual_distance < eps
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BpbOptions {
    /// When false, the admissibility precondition `defect < eps^2/2` is not
    /// enforced and the search returns best-effort output.
    pub enforce: bool,
    pub budget: SearchBudget,
    pub seed: u64,
}

impl Default for BpbOptions {
    fn default() -> Self {
        BpbOptions { enforce: true, budget: SearchBudget::new(8, 160), seed: 0 }
    }
}

/// `delta = 1 - Re u*(u)` for a pair from the (slightly inflated) unit balls.
pub fn defect(space: &NormedSpace, u: &Vector, u_star: &Vector) -> Result<f64> {
    space.check_vector(u)?;
    space.check_vector(u_star)?;
    let nu = space.norm(u)?;
    let nf = space.dual_norm(u_star)?;
    if nu > 1.0 + 1e-9 {
        return Err(Error::Precondition(format!("|u| = {nu} exceeds the unit ball")));
    }
    if nf > 1.0 + 1e-9 {
        return Err(Error::Precondition(format!("|u*|* = {nf} exceeds the dual unit ball")));
    }
    Ok(1.0 - pairing(u_star, u).re)
}

/// Nearest point of the norming face of `y` to `target`, in the dual norm.
/// Exact for smooth norms (singleton face), real `l1` (componentwise clamp),
/// real sup norm and polyhedral norms (small exact LPs); best extreme point
/// otherwise.
fn face_nearest(space: &NormedSpace, y: &Vector, target: &Vector) -> Result<(Vector, f64)> {
    let face = space.norming_functionals(y, DEFAULT_FACE_CAP)?;
    if face.functionals.len() == 1 {
        let f = face.functionals.into_iter().next().expect("len checked");
        let d = space.dual_norm(&(target - &f))?;
        return Ok((f, d));
    }
    let real = space.field() == ScalarField::Real;
    match space.kind() {
        NormKind::Lp { p } if *p == 1.0 && real => {
            // Face is a box: signs fixed on the support, free in [-1, 1] on
            // zero coordinates. The sup-norm distance minimizes componentwise.
            let value = space.norm(y)?;
            let zero_tol = 1e-12 * value;
            let f = Vector::from_fn(y.len(), |i, _| {
                if y[i].norm() > zero_tol {
                    face.functionals[0][i]
                } else {
                    Complex64::new(target[i].re.clamp(-1.0, 1.0), 0.0)
                }
            });
            let d = space.dual_norm(&(target - &f))?;
            Ok((f, d))
        }
        NormKind::Lp { p } if p.is_infinite() && real => {
            // min |target - F lambda|_1 over the simplex: LP in (lambda, s).
            let d = y.len();
            let m = face.functionals.len();
            let fmat: Vec<Vector> = face.functionals.clone();
            let nvars = m + d;
            let mut lp = LinearProgram { objective: vec![0.0; nvars], ..Default::default() };
            for j in 0..d {
                lp.objective[m + j] = 1.0;
            }
            let mut simplex_row = vec![0.0; nvars];
            simplex_row[..m].fill(1.0);
            lp.eq.push((simplex_row, 1.0));
            for j in 0..d {
                let mut plus = vec![0.0; nvars];
                let mut minus = vec![0.0; nvars];
                for (i, f) in fmat.iter().enumerate() {
                    plus[i] = f[j].re;
                    minus[i] = -f[j].re;
                }
                plus[m + j] = -1.0;
                minus[m + j] = -1.0;
                lp.le.push((plus.clone(), target[j].re));
                lp.le.push((minus, -target[j].re));
            }
            solve_face_lp(space, &face.functionals, lp, m, target)
        }
        NormKind::Polyhedral { .. } => {
            // min t with |<target - F lambda, v>| <= t over ball vertices v.
            let ball = space.ball().expect("polyhedral spaces carry their ball");
            let m = face.functionals.len();
            let nvars = m + 1;
            let mut lp = LinearProgram { objective: vec![0.0; nvars], ..Default::default() };
            lp.objective[m] = 1.0;
            let mut simplex_row = vec![0.0; nvars];
            simplex_row[..m].fill(1.0);
            lp.eq.push((simplex_row, 1.0));
            let tr = real_part(target);
            for v in &ball.primal {
                let tv = tr.dot(v);
                let mut plus = vec![0.0; nvars];
                let mut minus = vec![0.0; nvars];
                for (i, f) in face.functionals.iter().enumerate() {
                    let fv = real_part(f).dot(v);
                    plus[i] = -fv;
                    minus[i] = fv;
                }
                plus[m] = -1.0;
                minus[m] = -1.0;
                lp.le.push((plus, -tv));
                lp.le.push((minus, tv));
            }
            solve_face_lp(space, &face.functionals, lp, m, target)
        }
        _ => {
            // Complex non-smooth faces have a continuum of extreme points;
            // settle for the best listed one.
            let mut best: Option<(Vector, f64)> = None;
            for f in face.functionals {
                let d = space.dual_norm(&(target - &f))?;
                if best.as_ref().map_or(true, |(_, b)| d < *b) {
                    best = Some((f, d));
                }
            }
            Ok(best.expect("nonempty face"))
        }
    }
}

fn solve_face_lp(
    space: &NormedSpace,
    face: &[Vector],
    lp: LinearProgram,
    m: usize,
    target: &Vector,
) -> Result<(Vector, f64)> {
    let combo = match lp::solve(&lp) {
        Some(sol) => {
            let mut f = Vector::zeros(target.len());
            for (i, fi) in face.iter().enumerate() {
                f += fi * Complex64::new(sol.x[i], 0.0);
            }
            f
        }
        None => face[0].clone(),
    };
    let _ = m;
    let d = space.dual_norm(&(target - &combo))?;
    Ok((combo, d))
}

fn objective(primal: f64, dual: f64) -> f64 {
    primal.max(dual)
}

/// Correct a near-state pair to an exact state pair within the `eps` bounds,
/// with default options (precondition enforced, fixed seed).
pub fn bpb_correct(space: &NormedSpace, u: &Vector, u_star: &Vector, epsilon: f64) -> Result<BpbResult> {
    bpb_correct_with(space, u, u_star, epsilon, BpbOptions::default())
}

pub fn bpb_correct_with(
    space: &NormedSpace,
    u: &Vector,
    u_star: &Vector,
    epsilon: f64,
    opts: BpbOptions,
) -> Result<BpbResult> {
    if !(epsilon > 0.0 && epsilon < std::f64::consts::SQRT_2) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, sqrt 2), got {epsilon}"
        )));
    }
    let delta = defect(space, u, u_star)?;
    if opts.enforce && !(delta.abs() < epsilon * epsilon / 2.0) {
        return Err(Error::Precondition(format!(
            "defect {delta} is not below eps^2/2 = {}",
            epsilon * epsilon / 2.0
        )));
    }
    let nu = space.norm(u)?;
    if nu <= 1e-12 {
        return Err(Error::ZeroVector);
    }

    // Candidate portfolio: the normalized input, the dual-route pair, and a
    // normalized sweep between them.
    let mut best: Option<(Vector, Vector, f64, f64)> = None; // (y, f, primal, dual)
    let mut consider = |y: Vector, f: Vector, primal: f64, dual: f64| {
        if best
            .as_ref()
            .map_or(true, |(_, _, bp, bd)| objective(primal, dual) < objective(*bp, *bd))
        {
            best = Some((y, f, primal, dual));
        }
    };

    let y0 = u / Complex64::new(nu, 0.0);
    let (f0, d0) = face_nearest(space, &y0, u_star)?;
    let p0 = space.norm(&(u - &y0))?;
    consider(y0.clone(), f0, p0, d0);

    let nf = space.dual_norm(u_star)?;
    let dual_pair: Option<(Vector, Vector)> = if nf > 1e-12 {
        let g = u_star / Complex64::new(nf, 0.0);
        let dual_space = space.dual_space();
        let back = dual_space.norming_functionals(&g, DEFAULT_FACE_CAP)?;
        let y1 = back.functionals[0].clone();
        Some((y1, g))
    } else {
        None
    };
    if let Some((y1, g)) = &dual_pair {
        let p1 = space.norm(&(u - y1))?;
        let d1 = space.dual_norm(&(u_star - g))?;
        consider(y1.clone(), g.clone(), p1, d1);
        // also re-pick the functional from y1's face
        let (f1, d1b) = face_nearest(space, y1, u_star)?;
        consider(y1.clone(), f1, p1, d1b);
        for k in 1..8 {
            let t = k as f64 / 8.0;
            let mix = &y0 * Complex64::new(1.0 - t, 0.0) + y1 * Complex64::new(t, 0.0);
            let nm = space.norm(&mix)?;
            if nm <= 1e-12 {
                continue;
            }
            let yt = mix / Complex64::new(nm, 0.0);
            let (ft, dt) = face_nearest(space, &yt, u_star)?;
            let pt = space.norm(&(u - &yt))?;
            consider(yt, ft, pt, dt);
        }
    }

    let (mut y, mut f, mut primal, mut dual) = best.expect("at least one candidate");

    // Local polish: shrinking random tangent moves, re-pairing each accepted
    // point with the nearest face element.
    let mut rng = rng::stream(opts.seed, SALT_BPB, 0);
    let mut radius = 0.5 * epsilon.min(1.0);
    let steps = opts.budget.steps.max(40);
    for _ in 0..steps {
        if objective(primal, dual) < 0.8 * epsilon {
            break;
        }
        let g = rng::gaussian_vector(&mut rng, space.dim(), space.field());
        let cand = &y + g * Complex64::new(radius, 0.0);
        radius = (radius * 0.97).max(1e-4);
        let n = space.norm(&cand)?;
        if n <= 1e-12 {
            continue;
        }
        let yc = cand / Complex64::new(n, 0.0);
        let (fc, dc) = face_nearest(space, &yc, u_star)?;
        let pc = space.norm(&(u - &yc))?;
        if objective(pc, dc) < objective(primal, dual) {
            y = yc;
            f = fc;
            primal = pc;
            dual = dc;
        }
    }

    let corrected = StatePair::new(space, y, f)?;
    let status = if primal < epsilon && dual < epsilon {
        SearchStatus::Converged
    } else {
        SearchStatus::Stagnated
    };
    Ok(BpbResult {
        u: u.clone(),
        u_star: u_star.clone(),
        defect: delta,
        epsilon,
        corrected,
        primal_distance: primal,
        dual_distance: dual,
        search_status: status,
    })
}
