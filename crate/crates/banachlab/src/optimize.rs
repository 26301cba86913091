//! Multistart hill-climbing on unit spheres.
//!
//! All sup-type searches in the crate (operator norms, numerical radii,
//! sphere distances, index descent) run through this engine. Each restart
//! draws an independent ChaCha stream keyed by `(seed, salt, restart_index)`
//! and the final reduction is an index-tie-broken max, so results are
//! bit-identical regardless of how restarts are scheduled across threads.
//!
//! Acceptance of a step uses a strict `>` comparison and directions are
//! normalized, which makes iterates equivariant under positive scaling of the
//! objective; homogeneity identities (`v(tT) = |t| v(T)`) then hold to float
//! noise rather than to search noise.

use nalgebra::Complex;
use rayon::prelude::*;

use crate::cert::SearchBudget;
use crate::rng::{self, gaussian_vector};
use crate::space::{ScalarField, Vector};

pub(crate) struct SphereSearch<'a> {
    pub dim: usize,
    pub field: ScalarField,
    /// Projects a nonzero point back to the unit sphere; `None` for points
    /// too close to zero.
    pub normalize: &'a (dyn Fn(&Vector) -> Option<Vector> + Sync),
    pub objective: &'a (dyn Fn(&Vector) -> f64 + Sync),
    /// Optional ascent direction at a point; falls back to random directions.
    pub ascent_dir: Option<&'a (dyn Fn(&Vector) -> Option<Vector> + Sync)>,
    /// Deterministic starting points tried before random restarts.
    pub extra_starts: Vec<Vector>,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub best_value: f64,
    pub best_point: Option<Vector>,
    /// Best value per restart, in restart order.
    pub restart_bests: Vec<f64>,
    pub evaluations: u64,
}

impl SearchOutcome {
    /// How much the incumbent improved after three quarters of the restarts
    /// had run; zero when the search stagnated early.
    pub fn tail_gain(&self) -> f64 {
        let n = self.restart_bests.len();
        if n == 0 {
            return 0.0;
        }
        if n < 4 {
            let lo = self.restart_bests.iter().cloned().fold(f64::INFINITY, f64::min);
            return (self.best_value - lo).max(0.0);
        }
        let split = n * 3 / 4;
        let head = self.restart_bests[..split].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (self.best_value - head).max(0.0)
    }

    /// Heuristic upper bound for a supremum estimated from below: the best
    /// value plus observed late-restart gain plus a relative floor.
    pub fn heuristic_upper(&self) -> f64 {
        self.best_value + self.tail_gain() + 1e-9 * self.best_value.abs()
    }
}

const MAX_CONSECUTIVE_FAILS: u32 = 6;
const MIN_STEP: f64 = 1e-10;

fn euclid_norm(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn climb(
    search: &SphereSearch,
    start: &Vector,
    steps: u32,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Option<(f64, Vector, u64)> {
    let mut x = (search.normalize)(start)?;
    let mut value = (search.objective)(&x);
    let mut evals: u64 = 1;
    let mut fails = 0u32;
    for step in 0..steps {
        // Gradient direction when available; random tangent probes after
        // failures and on a fixed cadence to escape non-smooth corners.
        let use_random = fails > 0 || step % 7 == 6 || search.ascent_dir.is_none();
        let dir = if use_random {
            gaussian_vector(rng, search.dim, search.field)
        } else {
            match search.ascent_dir.and_then(|g| g(&x)) {
                Some(d) => d,
                None => gaussian_vector(rng, search.dim, search.field),
            }
        };
        let len = euclid_norm(&dir);
        if len < 1e-14 {
            fails += 1;
            if fails > MAX_CONSECUTIVE_FAILS {
                break;
            }
            continue;
        }
        let dir = dir / Complex::new(len, 0.0);
        let mut t = 0.5;
        let mut accepted = false;
        while t > MIN_STEP {
            let cand = &x + &dir * Complex::new(t, 0.0);
            if let Some(cand) = (search.normalize)(&cand) {
                let cv = (search.objective)(&cand);
                evals += 1;
                if cv > value {
                    x = cand;
                    value = cv;
                    accepted = true;
                    break;
                }
            }
            t *= 0.25;
        }
        if accepted {
            fails = 0;
        } else {
            fails += 1;
            if fails > MAX_CONSECUTIVE_FAILS {
                break;
            }
        }
    }
    Some((value, x, evals))
}

/// Maximize `objective` over the unit sphere with `budget.restarts`
/// independent restarts of at most `budget.steps` hill-climbing steps.
pub(crate) fn multistart_max(
    search: &SphereSearch,
    budget: SearchBudget,
    seed: u64,
    salt: u64,
) -> SearchOutcome {
    let restarts = budget.restarts.max(1);
    let results: Vec<Option<(f64, Vector, u64)>> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, salt, i as u64);
            let start = if (i as usize) < search.extra_starts.len() {
                search.extra_starts[i as usize].clone()
            } else {
                gaussian_vector(&mut rng, search.dim, search.field)
            };
            climb(search, &start, budget.steps, &mut rng)
        })
        .collect();

    let mut outcome = SearchOutcome {
        best_value: f64::NEG_INFINITY,
        best_point: None,
        restart_bests: Vec::with_capacity(restarts as usize),
        evaluations: 0,
    };
    for r in results.into_iter() {
        match r {
            Some((v, x, e)) => {
                outcome.restart_bests.push(v);
                outcome.evaluations += e;
                if v > outcome.best_value {
                    outcome.best_value = v;
                    outcome.best_point = Some(x);
                }
            }
            None => outcome.restart_bests.push(f64::NEG_INFINITY),
        }
    }
    if outcome.best_point.is_none() {
        outcome.best_value = 0.0;
    }
    outcome
}
