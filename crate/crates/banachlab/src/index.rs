//! Numerical index estimation: `n(X) = inf { v(T) : |T| = 1 }`.
//!
//! The infimum runs over a non-convex landscape in `dim^2` (real) or
//! `2 dim^2` (complex) parameters, so no certified global lower bound is
//! attempted in dimension two or higher. What is reported instead:
//!
//! - a certified **upper** bound: the best ratio `v_upper(T) / |T|_lower`
//!   over every candidate operator the search certified, together with the
//!   witness operator attaining it;
//! - a clearly-labeled **heuristic lower** bound derived from search
//!   stagnation across restarts.
//!
//! Candidates come from multistart subgradient descent on the max-structure
//! of `v` (active state pairs sampled from a fixed pool), seeded with a
//! portfolio of canonical operators (identity, plane rotation, shift,
//! reversal) followed by random starts. Every restart's final operator is
//! certified at a fixed inner budget, independent of the restart count, so
//! enlarging the budget only ever adds candidates: the reported upper bound
//! is monotone under budget doubling. In dimension one `v(T) = |T|` for
//! every operator, so the index is exactly 1 and is reported as such.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cert::{BoundsCertificate, Interval, SearchBudget};
use crate::error::{Error, Result};
use crate::operator::{self, numerical_radius, OperatorRep, StatePairPool};
use crate::rng::{self, SALT_INDEX};
use crate::space::{pairing, Matrix, ScalarField};
use crate::subspace::Domain;

/// Inner budget at which every candidate is certified; fixed so that the
/// candidate set is the only thing a larger outer budget changes.
const CERT_BUDGET: SearchBudget = SearchBudget { restarts: 10, steps: 200 };
/// Pool size for the surrogate objective used during descent.
const POOL_SAMPLES: usize = 160;
/// Descent steps per restart.
const DESCENT_STEPS: u32 = 60;

/// Result of a numerical-index search over one domain.
#[derive(Debug, Clone)]
pub struct IndexEstimate {
    pub space_label: String,
    /// Certified: `v_upper(witness) / |witness|_lower`.
    pub upper: f64,
    /// Heuristic, from search stagnation; not certified.
    pub heuristic_lower: f64,
    pub witness: OperatorRep,
    /// Radius certificate backing `upper`.
    pub witness_radius: BoundsCertificate,
    /// Inner certification budget (doubled by `index_witness_check`).
    pub cert_budget: SearchBudget,
    pub budget_used: u64,
    pub restarts: u32,
    pub seed: u64,
}

impl IndexEstimate {
    pub fn interval(&self) -> Interval {
        Interval::new(self.heuristic_lower, self.upper)
    }
}

/// Ratio interval `[v_lower/|T|_upper, v_upper/|T|_lower]` for one operator.
/// Scale-invariant to float noise.
pub fn index_ratio(op: &OperatorRep, budget: SearchBudget, seed: u64) -> Result<Interval> {
    let n = op.norm_bounds();
    if n.upper <= 0.0 {
        return Err(Error::ZeroOperator);
    }
    let v = numerical_radius(op, budget, seed)?;
    let lower = if n.upper > 0.0 { v.lower / n.upper } else { 0.0 };
    let upper = if n.lower > 0.0 { v.upper / n.lower } else { f64::INFINITY };
    Ok(Interval::new(lower, upper))
}

fn inner_product_gram(domain: &Domain) -> Option<Matrix> {
    match domain {
        Domain::Space(s) => match s.kind() {
            crate::space::NormKind::WeightedEuclidean { weights } => Some(Matrix::from_fn(
                s.dim(),
                s.dim(),
                |i, j| if i == j { Complex64::new(weights[i], 0.0) } else { Complex64::new(0.0, 0.0) },
            )),
            _ => None,
        },
        Domain::Induced(d) => match &d.rep {
            crate::subspace::InducedRep::Gram { gram, .. } => Some(gram.clone()),
            _ => None,
        },
    }
}

fn canonical_matrices(domain: &Domain) -> Vec<Matrix> {
    let dim = domain.dim();
    let field = domain.field();
    let mut out = Vec::new();
    out.push(Matrix::identity(dim, dim));
    if dim >= 2 {
        // plane rotation in the first two coordinates
        let mut rot = Matrix::identity(dim, dim);
        rot[(0, 0)] = Complex64::new(0.0, 0.0);
        rot[(1, 1)] = Complex64::new(0.0, 0.0);
        rot[(0, 1)] = Complex64::new(-1.0, 0.0);
        rot[(1, 0)] = Complex64::new(1.0, 0.0);
        // On a real inner-product domain with Gram matrix G, the operator
        // G^{-1} S for skew S has numerical range {0}: the adapted rotation.
        if field == ScalarField::Real {
            if let Some(g) = inner_product_gram(domain) {
                if let Some(ginv) = g.try_inverse() {
                    let mut skew = Matrix::zeros(dim, dim);
                    skew[(0, 1)] = Complex64::new(-1.0, 0.0);
                    skew[(1, 0)] = Complex64::new(1.0, 0.0);
                    out.push(&ginv * &skew);
                }
            }
        }
        out.push(rot);
        // nilpotent shift
        let mut shift = Matrix::zeros(dim, dim);
        for i in 1..dim {
            shift[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        out.push(shift);
        // reversal permutation
        let mut rev = Matrix::zeros(dim, dim);
        for i in 0..dim {
            rev[(i, dim - 1 - i)] = Complex64::new(1.0, 0.0);
        }
        out.push(rev);
        if field == ScalarField::Complex {
            let mut phase = Matrix::identity(dim, dim);
            phase[(0, 0)] = Complex64::new(0.0, 1.0);
            out.push(phase);
        }
    }
    out
}

fn frobenius(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// One certified candidate: the operator with its ratio bounds.
struct Candidate {
    op: OperatorRep,
    radius: BoundsCertificate,
    ratio_upper: f64,
    evals: u64,
}

fn certify(domain: &Domain, matrix: Matrix, seed: u64) -> Option<Candidate> {
    let op = OperatorRep::new(domain.clone(), matrix, CERT_BUDGET, seed).ok()?;
    if op.norm_bounds().lower <= 1e-12 {
        return None;
    }
    let radius = numerical_radius(&op, CERT_BUDGET, seed).ok()?;
    let ratio_upper = radius.upper / op.norm_bounds().lower;
    let evals = radius.budget_used + op.norm_bounds().budget_used;
    Some(Candidate { op, radius, ratio_upper, evals })
}

/// Descend the ratio surrogate `v_pool(T / |T|)` from one starting matrix.
fn descend(
    domain: &Domain,
    pool: &StatePairPool,
    start: Matrix,
    seed: u64,
    restart: u64,
) -> Option<Matrix> {
    let dim = domain.dim();
    let normalize_op = |m: &Matrix| -> Option<Matrix> {
        let cert = operator::matrix_operator_norm(domain, m, SearchBudget::new(2, 40), seed).ok()?;
        let n = cert.upper;
        (n > 1e-12).then(|| m / Complex64::new(n, 0.0))
    };
    let mut rng = rng::stream(seed, SALT_INDEX, restart);
    let mut t = normalize_op(&start)?;
    let (mut value, _) = pool.max_abs_pairing(&t);
    for _ in 0..DESCENT_STEPS {
        // Active pairs within 5% of the pool maximum give candidate
        // subgradient directions; the steepest accepted one wins.
        let mut directions: Vec<Matrix> = Vec::new();
        let (vmax, _) = pool.max_abs_pairing(&t);
        for sp in &pool.pairs {
            let val = pairing(&sp.f, &(&t * &sp.x));
            let m = val.norm();
            if m >= vmax * 0.95 && m > 1e-14 && directions.len() < 4 {
                let phase = val / m;
                let g = Matrix::from_fn(dim, dim, |i, j| phase * (sp.f[i] * sp.x[j]).conj());
                directions.push(g);
            }
        }
        if directions.is_empty() {
            break;
        }
        // one random probe direction per step
        let rand_dir = Matrix::from_fn(dim, dim, |_, _| {
            let re: f64 = rng::uniform(&mut rng, -1.0, 1.0);
            let im = match domain.field() {
                ScalarField::Real => 0.0,
                ScalarField::Complex => rng::uniform(&mut rng, -1.0, 1.0),
            };
            Complex64::new(re, im)
        });
        directions.push(rand_dir);

        let mut best_step: Option<(f64, Matrix)> = None;
        for g in &directions {
            let gf = frobenius(g);
            if gf < 1e-14 {
                continue;
            }
            let dir = g / Complex64::new(gf, 0.0);
            let mut step = 0.5;
            while step > 1e-8 {
                let cand = &t - &dir * Complex64::new(step, 0.0);
                if let Some(cand) = normalize_op(&cand) {
                    let (cv, _) = pool.max_abs_pairing(&cand);
                    if cv < value && best_step.as_ref().map_or(true, |(b, _)| cv < *b) {
                        best_step = Some((cv, cand));
                        break;
                    }
                }
                step *= 0.25;
            }
        }
        match best_step {
            Some((cv, cand)) => {
                t = cand;
                value = cv;
            }
            None => break,
        }
    }
    Some(t)
}

/// Estimate the numerical index of a domain by min-max search over the
/// operator sphere. Deterministic given `(budget, seed)`.
pub fn numerical_index(domain: &Domain, budget: SearchBudget, seed: u64) -> Result<IndexEstimate> {
    numerical_index_with_starts(domain, budget, seed, &[])
}

/// Same search with caller-supplied starting operators ahead of the random
/// restarts (e.g. witnesses transported from a nearby space). Extra starts
/// are certified both as given and after descent.
pub fn numerical_index_with_starts(
    domain: &Domain,
    budget: SearchBudget,
    seed: u64,
    extra_starts: &[Matrix],
) -> Result<IndexEstimate> {
    let dim = domain.dim();
    if dim == 0 {
        return Err(Error::InvalidParameter("empty domain".into()));
    }
    if dim == 1 {
        // Scalars: f(Tx) = t f(x) = t for every state pair, so v(T) = |T|.
        let witness = OperatorRep::identity(domain.clone());
        return Ok(IndexEstimate {
            space_label: domain.label(),
            upper: 1.0,
            heuristic_lower: 1.0,
            witness,
            witness_radius: BoundsCertificate::exact(1.0, vec![], 0),
            cert_budget: CERT_BUDGET,
            budget_used: 0,
            restarts: 0,
            seed,
        });
    }

    let pool = StatePairPool::build(domain, POOL_SAMPLES, seed)?;
    let mut canonical = canonical_matrices(domain);
    canonical.extend(extra_starts.iter().cloned());
    let restarts = budget.restarts.max(1).max(canonical.len() as u32);

    // Starting matrices in restart order: canonical first, then random.
    let starts: Vec<Matrix> = (0..restarts as usize)
        .map(|i| {
            if i < canonical.len() {
                canonical[i].clone()
            } else {
                let mut rng = rng::stream(seed, SALT_INDEX, 0x1000 + i as u64);
                Matrix::from_fn(dim, dim, |_, _| {
                    let re: f64 = rng::uniform(&mut rng, -1.0, 1.0);
                    let im = match domain.field() {
                        ScalarField::Real => 0.0,
                        ScalarField::Complex => rng::uniform(&mut rng, -1.0, 1.0),
                    };
                    Complex64::new(re, im)
                })
            }
        })
        .collect();

    // Each restart: descend, then certify the final operator at the fixed
    // inner budget. Canonical starts are additionally certified as-is.
    let results: Vec<Vec<Candidate>> = starts
        .par_iter()
        .enumerate()
        .map(|(i, start)| {
            let mut cands = Vec::new();
            if i < canonical.len() {
                if let Some(c) = certify(domain, start.clone(), seed.wrapping_add(i as u64)) {
                    cands.push(c);
                }
            }
            if let Some(final_t) = descend(domain, &pool, start.clone(), seed, i as u64) {
                if let Some(c) = certify(domain, final_t, seed.wrapping_add(0x2000 + i as u64)) {
                    cands.push(c);
                }
            }
            cands
        })
        .collect();

    let mut budget_used = pool.pairs.len() as u64;
    let mut best: Option<Candidate> = None;
    let mut uppers_by_restart: Vec<f64> = Vec::with_capacity(restarts as usize);
    for group in results {
        let mut restart_best = f64::INFINITY;
        for cand in group {
            budget_used += cand.evals;
            restart_best = restart_best.min(cand.ratio_upper);
            if best.as_ref().map_or(true, |b| cand.ratio_upper < b.ratio_upper) {
                best = Some(cand);
            }
        }
        uppers_by_restart.push(restart_best);
    }
    let best = best.ok_or_else(|| Error::InvalidParameter("no candidate could be certified".into()))?;

    let upper = best.ratio_upper;
    // Stagnation of the incumbent across restarts.
    let n = uppers_by_restart.len();
    let gain = if n >= 4 {
        let head = uppers_by_restart[..n * 3 / 4].iter().cloned().fold(f64::INFINITY, f64::min);
        (head - upper).max(0.0)
    } else {
        0.0
    };
    let heuristic_lower = (upper - gain - 1e-9 * upper.abs()).clamp(0.0, upper);

    Ok(IndexEstimate {
        space_label: domain.label(),
        upper,
        heuristic_lower,
        witness: best.op,
        witness_radius: best.radius,
        cert_budget: CERT_BUDGET,
        budget_used,
        restarts,
        seed,
    })
}

/// Recompute the witness's certificates from scratch at double the inner
/// budget; `true` when the reported upper bound is still valid within 1e-6.
pub fn index_witness_check(estimate: &IndexEstimate, seed: u64) -> Result<bool> {
    let budget = estimate.cert_budget.doubled();
    let op = OperatorRep::new(
        estimate.witness.domain().clone(),
        estimate.witness.matrix().clone(),
        budget,
        seed,
    )?;
    if op.norm_bounds().lower <= 1e-12 {
        return Err(Error::MissingWitness);
    }
    let radius = numerical_radius(&op, budget, seed)?;
    let ratio_upper = radius.upper / op.norm_bounds().lower;
    Ok(ratio_upper <= estimate.upper + 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{rmat, NormedSpace};

    fn domain_lp(field: ScalarField, dim: usize, p: f64) -> Domain {
        Domain::Space(NormedSpace::lp(field, dim, p).unwrap())
    }

    fn budget() -> SearchBudget {
        SearchBudget::new(16, 300)
    }

    #[test]
    fn ratio_identity_is_one() {
        let id = OperatorRep::identity(domain_lp(ScalarField::Real, 3, 2.0));
        let r = index_ratio(&id, budget(), 3).unwrap();
        assert!((r.lower - 1.0).abs() < 1e-9);
        assert!((r.upper - 1.0).abs() < 1e-6);
    }

    #[test]
    fn ratio_rotation_is_zero() {
        let rot = OperatorRep::new(
            domain_lp(ScalarField::Real, 2, 2.0),
            rmat(&[&[0.0, -1.0], &[1.0, 0.0]]),
            budget(),
            3,
        )
        .unwrap();
        let r = index_ratio(&rot, budget(), 3).unwrap();
        assert!(r.lower.abs() <= 1e-9);
        assert!(r.upper <= 1e-9, "upper = {}", r.upper);
    }

    #[test]
    fn ratio_complex_shift_is_half() {
        let shift = OperatorRep::new(
            domain_lp(ScalarField::Complex, 2, 2.0),
            rmat(&[&[0.0, 0.0], &[1.0, 0.0]]),
            SearchBudget::new(32, 400),
            3,
        )
        .unwrap();
        let r = index_ratio(&shift, SearchBudget::new(32, 400), 3).unwrap();
        assert!((r.lower - 0.5).abs() < 1e-6, "lower = {}", r.lower);
        assert!((r.upper - 0.5).abs() < 1e-6, "upper = {}", r.upper);
    }

    #[test]
    fn ratio_is_scale_invariant() {
        let domain = domain_lp(ScalarField::Real, 2, 1.0);
        let m = rmat(&[&[0.3, -0.9], &[1.2, 0.1]]);
        let base = OperatorRep::new(domain.clone(), m.clone(), budget(), 3).unwrap();
        let r1 = index_ratio(&base, budget(), 3).unwrap();
        for t in [3.0, 0.04, -1.7] {
            let scaled = OperatorRep::new(domain.clone(), &m * Complex64::new(t, 0.0), budget(), 3).unwrap();
            let r2 = index_ratio(&scaled, budget(), 3).unwrap();
            assert!((r1.lower - r2.lower).abs() <= 1e-9);
            assert!((r1.upper - r2.upper).abs() <= 1e-9);
        }
    }

    #[test]
    fn index_dim_one_is_exactly_one() {
        for p in [1.0, 2.0, f64::INFINITY] {
            let est = numerical_index(&domain_lp(ScalarField::Real, 1, p), budget(), 3).unwrap();
            assert_eq!(est.upper, 1.0);
            assert_eq!(est.heuristic_lower, 1.0);
        }
    }

    #[test]
    fn index_real_euclidean_plane_is_zero() {
        let est = numerical_index(&domain_lp(ScalarField::Real, 2, 2.0), budget(), 3).unwrap();
        assert!(est.upper <= 1e-6, "upper = {}", est.upper);
        assert!(est.heuristic_lower <= est.upper);
    }

    #[test]
    fn index_real_l1_plane_is_one() {
        let est = numerical_index(&domain_lp(ScalarField::Real, 2, 1.0), budget(), 3).unwrap();
        assert!(est.upper >= 1.0 - 1e-3 && est.upper <= 1.0 + 1e-9, "upper = {}", est.upper);
        assert!(est.heuristic_lower >= 1.0 - 1e-3);
    }

    #[test]
    fn index_estimates_lie_in_the_unit_range() {
        // Also on norm families without closed-form operator norms, where
        // the certificates are heuristic on one side.
        for domain in [
            domain_lp(ScalarField::Real, 2, 2.5),
            domain_lp(ScalarField::Complex, 2, 3.0),
            domain_lp(ScalarField::Real, 3, 1.0),
        ] {
            let est = numerical_index(&domain, SearchBudget::new(8, 200), 11).unwrap();
            assert!(est.heuristic_lower >= 0.0);
            assert!(est.heuristic_lower <= est.upper);
            assert!(est.upper <= 1.0 + 1e-9, "{}: upper = {}", est.space_label, est.upper);
        }
    }

    #[test]
    fn index_upper_monotone_under_budget_doubling() {
        let domain = domain_lp(ScalarField::Real, 2, f64::INFINITY);
        let small = numerical_index(&domain, SearchBudget::new(8, 300), 5).unwrap();
        let large = numerical_index(&domain, SearchBudget::new(16, 300), 5).unwrap();
        assert!(large.upper <= small.upper + 1e-12);
    }

    #[test]
    fn witness_check_accepts_and_rejects() {
        let domain = domain_lp(ScalarField::Real, 2, 2.0);
        let est = numerical_index(&domain, budget(), 3).unwrap();
        assert!(index_witness_check(&est, 17).unwrap());

        let complex = domain_lp(ScalarField::Complex, 2, 2.0);
        let est_c = numerical_index(&complex, budget(), 3).unwrap();
        assert!(index_witness_check(&est_c, 17).unwrap());

        let mut corrupted = est.clone();
        let mut m = corrupted.witness.matrix().clone();
        m[(0, 0)] += Complex64::new(0.1, 0.0);
        corrupted.witness = OperatorRep::new(domain, m, budget(), 3).unwrap();
        assert!(!index_witness_check(&corrupted, 17).unwrap());
    }
}
