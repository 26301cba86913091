//! Convergence experiments: quantitative checks behind the limit theorem
//! `n(X_n) -> n(X)` for subspaces converging in the operator opening.
//!
//! The ingredients, each checkable at desk scale:
//!
//! - the condition bound: `|C - I| < eta/2` forces
//!   `1 / (|C| |C^{-1}|) >= (2 - eta) / (2 + eta)` (Neumann series);
//! - conjugation transport: conjugating a norm-one operator by a
//!   near-identity map keeps its norm above `(2-eta)/(2+eta)` and its
//!   numerical radius below `((2+eta)/(2-eta)) (v(T) + 2 eps)` with
//!   `eps = sqrt(2 eta)`, and transported state pairs have defect at most
//!   `2 eta / (2 + eta)`;
//! - the sandwich envelope: a computable interval around `n(X)` that must
//!   contain `n(X_n)` whenever the perturbation magnitude is `eta`;
//! - perturbation families `C_n = I + (1/n) E` (diagonal, shear, rotation,
//!   fixed random direction) driving full experiments.
//!
//! The envelope uses `m = max(eta, eps)` in both squared factors. The two
//! directions of the underlying argument state their constants in `eta` and
//! `eps` respectively; taking the larger of the two in both places gives a
//! single conservative envelope that upper-bounds either reading.

use num_complex::Complex64;

use crate::cert::{BoundsCertificate, Interval, SearchBudget};
use crate::error::{Error, Result};
use crate::index::{numerical_index, numerical_index_with_starts};
use crate::operator::{
    conjugate_operator, matrix_operator_norm, numerical_radius, OperatorRep,
};
use crate::rng::{self, SALT_LAB};
use crate::space::{pairing, Matrix, NormedSpace, ScalarField};
use crate::subspace::{gap_opening, perturb_subspace, Domain, InvertibleMap, Subspace};

/// The `eps <-> eta` translation used throughout:
/// `eta = min(eps/2, eps^2/2)`, which is `eps^2/2` on `eps in (0, 1)`;
/// inversely `eps = sqrt(2 eta)` for `eta < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonEta {
    pub epsilon: f64,
    pub eta: f64,
}

impl EpsilonEta {
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0,1), got {epsilon}")));
        }
        let eta = (epsilon / 2.0).min(epsilon * epsilon / 2.0);
        Ok(EpsilonEta { epsilon, eta })
    }

    pub fn from_eta(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 0.5) {
            return Err(Error::InvalidParameter(format!("eta must lie in (0, 1/2), got {eta}")));
        }
        Ok(EpsilonEta { epsilon: (2.0 * eta).sqrt(), eta })
    }
}

/// Outcome of the condition-number bound check for one map.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub eta: f64,
    pub norm_map: BoundsCertificate,
    pub norm_inverse: BoundsCertificate,
    /// `1 / (|C|_upper |C^{-1}|_upper)`
    pub reciprocal: f64,
    /// `(2 - eta) / (2 + eta)`
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Checks `1/(|C| |C^{-1}|) >= (2 - eta)/(2 + eta) - 1e-9` for a map with
/// `|C - I| < eta/2`.
pub fn condition_bound_check(
    c: &InvertibleMap,
    eta: f64,
    budget: SearchBudget,
    seed: u64,
) -> Result<ConditionReport> {
    if !(eta > 0.0 && eta < 2.0) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0,2), got {eta}")));
    }
    if !(c.deviation().upper < eta / 2.0) {
        return Err(Error::Precondition(format!(
            "|C - I| = {} is not below eta/2 = {}",
            c.deviation().upper,
            eta / 2.0
        )));
    }
    let domain = Domain::Space(c.ambient().clone());
    let norm_map = matrix_operator_norm(&domain, c.matrix(), budget, seed)?;
    let norm_inverse = matrix_operator_norm(&domain, c.inverse(), budget, seed.wrapping_add(1))?;
    let reciprocal = 1.0 / (norm_map.upper * norm_inverse.upper);
    let bound = (2.0 - eta) / (2.0 + eta);
    let slack = reciprocal - (bound - 1e-9);
    Ok(ConditionReport { eta, norm_map, norm_inverse, reciprocal, bound, slack, pass: slack >= 0.0 })
}

/// Outcome of the conjugation-transport check for one instance.
#[derive(Debug, Clone)]
pub struct TransportReport {
    pub eta: f64,
    pub epsilon: f64,
    /// `|C^{-1} T C|` lower bound vs the floor `(2-eta)/(2+eta) - 1e-6`.
    pub norm_floor_value: f64,
    pub norm_floor_bound: f64,
    pub norm_floor_pass: bool,
    /// `v(C^{-1} T C)` upper bound vs `((2+eta)/(2-eta)) (v(T) + 2 eps) + 1e-6`.
    pub radius_value: f64,
    pub radius_bound: f64,
    pub radius_pass: bool,
    /// Largest transported-pair defect vs `2 eta / (2 + eta) + 1e-9`.
    pub max_state_defect: f64,
    pub state_defect_bound: f64,
    pub state_pass: bool,
    pub pass: bool,
}

/// Transports a norm-one operator on `X` to the pulled-back subspace
/// `C^{-1}(X)` and verifies the norm floor, the radius growth bound, and the
/// defect bound for transported state pairs.
pub fn conjugation_transport_check(
    x: &Subspace,
    t: &OperatorRep,
    c: &InvertibleMap,
    eta: f64,
    samples: usize,
    budget: SearchBudget,
    seed: u64,
) -> Result<TransportReport> {
    let pair = EpsilonEta::from_eta(eta)?;
    if !(c.deviation().upper < eta / 2.0) {
        return Err(Error::Precondition(format!(
            "|C - I| = {} is not below eta/2 = {}",
            c.deviation().upper,
            eta / 2.0
        )));
    }
    let nb = t.norm_bounds();
    if (nb.lower - 1.0).abs() > 1e-6 || (nb.upper - 1.0).abs() > 1e-6 {
        return Err(Error::Precondition(format!(
            "operator norm [{}, {}] is not 1 within 1e-6",
            nb.lower, nb.upper
        )));
    }
    match t.domain().subspace() {
        Some(sub) if sub == x => {}
        _ => return Err(Error::Precondition("operator does not act on the given subspace".into())),
    }

    // Pull X back through C: the source subspace carries the conjugated
    // operator, and C maps it onto X.
    let c_inv = c.inverse_map(budget, seed)?;
    let x_source = perturb_subspace(x, &c_inv)?;
    let t_conj = conjugate_operator(t, c, &x_source, budget, seed)?;

    let ratio = (2.0 - eta) / (2.0 + eta);
    let norm_floor_bound = ratio - 1e-6;
    let norm_floor_value = t_conj.norm_bounds().lower;
    let norm_floor_pass = norm_floor_value >= norm_floor_bound;

    let v_t = numerical_radius(t, budget, seed)?;
    let v_conj = numerical_radius(&t_conj, budget, seed.wrapping_add(1))?;
    let radius_bound = (2.0 + eta) / (2.0 - eta) * (v_t.upper + 2.0 * pair.epsilon) + 1e-6;
    let radius_value = v_conj.upper;
    let radius_pass = radius_value <= radius_bound;

    // Transported state pairs: (x, f) on the source subspace maps to the
    // same coefficients over X's basis (B_source = C^{-1} B_X), and the
    // normalized pair has defect at most 2 eta / (2 + eta).
    let state_defect_bound = 2.0 * eta / (2.0 + eta) + 1e-9;
    let x_domain = x.domain();
    let source_domain = x_source.domain();
    let mut max_state_defect: f64 = 0.0;
    for coeffs in source_domain.sample_sphere(samples, seed.wrapping_add(7)) {
        let sp = source_domain.state_pair_at(&coeffs)?;
        let norm_x = x_domain.norm(&sp.x)?;
        let norm_f = x_domain.dual_norm(&sp.f)?;
        let value = pairing(&sp.f, &sp.x).re / (norm_x * norm_f);
        max_state_defect = max_state_defect.max(1.0 - value);
    }
    let state_pass = max_state_defect <= state_defect_bound;

    Ok(TransportReport {
        eta,
        epsilon: pair.epsilon,
        norm_floor_value,
        norm_floor_bound,
        norm_floor_pass,
        radius_value,
        radius_bound,
        radius_pass,
        max_state_defect,
        state_defect_bound,
        state_pass,
        pass: norm_floor_pass && radius_pass && state_pass,
    })
}

/// The computable envelope that must contain `n(X_n)` when the perturbation
/// magnitude is `eta`: with `eps = sqrt(2 eta)` and `m = max(eta, eps)`,
/// `[ lo ((2-m)/(2+m))^2 - 3 eps , ((2+m)/(2-m))^2 (hi + 3 eps) ]`
/// clamped to nonnegative values. At `eta = 0` the envelope is the input.
pub fn sandwich_bounds(eta: f64, n_of_x: Interval) -> Result<Interval> {
    if eta == 0.0 {
        return Ok(Interval::new(n_of_x.lower.max(0.0), n_of_x.upper.max(0.0)));
    }
    let pair = EpsilonEta::from_eta(eta)?;
    let m = eta.max(pair.epsilon);
    let shrink = (2.0 - m) / (2.0 + m);
    let grow = (2.0 + m) / (2.0 - m);
    let lower = (n_of_x.lower * shrink * shrink - 3.0 * pair.epsilon).max(0.0);
    let upper = (grow * grow * (n_of_x.upper + 3.0 * pair.epsilon)).max(0.0);
    Ok(Interval::new(lower, upper))
}

/// Named near-identity perturbation generators with magnitude schedule `1/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// `C_n = I` at every step: the trivial family.
    Identity,
    /// `C_n = I + (1/n) e_c e_c^T`
    Diagonal { coord: usize },
    /// `C_n = I + (1/n) e_to e_from^T`
    Shear { from: usize, to: usize },
    /// rotation by angle `1/n` in the given coordinate plane
    Rotation { plane: (usize, usize) },
    /// `C_n = I + (1/n) E` for a fixed seeded direction with `|E| = 1`
    RandomDirection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFamily {
    pub kind: FamilyKind,
    pub seed: u64,
}

impl PerturbationFamily {
    pub fn shear(from: usize, to: usize) -> Self {
        PerturbationFamily { kind: FamilyKind::Shear { from, to }, seed: 0 }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            FamilyKind::Identity => "identity".to_string(),
            FamilyKind::Diagonal { coord } => format!("diagonal(e{coord})"),
            FamilyKind::Shear { from, to } => format!("shear(e{from}->e{to})"),
            FamilyKind::Rotation { plane } => format!("rotation({},{})", plane.0, plane.1),
            FamilyKind::RandomDirection => format!("random(seed {})", self.seed),
        }
    }

    /// The family member at step `n`.
    pub fn map_at(
        &self,
        ambient: &NormedSpace,
        n: u32,
        budget: SearchBudget,
        seed: u64,
    ) -> Result<InvertibleMap> {
        if n == 0 {
            return Err(Error::InvalidParameter("family steps start at n = 1".into()));
        }
        let d = ambient.dim();
        let s = 1.0 / n as f64;
        let matrix = match &self.kind {
            FamilyKind::Identity => return Ok(InvertibleMap::identity(ambient.clone())),
            FamilyKind::Diagonal { coord } => {
                if *coord >= d {
                    return Err(Error::InvalidParameter("diagonal coordinate out of range".into()));
                }
                let mut m = Matrix::identity(d, d);
                m[(*coord, *coord)] += Complex64::new(s, 0.0);
                m
            }
            FamilyKind::Shear { from, to } => {
                if *from >= d || *to >= d || from == to {
                    return Err(Error::InvalidParameter("shear coordinates out of range".into()));
                }
                let mut m = Matrix::identity(d, d);
                m[(*to, *from)] = Complex64::new(s, 0.0);
                m
            }
            FamilyKind::Rotation { plane: (i, j) } => {
                if *i >= d || *j >= d || i == j {
                    return Err(Error::InvalidParameter("rotation plane out of range".into()));
                }
                let mut m = Matrix::identity(d, d);
                let (cs, sn) = (s.cos(), s.sin());
                m[(*i, *i)] = Complex64::new(cs, 0.0);
                m[(*j, *j)] = Complex64::new(cs, 0.0);
                m[(*i, *j)] = Complex64::new(-sn, 0.0);
                m[(*j, *i)] = Complex64::new(sn, 0.0);
                m
            }
            FamilyKind::RandomDirection => {
                let mut rng = rng::stream(self.seed, SALT_LAB, 0x5eed);
                let raw = Matrix::from_fn(d, d, |_, _| {
                    Complex64::new(
                        rng::uniform(&mut rng, -1.0, 1.0),
                        match ambient.field() {
                            ScalarField::Real => 0.0,
                            ScalarField::Complex => rng::uniform(&mut rng, -1.0, 1.0),
                        },
                    )
                });
                let cert = matrix_operator_norm(&Domain::Space(ambient.clone()), &raw, budget, seed)?;
                Matrix::identity(d, d) + raw * Complex64::new(s / cert.upper, 0.0)
            }
        };
        InvertibleMap::new(ambient.clone(), matrix, budget, seed)
    }
}

/// One step of a convergence experiment.
#[derive(Debug, Clone)]
pub struct ExperimentStep {
    pub n: u32,
    pub eta: f64,
    pub index: Interval,
    pub sandwich: Interval,
    pub inside: bool,
    pub gap_lower: f64,
    pub opening_upper: f64,
    /// Interval deviation between this step's estimate and the base space's.
    pub deviation: f64,
    /// Search effort spent on this step (index estimate plus gap search).
    pub budget_used: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub family_label: String,
    pub base_index: Interval,
    pub steps: Vec<ExperimentStep>,
    /// Largest distance between a step estimate and its sandwich (0 when
    /// every step is inside).
    pub max_violation: f64,
    /// Least-squares slope of deviation against `1/n`.
    pub trend_slope: f64,
    pub envelope_nonincreasing: bool,
}

fn interval_deviation(a: &Interval, b: &Interval) -> f64 {
    (a.lower - b.lower).abs().max((a.upper - b.upper).abs())
}

fn interval_distance(a: &Interval, b: &Interval) -> f64 {
    if a.intersects(b) {
        0.0
    } else if a.upper < b.lower {
        b.lower - a.upper
    } else {
        a.lower - b.upper
    }
}

/// Runs the full pipeline along a shrinking perturbation family: perturb the
/// subspace, estimate the index on the induced norm, compare against the
/// sandwich derived from the constructed map's deviation.
pub fn run_convergence_experiment(
    x: &Subspace,
    family: &PerturbationFamily,
    steps: &[u32],
    budget: SearchBudget,
    seed: u64,
) -> Result<ExperimentReport> {
    if steps.is_empty() {
        return Err(Error::InvalidParameter("experiment needs at least one step".into()));
    }
    let ambient = x.ambient();
    let maps: Vec<InvertibleMap> = steps
        .iter()
        .map(|&n| family.map_at(ambient, n, budget, seed))
        .collect::<Result<_>>()?;
    let devs: Vec<f64> = maps
        .iter()
        .map(|c| {
            let inv = c.inverse_map(budget, seed)?;
            Ok(c.deviation().upper.max(inv.deviation().upper))
        })
        .collect::<Result<Vec<f64>>>()?;
    if *devs.last().unwrap() > devs.first().unwrap() + 1e-12 {
        return Err(Error::NonConvergent("family deviations do not shrink along the steps".into()));
    }

    let base = numerical_index(&x.domain(), budget, seed)?;
    let base_interval = base.interval();

    let gap_budget = SearchBudget::new(budget.restarts.clamp(4, 12), 100);
    let mut out_steps = Vec::with_capacity(steps.len());
    let mut max_violation: f64 = 0.0;
    for (k, (&n, c)) in steps.iter().zip(&maps).enumerate() {
        let eta = 2.0 * devs[k] * (1.0 + 1e-9);
        let x_n = perturb_subspace(x, c)?;
        // Transport the base witness into X_n (conjugation by the map that
        // carries X_n onto X) and feed it to the search as a start.
        let transported: Vec<Matrix> = c
            .inverse_map(budget, seed)
            .ok()
            .and_then(|c_inv| conjugate_operator(&base.witness, &c_inv, &x_n, budget, seed).ok())
            .map(|op| vec![op.matrix().clone()])
            .unwrap_or_default();
        let est = numerical_index_with_starts(
            &x_n.domain(),
            budget,
            seed.wrapping_add(n as u64),
            &transported,
        )?;
        let sandwich = sandwich_bounds(eta, base_interval)?;
        let inside = est.interval().intersects(&sandwich);
        max_violation = max_violation.max(interval_distance(&est.interval(), &sandwich));
        let gap = gap_opening(x, &x_n, gap_budget, seed.wrapping_add(1000 + n as u64))?;
        // The constructed map bounds both directed openings from above.
        let inv = c.inverse_map(budget, seed)?;
        let opening_upper = c.deviation().upper.max(inv.deviation().upper);
        out_steps.push(ExperimentStep {
            n,
            eta,
            index: est.interval(),
            sandwich,
            inside,
            gap_lower: gap.lower,
            opening_upper,
            deviation: interval_deviation(&est.interval(), &base_interval),
            budget_used: est.budget_used + gap.budget_used,
        });
    }

    // Nonincreasing deviation envelope within estimate slack.
    let mut envelope_nonincreasing = true;
    for w in out_steps.windows(2) {
        let slack = w[0].index.width() + w[1].index.width() + 2.0 * base_interval.width() + 2e-9;
        if w[1].deviation > w[0].deviation + slack {
            envelope_nonincreasing = false;
        }
    }
    // Slope of deviation against 1/n (positive slope: deviation shrinks as n grows).
    let xs: Vec<f64> = out_steps.iter().map(|s| 1.0 / s.n as f64).collect();
    let ys: Vec<f64> = out_steps.iter().map(|s| s.deviation).collect();
    let trend_slope = least_squares_slope(&xs, &ys);

    Ok(ExperimentReport {
        family_label: family.label(),
        base_index: base_interval,
        steps: out_steps,
        max_violation,
        trend_slope,
        envelope_nonincreasing,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// One row of a radius sequence-limit check.
#[derive(Debug, Clone)]
pub struct SequenceLimitRow {
    pub distance: BoundsCertificate,
    pub v: Interval,
    /// `|v(T_k) - v(T)| <= |T_k - T|` within certificate slack.
    pub bound_ok: bool,
    pub deviation: f64,
}

#[derive(Debug, Clone)]
pub struct SequenceLimitReport {
    pub v_limit: Interval,
    pub rows: Vec<SequenceLimitRow>,
    pub last_below_first: bool,
    pub pass: bool,
}

/// For operators converging in norm, the numerical radius converges too (it
/// is 1-Lipschitz); this checks the bound `|v(T_k) - v(T)| <= |T_k - T|`
/// within certificate slack at every index, and that the deviation sequence
/// ends no higher than it starts.
pub fn radius_sequence_limit_check(
    domain: &Domain,
    sequence: &[Matrix],
    limit: &Matrix,
    budget: SearchBudget,
    seed: u64,
) -> Result<SequenceLimitReport> {
    if sequence.is_empty() {
        return Err(Error::InvalidParameter("empty operator sequence".into()));
    }
    let dists: Vec<BoundsCertificate> = sequence
        .iter()
        .map(|m| matrix_operator_norm(domain, &(m - limit), budget, seed))
        .collect::<Result<_>>()?;
    if dists.last().unwrap().upper > dists.first().unwrap().upper + 1e-12 {
        return Err(Error::NonConvergent(
            "operator distances to the limit do not decrease along the sequence".into(),
        ));
    }
    let limit_op = OperatorRep::new(domain.clone(), limit.clone(), budget, seed)?;
    let v_limit = numerical_radius(&limit_op, budget, seed)?;
    let slack = 2e-9;
    let mut rows = Vec::with_capacity(sequence.len());
    let mut pass = true;
    for (k, m) in sequence.iter().enumerate() {
        let op = OperatorRep::new(domain.clone(), m.clone(), budget, seed.wrapping_add(k as u64))?;
        let v = numerical_radius(&op, budget, seed.wrapping_add(k as u64))?;
        let forward = v.lower - v_limit.upper <= dists[k].upper + slack;
        let backward = v_limit.lower - v.upper <= dists[k].upper + slack;
        let bound_ok = forward && backward;
        pass &= bound_ok;
        let deviation = (v.midpoint() - v_limit.midpoint()).abs();
        rows.push(SequenceLimitRow { distance: dists[k].clone(), v: v.interval(), bound_ok, deviation });
    }
    let last_below_first = rows.last().unwrap().deviation <= rows.first().unwrap().deviation + 2e-9;
    pass &= last_below_first;
    Ok(SequenceLimitReport { v_limit: v_limit.interval(), rows, last_below_first, pass })
}

/// Limit of a convergent real sequence: the average of the Cauchy tail, or an
/// error when the tail spread exceeds the declared tolerance. Limits of
/// non-convergent bounded sequences are not emulated.
pub fn sequence_ultralimit(values: &[f64], tolerance: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty sequence".into()));
    }
    let tail_len = (values.len() / 4).max(3).min(values.len());
    let tail = &values[values.len() - tail_len..];
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > tolerance {
        return Err(Error::NonConvergent(format!(
            "tail spread {} exceeds tolerance {tolerance}",
            hi - lo
        )));
    }
    Ok(tail.iter().sum::<f64>() / tail.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::rmat;

    fn budget() -> SearchBudget {
        SearchBudget::new(12, 200)
    }

    fn l2(dim: usize) -> NormedSpace {
        NormedSpace::euclidean(ScalarField::Real, dim).unwrap()
    }
    fn l1(dim: usize) -> NormedSpace {
        NormedSpace::lp(ScalarField::Real, dim, 1.0).unwrap()
    }

    #[test]
    fn epsilon_eta_round_trip() {
        for eps in [0.1, 0.5, 0.9] {
            let pair = EpsilonEta::from_epsilon(eps).unwrap();
            assert_eq!(pair.eta, eps * eps / 2.0);
            let back = EpsilonEta::from_eta(pair.eta).unwrap();
            assert!((back.epsilon - eps).abs() < 1e-12);
        }
        assert!(EpsilonEta::from_epsilon(1.0).is_err());
        assert!(EpsilonEta::from_eta(0.5).is_err());
    }

    #[test]
    fn condition_bound_identity_and_diagonal() {
        let space = l2(2);
        let id = InvertibleMap::identity(space.clone());
        let rep = condition_bound_check(&id, 0.3, budget(), 3).unwrap();
        assert!(rep.pass);
        assert!((rep.reciprocal - 1.0).abs() < 1e-9);

        let mut m = Matrix::identity(2, 2);
        m[(0, 0)] = Complex64::new(1.4, 0.0);
        let c = InvertibleMap::new(space, m, budget(), 3).unwrap();
        let rep = condition_bound_check(&c, 0.9, budget(), 3).unwrap();
        assert!(rep.pass);
        assert!((rep.reciprocal - 1.0 / 1.4).abs() < 1e-9);
        assert!((rep.bound - 1.1 / 2.9).abs() < 1e-12);
    }

    #[test]
    fn condition_bound_random_battery_small() {
        for (di, dim) in [2usize, 3, 4].into_iter().enumerate() {
            for (pi, p) in [1.0, 2.0, f64::INFINITY].into_iter().enumerate() {
                let space = NormedSpace::lp(ScalarField::Real, dim, p).unwrap();
                let domain = Domain::Space(space.clone());
                let mut rng = rng::stream(5, 0xc0, (di * 3 + pi) as u64);
                for _ in 0..40 {
                    let eta = rng::uniform(&mut rng, 0.05, 1.9);
                    let raw = Matrix::from_fn(dim, dim, |_, _| {
                        Complex64::new(rng::uniform(&mut rng, -1.0, 1.0), 0.0)
                    });
                    let norm = matrix_operator_norm(&domain, &raw, budget(), 3).unwrap();
                    let rho = rng::uniform(&mut rng, 0.1, 0.95);
                    let scale = rho * eta / 2.0 / norm.upper;
                    let m = Matrix::identity(dim, dim) + raw * Complex64::new(scale, 0.0);
                    let c = InvertibleMap::new(space.clone(), m, budget(), 3).unwrap();
                    let rep = condition_bound_check(&c, eta, budget(), 3).unwrap();
                    assert!(rep.pass, "dim {dim} p {p} eta {eta}: slack {}", rep.slack);
                }
            }
        }
    }

    #[test]
    fn transport_identity_map_is_tight() {
        let space = l1(3);
        let sub = Subspace::full(space.clone());
        // permutation operator has norm 1 exactly
        let m = rmat(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]);
        let t = OperatorRep::new(sub.domain(), m, budget(), 3).unwrap();
        let id = InvertibleMap::identity(space);
        let rep = conjugation_transport_check(&sub, &t, &id, 0.2, 50, budget(), 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.norm_floor_value >= 1.0 - 1e-9);
        assert!(rep.max_state_defect <= 1e-9);
    }

    #[test]
    fn transport_sheared_l1_permutation() {
        let space = l1(3);
        let sub = Subspace::full(space.clone());
        let m = rmat(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]);
        let t = OperatorRep::new(sub.domain(), m, budget(), 3).unwrap();
        let mut e = Matrix::identity(3, 3);
        e[(0, 1)] = Complex64::new(0.05, 0.0);
        e[(2, 0)] = Complex64::new(-0.03, 0.0);
        let c = InvertibleMap::new(space, e, budget(), 3).unwrap();
        let eta = 2.0 * c.deviation().upper * 1.2;
        let rep = conjugation_transport_check(&sub, &t, &c, eta, 100, budget(), 3).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn sandwich_examples_frozen() {
        // eta -> 0 limit: the envelope converges to the input interval.
        let base = Interval::new(0.4, 0.6);
        let tiny = sandwich_bounds(1e-12, base).unwrap();
        assert!((tiny.lower - 0.4).abs() < 1e-5);
        assert!((tiny.upper - 0.6).abs() < 1e-5);
        assert_eq!(sandwich_bounds(0.0, base).unwrap(), base);

        // eta = 0.02: eps = 0.2, m = 0.2
        let s = sandwich_bounds(0.02, Interval::point(1.0)).unwrap();
        assert!((s.lower - (0.9f64 / 1.1).powi(2).mul_add(1.0, -0.6)).abs() < 1e-9);
        assert!((s.lower - 0.06942148760330578).abs() < 1e-9);
        assert!((s.upper - 2.3901234567901235).abs() < 1e-9);
    }

    #[test]
    fn sandwich_is_monotone_in_eta() {
        let base = Interval::new(0.3, 0.5);
        let mut prev = sandwich_bounds(0.4, base).unwrap();
        for eta in [0.2, 0.1, 0.05, 0.01, 0.001, 1e-5, 1e-7] {
            let cur = sandwich_bounds(eta, base).unwrap();
            assert!(cur.subset_of(&prev), "eta {eta}: {cur:?} not inside {prev:?}");
            prev = cur;
        }
        assert!((prev.lower - base.lower).abs() < 0.01);
        assert!((prev.upper - base.upper).abs() < 0.01);
    }

    #[test]
    fn trivial_family_stays_inside() {
        let space = l1(3);
        let sub = Subspace::coordinate_span(space, &[0, 1], "X").unwrap();
        let family = PerturbationFamily { kind: FamilyKind::Identity, seed: 0 };
        let report =
            run_convergence_experiment(&sub, &family, &[5, 10, 20], SearchBudget::new(10, 150), 5).unwrap();
        for step in &report.steps {
            assert_eq!(step.eta, 0.0);
            assert!(step.inside, "step {}: {:?} vs {:?}", step.n, step.index, step.sandwich);
            assert!(step.deviation <= 1e-12, "deviation {}", step.deviation);
        }
        assert_eq!(report.max_violation, 0.0);

        // A slowly shrinking family stays inside its wide envelopes too.
        let family = PerturbationFamily::shear(0, 2);
        let sub = Subspace::coordinate_span(l1(3), &[0, 1], "X").unwrap();
        let report =
            run_convergence_experiment(&sub, &family, &[1000, 2000], SearchBudget::new(10, 150), 5).unwrap();
        for step in &report.steps {
            assert!(step.inside);
            assert!(step.deviation < 0.05);
        }
    }

    #[test]
    fn index_estimates_are_stable_across_seeds() {
        // The sequence-limit corollary collapses to estimate stability for a
        // constant family: repeated runs with different seeds agree.
        for space in [l1(2), l2(2)] {
            let domain = crate::subspace::Domain::Space(space);
            let a = numerical_index(&domain, SearchBudget::new(10, 150), 3).unwrap();
            let b = numerical_index(&domain, SearchBudget::new(10, 150), 17).unwrap();
            assert!((a.upper - b.upper).abs() <= 1e-6, "{} vs {}", a.upper, b.upper);
        }
    }

    #[test]
    fn shear_experiment_l1_and_l2() {
        for (space, target) in [(l1(3), 1.0), (l2(3), 0.0)] {
            let sub = Subspace::coordinate_span(space, &[0, 1], "X").unwrap();
            let family = PerturbationFamily::shear(0, 2);
            let report =
                run_convergence_experiment(&sub, &family, &[5, 10], SearchBudget::new(10, 150), 5).unwrap();
            assert!((report.base_index.upper - target).abs() < 1e-3, "base {:?}", report.base_index);
            for step in &report.steps {
                assert!(step.inside);
            }
            assert!(report.envelope_nonincreasing);
        }
    }

    #[test]
    fn sphere_approximation_follows_the_gap() {
        // Along a convergent family, any fixed unit vector of the limit
        // space is approximated by the perturbed spheres at the gap's rate.
        use crate::subspace::{dist_to_sphere, gap_opening};
        let space = l2(3);
        let sub = Subspace::coordinate_span(space.clone(), &[0, 1], "X").unwrap();
        let family = PerturbationFamily::shear(0, 2);
        let x0 = crate::space::rvec(&[0.6, 0.8, 0.0]);
        let mut last = f64::INFINITY;
        for n in [5u32, 10, 20, 40] {
            let c = family.map_at(&space, n, budget(), 3).unwrap();
            let x_n = crate::subspace::perturb_subspace(&sub, &c).unwrap();
            let d = dist_to_sphere(&x0, &x_n, budget(), 5).unwrap();
            let q = gap_opening(&sub, &x_n, SearchBudget::new(8, 100), 5).unwrap();
            assert!(d.upper <= 2.0 * q.upper + 1e-9, "n = {n}: dist {} vs 2Q {}", d.upper, 2.0 * q.upper);
            assert!(d.upper <= last + 1e-9);
            last = d.upper;
        }
    }

    #[test]
    fn inside_flags_are_recomputable_from_stored_intervals() {
        let sub = Subspace::coordinate_span(l1(3), &[0, 1], "X").unwrap();
        let family = PerturbationFamily::shear(0, 2);
        let report =
            run_convergence_experiment(&sub, &family, &[5, 10], SearchBudget::new(8, 120), 5).unwrap();
        for step in &report.steps {
            assert_eq!(step.inside, step.index.intersects(&step.sandwich));
        }
    }

    #[test]
    fn family_generators_shrink() {
        let space = l2(3);
        for kind in [
            FamilyKind::Diagonal { coord: 0 },
            FamilyKind::Shear { from: 0, to: 2 },
            FamilyKind::Rotation { plane: (0, 1) },
            FamilyKind::RandomDirection,
        ] {
            let family = PerturbationFamily { kind, seed: 11 };
            let c5 = family.map_at(&space, 5, budget(), 3).unwrap();
            let c50 = family.map_at(&space, 50, budget(), 3).unwrap();
            assert!(c50.deviation().upper < c5.deviation().upper);
            assert!(c50.deviation().upper <= 1.0 / 50.0 + 1e-9);
        }
    }

    #[test]
    fn radius_sequence_limit_complex_shift() {
        let domain = Domain::Space(NormedSpace::lp(ScalarField::Complex, 2, 2.0).unwrap());
        let shift = rmat(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let e = rmat(&[&[0.3, -0.2], &[0.1, 0.4]]);
        let seq: Vec<Matrix> = (1..=6)
            .map(|n| &shift + &e * Complex64::new(1.0 / n as f64, 0.0))
            .collect();
        let report = radius_sequence_limit_check(&domain, &seq, &shift, budget(), 3).unwrap();
        assert!(report.pass, "{report:?}");
        // constant sequence: all deviations zero
        let constant = vec![shift.clone(); 4];
        let report = radius_sequence_limit_check(&domain, &constant, &shift, budget(), 3).unwrap();
        assert!(report.pass);
        for row in &report.rows {
            assert!(row.deviation <= 1e-12);
        }
        // non-converging input flagged
        let diverging = vec![&shift + &e * Complex64::new(0.1, 0.0), &shift + &e * Complex64::new(0.5, 0.0)];
        assert!(radius_sequence_limit_check(&domain, &diverging, &shift, budget(), 3).is_err());
    }

    #[test]
    fn ultralimit_examples() {
        assert_eq!(sequence_ultralimit(&[2.5; 10], 0.01).unwrap(), 2.5);
        let harmonic: Vec<f64> = (1..=100).map(|n| 1.0 + 1.0 / n as f64).collect();
        let lim = sequence_ultralimit(&harmonic, 0.05).unwrap();
        assert!((lim - 1.0).abs() <= 0.05);
        let alternating: Vec<f64> = (0..50).map(|k| (k % 2) as f64).collect();
        assert!(sequence_ultralimit(&alternating, 0.05).is_err());
    }
}
