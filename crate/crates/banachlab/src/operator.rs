//! Operators on normed domains: operator norms, numerical range sampling,
//! numerical radii, conjugation transport, and the 1-Lipschitz check for the
//! numerical radius.
//!
//! Operator norms are exact where the norm family allows it: column sums on
//! `l1`, row sums on the sup norm, singular values on Euclidean/weighted and
//! Gram domains, and an extreme-point maximum on polytope balls (a convex
//! function attains its supremum over a polytope at a vertex). Everything
//! else runs a multistart projected ascent that certifies a lower bound and
//! reports a stagnation-derived heuristic upper bound.
//!
//! The numerical radius `v(T) = sup { |f(Tx)| : (x, f) state pair }` is an
//! exact finite maximum over (vertex, extreme functional) pairs on polytope
//! domains; elsewhere it is bounded below by multistart ascent over the
//! sphere (maximizing the face-wise maximum of `|f(Tx)|`) and above by the
//! operator norm and search stagnation. Whether the vertex-pair enumeration
//! is exact on polyhedral spaces is cross-checked against the multistart and
//! dense-sampling routes in the test suite rather than assumed.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cert::{BoundMethod, BoundsCertificate, SearchBudget, Witness};
use crate::error::{Error, Result};
use crate::optimize::{multistart_max, SphereSearch};
use crate::rng::{self, SALT_OPNORM, SALT_ORACLE, SALT_RADIUS};
use crate::space::{pairing, Matrix, NormKind, ScalarField, StatePair, Vector};
use crate::subspace::{Domain, InducedRep, InvertibleMap, Subspace};

/// Face-size cap used when evaluating the radius objective at a point.
const FACE_EVAL_CAP: usize = 32;
/// Face-size cap for exhaustive vertex-pair enumeqation on polytope balls.
const VERTEX_FACE_CAP: usize = 160;

/// A square operator on a domain, with a certificate for its operator norm.
#[derive(Debug, Clone)]
pub struct OperatorRep {
    domain: Domain,
    matrix: Matrix,
    norm_bounds: BoundsCertificate,
}

impl OperatorRep {
    pub fn new(domain: Domain, matrix: Matrix, budget: SearchBudget, seed: u64) -> Result<Self> {
        let k = domain.dim();
        if matrix.nrows() != k || matrix.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, got: matrix.nrows().max(matrix.ncols()) });
        }
        if domain.field() == ScalarField::Real && matrix.iter().any(|z| z.im.abs() > 1e-12) {
            return Err(Error::FieldMismatch("complex matrix on a real domain".into()));
        }
        let norm_bounds = matrix_operator_norm(&domain, &matrix, budget, seed)?;
        Ok(OperatorRep { domain, matrix, norm_bounds })
    }

    /// Identity operator; `|I| = 1` exactly on every normed space, attained
    /// at any unit vector.
    pub fn identity(domain: Domain) -> Self {
        let k = domain.dim();
        let witness = unit_basis_witness(&domain);
        OperatorRep {
            domain,
            matrix: Matrix::identity(k, k),
            norm_bounds: BoundsCertificate::exact(1.0, witness, 0),
        }
    }

    pub fn zero(domain: Domain) -> Self {
        let k = domain.dim();
        let witness = unit_basis_witness(&domain);
        OperatorRep {
            domain,
            matrix: Matrix::zeros(k, k),
            norm_bounds: BoundsCertificate::exact(0.0, witness, 0),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn norm_bounds(&self) -> &BoundsCertificate {
        &self.norm_bounds
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.matrix * x
    }

    /// Scaled operator; certificates scale exactly with `|t|`.
    pub fn scaled(&self, t: Complex64) -> Self {
        let s = t.norm();
        OperatorRep {
            domain: self.domain.clone(),
            matrix: &self.matrix * t,
            norm_bounds: BoundsCertificate {
                lower: self.norm_bounds.lower * s,
                upper: self.norm_bounds.upper * s,
                method: self.norm_bounds.method,
                witnesses: self.norm_bounds.witnesses.clone(),
                budget_used: self.norm_bounds.budget_used,
            },
        }
    }
}

/// Recompute the operator-norm certificate of `op` at the given budget.
pub fn operator_norm(op: &OperatorRep, budget: SearchBudget, seed: u64) -> Result<BoundsCertificate> {
    matrix_operator_norm(&op.domain, &op.matrix, budget, seed)
}

/// The first basis direction normalized onto the unit sphere.
fn unit_basis_witness(domain: &Domain) -> Vec<Witness> {
    let mut e = Vector::zeros(domain.dim());
    e[0] = Complex64::new(1.0, 0.0);
    match domain.norm(&e) {
        Ok(n) if n > 1e-12 => vec![Witness::Point(e / Complex64::new(n, 0.0))],
        _ => vec![],
    }
}

fn unit_canonical_starts(dim: usize) -> Vec<Vector> {
    (0..dim)
        .map(|i| {
            let mut e = Vector::zeros(dim);
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect()
}

/// Best right-singular-vector candidate for `m`, verified by evaluation
/// (covers both transpose conventions of the SVD backend).
fn top_right_singular(m: &Matrix) -> Vector {
    let k = m.ncols();
    let svd = m.clone().svd(false, true);
    let mut best: Option<(f64, Vector)> = None;
    let mut consider = |v: Vector| {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-14 {
            return;
        }
        let v = v / Complex64::new(n, 0.0);
        let gain = (m * &v).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().map_or(true, |(g, _)| gain > *g) {
            best = Some((gain, v));
        }
    };
    if let Some(vt) = svd.v_t {
        for i in 0..vt.nrows() {
            let row = vt.row(i);
            consider(Vector::from_iterator(k, row.iter().cloned()));
            consider(Vector::from_iterator(k, row.iter().map(|z| z.conj())));
        }
    }
    for e in unit_canonical_starts(k) {
        consider(e);
    }
    best.expect("nonempty candidate set").1
}

/// Operator-norm certificate for a raw matrix over a domain.
pub fn matrix_operator_norm(
    domain: &Domain,
    matrix: &Matrix,
    budget: SearchBudget,
    seed: u64,
) -> Result<BoundsCertificate> {
    let k = domain.dim();
    if matrix.nrows() != k || matrix.ncols() != k {
        return Err(Error::DimensionMismatch { expected: k, got: matrix.nrows().max(matrix.ncols()) });
    }

    // Exact closed forms.
    if let Domain::Space(space) = domain {
        match space.kind() {
            NormKind::Lp { p } if *p == 1.0 => {
                let (mut best, mut arg) = (0.0_f64, 0usize);
                for j in 0..k {
                    let s: f64 = matrix.column(j).iter().map(|z| z.norm()).sum();
                    if s > best {
                        best = s;
                        arg = j;
                    }
                }
                let mut e = Vector::zeros(k);
                e[arg] = Complex64::new(1.0, 0.0);
                return Ok(BoundsCertificate::exact(best, vec![Witness::Point(e)], k as u64));
            }
            NormKind::Lp { p } if p.is_infinite() => {
                let (mut best, mut arg) = (0.0_f64, 0usize);
                for i in 0..k {
                    let s: f64 = matrix.row(i).iter().map(|z| z.norm()).sum();
                    if s > best {
                        best = s;
                        arg = i;
                    }
                }
                let x = Vector::from_fn(k, |j, _| {
                    let z = matrix[(arg, j)];
                    let n = z.norm();
                    if n == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        (z / n).conj()
                    }
                });
                return Ok(BoundsCertificate::exact(best, vec![Witness::Point(x)], k as u64));
            }
            NormKind::Lp { p } if *p == 2.0 => {
                let sv = matrix.clone().svd(false, false).singular_values;
                let value = sv.iter().cloned().fold(0.0, f64::max);
                let witness = top_right_singular(matrix);
                return Ok(BoundsCertificate::exact(value, vec![Witness::Point(witness)], k as u64));
            }
            NormKind::WeightedEuclidean { weights } => {
                let mut conj = matrix.clone();
                for (i, w) in weights.iter().enumerate() {
                    let s = Complex64::new(w.sqrt(), 0.0);
                    for j in 0..k {
                        conj[(i, j)] *= s;
                    }
                }
                for (j, w) in weights.iter().enumerate() {
                    let s = Complex64::new(1.0 / w.sqrt(), 0.0);
                    for i in 0..k {
                        conj[(i, j)] *= s;
                    }
                }
                let sv = conj.clone().svd(false, false).singular_values;
                let value = sv.iter().cloned().fold(0.0, f64::max);
                let v = top_right_singular(&conj);
                let x = Vector::from_fn(k, |i, _| v[i] / Complex64::new(weights[i].sqrt(), 0.0));
                let nx = space.norm(&x)?;
                let witness = x / Complex64::new(nx, 0.0);
                return Ok(BoundsCertificate::exact(value, vec![Witness::Point(witness)], k as u64));
            }
            _ => {}
        }
    }
    if let Domain::Induced(sd) = domain {
        if let InducedRep::Gram { chol, chol_inv, .. } = &sd.rep {
            let b = chol.adjoint() * matrix * chol_inv.adjoint();
            let sv = b.clone().svd(false, false).singular_values;
            let value = sv.iter().cloned().fold(0.0, f64::max);
            let y = top_right_singular(&b);
            let c = chol_inv.adjoint() * y;
            let nc = domain.norm(&c)?;
            let witness = c / Complex64::new(nc, 0.0);
            return Ok(BoundsCertificate::exact(value, vec![Witness::Point(witness)], k as u64));
        }
    }

    // Polytope balls: the supremum of the convex map x -> |Tx| over the unit
    // ball is attained at an extreme point.
    if let Some(verts) = domain.ball_vertices() {
        let mut best: Option<(f64, Vector)> = None;
        for v in verts.iter() {
            let value = domain.norm(&(matrix * v))?;
            if best.as_ref().map_or(true, |(b, _)| value > *b) {
                best = Some((value, v.clone()));
            }
        }
        let (value, witness) = best.ok_or(Error::ZeroVector)?;
        return Ok(BoundsCertificate::enumerated(
            value,
            vec![Witness::Point(witness)],
            verts.len() as u64,
        ));
    }

    // General norms: multistart projected ascent on |Tx| over the sphere.
    let normalize = domain.normalizer();
    let objective = |x: &Vector| domain.norm(&(matrix * x)).unwrap_or(0.0);
    let t_transpose = matrix.transpose();
    let dom2 = domain.clone();
    let ascent = move |x: &Vector| {
        let tx = matrix * x;
        let face = dom2.norming_functionals(&tx, 1).ok()?;
        let f = face.functionals.first()?;
        Some((&t_transpose * f).map(|z| z.conj()))
    };
    let search = SphereSearch {
        dim: k,
        field: domain.field(),
        normalize: &normalize,
        objective: &objective,
        ascent_dir: Some(&ascent),
        extra_starts: unit_canonical_starts(k),
    };
    let out = multistart_max(&search, budget, seed, SALT_OPNORM);
    Ok(BoundsCertificate {
        lower: out.best_value,
        upper: out.heuristic_upper(),
        method: BoundMethod::MultistartHeuristic,
        witnesses: out.best_point.map(Witness::Point).into_iter().collect(),
        budget_used: out.evaluations,
    })
}

/// Numerical-range samples `f(Tx)` over state pairs from sphere samples,
/// plus every (vertex, extreme functional) pair on polytope domains.
pub fn numerical_range_samples(op: &OperatorRep, count: usize, seed: u64) -> Result<Vec<Complex64>> {
    let domain = &op.domain;
    let mut values = Vec::with_capacity(count);
    for x in domain.sample_sphere(count, seed) {
        let sp = domain.state_pair_at(&x)?;
        values.push(pairing(&sp.f, &op.apply(&sp.x)));
    }
    if let Some(vp) = domain.vertex_state_pairs(VERTEX_FACE_CAP)? {
        for sp in vp.pairs {
            values.push(pairing(&sp.f, &op.apply(&sp.x)));
        }
    }
    Ok(values)
}

fn radius_by_enumeration(op: &OperatorRep) -> Result<Option<(f64, StatePair, u64)>> {
    let Some(vp) = op.domain.vertex_state_pairs(VERTEX_FACE_CAP)? else {
        return Ok(None);
    };
    if !vp.complete {
        return Ok(None);
    }
    let mut best: Option<(f64, StatePair)> = None;
    let n = vp.pairs.len() as u64;
    for sp in vp.pairs {
        let value = pairing(&sp.f, &op.apply(&sp.x)).norm();
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, sp));
        }
    }
    Ok(best.map(|(v, sp)| (v, sp, n)))
}

fn radius_objective<'a>(
    domain: &'a Domain,
    matrix: &'a Matrix,
) -> impl Fn(&Vector) -> f64 + Sync + 'a {
    move |x: &Vector| {
        let tx = matrix * x;
        match domain.norming_functionals(x, FACE_EVAL_CAP) {
            Ok(face) => {
                face.functionals.iter().map(|f| pairing(f, &tx).norm()).fold(0.0, f64::max)
            }
            Err(_) => 0.0,
        }
    }
}

/// Numerical radius certificate. Exact enumeration over vertex pairs on
/// polytope domains; multistart ascent elsewhere, with the upper bound capped
/// by the operator norm.
pub fn numerical_radius(op: &OperatorRep, budget: SearchBudget, seed: u64) -> Result<BoundsCertificate> {
    if let Some((value, witness, used)) = radius_by_enumeration(op)? {
        return Ok(BoundsCertificate {
            lower: value,
            upper: value,
            method: BoundMethod::ExtremePointEnumeration,
            witnesses: vec![Witness::Pair { x: witness.x, f: witness.f }],
            budget_used: used,
        });
    }

    let domain = &op.domain;
    let matrix = &op.matrix;
    let k = domain.dim();
    let normalize = domain.normalizer();
    let objective = radius_objective(domain, matrix);
    let t_transpose = matrix.transpose();
    let dom2 = domain.clone();
    let mat2 = matrix.clone();
    let ascent = move |x: &Vector| {
        let tx = &mat2 * x;
        let face = dom2.norming_functionals(x, FACE_EVAL_CAP).ok()?;
        let mut best: Option<(f64, &Vector)> = None;
        for f in &face.functionals {
            let v = pairing(f, &tx).norm();
            if best.as_ref().map_or(true, |(b, _)| v > *b) {
                best = Some((v, f));
            }
        }
        let (value, f) = best?;
        if value < 1e-14 {
            return None;
        }
        let phase = pairing(f, &tx) / value;
        Some((&t_transpose * f).map(|z| z.conj()) * phase)
    };
    let search = SphereSearch {
        dim: k,
        field: domain.field(),
        normalize: &normalize,
        objective: &objective,
        ascent_dir: Some(&ascent),
        extra_starts: unit_canonical_starts(k),
    };
    let out = multistart_max(&search, budget, seed, SALT_RADIUS);
    let lower = out.best_value;
    let upper = out.heuristic_upper().min(op.norm_bounds.upper).max(lower);
    let witnesses = match &out.best_point {
        Some(x) => {
            let sp = domain.state_pair_at(x)?;
            vec![Witness::Pair { x: sp.x, f: sp.f }]
        }
        None => vec![],
    };
    Ok(BoundsCertificate {
        lower,
        upper,
        method: BoundMethod::MultistartHeuristic,
        witnesses,
        budget_used: out.evaluations,
    })
}

/// Dense-sampling lower bounds for the numerical radius of several operators
/// over a shared sample stream: `count` sphere points, the full norming face
/// at each, plus all vertex pairs on polytope domains. Streamed in chunks so
/// the sample set is never materialized.
pub fn radius_dense_oracle_batch(
    domain: &Domain,
    matrices: &[Matrix],
    count: usize,
    seed: u64,
) -> Result<Vec<BoundsCertificate>> {
    let k = domain.dim();
    for m in matrices {
        if m.nrows() != k || m.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, got: m.nrows().max(m.ncols()) });
        }
    }
    let mut lows = vec![0.0_f64; matrices.len()];
    // Vertex pairs first.
    if let Some(vp) = domain.vertex_state_pairs(VERTEX_FACE_CAP)? {
        for sp in &vp.pairs {
            for (mi, m) in matrices.iter().enumerate() {
                let v = pairing(&sp.f, &(m * &sp.x)).norm();
                lows[mi] = lows[mi].max(v);
            }
        }
    }
    let mut rng = rng::stream(seed, SALT_ORACLE, 0);
    const CHUNK: usize = 8192;
    let mut remaining = count;
    let mut chunk_pairs: Vec<(Vector, Vec<Vector>)> = Vec::with_capacity(CHUNK);
    while remaining > 0 {
        let this = remaining.min(CHUNK);
        chunk_pairs.clear();
        while chunk_pairs.len() < this {
            let g = rng::gaussian_vector(&mut rng, k, domain.field());
            let Ok(n) = domain.norm(&g) else { continue };
            if n <= 1e-9 {
                continue;
            }
            let x = g / Complex64::new(n, 0.0);
            match domain.norming_functionals(&x, FACE_EVAL_CAP) {
                Ok(face) => chunk_pairs.push((x, face.functionals)),
                Err(_) => continue,
            }
        }
        let chunk_max: Vec<f64> = matrices
            .par_iter()
            .map(|m| {
                let mut best = 0.0_f64;
                for (x, fs) in &chunk_pairs {
                    let tx = m * x;
                    for f in fs {
                        best = best.max(pairing(f, &tx).norm());
                    }
                }
                best
            })
            .collect();
        for (lo, cm) in lows.iter_mut().zip(chunk_max) {
            *lo = lo.max(cm);
        }
        remaining -= this;
    }
    matrices
        .iter()
        .zip(lows)
        .map(|(m, lo)| {
            let norm_cert = matrix_operator_norm(domain, m, SearchBudget::new(8, 200), seed)?;
            Ok(BoundsCertificate {
                lower: lo,
                upper: norm_cert.upper.max(lo),
                method: BoundMethod::DenseSamplingOracle,
                witnesses: vec![],
                budget_used: count as u64,
            })
        })
        .collect()
}

/// Single-operator dense-sampling oracle.
pub fn radius_dense_oracle(
    op: &OperatorRep,
    count: usize,
    seed: u64,
) -> Result<BoundsCertificate> {
    Ok(radius_dense_oracle_batch(&op.domain, std::slice::from_ref(&op.matrix), count, seed)?
        .pop()
        .expect("one matrix in, one certificate out"))
}

/// Operator `C^{-1} T C` restricted to `Y`, in `Y`'s basis coordinates, for
/// an invertible ambient map with `C(Y) = Z` and `T` acting on `Z`.
pub fn conjugate_operator(
    t: &OperatorRep,
    c: &InvertibleMap,
    y: &Subspace,
    budget: SearchBudget,
    seed: u64,
) -> Result<OperatorRep> {
    let z = match t.domain().subspace() {
        Some(z) => z.clone(),
        None => Subspace::full(
            t.domain().space().expect("domain is a space or a subspace").clone(),
        ),
    };
    if y.ambient() != z.ambient() || c.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if !c.maps_onto(y, &z) {
        return Err(Error::Membership("map does not carry Y onto the operator's subspace".into()));
    }
    // Coefficient change of basis: B_Z M = C B_Y.
    let k = y.dim();
    let mut m = Matrix::zeros(k, k);
    for (j, col) in y.basis().column_iter().enumerate() {
        let image = c.matrix() * col.clone_owned();
        let coeffs = z.coefficients_of(&image)?;
        m.set_column(j, &coeffs);
    }
    let m_inv = m.clone().try_inverse().ok_or(Error::NotInvertible)?;
    let matrix_y = m_inv * t.matrix() * m;
    OperatorRep::new(y.domain(), matrix_y, budget, seed)
}

/// Report of the two-sided 1-Lipschitz check
/// `|v(S) - v(T)| <= |S - T|` within certificate slack.
#[derive(Debug, Clone)]
pub struct RadiusLipschitzReport {
    pub v_first: BoundsCertificate,
    pub v_second: BoundsCertificate,
    pub difference_norm: BoundsCertificate,
    /// `|S - T|_upper + slack - (v_lower(S) - v_upper(T))`, nonnegative on pass.
    pub forward_slack: f64,
    /// Same with the roles swapped.
    pub backward_slack: f64,
    pub pass: bool,
}

/// Verifies that the numerical radius is 1-Lipschitz for the operator norm
/// on the given pair, within certificate slack `2e-9`.
pub fn radius_lipschitz_check(
    s: &OperatorRep,
    t: &OperatorRep,
    budget: SearchBudget,
    seed: u64,
) -> Result<RadiusLipschitzReport> {
    if s.domain() != t.domain() {
        return Err(Error::AmbientMismatch);
    }
    let v_first = numerical_radius(s, budget, seed)?;
    let v_second = numerical_radius(t, budget, seed.wrapping_add(1))?;
    let diff = s.matrix() - t.matrix();
    let difference_norm = matrix_operator_norm(s.domain(), &diff, budget, seed.wrapping_add(2))?;
    let slack = 2e-9;
    let forward_slack = difference_norm.upper + slack - (v_first.lower - v_second.upper);
    let backward_slack = difference_norm.upper + slack - (v_second.lower - v_first.upper);
    let pass = forward_slack >= 0.0 && backward_slack >= 0.0;
    Ok(RadiusLipschitzReport { v_first, v_second, difference_norm, forward_slack, backward_slack, pass })
}

/// Shared pool of state pairs for surrogate objectives (index descent).
#[derive(Debug, Clone)]
pub(crate) struct StatePairPool {
    pub pairs: Vec<StatePair>,
}

impl StatePairPool {
    pub fn build(domain: &Domain, samples: usize, seed: u64) -> Result<Self> {
        let mut pairs = Vec::with_capacity(samples + 8);
        if let Some(vp) = domain.vertex_state_pairs(VERTEX_FACE_CAP)? {
            pairs.extend(vp.pairs);
        }
        for x in domain.sample_sphere(samples, seed) {
            pairs.push(domain.state_pair_at(&x)?);
        }
        Ok(StatePairPool { pairs })
    }

    /// `max |f(Tx)|` over the pool: a fast lower surrogate for `v(T)`.
    pub fn max_abs_pairing(&self, matrix: &Matrix) -> (f64, Option<&StatePair>) {
        let mut best = 0.0;
        let mut arg = None;
        for sp in &self.pairs {
            let v = pairing(&sp.f, &(matrix * &sp.x)).norm();
            if v > best {
                best = v;
                arg = Some(sp);
            }
        }
        (best, arg)
    }
}
