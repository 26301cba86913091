//! Subspaces with induced norms, distances between unit spheres, gap
//! openings, and operator-opening upper bounds.
//!
//! A [`Subspace`] is a full-column-rank coordinate basis inside an ambient
//! [`NormedSpace`]; the induced norm of a coefficient vector `c` is the
//! ambient norm of `basis * c`. A [`Domain`] is either a whole space or a
//! subspace with its induced norm — operators, radii and index estimates are
//! computed over domains so that both cases share one code path.
//!
//! Induced norms get an exact representation whenever the ambient structure
//! allows it: a Gram/Cholesky form over Euclidean and weighted-Euclidean
//! ambients, and a coefficient-space polytope over `l1`, sup-norm and
//! polyhedral ambients (the images of the ambient dual-ball vertices under
//! `basis^T` determine the induced norm exactly). Everything else falls back
//! to definition-based evaluation through the ambient space.
//!
//! The gap opening `Q(Y, Z)` is the larger of the two directed sup-distances
//! between unit spheres; it is computed on the spheres themselves, not
//! through projector shortcuts. The operator opening `r_0(Y, Z)` is an
//! infimum of `|C - I|` over all ambient invertible maps carrying `Y` onto
//! `Z`, which is not computable exactly; this module only ever reports upper
//! bounds obtained from explicit candidate maps, with the convention value 1
//! when a dimension mismatch makes the candidate set empty.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cert::{BoundMethod, BoundsCertificate, SearchBudget, Witness};
use crate::error::{Error, Result};
use crate::operator;
use crate::optimize::{multistart_max, SphereSearch};
use crate::polytope::PolytopeBall;
use crate::rng::{self, SALT_DIST, SALT_DUAL, SALT_GAP};
use crate::space::{
    lex_cmp_desc, pairing, promote, real_part, Matrix, NormKind, NormedSpace, NormingFace,
    ScalarField, StatePair, Vector, DEFAULT_FACE_CAP,
};

/// Membership tolerance for span containment checks (`C(Y) = Z` and
/// coefficient recovery): least-squares residual per vector.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: NormedSpace,
    basis: Matrix,
    label: String,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Subspace {
    /// A subspace from an `ambient_dim x k` basis matrix with full column
    /// rank (smallest singular value after column normalization above 1e-10).
    pub fn new(ambient: NormedSpace, basis: Matrix, label: impl Into<String>) -> Result<Self> {
        if basis.nrows() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), got: basis.nrows() });
        }
        let k = basis.ncols();
        if k == 0 || k > ambient.dim() {
            return Err(Error::InvalidParameter(format!(
                "subspace dimension must be in 1..={}, got {k}",
                ambient.dim()
            )));
        }
        if ambient.field() == ScalarField::Real && basis.iter().any(|z| z.im.abs() > 1e-12) {
            return Err(Error::FieldMismatch("complex basis in a real ambient space".into()));
        }
        let mut normalized = basis.clone();
        for mut col in normalized.column_iter_mut() {
            let n = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-300 {
                return Err(Error::InvalidParameter("zero basis column".into()));
            }
            col /= Complex64::new(n, 0.0);
        }
        let svals = normalized.svd(false, false).singular_values;
        let smallest = svals.iter().cloned().fold(f64::INFINITY, f64::min);
        if smallest <= 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "basis is numerically rank deficient (smallest singular value {smallest:.3e})"
            )));
        }
        Ok(Subspace { ambient, basis, label: label.into() })
    }

    /// The whole ambient space viewed as a subspace (identity basis).
    pub fn full(ambient: NormedSpace) -> Self {
        let dim = ambient.dim();
        let label = ambient.label().to_string();
        Subspace { ambient, basis: Matrix::identity(dim, dim), label }
    }

    pub fn from_columns(ambient: NormedSpace, columns: &[Vector], label: impl Into<String>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidParameter("subspace needs at least one basis vector".into()));
        }
        let basis = Matrix::from_columns(columns);
        Subspace::new(ambient, basis, label)
    }

    pub fn line(ambient: NormedSpace, direction: &Vector, label: impl Into<String>) -> Result<Self> {
        Subspace::from_columns(ambient, &[direction.clone()], label)
    }

    /// Coordinate subspace spanned by the listed standard basis vectors.
    pub fn coordinate_span(ambient: NormedSpace, coords: &[usize], label: impl Into<String>) -> Result<Self> {
        let dim = ambient.dim();
        let cols: Vec<Vector> = coords
            .iter()
            .map(|&i| {
                let mut e = Vector::zeros(dim);
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        Subspace::from_columns(ambient, &cols, label)
    }

    pub fn ambient(&self) -> &NormedSpace {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Subspace dimension `k`.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn embed(&self, coeffs: &Vector) -> Result<Vector> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(&self.basis * coeffs)
    }

    /// Induced norm of a coefficient vector.
    pub fn induced_norm(&self, coeffs: &Vector) -> Result<f64> {
        self.ambient.norm(&self.embed(coeffs)?)
    }

    /// Least-squares coefficients of an ambient vector; errors when the
    /// residual exceeds the membership tolerance.
    pub fn coefficients_of(&self, x: &Vector) -> Result<Vector> {
        self.ambient.check_vector(x)?;
        let c = self.least_squares(x);
        let residual = euclid(&(x - &self.basis * &c));
        let scale = euclid(x).max(1.0);
        if residual > MEMBERSHIP_TOL * scale {
            return Err(Error::Membership(format!(
                "vector lies {residual:.3e} (euclidean) outside the span"
            )));
        }
        Ok(c)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let c = self.least_squares(x);
        euclid(&(x - &self.basis * &c)) <= tol * euclid(x).max(1.0)
    }

    fn least_squares(&self, x: &Vector) -> Vector {
        self.basis
            .clone()
            .svd(true, true)
            .solve(x, 1e-13)
            .expect("SVD least squares on a full-rank basis")
    }

    /// The subspace as a normed domain over its coefficient coordinates.
    pub fn domain(&self) -> Domain {
        let rep = build_rep(self);
        Domain::Induced(Box::new(SubspaceDomain { sub: self.clone(), rep }))
    }

    /// Total ordering key; equal keys mean identical (ambient, basis) data.
    pub(crate) fn canonical_key(&self) -> Vec<u64> {
        let mut key = vec![self.ambient.dim() as u64, self.dim() as u64];
        for z in self.basis.iter() {
            key.push(z.re.to_bits());
            key.push(z.im.to_bits());
        }
        key
    }
}

fn euclid(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// How an induced norm is evaluated exactly (or not).
#[derive(Debug, Clone)]
pub(crate) enum InducedRep {
    /// Inner-product ambient: Gram matrix `G = B^H W B = L L^H`.
    Gram { gram: Matrix, chol: Matrix, chol_inv: Matrix },
    /// Polytope-normed ambient: the induced norm is `max |<c, g>|` over the
    /// images of the ambient dual-ball vertices.
    Polytope(Arc<PolytopeBall>),
    /// Definition-based fallback through the ambient space.
    General,
}

fn build_rep(sub: &Subspace) -> InducedRep {
    let ambient = sub.ambient();
    match ambient.kind() {
        NormKind::Lp { p } if *p == 2.0 => gram_rep(sub, None),
        NormKind::WeightedEuclidean { weights } => gram_rep(sub, Some(weights)),
        NormKind::Lp { p } if *p == 1.0 && ambient.field() == ScalarField::Real && ambient.dim() <= 7 => {
            // Dual ball of l1 is the cube: vertices are all sign vectors.
            let d = ambient.dim();
            let duals: Vec<DVector<f64>> = (0..(1usize << d))
                .map(|mask| {
                    DVector::from_fn(d, |i, _| if mask >> i & 1 == 0 { 1.0 } else { -1.0 })
                })
                .collect();
            polytope_rep(sub, &duals)
        }
        NormKind::Lp { p } if p.is_infinite() && ambient.field() == ScalarField::Real => {
            // Dual ball of the sup norm is the cross-polytope.
            let d = ambient.dim();
            let mut duals = Vec::with_capacity(2 * d);
            for i in 0..d {
                let mut e = DVector::zeros(d);
                e[i] = 1.0;
                duals.push(e.clone());
                e[i] = -1.0;
                duals.push(e);
            }
            polytope_rep(sub, &duals)
        }
        NormKind::Polyhedral { .. } => {
            let duals = ambient.ball().expect("polyhedral spaces carry their ball").dual.clone();
            polytope_rep(sub, &duals)
        }
        _ => InducedRep::General,
    }
}

fn gram_rep(sub: &Subspace, weights: Option<&Vec<f64>>) -> InducedRep {
    let b = sub.basis();
    let weighted = match weights {
        Some(w) => {
            let mut m = b.clone();
            for (i, mut row) in m.row_iter_mut().enumerate() {
                row *= Complex64::new(w[i], 0.0);
            }
            m
        }
        None => b.clone(),
    };
    let gram = b.adjoint() * weighted;
    match nalgebra::Cholesky::new(gram.clone()) {
        Some(chol) => {
            let l = chol.l();
            match l.clone().try_inverse() {
                Some(chol_inv) => InducedRep::Gram { gram, chol: l, chol_inv },
                None => InducedRep::General,
            }
        }
        None => InducedRep::General,
    }
}

fn polytope_rep(sub: &Subspace, ambient_duals: &[DVector<f64>]) -> InducedRep {
    let bt = real_matrix(sub.basis()).transpose();
    let images: Vec<DVector<f64>> = ambient_duals.iter().map(|u| &bt * u).collect();
    match PolytopeBall::from_dual(images) {
        Ok(ball) => InducedRep::Polytope(Arc::new(ball)),
        Err(_) => InducedRep::General,
    }
}

fn real_matrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re)
}

/// A subspace together with its induced-norm representation.
#[derive(Debug, Clone)]
pub struct SubspaceDomain {
    pub sub: Subspace,
    pub(crate) rep: InducedRep,
}

/// A whole normed space, or a subspace carrying its induced norm. All
/// operator-level computations run over a `Domain`.
#[derive(Debug, Clone)]
pub enum Domain {
    Space(NormedSpace),
    Induced(Box<SubspaceDomain>),
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Domain::Space(a), Domain::Space(b)) => a == b,
            (Domain::Induced(a), Domain::Induced(b)) => a.sub == b.sub,
            _ => false,
        }
    }
}

impl From<NormedSpace> for Domain {
    fn from(s: NormedSpace) -> Self {
        Domain::Space(s)
    }
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Space(s) => s.dim(),
            Domain::Induced(d) => d.sub.dim(),
        }
    }

    pub fn field(&self) -> ScalarField {
        match self {
            Domain::Space(s) => s.field(),
            Domain::Induced(d) => d.sub.ambient().field(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Domain::Space(s) => s.label().to_string(),
            Domain::Induced(d) => format!("{} < {}", d.sub.label(), d.sub.ambient().label()),
        }
    }

    pub fn space(&self) -> Option<&NormedSpace> {
        match self {
            Domain::Space(s) => Some(s),
            Domain::Induced(_) => None,
        }
    }

    pub fn subspace(&self) -> Option<&Subspace> {
        match self {
            Domain::Space(_) => None,
            Domain::Induced(d) => Some(&d.sub),
        }
    }

    pub fn norm(&self, x: &Vector) -> Result<f64> {
        match self {
            Domain::Space(s) => s.norm(x),
            Domain::Induced(d) => d.sub.induced_norm(x),
        }
    }

    pub fn dual_norm(&self, f: &Vector) -> Result<f64> {
        match self {
            Domain::Space(s) => s.dual_norm(f),
            Domain::Induced(d) => d.dual_norm(f),
        }
    }

    pub fn norming_functionals(&self, x: &Vector, cap: usize) -> Result<NormingFace> {
        match self {
            Domain::Space(s) => s.norming_functionals(x, cap),
            Domain::Induced(d) => d.norming_functionals(x, cap),
        }
    }

    pub fn sample_sphere(&self, count: usize, seed: u64) -> Vec<Vector> {
        match self {
            Domain::Space(s) => s.sample_sphere(count, seed),
            Domain::Induced(d) => d.sample_sphere(count, seed),
        }
    }

    pub fn state_pair_at(&self, x: &Vector) -> Result<StatePair> {
        match self {
            Domain::Space(s) => s.state_pair_at(x),
            Domain::Induced(d) => d.state_pair_at(x),
        }
    }

    /// Extreme points of the unit ball for polytope-normed domains,
    /// normalized onto the sphere; `None` when the ball is not a polytope.
    pub fn ball_vertices(&self) -> Option<Vec<Vector>> {
        let raw: Vec<Vector> = match self {
            Domain::Space(s) => s.ball_vertices()?,
            Domain::Induced(d) => match &d.rep {
                InducedRep::Polytope(ball) => ball.primal.iter().map(promote).collect(),
                _ => return None,
            },
        };
        Some(
            raw.into_iter()
                .filter_map(|v| {
                    let n = self.norm(&v).ok()?;
                    (n > 1e-12).then(|| v / Complex64::new(n, 0.0))
                })
                .collect(),
        )
    }

    /// All (vertex, extreme norming functional) state pairs of a polytope
    /// ball; the exact search space for numerical radii on such domains.
    /// `complete` is false when some norming face hit the enumeration cap.
    pub fn vertex_state_pairs(&self, cap: usize) -> Result<Option<VertexPairs>> {
        let Some(verts) = self.ball_vertices() else { return Ok(None) };
        let mut pairs = Vec::new();
        let mut complete = true;
        for v in verts {
            let face = self.norming_functionals(&v, cap)?;
            complete &= !face.truncated;
            for f in face.functionals {
                pairs.push(self.make_pair(v.clone(), f)?);
            }
        }
        Ok(Some(VertexPairs { pairs, complete }))
    }

    pub(crate) fn make_pair(&self, x: Vector, f: Vector) -> Result<StatePair> {
        let nx = self.norm(&x)?;
        let df = self.dual_norm(&f)?;
        Ok(StatePair::from_values(x, f, nx, df))
    }

    /// Unit-sphere normalization helper used by the search engines.
    pub(crate) fn normalizer(&self) -> impl Fn(&Vector) -> Option<Vector> + Sync + '_ {
        move |x: &Vector| {
            let n = self.norm(x).ok()?;
            (n > 1e-12).then(|| x / Complex64::new(n, 0.0))
        }
    }
}

impl SubspaceDomain {
    fn dual_norm(&self, g: &Vector) -> Result<f64> {
        if g.len() != self.sub.dim() {
            return Err(Error::DimensionMismatch { expected: self.sub.dim(), got: g.len() });
        }
        match &self.rep {
            InducedRep::Gram { chol_inv, .. } => {
                let conj = g.map(|z| z.conj());
                Ok(euclid(&(chol_inv * conj)))
            }
            InducedRep::Polytope(ball) => Ok(ball.dual_norm(&real_part(g))),
            InducedRep::General => Ok(self.dual_norm_search(g)),
        }
    }

    /// Definition-based `sup |g(c)|` over the induced unit sphere. The
    /// supremum is approached by a fixed-seed multistart ascent, so this is
    /// approximate (from below) on general induced norms.
    fn dual_norm_search(&self, g: &Vector) -> f64 {
        let domain = Domain::Induced(Box::new(self.clone()));
        let normalize = domain.normalizer();
        let objective = |c: &Vector| pairing(g, c).norm();
        let grad_g = g.clone();
        let ascent = move |c: &Vector| {
            let v = pairing(&grad_g, c);
            let m = v.norm();
            if m < 1e-14 {
                return None;
            }
            Some(grad_g.map(|z| z.conj()) * (v / m))
        };
        let k = self.sub.dim();
        let mut extra: Vec<Vector> = Vec::with_capacity(k);
        for i in 0..k {
            let mut e = Vector::zeros(k);
            e[i] = Complex64::new(1.0, 0.0);
            extra.push(e);
        }
        let search = SphereSearch {
            dim: k,
            field: self.sub.ambient().field(),
            normalize: &normalize,
            objective: &objective,
            ascent_dir: Some(&ascent),
            extra_starts: extra,
        };
        multistart_max(&search, SearchBudget::new(12, 200), 0, SALT_DUAL).best_value
    }

    fn norming_functionals(&self, c: &Vector, cap: usize) -> Result<NormingFace> {
        if c.len() != self.sub.dim() {
            return Err(Error::DimensionMismatch { expected: self.sub.dim(), got: c.len() });
        }
        let value = self.sub.induced_norm(c)?;
        if value <= 0.0 {
            return Err(Error::ZeroVector);
        }
        match &self.rep {
            InducedRep::Gram { gram, .. } => {
                let f = (gram * c).map(|z| z.conj()) / Complex64::new(value, 0.0);
                Ok(NormingFace { functionals: vec![f], truncated: false })
            }
            InducedRep::Polytope(ball) => {
                let face = ball.face_of(&real_part(c), 1e-9);
                let truncated = face.len() > cap;
                Ok(NormingFace {
                    functionals: face.into_iter().take(cap.max(1)).map(|g| promote(&g)).collect(),
                    truncated,
                })
            }
            InducedRep::General => {
                // Restrictions of ambient norming functionals: g = B^T f.
                let x = self.sub.embed(c)?;
                let ambient_face = self.sub.ambient().norming_functionals(&x, cap)?;
                let bt = self.sub.basis().transpose();
                let mut functionals: Vec<Vector> = Vec::new();
                for f in &ambient_face.functionals {
                    let g = &bt * f;
                    if !functionals.iter().any(|h| (h - &g).iter().all(|z| z.norm() <= 1e-10)) {
                        functionals.push(g);
                    }
                }
                functionals.sort_by(lex_cmp_desc);
                Ok(NormingFace { functionals, truncated: ambient_face.truncated })
            }
        }
    }

    fn sample_sphere(&self, count: usize, seed: u64) -> Vec<Vector> {
        let mut rng = rng::stream(seed, crate::rng::SALT_SPHERE, 0);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let g = rng::gaussian_vector(&mut rng, self.sub.dim(), self.sub.ambient().field());
            if let Ok(n) = self.sub.induced_norm(&g) {
                if n > 1e-9 {
                    out.push(g / Complex64::new(n, 0.0));
                }
            }
        }
        out
    }

    fn state_pair_at(&self, c: &Vector) -> Result<StatePair> {
        let n = self.sub.induced_norm(c)?;
        if n <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let y = c / Complex64::new(n, 0.0);
        let face = self.norming_functionals(&y, DEFAULT_FACE_CAP)?;
        let f = face.functionals[0].clone();
        let ny = self.sub.induced_norm(&y)?;
        let df = self.dual_norm(&f)?;
        Ok(StatePair::from_values(y, f, ny, df))
    }
}

/// An ambient invertible map with its inverse and a certificate for
/// `|C - I|` in the ambient operator norm.
#[derive(Debug, Clone)]
pub struct InvertibleMap {
    ambient: NormedSpace,
    matrix: Matrix,
    inverse: Matrix,
    deviation: BoundsCertificate,
}

impl InvertibleMap {
    pub fn new(ambient: NormedSpace, matrix: Matrix, budget: SearchBudget, seed: u64) -> Result<Self> {
        if matrix.nrows() != ambient.dim() || matrix.ncols() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), got: matrix.nrows().max(matrix.ncols()) });
        }
        if ambient.field() == ScalarField::Real && matrix.iter().any(|z| z.im.abs() > 1e-12) {
            return Err(Error::FieldMismatch("complex map on a real space".into()));
        }
        let inverse = matrix.clone().try_inverse().ok_or(Error::NotInvertible)?;
        let residual = (&matrix * &inverse - Matrix::identity(ambient.dim(), ambient.dim()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if residual > 1e-10 {
            return Err(Error::NotInvertible);
        }
        let delta = &matrix - Matrix::identity(ambient.dim(), ambient.dim());
        let deviation =
            operator::matrix_operator_norm(&Domain::Space(ambient.clone()), &delta, budget, seed)?;
        Ok(InvertibleMap { ambient, matrix, inverse, deviation })
    }

    pub fn identity(ambient: NormedSpace) -> Self {
        let dim = ambient.dim();
        InvertibleMap {
            ambient,
            matrix: Matrix::identity(dim, dim),
            inverse: Matrix::identity(dim, dim),
            deviation: BoundsCertificate::exact(0.0, vec![], 0),
        }
    }

    pub fn ambient(&self) -> &NormedSpace {
        &self.ambient
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Certificate for `|C - I|`.
    pub fn deviation(&self) -> &BoundsCertificate {
        &self.deviation
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.matrix * x
    }

    pub fn apply_inverse(&self, x: &Vector) -> Vector {
        &self.inverse * x
    }

    /// The inverse map, with a fresh deviation certificate for `|C^{-1} - I|`.
    pub fn inverse_map(&self, budget: SearchBudget, seed: u64) -> Result<InvertibleMap> {
        InvertibleMap::new(self.ambient.clone(), self.inverse.clone(), budget, seed)
    }

    /// Does this map carry `y` onto `z`? Checks image containment of every
    /// basis vector in both directions at the membership tolerance.
    pub fn maps_onto(&self, y: &Subspace, z: &Subspace) -> bool {
        if y.dim() != z.dim() {
            return false;
        }
        let forward = y
            .basis()
            .column_iter()
            .all(|col| z.contains(&(&self.matrix * col.clone_owned()), MEMBERSHIP_TOL));
        let backward = z
            .basis()
            .column_iter()
            .all(|col| y.contains(&(&self.inverse * col.clone_owned()), MEMBERSHIP_TOL));
        forward && backward
    }
}

/// Image of a subspace under an invertible ambient map: the span of
/// `C * basis`. The map's deviation certificate is what downstream
/// convergence experiments read as the perturbation magnitude.
pub fn perturb_subspace(x: &Subspace, c: &InvertibleMap) -> Result<Subspace> {
    if x.ambient() != c.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Subspace::new(x.ambient().clone(), c.matrix() * x.basis(), format!("{}'", x.label()))
}

/// `inf { |y - z| : z in S_Z }` for a unit ambient vector `y`. Exact for
/// one-dimensional real subspaces (the sphere is two points); elsewhere a
/// multistart search over induced-norm unit coefficients, reporting the best
/// found value as a certified upper bound and a stagnation-derived lower.
pub fn dist_to_sphere(
    y: &Vector,
    z: &Subspace,
    budget: SearchBudget,
    seed: u64,
) -> Result<BoundsCertificate> {
    let ambient = z.ambient();
    ambient.check_vector(y)?;
    let ny = ambient.norm(y)?;
    if (ny - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("|y| = {ny} is not 1")));
    }
    if z.dim() == 1 && ambient.field() == ScalarField::Real {
        let b = z.basis().column(0).clone_owned();
        let z0 = &b / Complex64::new(ambient.norm(&b)?, 0.0);
        let plus = ambient.norm(&(y - &z0))?;
        let minus = ambient.norm(&(y + &z0))?;
        let (value, witness) = if plus <= minus { (plus, z0) } else { (minus, -z0) };
        return Ok(BoundsCertificate::exact(value, vec![Witness::Point(witness)], 2));
    }

    let domain = z.domain();
    let normalize = domain.normalizer();
    let objective = |c: &Vector| {
        let diff = y - z.embed(c).expect("dimension fixed");
        -ambient.norm(&diff).expect("dimension fixed")
    };
    let mut extra: Vec<Vector> = vec![z.least_squares(y)];
    for i in 0..z.dim() {
        let mut e = Vector::zeros(z.dim());
        e[i] = Complex64::new(1.0, 0.0);
        extra.push(e);
    }
    let search = SphereSearch {
        dim: z.dim(),
        field: ambient.field(),
        normalize: &normalize,
        objective: &objective,
        ascent_dir: None,
        extra_starts: extra,
    };
    let out = multistart_max(&search, budget, seed, SALT_DIST);
    let upper = -out.best_value;
    let lower = (upper - out.tail_gain() - 1e-9 * upper.abs()).max(0.0);
    let witness = out.best_point.map(|c| {
        Witness::Point(z.embed(&c).expect("dimension fixed"))
    });
    Ok(BoundsCertificate {
        lower,
        upper,
        method: BoundMethod::MultistartHeuristic,
        witnesses: witness.into_iter().collect(),
        budget_used: out.evaluations,
    })
}

struct DirectedSup {
    lower: f64,
    upper: f64,
    witness: Option<Vector>,
    exact: bool,
    evals: u64,
}

fn directed_sup(
    from: &Subspace,
    to: &Subspace,
    budget: SearchBudget,
    seed: u64,
    stream_base: u64,
) -> Result<DirectedSup> {
    let ambient = from.ambient();
    let inner_budget = SearchBudget::new(4, 120);

    // One-dimensional real sphere is two points: the sup is a finite max.
    if from.dim() == 1 && ambient.field() == ScalarField::Real {
        let b = from.basis().column(0).clone_owned();
        let u = &b / Complex64::new(ambient.norm(&b)?, 0.0);
        let mut best: Option<(BoundsCertificate, Vector)> = None;
        let mut evals = 0;
        let mut exact = true;
        for cand in [u.clone(), -u] {
            let cert = dist_to_sphere(&cand, to, budget, seed.wrapping_add(stream_base))?;
            evals += cert.budget_used;
            exact &= cert.method == BoundMethod::ExactFormula;
            if best.as_ref().map_or(true, |(b, _)| cert.upper > b.upper) {
                best = Some((cert, cand));
            }
        }
        let (cert, w) = best.expect("two candidates evaluated");
        return Ok(DirectedSup { lower: cert.lower, upper: cert.upper, witness: Some(w), exact, evals });
    }

    let domain = from.domain();
    let n_samples = (budget.restarts as usize * 4).max(32);
    let mut candidates: Vec<Vector> = domain
        .sample_sphere(n_samples, seed.wrapping_add(stream_base))
        .into_iter()
        .collect();
    if let Some(verts) = domain.ball_vertices() {
        candidates.extend(verts);
    }

    let mut evals: u64 = 0;
    let mut uppers_in_order: Vec<f64> = Vec::with_capacity(candidates.len());
    let mut best: Option<(f64, f64, Vector)> = None; // (upper, lower, coeff)
    for (i, c) in candidates.iter().enumerate() {
        let point = from.embed(c)?;
        let cert =
            dist_to_sphere(&point, to, inner_budget, seed.wrapping_add(stream_base * 7919 + i as u64))?;
        evals += cert.budget_used;
        uppers_in_order.push(cert.upper);
        if best.as_ref().map_or(true, |(u, _, _)| cert.upper > *u) {
            best = Some((cert.upper, cert.lower, c.clone()));
        }
    }
    let (mut best_upper, mut best_lower, mut best_c) =
        best.ok_or_else(|| Error::InvalidParameter("empty candidate set".into()))?;

    // Local polish of the best sphere point with shrinking random moves.
    let mut rng = rng::stream(seed.wrapping_add(stream_base), SALT_GAP, 0xfff);
    let polish_steps = (budget.steps / 4).clamp(20, 160);
    let mut radius = 0.4_f64;
    for j in 0..polish_steps {
        let g = rng::gaussian_vector(&mut rng, from.dim(), ambient.field());
        let cand = &best_c + g * Complex64::new(radius, 0.0);
        radius *= 0.96;
        let n = from.induced_norm(&cand)?;
        if n < 1e-12 {
            continue;
        }
        let cand = cand / Complex64::new(n, 0.0);
        let point = from.embed(&cand)?;
        let cert = dist_to_sphere(
            &point,
            to,
            inner_budget,
            seed.wrapping_add(stream_base * 104729 + j as u64),
        )?;
        evals += cert.budget_used;
        uppers_in_order.push(cert.upper);
        if cert.upper > best_upper {
            best_upper = cert.upper;
            best_lower = cert.lower;
            best_c = cand;
        }
    }

    // Stagnation of the outer sup across the evaluation sequence.
    let n = uppers_in_order.len();
    let tail_gain = if n >= 4 {
        let head = uppers_in_order[..n * 3 / 4].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (best_upper - head).max(0.0)
    } else {
        0.0
    };
    Ok(DirectedSup {
        lower: best_lower,
        upper: best_upper + tail_gain + 1e-9 * best_upper.abs(),
        witness: Some(from.embed(&best_c)?),
        exact: false,
        evals,
    })
}

/// Gap opening `Q(Y, Z)`: the larger of the two directed sup-distances
/// between unit spheres. Symmetric by construction — both orders of the
/// arguments run the identical computation.
pub fn gap_opening(
    y: &Subspace,
    z: &Subspace,
    budget: SearchBudget,
    seed: u64,
) -> Result<BoundsCertificate> {
    if y.ambient() != z.ambient() {
        return Err(Error::AmbientMismatch);
    }
    // Canonical argument order makes the certificate independent of the
    // caller's order.
    let (a, b) = if y.canonical_key() <= z.canonical_key() { (y, z) } else { (z, y) };
    let d1 = directed_sup(a, b, budget, seed, 0)?;
    let d2 = directed_sup(b, a, budget, seed, 1)?;
    let lower = d1.lower.max(d2.lower);
    let upper = d1.upper.max(d2.upper).max(lower);
    let witness = if d1.upper >= d2.upper { d1.witness.clone() } else { d2.witness.clone() };
    let method = if d1.exact && d2.exact {
        BoundMethod::ExactFormula
    } else {
        BoundMethod::MultistartHeuristic
    };
    Ok(BoundsCertificate {
        lower,
        upper,
        method,
        witnesses: witness.map(Witness::Point).into_iter().collect(),
        budget_used: d1.evals + d2.evals,
    })
}

/// Exhaustive (vertex, extreme functional) pairs of a polytope ball.
#[derive(Debug, Clone)]
pub struct VertexPairs {
    pub pairs: Vec<StatePair>,
    /// False when a norming-face enumeration was truncated at its cap, in
    /// which case the list is a subset of the true extreme pairs.
    pub complete: bool,
}

/// An opening bound with the dimension-mismatch convention flag.
#[derive(Debug, Clone)]
pub struct OpeningBound {
    pub cert: BoundsCertificate,
    /// Set when the value 1 was produced by the convention for subspaces no
    /// invertible ambient map can identify (dimension mismatch), rather than
    /// by a candidate map.
    pub convention: bool,
}

fn builtin_candidates(y: &Subspace, z: &Subspace, budget: SearchBudget, seed: u64) -> Vec<InvertibleMap> {
    let mut out = Vec::new();
    if let Some(rot) = rotation_candidate(y, z, budget, seed) {
        if rot.maps_onto(y, z) {
            out.push(rot);
        }
    }
    if let Some(bx) = basis_exchange_candidate(y, z, None, budget, seed) {
        if bx.maps_onto(y, z) {
            out.push(bx);
        }
    }
    out
}

/// Upper bound for the directed operator opening `r_0(Y, Z)`:
/// the minimum of `|C - I|` over validated candidate maps with `C(Y) = Z`,
/// or exactly 1 with the convention flag when `dim Y != dim Z`. Only an
/// upper bound is claimed; the lower end of the certificate is 0.
pub fn operator_opening_upper(
    y: &Subspace,
    z: &Subspace,
    candidates: &[InvertibleMap],
    budget: SearchBudget,
    seed: u64,
) -> Result<OpeningBound> {
    if y.ambient() != z.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if y.dim() != z.dim() {
        return Ok(OpeningBound {
            cert: BoundsCertificate::exact(1.0, vec![], 0),
            convention: true,
        });
    }
    // User-supplied candidates must be valid; built-ins are filtered.
    for c in candidates {
        if c.ambient() != y.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if !c.maps_onto(y, z) {
            return Err(Error::Membership("candidate map does not carry Y onto Z".into()));
        }
    }
    let mut pool: Vec<InvertibleMap> = candidates.to_vec();
    pool.extend(builtin_candidates(y, z, budget, seed));
    if pool.is_empty() {
        return Err(Error::NoCandidate(
            "no built-in candidate applies; supply an invertible map with C(Y) = Z".into(),
        ));
    }
    let mut upper = f64::INFINITY;
    for c in &pool {
        upper = upper.min(c.deviation().upper);
    }
    Ok(OpeningBound {
        cert: BoundsCertificate {
            lower: 0.0,
            upper,
            method: BoundMethod::MultistartHeuristic,
            witnesses: vec![],
            budget_used: pool.len() as u64,
        },
        convention: false,
    })
}

/// Upper bound for the operator opening `r(Y, Z) = max(r_0(Y,Z), r_0(Z,Y))`.
/// Candidates are reused inverted for the reverse direction.
pub fn operator_opening(
    y: &Subspace,
    z: &Subspace,
    candidates: &[InvertibleMap],
    budget: SearchBudget,
    seed: u64,
) -> Result<OpeningBound> {
    if y.ambient() != z.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if y.dim() != z.dim() {
        return Ok(OpeningBound { cert: BoundsCertificate::exact(1.0, vec![], 0), convention: true });
    }
    let forward = operator_opening_upper(y, z, candidates, budget, seed)?;
    let reversed: Vec<InvertibleMap> =
        candidates.iter().filter_map(|c| c.inverse_map(budget, seed).ok()).collect();
    let backward = operator_opening_upper(z, y, &reversed, budget, seed)?;
    Ok(OpeningBound {
        cert: BoundsCertificate {
            lower: forward.cert.lower.max(backward.cert.lower),
            upper: forward.cert.upper.max(backward.cert.upper),
            method: BoundMethod::MultistartHeuristic,
            witnesses: vec![],
            budget_used: forward.cert.budget_used + backward.cert.budget_used,
        },
        convention: false,
    })
}

/// Direct rotation carrying `Y` onto `Z` and fixing the orthogonal complement
/// of `Y + Z`, for Euclidean and weighted-Euclidean real ambients. Built from
/// the principal vectors of the pair; its deviation is `2 sin(theta_max / 2)`.
pub fn rotation_candidate(
    y: &Subspace,
    z: &Subspace,
    budget: SearchBudget,
    seed: u64,
) -> Option<InvertibleMap> {
    let ambient = y.ambient();
    if ambient.field() != ScalarField::Real || y.dim() != z.dim() {
        return None;
    }
    let weights: Vec<f64> = match ambient.kind() {
        NormKind::Lp { p } if *p == 2.0 => vec![1.0; ambient.dim()],
        NormKind::WeightedEuclidean { weights } => weights.clone(),
        _ => return None,
    };
    let d = ambient.dim();
    let sqrt_w = DMatrix::from_fn(d, d, |i, j| if i == j { weights[i].sqrt() } else { 0.0 });
    let sqrt_w_inv = DMatrix::from_fn(d, d, |i, j| if i == j { 1.0 / weights[i].sqrt() } else { 0.0 });
    let by = &sqrt_w * real_matrix(y.basis());
    let bz = &sqrt_w * real_matrix(z.basis());
    let qa = by.qr().q();
    let qb = bz.qr().q();
    let m = qa.transpose() * &qb;
    let svd = m.svd(true, true);
    let p = svd.u?;
    let q = svd.v_t?.transpose();
    let u1 = &qa * p;
    let v1 = &qb * q;
    let mut r = DMatrix::<f64>::identity(d, d);
    for i in 0..u1.ncols() {
        let sigma = svd.singular_values[i].clamp(-1.0, 1.0);
        let theta = sigma.acos();
        if theta < 1e-14 {
            continue;
        }
        let u = u1.column(i).clone_owned();
        let w = v1.column(i).clone_owned() - &u * sigma;
        let wn = w.norm();
        if wn < 1e-14 {
            continue;
        }
        let w = w / wn;
        let (c, s) = (theta.cos(), theta.sin());
        r += (&u * u.transpose() + &w * w.transpose()) * (c - 1.0);
        r += (&w * u.transpose() - &u * w.transpose()) * s;
    }
    let rot = &sqrt_w_inv * r * &sqrt_w;
    let rot_c = Matrix::from_fn(d, d, |i, j| Complex64::new(rot[(i, j)], 0.0));
    InvertibleMap::new(ambient.clone(), rot_c, budget, seed).ok()
}

/// Basis-exchange candidate `C = I + (B_Z - B_Y) G` for a left inverse `G`
/// of `B_Y` (least-squares pseudoinverse unless supplied). Maps the given
/// basis of `Y` exactly onto the given basis of `Z`; invertibility is
/// checked, not guaranteed.
pub fn basis_exchange_candidate(
    y: &Subspace,
    z: &Subspace,
    left_inverse: Option<&Matrix>,
    budget: SearchBudget,
    seed: u64,
) -> Option<InvertibleMap> {
    if y.dim() != z.dim() {
        return None;
    }
    let by = y.basis();
    let bz = z.basis();
    let g = match left_inverse {
        Some(g) => g.clone(),
        None => {
            let gram = by.adjoint() * by;
            gram.try_inverse()? * by.adjoint()
        }
    };
    let d = y.ambient().dim();
    let c = Matrix::identity(d, d) + (bz - by) * g;
    InvertibleMap::new(y.ambient().clone(), c, budget, seed).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::rvec;

    fn l2(dim: usize) -> NormedSpace {
        NormedSpace::euclidean(ScalarField::Real, dim).unwrap()
    }
    fn l1(dim: usize) -> NormedSpace {
        NormedSpace::lp(ScalarField::Real, dim, 1.0).unwrap()
    }
    fn budget() -> SearchBudget {
        SearchBudget::new(16, 200)
    }

    #[test]
    fn induced_norm_matches_ambient_norm_of_embedding() {
        let ambients = vec![
            l2(3),
            l1(3),
            NormedSpace::lp(ScalarField::Real, 3, f64::INFINITY).unwrap(),
            NormedSpace::lp(ScalarField::Real, 3, 2.5).unwrap(),
            NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 2.0, 0.5]).unwrap(),
        ];
        for ambient in ambients {
            let sub = Subspace::coordinate_span(ambient.clone(), &[0, 2], "S").unwrap();
            let dom = sub.domain();
            for c in dom.sample_sphere(40, 9) {
                assert!((dom.norm(&c).unwrap() - 1.0).abs() < 1e-12);
                // direct check against the ambient norm
                let x = sub.embed(&c).unwrap();
                assert!((ambient.norm(&x).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn induced_state_pairs_are_exact() {
        let ambients = vec![
            l2(3),
            l1(3),
            NormedSpace::lp(ScalarField::Real, 3, f64::INFINITY).unwrap(),
            NormedSpace::lp(ScalarField::Real, 3, 3.0).unwrap(),
            NormedSpace::weighted_euclidean(ScalarField::Complex, vec![1.0, 0.5, 2.0]).unwrap(),
        ];
        for ambient in ambients {
            let mut basis = Matrix::zeros(3, 2);
            basis[(0, 0)] = Complex64::new(1.0, 0.0);
            basis[(2, 0)] = Complex64::new(0.25, 0.0);
            basis[(1, 1)] = Complex64::new(1.0, 0.0);
            let sub = Subspace::new(ambient.clone(), basis, "S").unwrap();
            let dom = sub.domain();
            for c in dom.sample_sphere(25, 17) {
                let sp = dom.state_pair_at(&c).unwrap();
                assert!(
                    sp.is_exact(&crate::cert::Tolerances::default()),
                    "{}: defect {} residuals {} {}",
                    ambient.label(),
                    sp.defect,
                    sp.primal_residual,
                    sp.dual_residual
                );
            }
        }
    }

    #[test]
    fn dist_examples() {
        let ambient = l2(2);
        let zline = Subspace::line(ambient.clone(), &rvec(&[0.0, 1.0]), "Z").unwrap();
        // y on the sphere of Z itself.
        let d0 = dist_to_sphere(&rvec(&[0.0, 1.0]), &zline, budget(), 3).unwrap();
        assert!(d0.upper <= 1e-9);
        // orthogonal lines: sqrt(2)
        let d1 = dist_to_sphere(&rvec(&[1.0, 0.0]), &zline, budget(), 3).unwrap();
        assert!((d1.upper - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(d1.method, BoundMethod::ExactFormula);
        // lines at angle pi/6: chord 2 sin(pi/12)
        let t = std::f64::consts::PI / 6.0;
        let z2 = Subspace::line(ambient, &rvec(&[t.cos(), t.sin()]), "Z2").unwrap();
        let d2 = dist_to_sphere(&rvec(&[1.0, 0.0]), &z2, budget(), 3).unwrap();
        let expect = 2.0 * (std::f64::consts::PI / 12.0).sin();
        assert!((d2.upper - expect).abs() < 1e-12, "{} vs {}", d2.upper, expect);
    }

    #[test]
    fn gap_of_equal_subspaces_is_zero() {
        let sub = Subspace::coordinate_span(l1(3), &[0, 1], "Y").unwrap();
        let q = gap_opening(&sub, &sub.clone(), budget(), 5).unwrap();
        assert!(q.lower <= 1e-12, "lower = {}", q.lower);
        assert!(q.upper <= 1e-12, "upper = {}", q.upper);
    }

    #[test]
    fn gap_between_orthogonal_lines() {
        let ambient = l2(2);
        let y = Subspace::line(ambient.clone(), &rvec(&[1.0, 0.0]), "Y").unwrap();
        let z = Subspace::line(ambient, &rvec(&[0.0, 1.0]), "Z").unwrap();
        let q = gap_opening(&y, &z, budget(), 5).unwrap();
        assert!((q.upper - 2f64.sqrt()).abs() < 1e-6);
        assert!((q.lower - 2f64.sqrt()).abs() < 1e-6);
        assert_eq!(q.method, BoundMethod::ExactFormula);
    }

    #[test]
    fn gap_is_exactly_symmetric() {
        let ambient = l2(3);
        let y = Subspace::coordinate_span(ambient.clone(), &[0, 1], "Y").unwrap();
        let mut basis = Matrix::zeros(3, 2);
        basis[(0, 0)] = Complex64::new(1.0, 0.0);
        basis[(1, 0)] = Complex64::new(0.3, 0.0);
        basis[(2, 1)] = Complex64::new(1.0, 0.0);
        let z = Subspace::new(ambient, basis, "Z").unwrap();
        let q1 = gap_opening(&y, &z, SearchBudget::new(6, 80), 5).unwrap();
        let q2 = gap_opening(&z, &y, SearchBudget::new(6, 80), 5).unwrap();
        assert_eq!(q1.lower, q2.lower);
        assert_eq!(q1.upper, q2.upper);
    }

    #[test]
    fn gap_between_planes_in_l2_3() {
        let ambient = l2(3);
        let y = Subspace::coordinate_span(ambient.clone(), &[0, 1], "Y").unwrap();
        let z = Subspace::coordinate_span(ambient, &[0, 2], "Z").unwrap();
        let q = gap_opening(&y, &z, SearchBudget::new(32, 300), 5).unwrap();
        assert!((q.upper - 2f64.sqrt()).abs() < 1e-3, "upper = {}", q.upper);
        assert!(q.lower <= 2f64.sqrt() + 1e-9);
        assert!((q.lower - 2f64.sqrt()).abs() < 1e-3, "lower = {}", q.lower);
    }

    #[test]
    fn opening_identity_candidate_is_zero() {
        let sub = Subspace::coordinate_span(l1(3), &[0, 1], "Y").unwrap();
        let id = InvertibleMap::identity(l1(3));
        let r = operator_opening(&sub, &sub.clone(), &[id], budget(), 5).unwrap();
        assert!(!r.convention);
        assert!(r.cert.upper <= 1e-12);
    }

    #[test]
    fn opening_dimension_mismatch_is_exactly_one() {
        let ambient = l2(3);
        let y = Subspace::coordinate_span(ambient.clone(), &[0], "Y").unwrap();
        let z = Subspace::coordinate_span(ambient, &[0, 1], "Z").unwrap();
        let r = operator_opening_upper(&y, &z, &[], budget(), 5).unwrap();
        assert!(r.convention);
        assert_eq!(r.cert.lower, 1.0);
        assert_eq!(r.cert.upper, 1.0);
        let r2 = operator_opening(&y, &z, &[], budget(), 5).unwrap();
        assert!(r2.convention);
        assert_eq!(r2.cert.upper, 1.0);
    }

    #[test]
    fn rotation_candidate_for_orthogonal_lines() {
        let ambient = l2(2);
        let y = Subspace::line(ambient.clone(), &rvec(&[1.0, 0.0]), "Y").unwrap();
        let z = Subspace::line(ambient, &rvec(&[0.0, 1.0]), "Z").unwrap();
        let r = operator_opening(&y, &z, &[], budget(), 5).unwrap();
        assert!((r.cert.upper - 2f64.sqrt()).abs() < 1e-9, "upper = {}", r.cert.upper);
        // rotation by theta gives |C - I| = 2 sin(theta/2)
        let t = std::f64::consts::PI / 6.0;
        let ambient = l2(2);
        let y = Subspace::line(ambient.clone(), &rvec(&[1.0, 0.0]), "Y").unwrap();
        let z2 = Subspace::line(ambient, &rvec(&[t.cos(), t.sin()]), "Z2").unwrap();
        let r2 = operator_opening(&y, &z2, &[], budget(), 5).unwrap();
        let expect = 2.0 * (t / 2.0).sin();
        assert!((r2.cert.upper - expect).abs() < 1e-9, "{} vs {}", r2.cert.upper, expect);
    }

    #[test]
    fn rotation_candidate_in_weighted_ambient() {
        let ambient = NormedSpace::weighted_euclidean(ScalarField::Real, vec![2.0, 0.5, 1.0]).unwrap();
        let y = Subspace::coordinate_span(ambient.clone(), &[0, 1], "Y").unwrap();
        let mut basis = Matrix::zeros(3, 2);
        basis[(0, 0)] = Complex64::new(1.0, 0.0);
        basis[(2, 0)] = Complex64::new(0.4, 0.0);
        basis[(1, 1)] = Complex64::new(1.0, 0.0);
        let z = Subspace::new(ambient, basis, "Z").unwrap();
        let rot = rotation_candidate(&y, &z, budget(), 5).expect("rotation applies");
        assert!(rot.maps_onto(&y, &z));
    }

    #[test]
    fn basis_exchange_maps_bases() {
        let ambient = l1(3);
        let y = Subspace::coordinate_span(ambient.clone(), &[0, 1], "Y").unwrap();
        let mut basis = Matrix::zeros(3, 2);
        basis[(0, 0)] = Complex64::new(1.0, 0.0);
        basis[(2, 0)] = Complex64::new(0.2, 0.0);
        basis[(1, 1)] = Complex64::new(1.0, 0.0);
        let z = Subspace::new(ambient, basis, "Z").unwrap();
        let c = basis_exchange_candidate(&y, &z, None, budget(), 5).expect("invertible");
        assert!(c.maps_onto(&y, &z));
        let r = operator_opening(&y, &z, &[], budget(), 5).unwrap();
        assert!(r.cert.upper < 1.0);
    }

    #[test]
    fn user_candidate_validation_errors() {
        let ambient = l2(2);
        let y = Subspace::line(ambient.clone(), &rvec(&[1.0, 0.0]), "Y").unwrap();
        let z = Subspace::line(ambient.clone(), &rvec(&[0.0, 1.0]), "Z").unwrap();
        let id = InvertibleMap::identity(ambient);
        // identity does not map Y onto Z
        assert!(operator_opening_upper(&y, &z, &[id], budget(), 5).is_err());
    }

    #[test]
    fn perturb_preserves_diag_invariant_spans() {
        let ambient = l1(3);
        let sub = Subspace::coordinate_span(ambient.clone(), &[0, 1], "X").unwrap();
        let id = InvertibleMap::identity(ambient.clone());
        let same = perturb_subspace(&sub, &id).unwrap();
        assert!(same.basis().column_iter().all(|c| sub.contains(&c.clone_owned(), 1e-10)));

        let mut d = Matrix::identity(3, 3);
        d[(0, 0)] = Complex64::new(1.2, 0.0);
        let diag = InvertibleMap::new(ambient, d, budget(), 5).unwrap();
        let moved = perturb_subspace(&sub, &diag).unwrap();
        assert!(moved.basis().column_iter().all(|c| sub.contains(&c.clone_owned(), 1e-10)));
    }

    #[test]
    fn shear_family_gap_shrinks() {
        let ambient = l2(3);
        let sub = Subspace::coordinate_span(ambient.clone(), &[0, 1], "X").unwrap();
        let mut last = f64::INFINITY;
        for n in [5.0, 10.0, 20.0, 40.0] {
            let mut m = Matrix::identity(3, 3);
            m[(2, 0)] = Complex64::new(1.0 / n, 0.0);
            let c = InvertibleMap::new(ambient.clone(), m, budget(), 5).unwrap();
            let moved = perturb_subspace(&sub, &c).unwrap();
            let q = gap_opening(&sub, &moved, SearchBudget::new(8, 100), 7).unwrap();
            assert!(q.lower <= last + 1e-6, "gap lower not shrinking: {} after {}", q.lower, last);
            last = q.lower;
        }
        assert!(last < 0.1);
    }

    #[test]
    fn invertible_map_rejects_singular() {
        let ambient = l2(2);
        let m = Matrix::from_fn(2, 2, |_, _| Complex64::new(1.0, 0.0));
        assert!(matches!(InvertibleMap::new(ambient, m, budget(), 5), Err(Error::NotInvertible)));
    }
}
