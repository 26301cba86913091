//! Finite-dimensional normed spaces: norm families, dual norms, sphere
//! sampling and norming functionals.
//!
//! A [`NormedSpace`] is a real or complex coordinate space with one of three
//! concrete norms: an `l_p` norm (`1 <= p <= inf`), a polyhedral norm given by
//! the extreme points of its unit ball, or a weighted Euclidean norm. Dual
//! vectors pair with primal vectors through the bilinear form
//! `f(x) = sum_i f_i x_i`; for complex spaces, norming functionals absorb the
//! conjugation into their stored coordinates so the pairing stays a plain
//! component sum.
//!
//! A state pair is a unit vector together with a unit dual functional that
//! attains the norm: `|x| = |f|* = f(x) = 1`. The set of such pairs is the
//! domain over which numerical ranges are computed, so everything downstream
//! leans on `norming_functionals` being exact for each norm family.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cert::Tolerances;
use crate::error::{Error, Result};
use crate::polytope::PolytopeBall;
use crate::rng::{self, SALT_SPHERE};

pub type Vector = DVector<Complex64>;
pub type Matrix = DMatrix<Complex64>;

/// Enumeration cap for norming faces; sparse vectors in `l1` have `2^z`
/// extreme norming functionals, so the enumeration must be bounded.
pub const DEFAULT_FACE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    Real,
    Complex,
}

impl ScalarField {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScalarField::Real => "real",
            ScalarField::Complex => "complex",
        }
    }
}

/// The concrete norm carried by a [`NormedSpace`].
#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    /// `l_p` norm; `p = f64::INFINITY` encodes the sup norm.
    Lp { p: f64 },
    /// Minkowski gauge of the symmetric convex hull of `ball_vertices`.
    Polyhedral { ball_vertices: Vec<DVector<f64>> },
    /// `|x| = sqrt(sum_i w_i |x_i|^2)` with positive weights.
    WeightedEuclidean { weights: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct NormedSpace {
    dim: usize,
    field: ScalarField,
    kind: NormKind,
    label: String,
    ball: Option<Arc<PolytopeBall>>,
}

impl PartialEq for NormedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.field == other.field && self.kind == other.kind
    }
}

/// A unit vector with a unit norming functional: `|x| = |f|* = f(x) = 1` up
/// to the recorded residuals.
#[derive(Debug, Clone)]
pub struct StatePair {
    pub x: Vector,
    pub f: Vector,
    /// `|1 - f(x)|`
    pub defect: f64,
    /// `||x| - 1|`
    pub primal_residual: f64,
    /// `||f|* - 1|`
    pub dual_residual: f64,
}

impl StatePair {
    pub fn new(space: &NormedSpace, x: Vector, f: Vector) -> Result<Self> {
        let norm_x = space.norm(&x)?;
        let dual_f = space.dual_norm(&f)?;
        Ok(Self::from_values(x, f, norm_x, dual_f))
    }

    /// Build from already-computed norms (used by induced-norm domains).
    pub(crate) fn from_values(x: Vector, f: Vector, norm_of_x: f64, dual_norm_of_f: f64) -> Self {
        let defect = (Complex64::new(1.0, 0.0) - pairing(&f, &x)).norm();
        StatePair {
            x,
            f,
            defect,
            primal_residual: (norm_of_x - 1.0).abs(),
            dual_residual: (dual_norm_of_f - 1.0).abs(),
        }
    }

    pub fn is_exact(&self, tol: &Tolerances) -> bool {
        self.defect <= tol.exactness
            && self.primal_residual <= tol.exactness
            && self.dual_residual <= tol.exactness
    }
}

/// Extreme points of a norming face, possibly truncated at the cap.
#[derive(Debug, Clone)]
pub struct NormingFace {
    pub functionals: Vec<Vector>,
    /// Set when the enumeration was cut off at the cap, or when the face has
    /// a continuum of extreme points (complex non-smooth norms) of which only
    /// representative phases are listed.
    pub truncated: bool,
}

impl NormedSpace {
    pub fn lp(field: ScalarField, dim: usize, p: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("l_p norm needs p >= 1, got {p}")));
        }
        let tag = if p.is_infinite() { "inf".to_string() } else { format!("{p}") };
        let set = match field {
            ScalarField::Real => "R",
            ScalarField::Complex => "C",
        };
        Ok(NormedSpace {
            dim,
            field,
            kind: NormKind::Lp { p },
            label: format!("l{tag}({set}^{dim})"),
            ball: None,
        })
    }

    pub fn euclidean(field: ScalarField, dim: usize) -> Result<Self> {
        Self::lp(field, dim, 2.0)
    }

    /// Real space whose unit ball is the symmetric convex hull of the listed
    /// vertices. The list must already be symmetric (`v` listed implies `-v`
    /// listed) and must span the space.
    pub fn polyhedral(dim: usize, ball_vertices: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        let verts: Vec<DVector<f64>> = ball_vertices.iter().map(|v| DVector::from_row_slice(v)).collect();
        for v in &verts {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
        }
        for v in &verts {
            let has_neg = verts.iter().any(|w| (w + v).amax() <= 1e-12 * v.amax().max(1.0));
            if !has_neg {
                return Err(Error::InvalidParameter(
                    "polyhedral vertex list is not symmetric: missing -v for some v".into(),
                ));
            }
        }
        let ball = PolytopeBall::from_primal(verts.clone())?;
        Ok(NormedSpace {
            dim,
            field: ScalarField::Real,
            kind: NormKind::Polyhedral { ball_vertices: verts },
            label: format!("poly({} verts, R^{dim})", ball.primal.len()),
            ball: Some(Arc::new(ball)),
        })
    }

    /// Cross-polytope ball: the polyhedral rendering of the `l1` ball.
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        let mut verts = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            verts.push(e.clone());
            e[i] = -1.0;
            verts.push(e);
        }
        Self::polyhedral(dim, verts)
    }

    /// Hypercube ball: the polyhedral rendering of the sup-norm ball.
    pub fn hypercube(dim: usize) -> Result<Self> {
        let mut verts = Vec::new();
        for mask in 0..(1usize << dim) {
            let v: Vec<f64> = (0..dim).map(|i| if mask >> i & 1 == 0 { 1.0 } else { -1.0 }).collect();
            verts.push(v);
        }
        Self::polyhedral(dim, verts)
    }

    pub fn weighted_euclidean(field: ScalarField, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter("weights must be positive and finite".into()));
        }
        let dim = weights.len();
        let set = match field {
            ScalarField::Real => "R",
            ScalarField::Complex => "C",
        };
        Ok(NormedSpace {
            dim,
            field,
            kind: NormKind::WeightedEuclidean { weights },
            label: format!("wl2({set}^{dim})"),
            ball: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn ball(&self) -> Option<&Arc<PolytopeBall>> {
        self.ball.as_ref()
    }

    /// Extreme points of the unit ball when it is a polytope: polyhedral
    /// norms always, and the real `l1`/sup norms at small dimension (the
    /// cross-polytope and the hypercube).
    pub fn ball_vertices(&self) -> Option<Vec<Vector>> {
        if let Some(b) = self.ball.as_ref() {
            return Some(b.primal.iter().map(promote).collect());
        }
        if self.field != ScalarField::Real {
            return None;
        }
        match &self.kind {
            NormKind::Lp { p } if *p == 1.0 && self.dim <= 8 => {
                let mut verts = Vec::with_capacity(2 * self.dim);
                for i in 0..self.dim {
                    let mut e = Vector::zeros(self.dim);
                    e[i] = Complex64::new(1.0, 0.0);
                    verts.push(e.clone());
                    e[i] = Complex64::new(-1.0, 0.0);
                    verts.push(e);
                }
                Some(verts)
            }
            NormKind::Lp { p } if p.is_infinite() && self.dim <= 10 => {
                Some(
                    (0..(1usize << self.dim))
                        .map(|mask| {
                            Vector::from_fn(self.dim, |i, _| {
                                Complex64::new(if mask >> i & 1 == 0 { 1.0 } else { -1.0 }, 0.0)
                            })
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// The dual space: `l_q` against `l_p`, inverted weights, swapped
    /// polytope representations. Functionals of this space pair with its
    /// vectors through the same bilinear form.
    pub fn dual_space(&self) -> NormedSpace {
        let label = format!("{}*", self.label);
        match &self.kind {
            NormKind::Lp { p } => {
                let q = conjugate_exponent(*p);
                NormedSpace { dim: self.dim, field: self.field, kind: NormKind::Lp { p: q }, label, ball: None }
            }
            NormKind::WeightedEuclidean { weights } => NormedSpace {
                dim: self.dim,
                field: self.field,
                kind: NormKind::WeightedEuclidean { weights: weights.iter().map(|w| 1.0 / w).collect() },
                label,
                ball: None,
            },
            NormKind::Polyhedral { .. } => {
                let swapped = self.ball.as_ref().unwrap().swapped();
                NormedSpace {
                    dim: self.dim,
                    field: ScalarField::Real,
                    kind: NormKind::Polyhedral {
                        ball_vertices: swapped.primal.clone(),
                    },
                    label,
                    ball: Some(Arc::new(swapped)),
                }
            }
        }
    }

    pub(crate) fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        if self.field == ScalarField::Real && v.iter().any(|z| z.im.abs() > 1e-12) {
            return Err(Error::FieldMismatch("complex components supplied to a real space".into()));
        }
        Ok(())
    }

    /// Norm of `x` in this space's family. Closed form for `l_p` and weighted
    /// Euclidean norms; exact finite maximum over polar vertices for
    /// polyhedral norms.
    pub fn norm(&self, x: &Vector) -> Result<f64> {
        self.check_vector(x)?;
        Ok(match &self.kind {
            NormKind::Lp { p } => lp_norm(x, *p),
            NormKind::WeightedEuclidean { weights } => {
                x.iter().zip(weights).map(|(z, w)| w * z.norm_sqr()).sum::<f64>().sqrt()
            }
            NormKind::Polyhedral { .. } => self.ball.as_ref().unwrap().norm(&real_part(x)),
        })
    }

    /// Dual norm `sup { |f(x)| : |x| <= 1 }`: the conjugate-exponent norm for
    /// `l_p`, inverted weights for weighted Euclidean, and the exact maximum
    /// of `|f(v)|` over ball vertices for polyhedral norms.
    pub fn dual_norm(&self, f: &Vector) -> Result<f64> {
        self.check_vector(f)?;
        Ok(match &self.kind {
            NormKind::Lp { p } => lp_norm(f, conjugate_exponent(*p)),
            NormKind::WeightedEuclidean { weights } => {
                f.iter().zip(weights).map(|(z, w)| z.norm_sqr() / w).sum::<f64>().sqrt()
            }
            NormKind::Polyhedral { .. } => self.ball.as_ref().unwrap().dual_norm(&real_part(f)),
        })
    }

    /// Extreme points of the norming face `{f : |f|* = 1, f(x) = |x|}`,
    /// truncated to `cap` entries. Faces are listed in descending
    /// lexicographic order of their coordinates, which fixes every downstream
    /// tie-break.
    pub fn norming_functionals(&self, x: &Vector, cap: usize) -> Result<NormingFace> {
        self.check_vector(x)?;
        let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::ZeroVector);
        }
        let value = self.norm(x)?;
        match &self.kind {
            NormKind::Lp { p } if *p == 1.0 => Ok(l1_face(x, value, self.field, cap)),
            NormKind::Lp { p } if p.is_infinite() => Ok(linf_face(x, scale, cap)),
            NormKind::Lp { p } => {
                // Smooth case: the unique norming functional.
                let f = Vector::from_fn(x.len(), |i, _| {
                    let z = x[i];
                    let m = z.norm();
                    if m == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        (z / m).conj() * (m / value).powf(*p - 1.0)
                    }
                });
                Ok(NormingFace { functionals: vec![f], truncated: false })
            }
            NormKind::WeightedEuclidean { weights } => {
                let f = Vector::from_fn(x.len(), |i, _| x[i].conj() * (weights[i] / value));
                Ok(NormingFace { functionals: vec![f], truncated: false })
            }
            NormKind::Polyhedral { .. } => {
                let face = self.ball.as_ref().unwrap().face_of(&real_part(x), 1e-9);
                let truncated = face.len() > cap;
                Ok(NormingFace {
                    functionals: face.into_iter().take(cap.max(1)).map(|g| promote(&g)).collect(),
                    truncated,
                })
            }
        }
    }

    /// Deterministic unit-sphere sample: isotropic coordinate directions
    /// normalized in this space's norm.
    pub fn sample_sphere(&self, count: usize, seed: u64) -> Vec<Vector> {
        let mut rng = rng::stream(seed, SALT_SPHERE, 0);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let g = rng::gaussian_vector(&mut rng, self.dim, self.field);
            let n = self.norm(&g).expect("dimension fixed by construction");
            if n > 1e-9 {
                out.push(g / Complex64::new(n, 0.0));
            }
        }
        out
    }

    /// State pair at `x`: `x` normalized, paired with the first norming
    /// functional in the deterministic face order.
    pub fn state_pair_at(&self, x: &Vector) -> Result<StatePair> {
        self.check_vector(x)?;
        let n = self.norm(x)?;
        if n <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let y = x / Complex64::new(n, 0.0);
        let face = self.norming_functionals(&y, DEFAULT_FACE_CAP)?;
        StatePair::new(self, y, face.functionals[0].clone())
    }
}

/// Bilinear pairing `f(x) = sum_i f_i x_i` (no conjugation).
pub fn pairing(f: &Vector, x: &Vector) -> Complex64 {
    f.dot(x)
}

/// Real vector helper.
pub fn rvec(vals: &[f64]) -> Vector {
    Vector::from_iterator(vals.len(), vals.iter().map(|&v| Complex64::new(v, 0.0)))
}

/// Complex vector helper from `(re, im)` pairs.
pub fn cvec(vals: &[(f64, f64)]) -> Vector {
    Vector::from_iterator(vals.len(), vals.iter().map(|&(re, im)| Complex64::new(re, im)))
}

/// Real matrix helper, row-major rows.
pub fn rmat(rows: &[&[f64]]) -> Matrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    Matrix::from_fn(nrows, ncols, |i, j| Complex64::new(rows[i][j], 0.0))
}

pub(crate) fn real_part(x: &Vector) -> DVector<f64> {
    DVector::from_iterator(x.len(), x.iter().map(|z| z.re))
}

pub(crate) fn promote(x: &DVector<f64>) -> Vector {
    Vector::from_iterator(x.len(), x.iter().map(|&v| Complex64::new(v, 0.0)))
}

pub(crate) fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn lp_norm(x: &Vector, p: f64) -> f64 {
    if p.is_infinite() {
        return x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    if p == 1.0 {
        return x.iter().map(|z| z.norm()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|z| (z.norm() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

/// Descending lexicographic order on coordinates (real part, then imaginary).
pub(crate) fn lex_cmp_desc(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match y.re.partial_cmp(&x.re) {
            Some(std::cmp::Ordering::Equal) | None => {}
            Some(ord) => return ord,
        }
        match y.im.partial_cmp(&x.im) {
            Some(std::cmp::Ordering::Equal) | None => {}
            Some(ord) => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

fn phase_conj(z: Complex64) -> Complex64 {
    let m = z.norm();
    if m == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (z / m).conj()
    }
}

/// `l1` norming face: the sign pattern is forced on the support and free on
/// zero coordinates. Real spaces enumerate `{+1, -1}` per free slot in
/// counting order (plus first, earlier coordinates most significant), which
/// coincides with descending lexicographic order. Complex spaces list the
/// fourth roots of unity as representative phases and flag the truncation,
/// since the true face has a continuum of extreme points.
fn l1_face(x: &Vector, value: f64, field: ScalarField, cap: usize) -> NormingFace {
    let cap = cap.max(1);
    let zero_tol = 1e-12 * value;
    let support_sign: Vec<Option<Complex64>> =
        x.iter().map(|&z| if z.norm() > zero_tol { Some(phase_conj(z)) } else { None }).collect();
    let zeros: Vec<usize> =
        support_sign.iter().enumerate().filter_map(|(i, s)| s.is_none().then_some(i)).collect();
    let phases: &[Complex64] = match field {
        ScalarField::Real => &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        ScalarField::Complex => &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ],
    };
    let base = phases.len() as u128;
    let total: u128 = base.checked_pow(zeros.len() as u32).unwrap_or(u128::MAX);
    let listed = total.min(cap as u128) as usize;
    let mut functionals = Vec::with_capacity(listed);
    for k in 0..listed {
        let mut f = Vector::from_fn(x.len(), |i, _| support_sign[i].unwrap_or(Complex64::new(0.0, 0.0)));
        let mut rem = k;
        for &zi in zeros.iter().rev() {
            f[zi] = phases[rem % phases.len()];
            rem /= phases.len();
        }
        functionals.push(f);
    }
    let truncated =
        total > cap as u128 || (field == ScalarField::Complex && !zeros.is_empty());
    NormingFace { functionals, truncated }
}

/// Sup-norm face: one extreme functional per coordinate attaining the
/// maximum modulus, supported on that coordinate with the conjugate phase.
fn linf_face(x: &Vector, max_mod: f64, cap: usize) -> NormingFace {
    let cap = cap.max(1);
    let mut functionals = Vec::new();
    for (i, &z) in x.iter().enumerate() {
        if z.norm() >= max_mod * (1.0 - 1e-9) {
            let mut f = Vector::from_element(x.len(), Complex64::new(0.0, 0.0));
            f[i] = phase_conj(z);
            functionals.push(f);
        }
    }
    functionals.sort_by(lex_cmp_desc);
    let truncated = functionals.len() > cap;
    functionals.truncate(cap);
    NormingFace { functionals, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1(dim: usize) -> NormedSpace {
        NormedSpace::lp(ScalarField::Real, dim, 1.0).unwrap()
    }
    fn l2(dim: usize) -> NormedSpace {
        NormedSpace::lp(ScalarField::Real, dim, 2.0).unwrap()
    }
    fn linf(dim: usize) -> NormedSpace {
        NormedSpace::lp(ScalarField::Real, dim, f64::INFINITY).unwrap()
    }

    #[test]
    fn norm_closed_forms() {
        assert_eq!(l2(2).norm(&rvec(&[3.0, 4.0])).unwrap(), 5.0);
        assert_eq!(l1(2).norm(&rvec(&[1.0, -2.0])).unwrap(), 3.0);
        let cross = NormedSpace::cross_polytope(2).unwrap();
        assert!((cross.norm(&rvec(&[0.5, 0.5])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauge_of_cross_polytope_matches_l1() {
        let cross = NormedSpace::cross_polytope(2).unwrap();
        let space_l1 = l1(2);
        for x in space_l1.sample_sphere(1000, 11) {
            let x = x * Complex64::new(1.7, 0.0);
            assert!((cross.norm(&x).unwrap() - space_l1.norm(&x).unwrap()).abs() < 1e-9);
            assert!((cross.dual_norm(&x).unwrap() - space_l1.dual_norm(&x).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn hypercube_matches_linf() {
        let cube = NormedSpace::hypercube(3).unwrap();
        let space = linf(3);
        for x in space.sample_sphere(1000, 12) {
            assert!((cube.norm(&x).unwrap() - space.norm(&x).unwrap()).abs() < 1e-9);
            assert!((cube.dual_norm(&x).unwrap() - space.dual_norm(&x).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn dual_norm_closed_forms() {
        assert_eq!(l1(2).dual_norm(&rvec(&[2.0, -3.0])).unwrap(), 3.0);
        assert_eq!(l2(2).dual_norm(&rvec(&[3.0, 4.0])).unwrap(), 5.0);
        let cross = NormedSpace::cross_polytope(2).unwrap();
        assert!((cross.dual_norm(&rvec(&[2.0, -3.0])).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn norming_face_l1_basis_vector() {
        let face = l1(2).norming_functionals(&rvec(&[1.0, 0.0]), 64).unwrap();
        assert_eq!(face.functionals.len(), 2);
        assert!(!face.truncated);
        assert_eq!(face.functionals[0], rvec(&[1.0, 1.0]));
        assert_eq!(face.functionals[1], rvec(&[1.0, -1.0]));
        for f in &face.functionals {
            assert!((pairing(f, &rvec(&[1.0, 0.0])).re - 1.0).abs() < 1e-12);
            assert!((l1(2).dual_norm(f).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn norming_face_hilbert_is_the_point_itself() {
        let face = l2(2).norming_functionals(&rvec(&[0.6, 0.8]), 64).unwrap();
        assert_eq!(face.functionals.len(), 1);
        assert!((face.functionals[0].clone() - rvec(&[0.6, 0.8])).map(|z| z.norm()).max() < 1e-12);
    }

    #[test]
    fn norming_face_l1_full_support_is_unique() {
        let face = l1(2).norming_functionals(&rvec(&[0.5, -0.5]), 64).unwrap();
        assert_eq!(face.functionals.len(), 1);
        assert_eq!(face.functionals[0], rvec(&[1.0, -1.0]));
        let sp = l1(2).state_pair_at(&rvec(&[0.5, -0.5])).unwrap();
        assert!(sp.is_exact(&Tolerances::default()));
    }

    #[test]
    fn face_cap_truncates_sparse_l1() {
        let space = NormedSpace::lp(ScalarField::Real, 8, 1.0).unwrap();
        let mut x = rvec(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let face = space.norming_functionals(&x, 16).unwrap();
        assert_eq!(face.functionals.len(), 16);
        assert!(face.truncated); // 2^7 = 128 > 16
        x[0] = Complex64::new(2.0, 0.0);
        let full = space.norming_functionals(&x, 128).unwrap();
        assert_eq!(full.functionals.len(), 128);
        assert!(!full.truncated);
    }

    #[test]
    fn sample_sphere_unit_and_deterministic() {
        let space = linf(3);
        let a = space.sample_sphere(1000, 7);
        let b = space.sample_sphere(1000, 7);
        assert_eq!(a.len(), 1000);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
            assert!((space.norm(x).unwrap() - 1.0).abs() <= 1e-12);
        }
        let c = space.sample_sphere(5, 8);
        assert_ne!(a[0], c[0]);
    }

    #[test]
    fn state_pairs_match_tie_breaks() {
        let sp = l2(2).state_pair_at(&rvec(&[2.0, 0.0])).unwrap();
        assert_eq!(sp.x, rvec(&[1.0, 0.0]));
        assert_eq!(sp.f, rvec(&[1.0, 0.0]));
        assert_eq!(sp.defect, 0.0);

        let sp = l1(2).state_pair_at(&rvec(&[1.0, 0.0])).unwrap();
        assert_eq!(sp.f, rvec(&[1.0, 1.0]));
        assert!(sp.is_exact(&Tolerances::default()));

        let sp = linf(2).state_pair_at(&rvec(&[1.0, 1.0])).unwrap();
        assert_eq!(sp.f, rvec(&[1.0, 0.0]));
        assert!((pairing(&sp.f, &sp.x).re - 1.0).abs() < 1e-12);
        assert!((linf(2).dual_norm(&sp.f).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn face_members_norm_and_attain() {
        let spaces = vec![
            l1(3),
            l2(3),
            linf(3),
            NormedSpace::lp(ScalarField::Real, 3, 3.5).unwrap(),
            NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 2.0, 0.5]).unwrap(),
            NormedSpace::cross_polytope(3).unwrap(),
            NormedSpace::lp(ScalarField::Complex, 3, 2.0).unwrap(),
            NormedSpace::lp(ScalarField::Complex, 3, 1.0).unwrap(),
        ];
        for space in &spaces {
            for x in space.sample_sphere(50, 21) {
                let value = space.norm(&x).unwrap();
                let face = space.norming_functionals(&x, 64).unwrap();
                assert!(!face.functionals.is_empty());
                for f in &face.functionals {
                    assert!(
                        (space.dual_norm(f).unwrap() - 1.0).abs() <= 1e-9,
                        "{}: |f|* != 1",
                        space.label()
                    );
                    let val = pairing(f, &x);
                    assert!((val.re - value).abs() <= 1e-9, "{}: f(x) != |x|", space.label());
                    assert!(val.im.abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn holder_inequality_sampled() {
        for p in [1.0, 1.7, 2.0, 3.0, f64::INFINITY] {
            let space = NormedSpace::lp(ScalarField::Real, 3, p).unwrap();
            let xs = space.sample_sphere(100, 5);
            let fs = space.sample_sphere(100, 6);
            for x in &xs {
                for f in &fs {
                    let lhs = pairing(f, x).norm();
                    let rhs = space.dual_norm(f).unwrap() * space.norm(x).unwrap();
                    assert!(lhs <= rhs + 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(NormedSpace::lp(ScalarField::Real, 2, 0.5).is_err());
        assert!(l2(2).norm(&rvec(&[1.0])).is_err());
        assert!(l2(2).norming_functionals(&rvec(&[0.0, 0.0]), 4).is_err());
        assert!(l2(2).norm(&cvec(&[(1.0, 1.0), (0.0, 0.0)])).is_err());
        assert!(NormedSpace::polyhedral(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
        assert!(NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn near_one_p_uses_smooth_formula() {
        let space = NormedSpace::lp(ScalarField::Real, 2, 1.0 + 1e-12).unwrap();
        let face = space.norming_functionals(&rvec(&[0.5, -0.5]), 8).unwrap();
        assert_eq!(face.functionals.len(), 1);
        assert!((face.functionals[0][0].re - 1.0).abs() < 1e-9);
        assert!((face.functionals[0][1].re + 1.0).abs() < 1e-9);
    }

    #[test]
    fn dual_space_round_trips() {
        let spaces = vec![l1(3), l2(2), linf(2), NormedSpace::cross_polytope(2).unwrap()];
        for s in spaces {
            let d = s.dual_space();
            for x in s.sample_sphere(64, 3) {
                assert!((s.dual_norm(&x).unwrap() - d.norm(&x).unwrap()).abs() < 1e-12);
                assert!((s.norm(&x).unwrap() - d.dual_norm(&x).unwrap()).abs() < 1e-12);
            }
        }
    }
}
