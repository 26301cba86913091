//! Symmetric polytope unit balls kept in both V-representations.
//!
//! A polyhedral norm is determined by the extreme points of its unit ball;
//! the dual norm by the extreme points of the polar. Holding both lists makes
//! every evaluation an exact finite maximum:
//!
//! - `norm(x)   = max |<x, g>|` over dual vertices `g`,
//! - `dual_norm(f) = max |<f, v>|` over primal vertices `v`,
//! - the norming face of `x` is spanned by the dual vertices attaining `norm(x)`.
//!
//! Either list is recovered from the other by enumerating the vertices of the
//! polar polytope (all nonsingular active sets of the defining inequalities),
//! which is affordable at the dimensions this crate targets.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const DEDUP_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-9;
const MAX_CONSTRAINTS: usize = 160;
const MAX_ENUM_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PolytopeBall {
    pub dim: usize,
    /// Extreme points of the unit ball, closed under negation.
    pub primal: Vec<DVector<f64>>,
    /// Extreme points of the dual unit ball, closed under negation.
    pub dual: Vec<DVector<f64>>,
}

impl PolytopeBall {
    /// Ball given by its own vertex list (symmetric hull); the dual list is
    /// enumerated from the polar.
    pub fn from_primal(verts: Vec<DVector<f64>>) -> Result<Self> {
        let dim = check_spanning(&verts)?;
        let primal = symmetrize(verts);
        let dual = polar_vertices(&primal, dim)?;
        Ok(PolytopeBall { dim, primal, dual })
    }

    /// Ball whose norm is `max |<x, g>|` over the given dual points; primal
    /// vertices are enumerated from the polar of their hull.
    pub fn from_dual(duals: Vec<DVector<f64>>) -> Result<Self> {
        let dim = check_spanning(&duals)?;
        let dual = symmetrize(duals);
        let primal = polar_vertices(&dual, dim)?;
        Ok(PolytopeBall { dim, primal, dual })
    }

    pub fn swapped(&self) -> Self {
        PolytopeBall { dim: self.dim, primal: self.dual.clone(), dual: self.primal.clone() }
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.dual.iter().map(|g| g.dot(x).abs()).fold(0.0, f64::max)
    }

    pub fn dual_norm(&self, f: &DVector<f64>) -> f64 {
        self.primal.iter().map(|v| v.dot(f).abs()).fold(0.0, f64::max)
    }

    /// Dual vertices attaining `norm(x)`, oriented so that `<g, x> = +norm(x)`,
    /// deduplicated and sorted lexicographically descending.
    pub fn face_of(&self, x: &DVector<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
        let value = self.norm(x);
        if value == 0.0 {
            return Vec::new();
        }
        let mut face: Vec<DVector<f64>> = Vec::new();
        for g in &self.dual {
            let s = g.dot(x);
            if s.abs() >= value * (1.0 - rel_tol) {
                let oriented = if s >= 0.0 { g.clone() } else { -g };
                if !face.iter().any(|h| close(h, &oriented)) {
                    face.push(oriented);
                }
            }
        }
        face.sort_by(|a, b| lex_cmp(b, a));
        face
    }
}

fn close(a: &DVector<f64>, b: &DVector<f64>) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= DEDUP_TOL * x.abs().max(y.abs()).max(1.0))
}

pub(crate) fn lex_cmp(a: &DVector<f64>, b: &DVector<f64>) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(ord) => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

fn check_spanning(points: &[DVector<f64>]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("polytope needs at least one vertex".into()));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: points.iter().map(|p| p.len()).find(|&l| l != dim).unwrap() });
    }
    let mat = DMatrix::from_columns(points);
    if mat.rank(1e-10) < dim {
        return Err(Error::InvalidParameter("polytope vertices do not span the space".into()));
    }
    Ok(dim)
}

fn symmetrize(points: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(points.len() * 2);
    for p in points.into_iter().flat_map(|p| [p.clone(), -p]) {
        if !out.iter().any(|q| close(q, &p)) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| lex_cmp(b, a));
    out
}

/// Vertices of `{f : <f, p> <= 1 for all p}` for a symmetric spanning point
/// set: every nonsingular choice of `dim` active constraints is solved and
/// kept when feasible.
fn polar_vertices(points: &[DVector<f64>], dim: usize) -> Result<Vec<DVector<f64>>> {
    if dim > MAX_ENUM_DIM {
        return Err(Error::InvalidParameter(format!(
            "polytope vertex enumeration supports dimension <= {MAX_ENUM_DIM}, got {dim}"
        )));
    }
    if points.len() > MAX_CONSTRAINTS {
        return Err(Error::InvalidParameter(format!(
            "polytope vertex enumeration supports <= {MAX_CONSTRAINTS} constraints, got {}",
            points.len()
        )));
    }
    let n = points.len();
    let mut found: Vec<DVector<f64>> = Vec::new();
    let combo = |idx: &[usize], found: &mut Vec<DVector<f64>>| {
        let rows: Vec<_> = idx.iter().map(|&i| points[i].transpose()).collect();
        let m = DMatrix::from_rows(&rows);
        let rhs = DVector::from_element(dim, 1.0);
        if let Some(f) = m.lu().solve(&rhs) {
            if f.iter().all(|v| v.is_finite())
                && points.iter().all(|p| p.dot(&f) <= 1.0 + FEAS_TOL)
                && !found.iter().any(|g| close(g, &f))
            {
                found.push(f);
            }
        }
    };
    // Iterative k-combination enumeration over constraint indices.
    if dim <= n {
        let mut idx: Vec<usize> = (0..dim).collect();
        loop {
            combo(&idx, &mut found);
            let mut i = dim as isize - 1;
            while i >= 0 && idx[i as usize] == i as usize + n - dim {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            let i = i as usize;
            idx[i] += 1;
            for j in i + 1..dim {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if found.is_empty() {
        return Err(Error::InvalidParameter("polytope polar has no vertices (degenerate input)".into()));
    }
    found.sort_by(|a, b| lex_cmp(b, a));
    Ok(found)
}
