//! Seeded random streams.
//!
//! Every randomized search in the crate draws from a ChaCha stream derived
//! from `(seed, salt, index)`. Restarts of a multistart search get one stream
//! per restart index, so results are identical no matter how restarts are
//! scheduled across threads.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::space::ScalarField;

// Per-module salts keep streams from colliding across call sites.
pub(crate) const SALT_SPHERE: u64 = 0x01;
pub(crate) const SALT_OPNORM: u64 = 0x02;
pub(crate) const SALT_RADIUS: u64 = 0x03;
pub(crate) const SALT_INDEX: u64 = 0x04;
pub(crate) const SALT_GAP: u64 = 0x05;
pub(crate) const SALT_BPB: u64 = 0x06;
pub(crate) const SALT_LAB: u64 = 0x07;
pub(crate) const SALT_ORACLE: u64 = 0x08;
pub(crate) const SALT_DUAL: u64 = 0x09;
pub(crate) const SALT_DIST: u64 = 0x0a;

pub(crate) fn stream(seed: u64, salt: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(salt.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index));
    rng
}

/// Standard-normal coordinate vector over the requested scalar field.
/// Real spaces get exactly-zero imaginary parts.
pub(crate) fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize, field: ScalarField) -> DVector<Complex64> {
    DVector::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im = match field {
            ScalarField::Real => 0.0,
            ScalarField::Complex => StandardNormal.sample(rng),
        };
        Complex64::new(re, im)
    })
}

/// Uniform value in `[lo, hi)`.
pub(crate) fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}
