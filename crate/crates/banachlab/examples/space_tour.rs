//! Tour of the norm families: norms, dual norms, norming functionals and
//! state pairs on `l_p`, polyhedral and weighted-Euclidean spaces.
//!
//! ```bash
//! cargo run --example space_tour
//! ```

use banachlab::{pairing, rvec, NormedSpace, ScalarField};

fn main() -> banachlab::Result<()> {
    let l1 = NormedSpace::lp(ScalarField::Real, 2, 1.0)?;
    let l2 = NormedSpace::lp(ScalarField::Real, 2, 2.0)?;
    let linf = NormedSpace::lp(ScalarField::Real, 2, f64::INFINITY)?;
    let cross = NormedSpace::cross_polytope(2)?;
    let weighted = NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 4.0])?;

    let x = rvec(&[3.0, -4.0]);
    println!("norms of x = (3, -4):");
    for space in [&l1, &l2, &linf, &cross, &weighted] {
        println!("  {:<14} |x| = {:<6} |x|* = {}", space.label(), space.norm(&x)?, space.dual_norm(&x)?);
    }

    // The cross-polytope ball is the l1 ball: the two spaces agree everywhere.
    let y = rvec(&[0.5, 0.5]);
    println!("\ngauge of the cross-polytope at (0.5, 0.5): {}", cross.norm(&y)?);
    println!("l1 norm of the same point:                 {}", l1.norm(&y)?);

    // Norming faces: smooth spaces have one functional, corners have many.
    println!("\nnorming functionals:");
    for (space, point) in [(&l2, rvec(&[0.6, 0.8])), (&l1, rvec(&[1.0, 0.0])), (&linf, rvec(&[1.0, 1.0]))] {
        let face = space.norming_functionals(&point, 16)?;
        println!("  {} at {:?}:", space.label(), point.iter().map(|z| z.re).collect::<Vec<_>>());
        for f in &face.functionals {
            let fr: Vec<f64> = f.iter().map(|z| z.re).collect();
            println!("    f = {:?}  with f(x) = {}", fr, pairing(f, &point).re);
        }
    }

    // State pairs: unit vector + unit functional attaining the norm.
    let sp = l1.state_pair_at(&rvec(&[2.0, 0.0]))?;
    println!(
        "\nstate pair at (2, 0) in {}: defect {}, residuals ({}, {})",
        l1.label(),
        sp.defect,
        sp.primal_residual,
        sp.dual_residual
    );

    // Deterministic sphere sampling.
    let samples = linf.sample_sphere(3, 7);
    println!("\nthree seeded sup-norm sphere samples:");
    for s in &samples {
        let coords: Vec<f64> = s.iter().map(|z| z.re).collect();
        println!("  {:?} (norm {})", coords, linf.norm(s)?);
    }
    Ok(())
}
