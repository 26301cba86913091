//! Correcting near-state pairs to exact state pairs.
//!
//! A pair `(u, u*)` from the unit balls with defect `1 - Re u*(u) < eps^2/2`
//! is within `eps` of an exact state pair in both coordinates. The search
//! finds one constructively and reports both distances.
//!
//! ```bash
//! cargo run --example state_correction
//! ```

use banachlab::{bpb_correct, defect, rvec, NormedSpace, ScalarField};
use num_complex::Complex64;

fn main() -> banachlab::Result<()> {
    let l2 = NormedSpace::lp(ScalarField::Real, 2, 2.0)?;
    let l1 = NormedSpace::lp(ScalarField::Real, 2, 1.0)?;

    // Radial defect on the Euclidean plane: normalization is the optimal fix.
    let u = rvec(&[1.0, 0.0]) * Complex64::new(0.999, 0.0);
    let u_star = rvec(&[1.0, 0.0]);
    let delta = defect(&l2, &u, &u_star)?;
    let out = bpb_correct(&l2, &u, &u_star, 0.1)?;
    println!("euclidean radial case: defect {delta}");
    println!("  corrected distances: primal {}, dual {}", out.primal_distance, out.dual_distance);

    // A tilted functional on l1: the face of the corrected point absorbs it.
    let u = rvec(&[0.985, 0.0]);
    let u_star = rvec(&[1.0, 0.5]);
    let delta = defect(&l1, &u, &u_star)?;
    println!("\nl1 case: u = (0.985, 0), u* = (1, 0.5), defect {delta}");
    for eps in [0.5, 0.2] {
        let out = bpb_correct(&l1, &u, &u_star, eps)?;
        println!(
            "  eps = {eps}: primal {:.6}, dual {:.6}, status {:?}",
            out.primal_distance, out.dual_distance, out.search_status
        );
        let y: Vec<f64> = out.corrected.x.iter().map(|z| z.re).collect();
        let f: Vec<f64> = out.corrected.f.iter().map(|z| z.re).collect();
        println!("    corrected pair y = {y:?}, y* = {f:?}");
    }

    // Defects near the admissibility edge still correct, with larger moves.
    let sp = l1.state_pair_at(&rvec(&[1.0, 1.0]))?;
    let eps = 0.4;
    let shrink = 1.0 - 0.8 * eps * eps / 2.0;
    let u = &sp.x * Complex64::new(shrink, 0.0);
    let delta = defect(&l1, &u, &sp.f)?;
    let out = bpb_correct(&l1, &u, &sp.f, eps)?;
    println!(
        "\nnear the edge: defect {delta:.4} vs eps^2/2 = {:.4} -> primal {:.4}, dual {:.4}",
        eps * eps / 2.0,
        out.primal_distance,
        out.dual_distance
    );
    Ok(())
}
