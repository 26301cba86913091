//! Gap openings between unit spheres and operator-opening upper bounds.
//!
//! For lines at angle `theta` in the Euclidean plane the gap is the chord
//! `2 sin(theta/2)`, and the direct rotation carrying one line onto the
//! other realizes the same value as `|C - I|`. Subspaces of different
//! dimensions get the convention value 1: no ambient invertible map can
//! carry one onto the other.
//!
//! ```bash
//! cargo run --example gap_and_opening
//! ```

use banachlab::{
    dist_to_sphere, gap_opening, operator_opening, rvec, InvertibleMap, NormedSpace, ScalarField,
    SearchBudget, Subspace,
};

fn main() -> banachlab::Result<()> {
    let budget = SearchBudget::default();
    let seed = 7;
    let plane = NormedSpace::lp(ScalarField::Real, 2, 2.0)?;
    let e1 = rvec(&[1.0, 0.0]);
    let y = Subspace::line(plane.clone(), &e1, "Y")?;

    println!("lines in the Euclidean plane:");
    for theta in [std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_2] {
        let dir = rvec(&[theta.cos(), theta.sin()]);
        let z = Subspace::line(plane.clone(), &dir, "Z")?;
        let q = gap_opening(&y, &z, budget, seed)?;
        let r = operator_opening(&y, &z, &[], budget, seed)?;
        let d = dist_to_sphere(&e1, &z, budget, seed)?;
        println!(
            "  theta = {theta:.4}: dist(e1, S_Z) = {:.10}, Q = [{:.10}, {:.10}], r upper = {:.10} (chord {:.10})",
            d.upper,
            q.lower,
            q.upper,
            r.cert.upper,
            2.0 * (theta / 2.0).sin()
        );
    }

    // Planes inside l2^3: largest principal angle pi/2 gives gap sqrt(2).
    let space3 = NormedSpace::lp(ScalarField::Real, 3, 2.0)?;
    let y12 = Subspace::coordinate_span(space3.clone(), &[0, 1], "span(e1,e2)")?;
    let y13 = Subspace::coordinate_span(space3.clone(), &[0, 2], "span(e1,e3)")?;
    let q = gap_opening(&y12, &y13, budget, seed)?;
    println!("\nplanes span(e1,e2), span(e1,e3) in l2^3: Q = [{:.6}, {:.6}] (sqrt 2 = {:.6})", q.lower, q.upper, 2f64.sqrt());

    // Dimension mismatch: the convention value 1, flagged.
    let line = Subspace::coordinate_span(space3.clone(), &[0], "span(e1)")?;
    let r = operator_opening(&line, &y12, &[], budget, seed)?;
    println!("line vs plane: r = {} (convention flag {})", r.cert.upper, r.convention);

    // A user-supplied candidate map: the identity certifies r(Y, Y) = 0.
    let id = InvertibleMap::identity(space3);
    let r = operator_opening(&y12, &y12.clone(), &[id], budget, seed)?;
    println!("r(Y, Y) with the identity candidate: upper {}", r.cert.upper);
    Ok(())
}
