//! Operator norms and numerical radii with interval certificates.
//!
//! ```bash
//! cargo run --example operator_certificates
//! ```

use banachlab::{
    numerical_radius, numerical_range_samples, radius_dense_oracle, rmat, Domain, NormedSpace,
    OperatorRep, ScalarField, SearchBudget,
};

fn show(name: &str, cert: &banachlab::BoundsCertificate) {
    println!("  {name}: [{}, {}] via {}", cert.lower, cert.upper, cert.method.as_str());
}

fn main() -> banachlab::Result<()> {
    let budget = SearchBudget::default();
    let seed = 7;

    // Exact formulas: max column sum on l1, max row sum on the sup norm.
    let m = rmat(&[&[1.0, 2.0], &[0.0, 1.0]]);
    for p in [1.0, f64::INFINITY] {
        let domain = Domain::Space(NormedSpace::lp(ScalarField::Real, 2, p)?);
        let op = OperatorRep::new(domain, m.clone(), budget, seed)?;
        println!("|T| on l{p}:");
        show("norm", op.norm_bounds());
    }

    // Rotation on the real Euclidean plane: norm 1, numerical radius 0.
    let plane = Domain::Space(NormedSpace::lp(ScalarField::Real, 2, 2.0)?);
    let rot = OperatorRep::new(plane, rmat(&[&[0.0, -1.0], &[1.0, 0.0]]), budget, seed)?;
    println!("rotation on the real Euclidean plane:");
    show("norm", rot.norm_bounds());
    show("radius", &numerical_radius(&rot, budget, seed)?);

    // The shift on complex l2^2: norm 1, numerical radius exactly 1/2.
    let complex_plane = Domain::Space(NormedSpace::lp(ScalarField::Complex, 2, 2.0)?);
    let shift = OperatorRep::new(complex_plane, rmat(&[&[0.0, 0.0], &[1.0, 0.0]]), budget, seed)?;
    println!("shift on complex l2^2:");
    show("norm", shift.norm_bounds());
    show("radius (multistart)", &numerical_radius(&shift, budget, seed)?);
    show("radius (dense oracle)", &radius_dense_oracle(&shift, 200_000, seed)?);

    // Numerical range samples: f(Tx) over state pairs. On l1 the vertex
    // pairs are enumerated exactly, so the extreme values appear.
    let l1 = Domain::Space(NormedSpace::lp(ScalarField::Real, 2, 1.0)?);
    let swap = OperatorRep::new(l1, rmat(&[&[0.0, 1.0], &[1.0, 0.0]]), budget, seed)?;
    let values = numerical_range_samples(&swap, 5, seed)?;
    println!("numerical range samples of the swap on l1^2:");
    for v in values {
        println!("  {:+.6} {:+.6}i", v.re, v.im);
    }
    Ok(())
}
