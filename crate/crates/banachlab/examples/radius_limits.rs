//! Limit behavior of the numerical radius: 1-Lipschitz continuity along
//! norm-convergent operator sequences, and ordinary limits of convergent
//! value sequences.
//!
//! ```bash
//! cargo run --example radius_limits
//! ```

use banachlab::{
    radius_lipschitz_check, radius_sequence_limit_check, rmat, sequence_ultralimit, Domain,
    Matrix, NormedSpace, OperatorRep, ScalarField, SearchBudget,
};
use num_complex::Complex64;

fn main() -> banachlab::Result<()> {
    let budget = SearchBudget::new(16, 250);
    let seed = 7;
    let domain = Domain::Space(NormedSpace::lp(ScalarField::Complex, 2, 2.0)?);

    // |v(S) - v(T)| <= |S - T| for a pair of operators.
    let s = OperatorRep::new(domain.clone(), rmat(&[&[0.0, 0.0], &[1.0, 0.0]]), budget, seed)?;
    let t = OperatorRep::new(domain.clone(), rmat(&[&[0.1, 0.0], &[0.9, 0.2]]), budget, seed)?;
    let lip = radius_lipschitz_check(&s, &t, budget, seed)?;
    println!(
        "lipschitz check: v(S) in [{:.6}, {:.6}], v(T) in [{:.6}, {:.6}], |S-T| <= {:.6}, pass: {}",
        lip.v_first.lower, lip.v_first.upper, lip.v_second.lower, lip.v_second.upper,
        lip.difference_norm.upper, lip.pass
    );

    // A sequence T_n = shift + E/n converging to the shift: the radius
    // deviations are bounded by the operator distances at every index.
    let shift = rmat(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let e = rmat(&[&[0.3, -0.2], &[0.1, 0.4]]);
    let seq: Vec<Matrix> =
        (1..=8).map(|n| &shift + &e * Complex64::new(1.0 / n as f64, 0.0)).collect();
    let report = radius_sequence_limit_check(&domain, &seq, &shift, budget, seed)?;
    println!("\nshift sequence (v(limit) in [{:.6}, {:.6}]):", report.v_limit.lower, report.v_limit.upper);
    println!("  {:>3} {:>12} {:>12} {:>12} {:>6}", "n", "|T_n - T|", "v(T_n) low", "deviation", "ok");
    for (n, row) in report.rows.iter().enumerate() {
        println!(
            "  {:>3} {:>12.6} {:>12.6} {:>12.6} {:>6}",
            n + 1,
            row.distance.upper,
            row.v.lower,
            row.deviation,
            row.bound_ok
        );
    }
    println!("  deviations end below where they start: {}", report.last_below_first);

    // Ordinary limits of convergent value sequences.
    let values: Vec<f64> = (1..=100).map(|n| 1.0 + 1.0 / n as f64).collect();
    println!("\nlimit of (1 + 1/n): {}", sequence_ultralimit(&values, 0.05)?);
    let alternating: Vec<f64> = (0..40).map(|k| (k % 2) as f64).collect();
    match sequence_ultralimit(&alternating, 0.05) {
        Err(e) => println!("alternating 0,1,0,1 is rejected: {e}"),
        Ok(v) => println!("unexpected limit {v}"),
    }
    Ok(())
}
