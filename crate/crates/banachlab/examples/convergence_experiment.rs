//! The full convergence pipeline: perturb a subspace along a shrinking
//! family of near-identity maps, estimate the numerical index on each
//! induced norm, and check the estimates against the sandwich envelope
//! derived from the perturbation magnitude.
//!
//! The plane `span(e1, e2)` inside `l1^3` carries the induced `l1^2` norm
//! (index 1); inside `l2^3` it is Euclidean (index 0). Shearing `e1` toward
//! `e3` with magnitude `1/n` perturbs the plane without changing the limit.
//!
//! ```bash
//! cargo run --example convergence_experiment
//! ```

use banachlab::{
    condition_bound_check, run_convergence_experiment, sandwich_bounds, Interval, NormedSpace,
    PerturbationFamily, ScalarField, SearchBudget, Subspace,
};

fn main() -> banachlab::Result<()> {
    let budget = SearchBudget::new(16, 200);
    let seed = 7;
    let steps = [5u32, 10, 20, 40, 80];

    // The sandwich envelope at a few magnitudes, around a known index of 1.
    println!("sandwich envelopes around n(X) = 1:");
    for eta in [0.2, 0.02, 0.002] {
        let s = sandwich_bounds(eta, Interval::point(1.0))?;
        println!("  eta = {eta}: [{:.6}, {:.6}]", s.lower, s.upper);
    }

    for p in [1.0, 2.0] {
        let ambient = NormedSpace::lp(ScalarField::Real, 3, p)?;
        let sub = Subspace::coordinate_span(ambient.clone(), &[0, 1], "X")?;
        let family = PerturbationFamily::shear(0, 2);

        // Every family member satisfies the condition-number bound.
        let c5 = family.map_at(&ambient, 5, budget, seed)?;
        let report = condition_bound_check(&c5, 2.5 * c5.deviation().upper, budget, seed)?;
        println!(
            "\nl{p}^3 shear at n = 5: 1/(|C||C^-1|) = {:.6} >= {:.6}",
            report.reciprocal, report.bound
        );

        let report = run_convergence_experiment(&sub, &family, &steps, budget, seed)?;
        println!(
            "l{p}^3 family {} with base index [{:.9}, {:.9}]:",
            report.family_label, report.base_index.lower, report.base_index.upper
        );
        println!(
            "  {:>4} {:>10} {:>12} {:>12} {:>12} {:>12} {:>7} {:>10} {:>10}",
            "n", "eta", "idx_lower", "idx_upper", "sand_lower", "sand_upper", "inside", "gap_lo", "open_up"
        );
        for s in &report.steps {
            println!(
                "  {:>4} {:>10.6} {:>12.9} {:>12.9} {:>12.6} {:>12.6} {:>7} {:>10.6} {:>10.6}",
                s.n, s.eta, s.index.lower, s.index.upper, s.sandwich.lower, s.sandwich.upper,
                s.inside, s.gap_lower, s.opening_upper
            );
        }
        println!(
            "  max violation {}, deviation envelope nonincreasing: {}",
            report.max_violation, report.envelope_nonincreasing
        );
    }
    Ok(())
}
