//! The Liar antinomy as a quasi-probabilistic system.
//!
//! Three statements, each asserting something about the next: q1 = "q2 is
//! true", q2 = "q3 is true", q3 = "q1 is false". Within each context the
//! two statements involved must hold definite, compatible truth values, so
//! the system has 2^3 = 8 deterministic realizations and no way to pick
//! one. Averaging them with a uniform epistemic prior gives a
//! consistently connected system whose noncontextual fraction is exactly
//! zero: the antinomy is maximal contextuality, not inconsistency.
//!
//! Run with: cargo run --example liar_antinomy

use contextuality::bayes::{enumerate_realizations, epistemic_mixture, liar_system};
use contextuality::lp::generalized_fraction;
use contextuality::ratio::format_rational;
use contextuality::system::outcome_string;

fn main() -> contextuality::Result<()> {
    for n in [3usize, 4] {
        let constraints = liar_system(n)?;
        let family = enumerate_realizations(&constraints)?;
        println!("{n}-statement liar: {} deterministic realizations", family.len());

        let mixture = epistemic_mixture(&family)?;
        println!("  uniform mixture bunches:");
        for bunch in mixture.bunches() {
            let atoms: Vec<String> = bunch
                .pmf()
                .iter()
                .map(|(t, p)| format!("{}:{}", outcome_string(t), format_rational(p)))
                .collect();
            let correlation = bunch.expectation(bunch.contents())?;
            println!(
                "    {} over ({}, {})  {{{}}}  correlation {}",
                bunch.context(),
                bunch.contents()[0],
                bunch.contents()[1],
                atoms.join(", "),
                format_rational(&correlation)
            );
        }

        assert!(mixture.simply_consistently_connected().holds);
        let result = generalized_fraction(&mixture)?;
        println!(
            "  alpha_max = {}, contextual fraction = {}, strongly contextual: {}",
            format_rational(&result.alpha_max),
            format_rational(&result.contextual_fraction),
            result.strongly_contextual
        );
        println!();
    }
    Ok(())
}
