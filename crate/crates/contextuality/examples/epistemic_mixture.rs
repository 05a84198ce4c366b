//! Constraint-specified systems, their deterministic realizations, and
//! epistemic mixtures with custom priors.
//!
//! Run with: cargo run --example epistemic_mixture

use std::collections::BTreeSet;

use contextuality::bayes::{
    enumerate_realizations, epistemic_mixture, ContextConstraint, RealizationConstraints,
};
use contextuality::lp::generalized_fraction;
use contextuality::ratio::{format_rational, Rational};
use contextuality::system::{outcome_string, parse_outcomes, Sign};

fn allowed(outcomes: &[&str]) -> BTreeSet<Vec<Sign>> {
    outcomes
        .iter()
        .map(|o| parse_outcomes(o).unwrap())
        .collect()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn main() -> contextuality::Result<()> {
    // Two statements, measured alone and together. Jointly they must
    // disagree; alone they are unconstrained.
    let constraints = RealizationConstraints::new(
        vec!["q1".into(), "q2".into()],
        vec![
            ContextConstraint {
                context: "both".into(),
                contents: vec!["q1".into(), "q2".into()],
                allowed: allowed(&["+-", "-+"]),
            },
            ContextConstraint {
                context: "first".into(),
                contents: vec!["q1".into()],
                allowed: allowed(&["+", "-"]),
            },
            ContextConstraint {
                context: "second".into(),
                contents: vec!["q2".into()],
                allowed: allowed(&["+", "-"]),
            },
        ],
    )?;
    println!(
        "constraint system with {} realizations",
        constraints.realization_count()
    );

    let uniform = enumerate_realizations(&constraints)?;
    for (i, realization) in uniform.realizations().iter().enumerate() {
        let cells: Vec<String> = realization
            .bunches()
            .iter()
            .map(|b| {
                format!(
                    "{}={}",
                    b.context(),
                    outcome_string(b.pmf().keys().next().unwrap())
                )
            })
            .collect();
        println!("  realization {i}: {}", cells.join("  "));
    }

    let mixture = epistemic_mixture(&uniform)?;
    println!("uniform mixture:");
    for bunch in mixture.bunches() {
        let atoms: Vec<String> = bunch
            .pmf()
            .iter()
            .map(|(t, p)| format!("{}:{}", outcome_string(t), format_rational(p)))
            .collect();
        println!("  {}  {{{}}}", bunch.context(), atoms.join(", "));
    }
    let result = generalized_fraction(&mixture)?;
    println!(
        "uniform mixture alpha_max = {} ({})",
        format_rational(&result.alpha_max),
        if result.noncontextual {
            "noncontextual"
        } else {
            "contextual"
        }
    );

    // A biased prior over the same realizations. Weights follow the
    // enumeration order printed above.
    let n = uniform.len();
    let mut weights = vec![rat(1, (2 * (n as i64 - 1)).max(1)); n];
    weights[0] = rat(1, 2);
    let biased = uniform.with_prior(weights)?;
    let mixture = epistemic_mixture(&biased)?;
    println!("biased mixture (first realization weighted 1/2):");
    for bunch in mixture.bunches() {
        let atoms: Vec<String> = bunch
            .pmf()
            .iter()
            .map(|(t, p)| format!("{}:{}", outcome_string(t), format_rational(p)))
            .collect();
        println!("  {}  {{{}}}", bunch.context(), atoms.join(", "));
    }
    let result = generalized_fraction(&mixture)?;
    println!(
        "biased mixture alpha_max = {}",
        format_rational(&result.alpha_max)
    );
    Ok(())
}
