//! Deterministic systems are always noncontextual.
//!
//! A system whose variables all take fixed values has a single overall
//! coupling, so no contextuality can hide in it, whether or not it is
//! consistently connected. Inconsistent connectedness in deterministic
//! systems is direct influence, not contextuality.
//!
//! Run with: cargo run --example deterministic_systems

use contextuality::bayes::assert_deterministic_noncontextual;
use contextuality::lp::generalized_fraction;
use contextuality::ratio::format_rational;
use contextuality::System;

fn main() -> contextuality::Result<()> {
    // Consistently connected: both contexts pin (q1, q2) to (+1, -1).
    let aligned = System::builder()
        .contents(["q1", "q2"])
        .point_context("c1", ["q1", "q2"], "+-")
        .point_context("c2", ["q1", "q2"], "+-")
        .build()?;

    // Inconsistently connected: q2 flips between the contexts.
    let flipped = System::builder()
        .contents(["q1", "q2"])
        .point_context("c1", ["q1", "q2"], "+-")
        .point_context("c2", ["q1", "q2"], "++")
        .build()?;

    for (name, system) in [("aligned", &aligned), ("flipped", &flipped)] {
        let result = generalized_fraction(system)?;
        println!(
            "{name}: simply connected = {}, alpha_max = {}, noncontextual = {}",
            system.simply_consistently_connected().holds,
            format_rational(&result.alpha_max),
            result.noncontextual
        );
        // The theorem-level assertion returns the single overall coupling.
        let witness = assert_deterministic_noncontextual(system)?;
        println!(
            "  overall coupling concentrates on {} column(s) with total mass {}",
            witness.masses().len(),
            format_rational(&witness.total_mass())
        );
    }

    // A handful of larger deterministic layouts, all noncontextual.
    type Layout<'a> = (&'a str, &'a [&'a str], &'a [(&'a str, &'a [&'a str], &'a str)]);
    let layouts: &[Layout] = &[
        (
            "three contents in a cycle",
            &["q1", "q2", "q3"],
            &[
                ("c1", &["q1", "q2"], "+-"),
                ("c2", &["q2", "q3"], "-+"),
                ("c3", &["q3", "q1"], "--"),
            ],
        ),
        (
            "overlapping triples",
            &["q1", "q2", "q3", "q4"],
            &[
                ("c1", &["q1", "q2", "q3"], "++-"),
                ("c2", &["q2", "q3", "q4"], "-++"),
                ("c3", &["q1", "q4"], "-+"),
            ],
        ),
    ];
    for (name, contents, contexts) in layouts {
        let mut builder = System::builder().contents(contents.iter().copied());
        for (id, bunch_contents, outcome) in *contexts {
            builder = builder.point_context(*id, bunch_contents.iter().copied(), outcome);
        }
        let system = builder.build()?;
        let result = generalized_fraction(&system)?;
        println!(
            "{name}: alpha_max = {}, noncontextual = {}",
            format_rational(&result.alpha_max),
            result.noncontextual
        );
        assert!(result.noncontextual);
    }
    Ok(())
}
