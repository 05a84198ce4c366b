//! Computing the noncontextual fraction of small systems.
//!
//! Run with: cargo run --example contextual_fraction

use contextuality::lp::{generalized_fraction, noncontextual_fraction};
use contextuality::ratio::format_rational;
use contextuality::system::outcome_string;
use contextuality::{consistify, System};

fn main() -> contextuality::Result<()> {
    // Two contexts measure the same pair of contents with uniform
    // marginals but opposite correlations. No global assignment can
    // reproduce both bunches, not even partially: alpha_max = 0.
    let extremal = System::builder()
        .contents(["q1", "q2"])
        .context("c1", ["q1", "q2"], &[("++", "1/2"), ("--", "1/2")])
        .context("c2", ["q1", "q2"], &[("+-", "1/2"), ("-+", "1/2")])
        .build()?;

    let result = noncontextual_fraction(&extremal)?;
    println!("extremal rank-2 system:");
    println!("  alpha_max            = {}", format_rational(&result.alpha_max));
    println!(
        "  contextual fraction  = {}",
        format_rational(&result.contextual_fraction)
    );
    println!("  strongly contextual  = {}", result.strongly_contextual);

    // Softening the anticorrelated context moves the fraction strictly
    // between 0 and 1.
    let softened = System::builder()
        .contents(["q1", "q2"])
        .context("c1", ["q1", "q2"], &[("++", "1/2"), ("--", "1/2")])
        .context(
            "c2",
            ["q1", "q2"],
            &[("++", "1/8"), ("--", "1/8"), ("+-", "3/8"), ("-+", "3/8")],
        )
        .build()?;
    let result = noncontextual_fraction(&softened)?;
    println!("\nsoftened rank-2 system:");
    println!("  alpha_max            = {}", format_rational(&result.alpha_max));
    println!(
        "  contextual fraction  = {}",
        format_rational(&result.contextual_fraction)
    );

    // A system assembled from the marginals of one global pmf is
    // noncontextual, and the witness is a full global distribution.
    let global_sourced = System::builder()
        .contents(["q1", "q2", "q3"])
        .context(
            "c1",
            ["q1", "q2"],
            &[("++", "1/6"), ("+-", "1/3"), ("-+", "1/4"), ("--", "1/4")],
        )
        .context("c2", ["q2", "q3"], &[("++", "5/12"), ("--", "7/12")])
        .context(
            "c3",
            ["q1", "q3"],
            &[("++", "1/6"), ("+-", "1/3"), ("-+", "1/4"), ("--", "1/4")],
        )
        .build()?;
    let result = noncontextual_fraction(&global_sourced)?;
    println!("\nglobally sourced system:");
    println!("  alpha_max            = {}", format_rational(&result.alpha_max));
    println!("  witness (a full global pmf):");
    let contents = global_sourced.contents().len();
    for (&column, mass) in result.witness.masses() {
        println!(
            "    {}  {}",
            outcome_string(&contextuality::system::signs_of(column, contents)),
            format_rational(mass)
        );
    }

    // generalized_fraction consistifies first and therefore accepts any
    // system; on consistently connected inputs it returns the same value.
    let generalized = generalized_fraction(&extremal)?;
    let consistified = consistify(&extremal)?;
    println!(
        "\nconsistified extremal system ({} contents, {} contexts): alpha_max = {}",
        consistified.base.contents().len(),
        consistified.base.contexts().len(),
        format_rational(&generalized.alpha_max)
    );
    Ok(())
}
