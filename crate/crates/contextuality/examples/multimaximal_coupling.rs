//! The unique multimaximal coupling of a connection.
//!
//! Run with: cargo run --example multimaximal_coupling

use contextuality::coupling::{
    coupling_report, max_chain_equality, multimaximal_coupling, oracle_unique_multimaximal,
    verify_multimaximal,
};
use contextuality::ratio::{format_rational, Rational};
use contextuality::system::{outcome_string, Connection};

fn main() -> contextuality::Result<()> {
    // One content measured in three contexts with marginals 3/4, 1/2, 1/4.
    let members = vec![
        ("c1".into(), Rational::new(3.into(), 4.into())),
        ("c2".into(), Rational::new(1.into(), 2.into())),
        ("c3".into(), Rational::new(1.into(), 4.into())),
    ];
    let connection = Connection::new("q".into(), members)?;

    // Quantile construction: one uniform threshold drives every coordinate.
    let coupling = multimaximal_coupling(&connection);
    println!("coupling atoms over ({}):", coupling.variables().join(", "));
    for (atom, mass) in coupling.pmf() {
        println!("  {}  {}", outcome_string(atom), format_rational(mass));
    }

    let report = coupling_report(&coupling);
    println!("pairwise equality probabilities (each equals 1 - |p_i - p_j|):");
    for ((i, j), p) in &report.pairwise_equalities {
        println!(
            "  Pr[{} = {}] = {}",
            coupling.variables()[*i],
            coupling.variables()[*j],
            format_rational(p)
        );
    }
    println!(
        "chain equality Pr[all equal] = {} (maximum possible: {})",
        format_rational(&report.chain_equality),
        format_rational(&max_chain_equality(&connection))
    );

    // The construction is validated two ways: the marginal/pairwise checks,
    // and an exact LP oracle that solves for all couplings attaining every
    // pairwise maximum and confirms there is exactly one.
    assert!(verify_multimaximal(&coupling, &connection)?);
    let solved = oracle_unique_multimaximal(&connection)?;
    assert_eq!(coupling, solved);
    println!("LP oracle confirms the coupling is the unique multimaximal one");
    Ok(())
}
