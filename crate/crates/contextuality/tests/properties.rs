//! Generated-system invariants that cut across modules.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use contextuality::bayes::{enumerate_realizations, epistemic_mixture};
use contextuality::consistify::{check_consistified_properties, consistify};
use contextuality::lp::{build_incidence, generalized_fraction, noncontextual_fraction};

use common::*;

#[test]
fn strong_connectedness_implies_simple() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut strong_seen = 0;
    for i in 0..120 {
        let system = if i % 2 == 0 {
            random_global_pmf_system(&mut rng)
        } else {
            random_system(&mut rng)
        };
        let strong = system.strongly_consistently_connected();
        let simple = system.simply_consistently_connected();
        if strong.holds {
            strong_seen += 1;
            assert!(simple.holds, "strong must imply simple: {system:?}");
        }
        if i % 2 == 0 {
            assert!(strong.holds, "global-pmf marginals are strongly connected");
        }
    }
    assert!(strong_seen >= 60);
}

#[test]
fn connection_marginals_match_bunch_marginals_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let system = random_system(&mut rng);
        for q in system.contents() {
            let connection = system.connection(q).unwrap();
            for (context, p) in connection.members() {
                let bunch = system.bunch(context).unwrap();
                let marginal = bunch.marginal(std::slice::from_ref(q)).unwrap();
                let plus = marginal
                    .get(&vec![contextuality::Sign::Plus])
                    .cloned()
                    .unwrap_or_else(|| rat(0, 1));
                assert_eq!(&plus, p);
            }
        }
    }
}

#[test]
fn consistified_outputs_always_pass_all_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..60 {
        let system = match i % 3 {
            0 => random_system(&mut rng),
            1 => random_deterministic_system(&mut rng),
            _ => random_global_pmf_system(&mut rng),
        };
        let cs = consistify(&system).unwrap();
        let report = check_consistified_properties(&cs).unwrap();
        assert_eq!(report.contents, system.relation_size());
        assert_eq!(
            report.contexts,
            system.contexts().len() + system.contents().len()
        );
        let simple = cs.base.simply_consistently_connected();
        let strong = cs.base.strongly_consistently_connected();
        assert!(simple.holds);
        assert_eq!(simple.holds, strong.holds);
        if system.is_deterministic() {
            assert!(cs.base.is_deterministic());
        }
    }
}

#[test]
fn reconsistifying_preserves_the_fraction() {
    // A consistified system is consistently connected, so consistifying it
    // again must leave the noncontextual fraction unchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut systems = vec![pr_box(), c22(), liar3_mixture()];
    for _ in 0..10 {
        systems.push(random_system(&mut rng));
    }
    for system in systems {
        let once = consistify(&system).unwrap();
        let fraction_once = noncontextual_fraction(&once.base).unwrap();
        let fraction_twice = generalized_fraction(&once.base).unwrap();
        assert_eq!(fraction_once.alpha_max, fraction_twice.alpha_max);
    }
}

#[test]
fn witnesses_are_feasible_and_attain_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let system = random_system(&mut rng);
        let cs = consistify(&system).unwrap();
        let result = noncontextual_fraction(&cs.base).unwrap();
        assert!(rat(0, 1) <= result.alpha_max && result.alpha_max <= rat(1, 1));
        let incidence = build_incidence(&cs.base).unwrap();
        assert!(result.witness.satisfies(&incidence));
        assert_eq!(result.witness.total_mass(), result.alpha_max);
        assert_eq!(
            result.alpha_max.clone() + result.contextual_fraction.clone(),
            rat(1, 1)
        );
    }
}

#[test]
fn uniform_mixtures_are_uniform_over_allowed_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..40 {
        let constraints = random_constraints(&mut rng);
        let family = enumerate_realizations(&constraints).unwrap();
        assert_eq!(family.len() as u128, constraints.realization_count());
        let mixture = epistemic_mixture(&family).unwrap();
        for constraint in constraints.constraints() {
            let bunch = mixture.bunch(&constraint.context).unwrap();
            assert_eq!(bunch.pmf().len(), constraint.allowed.len());
            let weight = rat(1, constraint.allowed.len() as i64);
            for tuple in &constraint.allowed {
                assert_eq!(bunch.probability(tuple), weight);
            }
        }
    }
}
