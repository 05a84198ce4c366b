//! Shared fixtures and seeded generators for the integration suites.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use contextuality::ratio::Rational;
use contextuality::system::{signs_of, BunchDistribution, Connection, Sign, System};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Cyclic rank-2 system with uniform marginals and correlations +1 / -1;
/// the smallest strongly contextual instance.
pub fn pr_box() -> System {
    System::builder()
        .contents(["q1", "q2"])
        .context("c1", ["q1", "q2"], &[("++", "1/2"), ("--", "1/2")])
        .context("c2", ["q1", "q2"], &[("+-", "1/2"), ("-+", "1/2")])
        .build()
        .unwrap()
}

/// Deterministic, consistently connected.
pub fn c21() -> System {
    System::builder()
        .contents(["q1", "q2"])
        .point_context("c1", ["q1", "q2"], "+-")
        .point_context("c2", ["q1", "q2"], "+-")
        .build()
        .unwrap()
}

/// Deterministic, inconsistently connected at q2.
pub fn c22() -> System {
    System::builder()
        .contents(["q1", "q2"])
        .point_context("c1", ["q1", "q2"], "+-")
        .point_context("c2", ["q1", "q2"], "++")
        .build()
        .unwrap()
}

/// The uniform epistemic mixture of the three-statement Liar family.
pub fn liar3_mixture() -> System {
    let constraints = contextuality::bayes::liar_system(3).unwrap();
    let family = contextuality::bayes::enumerate_realizations(&constraints).unwrap();
    contextuality::bayes::epistemic_mixture(&family).unwrap()
}

pub fn rand_probability(rng: &mut ChaCha8Rng, max_denominator: i64) -> Rational {
    let d = rng.gen_range(1..=max_denominator);
    let n = rng.gen_range(0..=d);
    rat(n, d)
}

/// A random exact pmf over `{-1,+1}^k` from small integer weights.
pub fn rand_pmf(rng: &mut ChaCha8Rng, k: usize) -> BTreeMap<Vec<Sign>, Rational> {
    loop {
        let weights: Vec<u32> = (0..(1usize << k)).map(|_| rng.gen_range(0..=6)).collect();
        let total: u32 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        return weights
            .iter()
            .enumerate()
            .map(|(p, &w)| (signs_of(p as u64, k), rat(w as i64, total as i64)))
            .collect();
    }
}

/// Random deterministic system: up to 4 contents, up to 4 contexts, a
/// random covering relation, and a random ±1 point value per variable.
pub fn random_deterministic_system(rng: &mut ChaCha8Rng) -> System {
    let m = rng.gen_range(1..=4usize);
    let k = rng.gen_range(1..=4usize);
    let mut masks: Vec<u32> = (0..k).map(|_| rng.gen_range(1..(1u32 << m))).collect();
    for q in 0..m {
        if !masks.iter().any(|&mask| mask >> q & 1 == 1) {
            let c = rng.gen_range(0..k);
            masks[c] |= 1 << q;
        }
    }
    let mut builder = System::builder().contents((1..=m).map(|i| format!("q{i}")));
    for (c, &mask) in masks.iter().enumerate() {
        let contents: Vec<String> = (0..m)
            .filter(|q| mask >> q & 1 == 1)
            .map(|q| format!("q{}", q + 1))
            .collect();
        let outcome: String = contents
            .iter()
            .map(|_| if rng.gen::<bool>() { '+' } else { '-' })
            .collect();
        builder = builder.point_context(format!("c{}", c + 1), contents, &outcome);
    }
    builder.build().unwrap()
}

fn mixture_bunch(
    lambda: &Rational,
    global: &BTreeMap<Vec<Sign>, Rational>,
    extremal: &BTreeMap<Vec<Sign>, Rational>,
) -> BTreeMap<Vec<Sign>, Rational> {
    let complement = rat(1, 1) - lambda;
    (0..4u64)
        .map(|p| {
            let t = signs_of(p, 2);
            let g = global.get(&t).cloned().unwrap_or_else(|| rat(0, 1));
            let e = extremal.get(&t).cloned().unwrap_or_else(|| rat(0, 1));
            (t, lambda * g + &complement * e)
        })
        .collect()
}

/// A consistently connected two-context system built as the exact convex
/// mixture of a random global pmf's marginals with the two extremal
/// correlated bunches: `c1 = lambda g + (1-lambda) E+`,
/// `c2 = lambda g + (1-lambda) E-`. Its noncontextual fraction is at
/// least `lambda`.
pub fn random_theorem5_system(rng: &mut ChaCha8Rng) -> (System, Rational) {
    let global = rand_pmf(rng, 2);
    let lambda = rand_probability(rng, 8);
    use Sign::{Minus as M, Plus as P};
    let e_plus: BTreeMap<Vec<Sign>, Rational> =
        [(vec![P, P], rat(1, 2)), (vec![M, M], rat(1, 2))].into();
    let e_minus: BTreeMap<Vec<Sign>, Rational> =
        [(vec![P, M], rat(1, 2)), (vec![M, P], rat(1, 2))].into();

    let contents = vec!["q1".into(), "q2".into()];
    let bunches = vec![
        BunchDistribution::new(
            "c1".into(),
            contents.clone(),
            mixture_bunch(&lambda, &global, &e_plus),
        )
        .unwrap(),
        BunchDistribution::new(
            "c2".into(),
            contents.clone(),
            mixture_bunch(&lambda, &global, &e_minus),
        )
        .unwrap(),
    ];
    (System::new(contents, bunches).unwrap(), lambda)
}

fn pair_joint(p: &Rational, q: &Rational, t: &Rational) -> BTreeMap<Vec<Sign>, Rational> {
    use Sign::{Minus as M, Plus as P};
    [
        (vec![P, P], t.clone()),
        (vec![P, M], p - t),
        (vec![M, P], q - t),
        (vec![M, M], rat(1, 1) - p - q + t),
    ]
    .into()
}

/// A simply-but-not-strongly consistently connected system: two contexts
/// over the same pair with equal single marginals but different joints.
pub fn random_theorem1_system(rng: &mut ChaCha8Rng) -> System {
    let interior = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(2..=8i64);
        let n = rng.gen_range(1..d);
        rat(n, d)
    };
    let p = interior(rng);
    let q = interior(rng);
    let lo = std::cmp::max(rat(0, 1), &p + &q - rat(1, 1));
    let hi = std::cmp::min(p.clone(), q.clone());
    // Two distinct joints with the same marginals; hi > lo for interior p, q.
    let a = rng.gen_range(0..3i64);
    let b = rng.gen_range((a + 1)..=3i64);
    let width = &hi - &lo;
    let t1 = &lo + &width * rat(a, 3);
    let t2 = &lo + &width * rat(b, 3);
    assert!(t1 != t2);

    let contents: Vec<_> = vec!["q1".into(), "q2".into()];
    let bunches = vec![
        BunchDistribution::new("c1".into(), contents.clone(), pair_joint(&p, &q, &t1)).unwrap(),
        BunchDistribution::new("c2".into(), contents.clone(), pair_joint(&p, &q, &t2)).unwrap(),
    ];
    System::new(contents, bunches).unwrap()
}

/// An arbitrary random system: random covering relation, random exact
/// bunch pmfs; usually inconsistently connected.
pub fn random_system(rng: &mut ChaCha8Rng) -> System {
    let m = rng.gen_range(1..=3usize);
    let k = rng.gen_range(1..=3usize);
    let mut masks: Vec<u32> = (0..k).map(|_| rng.gen_range(1..(1u32 << m))).collect();
    for q in 0..m {
        if !masks.iter().any(|&mask| mask >> q & 1 == 1) {
            let c = rng.gen_range(0..k);
            masks[c] |= 1 << q;
        }
    }
    let contents: Vec<contextuality::system::ContentId> =
        (1..=m).map(|i| format!("q{i}").as_str().into()).collect();
    let bunches = masks
        .iter()
        .enumerate()
        .map(|(c, &mask)| {
            let bunch_contents: Vec<contextuality::system::ContentId> = (0..m)
                .filter(|q| mask >> q & 1 == 1)
                .map(|q| format!("q{}", q + 1).as_str().into())
                .collect();
            let pmf = rand_pmf(rng, bunch_contents.len());
            BunchDistribution::new(format!("c{}", c + 1).as_str().into(), bunch_contents, pmf)
                .unwrap()
        })
        .collect();
    System::new(contents, bunches).unwrap()
}

/// A random system whose bunches are all marginals of one global pmf;
/// strongly consistently connected and noncontextual by construction.
pub fn random_global_pmf_system(rng: &mut ChaCha8Rng) -> System {
    let m = rng.gen_range(1..=4usize);
    let k = rng.gen_range(1..=4usize);
    let global = BunchDistribution::new(
        "g".into(),
        (1..=m)
            .map(|i| format!("q{i}").as_str().into())
            .collect::<Vec<contextuality::system::ContentId>>(),
        rand_pmf(rng, m),
    )
    .unwrap();
    let mut masks: Vec<u32> = (0..k).map(|_| rng.gen_range(1..(1u32 << m))).collect();
    for q in 0..m {
        if !masks.iter().any(|&mask| mask >> q & 1 == 1) {
            let c = rng.gen_range(0..k);
            masks[c] |= 1 << q;
        }
    }
    let bunches = masks
        .iter()
        .enumerate()
        .map(|(c, &mask)| {
            let subset: Vec<contextuality::system::ContentId> = (0..m)
                .filter(|q| mask >> q & 1 == 1)
                .map(|q| format!("q{}", q + 1).as_str().into())
                .collect();
            let pmf = global.marginal(&subset).unwrap();
            BunchDistribution::new(format!("c{}", c + 1).as_str().into(), subset, pmf).unwrap()
        })
        .collect();
    System::new(global.contents().to_vec(), bunches).unwrap()
}

/// A random constraint family: random covering relation, each context
/// allowing a random nonempty subset of its outcome tuples.
pub fn random_constraints(rng: &mut ChaCha8Rng) -> contextuality::bayes::RealizationConstraints {
    use contextuality::bayes::{ContextConstraint, RealizationConstraints};
    let m = rng.gen_range(1..=3usize);
    let k = rng.gen_range(1..=3usize);
    let mut masks: Vec<u32> = (0..k).map(|_| rng.gen_range(1..(1u32 << m))).collect();
    for q in 0..m {
        if !masks.iter().any(|&mask| mask >> q & 1 == 1) {
            let c = rng.gen_range(0..k);
            masks[c] |= 1 << q;
        }
    }
    let contents: Vec<contextuality::system::ContentId> =
        (1..=m).map(|i| format!("q{i}").as_str().into()).collect();
    let constraints = masks
        .iter()
        .enumerate()
        .map(|(c, &mask)| {
            let bunch_contents: Vec<contextuality::system::ContentId> = (0..m)
                .filter(|q| mask >> q & 1 == 1)
                .map(|q| format!("q{}", q + 1).as_str().into())
                .collect();
            let arity = bunch_contents.len();
            let tuple_mask = rng.gen_range(1..(1u32 << (1 << arity)));
            let allowed = (0..(1u64 << arity))
                .filter(|&p| tuple_mask >> p & 1 == 1)
                .map(|p| signs_of(p, arity))
                .collect();
            ContextConstraint {
                context: format!("c{}", c + 1).as_str().into(),
                contents: bunch_contents,
                allowed,
            }
        })
        .collect();
    RealizationConstraints::new(contents, constraints).unwrap()
}

/// A random connection of up to 4 members with denominators up to 12.
pub fn random_connection(rng: &mut ChaCha8Rng) -> Connection {
    let n = rng.gen_range(1..=4usize);
    let members = (0..n)
        .map(|i| {
            (
                format!("c{}", i + 1).as_str().into(),
                rand_probability(rng, 12),
            )
        })
        .collect();
    Connection::new("q".into(), members).unwrap()
}
