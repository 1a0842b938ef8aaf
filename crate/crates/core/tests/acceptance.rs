//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lpa_core::explorer::{
    commutation_eligible, expected_seed_count, expected_variable_count, explore,
    factor_multiplicity_mismatches, label_by_sequences, mutations_commute, verify_counts,
    verify_identity_suite, verify_isomorphism, ExchangeGraph, Identity, DEFAULT_MAX_SEEDS,
};
use lpa_core::graph_lp::{
    closed_form_cluster_variable, initial_seed_binomial, initial_seed_linear, seed_from_sequence,
    ActivationSequence, ClosedForm, Digraph,
};
use lpa_core::lp::{compute_hat, seeds_equivalent};
use lpa_core::poly::{gcd, LaurentPolynomial, RationalFunction};
use proptest::test_runner::{Config, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Graphs {
    tau: Vec<ExchangeGraph>,
    t: Vec<ExchangeGraph>,
    tau_times: Vec<Duration>,
}

fn build_graphs() -> Graphs {
    let mut g = Graphs {
        tau: Vec::new(),
        t: Vec::new(),
        tau_times: Vec::new(),
    };
    for n in 1..=4 {
        let k = Digraph::complete(n);
        let start = Instant::now();
        g.tau.push(
            explore(&initial_seed_binomial(&k), DEFAULT_MAX_SEEDS).expect("explore binomial"),
        );
        g.tau_times.push(start.elapsed());
        g.t.push(explore(&initial_seed_linear(&k), DEFAULT_MAX_SEEDS).expect("explore linear"));
    }
    g
}

fn seed_counts(g: &Graphs) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let (graph, time) = (&g.tau[n - 1], g.tau_times[n - 1]);
        let expected = expected_seed_count(n);
        if graph.len() as u64 != expected || graph.truncated() {
            return Err(format!("n={n}: {} seeds, expected {expected}", graph.len()));
        }
        if time > Duration::from_secs(10) {
            return Err(format!("n={n}: took {time:?}"));
        }
        parts.push(format!(
            "n={n}: {} ({:.2}s)",
            graph.len(),
            time.as_secs_f64()
        ));
    }
    let start = Instant::now();
    let g5 = explore(
        &initial_seed_binomial(&Digraph::complete(5)),
        DEFAULT_MAX_SEEDS,
    )
    .map_err(|e| e.to_string())?;
    let time = start.elapsed();
    if g5.len() as u64 != expected_seed_count(5) || time > Duration::from_secs(300) {
        return Err(format!("n=5: {} seeds in {time:?}", g5.len()));
    }
    parts.push(format!("n=5: {} ({:.2}s)", g5.len(), time.as_secs_f64()));
    Ok(parts.join(", "))
}

fn variable_counts(g: &Graphs) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let r = verify_counts(&g.tau[n - 1], n).map_err(|e| e.to_string())?;
        if !r.passed() || r.variables != expected_variable_count(n) {
            return Err(format!("n={n}: {r}"));
        }
        parts.push(r.variables.to_string());
    }
    Ok(format!("variables {}", parts.join(", ")))
}

fn identity_over_ranks(id: Identity, ranks: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut total = 0;
    let mut cases = 0;
    for n in ranks {
        let r = verify_identity_suite(n, &[id]).map_err(|e| e.to_string())?;
        if let Some(bad) = r.results.iter().find(|c| !c.passed) {
            return Err(format!(
                "n={n}, s=({}): {}",
                bad.sequence,
                bad.detail.clone().unwrap_or_default()
            ));
        }
        total += r.results.len();
        cases += r.results.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(format!("{total} sequences, {cases} comparisons"))
}

fn cluster_variables() -> Outcome {
    let summary = identity_over_ranks(Identity::ClusterVariable, 1..=4)?;
    for n in 1..=4 {
        let mut by_set: BTreeMap<Vec<u32>, BTreeSet<String>> = BTreeMap::new();
        for s in ActivationSequence::all(n)
            .into_iter()
            .filter(|s| !s.is_empty())
        {
            let engine =
                seed_from_sequence(&s, &Digraph::complete(n)).map_err(|e| e.to_string())?;
            let y = engine.ambient(s.get(s.len()) as usize - 1).to_string();
            let closed = closed_form_cluster_variable(&s)
                .map_err(|e| e.to_string())?
                .to_string();
            if y != closed {
                return Err(format!("n={n}, s=({s}): engine and closed form differ"));
            }
            by_set.entry(s.underlying_set()).or_default().insert(y);
        }
        if by_set.values().any(|v| v.len() != 1) {
            return Err(format!("n={n}: value depends on order"));
        }
        let distinct: BTreeSet<&String> = by_set.values().flatten().collect();
        if distinct.len() != by_set.len() {
            return Err(format!("n={n}: distinct sets share a value"));
        }
    }
    Ok(format!("{summary}; order-invariant, injective on sets"))
}

fn factor_multiplicities() -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        for s in ActivationSequence::all(n)
            .into_iter()
            .filter(|s| (3..=4).contains(&s.len()))
        {
            let (c, bad) =
                factor_multiplicity_mismatches(&ClosedForm::new(&s)).map_err(|e| e.to_string())?;
            if let Some((i, j, m)) = bad.first() {
                return Err(format!("n={n}, s=({s}), i={i}, j={j}: {m}"));
            }
            cases += c;
        }
    }
    Ok(format!("{cases} (s, i, j) cases"))
}

fn labeling(g: &Graphs) -> Outcome {
    for n in 1..=4 {
        for (name, graph) in [("binomial", &g.tau[n - 1]), ("linear", &g.t[n - 1])] {
            label_by_sequences(graph).map_err(|e| format!("{name} n={n}: {e}"))?;
        }
    }
    Ok("binomial and linear, n=1..4, no conflicts".to_string())
}

fn isomorphism(g: &Graphs) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let (a, b) = (&g.tau[n - 1], &g.t[n - 1]);
        let la = label_by_sequences(a).map_err(|e| e.to_string())?;
        let lb = label_by_sequences(b).map_err(|e| e.to_string())?;
        let iso = verify_isomorphism(a, &la, b, &lb).map_err(|e| format!("n={n}: {e}"))?;
        parts.push(format!(
            "n={n}: {} vertices/{} edges",
            iso.map.len(),
            iso.edges_checked
        ));
    }
    for graph in [&g.tau[1], &g.t[1]] {
        let five_cycle = graph.len() == 5 && graph.edges().len() == 5 && graph.is_regular();
        if !five_cycle {
            return Err("n=2 graph is not a 5-cycle".to_string());
        }
    }
    Ok(parts.join(", "))
}

fn involution_and_laurent(g: &Graphs) -> Result<usize, String> {
    let mut edges = 0;
    for graph in g.tau.iter().chain(g.t.iter()) {
        let n = graph.rank();
        for v in graph.vertices() {
            for dir in 0..n {
                let once = v.seed.mutate(dir).map_err(|e| e.to_string())?;
                let twice = once.mutate(dir).map_err(|e| e.to_string())?;
                if !seeds_equivalent(&twice, &v.seed).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "involution fails at {} direction {}",
                        v.canonical,
                        dir + 1
                    ));
                }
                // exchange relation old * new = F^ in the initial variables, with
                // the hat monomial's negative powers cleared to the left side
                let hat = compute_hat(&v.seed, dir).map_err(|e| e.to_string())?;
                let rhs = v
                    .seed
                    .to_ambient(v.seed.exchange(dir))
                    .map_err(|e| e.to_string())?;
                let mut lhs = v.seed.ambient(dir) * once.ambient(dir);
                for (j, &a) in hat.exponents.iter().enumerate() {
                    lhs = &lhs * &v.seed.ambient(j).pow(a.unsigned_abs());
                }
                let laurent = |p: &LaurentPolynomial| {
                    p.variables()
                        .iter()
                        .all(|x| x.is_cluster() && x.index as usize <= n || x.is_constant())
                        && p.terms()
                            .all(|(m, _)| m.iter().all(|(x, e)| x.is_cluster() || e >= 0))
                };
                if lhs != rhs || !laurent(once.ambient(dir)) {
                    return Err(format!(
                        "exchange relation fails at {} direction {}",
                        v.canonical,
                        dir + 1
                    ));
                }
                edges += 1;
            }
        }
    }
    Ok(edges)
}

fn commutation(g: &Graphs) -> Result<usize, String> {
    let mut triples = Vec::new();
    for graph in &g.tau[1..] {
        for v in graph.vertices() {
            for i in 0..graph.rank() {
                for j in 0..graph.rank() {
                    if commutation_eligible(&v.seed, i, j) {
                        triples.push((&v.seed, i, j));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sample: Vec<_> = triples.choose_multiple(&mut rng, 100).collect();
    if sample.len() < 100 {
        return Err(format!("only {} eligible triples", sample.len()));
    }
    for (seed, i, j) in sample {
        if !mutations_commute(seed, *i, *j).map_err(|e| e.to_string())? {
            return Err(format!("mutations {} and {} do not commute", i + 1, j + 1));
        }
    }
    Ok(100)
}

fn ring_properties() -> Result<usize, String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strat = (common::laurent(), common::laurent(), common::laurent());
    runner
        .run(&strat, |(a, b, c)| {
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            proptest::prop_assert_eq!(&a + &b, &b + &a);
            if !b.is_zero() {
                proptest::prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
            }
            let x = lpa_core::poly::Var::cluster(2);
            proptest::prop_assert_eq!(
                a.substitute(x, &RationalFunction::from(x))
                    .unwrap()
                    .to_laurent(),
                Some(a)
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strat = (
        common::nonzero_poly(),
        common::nonzero_poly(),
        common::nonzero_poly(),
    );
    runner
        .run(&strat, |(a, b, c)| {
            let (ac, bc) = (&a * &c, &b * &c);
            let g = gcd(&ac, &bc);
            proptest::prop_assert!(ac.exact_div_poly(&g).is_ok() && bc.exact_div_poly(&g).is_ok());
            proptest::prop_assert!(g.exact_div_poly(&c).is_ok());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(2000)
}

fn properties(g: &Graphs) -> Outcome {
    let start = Instant::now();
    let edges = involution_and_laurent(g)?;
    let triples = commutation(g)?;
    let cases = ring_properties()?;
    Ok(format!(
        "{edges} directed edges involutive and Laurent, {triples} commuting triples, {cases} ring/gcd cases ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let graphs = build_graphs();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("seed counts", Box::new(|| seed_counts(&graphs))),
        (
            "cluster-variable counts",
            Box::new(|| variable_counts(&graphs)),
        ),
        (
            "exchange polynomials",
            Box::new(|| identity_over_ranks(Identity::ExchangePolynomials, 1..=4)),
        ),
        ("cluster-variable closed form", Box::new(cluster_variables)),
        (
            "hat ratios",
            Box::new(|| identity_over_ranks(Identity::HatRatio, 1..=4)),
        ),
        ("factor multiplicities", Box::new(factor_multiplicities)),
        (
            "prefix substitution identity",
            Box::new(|| identity_over_ranks(Identity::PrefixSubstitution, 1..=4)),
        ),
        ("sequence labeling", Box::new(|| labeling(&graphs))),
        (
            "exchange-graph isomorphism",
            Box::new(|| isomorphism(&graphs)),
        ),
        ("property suites", Box::new(|| properties(&graphs))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{secs:.2}s]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    let total = suite_start.elapsed();
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        total.as_secs_f64()
    );
    if failed == 0 && total < Duration::from_secs(120) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
