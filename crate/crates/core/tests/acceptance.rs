//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use c3realize::decomposition::{
    decomposition_tree, enumerate_modules, is_module, is_prime, is_usual_module, strong_modules,
    HyperLabel, Limits,
};
use c3realize::oracle::{
    all_tournaments, brute_force_realizations, check_covering_axioms, check_partitive,
    random_hypergraph, random_tournament, FamilyKind,
};
use c3realize::realization::{extend_realization, realize_prime, Extension};
use c3realize::{
    count_realizations, enumerate_realizations, realize, CriticalKind, Hypergraph, Outcome,
    Tournament, VertexSet,
};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2026;

/// Random samples per order for the sampled round trip.
const SAMPLED_PER_ORDER: usize = 200;
const AXIOM_HYPERGRAPHS: usize = 200;
const AXIOM_SAMPLES: usize = 500;
const SHARING_CORPUS: usize = 100;
const EXTENSION_CORPUS: usize = 50;

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn realized(h: &Hypergraph) -> Result<Tournament, String> {
    match realize(h).map_err(|e| e.to_string())? {
        Outcome::Realized(t) => Ok(t),
        Outcome::NotRealizable(w) => Err(format!("{h:?} rejected with witness {}", w.witness)),
    }
}

fn round_trip(t: &Tournament) -> Result<(), String> {
    let h = t.c3_structure();
    let found = realized(&h)?;
    ensure(found.c3_structure() == h, || format!("realization of {h:?} does not re-verify"))
}

fn oracle_count(h: &Hypergraph, memo: &mut HashMap<Vec<VertexSet>, usize>) -> usize {
    *memo
        .entry(h.edges().to_vec())
        .or_insert_with(|| brute_force_realizations(h).unwrap().len())
}

fn exhaustive_round_trip() -> Check {
    let mut n = 0;
    for t in all_tournaments(5).unwrap() {
        round_trip(&t)?;
        n += 1;
    }
    ensure(n == 1024, || format!("expected 1024 tournaments, saw {n}"))?;
    Ok(format!("{n} tournaments on 5 vertices"))
}

fn exact_counting() -> Check {
    let mut memo = HashMap::new();
    for t in all_tournaments(5).unwrap() {
        let h = t.c3_structure();
        let formula = count_realizations(&h).map_err(|e| e.to_string())?;
        let oracle = oracle_count(&h, &mut memo);
        ensure(formula == BigUint::from(oracle), || {
            format!("{h:?}: formula {formula}, oracle {oracle}")
        })?;
    }
    Ok(format!("1024 tournaments, {} distinct hypergraphs", memo.len()))
}

fn sampled_orders() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut memo = HashMap::new();
    for n in [6, 7] {
        for _ in 0..SAMPLED_PER_ORDER {
            let t = random_tournament(&mut rng, n);
            round_trip(&t)?;
            if n == 6 {
                let h = t.c3_structure();
                let formula = count_realizations(&h).unwrap();
                let oracle = oracle_count(&h, &mut memo);
                ensure(formula == BigUint::from(oracle), || {
                    format!("{h:?}: formula {formula}, oracle {oracle}")
                })?;
            }
        }
    }
    Ok(format!("{SAMPLED_PER_ORDER} per order, seed {SEED:#x}"))
}

fn prime_duality() -> Check {
    for n in [5, 7] {
        for kind in CriticalKind::ALL {
            let g = Tournament::critical(kind, n).unwrap();
            let h = g.c3_structure();
            ensure(is_prime(&h), || format!("c3({kind}{n}) is not prime"))?;
            let all: Vec<Tournament> = enumerate_realizations(&h).unwrap().collect();
            ensure(all.len() == 2, || format!("{kind}{n}: {} realizations", all.len()))?;
            ensure(all[0].dual() == all[1], || format!("{kind}{n}: realizations not dual"))?;
            for t in &all {
                ensure(*t == g || *t == g.dual(), || {
                    format!("{kind}{n}: realization is neither the generator nor its dual")
                })?;
            }
        }
    }
    Ok("T, U, W on 5 and 7 vertices".into())
}

fn non_realizable_rejection() -> Check {
    for n in [4, 5] {
        let h = Hypergraph::complete_uniform(n, 3).unwrap();
        let w = match realize(&h).unwrap() {
            Outcome::NotRealizable(w) => w,
            Outcome::Realized(_) => return Err(format!("complete on {n} was realized")),
        };
        let sub = h.induced(w.witness).unwrap().structure;
        ensure(is_prime(&sub), || format!("witness {} is not prime", w.witness))?;
        ensure(brute_force_realizations(&h).unwrap().is_empty(), || {
            format!("oracle realizes complete on {n}")
        })?;
        ensure(count_realizations(&h).unwrap() == BigUint::ZERO, || "nonzero count".into())?;
    }
    Ok("complete 3-uniform on 4 and 5 vertices".into())
}

fn linear_order_count() -> Check {
    for n in 2..=6usize {
        let h = Hypergraph::empty(n);
        let factorial: usize = (1..=n).product();
        ensure(count_realizations(&h).unwrap() == BigUint::from(factorial), || {
            format!("count on {n} is not {factorial}")
        })?;
        let all: Vec<Tournament> = enumerate_realizations(&h).unwrap().collect();
        ensure(all.len() == factorial, || format!("{} enumerated on {n}", all.len()))?;
        ensure(all.iter().all(Tournament::is_linear_order), || {
            format!("non-linear realization on {n}")
        })?;
        let distinct: HashSet<&Tournament> = all.iter().collect();
        ensure(distinct.len() == factorial, || format!("duplicates on {n}"))?;
    }
    Ok("n = 2..6".into())
}

fn axiom_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut instances = 0;
    for i in 0..AXIOM_HYPERGRAPHS {
        let n = 3 + i % 5;
        let h = random_hypergraph(&mut rng, n, 2..=4, 1 + i % 6);
        let p = check_partitive(&h).unwrap();
        ensure(p.passed(), || format!("partitive failure on {h:?}: {:?}", p.violations))?;
        let c = check_covering_axioms(&h, AXIOM_SAMPLES, SEED + i as u64, FamilyKind::Partitive)
            .unwrap();
        ensure(c.passed(), || format!("covering failure on {h:?}: {:?}", c.violations))?;
        ensure(c.instances >= AXIOM_SAMPLES, || "too few samples".into())?;
        instances += c.instances;
    }
    Ok(format!("{AXIOM_HYPERGRAPHS} hypergraphs, {instances} sampled instances"))
}

fn tournament_strong_modules(t: &Tournament) -> Vec<VertexSet> {
    strong_modules(t, Limits::default()).unwrap()
}

fn sharing_corpus() -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    (0..SHARING_CORPUS)
        .map(|i| random_tournament(&mut rng, 3 + i % 4).c3_structure())
        .collect()
}

fn strong_module_sharing() -> Check {
    let mut pairs = 0;
    for h in sharing_corpus() {
        let strong_h = strong_modules(&h, Limits::default()).unwrap();
        let prime_h = is_prime(&h);
        for t in enumerate_realizations(&h).unwrap() {
            ensure(tournament_strong_modules(&t) == strong_h, || {
                format!("strong modules differ for {h:?} and {t:?}")
            })?;
            ensure(is_prime(&t) == prime_h, || format!("primality differs for {h:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{SHARING_CORPUS} hypergraphs, {pairs} realizations"))
}

fn module_equality_criterion() -> Check {
    let mut pairs = 0;
    let mut strict = 0;
    for h in sharing_corpus() {
        let tree = decomposition_tree(&h).unwrap();
        let all_binary = tree
            .internal_nodes()
            .filter(|&id| tree.label(id) == Some(HyperLabel::Empty))
            .all(|id| tree.children(id).len() == 2);
        let modules_h = enumerate_modules(&h, Limits::default()).unwrap();
        for t in enumerate_realizations(&h).unwrap() {
            let modules_t = enumerate_modules(&t, Limits::default()).unwrap();
            ensure(modules_t.iter().all(|&m| is_module(&h, m)), || {
                format!("a module of {t:?} is not a module of {h:?}")
            })?;
            ensure((modules_h == modules_t) == all_binary, || {
                format!("equality criterion fails for {h:?} and {t:?}")
            })?;
            for &m in modules_h.iter().filter(|m| !modules_t.contains(m)) {
                let node = tree.lowest_containing(m).unwrap();
                ensure(
                    tree.label(node) == Some(HyperLabel::Empty) && tree.children(node).len() >= 3,
                    || format!("module {m} of {h:?} sits under a node that is not a wide ◯"),
                )?;
                strict += 1;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} realizations, {strict} modules of H only"))
}

fn module_regression() -> Check {
    let h = Hypergraph::from_lists(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap();
    let m: VertexSet = [0, 1].iter().collect();
    ensure(!is_module(&h, m), || "{0,1} accepted as a module".into())?;
    ensure(is_usual_module(&h, m), || "{0,1} rejected as a usual module".into())?;
    Ok("edges {0,1,p}, p = 2..4".into())
}

fn extension_uniqueness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut found = 0;
    let mut flips = 0;
    let mut attempts = 0;
    while found < EXTENSION_CORPUS {
        attempts += 1;
        ensure(attempts < 100_000, || "could not build the corpus".into())?;
        let h = random_tournament(&mut rng, 5 + attempts % 2).c3_structure();
        if !is_prime(&h) {
            continue;
        }
        let Some(x) = (0..h.order()).find(|&x| is_prime(&h.delete_vertex(x).unwrap().structure))
        else {
            continue;
        };
        let minus_x = h.delete_vertex(x).unwrap().structure;
        let t_x = match realize_prime(&minus_x).unwrap() {
            Outcome::Realized(t) => t,
            Outcome::NotRealizable(_) => return Err(format!("H - {x} of {h:?} rejected")),
        };
        let t = match extend_realization(&h, x, &t_x).unwrap() {
            Extension::Realized { tournament, .. } => tournament,
            Extension::Failed(c) => return Err(format!("extension failed: {:?}", c.verdict)),
        };
        let others = h.vertices().without(x);
        for bits in 1u64..1 << others.len() {
            let flip: VertexSet = others
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, v)| v)
                .collect();
            ensure(t.flip_arcs_at(x, flip).c3_structure() != h, || {
                format!("flipping {flip} at {x} still realizes {h:?}")
            })?;
            flips += 1;
        }
        found += 1;
    }
    Ok(format!("{found} hypergraphs, {flips} flips"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "exhaustive round trip, n = 5", budget: secs(10), run: exhaustive_round_trip },
        Criterion { id: 2, name: "exact counting against the oracle, n = 5", budget: secs(60), run: exact_counting },
        Criterion { id: 3, name: "sampled round trip and counting, n = 6, 7", budget: secs(300), run: sampled_orders },
        Criterion { id: 4, name: "prime duality of the critical families", budget: secs(10), run: prime_duality },
        Criterion { id: 5, name: "non-realizable rejection", budget: secs(5), run: non_realizable_rejection },
        Criterion { id: 6, name: "linear-order count", budget: secs(5), run: linear_order_count },
        Criterion { id: 7, name: "partitive and covering axioms", budget: secs(120), run: axiom_suite },
        Criterion { id: 8, name: "strong-module sharing and primality", budget: secs(120), run: strong_module_sharing },
        Criterion { id: 9, name: "module-equality criterion", budget: secs(120), run: module_equality_criterion },
        Criterion { id: 10, name: "module versus usual module regression", budget: secs(1), run: module_regression },
        Criterion { id: 11, name: "extension uniqueness", budget: secs(120), run: extension_uniqueness },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {:>2}. {}: {detail} ({:.2?} of {:?})",
            c.id, c.name, elapsed, c.budget
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
