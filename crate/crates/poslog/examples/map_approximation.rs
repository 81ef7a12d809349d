//! Approximating MAP entailment of a weighted clause theory with a learned
//! stratified theory: generate labeled defaults from the exact MAP oracle,
//! train on one split, evaluate on the other.
//!
//! Run with: cargo run --release --example map_approximation

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poslog::heuristic::{learn, LearnConfig};
use poslog::logic::{Clause, Literal, LiteralConjunction, Var, Vocabulary};
use poslog::map_infer::{generate_dataset, map_models, score, WeightedClauseTheory};
use poslog::theory::{Label, PossTheory};

fn main() {
    let mut vocab = Vocabulary::new();
    let vars: Vec<Var> = (0..8).map(|i| vocab.intern(&format!("a{i}")).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let items: Vec<(Clause, f64)> = (0..12)
        .map(|_| {
            let len = rng.gen_range(1..=3usize);
            let idx = rand::seq::index::sample(&mut rng, vars.len(), len);
            let clause = Clause::new(idx.iter().map(|i| Literal::new(vars[i], rng.gen_bool(0.5))));
            (clause, rng.gen_range(-2.0..2.0))
        })
        .collect();
    let weighted = WeightedClauseTheory::new(items, vars.len()).unwrap();
    println!("weighted theory:\n{}", weighted.render(&vocab));

    let maps = map_models(&weighted, &LiteralConjunction::top()).unwrap();
    println!(
        "{} unconditioned MAP model(s), score {:.3}",
        maps.len(),
        score(&weighted, &maps[0])
    );

    let mut gen_rng = ChaCha8Rng::seed_from_u64(7);
    let train = generate_dataset(&weighted, 4, 300, &mut gen_rng).unwrap();
    let test = generate_dataset(&weighted, 4, 150, &mut gen_rng).unwrap();
    let positives = train.iter().filter(|e| e.label == Label::Pos).count();
    println!("\ngenerated {} training defaults ({} MAP-entailed)", train.len(), positives);

    let cfg = LearnConfig {
        iterations: 6,
        sample_size: 8,
        rng_seed: 1,
        ..Default::default()
    };
    let outcome = learn(&train, &cfg).unwrap();
    println!("\nlearned stratification:\n{}", outcome.theory.render(&vocab));

    let held_out = outcome.theory.evaluate(&test).unwrap();
    let empty = PossTheory::empty().evaluate(&test).unwrap();
    let negatives = test.iter().filter(|e| e.label == Label::Neg).count();
    let majority = negatives.max(test.len() - negatives);
    println!(
        "held-out accuracy {:.3} vs empty theory {:.3} vs majority class {:.3}",
        1.0 - held_out.errors as f64 / held_out.n as f64,
        1.0 - empty.errors as f64 / empty.n as f64,
        majority as f64 / test.len() as f64
    );
}
