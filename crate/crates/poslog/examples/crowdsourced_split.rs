//! Crowdsourcing-style pipeline: annotator-grouped defaults, synthesized
//! negatives, a leakage-free split by annotator, and hard mutual-exclusion
//! constraints on the learned theory.
//!
//! Run with: cargo run --example crowdsourced_split

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poslog::data::{render_dataset, split_by_group, synthesize_negatives, Dataset};
use poslog::heuristic::{learn, LearnConfig};
use poslog::logic::Clause;

fn main() {
    let mut positives = poslog::data::parse_dataset(
        "strong ~> raise ; + ; group=u1\n\
         strong & late ~> raise ; + ; group=u1\n\
         weak ~> fold ; + ; group=u1\n\
         weak & pot_odds ~> call ; + ; group=u2\n\
         strong ~> raise ; + ; group=u2\n\
         weak ~> fold ; + ; group=u3\n\
         pair ~> call ; + ; group=u3\n\
         strong & pair ~> raise ; + ; group=u4\n\
         weak & late ~> fold ; + ; group=u4\n\
         pair & pot_odds ~> call ; + ; group=u5\n",
    )
    .unwrap();
    let pool = ["fold", "call", "raise"]
        .iter()
        .map(|t| Clause::parse(t, &mut positives.vocab).unwrap())
        .collect::<Vec<_>>();

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let negatives = synthesize_negatives(&positives, &pool, &mut rng).unwrap();
    println!("synthesized negatives:\n{}", render_dataset(&negatives.examples, &negatives.vocab));

    let mut all = positives.examples.clone();
    all.extend(negatives.examples.clone());
    let combined = Dataset::new(all, positives.vocab.clone());

    let (train, test) = split_by_group(&combined, 0.2, &mut rng).unwrap();
    let groups = |d: &Dataset| {
        let mut gs: Vec<String> = d.examples.iter().filter_map(|e| e.group.clone()).collect();
        gs.sort();
        gs.dedup();
        gs.join(",")
    };
    println!(
        "split: {} train examples (annotators {}), {} test examples (annotators {})",
        train.len(),
        groups(&train),
        test.len(),
        groups(&test)
    );

    let mut vocab = combined.vocab.clone();
    let hard = vec![
        Clause::parse("!fold | !raise", &mut vocab).unwrap(),
        Clause::parse("!call | !fold", &mut vocab).unwrap(),
        Clause::parse("!call | !raise", &mut vocab).unwrap(),
    ];
    let cfg = LearnConfig {
        iterations: 30,
        sample_size: 6,
        rng_seed: 5,
        hard_constraints: hard,
        ..Default::default()
    };
    let outcome = learn(&train.examples, &cfg).unwrap();
    println!("learned theory:\n{}", outcome.theory.render(&vocab));

    let train_report = outcome.theory.evaluate(&train.examples).unwrap();
    let test_report = outcome.theory.evaluate(&test.examples).unwrap();
    println!(
        "training error {}/{}; held-out error {}/{}",
        train_report.errors, train_report.n, test_report.errors, test_report.n
    );
}
