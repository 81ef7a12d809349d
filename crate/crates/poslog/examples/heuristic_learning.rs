//! Greedy theory learning from noisy defaults, with hard integrity
//! constraints protected above every learned stratum.
//!
//! Run with: cargo run --example heuristic_learning

use poslog::data::parse_dataset;
use poslog::heuristic::{learn, LearnConfig};
use poslog::logic::Clause;
use poslog::theory::Label;

fn main() {
    // poker-flavored defaults from two annotators who disagree on weak hands
    let data = parse_dataset(
        "strong ~> raise ; + ; group=ann1\n\
         weak ~> fold ; + ; group=ann1\n\
         pair & weak ~> call ; + ; group=ann1\n\
         strong ~> raise ; + ; group=ann2\n\
         weak ~> call ; + ; group=ann2\n\
         true ~> raise ; - ; group=ann2\n\
         weak ~> raise ; - ; group=ann1\n",
    )
    .unwrap();
    let mut vocab = data.vocab.clone();
    let hard = vec![
        Clause::parse("!fold | !raise", &mut vocab).unwrap(),
        Clause::parse("!fold | !call", &mut vocab).unwrap(),
        Clause::parse("!call | !raise", &mut vocab).unwrap(),
    ];

    let cfg = LearnConfig {
        iterations: 40,
        sample_size: 5,
        rng_seed: 3,
        hard_constraints: hard,
        ..Default::default()
    };
    let outcome = learn(&data.examples, &cfg).unwrap();

    println!("initial training error: {}", outcome.initial_error);
    let mut previous = outcome.initial_error;
    for (i, e) in outcome.iteration_errors.iter().enumerate() {
        if *e != previous {
            println!("improved to {e} at iteration {}", i + 1);
            previous = *e;
        }
    }
    println!("\nlearned theory (hard constraints preserved on top):\n{}", outcome.theory.render(&vocab));

    let report = outcome.theory.evaluate(&data.examples).unwrap();
    println!("final training error {}/{}", report.errors, report.n);
    println!("(one error is forced: the annotators label both `weak ~> fold` and `weak ~> call` positive,");
    println!(" and the exclusion constraints allow covering at most one of them)");

    // the mutual-exclusion constraints are never drowned by evidence
    let q = poslog::data::parse_rule("strong ~> !fold", &mut vocab).unwrap();
    assert_eq!(outcome.theory.covers(&q), Label::Pos);
    println!("hard exclusion holds: a raising hand is never also folded");
}
