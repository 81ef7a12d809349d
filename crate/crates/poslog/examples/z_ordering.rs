//! Rational closure via the Z-ordering, and how it differs from a
//! separating stratification learned from the same positives.
//!
//! Run with: cargo run --example z_ordering

use poslog::data::{parse_dataset, parse_rule};
use poslog::exact::{stratify_separable, SeparationProblem};
use poslog::logic::Clause;
use poslog::rational::{is_tolerated, rational_closure_entails, to_poss_theory, z_ordering};
use poslog::theory::Label;

fn main() {
    let data = parse_dataset(
        "true ~> !x ; +\n\
         true ~> !y ; +\n\
         x ~> a ; +\n\
         y ~> b ; +\n",
    )
    .unwrap();
    let mut vocab = data.vocab.clone();
    let positives = data.positives();

    println!("tolerance against the full set:");
    for d in &positives {
        println!(
            "  {} tolerated: {}",
            d.render(&vocab),
            is_tolerated(d, &positives)
        );
    }

    let z = z_ordering(&positives).unwrap();
    println!("\nZ-ordering levels (most general first):");
    for (i, level) in z.levels().iter().enumerate() {
        let texts: Vec<String> = level.iter().map(|d| d.render(&vocab)).collect();
        println!("  level {}: {}", i + 1, texts.join(" ; "));
    }

    let h_z = to_poss_theory(&z);
    println!("\npossibilistic translation:\n{}", h_z.render(&vocab));

    let joint = parse_rule("x & y ~> a", &mut vocab).unwrap();
    println!(
        "rational closure covers `x & y ~> a`: {}",
        rational_closure_entails(&positives, &joint).unwrap()
    );

    // a separating stratification of the same clauses can reject that rule
    let pool: Vec<Clause> = ["!x", "!y", "!x | a", "!y | b"]
        .iter()
        .map(|t| Clause::parse(t, &mut vocab).unwrap())
        .collect();
    let problem = SeparationProblem::new(pool, positives, vec![joint.clone()]);
    let separator = stratify_separable(&problem).theory.unwrap();
    println!("separating stratification of the same clauses:\n{}", separator.render(&vocab));
    assert_eq!(separator.covers(&joint), Label::Neg);
    println!("the separator rejects `x & y ~> a` while the Z-theory accepts it");
}
