//! Core semantics on the penguin knowledge base: strict cuts, the
//! inconsistency level, drowning, and inconsistency-tolerant covering.
//!
//! Run with: cargo run --example penguin_defaults

use poslog::data::parse_dataset;
use poslog::logic::{Clause, LiteralConjunction, Vocabulary};
use poslog::theory::{PossTheory, QueryOptions};

fn main() {
    let mut vocab = Vocabulary::new();
    // (flies, 0.5), (!penguin | !flies, 1): general rule below the exception
    let theory = PossTheory::parse("0.5\tflies\n1\t!flies | !penguin\n", &mut vocab).unwrap();
    println!("theory:\n{}", theory.render(&vocab));

    for j in 0..=theory.num_strata() {
        let cut = theory.strict_cut(j).unwrap();
        let texts: Vec<String> = cut.clauses().iter().map(|c| c.render(&vocab)).collect();
        println!("strict cut above level {j}: {{{}}}", texts.join(", "));
    }

    let penguin = LiteralConjunction::parse("penguin", &mut vocab).unwrap();
    let not_flies = Clause::parse("!flies", &mut vocab).unwrap();
    let outcome = theory.query(&penguin, &not_flies, QueryOptions::default());
    println!(
        "\nwith evidence `penguin`: inconsistency level {} of {} (found in {} SAT calls)",
        outcome.inc.level, outcome.inc.strata_searched, outcome.inc.sat_calls
    );
    println!("the `flies` stratum drowns, and `!flies` follows: {}", outcome.entailed);

    let data = parse_dataset(
        "penguin ~> bird ; +\n\
         bird ~> flies ; +\n\
         penguin ~> !flies ; +\n\
         true ~> bird ; -\n\
         bird ~> penguin ; -\n",
    )
    .unwrap();
    // re-parse the theory against the dataset vocabulary before evaluating
    let mut vocab = data.vocab.clone();
    let theory = PossTheory::parse("0.5\tflies\n1\t!flies | !penguin\n", &mut vocab).unwrap();
    let report = theory.evaluate(&data.examples).unwrap();
    println!("\nper-example covering:");
    for (ex, predicted) in data.examples.iter().zip(&report.predictions) {
        let mark = if *predicted == ex.label { "ok " } else { "MISS" };
        println!(
            "  [{mark}] {} ; labeled {} ; predicted {}",
            ex.rule.render(&vocab),
            ex.label,
            predicted
        );
    }
    println!(
        "training error {}/{} (the one miss is the drowned `penguin ~> bird`)",
        report.errors, report.n
    );
}
