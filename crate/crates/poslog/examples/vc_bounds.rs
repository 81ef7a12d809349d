//! VC-dimension bounds for stratification classes, and exhaustive shattering
//! checks of the order-constraint instances.
//!
//! Run with: cargo run --example vc_bounds

use poslog::logic::Vocabulary;
use poslog::vc::{
    build_shatter_instance, is_shattered, realized_signatures, vc_lower_bound, vc_subset_bound,
    vc_upper_bound,
};

fn main() {
    println!("n\tk\tupper n*log2(k)\tlower n*(log2(k)-1)/4");
    for (n, k) in [(4, 4), (8, 2), (16, 16), (64, 8)] {
        println!(
            "{n}\t{k}\t{}\t{}",
            vc_upper_bound(n, k),
            vc_lower_bound(n, k).unwrap()
        );
    }
    println!(
        "\nsubset bound for m=4 of n=16 formulas, k=16 levels: {}",
        vc_subset_bound(16, 4, 16).unwrap()
    );

    for n in [2usize, 4] {
        let mut vocab = Vocabulary::new();
        let inst = build_shatter_instance(n, &mut vocab).unwrap();
        println!(
            "\nshatter instance n={n}: {} singleton clauses, {} order-constraint defaults",
            inst.theory.len(),
            inst.defaults.len()
        );
        for d in inst.defaults.iter().filter_map(|d| d.simple.as_ref()) {
            println!("  restricted-form rule: {}", d.render(&vocab));
        }
        let realized = realized_signatures(&inst).unwrap();
        println!(
            "  realized {}/{} coverage subsets -> shattered: {}",
            realized.len(),
            1u64 << inst.defaults.len(),
            is_shattered(&inst).unwrap()
        );
    }
}
