//! VC-dimension bound calculators and shattering-instance constructions used
//! as property-test generators.
//!
//! The shattering instance over `n = 2^m` singleton-variable clauses builds a
//! block-recursive set of `(n/2)·log2(n)` order constraints, each turned into
//! a default `at-least_{l-k+1}(¬left) ~> at-least_k(right)`. Such defaults
//! carry CNF antecedents and consequents (cardinality gadgets), so they run
//! through the generalized covering path; only the `k = 1` rules are also
//! expressible in the restricted conjunction-antecedent dataset form.

use crate::cardinality::{at_least, at_least_direct};
use crate::exact::ordered_partitions;
use crate::logic::{Clause, CnfFormula, Literal, LiteralConjunction, Var, Vocabulary};
use crate::theory::{DefaultRule, PossTheory, QueryOptions};
use crate::{Error, Result};

/// `n · log2(k)`: stratifications of `n` formulas into at most `k` levels.
pub fn vc_upper_bound(n: usize, k: usize) -> f64 {
    assert!(n >= 1 && k >= 1);
    n as f64 * (k as f64).log2()
}

/// `(1/4) · n · (log2(k) − 1)`: the matching lower-bound construction.
pub fn vc_lower_bound(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::Invalid(format!("lower bound requires k <= n, got k={k}, n={n}")));
    }
    Ok(0.25 * n as f64 * ((k as f64).log2() - 1.0))
}

/// `m · (log2(n) + log2(k))`: hypotheses using at most `m` of `n` formulas
/// in at most `k` levels.
pub fn vc_subset_bound(n: usize, m: usize, k: usize) -> Result<f64> {
    if m >= n {
        return Err(Error::Invalid(format!("subset bound requires m < n, got m={m}, n={n}")));
    }
    Ok(m as f64 * ((n as f64).log2() + (k as f64).log2()))
}

/// A default whose antecedent and consequent are CNF cardinality gadgets.
/// `simple` carries the restricted-form view when one exists.
#[derive(Debug, Clone)]
pub struct GeneralDefaultRule {
    pub antecedent: CnfFormula,
    pub consequent: CnfFormula,
    pub simple: Option<DefaultRule>,
}

/// Singleton-variable theory plus the defaults encoding the order
/// constraints; `|defaults| = (n/2)·log2(n)`.
#[derive(Debug, Clone)]
pub struct ShatterInstance {
    pub theory: Vec<Clause>,
    pub defaults: Vec<GeneralDefaultRule>,
}

/// Builds the instance for `n ∈ {2, 4, 8}`. The constraint set pairs
/// adjacent blocks of every power-of-two size below `n`: for blocks
/// `L = {x_{i..i+s}}`, `R = {x_{i+s..i+2s}}` and each rank `k ∈ 1..=s`,
/// the constraint "k-th largest of L < k-th largest of R" becomes the
/// default `at-least_{s-k+1}(¬L) ~> at-least_k(R)`.
pub fn build_shatter_instance(n: usize, vocab: &mut Vocabulary) -> Result<ShatterInstance> {
    if !matches!(n, 2 | 4 | 8) {
        return Err(Error::Invalid(format!(
            "shatter instances are built for n in {{2, 4, 8}}, got {n}"
        )));
    }
    let vars: Vec<Var> = (1..=n)
        .map(|i| vocab.intern(&format!("x{i}")))
        .collect::<Result<_>>()?;
    let theory: Vec<Clause> = vars.iter().map(|&v| Clause::unit(Literal::positive(v))).collect();

    let mut defaults = Vec::new();
    let mut size = 1;
    while size < n {
        for pair in 0..(n / (2 * size)) {
            let start = pair * 2 * size;
            let left = &vars[start..start + size];
            let right = &vars[start + size..start + 2 * size];
            for k in 1..=size {
                let neg_left: Vec<Literal> =
                    left.iter().map(|&v| Literal::negative(v)).collect();
                let pos_right: Vec<Literal> =
                    right.iter().map(|&v| Literal::positive(v)).collect();
                let antecedent = at_least(size - k + 1, &neg_left, vocab)?;
                let consequent = at_least_direct(k, &pos_right)?;
                let simple = (k == 1).then(|| {
                    DefaultRule::new(
                        LiteralConjunction::new(neg_left.iter().copied()),
                        Clause::new(pos_right.iter().copied()),
                    )
                });
                defaults.push(GeneralDefaultRule { antecedent, consequent, simple });
            }
        }
        size *= 2;
    }
    let expected = n / 2 * n.ilog2() as usize;
    debug_assert_eq!(defaults.len(), expected);
    Ok(ShatterInstance { theory, defaults })
}

/// Coverage signature of one stratification over the instance's defaults.
fn signature(t: &PossTheory, defaults: &[GeneralDefaultRule]) -> u64 {
    let mut bits = 0u64;
    for (i, d) in defaults.iter().enumerate() {
        let covered = t
            .query_general(d.antecedent.clauses(), d.consequent.clauses(), QueryOptions::default())
            .entailed;
        if covered {
            bits |= 1 << i;
        }
    }
    bits
}

/// True iff every subset of the defaults is realized as the covered set of
/// some ordered partition of the theory; exhaustive over partitions.
pub fn is_shattered(inst: &ShatterInstance) -> Result<bool> {
    if inst.theory.len() > 4 {
        return Err(Error::Guard(format!(
            "shattering check limited to 4 formulas, got {}",
            inst.theory.len()
        )));
    }
    if inst.defaults.len() > 60 {
        return Err(Error::Guard("too many defaults for signature bits".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for partition in ordered_partitions(&inst.theory) {
        if partition.is_empty() && !inst.theory.is_empty() {
            continue;
        }
        let t = match PossTheory::new(partition) {
            Ok(t) => t,
            Err(_) => continue,
        };
        seen.insert(signature(&t, &inst.defaults));
    }
    let want = 1u64 << inst.defaults.len();
    Ok((0..want).all(|bits| seen.contains(&bits)))
}

/// Realized coverage signatures, for reporting.
pub fn realized_signatures(inst: &ShatterInstance) -> Result<std::collections::HashSet<u64>> {
    if inst.theory.len() > 4 {
        return Err(Error::Guard("shattering check limited to 4 formulas".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for partition in ordered_partitions(&inst.theory) {
        let t = PossTheory::new(partition).expect("partition blocks are valid strata");
        seen.insert(signature(&t, &inst.defaults));
    }
    Ok(seen)
}
