//! Exact search for a separating stratification of a clause pool, plus a
//! brute-force enumeration oracle and a QBF-based fixture generator.
//!
//! The search recursively peels the bottom stratum: it walks proper subsets
//! `T'` of the current pool (descending size, lexicographic within a size),
//! keeps those through which every remaining positive can still be covered
//! and no negative is covered, removes the positives covered at `T'`, and
//! recurses. Failed pools land in a `Closed` set, which bounds the number of
//! distinct recursive inputs by `2^|T|`.
//!
//! The pseudocode alone can return a stratification that covers a negative
//! through the full pool (every stratification of the pool covers such a
//! negative, so no separating stratification exists). The top-level wrapper
//! therefore re-verifies the result against the examples and reports NONE
//! when the check fails; the verdict is provably correct in those cases.

use std::collections::HashSet;

use crate::logic::{Clause, CnfFormula, LiteralConjunction, Var, Vocabulary};
use crate::sat;
use crate::theory::{DefaultRule, Label, PossTheory};
use crate::{Error, Result};

/// A candidate formula pool with labeled default-rule examples (multisets;
/// noisy overlaps between the two sides are allowed).
#[derive(Debug, Clone)]
pub struct SeparationProblem {
    pub theory: Vec<Clause>,
    pub positives: Vec<DefaultRule>,
    pub negatives: Vec<DefaultRule>,
}

impl SeparationProblem {
    pub fn new(
        theory: Vec<Clause>,
        positives: Vec<DefaultRule>,
        negatives: Vec<DefaultRule>,
    ) -> Self {
        let mut theory = theory;
        theory.sort_unstable();
        theory.dedup();
        SeparationProblem { theory, positives, negatives }
    }

    /// True iff the stratification covers every positive and no negative.
    pub fn is_separating(&self, t: &PossTheory) -> bool {
        self.positives.iter().all(|d| t.covers(d) == Label::Pos)
            && self.negatives.iter().all(|d| t.covers(d) == Label::Neg)
    }
}

/// Instrumentation for the recursive search.
#[derive(Debug, Clone, Copy, Default)]
pub struct StratifyStats {
    /// Distinct first arguments seen by the recursion; at most `2^|T|`.
    pub distinct_inputs: usize,
    /// Expansions of a pool already stored in `Closed`; must stay zero.
    pub reexpansions: usize,
    /// The search produced a stratification that failed re-verification.
    pub verification_failed: bool,
}

#[derive(Debug)]
pub struct StratifyOutcome {
    pub theory: Option<PossTheory>,
    pub stats: StratifyStats,
}

struct SearchCtx<'a> {
    pool: &'a [Clause],
    negatives: &'a [DefaultRule],
    closed: HashSet<u64>,
    inputs: HashSet<u64>,
    expanded: HashSet<u64>,
    reexpansions: usize,
}

impl<'a> SearchCtx<'a> {
    fn subset(&self, mask: u64) -> Vec<&'a Clause> {
        self.pool
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| c)
            .collect()
    }

    fn consistent(&self, mask: u64, ant: &LiteralConjunction) -> bool {
        sat::sat(self.subset(mask).into_iter(), &ant.unit_clauses())
    }

    fn entails(&self, mask: u64, ant: &LiteralConjunction, goal: &Clause) -> bool {
        let mut extra = ant.unit_clauses();
        extra.extend(goal.negation_units());
        !sat::sat(self.subset(mask).into_iter(), &extra)
    }

    /// Proper subsets of `mask`, descending by size, lexicographic within a
    /// size (by the positions of the chosen elements).
    fn proper_subsets(&self, mask: u64) -> Vec<u64> {
        let positions: Vec<usize> = (0..self.pool.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut out = Vec::new();
        for size in (0..positions.len()).rev() {
            for combo in crate::cardinality::combinations(positions.len(), size) {
                let mut sub = 0u64;
                for idx in combo {
                    sub |= 1 << positions[idx];
                }
                out.push(sub);
            }
        }
        out
    }

    fn stratify_impl(&mut self, mask: u64, spos: Vec<DefaultRule>) -> Option<Vec<Vec<Clause>>> {
        self.inputs.insert(mask);
        if self.closed.contains(&mask) {
            return None;
        }
        if mask == 0 && spos.is_empty() {
            return Some(Vec::new());
        }
        if !self.expanded.insert(mask) {
            self.reexpansions += 1;
        }
        for sub in self.proper_subsets(mask) {
            let keeps_positives = spos
                .iter()
                .all(|d| self.entails(sub, &d.antecedent, &d.consequent));
            if !keeps_positives {
                continue;
            }
            let rejects_negatives = self.negatives.iter().all(|d| {
                !self.consistent(sub, &d.antecedent)
                    || !self.entails(sub, &d.antecedent, &d.consequent)
            });
            if !rejects_negatives {
                continue;
            }
            let (covered, remaining): (Vec<DefaultRule>, Vec<DefaultRule>) =
                spos.iter().cloned().partition(|d| {
                    self.consistent(sub, &d.antecedent)
                        && self.entails(sub, &d.antecedent, &d.consequent)
                });
            let _ = covered;
            if let Some(upper) = self.stratify_impl(sub, remaining) {
                let level: Vec<Clause> =
                    self.subset(mask & !sub).into_iter().cloned().collect();
                let mut levels = vec![level];
                levels.extend(upper);
                return Some(levels);
            }
        }
        self.closed.insert(mask);
        None
    }
}

/// Finds a stratification of the pool covering every positive and no
/// negative, or reports NONE. The result is re-verified against the examples
/// on every run.
pub fn stratify_separable(p: &SeparationProblem) -> StratifyOutcome {
    assert!(p.theory.len() <= 63, "pool too large for mask representation");
    let full: u64 = if p.theory.is_empty() { 0 } else { (1u64 << p.theory.len()) - 1 };

    let mut positives: Vec<DefaultRule> = p.positives.clone();
    positives.sort();
    positives.dedup();
    let mut negatives: Vec<DefaultRule> = p.negatives.clone();
    negatives.sort();
    negatives.dedup();

    let mut ctx = SearchCtx {
        pool: &p.theory,
        negatives: &negatives,
        closed: HashSet::new(),
        inputs: HashSet::new(),
        expanded: HashSet::new(),
        reexpansions: 0,
    };

    // upfront pass: positives already covered by the whole pool
    let remaining: Vec<DefaultRule> = positives
        .iter()
        .filter(|d| {
            !(ctx.consistent(full, &d.antecedent) && ctx.entails(full, &d.antecedent, &d.consequent))
        })
        .cloned()
        .collect();

    let levels = ctx.stratify_impl(full, remaining);
    let mut stats = StratifyStats {
        distinct_inputs: ctx.inputs.len(),
        reexpansions: ctx.reexpansions,
        verification_failed: false,
    };

    let theory = match levels {
        None => None,
        Some(levels) => {
            let t = PossTheory::new(levels).expect("search levels are disjoint and nonempty");
            if p.is_separating(&t) {
                Some(t)
            } else {
                stats.verification_failed = true;
                None
            }
        }
    };
    StratifyOutcome { theory, stats }
}

/// All ordered partitions of the items, in a fixed enumeration order.
pub fn ordered_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut result: Vec<Vec<Vec<T>>> = vec![Vec::new()];
    for item in items {
        let mut next = Vec::new();
        for partition in &result {
            for i in 0..partition.len() {
                let mut extended = partition.clone();
                extended[i].push(item.clone());
                next.push(extended);
            }
            for i in 0..=partition.len() {
                let mut extended = partition.clone();
                extended.insert(i, vec![item.clone()]);
                next.push(extended);
            }
        }
        result = next;
    }
    result
}

/// Enumerates every ordered partition of the full pool and returns the first
/// separating stratification, or NONE. Guarded to small pools; the partition
/// count grows as the Fubini numbers.
pub fn brute_force_separating(p: &SeparationProblem) -> Result<Option<PossTheory>> {
    if p.theory.len() > 6 {
        return Err(Error::Guard(format!(
            "brute-force enumeration limited to 6 formulas, got {}",
            p.theory.len()
        )));
    }
    for partition in ordered_partitions(&p.theory) {
        let t = PossTheory::new(partition).expect("partition blocks are disjoint and nonempty");
        if p.is_separating(&t) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Builds the separation problem of the satisfiability reduction for
/// `∃X ∀Y: Φ(X, Y)`: pool `X ∪ {¬x} ∪ clausified(Φ → aux)`, one positive
/// `true ~> aux`, no negatives. Clausification is the standard
/// equisatisfiable form with one selector variable per clause of `Φ`.
pub fn qbf_fixture(
    phi: &CnfFormula,
    xs: &[Var],
    vocab: &mut Vocabulary,
) -> Result<SeparationProblem> {
    if vocab.lookup("aux").is_some() {
        return Err(Error::Invalid("vocabulary clash: `aux` already interned".into()));
    }
    let mut theory: Vec<Clause> = Vec::new();
    for &x in xs {
        theory.push(Clause::unit(crate::logic::Literal::positive(x)));
        theory.push(Clause::unit(crate::logic::Literal::negative(x)));
    }
    let aux = vocab.intern("aux")?;
    let aux_lit = crate::logic::Literal::positive(aux);
    let mut main_clause = Vec::new();
    for (i, clause) in phi.clauses().iter().enumerate() {
        let name = format!("t{}", i + 1);
        if vocab.lookup(&name).is_some() {
            return Err(Error::Invalid(format!("vocabulary clash: `{name}` already interned")));
        }
        let selector = crate::logic::Literal::positive(vocab.intern(&name)?);
        // selector <-> negation of the clause
        for &l in clause.literals() {
            theory.push(Clause::new([selector.negated(), l.negated()]));
        }
        theory.push(Clause::new(
            clause.literals().iter().copied().chain([selector]),
        ));
        main_clause.push(selector);
    }
    main_clause.push(aux_lit);
    theory.push(Clause::new(main_clause));
    let positive = DefaultRule::new(LiteralConjunction::top(), Clause::unit(aux_lit));
    Ok(SeparationProblem::new(theory, vec![positive], Vec::new()))
}
