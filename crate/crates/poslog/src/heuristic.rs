//! Greedy learning of a stratified theory from labeled default rules.
//!
//! Each iteration samples candidate clauses from currently misclassified
//! examples (subclauses of `¬α ∨ β`, consequent literals negated for
//! negative examples), scores every (candidate, position) pair, installs the
//! accuracy argmax — ties broken by fewest strata, then shortest clause,
//! then clause order, then lowest position — minimizes the new clause,
//! prunes clauses whose deletion costs nothing, and re-places every clause.
//!
//! Candidate scoring fans out to a worker pool; the argmax reduction
//! compares the full tie-break tuple, so results are schedule-independent
//! and byte-identical across worker counts.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::logic::{Clause, Literal};
use crate::theory::{LabeledExample, Label, PossTheory, QueryEngine, QueryOptions};
use crate::{Error, Result};

/// Knobs for [`learn`].
#[derive(Debug, Clone)]
pub struct LearnConfig {
    /// Revision iterations to run.
    pub iterations: usize,
    /// Optional wall-clock budget; a timeout mid-revision abandons the
    /// partial revision and returns the last completed working theory.
    pub timeout: Option<Duration>,
    /// Misclassified defaults sampled per iteration.
    pub sample_size: usize,
    pub rng_seed: u64,
    /// Installed in the protected hard stratum before iteration 1 and never
    /// touched afterwards.
    pub hard_constraints: Vec<Clause>,
    pub worker_count: usize,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            iterations: 50,
            timeout: None,
            sample_size: 10,
            rng_seed: 0,
            hard_constraints: Vec::new(),
            worker_count: 1,
        }
    }
}

/// Learned theory plus the per-iteration training-error trace.
#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub theory: PossTheory,
    pub initial_error: Ratio<u64>,
    /// Training error after each completed iteration; non-increasing.
    pub iteration_errors: Vec<Ratio<u64>>,
    pub timed_out: bool,
}

/// Insertion point for a clause: into an existing stratum, or as a new
/// singleton stratum at one of the `k+1` gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Into(usize),
    NewAt(usize),
}

impl Placement {
    /// Total order along the stratification, lowest position first; a new
    /// stratum below index `i` precedes insertion into stratum `i`.
    fn position_key(self) -> usize {
        match self {
            Placement::NewAt(i) => 2 * i,
            Placement::Into(i) => 2 * i + 1,
        }
    }

    fn apply(self, t: &PossTheory, clause: Clause) -> PossTheory {
        match self {
            Placement::Into(i) => t.with_clause_in_stratum(i, clause),
            Placement::NewAt(i) => t.with_new_stratum(i, clause),
        }
    }

    fn all(t: &PossTheory) -> Vec<Placement> {
        let k = t.num_strata();
        (0..k)
            .map(Placement::Into)
            .chain((0..=k).map(Placement::NewAt))
            .collect()
    }
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Builds one candidate from an example and explicit keep-masks over the
/// negated-antecedent and consequent literals. Returns the clause
/// `¬α' ∨ β'` for positives and `¬α' ∨ β''` (consequent literals negated)
/// for negatives; `None` when the consequent part comes out empty.
pub fn candidate_from(
    example: &LabeledExample,
    keep_antecedent: &[bool],
    keep_consequent: &[bool],
) -> Option<Clause> {
    let ant: Vec<Literal> = example
        .rule
        .antecedent
        .literals()
        .iter()
        .zip(keep_antecedent)
        .filter(|(_, keep)| **keep)
        .map(|(l, _)| l.negated())
        .collect();
    let cons: Vec<Literal> = example
        .rule
        .consequent
        .literals()
        .iter()
        .zip(keep_consequent)
        .filter(|(_, keep)| **keep)
        .map(|(l, _)| match example.label {
            Label::Pos => *l,
            Label::Neg => l.negated(),
        })
        .collect();
    if cons.is_empty() {
        return None;
    }
    Some(Clause::new(ant.into_iter().chain(cons)))
}

/// Samples candidate clauses from misclassified examples: up to
/// `sample_size` examples without replacement, each literal kept with
/// probability 1/2, the consequent side resampled once if empty. Tautologies
/// and duplicates of existing theory clauses are discarded.
pub fn sample_candidates(
    misclassified: &[&LabeledExample],
    theory: &PossTheory,
    sample_size: usize,
    rng: &mut impl Rng,
) -> Vec<Clause> {
    let picked = rand::seq::index::sample(
        rng,
        misclassified.len(),
        sample_size.min(misclassified.len()),
    );
    let mut out = std::collections::BTreeSet::new();
    for idx in picked.iter() {
        let example = misclassified[idx];
        let ant_mask: Vec<bool> = example
            .rule
            .antecedent
            .literals()
            .iter()
            .map(|_| rng.gen_bool(0.5))
            .collect();
        let cons_len = example.rule.consequent.len();
        let mut cons_mask: Vec<bool> = (0..cons_len).map(|_| rng.gen_bool(0.5)).collect();
        if cons_mask.iter().all(|k| !k) {
            cons_mask = (0..cons_len).map(|_| rng.gen_bool(0.5)).collect();
        }
        let Some(clause) = candidate_from(example, &ant_mask, &cons_mask) else {
            continue;
        };
        if clause.is_tautology() || theory.contains_clause(&clause) {
            continue;
        }
        out.insert(clause);
    }
    out.into_iter().collect()
}

/// Score tuple minimized by placement search; the trailing fields implement
/// the deterministic tie-breaking order.
type ScoreKey = (usize, usize, usize, Clause, usize);

fn score_placement(
    t: &PossTheory,
    clause: &Clause,
    placement: Placement,
    data: &[LabeledExample],
    engine: &QueryEngine,
) -> (ScoreKey, PossTheory) {
    let candidate = placement.apply(t, clause.clone());
    let errors = engine.error_count(&candidate, data);
    let key = (
        errors,
        candidate.num_strata(),
        clause.len(),
        clause.clone(),
        placement.position_key(),
    );
    (key, candidate)
}

fn best_of(mut scored: Vec<(ScoreKey, PossTheory)>) -> (ScoreKey, PossTheory) {
    scored.sort_by(|a, b| a.0.cmp(&b.0));
    scored.into_iter().next().expect("nonempty placements")
}

/// Evaluates every (candidate, position) pair and installs the argmax.
/// Returns `None` on deadline expiry before completing the scan.
pub fn place_best(
    t: &PossTheory,
    candidates: &[Clause],
    data: &[LabeledExample],
    engine: &QueryEngine,
    pool: Option<&rayon::ThreadPool>,
    deadline: Option<Instant>,
) -> Option<(PossTheory, Clause)> {
    assert!(!candidates.is_empty(), "place_best needs candidates");
    let placements = Placement::all(t);
    let tasks: Vec<(&Clause, Placement)> = candidates
        .iter()
        .flat_map(|c| placements.iter().map(move |&p| (c, p)))
        .collect();
    let scored: Vec<(ScoreKey, PossTheory)> = match pool {
        Some(pool) => {
            if expired(deadline) {
                return None;
            }
            pool.install(|| {
                tasks
                    .par_iter()
                    .map(|(c, p)| score_placement(t, c, *p, data, engine))
                    .collect()
            })
        }
        None => {
            let mut out = Vec::with_capacity(tasks.len());
            for (c, p) in tasks {
                if expired(deadline) {
                    return None;
                }
                out.push(score_placement(t, c, p, data, engine));
            }
            out
        }
    };
    let (key, theory) = best_of(scored);
    Some((theory, key.3))
}

/// Greedily removes single literals from `clause` while training error does
/// not increase; in place at the clause's stratum. Removals that would
/// duplicate another theory clause are skipped.
pub fn minimize_clause(
    t: PossTheory,
    clause: &Clause,
    data: &[LabeledExample],
    engine: &QueryEngine,
    deadline: Option<Instant>,
) -> Option<(PossTheory, Clause)> {
    let mut theory = t;
    let mut current = clause.clone();
    let mut current_errors = engine.error_count(&theory, data);
    loop {
        let mut improved = false;
        for &lit in current.literals() {
            if current.len() <= 1 {
                break;
            }
            if expired(deadline) {
                return None;
            }
            let shrunk = current.without(lit);
            if theory.contains_clause(&shrunk) {
                continue;
            }
            let candidate = theory
                .with_replaced_clause(&current, shrunk.clone())
                .expect("clause is present");
            let errors = engine.error_count(&candidate, data);
            if errors <= current_errors {
                theory = candidate;
                current = shrunk;
                current_errors = errors;
                improved = true;
                break;
            }
        }
        if !improved {
            return Some((theory, current));
        }
    }
}

/// Single deletion pass in deterministic order (lowest stratum first,
/// canonical clause order within): a clause is dropped when deletion does
/// not increase training error. Empty strata are compacted; the hard
/// stratum is exempt.
pub fn prune_clauses(
    t: PossTheory,
    data: &[LabeledExample],
    engine: &QueryEngine,
    deadline: Option<Instant>,
) -> Option<PossTheory> {
    let before = engine.error_count(&t, data);
    let mut theory = t;
    let mut current_errors = before;
    let snapshot: Vec<Clause> = theory.clause_positions().into_iter().map(|(_, c)| c).collect();
    for clause in snapshot {
        if expired(deadline) {
            return None;
        }
        let Some((candidate, _)) = theory.without_clause(&clause) else {
            continue;
        };
        let errors = engine.error_count(&candidate, data);
        if errors <= current_errors {
            theory = candidate;
            current_errors = errors;
        }
    }
    assert!(current_errors <= before, "pruning must not raise training error");
    Some(theory)
}

/// Re-places every clause through the placement rule (accuracy, then fewest
/// strata, then lowest position); training error never increases because the
/// original position is always among the candidates.
pub fn reoptimize_weights(
    t: PossTheory,
    data: &[LabeledExample],
    engine: &QueryEngine,
    pool: Option<&rayon::ThreadPool>,
    deadline: Option<Instant>,
) -> Option<PossTheory> {
    let before = engine.error_count(&t, data);
    let mut theory = t;
    let snapshot: Vec<Clause> = theory.clause_positions().into_iter().map(|(_, c)| c).collect();
    for clause in snapshot {
        if expired(deadline) {
            return None;
        }
        let Some((removed, _)) = theory.without_clause(&clause) else {
            continue;
        };
        let placements = Placement::all(&removed);
        let scored: Vec<(ScoreKey, PossTheory)> = match pool {
            Some(pool) => pool.install(|| {
                placements
                    .par_iter()
                    .map(|&p| score_placement(&removed, &clause, p, data, engine))
                    .collect()
            }),
            None => placements
                .iter()
                .map(|&p| score_placement(&removed, &clause, p, data, engine))
                .collect(),
        };
        let (_, best) = best_of(scored);
        theory = best;
    }
    let after = engine.error_count(&theory, data);
    assert!(after <= before, "weight re-optimization must not raise training error");
    Some(theory)
}

/// Runs the full revision loop for `cfg.iterations` iterations or until the
/// timeout. Hard constraints sit in the protected stratum from the start and
/// are returned unchanged; the per-iteration training error is
/// non-increasing, and never exceeds the empty-theory error.
pub fn learn(data: &[LabeledExample], cfg: &LearnConfig) -> Result<LearnOutcome> {
    if data.is_empty() {
        return Err(Error::Invalid("empty dataset".into()));
    }
    if cfg.iterations == 0 || cfg.sample_size == 0 || cfg.worker_count == 0 {
        return Err(Error::Invalid(
            "iterations, sample_size and worker_count must be at least 1".into(),
        ));
    }
    let engine = QueryEngine::new(QueryOptions::default());
    let pool = if cfg.worker_count > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.worker_count)
                .build()
                .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?,
        )
    } else {
        None
    };
    let deadline = cfg.timeout.map(|d| Instant::now() + d);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let n = data.len() as u64;

    let mut working = PossTheory::with_hard(Vec::new(), cfg.hard_constraints.clone())?;
    let mut current_errors = engine.error_count(&working, data);
    let initial_error = Ratio::new(current_errors as u64, n);
    let mut iteration_errors = Vec::new();
    let mut timed_out = false;

    'iterations: for _ in 0..cfg.iterations {
        if expired(deadline) {
            timed_out = true;
            break;
        }
        if current_errors == 0 {
            break;
        }
        let report = engine.evaluate(&working, data)?;
        let misclassified: Vec<&LabeledExample> = data
            .iter()
            .zip(&report.predictions)
            .filter(|(ex, p)| ex.label != **p)
            .map(|(ex, _)| ex)
            .collect();
        let candidates = sample_candidates(&misclassified, &working, cfg.sample_size, &mut rng);
        if candidates.is_empty() {
            iteration_errors.push(Ratio::new(current_errors as u64, n));
            continue;
        }
        let snapshot = working.clone();
        let snapshot_errors = current_errors;

        let revised = (|| {
            let (placed, clause) =
                place_best(&snapshot, &candidates, data, &engine, pool.as_ref(), deadline)?;
            let (minimized, _) = minimize_clause(placed, &clause, data, &engine, deadline)?;
            let pruned = prune_clauses(minimized, data, &engine, deadline)?;
            reoptimize_weights(pruned, data, &engine, pool.as_ref(), deadline)
        })();

        match revised {
            None => {
                timed_out = true;
                break 'iterations;
            }
            Some(theory) => {
                let errors = engine.error_count(&theory, data);
                if errors > snapshot_errors {
                    // the whole revision hurt; keep the previous theory
                    working = snapshot;
                    current_errors = snapshot_errors;
                } else {
                    working = theory;
                    current_errors = errors;
                }
            }
        }
        iteration_errors.push(Ratio::new(current_errors as u64, n));
    }

    debug_assert_eq!(working.hard_stratum().len(), {
        let mut h = cfg.hard_constraints.clone();
        h.sort_unstable();
        h.dedup();
        h.len()
    });
    Ok(LearnOutcome {
        theory: working,
        initial_error,
        iteration_errors,
        timed_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{LiteralConjunction, Vocabulary};
    use crate::theory::DefaultRule;

    fn example(ant: &str, cons: &str, label: Label, vocab: &mut Vocabulary) -> LabeledExample {
        LabeledExample::new(
            DefaultRule::new(
                LiteralConjunction::parse(ant, vocab).unwrap(),
                Clause::parse(cons, vocab).unwrap(),
            ),
            label,
        )
    }

    fn example3_data(vocab: &mut Vocabulary) -> Vec<LabeledExample> {
        vec![
            example("true", "!x", Label::Pos, vocab),
            example("true", "!y", Label::Pos, vocab),
            example("x", "a", Label::Pos, vocab),
            example("y", "b", Label::Pos, vocab),
            example("x & y", "a", Label::Neg, vocab),
        ]
    }

    #[test]
    fn candidate_from_positive_keeps_selected_subclauses() {
        // bird & antarctic ~> !flies with the antecedent narrowed to
        // antarctic gives the clause !antarctic | !flies
        let mut vocab = Vocabulary::new();
        let ex = example("bird & antarctic", "!flies", Label::Pos, &mut vocab);
        let ant_lits = ex.rule.antecedent.literals();
        let keep_ant: Vec<bool> = ant_lits
            .iter()
            .map(|l| vocab.name(l.var()) == "antarctic")
            .collect();
        let clause = candidate_from(&ex, &keep_ant, &[true]).unwrap();
        assert_eq!(clause.render(&vocab), "!antarctic | !flies");
    }

    #[test]
    fn candidate_from_negative_negates_consequent_literals() {
        let mut vocab = Vocabulary::new();
        let ex = example("bird", "penguin", Label::Neg, &mut vocab);
        let clause = candidate_from(&ex, &[true], &[true]).unwrap();
        assert_eq!(clause.render(&vocab), "!bird | !penguin");
        // literal-wise: every consequent literal appears negated
        for l in ex.rule.consequent.literals() {
            assert!(clause.contains(l.negated()));
        }
    }

    #[test]
    fn candidate_from_top_antecedent_is_bare_consequent() {
        let mut vocab = Vocabulary::new();
        let ex = example("true", "x", Label::Pos, &mut vocab);
        let clause = candidate_from(&ex, &[], &[true]).unwrap();
        assert_eq!(clause.render(&vocab), "x");
    }

    #[test]
    fn sampling_discards_tautologies_and_known_clauses() {
        let mut vocab = Vocabulary::new();
        let taut_source = example("x", "x", Label::Pos, &mut vocab);
        let known = Clause::parse("y", &mut vocab).unwrap();
        let theory = PossTheory::new(vec![vec![known]]).unwrap();
        let y_source = example("true", "y", Label::Pos, &mut vocab);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let candidates =
                sample_candidates(&[&taut_source, &y_source], &theory, 2, &mut rng);
            for c in &candidates {
                assert!(!c.is_tautology());
                assert!(!theory.contains_clause(c));
            }
        }
    }

    #[test]
    fn place_best_prefers_fewer_strata_then_shorter_clauses() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x | y", Label::Pos, &mut vocab)];
        let engine = QueryEngine::default();
        // both candidates reach zero error; the shorter one must win
        let long = Clause::parse("x | y", &mut vocab).unwrap();
        let short = Clause::parse("x", &mut vocab).unwrap();
        let (theory, chosen) = place_best(
            &PossTheory::empty(),
            &[long, short.clone()],
            &data,
            &engine,
            None,
            None,
        )
        .unwrap();
        assert_eq!(chosen, short);
        assert_eq!(theory.num_strata(), 1);
    }

    #[test]
    fn place_best_single_candidate_creates_stratum() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x", Label::Pos, &mut vocab)];
        let engine = QueryEngine::default();
        let c = Clause::parse("x", &mut vocab).unwrap();
        let (theory, _) =
            place_best(&PossTheory::empty(), &[c], &data, &engine, None, None).unwrap();
        assert_eq!(theory.num_strata(), 1);
        assert_eq!(engine.error_count(&theory, &data), 0);
    }

    fn example2_data(vocab: &mut Vocabulary) -> Vec<LabeledExample> {
        vec![
            example("penguin", "bird", Label::Pos, vocab),
            example("bird", "flies", Label::Pos, vocab),
            example("penguin", "!flies", Label::Pos, vocab),
            example("true", "bird", Label::Neg, vocab),
            example("bird", "penguin", Label::Neg, vocab),
        ]
    }

    #[test]
    fn place_best_reaches_worked_example_accuracy() {
        // two placement rounds over {flies, !penguin | !flies} rebuild the
        // published two-stratum optimum at accuracy 4/5
        let mut vocab = Vocabulary::new();
        let data = example2_data(&mut vocab);
        let engine = QueryEngine::default();
        let flies = Clause::parse("flies", &mut vocab).unwrap();
        let exc = Clause::parse("!penguin | !flies", &mut vocab).unwrap();
        let candidates = [flies, exc];
        let (step1, installed) =
            place_best(&PossTheory::empty(), &candidates, &data, &engine, None, None).unwrap();
        let rest: Vec<Clause> = candidates.iter().filter(|c| **c != installed).cloned().collect();
        let (step2, _) = place_best(&step1, &rest, &data, &engine, None, None).unwrap();
        assert_eq!(engine.error_count(&step2, &data), 1);
    }

    #[test]
    fn learner_matches_worked_example_floor() {
        // the fixed pool's optimum misclassifies one of five examples; the
        // greedy learner must do at least as well on the same data
        let mut vocab = Vocabulary::new();
        let data = example2_data(&mut vocab);
        let cfg = LearnConfig { iterations: 20, rng_seed: 7, ..Default::default() };
        let outcome = learn(&data, &cfg).unwrap();
        let final_error = outcome
            .iteration_errors
            .last()
            .copied()
            .unwrap_or(outcome.initial_error);
        assert!(final_error <= Ratio::new(1, 5));
    }

    #[test]
    fn minimize_drops_redundant_literal() {
        let mut vocab = Vocabulary::new();
        // dataset where the bird literal is redundant in the exception
        let data = vec![
            example("bird", "flies", Label::Pos, &mut vocab),
            example("bird & antarctic", "!flies", Label::Pos, &mut vocab),
        ];
        let engine = QueryEngine::default();
        let flies = Clause::parse("flies", &mut vocab).unwrap();
        let wide = Clause::parse("!bird | !antarctic | !flies", &mut vocab).unwrap();
        let t = PossTheory::new(vec![vec![flies], vec![wide.clone()]]).unwrap();
        let before = engine.error_count(&t, &data);
        let (minimized, shrunk) = minimize_clause(t, &wide, &data, &engine, None).unwrap();
        assert!(shrunk.len() < wide.len());
        assert!(engine.error_count(&minimized, &data) <= before);
    }

    #[test]
    fn minimize_keeps_unit_clause() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x", Label::Pos, &mut vocab)];
        let engine = QueryEngine::default();
        let unit = Clause::parse("x", &mut vocab).unwrap();
        let t = PossTheory::new(vec![vec![unit.clone()]]).unwrap();
        let (theory, kept) = minimize_clause(t.clone(), &unit, &data, &engine, None).unwrap();
        assert_eq!(theory, t);
        assert_eq!(kept, unit);
    }

    #[test]
    fn prune_removes_free_clauses_and_compacts() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x", Label::Pos, &mut vocab)];
        let engine = QueryEngine::default();
        let x = Clause::parse("x", &mut vocab).unwrap();
        let junk = Clause::parse("y | z", &mut vocab).unwrap();
        let t = PossTheory::new(vec![vec![junk], vec![x]]).unwrap();
        let pruned = prune_clauses(t, &data, &engine, None).unwrap();
        assert_eq!(pruned.num_strata(), 1);
        assert_eq!(pruned.num_clauses(), 1);
        assert_eq!(engine.error_count(&pruned, &data), 0);
    }

    #[test]
    fn single_positive_is_learned_immediately() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x", Label::Pos, &mut vocab)];
        let outcome = learn(&data, &LearnConfig { iterations: 5, ..Default::default() }).unwrap();
        assert_eq!(outcome.theory.evaluate(&data).unwrap().errors, 0);
    }

    #[test]
    fn separable_data_reaches_zero_error() {
        let mut vocab = Vocabulary::new();
        let data = example3_data(&mut vocab);
        for seed in 1..=5u64 {
            let cfg = LearnConfig { iterations: 50, rng_seed: seed, ..Default::default() };
            let outcome = learn(&data, &cfg).unwrap();
            let final_error = outcome.iteration_errors.last().copied().unwrap();
            assert_eq!(final_error, Ratio::new(0, 1), "seed {seed}");
            // monotone trace
            let mut prev = outcome.initial_error;
            for e in &outcome.iteration_errors {
                assert!(*e <= prev, "seed {seed}: error increased");
                prev = *e;
            }
        }
    }

    #[test]
    fn hard_constraints_are_preserved_exactly() {
        let mut vocab = Vocabulary::new();
        let hard = vec![Clause::parse("!fold | !raise", &mut vocab).unwrap()];
        let data = vec![example("strong_hand", "raise", Label::Pos, &mut vocab)];
        let cfg = LearnConfig {
            iterations: 10,
            hard_constraints: hard.clone(),
            ..Default::default()
        };
        let outcome = learn(&data, &cfg).unwrap();
        assert_eq!(outcome.theory.hard_stratum(), hard.as_slice());
    }

    #[test]
    fn worker_counts_agree_bytewise() {
        let mut vocab = Vocabulary::new();
        let data = example3_data(&mut vocab);
        let base = LearnConfig { iterations: 20, rng_seed: 2, ..Default::default() };
        let sequential = learn(&data, &base).unwrap();
        let parallel = learn(&data, &LearnConfig { worker_count: 4, ..base }).unwrap();
        assert_eq!(sequential.theory.render(&vocab), parallel.theory.render(&vocab));
        assert_eq!(sequential.iteration_errors, parallel.iteration_errors);
    }

    #[test]
    fn empty_dataset_is_rejected() {
        assert!(learn(&[], &LearnConfig::default()).is_err());
    }
}
