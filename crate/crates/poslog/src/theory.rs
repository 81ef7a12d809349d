//! Stratified possibilistic theories and inconsistency-tolerant entailment.
//!
//! A theory is an ordered stratification: strata of clauses from lowest to
//! highest certainty, plus an optional protected hard stratum logically above
//! everything. Certainty weights are ordinal, so strata indices are the
//! internal representation; presentation weights `i/k` appear only in the
//! file format.
//!
//! The strict cut above level `j` keeps the strata with index greater than
//! `j` (plus the hard stratum). The inconsistency level is the lowest `j`
//! whose strict cut is satisfiable; entailment from that cut is the
//! inconsistency-tolerant consequence relation. Querying with evidence
//! inserts the evidence as a fresh topmost stratum below the hard one, so
//! hard constraints can never be drowned by evidence.

use std::fmt;
use std::hash::{Hash, Hasher};

use dashmap::DashMap;
use num_rational::Ratio;

use crate::logic::{Clause, CnfFormula, LiteralConjunction, Var, Vocabulary};
use crate::sat;
use crate::{Error, Result};

/// Classification label for a default rule: covered (+1) or not (−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Pos,
    Neg,
}

impl Label {
    pub fn from_covered(covered: bool) -> Self {
        if covered {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Pos => 1,
            Label::Neg => -1,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos => write!(f, "+"),
            Label::Neg => write!(f, "-"),
        }
    }
}

/// A default rule "if antecedent then typically consequent".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DefaultRule {
    pub antecedent: LiteralConjunction,
    pub consequent: Clause,
}

impl DefaultRule {
    pub fn new(antecedent: LiteralConjunction, consequent: Clause) -> Self {
        DefaultRule { antecedent, consequent }
    }

    /// The material-implication clause `¬antecedent ∨ consequent`.
    pub fn material_clause(&self) -> Clause {
        Clause::new(
            self.antecedent
                .literals()
                .iter()
                .map(|l| l.negated())
                .chain(self.consequent.literals().iter().copied()),
        )
    }

    pub fn render(&self, vocab: &Vocabulary) -> String {
        format!("{} ~> {}", self.antecedent.render(vocab), self.consequent.render(vocab))
    }
}

/// A default rule with a label and an optional contributor group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledExample {
    pub rule: DefaultRule,
    pub label: Label,
    pub group: Option<String>,
}

impl LabeledExample {
    pub fn new(rule: DefaultRule, label: Label) -> Self {
        LabeledExample { rule, label, group: None }
    }

    pub fn with_group(rule: DefaultRule, label: Label, group: impl Into<String>) -> Self {
        LabeledExample { rule, label, group: Some(group.into()) }
    }
}

/// Per-example predictions and the exact sample error rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub n: usize,
    pub errors: usize,
    pub sample_error: Ratio<u64>,
    pub predictions: Vec<Label>,
}

impl EvalReport {
    fn from_predictions(data: &[LabeledExample], predictions: Vec<Label>) -> Self {
        let errors = data
            .iter()
            .zip(&predictions)
            .filter(|(ex, p)| ex.label != **p)
            .count();
        EvalReport {
            n: data.len(),
            errors,
            sample_error: Ratio::new(errors as u64, data.len() as u64),
            predictions,
        }
    }

    pub fn accuracy(&self) -> Ratio<u64> {
        Ratio::new((self.n - self.errors) as u64, self.n as u64)
    }
}

/// Result of locating the inconsistency level of a stratified theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncResult {
    /// Lowest index whose strict cut is satisfiable (0 = fully consistent).
    pub level: usize,
    /// Number of strata the search ranged over.
    pub strata_searched: usize,
    /// True when even the hard stratum alone is unsatisfiable.
    pub hard_inconsistent: bool,
    /// Instrumented count of satisfiability calls; bounded by
    /// `ceil(log2(k+1)) + 1` for `k` strata.
    pub sat_calls: u32,
}

/// Outcome of an inconsistency-tolerant entailment query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOutcome {
    pub entailed: bool,
    pub inc: IncResult,
}

/// Optimization switches; both on by default. The naive configuration (both
/// off) is the reference semantics, and every answer must match it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOptions {
    /// Restrict final entailment checks to the clauses connected to the goal.
    pub relevance_filter: bool,
    /// Run unit propagation as a simplification pass before each search.
    pub unit_presimplify: bool,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions { relevance_filter: true, unit_presimplify: true }
    }
}

impl QueryOptions {
    pub fn naive() -> Self {
        QueryOptions { relevance_filter: false, unit_presimplify: false }
    }
}

/// An ordered stratification of clauses, lowest certainty first, with an
/// optional hard stratum above all learned levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PossTheory {
    strata: Vec<Vec<Clause>>,
    hard: Vec<Clause>,
}

impl PossTheory {
    /// Builds a theory from strata (lowest first). Strata are canonicalized;
    /// empty strata and clauses repeated across strata are rejected.
    pub fn new(strata: Vec<Vec<Clause>>) -> Result<Self> {
        Self::with_hard(strata, Vec::new())
    }

    pub fn with_hard(strata: Vec<Vec<Clause>>, hard: Vec<Clause>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut canonical = Vec::with_capacity(strata.len());
        for stratum in strata {
            let mut s: Vec<Clause> = stratum;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Invalid("empty stratum".into()));
            }
            for c in &s {
                if !seen.insert(c.clone()) {
                    return Err(Error::Invalid("clause repeated across strata".into()));
                }
            }
            canonical.push(s);
        }
        let mut hard = hard;
        hard.sort_unstable();
        hard.dedup();
        Ok(PossTheory { strata: canonical, hard })
    }

    pub fn empty() -> Self {
        PossTheory { strata: Vec::new(), hard: Vec::new() }
    }

    pub fn strata(&self) -> &[Vec<Clause>] {
        &self.strata
    }

    pub fn hard_stratum(&self) -> &[Clause] {
        &self.hard
    }

    pub fn num_strata(&self) -> usize {
        self.strata.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.strata.iter().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty() && self.hard.is_empty()
    }

    /// Presentation weight of stratum `i` (0-based): `(i+1)/k`.
    pub fn presentation_weight(&self, i: usize) -> f64 {
        (i as f64 + 1.0) / self.strata.len() as f64
    }

    pub fn contains_clause(&self, clause: &Clause) -> bool {
        self.strata.iter().any(|s| s.binary_search(clause).is_ok())
    }

    /// Clauses paired with their stratum index, lowest stratum first and
    /// canonical order within a stratum.
    pub fn clause_positions(&self) -> Vec<(usize, Clause)> {
        self.strata
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |c| (i, c.clone())))
            .collect()
    }

    /// The strict cut above level `j`: all strata with index > `j` (1-based
    /// counting, so `j = 0` keeps everything) plus the hard stratum.
    pub fn strict_cut(&self, j: usize) -> Result<CnfFormula> {
        if j > self.strata.len() {
            return Err(Error::Invalid(format!(
                "cut index {j} out of range for {} strata",
                self.strata.len()
            )));
        }
        let mut f = CnfFormula::empty();
        for stratum in &self.strata[j..] {
            f.extend(stratum.iter().cloned());
        }
        f.extend(self.hard.iter().cloned());
        Ok(f)
    }

    /// Lowest level whose strict cut is satisfiable, by binary search.
    pub fn inconsistency_level(&self) -> IncResult {
        let view = TheoryView { strata: self.strata.iter().map(|s| s.as_slice()).collect(), hard: &self.hard };
        view.inconsistency_level(QueryOptions::default())
    }

    pub fn inconsistency_level_with(&self, opts: QueryOptions) -> IncResult {
        let view = TheoryView { strata: self.strata.iter().map(|s| s.as_slice()).collect(), hard: &self.hard };
        view.inconsistency_level(opts)
    }

    /// Inconsistency-tolerant entailment with the evidence inserted as a new
    /// topmost certainty level below the hard stratum.
    pub fn poss_entails(&self, evidence: &LiteralConjunction, goal: &Clause) -> bool {
        self.query(evidence, goal, QueryOptions::default()).entailed
    }

    pub fn query(&self, evidence: &LiteralConjunction, goal: &Clause, opts: QueryOptions) -> QueryOutcome {
        let evidence_clauses = evidence.unit_clauses();
        self.query_general(&evidence_clauses, std::slice::from_ref(goal), opts)
    }

    /// Generalized covering entry point: CNF evidence and a CNF goal. The
    /// goal clauses must not mention auxiliary encoding variables.
    pub fn query_general(&self, evidence: &[Clause], goals: &[Clause], opts: QueryOptions) -> QueryOutcome {
        let mut strata: Vec<&[Clause]> = self.strata.iter().map(|s| s.as_slice()).collect();
        if !evidence.is_empty() {
            strata.push(evidence);
        }
        let view = TheoryView { strata, hard: &self.hard };
        view.query(goals, opts)
    }

    /// Covering per the learning-task definition: +1 iff the evidence-
    /// augmented theory possibilistically entails the consequent.
    pub fn covers(&self, rule: &DefaultRule) -> Label {
        Label::from_covered(self.poss_entails(&rule.antecedent, &rule.consequent))
    }

    /// Predicted labels and exact sample error over a dataset.
    pub fn evaluate(&self, data: &[LabeledExample]) -> Result<EvalReport> {
        if data.is_empty() {
            return Err(Error::Invalid("empty dataset".into()));
        }
        let predictions = data.iter().map(|ex| self.covers(&ex.rule)).collect();
        Ok(EvalReport::from_predictions(data, predictions))
    }

    /// Stable fingerprint of the canonical form, for cache keys.
    pub fn fingerprint(&self) -> (u64, u64) {
        let mut h1 = std::hash::DefaultHasher::new();
        let mut h2 = std::hash::DefaultHasher::new();
        h1.write_u8(0x51);
        h2.write_u8(0xa7);
        for stratum in &self.strata {
            h1.write_usize(stratum.len());
            h2.write_usize(stratum.len());
            for c in stratum {
                for l in c.literals() {
                    h1.write_u32(l.code());
                    h2.write_u32(l.code().rotate_left(13));
                }
                h1.write_u32(u32::MAX);
                h2.write_u32(u32::MAX);
            }
        }
        h1.write_usize(self.hard.len());
        h2.write_usize(self.hard.len());
        for c in &self.hard {
            for l in c.literals() {
                h1.write_u32(l.code());
                h2.write_u32(l.code().rotate_left(13));
            }
        }
        (h1.finish(), h2.finish())
    }

    // ------------------------------------------------------------------
    // Builders used by the learners. All preserve the strata invariants.
    // ------------------------------------------------------------------

    /// Copy with `clause` added to existing stratum `idx`.
    pub fn with_clause_in_stratum(&self, idx: usize, clause: Clause) -> PossTheory {
        let mut strata = self.strata.clone();
        strata[idx].push(clause);
        strata[idx].sort_unstable();
        strata[idx].dedup();
        PossTheory { strata, hard: self.hard.clone() }
    }

    /// Copy with a new singleton stratum inserted at position `idx`
    /// (0 = below everything, `num_strata()` = above everything).
    pub fn with_new_stratum(&self, idx: usize, clause: Clause) -> PossTheory {
        let mut strata = self.strata.clone();
        strata.insert(idx, vec![clause]);
        PossTheory { strata, hard: self.hard.clone() }
    }

    /// Copy without the given clause; empty strata are dropped and indices
    /// compacted. Returns the stratum index the clause occupied.
    pub fn without_clause(&self, clause: &Clause) -> Option<(PossTheory, usize)> {
        let idx = self.strata.iter().position(|s| s.binary_search(clause).is_ok())?;
        let mut strata = self.strata.clone();
        strata[idx].retain(|c| c != clause);
        if strata[idx].is_empty() {
            strata.remove(idx);
        }
        Some((PossTheory { strata, hard: self.hard.clone() }, idx))
    }

    /// Copy with `old` replaced by `new` inside its stratum.
    pub fn with_replaced_clause(&self, old: &Clause, new: Clause) -> Option<PossTheory> {
        let idx = self.strata.iter().position(|s| s.binary_search(old).is_ok())?;
        let mut strata = self.strata.clone();
        strata[idx].retain(|c| c != old);
        strata[idx].push(new);
        strata[idx].sort_unstable();
        strata[idx].dedup();
        Some(PossTheory { strata, hard: self.hard.clone() })
    }

    // ------------------------------------------------------------------
    // File format: `<weight>\t<clause>` with weight in (0,1]; equal weights
    // share a stratum; `HARD\t<clause>` populates the hard stratum; `#`
    // starts a comment line.
    // ------------------------------------------------------------------

    pub fn parse(text: &str, vocab: &mut Vocabulary) -> Result<Self> {
        let mut weighted: Vec<(f64, Clause)> = Vec::new();
        let mut hard = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let at = |msg: String| Error::Parse { line: lineno + 1, msg };
            let (head, body) = line
                .split_once('\t')
                .ok_or_else(|| at("expected `<weight>\\t<clause>`".into()))?;
            let clause = Clause::parse(body, vocab).map_err(|e| at(e.to_string()))?;
            if head.trim() == "HARD" {
                hard.push(clause);
                continue;
            }
            let weight: f64 = head
                .trim()
                .parse()
                .map_err(|_| at(format!("bad weight `{}`", head.trim())))?;
            if !(weight > 0.0 && weight <= 1.0) {
                return Err(at(format!("weight {weight} outside (0, 1]")));
            }
            weighted.push((weight, clause));
        }
        weighted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut strata: Vec<Vec<Clause>> = Vec::new();
        let mut last_weight = None;
        for (w, c) in weighted {
            if last_weight != Some(w) {
                strata.push(Vec::new());
                last_weight = Some(w);
            }
            strata.last_mut().unwrap().push(c);
        }
        PossTheory::with_hard(strata, hard)
    }

    /// Serializes strata ascending with presentation weights `i/k`, clauses
    /// lexicographic within each stratum, hard constraints last.
    pub fn render(&self, vocab: &Vocabulary) -> String {
        let mut out = String::new();
        let k = self.strata.len();
        for (i, stratum) in self.strata.iter().enumerate() {
            let weight = (i + 1) as f64 / k as f64;
            let mut lines: Vec<String> = stratum.iter().map(|c| c.render(vocab)).collect();
            lines.sort();
            for l in lines {
                out.push_str(&format!("{weight}\t{l}\n"));
            }
        }
        let mut hard_lines: Vec<String> = self.hard.iter().map(|c| c.render(vocab)).collect();
        hard_lines.sort();
        for l in hard_lines {
            out.push_str(&format!("HARD\t{l}\n"));
        }
        out
    }
}

/// Borrowed view uniting a theory's own strata with a query stratum.
struct TheoryView<'a> {
    strata: Vec<&'a [Clause]>,
    hard: &'a [Clause],
}

impl<'a> TheoryView<'a> {
    fn cut_refs(&self, j: usize) -> Vec<&'a Clause> {
        self.strata[j..]
            .iter()
            .flat_map(|s| s.iter())
            .chain(self.hard.iter())
            .collect()
    }

    fn sat_at(&self, j: usize, opts: QueryOptions) -> bool {
        let refs = self.cut_refs(j);
        if opts.unit_presimplify {
            sat::sat_presimplified(refs.into_iter(), &[])
        } else {
            sat::sat(refs.into_iter(), &[])
        }
    }

    /// Binary search for the lowest satisfiable cut. Satisfiability is
    /// monotone in the cut index (cuts shrink upward), so at most
    /// `ceil(log2(k+1)) + 1` satisfiability calls are needed.
    fn inconsistency_level(&self, opts: QueryOptions) -> IncResult {
        let k = self.strata.len();
        let mut lo = 0usize;
        let mut hi = k;
        let mut sat_calls = 0u32;
        let mut verified_true: Option<usize> = None;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            sat_calls += 1;
            if self.sat_at(mid, opts) {
                verified_true = Some(mid);
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let mut hard_inconsistent = false;
        if verified_true != Some(lo) {
            sat_calls += 1;
            if !self.sat_at(lo, opts) {
                debug_assert_eq!(lo, k, "satisfiability must be monotone in the cut index");
                hard_inconsistent = true;
            }
        }
        IncResult { level: lo, strata_searched: k, hard_inconsistent, sat_calls }
    }

    fn query(&self, goals: &[Clause], opts: QueryOptions) -> QueryOutcome {
        let inc = self.inconsistency_level(opts);
        if inc.hard_inconsistent {
            // an unsatisfiable cut entails everything
            return QueryOutcome { entailed: true, inc };
        }
        let cut = self.cut_refs(inc.level);
        let entailed = goals.iter().all(|g| entails_cut(&cut, g, opts));
        QueryOutcome { entailed, inc }
    }
}

/// Entailment of a single clause from a satisfiable cut.
fn entails_cut(cut: &[&Clause], goal: &Clause, opts: QueryOptions) -> bool {
    if goal.is_tautology() {
        return true;
    }
    let negation: Vec<Clause> = goal.negation_units().collect();
    let check = |clauses: &[&Clause]| {
        if opts.unit_presimplify {
            !sat::sat_presimplified(clauses.iter().copied(), &negation)
        } else {
            !sat::sat(clauses.iter().copied(), &negation)
        }
    };
    if opts.relevance_filter {
        let seeds: Vec<Var> = goal.vars().collect();
        let relevant = sat::relevant_subset(cut, &seeds);
        check(&relevant)
    } else {
        check(cut)
    }
}

/// Cache key: canonical theory fingerprint plus the query's literals.
#[derive(PartialEq, Eq, Hash)]
struct CacheKey {
    theory: (u64, u64),
    evidence: Box<[u32]>,
    goal: Box<[u32]>,
}

/// Memoizing query front end, safe for concurrent use. Answers are
/// deterministic and independent of interleaving; the cache affects only
/// speed, never values.
pub struct QueryEngine {
    opts: QueryOptions,
    cache: DashMap<CacheKey, bool>,
    capacity: usize,
}

impl Default for QueryEngine {
    fn default() -> Self {
        Self::new(QueryOptions::default())
    }
}

impl QueryEngine {
    pub fn new(opts: QueryOptions) -> Self {
        QueryEngine { opts, cache: DashMap::new(), capacity: 1 << 20 }
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn covers(&self, theory: &PossTheory, rule: &DefaultRule) -> Label {
        self.covers_keyed(theory, theory.fingerprint(), rule)
    }

    fn covers_keyed(&self, theory: &PossTheory, fp: (u64, u64), rule: &DefaultRule) -> Label {
        let key = CacheKey {
            theory: fp,
            evidence: rule.antecedent.literals().iter().map(|l| l.code()).collect(),
            goal: rule.consequent.literals().iter().map(|l| l.code()).collect(),
        };
        if let Some(hit) = self.cache.get(&key) {
            return Label::from_covered(*hit);
        }
        let covered = theory
            .query(&rule.antecedent, &rule.consequent, self.opts)
            .entailed;
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        self.cache.insert(key, covered);
        Label::from_covered(covered)
    }

    pub fn evaluate(&self, theory: &PossTheory, data: &[LabeledExample]) -> Result<EvalReport> {
        if data.is_empty() {
            return Err(Error::Invalid("empty dataset".into()));
        }
        let fp = theory.fingerprint();
        let predictions = data
            .iter()
            .map(|ex| self.covers_keyed(theory, fp, &ex.rule))
            .collect();
        Ok(EvalReport::from_predictions(data, predictions))
    }

    /// Number of misclassified examples; the learners' inner-loop metric.
    pub fn error_count(&self, theory: &PossTheory, data: &[LabeledExample]) -> usize {
        let fp = theory.fingerprint();
        data.iter()
            .filter(|ex| self.covers_keyed(theory, fp, &ex.rule) != ex.label)
            .count()
    }
}

/// Groups clauses by equal weight into ascending strata; used by parsers that
/// accept arbitrary weight values.
pub fn strata_from_weighted(weighted: &[(f64, Clause)]) -> Vec<Vec<Clause>> {
    let mut sorted: Vec<(f64, Clause)> = weighted.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let mut strata: Vec<Vec<Clause>> = Vec::new();
    let mut last: Option<f64> = None;
    for (w, c) in sorted {
        if last != Some(w) {
            strata.push(Vec::new());
            last = Some(w);
        }
        strata.last_mut().unwrap().push(c);
    }
    strata
}

/// Convenience used across tests and examples: theory from clause texts.
pub fn theory_from_texts(strata: &[&[&str]], vocab: &mut Vocabulary) -> Result<PossTheory> {
    let mut out = Vec::new();
    for level in strata {
        let mut s = Vec::new();
        for text in *level {
            s.push(Clause::parse(text, vocab)?);
        }
        out.push(s);
    }
    PossTheory::new(out)
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<QueryEngine>();
    check::<PossTheory>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Literal;
    use proptest::prelude::*;

    fn example2(vocab: &mut Vocabulary) -> (PossTheory, Vec<LabeledExample>) {
        // T** = {(flies, 0.5), (!penguin | !flies, 1)}
        let theory = theory_from_texts(&[&["flies"], &["!penguin | !flies"]], vocab).unwrap();
        let data = vec![
            example("penguin", "bird", Label::Pos, vocab),
            example("bird", "flies", Label::Pos, vocab),
            example("penguin", "!flies", Label::Pos, vocab),
            example("true", "bird", Label::Neg, vocab),
            example("bird", "penguin", Label::Neg, vocab),
        ];
        (theory, data)
    }

    fn example(ant: &str, cons: &str, label: Label, vocab: &mut Vocabulary) -> LabeledExample {
        LabeledExample::new(
            DefaultRule::new(
                LiteralConjunction::parse(ant, vocab).unwrap(),
                Clause::parse(cons, vocab).unwrap(),
            ),
            label,
        )
    }

    #[test]
    fn strict_cut_drops_low_strata() {
        let mut vocab = Vocabulary::new();
        let t = theory_from_texts(&[&["flies"], &["!p | !f"]], &mut vocab).unwrap();
        let cut = t.strict_cut(1).unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(cut.clauses()[0].render(&vocab), "!f | !p");
        assert!(t.strict_cut(2).unwrap().is_empty());
        assert!(t.strict_cut(3).is_err());
        // four-strata separating stratification: cut above the lowest level
        let mut vocab = Vocabulary::new();
        let h = theory_from_texts(&[&["!x"], &["!x | a"], &["!y"], &["!y | b"]], &mut vocab).unwrap();
        let cut = h.strict_cut(1).unwrap();
        assert_eq!(cut.len(), 3);
    }

    #[test]
    fn cut_antitonicity() {
        let mut vocab = Vocabulary::new();
        let t = theory_from_texts(&[&["a"], &["b"], &["c"], &["d"]], &mut vocab).unwrap();
        for j1 in 0..4 {
            for j2 in (j1 + 1)..=4 {
                let big = t.strict_cut(j1).unwrap();
                let small = t.strict_cut(j2).unwrap();
                for c in small.clauses() {
                    assert!(big.clauses().contains(c));
                }
            }
        }
    }

    #[test]
    fn inconsistency_level_basics() {
        let mut vocab = Vocabulary::new();
        let t = theory_from_texts(&[&["x"]], &mut vocab).unwrap();
        assert_eq!(t.inconsistency_level().level, 0);

        let t = theory_from_texts(&[&["x"], &["!x"]], &mut vocab).unwrap();
        let inc = t.inconsistency_level();
        assert_eq!(inc.level, 1);
        assert!(!inc.hard_inconsistent);
    }

    #[test]
    fn inconsistency_level_with_evidence_stratum() {
        // T** plus penguin evidence: the cut above `flies` is consistent
        let mut vocab = Vocabulary::new();
        let (t, _) = example2(&mut vocab);
        let penguin = LiteralConjunction::parse("penguin", &mut vocab).unwrap();
        let goal = Clause::parse("!flies", &mut vocab).unwrap();
        let outcome = t.query(&penguin, &goal, QueryOptions::default());
        assert_eq!(outcome.inc.level, 1);
        assert!(outcome.entailed);
    }

    #[test]
    fn hard_inconsistent_theory_is_flagged() {
        let mut vocab = Vocabulary::new();
        let x = Clause::parse("x", &mut vocab).unwrap();
        let nx = Clause::parse("!x", &mut vocab).unwrap();
        let t = PossTheory::with_hard(vec![], vec![x, nx]).unwrap();
        let inc = t.inconsistency_level();
        assert!(inc.hard_inconsistent);
        assert_eq!(inc.level, 0);
    }

    #[test]
    fn sat_call_budget_holds() {
        let mut vocab = Vocabulary::new();
        let strata: Vec<Vec<Clause>> = (0..13)
            .map(|i| vec![Clause::parse(&format!("s{i}"), &mut vocab).unwrap()])
            .collect();
        let t = PossTheory::new(strata).unwrap();
        let inc = t.inconsistency_level();
        let k = inc.strata_searched as f64;
        let bound = ((k + 1.0).log2().ceil() as u32) + 1;
        assert!(inc.sat_calls <= bound, "{} > {}", inc.sat_calls, bound);
    }

    #[test]
    fn poss_entails_drowns_lower_strata() {
        let mut vocab = Vocabulary::new();
        let (t, _) = example2(&mut vocab);
        let penguin = LiteralConjunction::parse("penguin", &mut vocab).unwrap();
        let not_flies = Clause::parse("!flies", &mut vocab).unwrap();
        let bird = Clause::parse("bird", &mut vocab).unwrap();
        assert!(t.poss_entails(&penguin, &not_flies));
        assert!(!t.poss_entails(&penguin, &bird));
    }

    #[test]
    fn four_strata_example_rejects_joint_evidence() {
        let mut vocab = Vocabulary::new();
        let h = theory_from_texts(&[&["!x"], &["!x | a"], &["!y"], &["!y | b"]], &mut vocab).unwrap();
        let xy = LiteralConjunction::parse("x & y", &mut vocab).unwrap();
        let a = Clause::parse("a", &mut vocab).unwrap();
        assert!(!h.poss_entails(&xy, &a));
        // but the single-antecedent defaults are entailed
        let x = LiteralConjunction::parse("x", &mut vocab).unwrap();
        assert!(h.poss_entails(&x, &a));
    }

    #[test]
    fn empty_theory_entails_tautologies_only() {
        let mut vocab = Vocabulary::new();
        let t = PossTheory::empty();
        let top = LiteralConjunction::top();
        let taut = Clause::parse("x | !x", &mut vocab).unwrap();
        let x = Clause::parse("x", &mut vocab).unwrap();
        assert!(t.poss_entails(&top, &taut));
        assert!(!t.poss_entails(&top, &x));
    }

    #[test]
    fn inconsistent_evidence_covers_only_hard_consequences() {
        let mut vocab = Vocabulary::new();
        let t = theory_from_texts(&[&["a"]], &mut vocab).unwrap();
        let bad = LiteralConjunction::parse("x & !x", &mut vocab).unwrap();
        let a = Clause::parse("a", &mut vocab).unwrap();
        let taut = Clause::parse("a | !a", &mut vocab).unwrap();
        assert!(!t.poss_entails(&bad, &a));
        assert!(t.poss_entails(&bad, &taut));
    }

    #[test]
    fn covering_matches_worked_example() {
        let mut vocab = Vocabulary::new();
        let (t, data) = example2(&mut vocab);
        let report = t.evaluate(&data).unwrap();
        assert_eq!(report.errors, 1);
        assert_eq!(report.sample_error, Ratio::new(1, 5));
        // the single misclassification is penguin ~> bird
        assert_eq!(report.predictions[0], Label::Neg);
        for (i, p) in report.predictions.iter().enumerate().skip(1) {
            assert_eq!(*p, data[i].label);
        }
    }

    #[test]
    fn separating_stratification_has_zero_error() {
        let mut vocab = Vocabulary::new();
        let h = theory_from_texts(&[&["!x"], &["!x | a"], &["!y"], &["!y | b"]], &mut vocab).unwrap();
        let data = vec![
            example("true", "!x", Label::Pos, &mut vocab),
            example("true", "!y", Label::Pos, &mut vocab),
            example("x", "a", Label::Pos, &mut vocab),
            example("y", "b", Label::Pos, &mut vocab),
            example("x & y", "a", Label::Neg, &mut vocab),
        ];
        let report = h.evaluate(&data).unwrap();
        assert_eq!(report.errors, 0);
    }

    #[test]
    fn empty_theory_scores_negative_example_correctly() {
        let mut vocab = Vocabulary::new();
        let data = vec![example("true", "x", Label::Neg, &mut vocab)];
        let report = PossTheory::empty().evaluate(&data).unwrap();
        assert_eq!(report.errors, 0);
    }

    #[test]
    fn hard_constraints_survive_evidence() {
        let mut vocab = Vocabulary::new();
        let fold_raise = Clause::parse("!fold | !raise", &mut vocab).unwrap();
        let t = PossTheory::with_hard(
            vec![vec![Clause::parse("fold", &mut vocab).unwrap()]],
            vec![fold_raise],
        )
        .unwrap();
        let raise = LiteralConjunction::parse("raise", &mut vocab).unwrap();
        let not_fold = Clause::parse("!fold", &mut vocab).unwrap();
        assert!(t.poss_entails(&raise, &not_fold));
    }

    #[test]
    fn file_format_round_trip() {
        let mut vocab = Vocabulary::new();
        let text = "# worked example\n0.5\tflies\n1\t!flies | !penguin\nHARD\t!fold | !raise\n";
        let t = PossTheory::parse(text, &mut vocab).unwrap();
        assert_eq!(t.num_strata(), 2);
        assert_eq!(t.hard_stratum().len(), 1);
        let rendered = t.render(&vocab);
        let mut vocab2 = Vocabulary::new();
        let t2 = PossTheory::parse(&rendered, &mut vocab2).unwrap();
        assert_eq!(t2.render(&vocab2), rendered);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let mut vocab = Vocabulary::new();
        let err = PossTheory::parse("0.5\tx\nbogus line\n", &mut vocab).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = PossTheory::parse("1.5\tx\n", &mut vocab).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn ordinal_weights_leave_covering_unchanged() {
        let mut v1 = Vocabulary::new();
        let mut v2 = Vocabulary::new();
        let a = PossTheory::parse("0.1\tflies\n0.4\t!flies | !penguin\n", &mut v1).unwrap();
        let b = PossTheory::parse("0.5\tflies\n1\t!flies | !penguin\n", &mut v2).unwrap();
        // identical interning order makes the theories directly comparable
        assert_eq!(a, b);
    }

    #[test]
    fn query_cache_returns_consistent_answers() {
        let mut vocab = Vocabulary::new();
        let (t, data) = example2(&mut vocab);
        let engine = QueryEngine::default();
        let first = engine.evaluate(&t, &data).unwrap();
        let second = engine.evaluate(&t, &data).unwrap();
        assert_eq!(first, second);
        assert!(engine.cache_len() > 0);
        assert_eq!(first.errors, t.evaluate(&data).unwrap().errors);
    }

    #[test]
    fn drowning_irrelevance() {
        let mut vocab = Vocabulary::new();
        let (t, _) = example2(&mut vocab);
        let penguin = LiteralConjunction::parse("penguin", &mut vocab).unwrap();
        let goal = Clause::parse("!flies", &mut vocab).unwrap();
        let outcome = t.query(&penguin, &goal, QueryOptions::default());
        // delete every stratum at or below the computed inconsistency level
        let remaining: Vec<Vec<Clause>> = t.strata()[outcome.inc.level..].to_vec();
        let trimmed = PossTheory::new(remaining).unwrap();
        assert_eq!(trimmed.poss_entails(&penguin, &goal), outcome.entailed);
    }

    fn arb_theory_and_query() -> impl Strategy<Value = (PossTheory, LiteralConjunction, Clause)> {
        let lit = (0u32..8, any::<bool>()).prop_map(|(v, pos)| Literal::new(Var(v), pos));
        let clause = prop::collection::vec(lit.clone(), 1..=3).prop_map(Clause::new);
        let strata = prop::collection::vec(prop::collection::vec(clause.clone(), 1..=2), 0..=5);
        let evidence = prop::collection::vec(lit.clone(), 0..=2).prop_map(LiteralConjunction::new);
        let goal = prop::collection::vec(lit, 1..=2).prop_map(Clause::new);
        (strata, evidence, goal).prop_filter_map("valid theory", |(strata, e, g)| {
            // dedup clauses across strata to satisfy the invariant
            let mut seen = std::collections::HashSet::new();
            let mut cleaned = Vec::new();
            for s in strata {
                let fresh: Vec<Clause> = s.into_iter().filter(|c| seen.insert(c.clone())).collect();
                if !fresh.is_empty() {
                    cleaned.push(fresh);
                }
            }
            PossTheory::new(cleaned).ok().map(|t| (t, e, g))
        })
    }

    proptest! {
        /// Optimized query paths must agree with the naive computation.
        #[test]
        fn optimization_equivalence((t, evidence, goal) in arb_theory_and_query()) {
            let naive = t.query(&evidence, &goal, QueryOptions::naive());
            let optimized = t.query(&evidence, &goal, QueryOptions::default());
            prop_assert_eq!(naive.entailed, optimized.entailed);
            prop_assert_eq!(naive.inc.level, optimized.inc.level);
        }

        /// Linear-scan reference for the inconsistency level, plus the
        /// binary-search call budget.
        #[test]
        fn inconsistency_level_matches_linear_scan((t, evidence, _goal) in arb_theory_and_query()) {
            prop_assume!(t.num_strata() <= 6);
            let evidence_clauses = evidence.unit_clauses();
            let mut strata: Vec<Vec<Clause>> = t.strata().to_vec();
            if !evidence_clauses.is_empty() {
                strata.push(evidence_clauses.clone());
            }
            let k = strata.len();
            let mut expected = None;
            for j in 0..=k {
                let refs: Vec<&Clause> = strata[j..].iter().flatten().chain(t.hard_stratum()).collect();
                if crate::sat::sat(refs.into_iter(), &[]) {
                    expected = Some(j);
                    break;
                }
            }
            let goal = Clause::empty();
            let outcome = t.query_general(&evidence_clauses, std::slice::from_ref(&goal), QueryOptions::default());
            prop_assert_eq!(outcome.inc.level, expected.unwrap_or(k));
            let bound = (((k + 1) as f64).log2().ceil() as u32) + 1;
            prop_assert!(outcome.inc.sat_calls <= bound);
        }
    }
}
