//! Brute-force MAP inference over weighted clause theories, and generation
//! of labeled default datasets from MAP entailments.
//!
//! An assignment's score is the sum of the weights of the clauses it
//! satisfies; the MAP models of some evidence are the maximum-score
//! assignments among those satisfying it. Only the ordering of scores
//! matters, so answers are invariant under positive weight scaling.

use rand::Rng;

use crate::logic::{Assignment, Clause, Literal, LiteralConjunction, Var, Vocabulary};
use crate::theory::{DefaultRule, Label, LabeledExample};
use crate::{Error, Result};

/// Relative tolerance for grouping maximal floating-point scores.
const SCORE_TIE_TOLERANCE: f64 = 1e-9;

/// Clauses with real-valued weights over a fixed vocabulary of at most 20
/// variables (exhaustive enumeration guard).
#[derive(Debug, Clone)]
pub struct WeightedClauseTheory {
    items: Vec<(Clause, f64)>,
    n_vars: usize,
}

impl WeightedClauseTheory {
    pub fn new(items: Vec<(Clause, f64)>, n_vars: usize) -> Result<Self> {
        if n_vars > 20 {
            return Err(Error::Guard(format!(
                "brute-force MAP inference limited to 20 variables, got {n_vars}"
            )));
        }
        for (c, w) in &items {
            if !w.is_finite() {
                return Err(Error::Invalid(format!("non-finite weight {w}")));
            }
            if let Some(max) = c.vars().map(|v| v.index()).max() {
                if max >= n_vars {
                    return Err(Error::Invalid("clause variable outside vocabulary".into()));
                }
            }
        }
        Ok(WeightedClauseTheory { items, n_vars })
    }

    pub fn items(&self) -> &[(Clause, f64)] {
        &self.items
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Copy with every weight multiplied by `c`.
    pub fn scaled(&self, c: f64) -> WeightedClauseTheory {
        WeightedClauseTheory {
            items: self.items.iter().map(|(cl, w)| (cl.clone(), w * c)).collect(),
            n_vars: self.n_vars,
        }
    }

    /// File format: `<real-weight>\t<clause>` per line, `#` comments.
    pub fn parse(text: &str, vocab: &mut Vocabulary) -> Result<Self> {
        let mut items = Vec::new();
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
            let weight: f64 = head
                .trim()
                .parse()
                .map_err(|_| at(format!("bad weight `{}`", head.trim())))?;
            let clause = Clause::parse(body, vocab).map_err(|e| at(e.to_string()))?;
            items.push((clause, weight));
        }
        WeightedClauseTheory::new(items, vocab.len())
    }

    pub fn render(&self, vocab: &Vocabulary) -> String {
        let mut out = String::new();
        for (clause, weight) in &self.items {
            out.push_str(&format!("{weight}\t{}\n", clause.render(vocab)));
        }
        out
    }
}

/// Evidence conjunction over distinct variables plus a single-literal
/// conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapQuery {
    pub evidence: LiteralConjunction,
    pub conclusion: Literal,
}

impl MapQuery {
    pub fn new(evidence: LiteralConjunction, conclusion: Literal) -> Result<Self> {
        if evidence.is_inconsistent() {
            return Err(Error::Invalid("evidence variables must be distinct".into()));
        }
        Ok(MapQuery { evidence, conclusion })
    }
}

/// Sum of the weights of the clauses satisfied by `w`.
pub fn score(m: &WeightedClauseTheory, w: &Assignment) -> f64 {
    m.items
        .iter()
        .filter(|(c, _)| w.satisfies_clause(c))
        .map(|(_, weight)| *weight)
        .sum()
}

/// All evidence-satisfying assignments of maximal score, by exhaustive
/// enumeration. Nonempty for consistent evidence.
pub fn map_models(m: &WeightedClauseTheory, evidence: &LiteralConjunction) -> Result<Vec<Assignment>> {
    if evidence.is_inconsistent() {
        return Err(Error::Invalid("inconsistent evidence".into()));
    }
    let mut best: Vec<(f64, Assignment)> = Vec::new();
    let mut max_score = f64::NEG_INFINITY;
    for a in Assignment::enumerate(m.n_vars) {
        if !a.satisfies_conjunction(evidence) {
            continue;
        }
        let s = score(m, &a);
        if s > max_score {
            max_score = s;
        }
        best.push((s, a));
    }
    let tolerance = SCORE_TIE_TOLERANCE * max_score.abs().max(1.0);
    Ok(best
        .into_iter()
        .filter(|(s, _)| *s >= max_score - tolerance)
        .map(|(_, a)| a)
        .collect())
}

/// True iff every MAP model of the evidence satisfies the conclusion.
pub fn map_entails(m: &WeightedClauseTheory, q: &MapQuery) -> Result<bool> {
    Ok(map_models(m, &q.evidence)?
        .iter()
        .all(|a| a.satisfies_literal(q.conclusion)))
}

/// Generates `n` labeled defaults: evidence is a uniform-random conjunction
/// of 1..=k literals over distinct variables, the conclusion a random
/// literal on a variable outside the evidence, labeled by MAP entailment.
pub fn generate_dataset(
    m: &WeightedClauseTheory,
    k: usize,
    n: usize,
    rng: &mut impl Rng,
) -> Result<Vec<LabeledExample>> {
    if k == 0 || n == 0 {
        return Err(Error::Invalid("k and n must be at least 1".into()));
    }
    if k >= m.n_vars {
        return Err(Error::Invalid(format!(
            "evidence width {k} leaves no conclusion variable among {}",
            m.n_vars
        )));
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let len = rng.gen_range(1..=k);
        let picked = rand::seq::index::sample(rng, m.n_vars, len);
        let evidence = LiteralConjunction::new(
            picked
                .iter()
                .map(|i| Literal::new(Var(i as u32), rng.gen_bool(0.5))),
        );
        let outside: Vec<usize> = (0..m.n_vars)
            .filter(|i| !evidence.vars().any(|v| v.index() == *i))
            .collect();
        let var = Var(outside[rng.gen_range(0..outside.len())] as u32);
        let conclusion = Literal::new(var, rng.gen_bool(0.5));
        let query = MapQuery::new(evidence.clone(), conclusion)?;
        let label = if map_entails(m, &query)? { Label::Pos } else { Label::Neg };
        out.push(LabeledExample::new(
            DefaultRule::new(evidence, Clause::unit(conclusion)),
            label,
        ));
    }
    Ok(out)
}
