//! Dataset files, annotator-aware splitting, and negative-example synthesis.
//!
//! Line grammar, one example per line:
//!
//! ```text
//! <antecedent> ~> <consequent> ; <label> [; group=<id>]
//! ```
//!
//! with antecedent `true` or `lit (& lit)*`, consequent `lit (| lit)*`,
//! label `+` or `-`, and `#` starting a comment line. Datasets are multisets;
//! duplicates are preserved.

use std::collections::BTreeMap;

use rand::Rng;

use crate::logic::{Clause, LiteralConjunction, Var, Vocabulary};
use crate::theory::{DefaultRule, Label, LabeledExample};
use crate::{Error, Result};

/// Labeled examples plus the vocabulary they parse against.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub examples: Vec<LabeledExample>,
    pub vocab: Vocabulary,
    pub metadata: BTreeMap<String, String>,
}

impl Dataset {
    pub fn new(examples: Vec<LabeledExample>, vocab: Vocabulary) -> Self {
        Dataset { examples, vocab, metadata: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn positives(&self) -> Vec<DefaultRule> {
        self.examples
            .iter()
            .filter(|e| e.label == Label::Pos)
            .map(|e| e.rule.clone())
            .collect()
    }

    pub fn negatives(&self) -> Vec<DefaultRule> {
        self.examples
            .iter()
            .filter(|e| e.label == Label::Neg)
            .map(|e| e.rule.clone())
            .collect()
    }

    /// Variables of the declared vocabulary (auxiliaries excluded).
    pub fn vars(&self) -> Vec<Var> {
        self.vocab.user_vars()
    }
}

/// Parses a dataset with a fresh vocabulary.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut vocab = Vocabulary::new();
    let examples = parse_examples(text, &mut vocab)?;
    Ok(Dataset::new(examples, vocab))
}

/// Parses examples against an existing vocabulary.
pub fn parse_examples(text: &str, vocab: &mut Vocabulary) -> Result<Vec<LabeledExample>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_example_line(trimmed, vocab).map_err(|e| match e {
            Error::Parse { msg, .. } | Error::Invalid(msg) => {
                Error::Parse { line: lineno + 1, msg }
            }
            other => other,
        })?);
    }
    Ok(out)
}

/// Parses a bare rule `antecedent ~> consequent` (no label).
pub fn parse_rule(text: &str, vocab: &mut Vocabulary) -> Result<DefaultRule> {
    let (ant, cons) = text
        .split_once("~>")
        .ok_or_else(|| Error::Invalid("expected `antecedent ~> consequent`".into()))?;
    let antecedent = LiteralConjunction::parse(ant, vocab)?;
    let consequent_text = cons.trim();
    if consequent_text.is_empty() {
        return Err(Error::Invalid("empty consequent".into()));
    }
    let consequent = Clause::parse(consequent_text, vocab)?;
    Ok(DefaultRule::new(antecedent, consequent))
}

fn parse_example_line(line: &str, vocab: &mut Vocabulary) -> Result<LabeledExample> {
    let mut fields = line.split(';');
    let rule_text = fields.next().unwrap_or("");
    let rule = parse_rule(rule_text, vocab)?;
    let label_text = fields
        .next()
        .ok_or_else(|| Error::Invalid("missing label field".into()))?
        .trim();
    let label = match label_text {
        "+" => Label::Pos,
        "-" => Label::Neg,
        other => return Err(Error::Invalid(format!("unknown label `{other}`"))),
    };
    let mut group = None;
    for extra in fields {
        let extra = extra.trim();
        if let Some(id) = extra.strip_prefix("group=") {
            if id.is_empty() {
                return Err(Error::Invalid("empty group id".into()));
            }
            group = Some(id.to_string());
        } else if !extra.is_empty() {
            return Err(Error::Invalid(format!("unexpected field `{extra}`")));
        }
    }
    Ok(LabeledExample { rule, label, group })
}

/// Canonical serialization: sorted literal order inside antecedents and
/// consequents, one example per line, UTF-8 with LF terminators.
pub fn render_dataset(examples: &[LabeledExample], vocab: &Vocabulary) -> String {
    let mut out = String::new();
    for ex in examples {
        out.push_str(&render_example(ex, vocab));
        out.push('\n');
    }
    out
}

pub fn render_example(ex: &LabeledExample, vocab: &Vocabulary) -> String {
    let mut line = format!("{} ; {}", ex.rule.render(vocab), ex.label);
    if let Some(g) = &ex.group {
        line.push_str(&format!(" ; group={g}"));
    }
    line
}

/// Splits wholly by contributor group: the test side receives the smallest
/// set of groups whose total example count reaches `test_fraction` of the
/// data (ties resolved through an rng-shuffled group order). Both sides stay
/// nonempty; every example must carry a group.
pub fn split_by_group(
    d: &Dataset,
    test_fraction: f64,
    rng: &mut impl Rng,
) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Invalid("test_fraction must lie strictly between 0 and 1".into()));
    }
    if d.is_empty() {
        return Err(Error::Invalid("empty dataset".into()));
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for ex in &d.examples {
        let group = ex
            .group
            .as_deref()
            .ok_or_else(|| Error::Invalid("example without a group".into()))?;
        *counts.entry(group).or_default() += 1;
    }
    let mut groups: Vec<(&str, usize)> = counts.into_iter().collect();
    // rng decides among minimum-count solutions by reordering the groups
    for i in (1..groups.len()).rev() {
        groups.swap(i, rng.gen_range(0..=i));
    }

    let total: usize = d.len();
    let threshold = test_fraction * total as f64;

    // subset-sum table over example counts; parent pointers reconstruct the
    // chosen group set for the smallest reachable sum >= threshold
    let mut reachable: Vec<Option<(usize, usize)>> = vec![None; total + 1]; // (group idx, prev sum)
    let mut seen = vec![false; total + 1];
    seen[0] = true;
    for (gi, (_, count)) in groups.iter().enumerate() {
        for sum in (0..=total - count).rev() {
            if seen[sum] && !seen[sum + count] {
                seen[sum + count] = true;
                reachable[sum + count] = Some((gi, sum));
            }
        }
    }
    let mut chosen_sum = None;
    for sum in 0..=total {
        if seen[sum] && sum as f64 >= threshold {
            chosen_sum = Some(sum);
            break;
        }
    }
    let chosen_sum = chosen_sum.expect("the full dataset always reaches the threshold");
    if chosen_sum == total {
        return Err(Error::Invalid(
            "cannot split: the smallest qualifying group set is the whole dataset".into(),
        ));
    }
    let mut test_groups = std::collections::HashSet::new();
    let mut cursor = chosen_sum;
    while cursor > 0 {
        let (gi, prev) = reachable[cursor].expect("reconstruction follows reachable sums");
        test_groups.insert(groups[gi].0.to_string());
        cursor = prev;
    }

    let (test, train): (Vec<LabeledExample>, Vec<LabeledExample>) = d
        .examples
        .iter()
        .cloned()
        .partition(|ex| test_groups.contains(ex.group.as_deref().unwrap()));
    debug_assert_eq!(test.len(), chosen_sum);
    Ok((
        Dataset::new(train, d.vocab.clone()),
        Dataset::new(test, d.vocab.clone()),
    ))
}

/// For each positive `α ~> β`, emits `(α ~> β', -1)` with `β'` uniform over
/// the pool minus `β`; groups are inherited.
pub fn synthesize_negatives(
    positives: &Dataset,
    consequent_pool: &[Clause],
    rng: &mut impl Rng,
) -> Result<Dataset> {
    if consequent_pool.len() < 2 {
        return Err(Error::Invalid("consequent pool needs at least 2 clauses".into()));
    }
    let mut out = Vec::new();
    for ex in positives.examples.iter().filter(|e| e.label == Label::Pos) {
        let choices: Vec<&Clause> = consequent_pool
            .iter()
            .filter(|c| **c != ex.rule.consequent)
            .collect();
        if choices.is_empty() {
            return Err(Error::Invalid("consequent pool too small for this example".into()));
        }
        let replacement = choices[rng.gen_range(0..choices.len())].clone();
        out.push(LabeledExample {
            rule: DefaultRule::new(ex.rule.antecedent.clone(), replacement),
            label: Label::Neg,
            group: ex.group.clone(),
        });
    }
    Ok(Dataset::new(out, positives.vocab.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_worked_example_lines() {
        let d = parse_dataset("bird & antarctic ~> !flies ; +\ntrue ~> bird ; -\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.examples[0].label, Label::Pos);
        assert_eq!(d.examples[0].rule.render(&d.vocab), "antarctic & bird ~> !flies");
        assert_eq!(d.examples[1].label, Label::Neg);
        assert!(d.examples[1].rule.antecedent.is_empty());
    }

    #[test]
    fn parse_groups_and_comments() {
        let text = "# poker annotators\nstrong ~> raise ; + ; group=a7\n\nweak ~> fold ; + ; group=b2\n";
        let d = parse_dataset(text).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.examples[0].group.as_deref(), Some("a7"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_dataset("x ~> y ; +\nx ~> y ; ?\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_dataset("x ~> ; +\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_dataset("x y ; +\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn round_trip_on_canonical_text() {
        let text = "antarctic & bird ~> !flies ; +\ntrue ~> bird ; - ; group=g1\n";
        let d = parse_dataset(text).unwrap();
        assert_eq!(render_dataset(&d.examples, &d.vocab), text);
    }

    #[test]
    fn split_assigns_whole_groups() {
        // 2 groups of sizes 8 and 2 at fraction 0.2: the size-2 group is the
        // smallest set reaching the threshold
        let mut lines = String::new();
        for i in 0..8 {
            lines.push_str(&format!("a{i} ~> out ; + ; group=big\n"));
        }
        for i in 0..2 {
            lines.push_str(&format!("b{i} ~> out ; + ; group=small\n"));
        }
        let d = parse_dataset(&lines).unwrap();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (train, test) = split_by_group(&d, 0.2, &mut rng).unwrap();
            assert_eq!(test.len(), 2);
            assert_eq!(train.len(), 8);
            assert!(test.examples.iter().all(|e| e.group.as_deref() == Some("small")));
            // group disjointness
            let train_groups: std::collections::HashSet<_> =
                train.examples.iter().map(|e| e.group.clone()).collect();
            let test_groups: std::collections::HashSet<_> =
                test.examples.iter().map(|e| e.group.clone()).collect();
            assert!(train_groups.is_disjoint(&test_groups));
        }
    }

    #[test]
    fn single_group_cannot_split() {
        let d = parse_dataset("x ~> y ; + ; group=only\nz ~> y ; + ; group=only\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(split_by_group(&d, 0.2, &mut rng).is_err());
    }

    #[test]
    fn split_requires_groups_everywhere() {
        let d = parse_dataset("x ~> y ; +\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(split_by_group(&d, 0.5, &mut rng).is_err());
    }

    #[test]
    fn negatives_swap_consequents() {
        let mut d = parse_dataset("s ~> fold ; + ; group=u1\n").unwrap();
        let pool = vec![
            Clause::parse("fold", &mut d.vocab).unwrap(),
            Clause::parse("call", &mut d.vocab).unwrap(),
            Clause::parse("raise", &mut d.vocab).unwrap(),
        ];
        let mut seen = std::collections::HashSet::new();
        for seed in 0..30 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let negatives = synthesize_negatives(&d, &pool, &mut rng).unwrap();
            assert_eq!(negatives.len(), 1);
            let ex = &negatives.examples[0];
            assert_eq!(ex.label, Label::Neg);
            assert_ne!(ex.rule.consequent, d.examples[0].rule.consequent);
            assert_eq!(ex.group.as_deref(), Some("u1"));
            seen.insert(ex.rule.consequent.render(&d.vocab));
        }
        // uniform over the two alternatives: both appear across seeds
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn negative_synthesis_is_seed_reproducible() {
        let d = parse_dataset("s ~> fold ; +\nt ~> call ; +\n").unwrap();
        let mut vocab = d.vocab.clone();
        let pool = vec![
            Clause::parse("fold", &mut vocab).unwrap(),
            Clause::parse("call", &mut vocab).unwrap(),
            Clause::parse("raise", &mut vocab).unwrap(),
        ];
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = synthesize_negatives(&d, &pool, &mut rng).unwrap();
            render_dataset(&n.examples, &n.vocab)
        };
        assert_eq!(run(9), run(9));
    }

    #[test]
    fn pool_guard() {
        let d = parse_dataset("s ~> fold ; +\n").unwrap();
        let mut vocab = d.vocab.clone();
        let pool = vec![Clause::parse("fold", &mut vocab).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(synthesize_negatives(&d, &pool, &mut rng).is_err());
    }
}
