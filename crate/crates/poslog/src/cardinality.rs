//! Cardinality constraints: CNF encodings of "at least k of these literals".
//!
//! [`at_least`] is a sequential-counter encoding with auxiliary variables;
//! its projections onto the argument literals are exactly the assignments
//! with at least `k` true arguments, and each such assignment has exactly one
//! extension to the counter variables. [`at_least_direct`] is the
//! auxiliary-free binomial expansion, usable as an entailment goal.

use crate::logic::{Clause, CnfFormula, Literal, Vocabulary};
use crate::{Error, Result};

/// Sequential-counter encoding of `at-least-k(lits)`. Auxiliary counter
/// variables are allocated in `vocab` under the `@` namespace.
pub fn at_least(k: usize, lits: &[Literal], vocab: &mut Vocabulary) -> Result<CnfFormula> {
    if k > lits.len() {
        return Err(Error::Invalid(format!(
            "at-least bound {k} exceeds argument count {}",
            lits.len()
        )));
    }
    if k == 0 {
        return Ok(CnfFormula::empty());
    }
    let m = lits.len();
    // counter[i][j] is true iff at least j+1 of the first i+1 literals hold
    let mut counter: Vec<Vec<Literal>> = Vec::with_capacity(m);
    for i in 0..m {
        let width = (i + 1).min(k);
        counter.push(
            (0..width)
                .map(|_| Literal::positive(vocab.fresh_aux("cnt")))
                .collect(),
        );
    }
    let mut f = CnfFormula::empty();
    for i in 0..m {
        let input = lits[i];
        for j in 0..counter[i].len() {
            let s = counter[i][j];
            let prev_same = if i > 0 && j < counter[i - 1].len() {
                Some(counter[i - 1][j])
            } else {
                None
            };
            let prev_below = if j == 0 {
                None // constant true: the zero count always holds
            } else {
                Some(counter[i - 1][j - 1])
            };
            // s  <->  prev_same \/ (input /\ prev_below)
            match (prev_same, prev_below) {
                (None, None) => {
                    // s <-> input
                    f.push(Clause::new([s.negated(), input]));
                    f.push(Clause::new([input.negated(), s]));
                }
                (None, Some(below)) => {
                    // s <-> input /\ below
                    f.push(Clause::new([s.negated(), input]));
                    f.push(Clause::new([s.negated(), below]));
                    f.push(Clause::new([input.negated(), below.negated(), s]));
                }
                (Some(same), None) => {
                    // s <-> same \/ input
                    f.push(Clause::new([s.negated(), same, input]));
                    f.push(Clause::new([same.negated(), s]));
                    f.push(Clause::new([input.negated(), s]));
                }
                (Some(same), Some(below)) => {
                    f.push(Clause::new([s.negated(), same, input]));
                    f.push(Clause::new([s.negated(), same, below]));
                    f.push(Clause::new([same.negated(), s]));
                    f.push(Clause::new([input.negated(), below.negated(), s]));
                }
            }
        }
    }
    f.push(Clause::unit(counter[m - 1][k - 1]));
    Ok(f)
}

/// Binomial encoding of `at-least-k(lits)` without auxiliary variables: one
/// clause per subset of `|lits| - k + 1` argument positions.
pub fn at_least_direct(k: usize, lits: &[Literal]) -> Result<CnfFormula> {
    if k > lits.len() {
        return Err(Error::Invalid(format!(
            "at-least bound {k} exceeds argument count {}",
            lits.len()
        )));
    }
    if lits.len() > 20 {
        return Err(Error::Guard(
            "direct at-least encoding limited to 20 literals".into(),
        ));
    }
    if k == 0 {
        return Ok(CnfFormula::empty());
    }
    let take = lits.len() - k + 1;
    let mut f = CnfFormula::empty();
    for combo in combinations(lits.len(), take) {
        f.push(Clause::new(combo.into_iter().map(|i| lits[i])));
    }
    Ok(f)
}

/// All `size`-element index subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < size - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}
