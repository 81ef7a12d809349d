//! Tolerance testing, the Z-ordering over a consistent default set, and its
//! translation into an equivalent stratified theory (rational closure).
//!
//! A default `α ~> β` is tolerated by a set of defaults when the classical
//! formula `α ∧ β ∧ ⋀ᵢ(¬αᵢ ∨ βᵢ)` is satisfiable. The Z-ordering peels the
//! tolerated defaults level by level, most general first; translating level
//! `i` to clauses at certainty `i` decides rational-closure membership.

use crate::logic::{Clause, CnfFormula};
use crate::sat;
use crate::theory::{DefaultRule, Label, PossTheory};
use crate::{Error, Result};

/// Ordered levels of defaults, most general first. Levels are disjoint,
/// nonempty, and partition the input set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZStratification {
    levels: Vec<Vec<DefaultRule>>,
}

impl ZStratification {
    pub fn levels(&self) -> &[Vec<DefaultRule>] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }
}

/// True iff `α ∧ β ∧ ⋀ᵢ(¬αᵢ ∨ βᵢ)` is satisfiable, for `d = α ~> β` and the
/// material clauses drawn from `delta`.
pub fn is_tolerated(d: &DefaultRule, delta: &[DefaultRule]) -> bool {
    let mut f = CnfFormula::new(d.antecedent.unit_clauses());
    f.push(d.consequent.clone());
    f.extend(delta.iter().map(|r| r.material_clause()));
    sat::is_satisfiable(&f)
}

/// Iteratively peels the set of defaults tolerated by the remaining set.
/// Fails when some defaults tolerate nothing (rational closure undefined).
pub fn z_ordering(delta: &[DefaultRule]) -> Result<ZStratification> {
    if delta.is_empty() {
        return Err(Error::Invalid("empty default set".into()));
    }
    let mut remaining: Vec<DefaultRule> = delta.to_vec();
    remaining.sort();
    remaining.dedup();
    let mut levels = Vec::new();
    while !remaining.is_empty() {
        let (level, rest): (Vec<DefaultRule>, Vec<DefaultRule>) = remaining
            .iter()
            .cloned()
            .partition(|d| is_tolerated(d, &remaining));
        if level.is_empty() {
            return Err(Error::InconsistentDefaults);
        }
        levels.push(level);
        remaining = rest;
    }
    Ok(ZStratification { levels })
}

/// Stratum `i` holds the material clause of every default in level `i`, so
/// the most general level gets the lowest certainty. A clause produced by
/// defaults on several levels keeps only its highest occurrence, which
/// leaves every strict cut unchanged.
pub fn to_poss_theory(z: &ZStratification) -> PossTheory {
    let mut placed = std::collections::HashSet::new();
    let mut strata: Vec<Vec<Clause>> = vec![Vec::new(); z.levels.len()];
    for (i, level) in z.levels.iter().enumerate().rev() {
        for d in level {
            let clause = d.material_clause();
            if placed.insert(clause.clone()) {
                strata[i].push(clause);
            }
        }
    }
    strata.retain(|s| !s.is_empty());
    PossTheory::new(strata).expect("z-ordering strata are disjoint by construction")
}

/// Membership in the rational closure of `delta`, decided by covering under
/// the Z-ordering's possibilistic translation.
pub fn rational_closure_entails(delta: &[DefaultRule], q: &DefaultRule) -> Result<bool> {
    let theory = to_poss_theory(&z_ordering(delta)?);
    Ok(theory.covers(q) == Label::Pos)
}
