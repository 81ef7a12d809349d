//! A complete DPLL satisfiability procedure with unit propagation.
//!
//! Deck-scale vocabularies need determinism and portability more than raw
//! speed, so there is no external solver: branching picks the unassigned
//! variable with the most occurrences in unsatisfied clauses (ties to the
//! lowest index), tries `true` first, and the whole search is reproducible.
//! A solver instance is single-use; construct one per query.

use crate::logic::{Clause, CnfFormula, Literal, Var};

/// Decides satisfiability of a CNF formula.
pub fn is_satisfiable(f: &CnfFormula) -> bool {
    sat(f.clauses().iter(), &[])
}

/// Classical entailment: `f ⊨ c` iff `f` plus the complementary unit clauses
/// of `c` is unsatisfiable.
pub fn entails(f: &CnfFormula, c: &Clause) -> bool {
    let negation: Vec<Clause> = c.negation_units().collect();
    !sat(f.clauses().iter(), &negation)
}

/// Satisfiability over borrowed clauses plus extra owned clauses.
pub(crate) fn sat<'a>(
    clauses: impl Iterator<Item = &'a Clause>,
    extra: &'a [Clause],
) -> bool {
    match Dpll::build(clauses.chain(extra.iter()), false) {
        Some(mut solver) => solver.solve(),
        None => false,
    }
}

/// Same decision, but runs a unit-propagation simplification pass that
/// shrinks the clause set before the search. Must agree with [`sat`].
pub(crate) fn sat_presimplified<'a>(
    clauses: impl Iterator<Item = &'a Clause>,
    extra: &'a [Clause],
) -> bool {
    match Dpll::build(clauses.chain(extra.iter()), true) {
        Some(mut solver) => solver.solve(),
        None => false,
    }
}

struct Dpll {
    clauses: Vec<Vec<Literal>>,
    assign: Vec<Option<bool>>,
    trail: Vec<Var>,
}

impl Dpll {
    /// Loads clauses, skipping tautologies. Returns `None` when an empty
    /// clause makes the formula trivially unsatisfiable.
    fn build<'a>(input: impl Iterator<Item = &'a Clause>, presimplify: bool) -> Option<Dpll> {
        let mut clauses = Vec::new();
        let mut max_var = 0usize;
        for c in input {
            if c.is_tautology() {
                continue;
            }
            if c.is_empty() {
                return None;
            }
            for v in c.vars() {
                max_var = max_var.max(v.index() + 1);
            }
            clauses.push(c.literals().to_vec());
        }
        if presimplify {
            clauses = match unit_simplify(clauses, max_var) {
                Some(cs) => cs,
                None => return None,
            };
        }
        Some(Dpll { clauses, assign: vec![None; max_var], trail: Vec::new() })
    }

    fn value(&self, lit: Literal) -> Option<bool> {
        self.assign[lit.var().index()].map(|v| v == lit.is_positive())
    }

    fn set(&mut self, var: Var, value: bool) {
        self.assign[var.index()] = Some(value);
        self.trail.push(var);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().unwrap();
            self.assign[var.index()] = None;
        }
    }

    fn solve(&mut self) -> bool {
        self.search()
    }

    fn search(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(var) = self.pick_branch() else {
            return true; // every clause satisfied
        };
        for value in [true, false] {
            let mark = self.trail.len();
            self.set(var, value);
            if self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }

    /// Unit propagation to fixpoint; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for ci in 0..self.clauses.len() {
                let mut satisfied = false;
                let mut unassigned = None;
                let mut unassigned_count = 0;
                for i in 0..self.clauses[ci].len() {
                    let lit = self.clauses[ci][i];
                    match self.value(lit) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            unassigned_count += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned_count {
                    0 => return false,
                    1 => {
                        let lit = unassigned.unwrap();
                        self.set(lit.var(), lit.is_positive());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Most-occurrences branching over unsatisfied clauses; `None` means the
    /// assignment already satisfies every clause.
    fn pick_branch(&self) -> Option<Var> {
        let mut counts: Vec<u32> = vec![0; self.assign.len()];
        let mut any = false;
        for clause in &self.clauses {
            let mut satisfied = false;
            for &lit in clause {
                if self.value(lit) == Some(true) {
                    satisfied = true;
                    break;
                }
            }
            if satisfied {
                continue;
            }
            for &lit in clause {
                if self.value(lit).is_none() {
                    counts[lit.var().index()] += 1;
                    any = true;
                }
            }
        }
        if !any {
            return None;
        }
        let mut best = None;
        let mut best_count = 0;
        for (i, &count) in counts.iter().enumerate() {
            if count > best_count {
                best_count = count;
                best = Some(Var(i as u32));
            }
        }
        best
    }
}

/// Propagates unit clauses to fixpoint at the CNF level, deleting satisfied
/// clauses and false literals. `None` signals a conflict.
fn unit_simplify(mut clauses: Vec<Vec<Literal>>, max_var: usize) -> Option<Vec<Vec<Literal>>> {
    let mut forced: Vec<Option<bool>> = vec![None; max_var];
    loop {
        let mut found_unit = false;
        for clause in &clauses {
            if clause.len() == 1 {
                let lit = clause[0];
                match forced[lit.var().index()] {
                    Some(v) if v != lit.is_positive() => return None,
                    Some(_) => {}
                    None => {
                        forced[lit.var().index()] = Some(lit.is_positive());
                        found_unit = true;
                    }
                }
            }
        }
        if !found_unit {
            return Some(clauses);
        }
        let mut next = Vec::with_capacity(clauses.len());
        for clause in clauses.drain(..) {
            let mut satisfied = false;
            let mut kept = Vec::with_capacity(clause.len());
            for lit in clause {
                match forced[lit.var().index()] {
                    Some(v) if v == lit.is_positive() => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => kept.push(lit),
                }
            }
            if satisfied {
                continue;
            }
            if kept.is_empty() {
                return None;
            }
            next.push(kept);
        }
        // keep the forced units themselves so models stay constrained
        for (i, v) in forced.iter().enumerate() {
            if let Some(v) = *v {
                next.push(vec![Literal::new(Var(i as u32), v)]);
            }
        }
        clauses = next;
        clauses.sort_unstable();
        clauses.dedup();
    }
}

/// Restricts a clause set to the connected component(s) reachable from the
/// seed variables through shared variables. Sound for entailment checks on a
/// satisfiable premise set: disconnected clauses cannot constrain the goal.
pub(crate) fn relevant_subset<'a>(clauses: &[&'a Clause], seeds: &[Var]) -> Vec<&'a Clause> {
    let max = clauses
        .iter()
        .flat_map(|c| c.vars())
        .chain(seeds.iter().copied())
        .map(|v| v.index() + 1)
        .max()
        .unwrap_or(0);
    let mut reached = vec![false; max];
    let mut queue: Vec<Var> = seeds.to_vec();
    for &v in seeds {
        reached[v.index()] = true;
    }
    let mut used = vec![false; clauses.len()];
    while let Some(v) = queue.pop() {
        for (i, c) in clauses.iter().enumerate() {
            if used[i] || !c.vars().any(|w| w == v) {
                continue;
            }
            used[i] = true;
            for w in c.vars() {
                if !reached[w.index()] {
                    reached[w.index()] = true;
                    queue.push(w);
                }
            }
        }
    }
    clauses
        .iter()
        .enumerate()
        .filter(|(i, _)| used[*i])
        .map(|(_, c)| *c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Assignment, Vocabulary};
    use proptest::prelude::*;

    fn parse_cnf(texts: &[&str], vocab: &mut Vocabulary) -> CnfFormula {
        CnfFormula::new(texts.iter().map(|t| Clause::parse(t, vocab).unwrap()))
    }

    /// Independent oracle: exhaustive enumeration over all assignments.
    fn brute_force_satisfiable(f: &CnfFormula, n_vars: usize) -> bool {
        Assignment::enumerate(n_vars).any(|a| a.satisfies_cnf(f))
    }

    fn brute_force_entails(f: &CnfFormula, c: &Clause, n_vars: usize) -> bool {
        Assignment::enumerate(n_vars)
            .filter(|a| a.satisfies_cnf(f))
            .all(|a| a.satisfies_clause(c))
    }

    #[test]
    fn empty_theory_is_satisfiable() {
        assert!(is_satisfiable(&CnfFormula::empty()));
    }

    #[test]
    fn complementary_units_are_unsatisfiable() {
        let mut vocab = Vocabulary::new();
        let f = parse_cnf(&["x", "!x"], &mut vocab);
        assert!(!is_satisfiable(&f));
    }

    #[test]
    fn penguin_unit_is_satisfiable() {
        // brute force over the 4 assignments: model penguin=1, flies=0
        let mut vocab = Vocabulary::new();
        let f = parse_cnf(&["!penguin | !flies", "penguin"], &mut vocab);
        assert!(brute_force_satisfiable(&f, vocab.len()));
        assert!(is_satisfiable(&f));
        let model = Assignment::enumerate(vocab.len())
            .find(|a| a.satisfies_cnf(&f))
            .unwrap();
        assert!(model.value(vocab.lookup("penguin").unwrap()));
        assert!(!model.value(vocab.lookup("flies").unwrap()));
    }

    #[test]
    fn entails_by_unit_resolution() {
        let mut vocab = Vocabulary::new();
        let f = parse_cnf(&["x", "!x | a"], &mut vocab);
        let a = Clause::parse("a", &mut vocab).unwrap();
        assert!(entails(&f, &a));
    }

    #[test]
    fn empty_theory_entails_tautologies_only() {
        let mut vocab = Vocabulary::new();
        let taut = Clause::parse("x | !x", &mut vocab).unwrap();
        let x = Clause::parse("x", &mut vocab).unwrap();
        assert!(entails(&CnfFormula::empty(), &taut));
        assert!(!entails(&CnfFormula::empty(), &x));
    }

    #[test]
    fn penguins_do_not_fly() {
        let mut vocab = Vocabulary::new();
        let f = parse_cnf(&["!p | !f", "p"], &mut vocab);
        let goal = Clause::parse("!f", &mut vocab).unwrap();
        assert!(entails(&f, &goal));
    }

    #[test]
    fn relevant_subset_keeps_connected_component() {
        let mut vocab = Vocabulary::new();
        let f = parse_cnf(&["!a | b", "b | c", "d | e"], &mut vocab);
        let refs: Vec<&Clause> = f.clauses().iter().collect();
        let a = vocab.lookup("a").unwrap();
        let kept = relevant_subset(&refs, &[a]);
        assert_eq!(kept.len(), 2);
    }

    /// Random CNF strategy over up to 12 variables.
    fn arb_cnf(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = (CnfFormula, usize)> {
        (1..=max_vars).prop_flat_map(move |n| {
            let lit = (0..n as u32, any::<bool>())
                .prop_map(|(v, pos)| Literal::new(Var(v), pos));
            let clause = prop::collection::vec(lit, 0..=3).prop_map(Clause::new);
            prop::collection::vec(clause, 0..=max_clauses)
                .prop_map(move |cs| (CnfFormula::new(cs), n))
        })
    }

    proptest! {
        #[test]
        fn solver_agrees_with_enumeration((f, n) in arb_cnf(12, 16)) {
            prop_assert_eq!(is_satisfiable(&f), brute_force_satisfiable(&f, n));
        }

        #[test]
        fn presimplified_agrees_with_plain((f, n) in arb_cnf(10, 14)) {
            let plain = sat(f.clauses().iter(), &[]);
            let simplified = sat_presimplified(f.clauses().iter(), &[]);
            prop_assert_eq!(plain, simplified);
            prop_assert_eq!(plain, brute_force_satisfiable(&f, n));
        }

        #[test]
        fn entailment_agrees_with_model_check(
            (f, n) in arb_cnf(10, 12),
            bits in 0u32..64,
        ) {
            // derive a goal clause from the bits to keep inputs varied
            let lits: Vec<Literal> = (0..3)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| Literal::new(Var(i as u32 % n as u32), bits >> (i + 3) & 1 == 1))
                .collect();
            let goal = Clause::new(lits);
            prop_assert_eq!(entails(&f, &goal), brute_force_entails(&f, &goal, n));
        }
    }
}
