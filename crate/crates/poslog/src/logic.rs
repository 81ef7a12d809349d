//! Propositional building blocks: interned variables, literals, clauses,
//! literal conjunctions, assignments and CNF formulas.
//!
//! Variables are interned to dense integer identifiers per problem instance;
//! the textual names live in a side table ([`Vocabulary`]). Auxiliary
//! variables introduced by encodings carry an `@` in their name, which the
//! parser rejects, so they can never collide with user vocabulary.
//!
//! Textual syntax: identifiers match `[A-Za-z_][A-Za-z0-9_]*`, negation is
//! prefix `!`, clauses join literals with `|`, conjunctions with `&`, and
//! `true` denotes the empty conjunction.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// A propositional variable, interned to a dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A literal: a variable with a polarity, packed as `2*var + negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn positive(var: Var) -> Self {
        Literal(var.0 << 1)
    }

    pub fn negative(var: Var) -> Self {
        Literal((var.0 << 1) | 1)
    }

    pub fn new(var: Var, positive: bool) -> Self {
        if positive {
            Self::positive(var)
        } else {
            Self::negative(var)
        }
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negated(self) -> Self {
        Literal(self.0 ^ 1)
    }

    /// The packed code; used for canonical ordering and cache keys.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn render(self, vocab: &Vocabulary) -> String {
        if self.is_positive() {
            vocab.name(self.var()).to_string()
        } else {
            format!("!{}", vocab.name(self.var()))
        }
    }
}

/// Side table mapping variable names to dense indices and back.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, Var>,
    aux_counter: u32,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Interns a user-level variable name, validating the identifier syntax.
    pub fn intern(&mut self, name: &str) -> Result<Var> {
        if name == "true" {
            return Err(Error::Invalid("`true` is reserved".into()));
        }
        if !valid_identifier(name) {
            return Err(Error::Invalid(format!("invalid identifier `{name}`")));
        }
        Ok(self.intern_raw(name))
    }

    fn intern_raw(&mut self, name: &str) -> Var {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    /// Allocates a fresh auxiliary variable. The `@` in the name keeps it
    /// outside the identifier grammar, so user input can never alias it.
    pub fn fresh_aux(&mut self, tag: &str) -> Var {
        loop {
            let name = format!("@{tag}{}", self.aux_counter);
            self.aux_counter += 1;
            if !self.index.contains_key(&name) {
                return self.intern_raw(&name);
            }
        }
    }

    pub fn is_aux(&self, var: Var) -> bool {
        self.name(var).starts_with('@')
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, var: Var) -> &str {
        &self.names[var.index()]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len() as u32).map(Var)
    }

    /// User-level (non-auxiliary) variables.
    pub fn user_vars(&self) -> Vec<Var> {
        self.vars().filter(|&v| !self.is_aux(v)).collect()
    }
}

/// A disjunction of literals. Canonical: sorted by literal code, deduplicated.
/// The empty clause is falsum. A clause holding complementary literals is
/// flagged as a tautology on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
    tautology: bool,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        let tautology = lits.windows(2).any(|w| w[0] == w[1].negated());
        Clause { lits, tautology }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new(), tautology: false }
    }

    pub fn unit(lit: Literal) -> Self {
        Clause { lits: vec![lit], tautology: false }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.tautology
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn without(&self, lit: Literal) -> Clause {
        Clause::new(self.lits.iter().copied().filter(|&l| l != lit))
    }

    /// Unit clauses of the complementary literals; negating a clause for an
    /// entailment check needs nothing more general.
    pub fn negation_units(&self) -> impl Iterator<Item = Clause> + '_ {
        self.lits.iter().map(|l| Clause::unit(l.negated()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn parse(text: &str, vocab: &mut Vocabulary) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Invalid("empty clause".into()));
        }
        let mut lits = Vec::new();
        for part in text.split('|') {
            lits.push(parse_literal(part, vocab)?);
        }
        Ok(Clause::new(lits))
    }

    pub fn render(&self, vocab: &Vocabulary) -> String {
        if self.lits.is_empty() {
            return "false".to_string();
        }
        let mut parts: Vec<(String, bool)> = self
            .lits
            .iter()
            .map(|l| (vocab.name(l.var()).to_string(), l.is_positive()))
            .collect();
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        parts
            .into_iter()
            .map(|(name, pos)| if pos { name } else { format!("!{name}") })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// A conjunction of literals; the empty conjunction is verum. A conjunction
/// holding complementary literals is constructible but flagged inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralConjunction {
    lits: Vec<Literal>,
    inconsistent: bool,
}

impl LiteralConjunction {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        let inconsistent = lits.windows(2).any(|w| w[0] == w[1].negated());
        LiteralConjunction { lits, inconsistent }
    }

    pub fn top() -> Self {
        LiteralConjunction { lits: Vec::new(), inconsistent: false }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn unit_clauses(&self) -> Vec<Clause> {
        self.lits.iter().map(|&l| Clause::unit(l)).collect()
    }

    /// The clause `¬(l1 ∧ … ∧ ln)`, i.e. the disjunction of the complements.
    pub fn negated_clause(&self) -> Clause {
        Clause::new(self.lits.iter().map(|l| l.negated()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn parse(text: &str, vocab: &mut Vocabulary) -> Result<Self> {
        let text = text.trim();
        if text == "true" {
            return Ok(LiteralConjunction::top());
        }
        if text.is_empty() {
            return Err(Error::Invalid("empty conjunction".into()));
        }
        let mut lits = Vec::new();
        for part in text.split('&') {
            lits.push(parse_literal(part, vocab)?);
        }
        Ok(LiteralConjunction::new(lits))
    }

    pub fn render(&self, vocab: &Vocabulary) -> String {
        if self.lits.is_empty() {
            return "true".to_string();
        }
        let mut parts: Vec<(String, bool)> = self
            .lits
            .iter()
            .map(|l| (vocab.name(l.var()).to_string(), l.is_positive()))
            .collect();
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        parts
            .into_iter()
            .map(|(name, pos)| if pos { name } else { format!("!{name}") })
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

fn parse_literal(text: &str, vocab: &mut Vocabulary) -> Result<Literal> {
    let text = text.trim();
    let (name, positive) = match text.strip_prefix('!') {
        Some(rest) => (rest.trim(), false),
        None => (text, true),
    };
    let var = vocab.intern(name)?;
    Ok(Literal::new(var, positive))
}

/// A total truth assignment over variables `0..n` of a declared vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// The `bits`-indexed assignment over `n` variables; the basis of the
    /// deterministic enumeration order used everywhere.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Assignment { values: (0..n).map(|i| bits >> i & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, var: Var) -> bool {
        self.values[var.index()]
    }

    pub fn satisfies_literal(&self, lit: Literal) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn satisfies_clause(&self, clause: &Clause) -> bool {
        clause.literals().iter().any(|&l| self.satisfies_literal(l))
    }

    pub fn satisfies_conjunction(&self, conj: &LiteralConjunction) -> bool {
        conj.literals().iter().all(|&l| self.satisfies_literal(l))
    }

    pub fn satisfies_cnf(&self, f: &CnfFormula) -> bool {
        f.clauses().iter().all(|c| self.satisfies_clause(c))
    }

    /// Restriction to the given variables, in their order.
    pub fn project(&self, vars: &[Var]) -> Vec<bool> {
        vars.iter().map(|&v| self.value(v)).collect()
    }

    /// All `2^n` assignments over `n` variables, in bit order.
    pub fn enumerate(n: usize) -> impl Iterator<Item = Assignment> {
        assert!(n <= 24, "exhaustive enumeration limited to 24 variables");
        (0u64..1 << n).map(move |bits| Assignment::from_bits(bits, n))
    }
}

/// A conjunction of clauses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        CnfFormula { clauses: clauses.into_iter().collect() }
    }

    pub fn empty() -> Self {
        CnfFormula::default()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Clause>) {
        self.clauses.extend(other);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Union of the member vocabularies.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.clauses.iter().flat_map(|c| c.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn max_var_index(&self) -> Option<usize> {
        self.clauses.iter().flat_map(|c| c.vars()).map(|v| v.index()).max()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
