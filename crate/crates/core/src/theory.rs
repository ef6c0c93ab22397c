//! Literals, defeasible rules and theories.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Structural problems detected when assembling a theory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("duplicate rule id `{0}`")]
    DuplicateRule(RuleId),
    #[error("superiority references unknown rule `{0}`")]
    UnknownRule(RuleId),
    #[error("invalid atom `{0}`")]
    InvalidAtom(String),
    #[error("invalid rule id `{0}`")]
    InvalidRuleId(String),
}

/// An atom or its strong negation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: String,
    negated: bool,
}

impl Literal {
    pub fn new(atom: impl Into<String>, negated: bool) -> Result<Self, TheoryError> {
        let atom = atom.into();
        if !is_atom(&atom) {
            return Err(TheoryError::InvalidAtom(atom));
        }
        Ok(Literal { atom, negated })
    }

    pub fn positive(atom: impl Into<String>) -> Result<Self, TheoryError> {
        Self::new(atom, false)
    }

    pub fn negative(atom: impl Into<String>) -> Result<Self, TheoryError> {
        Self::new(atom, true)
    }

    /// Reads `atom` or `-atom`.
    pub fn parse(text: &str) -> Result<Self, TheoryError> {
        let text = text.trim();
        match text.strip_prefix('-') {
            Some(rest) => Self::negative(rest),
            None => Self::positive(text),
        }
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// The complementary literal.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-{}", self.atom)
        } else {
            f.write_str(&self.atom)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn is_atom(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Name of a rule, unique within its theory.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId(String);

impl RuleId {
    pub fn new(id: impl Into<String>) -> Result<Self, TheoryError> {
        let id = id.into();
        if !is_identifier(&id) {
            return Err(TheoryError::InvalidRuleId(id));
        }
        Ok(RuleId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A defeasible rule `id : body_plain, ~body_naf => head`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: RuleId,
    pub body_plain: Vec<Literal>,
    pub body_naf: BTreeSet<Literal>,
    pub head: Literal,
}

impl Rule {
    pub fn new(
        id: RuleId,
        body_plain: Vec<Literal>,
        body_naf: impl IntoIterator<Item = Literal>,
        head: Literal,
    ) -> Self {
        Rule {
            id,
            body_plain,
            body_naf: body_naf.into_iter().collect(),
            head,
        }
    }
}

/// Rules, a directional conflict relation and a superiority relation over rules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefeasibleTheory {
    rules: BTreeMap<RuleId, Rule>,
    conflicts: BTreeSet<(Literal, Literal)>,
    superiority: BTreeSet<(RuleId, RuleId)>,
}

impl DefeasibleTheory {
    pub fn new(
        rules: impl IntoIterator<Item = Rule>,
        conflicts: impl IntoIterator<Item = (Literal, Literal)>,
        superiority: impl IntoIterator<Item = (RuleId, RuleId)>,
    ) -> Result<Self, TheoryError> {
        let mut by_id = BTreeMap::new();
        for rule in rules {
            if by_id.contains_key(&rule.id) {
                return Err(TheoryError::DuplicateRule(rule.id));
            }
            by_id.insert(rule.id.clone(), rule);
        }
        let superiority: BTreeSet<_> = superiority.into_iter().collect();
        for (stronger, weaker) in &superiority {
            for id in [stronger, weaker] {
                if !by_id.contains_key(id) {
                    return Err(TheoryError::UnknownRule(id.clone()));
                }
            }
        }
        Ok(DefeasibleTheory {
            rules: by_id,
            conflicts: conflicts.into_iter().collect(),
            superiority,
        })
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn rule(&self, id: &RuleId) -> Option<&Rule> {
        self.rules.get(id)
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = &RuleId> {
        self.rules.keys()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Declared conflict pairs, without the complement closure.
    pub fn declared_conflicts(&self) -> &BTreeSet<(Literal, Literal)> {
        &self.conflicts
    }

    pub fn superiority(&self) -> &BTreeSet<(RuleId, RuleId)> {
        &self.superiority
    }

    pub fn is_superior(&self, stronger: &RuleId, weaker: &RuleId) -> bool {
        self.superiority
            .contains(&(stronger.clone(), weaker.clone()))
    }

    /// Every literal mentioned by a rule or a declared conflict.
    pub fn literals(&self) -> BTreeSet<Literal> {
        let mut out = BTreeSet::new();
        for rule in self.rules.values() {
            out.insert(rule.head.clone());
            out.extend(rule.body_plain.iter().cloned());
            out.extend(rule.body_naf.iter().cloned());
        }
        for (a, b) in &self.conflicts {
            out.insert(a.clone());
            out.insert(b.clone());
        }
        out
    }

    /// The theory restricted to `keep`; superiority pairs lose any dropped rule.
    pub fn restrict(&self, keep: &BTreeSet<RuleId>) -> DefeasibleTheory {
        DefeasibleTheory {
            rules: self
                .rules
                .iter()
                .filter(|(id, _)| keep.contains(*id))
                .map(|(id, rule)| (id.clone(), rule.clone()))
                .collect(),
            conflicts: self.conflicts.clone(),
            superiority: self
                .superiority
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .cloned()
                .collect(),
        }
    }
}

/// Declared conflicts plus both complement pairs for every literal in the theory.
pub fn close_conflicts(theory: &DefeasibleTheory) -> BTreeSet<(Literal, Literal)> {
    let mut out = theory.conflicts.clone();
    for literal in theory.literals() {
        let complement = literal.complement();
        out.insert((literal.clone(), complement.clone()));
        out.insert((complement, literal));
    }
    out
}

/// Membership in the closed conflict relation.
///
/// Complement pairs are accepted for any literal: for literals that occur in the
/// theory this coincides with [`close_conflicts`], and no argument can conclude
/// a literal that does not occur.
pub fn in_conflict(theory: &DefeasibleTheory, first: &Literal, second: &Literal) -> bool {
    first == &second.complement() || theory.conflicts.contains(&(first.clone(), second.clone()))
}
