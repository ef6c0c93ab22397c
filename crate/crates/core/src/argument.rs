//! Arguments as finite trees of rule applications.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::theory::{Literal, Rule, RuleId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgumentError {
    #[error("rule `{rule}` expects {expected} subarguments, got {found}")]
    Arity {
        rule: RuleId,
        expected: usize,
        found: usize,
    },
    #[error("subargument {position} of rule `{rule}` concludes `{found}`, body needs `{expected}`")]
    ConclusionMismatch {
        rule: RuleId,
        position: usize,
        expected: Literal,
        found: Literal,
    },
    #[error("rule `{0}` would occur twice on one branch")]
    RuleReuse(RuleId),
}

/// An argument: a top rule applied to one subargument per plain body literal.
///
/// Identity is the canonical id `rule(child1,...,childN)`.
#[derive(Clone)]
pub struct Argument {
    top_rule: RuleId,
    conclusion: Literal,
    direct_subs: Vec<Arc<Argument>>,
    naf_premises: BTreeSet<Literal>,
    canonical_id: String,
    rules: BTreeSet<RuleId>,
}

impl Argument {
    /// Applies `rule` to `direct_subs`, enforcing body alignment and the
    /// no-rule-twice-on-a-branch restriction.
    pub fn apply(rule: &Rule, direct_subs: Vec<Arc<Argument>>) -> Result<Self, ArgumentError> {
        if rule.body_plain.len() != direct_subs.len() {
            return Err(ArgumentError::Arity {
                rule: rule.id.clone(),
                expected: rule.body_plain.len(),
                found: direct_subs.len(),
            });
        }
        for (position, (needed, sub)) in rule.body_plain.iter().zip(&direct_subs).enumerate() {
            if &sub.conclusion != needed {
                return Err(ArgumentError::ConclusionMismatch {
                    rule: rule.id.clone(),
                    position,
                    expected: needed.clone(),
                    found: sub.conclusion.clone(),
                });
            }
            if sub.rules.contains(&rule.id) {
                return Err(ArgumentError::RuleReuse(rule.id.clone()));
            }
        }
        let mut rules = BTreeSet::from([rule.id.clone()]);
        for sub in &direct_subs {
            rules.extend(sub.rules.iter().cloned());
        }
        let children: Vec<&str> = direct_subs.iter().map(|s| s.canonical_id.as_str()).collect();
        let canonical_id = format!("{}({})", rule.id, children.join(","));
        Ok(Argument {
            top_rule: rule.id.clone(),
            conclusion: rule.head.clone(),
            direct_subs,
            naf_premises: rule.body_naf.clone(),
            canonical_id,
            rules,
        })
    }

    pub fn id(&self) -> &str {
        &self.canonical_id
    }

    pub fn top_rule(&self) -> &RuleId {
        &self.top_rule
    }

    pub fn conclusion(&self) -> &Literal {
        &self.conclusion
    }

    pub fn direct_subs(&self) -> &[Arc<Argument>] {
        &self.direct_subs
    }

    pub fn naf_premises(&self) -> &BTreeSet<Literal> {
        &self.naf_premises
    }

    /// Every rule used anywhere in the tree.
    pub fn rules(&self) -> &BTreeSet<RuleId> {
        &self.rules
    }

    /// Sub(A): the argument itself and all arguments embedded in it, keyed by id.
    pub fn subarguments(&self) -> BTreeMap<&str, &Argument> {
        let mut out = BTreeMap::new();
        let mut stack = vec![self];
        while let Some(arg) = stack.pop() {
            if out.insert(arg.id(), arg).is_none() {
                stack.extend(arg.direct_subs.iter().map(|s| s.as_ref()));
            }
        }
        out
    }
}

impl PartialEq for Argument {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_id == other.canonical_id
    }
}

impl Eq for Argument {}

impl PartialOrd for Argument {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Argument {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_id.cmp(&other.canonical_id)
    }
}

impl fmt::Debug for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.canonical_id, self.conclusion)
    }
}
