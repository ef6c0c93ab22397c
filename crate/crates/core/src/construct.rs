//! Argument construction, attack derivation and subtheory enumeration.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::argument::Argument;
use crate::graph::{ArgSet, ArgumentationGraph, GraphError};
use crate::theory::{in_conflict, DefeasibleTheory, Literal, Rule, RuleId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("argument count exceeds the cap of {cap}")]
    TooManyArguments { cap: usize },
    #[error("{count} rules exceed the subtheory cap of {cap}")]
    TooManyRules { count: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Resource guards shared by construction, enumeration and frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on constructed arguments.
    pub max_arguments: usize,
    /// Upper bound on rules whose subsets are enumerated.
    pub max_rules: usize,
    /// Upper bound on graph size for exhaustive labelling or subgraph enumeration.
    pub max_enumeration_args: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_arguments: 100_000,
            max_rules: 20,
            max_enumeration_args: 16,
        }
    }
}

/// How argument preference is derived from rule superiority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PreferencePolicy {
    /// `A ≻ B` iff the top rule of `A` is superior to the top rule of `B`.
    #[default]
    LastLink,
    /// No argument is preferred over another.
    None,
}

impl PreferencePolicy {
    pub fn prefers(self, theory: &DefeasibleTheory, winner: &Argument, loser: &Argument) -> bool {
        match self {
            PreferencePolicy::LastLink => theory.is_superior(winner.top_rule(), loser.top_rule()),
            PreferencePolicy::None => false,
        }
    }
}

/// Arguments for one literal, each tagged with the round that produced it.
type Pool = Vec<(Arc<Argument>, usize)>;

/// Builds every argument of `theory`, sorted by canonical id.
///
/// A rule never repeats on a root-to-leaf path, so the result is finite even
/// for cyclic rule dependencies. Construction proceeds in rounds: round `k`
/// only forms combinations that use at least one argument created in round `k-1`.
pub fn build_arguments(
    theory: &DefeasibleTheory,
    caps: &Caps,
) -> Result<Vec<Arc<Argument>>, ConstructError> {
    // Arguments by conclusion, each tagged with its creation round.
    let mut by_conclusion: BTreeMap<Literal, Pool> = BTreeMap::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut total = 0usize;
    let mut round = 0usize;
    loop {
        let mut fresh: Vec<Arc<Argument>> = Vec::new();
        for rule in theory.rules() {
            if round == 0 {
                if rule.body_plain.is_empty() {
                    let arg = Argument::apply(rule, Vec::new()).expect("premise-free rule");
                    fresh.push(Arc::new(arg));
                }
                continue;
            }
            let pools: Option<Vec<&Pool>> = rule
                .body_plain
                .iter()
                .map(|lit| by_conclusion.get(lit))
                .collect();
            let Some(pools) = pools else { continue };
            if pools.is_empty() {
                continue;
            }
            for pivot in 0..pools.len() {
                let mut chosen = Vec::with_capacity(pools.len());
                combine(rule, &pools, pivot, round, 0, &mut chosen, &mut |arg| {
                    if seen.contains(arg.id()) {
                        return Ok(());
                    }
                    fresh.push(Arc::new(arg));
                    if total + fresh.len() > caps.max_arguments {
                        return Err(ConstructError::TooManyArguments {
                            cap: caps.max_arguments,
                        });
                    }
                    Ok(())
                })?;
            }
        }
        let mut added = false;
        for arg in fresh {
            if seen.insert(arg.id().to_string()) {
                total += 1;
                added = true;
                by_conclusion
                    .entry(arg.conclusion().clone())
                    .or_default()
                    .push((arg, round));
            }
        }
        if total > caps.max_arguments {
            return Err(ConstructError::TooManyArguments {
                cap: caps.max_arguments,
            });
        }
        if !added {
            break;
        }
        round += 1;
    }
    let mut all: Vec<Arc<Argument>> = by_conclusion
        .into_values()
        .flatten()
        .map(|(arg, _)| arg)
        .collect();
    all.sort_by(|a, b| a.id().cmp(b.id()));
    Ok(all)
}

/// Enumerates child tuples where position `pivot` holds a previous-round argument,
/// earlier positions hold older ones, and later positions hold anything existing.
fn combine(
    rule: &Rule,
    pools: &[&Pool],
    pivot: usize,
    round: usize,
    position: usize,
    chosen: &mut Vec<Arc<Argument>>,
    emit: &mut dyn FnMut(Argument) -> Result<(), ConstructError>,
) -> Result<(), ConstructError> {
    if position == pools.len() {
        if let Ok(arg) = Argument::apply(rule, chosen.clone()) {
            emit(arg)?;
        }
        return Ok(());
    }
    for (candidate, created) in pools[position].iter() {
        let admissible = match position.cmp(&pivot) {
            std::cmp::Ordering::Less => *created + 1 < round,
            std::cmp::Ordering::Equal => *created + 1 == round,
            std::cmp::Ordering::Greater => *created < round,
        };
        if !admissible || candidate.rules().contains(&rule.id) {
            continue;
        }
        chosen.push(candidate.clone());
        combine(rule, pools, pivot, round, position + 1, chosen, emit)?;
        chosen.pop();
    }
    Ok(())
}

/// Attack pairs `(attacker, attacked)` by canonical id.
///
/// `B` attacks `A` when, for some `A'` in Sub(A), either the conclusions of `B`
/// and `A'` conflict and `A'` is not preferred over `B` (rebut), or `~conc(B)`
/// is a premise of the top rule of `A'` (undercut).
pub fn derive_attacks(
    theory: &DefeasibleTheory,
    arguments: &[Arc<Argument>],
    policy: PreferencePolicy,
) -> BTreeSet<(String, String)> {
    let subs: Vec<Vec<&Argument>> = arguments
        .iter()
        .map(|a| a.subarguments().into_values().collect())
        .collect();
    let mut out = BTreeSet::new();
    for attacker in arguments {
        for (target, target_subs) in arguments.iter().zip(&subs) {
            let hits = target_subs.iter().any(|sub| {
                let rebut = in_conflict(theory, attacker.conclusion(), sub.conclusion())
                    && !policy.prefers(theory, sub, attacker);
                let undercut = sub.naf_premises().contains(attacker.conclusion());
                rebut || undercut
            });
            if hits {
                out.insert((attacker.id().to_string(), target.id().to_string()));
            }
        }
    }
    out
}

/// The argumentation graph of a theory.
pub fn build_graph(
    theory: &DefeasibleTheory,
    policy: PreferencePolicy,
    caps: &Caps,
) -> Result<ArgumentationGraph, ConstructError> {
    let arguments = build_arguments(theory, caps)?;
    let attacks = derive_attacks(theory, &arguments, policy);
    Ok(ArgumentationGraph::from_arguments(arguments, attacks)?)
}

/// Subgraph induced by canonical ids.
pub fn induced_subgraph<'a>(
    graph: &ArgumentationGraph,
    ids: impl IntoIterator<Item = &'a str>,
) -> Result<ArgumentationGraph, GraphError> {
    Ok(graph.induced_subgraph(&graph.resolve(ids)?))
}

pub fn is_subargument_complete<'a>(
    graph: &ArgumentationGraph,
    ids: impl IntoIterator<Item = &'a str>,
) -> Result<bool, GraphError> {
    Ok(graph.is_subargument_complete(&graph.resolve(ids)?))
}

/// Rule-completeness reads the rule structure carried by the graph's arguments.
pub fn is_rule_complete<'a>(
    graph: &ArgumentationGraph,
    ids: impl IntoIterator<Item = &'a str>,
) -> Result<bool, GraphError> {
    graph.is_rule_complete(&graph.resolve(ids)?)
}

/// Rule subsets in enumeration order: bitmask counting down from the full set,
/// with the first rule id (sorted) as the most significant bit.
pub fn subtheory_rule_sets(
    theory: &DefeasibleTheory,
    caps: &Caps,
) -> Result<Vec<BTreeSet<RuleId>>, ConstructError> {
    let ids: Vec<&RuleId> = theory.rule_ids().collect();
    let count = ids.len();
    if count > caps.max_rules || count >= 64 {
        return Err(ConstructError::TooManyRules {
            count,
            cap: caps.max_rules,
        });
    }
    let full: u64 = (1u64 << count) - 1;
    Ok((0..=full)
        .rev()
        .map(|mask| {
            ids.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << (count - 1 - i)) != 0)
                .map(|(_, id)| (*id).clone())
                .collect()
        })
        .collect())
}

/// Every subtheory, superiority restricted to surviving rules.
pub fn enumerate_subtheories(
    theory: &DefeasibleTheory,
    caps: &Caps,
) -> Result<Vec<DefeasibleTheory>, ConstructError> {
    Ok(subtheory_rule_sets(theory, caps)?
        .iter()
        .map(|keep| theory.restrict(keep))
        .collect())
}

/// Argument set of the graph built from the subtheory over `rules`, as indices of `graph`.
pub(crate) fn subtheory_argument_set(
    theory: &DefeasibleTheory,
    rules: &BTreeSet<RuleId>,
    graph: &ArgumentationGraph,
    caps: &Caps,
) -> Result<ArgSet, ConstructError> {
    let sub = theory.restrict(rules);
    let arguments = build_arguments(&sub, caps)?;
    Ok(graph.resolve(arguments.iter().map(|a| a.id()))?)
}
