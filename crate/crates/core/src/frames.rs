//! Probability frames over subtheories, subgraphs, labellings and believed argument sets,
//! with the conversions between them. Every distribution is exact and sparse.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::construct::{self, Caps, ConstructError, PreferencePolicy};
use crate::dsl::{DistributionEntry, EntryKey, TheoryDocument};
use crate::graph::{ArgSet, ArgumentationGraph, GraphError};
use crate::label::{ArgLabel, LabelError, LabelSet, Labelling};
use crate::rational::Rational;
use crate::semantics::{self, LabellingSpec, Semantics, SemanticsError};
use crate::theory::{DefeasibleTheory, RuleId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: Rational },
    #[error("probability {value} is outside [0,1]")]
    OutOfRange { value: Rational },
    #[error("outcome listed twice: {0}")]
    DuplicateOutcome(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("line {line}: expected {expected}")]
    WrongEntryKind { line: usize, expected: &'static str },
    #[error("line {line}: labelling does not assign every argument (missing `{missing}`)")]
    PartialLabelling { line: usize, missing: String },
    #[error("line {line}: argument `{id}` assigned twice")]
    RepeatedArgument { line: usize, id: String },
    #[error("the label set {0} has no OFF label")]
    NoOffLabel(LabelSet),
    #[error("expected label set {expected}, found {found}")]
    LabelSetMismatch { expected: LabelSet, found: LabelSet },
    #[error("labelling {0} is not admitted by the frame's specification")]
    NotAdmitted(String),
    #[error("subgraph {0} is not subargument-complete")]
    NotSubargumentComplete(String),
    #[error("subgraph {0} has no labelling under the requested semantics")]
    NoLabellings(String),
    #[error("sublabelling weights for subgraph {subgraph}: {reason}")]
    WeightsMalformed { subgraph: String, reason: String },
    #[error("{free} uncertain arguments exceed the enumeration cap of {cap}")]
    CapExceeded { free: usize, cap: usize },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// A finite distribution storing only positive-probability outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<K: Ord> {
    probs: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone + std::fmt::Debug> Distribution<K> {
    /// Validates non-negativity, distinct outcomes and exact unit mass.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, Rational)>) -> Result<Self, FrameError> {
        let mut probs = BTreeMap::new();
        let mut sum = Rational::zero();
        for (key, value) in pairs {
            if value.is_negative() {
                return Err(FrameError::OutOfRange { value });
            }
            sum += &value;
            if probs.contains_key(&key) {
                return Err(FrameError::DuplicateOutcome(format!("{key:?}")));
            }
            probs.insert(key, value);
        }
        if !sum.is_one() {
            return Err(FrameError::NotNormalized { sum });
        }
        probs.retain(|_, v| !v.is_zero());
        Ok(Distribution { probs })
    }

    /// Sums masses of equal keys; caller guarantees unit total.
    fn accumulate(pairs: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut probs: BTreeMap<K, Rational> = BTreeMap::new();
        for (key, value) in pairs {
            if value.is_zero() {
                continue;
            }
            *probs.entry(key).or_insert_with(Rational::zero) += value;
        }
        debug_assert!(probs.values().sum::<Rational>().is_one());
        Distribution { probs }
    }

    pub fn point(key: K) -> Self {
        Distribution {
            probs: BTreeMap::from([(key, Rational::one())]),
        }
    }

    pub fn prob(&self, key: &K) -> Rational {
        self.probs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Probability of the event `{k | pred(k)}`.
    pub fn event(&self, mut pred: impl FnMut(&K) -> bool) -> Rational {
        self.probs
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.probs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.probs.keys()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }

    /// Pushforward along `f`.
    pub fn map<K2: Ord + Clone + std::fmt::Debug>(&self, mut f: impl FnMut(&K) -> K2) -> Distribution<K2> {
        Distribution::accumulate(self.probs.iter().map(|(k, v)| (f(k), v.clone())))
    }
}

fn describe_set(graph: &ArgumentationGraph, set: &ArgSet) -> String {
    format!("{{{}}}", graph.set_ids(set).collect::<Vec<_>>().join(", "))
}

/// Probabilistic theory frame: a distribution over subtheories, keyed by rule set.
#[derive(Debug, Clone)]
pub struct Ptf {
    theory: DefeasibleTheory,
    dist: Distribution<BTreeSet<RuleId>>,
}

impl Ptf {
    pub fn theory(&self) -> &DefeasibleTheory {
        &self.theory
    }

    pub fn dist(&self) -> &Distribution<BTreeSet<RuleId>> {
        &self.dist
    }

    /// Reads `{rule, rule} : p.` entries.
    pub fn from_entries(
        theory: &DefeasibleTheory,
        entries: &[DistributionEntry],
    ) -> Result<Self, FrameError> {
        let mut pairs = Vec::with_capacity(entries.len());
        for entry in entries {
            let EntryKey::Subset(ids) = &entry.key else {
                return Err(FrameError::WrongEntryKind {
                    line: entry.line,
                    expected: "a set of rule ids",
                });
            };
            let rules = ids
                .iter()
                .map(|id| RuleId::new(id.clone()).map_err(|_| FrameError::UnknownRule(id.clone())))
                .collect::<Result<BTreeSet<_>, _>>()?;
            pairs.push((rules, entry.value.clone()));
        }
        ptf_explicit(theory, pairs)
    }
}

/// Independent rule inclusion with the document's rule probabilities.
pub fn ptf_independent(doc: &TheoryDocument, caps: &Caps) -> Result<Ptf, FrameError> {
    let mut fixed = BTreeSet::new();
    let mut free = Vec::new();
    for id in doc.theory.rule_ids() {
        let p = doc.rule_prob(id);
        if p.is_one() {
            fixed.insert(id.clone());
        } else if !p.is_zero() {
            free.push((id.clone(), p));
        }
    }
    if free.len() > caps.max_rules || free.len() >= 64 {
        return Err(FrameError::Construct(ConstructError::TooManyRules {
            count: free.len(),
            cap: caps.max_rules,
        }));
    }
    let mut pairs = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut rules = fixed.clone();
        let mut p = Rational::one();
        for (bit, (id, prob)) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                rules.insert(id.clone());
                p = &p * prob;
            } else {
                p = &p * &prob.complement();
            }
        }
        pairs.push((rules, p));
    }
    Ok(Ptf {
        theory: doc.theory.clone(),
        dist: Distribution::from_pairs(pairs)?,
    })
}

/// A PTF from explicit `(rule set, probability)` pairs.
pub fn ptf_explicit(
    theory: &DefeasibleTheory,
    pairs: impl IntoIterator<Item = (BTreeSet<RuleId>, Rational)>,
) -> Result<Ptf, FrameError> {
    let pairs: Vec<_> = pairs.into_iter().collect();
    for (rules, _) in &pairs {
        if let Some(bad) = rules.iter().find(|r| theory.rule(r).is_none()) {
            return Err(FrameError::UnknownRule(bad.to_string()));
        }
    }
    Ok(Ptf {
        theory: theory.clone(),
        dist: Distribution::from_pairs(pairs)?,
    })
}

/// Probabilistic graph frame: a distribution over induced subgraphs.
#[derive(Debug, Clone)]
pub struct Pgf {
    graph: Arc<ArgumentationGraph>,
    dist: Distribution<ArgSet>,
}

impl Pgf {
    pub fn new(
        graph: Arc<ArgumentationGraph>,
        pairs: impl IntoIterator<Item = (ArgSet, Rational)>,
    ) -> Result<Self, FrameError> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        for (set, _) in &pairs {
            if let Some(&bad) = set.iter().find(|&&i| i >= graph.len()) {
                return Err(FrameError::Graph(GraphError::UnknownArgument(format!("#{bad}"))));
            }
        }
        Ok(Pgf {
            dist: Distribution::from_pairs(pairs)?,
            graph,
        })
    }

    /// Reads `{id, id} : p.` entries.
    pub fn from_entries(
        graph: Arc<ArgumentationGraph>,
        entries: &[DistributionEntry],
    ) -> Result<Self, FrameError> {
        let pairs = subset_entries(&graph, entries)?;
        Pgf::new(graph, pairs)
    }

    pub fn graph(&self) -> &Arc<ArgumentationGraph> {
        &self.graph
    }

    pub fn dist(&self) -> &Distribution<ArgSet> {
        &self.dist
    }

    /// Probability of the subgraph induced by `ids`.
    pub fn prob_of<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<Rational, FrameError> {
        Ok(self.dist.prob(&self.graph.resolve(ids)?))
    }
}

fn subset_entries(
    graph: &ArgumentationGraph,
    entries: &[DistributionEntry],
) -> Result<Vec<(ArgSet, Rational)>, FrameError> {
    entries
        .iter()
        .map(|entry| match &entry.key {
            EntryKey::Subset(ids) => Ok((
                graph.resolve(ids.iter().map(String::as_str))?,
                entry.value.clone(),
            )),
            EntryKey::Labelling(_) => Err(FrameError::WrongEntryKind {
                line: entry.line,
                expected: "a set of argument ids",
            }),
        })
        .collect()
}

/// Pushes a PTF forward to the subgraphs generated by its subtheories.
pub fn pgf_from_ptf(ptf: &Ptf, policy: PreferencePolicy, caps: &Caps) -> Result<Pgf, FrameError> {
    let graph = Arc::new(construct::build_graph(&ptf.theory, policy, caps)?);
    let mut pairs = Vec::with_capacity(ptf.dist.len());
    for (rules, p) in ptf.dist.iter() {
        let set = construct::subtheory_argument_set(&ptf.theory, rules, &graph, caps)?;
        pairs.push((set, p.clone()));
    }
    Ok(Pgf {
        graph,
        dist: Distribution::accumulate(pairs),
    })
}

/// Probabilistic labelling frame: a distribution over labellings admitted by a specification.
#[derive(Debug, Clone)]
pub struct Plf {
    graph: Arc<ArgumentationGraph>,
    spec: LabellingSpec,
    dist: Distribution<Labelling>,
}

impl Plf {
    /// Validates that every outcome is admitted by `spec`.
    pub fn new(
        graph: Arc<ArgumentationGraph>,
        spec: LabellingSpec,
        pairs: impl IntoIterator<Item = (Labelling, Rational)>,
        caps: &Caps,
    ) -> Result<Self, FrameError> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        for (labelling, _) in &pairs {
            if labelling.len() != graph.len() {
                return Err(FrameError::Label(LabelError::NotTotal {
                    expected: graph.len(),
                    found: labelling.len(),
                }));
            }
            if labelling.label_set() != spec.label_set() {
                return Err(FrameError::LabelSetMismatch {
                    expected: spec.label_set(),
                    found: labelling.label_set(),
                });
            }
            if !semantics::admits(&graph, &spec, labelling, caps)? {
                return Err(FrameError::NotAdmitted(labelling.display(&graph)));
            }
        }
        Ok(Plf {
            dist: Distribution::from_pairs(pairs)?,
            graph,
            spec,
        })
    }

    /// Reads `{id=LABEL, ...} : p.` entries; every line must label every argument.
    pub fn from_entries(
        graph: Arc<ArgumentationGraph>,
        spec: LabellingSpec,
        entries: &[DistributionEntry],
        caps: &Caps,
    ) -> Result<Self, FrameError> {
        let mut pairs = Vec::with_capacity(entries.len());
        for entry in entries {
            let assigned = total_labelling_entry(&graph, entry)?;
            pairs.push((Labelling::new(spec.label_set(), assigned)?, entry.value.clone()));
        }
        Plf::new(graph, spec, pairs, caps)
    }

    pub fn graph(&self) -> &Arc<ArgumentationGraph> {
        &self.graph
    }

    pub fn spec(&self) -> &LabellingSpec {
        &self.spec
    }

    pub fn dist(&self) -> &Distribution<Labelling> {
        &self.dist
    }
}

/// Label sets used on a labelling line, for choosing a frame specification.
pub fn entry_labels(entries: &[DistributionEntry]) -> BTreeSet<ArgLabel> {
    entries
        .iter()
        .filter_map(|e| match &e.key {
            EntryKey::Labelling(pairs) => Some(pairs.iter().map(|(_, l)| *l)),
            EntryKey::Subset(_) => None,
        })
        .flatten()
        .collect()
}

fn labelling_pairs(
    graph: &ArgumentationGraph,
    entry: &DistributionEntry,
) -> Result<BTreeMap<usize, ArgLabel>, FrameError> {
    let pairs: &[(String, ArgLabel)] = match &entry.key {
        EntryKey::Labelling(pairs) => pairs,
        EntryKey::Subset(ids) if ids.is_empty() => &[],
        EntryKey::Subset(_) => {
            return Err(FrameError::WrongEntryKind {
                line: entry.line,
                expected: "a labelling `{id=LABEL, ...}`",
            })
        }
    };
    let mut out = BTreeMap::new();
    for (id, label) in pairs {
        if out.insert(graph.index_of(id)?, *label).is_some() {
            return Err(FrameError::RepeatedArgument {
                line: entry.line,
                id: id.clone(),
            });
        }
    }
    Ok(out)
}

fn total_labelling_entry(
    graph: &ArgumentationGraph,
    entry: &DistributionEntry,
) -> Result<Vec<ArgLabel>, FrameError> {
    let pairs = labelling_pairs(graph, entry)?;
    (0..graph.len())
        .map(|i| {
            pairs.get(&i).copied().ok_or_else(|| FrameError::PartialLabelling {
                line: entry.line,
                missing: graph.id(i).to_string(),
            })
        })
        .collect()
}

/// Each subgraph becomes its `{ON,OFF}` labelling; the specification is `ALL-{ON,OFF}`.
pub fn plf_from_pgf(pgf: &Pgf) -> Plf {
    let n = pgf.graph.len();
    Plf {
        graph: pgf.graph.clone(),
        spec: LabellingSpec::all(LabelSet::OnOff),
        dist: pgf.dist.map(|set| Labelling::on_off(n, set)),
    }
}

/// Each labelling becomes the subgraph of its non-OFF arguments.
pub fn pgf_from_plf(plf: &Plf) -> Result<Pgf, FrameError> {
    if !plf.spec.label_set().has_off() {
        return Err(FrameError::NoOffLabel(plf.spec.label_set()));
    }
    Ok(Pgf {
        graph: plf.graph.clone(),
        dist: plf.dist.map(Labelling::active),
    })
}

/// Conditional weights of multi-labelling subgraphs.
///
/// Each entry is a partial labelling with a weight. For a subgraph with `k > 1`
/// labellings under the chosen semantics, each labelling takes the weight of the
/// single entry that agrees with it; if no entry matches any of them the weights
/// are uniform `1/k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SublabellingWeights {
    entries: Vec<(Vec<(String, ArgLabel)>, Rational)>,
}

impl SublabellingWeights {
    pub fn uniform() -> Self {
        SublabellingWeights::default()
    }

    pub fn new(entries: impl IntoIterator<Item = (Vec<(String, ArgLabel)>, Rational)>) -> Self {
        SublabellingWeights {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn from_entries(entries: &[DistributionEntry]) -> Result<Self, FrameError> {
        let mut out = Vec::with_capacity(entries.len());
        for entry in entries {
            match &entry.key {
                EntryKey::Labelling(pairs) => out.push((pairs.clone(), entry.value.clone())),
                EntryKey::Subset(_) => {
                    return Err(FrameError::WrongEntryKind {
                        line: entry.line,
                        expected: "a labelling `{id=LABEL, ...}`",
                    })
                }
            }
        }
        Ok(SublabellingWeights { entries: out })
    }

    pub fn is_uniform(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weight of each labelling of one subgraph, aligned with `labellings`.
    pub fn weights_for(
        &self,
        graph: &ArgumentationGraph,
        subgraph: &ArgSet,
        labellings: &[Labelling],
    ) -> Result<Vec<Rational>, FrameError> {
        let k = labellings.len();
        if k == 1 {
            return Ok(vec![Rational::one()]);
        }
        let mut resolved = Vec::with_capacity(self.entries.len());
        for (pairs, weight) in &self.entries {
            let indexed = pairs
                .iter()
                .map(|(id, label)| Ok((graph.index_of(id)?, *label)))
                .collect::<Result<Vec<_>, GraphError>>()?;
            resolved.push((indexed, weight));
        }
        let matches: Vec<Vec<&Rational>> = labellings
            .iter()
            .map(|l| {
                resolved
                    .iter()
                    .filter(|(pairs, _)| pairs.iter().all(|(i, label)| l.get(*i) == *label))
                    .map(|(_, w)| *w)
                    .collect()
            })
            .collect();
        let malformed = |reason: String| FrameError::WeightsMalformed {
            subgraph: describe_set(graph, subgraph),
            reason,
        };
        if matches.iter().all(Vec::is_empty) {
            return Ok(vec![Rational::new(1, k as i64); k]);
        }
        let mut weights = Vec::with_capacity(k);
        for (labelling, found) in labellings.iter().zip(&matches) {
            match found.as_slice() {
                [w] => weights.push((*w).clone()),
                other => {
                    return Err(malformed(format!(
                        "{} weight entries match labelling {}, expected exactly one",
                        other.len(),
                        labelling.display(graph)
                    )))
                }
            }
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(malformed(format!("weights of {k} labellings sum to {sum}")));
        }
        Ok(weights)
    }
}

/// Combines structural uncertainty with a semantics: `P(L) = P(H(L)) · w(L | H(L))`.
pub fn plf_with_semantics(
    pgf: &Pgf,
    semantics: Semantics,
    weights: &SublabellingWeights,
    caps: &Caps,
) -> Result<Plf, FrameError> {
    let graph = &pgf.graph;
    let mut pairs = Vec::new();
    for (subgraph, p) in pgf.dist.iter() {
        if !graph.is_subargument_complete(subgraph) {
            return Err(FrameError::NotSubargumentComplete(describe_set(graph, subgraph)));
        }
        let labellings = semantics::labellings_within(graph, subgraph, semantics, caps)?;
        if labellings.is_empty() {
            return Err(FrameError::NoLabellings(describe_set(graph, subgraph)));
        }
        let w = weights.weights_for(graph, subgraph, &labellings)?;
        for (labelling, weight) in labellings.into_iter().zip(w) {
            pairs.push((labelling, p * &weight));
        }
    }
    Ok(Plf {
        graph: graph.clone(),
        spec: LabellingSpec::combined(semantics, false),
        dist: Distribution::accumulate(pairs),
    })
}

/// Probabilistic argumentation graph: independent argument inclusion.
#[derive(Debug, Clone)]
pub struct Pag {
    graph: Arc<ArgumentationGraph>,
    probs: Vec<Rational>,
}

impl Pag {
    /// Subargument edges are dropped; unlisted arguments get probability 1.
    pub fn new(
        graph: &ArgumentationGraph,
        probs: impl IntoIterator<Item = (String, Rational)>,
    ) -> Result<Self, FrameError> {
        let mut out = vec![Rational::one(); graph.len()];
        for (id, p) in probs {
            if !p.is_probability() {
                return Err(FrameError::OutOfRange { value: p });
            }
            out[graph.index_of(&id)?] = p;
        }
        Ok(Pag {
            graph: Arc::new(graph.without_sub_edges()),
            probs: out,
        })
    }

    /// Reads `{id} : p.` entries.
    pub fn from_entries(
        graph: &ArgumentationGraph,
        entries: &[DistributionEntry],
    ) -> Result<Self, FrameError> {
        let mut probs = Vec::with_capacity(entries.len());
        let mut seen = BTreeSet::new();
        for entry in entries {
            match &entry.key {
                EntryKey::Subset(ids) if ids.len() == 1 => {
                    if !seen.insert(ids[0].clone()) {
                        return Err(FrameError::RepeatedArgument {
                            line: entry.line,
                            id: ids[0].clone(),
                        });
                    }
                    probs.push((ids[0].clone(), entry.value.clone()));
                }
                _ => {
                    return Err(FrameError::WrongEntryKind {
                        line: entry.line,
                        expected: "a single argument `{id}`",
                    })
                }
            }
        }
        Pag::new(graph, probs)
    }

    pub fn graph(&self) -> &Arc<ArgumentationGraph> {
        &self.graph
    }

    pub fn prob(&self, index: usize) -> &Rational {
        &self.probs[index]
    }
}

/// `Π_{A ∈ set} p(A) · Π_{A ∉ set} (1 − p(A))`.
pub fn pag_subgraph_prob(pag: &Pag, set: &ArgSet) -> Rational {
    let mut p = Rational::one();
    for (i, prob) in pag.probs.iter().enumerate() {
        p = if set.contains(&i) {
            &p * prob
        } else {
            &p * &prob.complement()
        };
        if p.is_zero() {
            break;
        }
    }
    p
}

/// The distribution over all subgraphs; only subsets of uncertain arguments are enumerated.
pub fn pag_to_pgf(pag: &Pag, caps: &Caps) -> Result<Pgf, FrameError> {
    let fixed: ArgSet = (0..pag.probs.len()).filter(|&i| pag.probs[i].is_one()).collect();
    let free: Vec<usize> = (0..pag.probs.len())
        .filter(|&i| !pag.probs[i].is_one() && !pag.probs[i].is_zero())
        .collect();
    if free.len() > caps.max_enumeration_args || free.len() >= 64 {
        return Err(FrameError::CapExceeded {
            free: free.len(),
            cap: caps.max_enumeration_args,
        });
    }
    let pairs = (0u64..(1u64 << free.len())).map(|mask| {
        let mut set = fixed.clone();
        set.extend(
            free.iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &i)| i),
        );
        let p = pag_subgraph_prob(pag, &set);
        (set, p)
    });
    Ok(Pgf {
        graph: pag.graph.clone(),
        dist: Distribution::accumulate(pairs),
    })
}

/// Total probability of the subgraphs in which `ids` is the IN set of some labelling.
pub fn extension_probability<'a>(
    pag: &Pag,
    semantics: Semantics,
    ids: impl IntoIterator<Item = &'a str>,
    caps: &Caps,
) -> Result<Rational, FrameError> {
    let target = pag.graph.resolve(ids)?;
    let pgf = pag_to_pgf(pag, caps)?;
    let mut total = Rational::zero();
    for (subgraph, p) in pgf.dist.iter() {
        if !target.is_subset(subgraph) {
            continue;
        }
        let labellings = semantics::labellings_within(&pag.graph, subgraph, semantics, caps)?;
        if labellings.iter().any(|l| l.with_label(ArgLabel::In) == target) {
            total += p;
        }
    }
    Ok(total)
}

/// Probabilistic epistemic frame: a distribution over believed argument sets.
#[derive(Debug, Clone)]
pub struct Pef {
    graph: Arc<ArgumentationGraph>,
    dist: Distribution<ArgSet>,
}

impl Pef {
    pub fn new(
        graph: Arc<ArgumentationGraph>,
        pairs: impl IntoIterator<Item = (ArgSet, Rational)>,
    ) -> Result<Self, FrameError> {
        let pgf = Pgf::new(graph, pairs)?;
        Ok(Pef {
            graph: pgf.graph,
            dist: pgf.dist,
        })
    }

    /// Reads `{id, id} : p.` entries.
    pub fn from_entries(
        graph: Arc<ArgumentationGraph>,
        entries: &[DistributionEntry],
    ) -> Result<Self, FrameError> {
        let pairs = subset_entries(&graph, entries)?;
        Pef::new(graph, pairs)
    }

    pub fn graph(&self) -> &Arc<ArgumentationGraph> {
        &self.graph
    }

    pub fn dist(&self) -> &Distribution<ArgSet> {
        &self.dist
    }
}

/// Each labelling becomes its IN set. Requires the `{IN,OUT,UN}` label set.
pub fn pef_from_plf(plf: &Plf) -> Result<Pef, FrameError> {
    if plf.spec.label_set() != LabelSet::InOutUn {
        return Err(FrameError::LabelSetMismatch {
            expected: LabelSet::InOutUn,
            found: plf.spec.label_set(),
        });
    }
    Ok(Pef {
        graph: plf.graph.clone(),
        dist: plf.dist.map(|l| l.with_label(ArgLabel::In)),
    })
}

/// Each believed set `E` becomes the labelling with `E` IN and everything else OUT.
pub fn plf_from_pef(pef: &Pef) -> Plf {
    let n = pef.graph.len();
    Plf {
        graph: pef.graph.clone(),
        spec: LabellingSpec::all(LabelSet::InOutUn),
        dist: pef.dist.map(|set| {
            let labels = (0..n)
                .map(|i| if set.contains(&i) { ArgLabel::In } else { ArgLabel::Out })
                .collect();
            Labelling::from_parts(LabelSet::InOutUn, labels)
        }),
    }
}

/// Total probability of the believed sets containing `id`.
pub fn pef_argument_probability(pef: &Pef, id: &str) -> Result<Rational, FrameError> {
    let index = pef.graph.index_of(id)?;
    Ok(pef.dist.event(|set| set.contains(&index)))
}
