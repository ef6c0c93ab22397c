//! Labelling specifications, labelling enumeration and semi-skeptical justification.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::construct::Caps;
use crate::graph::{ArgSet, ArgumentationGraph, GraphError};
use crate::label::{ArgLabel, LabelSet, Labelling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("{size} arguments exceed the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("criterion {criterion} cannot be used with label set {label_set}")]
    Incompatible {
        criterion: Criterion,
        label_set: LabelSet,
    },
    #[error("the legal-only flag applies to combined {{IN,OUT,UN,OFF}} semantics only")]
    LegalOnlyMisused,
    #[error("justification needs at least one labelling")]
    EmptyLabellingSet,
    #[error("labellings cover different numbers of arguments")]
    MismatchedLabellings,
    #[error("unknown semantics `{0}`")]
    UnknownSemantics(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Acceptance semantics over `{IN, OUT, UN}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    ConflictFree,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 5] = [
        Semantics::ConflictFree,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "cf",
            Semantics::Complete => "complete",
            Semantics::Grounded => "grounded",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }

    /// Every labelling it admits is complete.
    pub fn is_complete_based(self) -> bool {
        self != Semantics::ConflictFree
    }

    /// Exactly one labelling per graph.
    pub fn is_single_status(self) -> bool {
        self == Semantics::Grounded
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SemanticsError::UnknownSemantics(s.to_string()))
    }
}

/// Which labellings a specification keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// Every labelling over the label set.
    All,
    /// ON set subargument-complete and rule-complete.
    Legal,
    SubargumentComplete,
    RuleComplete,
    Semantics(Semantics),
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::All => f.write_str("all"),
            Criterion::Legal => f.write_str("legal"),
            Criterion::SubargumentComplete => f.write_str("subargument-complete"),
            Criterion::RuleComplete => f.write_str("rule-complete"),
            Criterion::Semantics(sem) => sem.fmt(f),
        }
    }
}

/// A criterion paired with a label set.
///
/// With `{IN,OUT,UN,OFF}` and a semantics `X`, the specification is the combined
/// one: `X` applied to every subargument-complete subgraph (legal subgraphs when
/// `legal_only` is set), OFF outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabellingSpec {
    criterion: Criterion,
    label_set: LabelSet,
    legal_only: bool,
}

impl LabellingSpec {
    pub fn new(
        criterion: Criterion,
        label_set: LabelSet,
        legal_only: bool,
    ) -> Result<Self, SemanticsError> {
        let compatible = match criterion {
            Criterion::All => true,
            Criterion::Legal | Criterion::SubargumentComplete | Criterion::RuleComplete => {
                label_set == LabelSet::OnOff
            }
            Criterion::Semantics(_) => label_set != LabelSet::OnOff,
        };
        if !compatible {
            return Err(SemanticsError::Incompatible {
                criterion,
                label_set,
            });
        }
        let combined = matches!(criterion, Criterion::Semantics(_))
            && label_set == LabelSet::InOutUnOff;
        if legal_only && !combined {
            return Err(SemanticsError::LegalOnlyMisused);
        }
        Ok(LabellingSpec {
            criterion,
            label_set,
            legal_only,
        })
    }

    /// `X-{IN,OUT,UN}`.
    pub fn acceptance(semantics: Semantics) -> Self {
        LabellingSpec {
            criterion: Criterion::Semantics(semantics),
            label_set: LabelSet::InOutUn,
            legal_only: false,
        }
    }

    /// `X-{IN,OUT,UN,OFF}`.
    pub fn combined(semantics: Semantics, legal_only: bool) -> Self {
        LabellingSpec {
            criterion: Criterion::Semantics(semantics),
            label_set: LabelSet::InOutUnOff,
            legal_only,
        }
    }

    /// `ALL` over the given label set.
    pub fn all(label_set: LabelSet) -> Self {
        LabellingSpec {
            criterion: Criterion::All,
            label_set,
            legal_only: false,
        }
    }

    pub fn criterion(&self) -> Criterion {
        self.criterion
    }

    pub fn label_set(&self) -> LabelSet {
        self.label_set
    }

    pub fn legal_only(&self) -> bool {
        self.legal_only
    }

    pub fn semantics(&self) -> Option<Semantics> {
        match self.criterion {
            Criterion::Semantics(sem) => Some(sem),
            _ => None,
        }
    }

    /// True for every semantics, all of which are conflict-free.
    pub fn is_cf_based(&self) -> bool {
        self.semantics().is_some()
    }

    pub fn is_complete_based(&self) -> bool {
        self.semantics().is_some_and(Semantics::is_complete_based)
    }

    /// The ON (non-OFF) part of every admitted labelling is subargument-complete.
    pub fn guarantees_subargument_completeness(&self) -> bool {
        match self.criterion {
            Criterion::Legal | Criterion::SubargumentComplete => true,
            Criterion::Semantics(_) => self.label_set == LabelSet::InOutUnOff,
            Criterion::All | Criterion::RuleComplete => false,
        }
    }
}

impl fmt::Display for LabellingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.criterion, self.label_set)?;
        if self.legal_only {
            f.write_str(" (legal subgraphs)")?;
        }
        Ok(())
    }
}

/// Attack structure restricted to a set of active arguments.
struct View<'g> {
    graph: &'g ArgumentationGraph,
    active: Vec<bool>,
    order: Vec<usize>,
}

impl<'g> View<'g> {
    fn new(graph: &'g ArgumentationGraph, active: &ArgSet) -> Self {
        let mut mask = vec![false; graph.len()];
        for &a in active {
            mask[a] = true;
        }
        View {
            graph,
            active: mask,
            order: active.iter().copied().collect(),
        }
    }

    fn attackers(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .attackers(index)
            .iter()
            .copied()
            .filter(|a| self.active[*a])
    }

    /// Labels from an IN set: attacked by IN means OUT, else UN; inactive stays OFF.
    fn labels_from_in(&self, inside: &[bool]) -> Vec<ArgLabel> {
        let mut labels = vec![ArgLabel::Off; self.graph.len()];
        for &a in &self.order {
            labels[a] = if inside[a] {
                ArgLabel::In
            } else if self.attackers(a).any(|b| inside[b]) {
                ArgLabel::Out
            } else {
                ArgLabel::Un
            };
        }
        labels
    }

    fn is_conflict_free(&self, labels: &[ArgLabel]) -> bool {
        self.order.iter().all(|&a| match labels[a] {
            ArgLabel::In => self.attackers(a).all(|b| labels[b] != ArgLabel::In),
            ArgLabel::Out => self.attackers(a).any(|b| labels[b] == ArgLabel::In),
            _ => true,
        })
    }

    fn is_complete(&self, labels: &[ArgLabel]) -> bool {
        self.order.iter().all(|&a| {
            let all_out = self.attackers(a).all(|b| labels[b] == ArgLabel::Out);
            let some_in = self.attackers(a).any(|b| labels[b] == ArgLabel::In);
            match labels[a] {
                ArgLabel::In => all_out,
                ArgLabel::Out => some_in,
                ArgLabel::Un => !all_out && !some_in,
                _ => false,
            }
        })
    }

    /// Least fixpoint: IN once every attacker is OUT, OUT once some attacker is IN.
    fn grounded(&self) -> Vec<ArgLabel> {
        let n = self.graph.len();
        let mut inside = vec![false; n];
        let mut outside = vec![false; n];
        loop {
            let mut changed = false;
            for &a in &self.order {
                if inside[a] || outside[a] {
                    continue;
                }
                if self.attackers(a).all(|b| outside[b]) {
                    inside[a] = true;
                    changed = true;
                } else if self.attackers(a).any(|b| inside[b]) {
                    outside[a] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.labels_from_in(&inside)
    }

    /// Conflict-free IN sets, by backtracking in index order.
    fn conflict_free_sets(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        let mut inside = vec![false; self.graph.len()];
        self.extend_cf(0, &mut inside, &mut out);
        out
    }

    fn extend_cf(&self, position: usize, inside: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if position == self.order.len() {
            out.push(inside.clone());
            return;
        }
        let a = self.order[position];
        self.extend_cf(position + 1, inside, out);
        let clash = self.graph.attacks_pair(a, a)
            || self.order[..position].iter().any(|&b| {
                inside[b] && (self.graph.attacks_pair(a, b) || self.graph.attacks_pair(b, a))
            });
        if !clash {
            inside[a] = true;
            self.extend_cf(position + 1, inside, out);
            inside[a] = false;
        }
    }

    fn complete_labellings(&self) -> Vec<Vec<ArgLabel>> {
        self.conflict_free_sets()
            .into_iter()
            .map(|inside| self.labels_from_in(&inside))
            .filter(|labels| self.is_complete(labels))
            .collect()
    }

    fn conflict_free_labellings(&self) -> Vec<Vec<ArgLabel>> {
        let mut out = Vec::new();
        for inside in self.conflict_free_sets() {
            let base = self.labels_from_in(&inside);
            let optional: Vec<usize> = self
                .order
                .iter()
                .copied()
                .filter(|&a| base[a] == ArgLabel::Out)
                .collect();
            for choice in 0u64..(1u64 << optional.len()) {
                let mut labels = base.clone();
                for (bit, &a) in optional.iter().enumerate() {
                    if choice & (1 << bit) != 0 {
                        labels[a] = ArgLabel::Un;
                    }
                }
                out.push(labels);
            }
        }
        out
    }

    fn all_labellings(&self) -> Vec<Vec<ArgLabel>> {
        let mut out = vec![vec![ArgLabel::Off; self.graph.len()]];
        for &a in &self.order {
            out = out
                .into_iter()
                .flat_map(|labels| {
                    [ArgLabel::In, ArgLabel::Out, ArgLabel::Un].into_iter().map(move |l| {
                        let mut next = labels.clone();
                        next[a] = l;
                        next
                    })
                })
                .collect();
        }
        out
    }

    fn labellings(&self, semantics: Semantics) -> Vec<Vec<ArgLabel>> {
        match semantics {
            Semantics::ConflictFree => self.conflict_free_labellings(),
            Semantics::Complete => self.complete_labellings(),
            Semantics::Grounded => vec![self.grounded()],
            Semantics::Preferred => maximal_in(self.complete_labellings()),
            Semantics::Stable => self
                .complete_labellings()
                .into_iter()
                .filter(|l| !l.contains(&ArgLabel::Un))
                .collect(),
        }
    }

    fn admits(&self, semantics: Semantics, labels: &[ArgLabel]) -> bool {
        match semantics {
            Semantics::ConflictFree => self.is_conflict_free(labels),
            Semantics::Complete => self.is_complete(labels),
            Semantics::Grounded => self.grounded() == labels,
            Semantics::Preferred => {
                self.is_complete(labels)
                    && !self.complete_labellings().iter().any(|other| {
                        strictly_more_in(other, labels)
                    })
            }
            Semantics::Stable => self.is_complete(labels) && !labels.contains(&ArgLabel::Un),
        }
    }
}

fn strictly_more_in(bigger: &[ArgLabel], smaller: &[ArgLabel]) -> bool {
    let covers = smaller
        .iter()
        .zip(bigger)
        .all(|(s, b)| *s != ArgLabel::In || *b == ArgLabel::In);
    let count = |labels: &[ArgLabel]| labels.iter().filter(|l| **l == ArgLabel::In).count();
    covers && count(bigger) > count(smaller)
}

fn maximal_in(candidates: Vec<Vec<ArgLabel>>) -> Vec<Vec<ArgLabel>> {
    candidates
        .iter()
        .filter(|c| !candidates.iter().any(|o| strictly_more_in(o, c)))
        .cloned()
        .collect()
}

fn ensure_cap(size: usize, caps: &Caps) -> Result<(), SemanticsError> {
    if size > caps.max_enumeration_args || size > 63 {
        Err(SemanticsError::CapExceeded {
            size,
            cap: caps.max_enumeration_args,
        })
    } else {
        Ok(())
    }
}

/// All subsets of `0..n`, each as an index set.
pub(crate) fn all_subsets(n: usize) -> impl Iterator<Item = ArgSet> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

fn subgraph_filter(
    graph: &ArgumentationGraph,
    set: &ArgSet,
    criterion: Criterion,
) -> Result<bool, SemanticsError> {
    Ok(match criterion {
        Criterion::All => true,
        Criterion::SubargumentComplete => graph.is_subargument_complete(set),
        Criterion::RuleComplete => graph.is_rule_complete(set)?,
        Criterion::Legal => graph.is_legal(set)?,
        Criterion::Semantics(_) => unreachable!("not a subgraph criterion"),
    })
}

/// The grounded `{IN,OUT,UN}` labelling, by least fixpoint. No cap applies.
pub fn grounded_labelling(graph: &ArgumentationGraph) -> Labelling {
    let view = View::new(graph, &graph.all());
    Labelling::from_parts(LabelSet::InOutUn, view.grounded())
}

/// `X-{IN,OUT,UN}` labellings of the subgraph on `active`, extended with OFF
/// elsewhere, as `{IN,OUT,UN,OFF}` labellings in canonical order.
pub fn labellings_within(
    graph: &ArgumentationGraph,
    active: &ArgSet,
    semantics: Semantics,
    caps: &Caps,
) -> Result<Vec<Labelling>, SemanticsError> {
    if semantics != Semantics::Grounded {
        ensure_cap(active.len(), caps)?;
    }
    let view = View::new(graph, active);
    let mut out: Vec<Labelling> = view
        .labellings(semantics)
        .into_iter()
        .map(|labels| Labelling::from_parts(LabelSet::InOutUnOff, labels))
        .collect();
    out.sort();
    Ok(out)
}

/// Every labelling of `graph` admitted by `spec`, in canonical order.
pub fn labellings(
    graph: &ArgumentationGraph,
    spec: &LabellingSpec,
    caps: &Caps,
) -> Result<Vec<Labelling>, SemanticsError> {
    let n = graph.len();
    let full = graph.all();
    let mut out: Vec<Labelling> = match (spec.label_set, spec.criterion) {
        (LabelSet::InOutUn, Criterion::Semantics(Semantics::Grounded)) => {
            vec![grounded_labelling(graph)]
        }
        (LabelSet::InOutUn, Criterion::Semantics(sem)) => {
            ensure_cap(n, caps)?;
            View::new(graph, &full)
                .labellings(sem)
                .into_iter()
                .map(|labels| Labelling::from_parts(LabelSet::InOutUn, labels))
                .collect()
        }
        (LabelSet::InOutUn, Criterion::All) => {
            ensure_cap(n, caps)?;
            View::new(graph, &full)
                .all_labellings()
                .into_iter()
                .map(|labels| Labelling::from_parts(LabelSet::InOutUn, labels))
                .collect()
        }
        (LabelSet::OnOff, criterion) => {
            ensure_cap(n, caps)?;
            let mut out = Vec::new();
            for set in all_subsets(n) {
                if subgraph_filter(graph, &set, criterion)? {
                    out.push(Labelling::on_off(n, &set));
                }
            }
            out
        }
        (LabelSet::InOutUnOff, Criterion::All) => {
            ensure_cap(n, caps)?;
            let mut out = Vec::new();
            for set in all_subsets(n) {
                for labels in View::new(graph, &set).all_labellings() {
                    out.push(Labelling::from_parts(LabelSet::InOutUnOff, labels));
                }
            }
            out
        }
        (LabelSet::InOutUnOff, Criterion::Semantics(sem)) => {
            ensure_cap(n, caps)?;
            let mut out = Vec::new();
            for set in all_subsets(n) {
                if !graph.is_subargument_complete(&set)
                    || (spec.legal_only && !graph.is_rule_complete(&set)?)
                {
                    continue;
                }
                for labels in View::new(graph, &set).labellings(sem) {
                    out.push(Labelling::from_parts(LabelSet::InOutUnOff, labels));
                }
            }
            out
        }
        (label_set, criterion) => {
            return Err(SemanticsError::Incompatible {
                criterion,
                label_set,
            })
        }
    };
    out.sort();
    Ok(out)
}

/// Membership of `labelling` in the set `spec` assigns to `graph`.
pub fn admits(
    graph: &ArgumentationGraph,
    spec: &LabellingSpec,
    labelling: &Labelling,
    caps: &Caps,
) -> Result<bool, SemanticsError> {
    let labels = labelling.labels();
    if labels.len() != graph.len() || !labels.iter().all(|l| spec.label_set.contains(*l)) {
        return Ok(false);
    }
    let active = labelling.active();
    match (spec.label_set, spec.criterion) {
        (_, Criterion::All) => Ok(true),
        (LabelSet::OnOff, criterion) => subgraph_filter(graph, &active, criterion),
        (LabelSet::InOutUn, Criterion::Semantics(sem)) => {
            if sem == Semantics::Preferred {
                ensure_cap(graph.len(), caps)?;
            }
            Ok(View::new(graph, &active).admits(sem, labels))
        }
        (LabelSet::InOutUnOff, Criterion::Semantics(sem)) => {
            if !graph.is_subargument_complete(&active)
                || (spec.legal_only && !graph.is_rule_complete(&active)?)
            {
                return Ok(false);
            }
            if sem == Semantics::Preferred {
                ensure_cap(active.len(), caps)?;
            }
            Ok(View::new(graph, &active).admits(sem, labels))
        }
        (label_set, criterion) => Err(SemanticsError::Incompatible {
            criterion,
            label_set,
        }),
    }
}

/// Justification status of an argument across a set of labellings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JustificationLabel {
    /// OFF in every labelling.
    Ofj,
    /// IN in every labelling.
    Skj,
    /// IN in some but not all labellings.
    Crj,
    /// Neither of the above.
    Noj,
}

impl JustificationLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            JustificationLabel::Ofj => "OFJ",
            JustificationLabel::Skj => "SKJ",
            JustificationLabel::Crj => "CRJ",
            JustificationLabel::Noj => "NOJ",
        }
    }
}

impl fmt::Display for JustificationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Semi-skeptical justification labelling of a non-empty labelling set, positional.
pub fn semi_skeptical_justification<'a>(
    labellings: impl IntoIterator<Item = &'a Labelling>,
) -> Result<Vec<JustificationLabel>, SemanticsError> {
    let labellings: Vec<&Labelling> = labellings.into_iter().collect();
    let first = labellings.first().ok_or(SemanticsError::EmptyLabellingSet)?;
    let n = first.len();
    if labellings.iter().any(|l| l.len() != n) {
        return Err(SemanticsError::MismatchedLabellings);
    }
    Ok((0..n)
        .map(|a| {
            let all = |label| labellings.iter().all(|l| l.get(a) == label);
            let some_in = labellings.iter().any(|l| l.get(a) == ArgLabel::In);
            if all(ArgLabel::Off) {
                JustificationLabel::Ofj
            } else if all(ArgLabel::In) {
                JustificationLabel::Skj
            } else if some_in {
                JustificationLabel::Crj
            } else {
                JustificationLabel::Noj
            }
        })
        .collect())
}
