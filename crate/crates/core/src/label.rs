//! Argument labels, label sets and labellings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{ArgSet, ArgumentationGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label {label} is not in the label set {set}")]
    OutsideSet { label: ArgLabel, set: LabelSet },
    #[error("labelling covers {found} arguments, graph has {expected}")]
    NotTotal { expected: usize, found: usize },
}

/// Argument label. The derived order `IN < OUT < UN < ON < OFF` fixes output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArgLabel {
    In,
    Out,
    Un,
    On,
    Off,
}

impl ArgLabel {
    pub const ALL: [ArgLabel; 5] = [
        ArgLabel::In,
        ArgLabel::Out,
        ArgLabel::Un,
        ArgLabel::On,
        ArgLabel::Off,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ArgLabel::In => "IN",
            ArgLabel::Out => "OUT",
            ArgLabel::Un => "UN",
            ArgLabel::On => "ON",
            ArgLabel::Off => "OFF",
        }
    }
}

impl fmt::Display for ArgLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ArgLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "IN" => Ok(ArgLabel::In),
            "OUT" => Ok(ArgLabel::Out),
            "UN" => Ok(ArgLabel::Un),
            "ON" => Ok(ArgLabel::On),
            "OFF" => Ok(ArgLabel::Off),
            _ => Err(LabelError::UnknownLabel(s.to_string())),
        }
    }
}

/// The three admissible label sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelSet {
    /// `{ON, OFF}`
    OnOff,
    /// `{IN, OUT, UN}`
    InOutUn,
    /// `{IN, OUT, UN, OFF}`
    InOutUnOff,
}

impl LabelSet {
    pub fn labels(self) -> &'static [ArgLabel] {
        match self {
            LabelSet::OnOff => &[ArgLabel::On, ArgLabel::Off],
            LabelSet::InOutUn => &[ArgLabel::In, ArgLabel::Out, ArgLabel::Un],
            LabelSet::InOutUnOff => &[ArgLabel::In, ArgLabel::Out, ArgLabel::Un, ArgLabel::Off],
        }
    }

    pub fn contains(self, label: ArgLabel) -> bool {
        self.labels().contains(&label)
    }

    pub fn has_off(self) -> bool {
        self != LabelSet::InOutUn
    }

    pub fn has_in(self) -> bool {
        self != LabelSet::OnOff
    }

    /// The smallest label set containing every label in `labels`, if any.
    pub fn covering(labels: impl IntoIterator<Item = ArgLabel>) -> Option<LabelSet> {
        let (mut acceptance, mut on, mut off) = (false, false, false);
        for label in labels {
            match label {
                ArgLabel::In | ArgLabel::Out | ArgLabel::Un => acceptance = true,
                ArgLabel::On => on = true,
                ArgLabel::Off => off = true,
            }
        }
        match (acceptance, on, off) {
            (true, true, _) => None,
            (true, false, true) => Some(LabelSet::InOutUnOff),
            (true, false, false) => Some(LabelSet::InOutUn),
            (false, _, _) => Some(LabelSet::OnOff),
        }
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelSet::OnOff => "{ON,OFF}",
            LabelSet::InOutUn => "{IN,OUT,UN}",
            LabelSet::InOutUnOff => "{IN,OUT,UN,OFF}",
        })
    }
}

/// A total labelling, positional over a graph's canonical argument order.
///
/// Ordering compares labels argument by argument, which is the lexicographic
/// order over canonical ids and label order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    labels: Vec<ArgLabel>,
    label_set: LabelSet,
}

impl Labelling {
    pub fn new(label_set: LabelSet, labels: Vec<ArgLabel>) -> Result<Self, LabelError> {
        if let Some(&bad) = labels.iter().find(|l| !label_set.contains(**l)) {
            return Err(LabelError::OutsideSet {
                label: bad,
                set: label_set,
            });
        }
        Ok(Labelling { labels, label_set })
    }

    /// Checks totality against `graph` as well.
    pub fn for_graph(
        graph: &ArgumentationGraph,
        label_set: LabelSet,
        labels: Vec<ArgLabel>,
    ) -> Result<Self, LabelError> {
        if labels.len() != graph.len() {
            return Err(LabelError::NotTotal {
                expected: graph.len(),
                found: labels.len(),
            });
        }
        Self::new(label_set, labels)
    }

    pub(crate) fn from_parts(label_set: LabelSet, labels: Vec<ArgLabel>) -> Self {
        debug_assert!(labels.iter().all(|l| label_set.contains(*l)));
        Labelling { labels, label_set }
    }

    /// `{ON,OFF}` labelling with `on` labelled ON.
    pub fn on_off(len: usize, on: &ArgSet) -> Self {
        let labels = (0..len)
            .map(|i| if on.contains(&i) { ArgLabel::On } else { ArgLabel::Off })
            .collect();
        Labelling::from_parts(LabelSet::OnOff, labels)
    }

    pub fn label_set(&self) -> LabelSet {
        self.label_set
    }

    pub fn labels(&self) -> &[ArgLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, index: usize) -> ArgLabel {
        self.labels[index]
    }

    /// `l(L)`: the arguments carrying `label`.
    pub fn with_label(&self, label: ArgLabel) -> ArgSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == label)
            .map(|(i, _)| i)
            .collect()
    }

    /// Arguments not labelled OFF.
    pub fn active(&self) -> ArgSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != ArgLabel::Off)
            .map(|(i, _)| i)
            .collect()
    }

    /// Renders as `{id=LABEL, ...}` using `graph` for names.
    pub fn display(&self, graph: &ArgumentationGraph) -> String {
        let parts: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{}={}", graph.id(i), l))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}
