//! Marginal probabilities of argument and statement labels, and justification from a PLF.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::frames::Plf;
use crate::graph::{ArgumentationGraph, GraphError};
use crate::label::{ArgLabel, LabelSet, Labelling};
use crate::rational::Rational;
use crate::semantics::{semi_skeptical_justification, JustificationLabel};
use crate::theory::Literal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarginalError {
    #[error("label {label} is not available in label set {set}")]
    LabelNotInSet { label: ArgLabel, set: LabelSet },
    #[error("statement label `{label}` is not part of the {scheme} scheme")]
    StatementLabelNotInScheme {
        label: StatementLabel,
        scheme: StatementScheme,
    },
    #[error("justification needs a label set with OFF, found {0}")]
    NoOffLabel(LabelSet),
    #[error("unknown statement label `{0}`")]
    UnknownStatementLabel(String),
    #[error("unknown statement scheme `{0}`")]
    UnknownScheme(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Partial assignment of labels to arguments, by canonical id.
pub type Assignment = BTreeMap<String, ArgLabel>;

/// Whether `label` holds for an argument labelled `actual`.
///
/// In `{IN,OUT,UN,OFF}` labellings the event ON is "not OFF".
fn matches_label(actual: ArgLabel, label: ArgLabel) -> bool {
    actual == label || (label == ArgLabel::On && matches!(actual, ArgLabel::In | ArgLabel::Out | ArgLabel::Un))
}

fn check_label(plf: &Plf, label: ArgLabel) -> Result<(), MarginalError> {
    let set = plf.spec().label_set();
    if set.contains(label) || (label == ArgLabel::On && set == LabelSet::InOutUnOff) {
        Ok(())
    } else {
        Err(MarginalError::LabelNotInSet { label, set })
    }
}

/// `P(L_A = l)`.
pub fn arg_marginal(plf: &Plf, id: &str, label: ArgLabel) -> Result<Rational, MarginalError> {
    let index = plf.graph().index_of(id)?;
    check_label(plf, label)?;
    Ok(arg_marginal_at(plf, index, label))
}

pub(crate) fn arg_marginal_at(plf: &Plf, index: usize, label: ArgLabel) -> Rational {
    plf.dist().event(|l| matches_label(l.get(index), label))
}

/// Probability that every entry of `assignment` holds.
pub fn joint_probability(plf: &Plf, assignment: &Assignment) -> Result<Rational, MarginalError> {
    let mut indexed = Vec::with_capacity(assignment.len());
    for (id, label) in assignment {
        check_label(plf, *label)?;
        indexed.push((plf.graph().index_of(id)?, *label));
    }
    Ok(plf
        .dist()
        .event(|l| indexed.iter().all(|(i, label)| matches_label(l.get(*i), *label))))
}

/// Statement labelling scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementScheme {
    /// `{in, no}`
    Bivalent,
    /// `{in, out, un, off, unp}`
    WorstCase,
}

impl StatementScheme {
    pub fn labels(self) -> &'static [StatementLabel] {
        match self {
            StatementScheme::Bivalent => &[StatementLabel::In, StatementLabel::No],
            StatementScheme::WorstCase => &[
                StatementLabel::In,
                StatementLabel::Out,
                StatementLabel::Un,
                StatementLabel::Off,
                StatementLabel::Unp,
            ],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StatementScheme::Bivalent => "bivalent",
            StatementScheme::WorstCase => "worstcase",
        }
    }
}

impl fmt::Display for StatementScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementScheme {
    type Err = MarginalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bivalent" => Ok(StatementScheme::Bivalent),
            "worstcase" | "worst-case" | "worst_case" => Ok(StatementScheme::WorstCase),
            _ => Err(MarginalError::UnknownScheme(s.to_string())),
        }
    }
}

/// Label of a literal under a statement scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementLabel {
    In,
    No,
    Out,
    Un,
    Off,
    Unp,
}

impl StatementLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementLabel::In => "in",
            StatementLabel::No => "no",
            StatementLabel::Out => "out",
            StatementLabel::Un => "un",
            StatementLabel::Off => "off",
            StatementLabel::Unp => "unp",
        }
    }
}

impl fmt::Display for StatementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementLabel {
    type Err = MarginalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            StatementLabel::In,
            StatementLabel::No,
            StatementLabel::Out,
            StatementLabel::Un,
            StatementLabel::Off,
            StatementLabel::Unp,
        ]
        .into_iter()
        .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
        .ok_or_else(|| MarginalError::UnknownStatementLabel(s.to_string()))
    }
}

/// Statement label of `literal` in `labelling`.
///
/// Worst-case clauses, in order: `in` if some argument for the literal is IN;
/// `un` if none is IN and some is UN (an ON argument of an `{ON,OFF}` labelling
/// counts as UN); `out` if some is OUT and the rest are OUT or OFF; `off` if all
/// are OFF; `unp` if the graph has no argument for the literal.
pub fn statement_label(
    labelling: &Labelling,
    graph: &ArgumentationGraph,
    literal: &Literal,
    scheme: StatementScheme,
) -> StatementLabel {
    let supporters = (0..graph.len())
        .filter(|&i| graph.argument(i).is_some_and(|a| a.conclusion() == literal))
        .map(|i| labelling.get(i));
    statement_label_from(supporters, scheme)
}

fn statement_label_from(
    supporters: impl Iterator<Item = ArgLabel>,
    scheme: StatementScheme,
) -> StatementLabel {
    let (mut any, mut has_in, mut has_un, mut has_out) = (false, false, false, false);
    for label in supporters {
        any = true;
        match label {
            ArgLabel::In => has_in = true,
            ArgLabel::Un | ArgLabel::On => has_un = true,
            ArgLabel::Out => has_out = true,
            ArgLabel::Off => {}
        }
    }
    match scheme {
        StatementScheme::Bivalent if has_in => StatementLabel::In,
        StatementScheme::Bivalent => StatementLabel::No,
        StatementScheme::WorstCase if !any => StatementLabel::Unp,
        StatementScheme::WorstCase if has_in => StatementLabel::In,
        StatementScheme::WorstCase if has_un => StatementLabel::Un,
        StatementScheme::WorstCase if has_out => StatementLabel::Out,
        StatementScheme::WorstCase => StatementLabel::Off,
    }
}

/// `P(K_φ = k)`.
pub fn stmt_marginal(
    plf: &Plf,
    literal: &Literal,
    label: StatementLabel,
    scheme: StatementScheme,
) -> Result<Rational, MarginalError> {
    if !scheme.labels().contains(&label) {
        return Err(MarginalError::StatementLabelNotInScheme { label, scheme });
    }
    Ok(stmt_distribution(plf, literal, scheme)
        .remove(&label)
        .unwrap_or_else(Rational::zero))
}

/// `P(K_φ = k)` for every label of the scheme, zeros included.
pub fn stmt_distribution(
    plf: &Plf,
    literal: &Literal,
    scheme: StatementScheme,
) -> BTreeMap<StatementLabel, Rational> {
    let graph = plf.graph();
    let supporters: Vec<usize> = (0..graph.len())
        .filter(|&i| graph.argument(i).is_some_and(|a| a.conclusion() == literal))
        .collect();
    let mut out: BTreeMap<StatementLabel, Rational> = scheme
        .labels()
        .iter()
        .map(|l| (*l, Rational::zero()))
        .collect();
    for (labelling, p) in plf.dist().iter() {
        let label = statement_label_from(supporters.iter().map(|&i| labelling.get(i)), scheme);
        *out.get_mut(&label).expect("scheme label") += p;
    }
    out
}

/// Justification from marginals: OFJ iff `P(OFF) = 1`, SKJ iff `P(IN) = 1`,
/// CRJ iff `0 < P(IN) < 1`, NOJ otherwise. Positional over the graph.
pub fn justification_from_plf(plf: &Plf) -> Result<Vec<JustificationLabel>, MarginalError> {
    let set = plf.spec().label_set();
    if !set.has_off() {
        return Err(MarginalError::NoOffLabel(set));
    }
    Ok((0..plf.graph().len())
        .map(|i| {
            let off = arg_marginal_at(plf, i, ArgLabel::Off);
            let inside = arg_marginal_at(plf, i, ArgLabel::In);
            if off.is_one() {
                JustificationLabel::Ofj
            } else if inside.is_one() {
                JustificationLabel::Skj
            } else if !inside.is_zero() {
                JustificationLabel::Crj
            } else {
                JustificationLabel::Noj
            }
        })
        .collect())
}

/// Semi-skeptical justification over the PLF's positive-probability support.
pub fn justification_over_support(plf: &Plf) -> Vec<JustificationLabel> {
    semi_skeptical_justification(plf.dist().support())
        .expect("a distribution has a non-empty support")
}
