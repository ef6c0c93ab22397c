//! Checks a PLF against the probabilistic properties its specification guarantees.

use std::collections::BTreeSet;
use std::fmt;

use crate::frames::Plf;
use crate::label::{ArgLabel, LabelSet};
use crate::marginals::{arg_marginal_at, stmt_distribution, StatementLabel, StatementScheme};
use crate::rational::Rational;
use crate::semantics::Semantics;
use crate::theory::{close_conflicts, DefeasibleTheory, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Violated,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::Violated => "violated",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One property, with its witnesses when violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    /// Violations of mandatory properties count as failures; others are diagnostics.
    pub mandatory: bool,
    pub status: CheckStatus,
    pub witnesses: Vec<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn get(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn mandatory_violations(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks
            .iter()
            .filter(|c| c.mandatory && c.status == CheckStatus::Violated)
    }

    pub fn mandatory_hold(&self) -> bool {
        self.mandatory_violations().next().is_none()
    }
}

struct Builder {
    checks: Vec<PropertyCheck>,
}

impl Builder {
    fn push(&mut self, name: &'static str, mandatory: bool, applicable: bool, witnesses: Vec<String>) {
        self.push_noted(name, mandatory, applicable, witnesses, None);
    }

    fn push_noted(
        &mut self,
        name: &'static str,
        mandatory: bool,
        applicable: bool,
        witnesses: Vec<String>,
        note: Option<String>,
    ) {
        let status = if !applicable {
            CheckStatus::NotApplicable
        } else if witnesses.is_empty() {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        };
        self.checks.push(PropertyCheck {
            name,
            mandatory,
            status,
            witnesses: if applicable { witnesses } else { Vec::new() },
            note,
        });
    }
}

/// Literals worth reporting: every argument conclusion plus every literal of the theory.
pub fn statement_universe(plf: &Plf, theory: Option<&DefeasibleTheory>) -> BTreeSet<Literal> {
    let graph = plf.graph();
    let mut out: BTreeSet<Literal> = (0..graph.len())
        .filter_map(|i| graph.argument(i).map(|a| a.conclusion().clone()))
        .collect();
    if let Some(theory) = theory {
        out.extend(theory.literals());
    }
    out
}

/// Evaluates every property; applicability follows the PLF's specification.
///
/// Statement-level checks need `theory` for the conflict relation.
pub fn check_properties(plf: &Plf, theory: Option<&DefeasibleTheory>) -> PropertyReport {
    let graph = plf.graph();
    let spec = plf.spec();
    let label_set = spec.label_set();
    let n = graph.len();
    let p = |i: usize, l: ArgLabel| arg_marginal_at(plf, i, l);
    let mut b = Builder { checks: Vec::new() };

    let mut w = Vec::new();
    for i in 0..n {
        let total: Rational = label_set.labels().iter().map(|l| p(i, *l)).sum();
        if !total.is_one() {
            w.push(format!("{}: labels sum to {total}", graph.id(i)));
        }
    }
    b.push("label-marginals-sum-to-one", true, true, w);

    let universe = statement_universe(plf, theory);
    let mut sums = Vec::new();
    let mut unp = Vec::new();
    for literal in &universe {
        for scheme in [StatementScheme::Bivalent, StatementScheme::WorstCase] {
            let dist = stmt_distribution(plf, literal, scheme);
            let total: Rational = dist.values().sum();
            if !total.is_one() {
                sums.push(format!("{literal} ({scheme}): labels sum to {total}"));
            }
            if scheme == StatementScheme::WorstCase {
                let q = &dist[&StatementLabel::Unp];
                if !q.is_zero() && !q.is_one() {
                    unp.push(format!("{literal}: P(unp) = {q}"));
                }
            }
        }
    }
    b.push("statement-marginals-sum-to-one", true, true, sums);
    b.push("unp-zero-or-one", true, true, unp);

    let has_in = label_set.has_in();
    let in_probs: Vec<Rational> = (0..n).map(|i| p(i, ArgLabel::In)).collect();

    let mut w = Vec::new();
    if has_in {
        for &(from, to) in graph.attacks() {
            let total = &in_probs[from] + &in_probs[to];
            if total > Rational::one() {
                w.push(format!(
                    "({}, {}): P(IN) + P(IN) = {total}",
                    graph.id(from),
                    graph.id(to)
                ));
            }
        }
    }
    b.push("coherence", true, has_in, w);

    let founded = spec.is_complete_based();
    let mut w = Vec::new();
    if founded {
        for i in (0..n).filter(|&i| graph.attackers(i).is_empty()) {
            let value = if label_set == LabelSet::InOutUnOff {
                &in_probs[i] + &p(i, ArgLabel::Off)
            } else {
                in_probs[i].clone()
            };
            if !value.is_one() {
                w.push(format!("{}: unattacked but P(IN) (+ P(OFF)) = {value}", graph.id(i)));
            }
        }
    }
    b.push("foundedness", true, founded, w);

    let stable = spec.semantics() == Some(Semantics::Stable);
    let mut w = Vec::new();
    if stable {
        for i in 0..n {
            let un = p(i, ArgLabel::Un);
            if !un.is_zero() {
                w.push(format!("{}: P(UN) = {un}", graph.id(i)));
            }
        }
    }
    b.push("stable-no-undecided", true, stable, w);

    let with_off = label_set == LabelSet::InOutUnOff;
    let on_probs: Vec<Rational> = (0..n)
        .map(|i| if label_set.has_off() { p(i, ArgLabel::On) } else { Rational::one() })
        .collect();
    let mut w = Vec::new();
    if with_off {
        for i in 0..n {
            if in_probs[i] > on_probs[i] {
                w.push(format!("{}: P(IN) = {} > P(ON) = {}", graph.id(i), in_probs[i], on_probs[i]));
            }
        }
    }
    b.push("in-at-most-on", true, with_off, w);

    let sub_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|sup| graph.strict_subarguments(sup).into_iter().map(move |sub| (sub, sup)))
        .collect();

    let combined = with_off && spec.is_cf_based();
    let mut w = Vec::new();
    if combined {
        for &(sub, sup) in &sub_pairs {
            if in_probs[sup] > on_probs[sub] {
                w.push(format!(
                    "{} under {}: P(IN) = {} > P(ON) = {}",
                    graph.id(sup),
                    graph.id(sub),
                    in_probs[sup],
                    on_probs[sub]
                ));
            }
        }
    }
    b.push("superargument-in-at-most-sub-on", true, combined, w);

    let has_off = label_set.has_off();
    let mut w = Vec::new();
    if has_off {
        for &(sub, sup) in &sub_pairs {
            if on_probs[sup] > on_probs[sub] {
                w.push(format!(
                    "{} under {}: P(ON) = {} > {}",
                    graph.id(sup),
                    graph.id(sub),
                    on_probs[sup],
                    on_probs[sub]
                ));
            }
        }
    }
    let guaranteed = spec.guarantees_subargument_completeness();
    b.push_noted(
        "subargument-on-monotonicity",
        guaranteed,
        has_off,
        w,
        (!guaranteed && has_off)
            .then(|| "diagnostic: the specification does not force subargument-complete ON sets".into()),
    );

    let conflicts_applicable = spec.is_cf_based() && has_in && theory.is_some();
    let mut w = Vec::new();
    let mut skipped = Vec::new();
    if let (true, Some(theory)) = (conflicts_applicable, theory) {
        for (first, second) in close_conflicts(theory) {
            let supporters = |lit: &Literal| -> Vec<usize> {
                (0..n)
                    .filter(|&i| graph.argument(i).is_some_and(|a| a.conclusion() == lit))
                    .collect()
            };
            let (s1, s2) = (supporters(&first), supporters(&second));
            if s1.is_empty() || s2.is_empty() {
                continue;
            }
            let joined = s1.iter().all(|&a| {
                s2.iter()
                    .all(|&c| graph.attacks_pair(a, c) || graph.attacks_pair(c, a))
            });
            if !joined {
                skipped.push(format!("({first}, {second})"));
                continue;
            }
            let in1 = stmt_distribution(plf, &first, StatementScheme::Bivalent)[&StatementLabel::In].clone();
            let in2 = stmt_distribution(plf, &second, StatementScheme::Bivalent)[&StatementLabel::In].clone();
            let sum = &in1 + &in2;
            if sum > Rational::one() {
                w.push(format!("({first}, {second}): P(in) + P(in) = {sum}"));
            }
            if in1 > in2.complement() {
                w.push(format!("({first}, {second}): P(in) = {in1} > P(not in) = {}", in2.complement()));
            }
        }
    }
    b.push_noted(
        "conflicting-statements",
        true,
        conflicts_applicable,
        w,
        (!skipped.is_empty()).then(|| {
            format!(
                "skipped pairs whose supporting arguments are not all joined by an attack: {}",
                skipped.join(", ")
            )
        }),
    );

    let mut w = Vec::new();
    if has_in {
        for i in 0..n {
            let pressure: Rational = graph.attackers(i).iter().map(|&a| in_probs[a].clone()).sum();
            let bound = Rational::one() - pressure;
            if in_probs[i] < bound {
                w.push(format!("{}: P(IN) = {} < {}", graph.id(i), in_probs[i], bound));
            }
        }
    }
    b.push_noted(
        "optimism",
        false,
        has_in,
        w,
        has_in.then(|| "diagnostic only".to_string()),
    );

    PropertyReport { checks: b.checks }
}
