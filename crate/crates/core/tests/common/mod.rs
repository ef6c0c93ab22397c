//! Fixtures, brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use arglab_core::construct::{build_graph, Caps, PreferencePolicy};
use arglab_core::dsl::parse_theory;
use arglab_core::frames::{Pgf, Plf};
use arglab_core::{ArgLabel, ArgSet, ArgumentationGraph, LabelSet, Labelling, LabellingSpec, Rational, Semantics, TheoryDocument};
use proptest::prelude::*;

pub const RUNNING: &str = "\
# solar panels and batteries
rb1: => -b1.
rb2: => -b2.
rb: -b1, -b2 => -b.
rc: ~-b => c.
rnc: => -c.
conflict(c, -c).
";

pub const RUNNING_PROBS: &str = "p(rb1) = 1/2. p(rb2) = 0.2.\n";

pub const ABSTRACT: &str = "\
r1: => a.
r2: => b.
r3: a => b.
r4: b => c.
";

pub const B1: &str = "rb1()";
pub const B2: &str = "rb2()";
pub const B: &str = "rb(rb1(),rb2())";
pub const C: &str = "rc()";
pub const D: &str = "rnc()";

pub const ARG_A: &str = "r1()";
pub const ARG_B: &str = "r2()";
pub const ARG_AB: &str = "r3(r1())";
pub const ARG_BC: &str = "r4(r2())";
pub const ARG_ABC: &str = "r4(r3(r1()))";

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn running_doc() -> TheoryDocument {
    parse_theory(&format!("{RUNNING}{RUNNING_PROBS}")).expect("running theory parses")
}

pub fn graph_of(text: &str) -> ArgumentationGraph {
    let doc = parse_theory(text).expect("theory parses");
    build_graph(&doc.theory, PreferencePolicy::LastLink, &Caps::default()).expect("graph builds")
}

pub fn ids(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// Mutual attack between B and C, no subarguments.
pub fn mutual_attack() -> Arc<ArgumentationGraph> {
    Arc::new(
        ArgumentationGraph::abstract_graph(["B", "C"], pairs(&[("B", "C"), ("C", "B")]), Vec::new())
            .expect("valid graph"),
    )
}

pub fn labelling(graph: &ArgumentationGraph, set: LabelSet, labels: &[(&str, ArgLabel)]) -> Labelling {
    let mut out = vec![ArgLabel::Off; graph.len()];
    for (id, label) in labels {
        out[graph.index_of(id).expect("known id")] = *label;
    }
    Labelling::for_graph(graph, set, out).expect("valid labelling")
}

/// The B⇄C PLF: `{B:IN, C:OUT}` 2/5, `{B:OUT, C:IN}` 2/5, `{B:IN, C:OFF}` 1/5.
pub fn mutual_attack_plf() -> Plf {
    use ArgLabel::*;
    let graph = mutual_attack();
    let set = LabelSet::InOutUnOff;
    let entries = vec![
        (labelling(&graph, set, &[("B", In), ("C", Out)]), q(2, 5)),
        (labelling(&graph, set, &[("B", Out), ("C", In)]), q(2, 5)),
        (labelling(&graph, set, &[("B", In), ("C", Off)]), q(1, 5)),
    ];
    Plf::new(graph, LabellingSpec::combined(Semantics::Preferred, false), entries, &Caps::default())
        .expect("valid PLF")
}

/// The 16-subtheory table over rules r1..r4, with r1 the most significant bit.
pub fn abstract_ptf_weights() -> Vec<(u8, i64)> {
    vec![
        (0b1111, 1),
        (0b1110, 2),
        (0b1101, 0),
        (0b1100, 1),
        (0b1011, 1),
        (0b1010, 1),
        (0b1001, 0),
        (0b1000, 2),
        (0b0111, 1),
        (0b0110, 1),
        (0b0101, 1),
        (0b0100, 1),
        (0b0011, 0),
        (0b0010, 0),
        (0b0001, 3),
        (0b0000, 1),
    ]
}

pub fn pgf_prob(pgf: &Pgf, members: &[&str]) -> Rational {
    pgf.prob_of(members.iter().copied()).expect("known ids")
}

// ---------------------------------------------------------------------------
// Oracles. These re-derive semantics from extension-based definitions, without
// touching the library's fixpoint or backtracking code.

fn attacks(graph: &ArgumentationGraph, active: &ArgSet, from: usize, to: usize) -> bool {
    active.contains(&from) && active.contains(&to) && graph.attacks_pair(from, to)
}

fn subsets(items: &[usize]) -> Vec<ArgSet> {
    (0u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

/// Complete extensions of the subgraph on `active`: conflict-free sets that
/// defend all their members and contain everything they defend.
pub fn complete_extensions(graph: &ArgumentationGraph, active: &ArgSet) -> Vec<ArgSet> {
    let members: Vec<usize> = active.iter().copied().collect();
    let defends = |set: &ArgSet, a: usize| {
        members
            .iter()
            .filter(|&&b| attacks(graph, active, b, a))
            .all(|&b| set.iter().any(|&c| attacks(graph, active, c, b)))
    };
    subsets(&members)
        .into_iter()
        .filter(|set| {
            let cf = set.iter().all(|&a| set.iter().all(|&b| !attacks(graph, active, a, b)));
            cf && members.iter().all(|&a| defends(set, a) == set.contains(&a))
        })
        .collect()
}

/// Labelling induced by an extension, OFF outside `active`.
pub fn extension_to_labels(graph: &ArgumentationGraph, active: &ArgSet, ext: &ArgSet) -> Vec<ArgLabel> {
    (0..graph.len())
        .map(|a| {
            if !active.contains(&a) {
                ArgLabel::Off
            } else if ext.contains(&a) {
                ArgLabel::In
            } else if ext.iter().any(|&b| attacks(graph, active, b, a)) {
                ArgLabel::Out
            } else {
                ArgLabel::Un
            }
        })
        .collect()
}

/// Oracle labellings under `semantics`, restricted to `active`, as sorted label vectors.
pub fn oracle_labellings(graph: &ArgumentationGraph, active: &ArgSet, semantics: Semantics) -> Vec<Vec<ArgLabel>> {
    let mut out: Vec<Vec<ArgLabel>> = match semantics {
        Semantics::ConflictFree => oracle_conflict_free(graph, active),
        _ => {
            let complete = complete_extensions(graph, active);
            let chosen: Vec<&ArgSet> = match semantics {
                Semantics::Complete => complete.iter().collect(),
                Semantics::Grounded => complete
                    .iter()
                    .filter(|e| complete.iter().all(|o| e.is_subset(o)))
                    .collect(),
                Semantics::Preferred => complete
                    .iter()
                    .filter(|e| !complete.iter().any(|o| o != *e && e.is_subset(o)))
                    .collect(),
                Semantics::Stable => complete
                    .iter()
                    .filter(|e| {
                        active.iter().all(|&a| {
                            e.contains(&a) || e.iter().any(|&b| attacks(graph, active, b, a))
                        })
                    })
                    .collect(),
                Semantics::ConflictFree => unreachable!(),
            };
            chosen
                .into_iter()
                .map(|e| extension_to_labels(graph, active, e))
                .collect()
        }
    };
    out.sort();
    out
}

/// Brute force over `{IN,OUT,UN}^active`: IN has no IN attacker, OUT has one.
fn oracle_conflict_free(graph: &ArgumentationGraph, active: &ArgSet) -> Vec<Vec<ArgLabel>> {
    let members: Vec<usize> = active.iter().copied().collect();
    let total = 3usize.pow(members.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut labels = vec![ArgLabel::Off; graph.len()];
        for &a in &members {
            labels[a] = [ArgLabel::In, ArgLabel::Out, ArgLabel::Un][code % 3];
            code /= 3;
        }
        let ok = members.iter().all(|&a| {
            let in_attacker = members
                .iter()
                .any(|&b| attacks(graph, active, b, a) && labels[b] == ArgLabel::In);
            match labels[a] {
                ArgLabel::In => !in_attacker,
                ArgLabel::Out => in_attacker,
                _ => true,
            }
        });
        if ok {
            out.push(labels);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generators.

/// Abstract graph with up to `max` arguments and arbitrary attacks, self-attacks included.
pub fn arb_graph(max: usize) -> impl Strategy<Value = ArgumentationGraph> {
    (0..=max)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| {
            let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
            let attacks: Vec<(String, String)> = bits
                .iter()
                .enumerate()
                .filter(|(_, on)| **on)
                .map(|(k, _)| (names[k / n].clone(), names[k % n].clone()))
                .collect();
            ArgumentationGraph::abstract_graph(names, attacks, Vec::new()).expect("valid graph")
        })
}

const ATOMS: [&str; 3] = ["a", "b", "c"];

fn arb_literal() -> impl Strategy<Value = String> {
    (0..ATOMS.len(), any::<bool>()).prop_map(|(atom, neg)| format!("{}{}", if neg { "-" } else { "" }, ATOMS[atom]))
}

fn arb_rule_body() -> impl Strategy<Value = String> {
    (
        proptest::collection::vec(arb_literal(), 0..=2),
        proptest::option::weighted(0.3, arb_literal()),
    )
        .prop_map(|(plain, naf)| {
            let mut parts = plain;
            if let Some(lit) = naf {
                parts.push(format!("~{lit}"));
            }
            parts.join(", ")
        })
}

fn arb_prob() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("1"), Just("1/2"), Just("0.25"), Just("2/3"), Just("0")]
}

/// Theory text with 1 to 6 rules over three atoms, optional superiority and rule probabilities.
pub fn arb_theory_text() -> impl Strategy<Value = String> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((arb_rule_body(), arb_literal(), arb_prob()), n),
                proptest::option::of((0..n, 0..n)),
                any::<bool>(),
            )
        })
        .prop_map(|(rules, superiority, conflict)| {
            let mut text = String::new();
            for (i, (body, head, _)) in rules.iter().enumerate() {
                text.push_str(&format!("r{i}: {body} => {head}.\n"));
            }
            for (i, (_, _, prob)) in rules.iter().enumerate() {
                text.push_str(&format!("p(r{i}) = {prob}.\n"));
            }
            if let Some((winner, loser)) = superiority {
                if winner != loser {
                    text.push_str(&format!("r{winner} > r{loser}.\n"));
                }
            }
            if conflict {
                text.push_str("conflict(a, b).\n");
            }
            text
        })
}

// ---------------------------------------------------------------------------
// Property checks shared by the proptest suites and the acceptance harness.

use arglab_core::frames::{
    pef_from_plf, pgf_from_plf, pgf_from_ptf, plf_from_pef, plf_from_pgf, plf_with_semantics, ptf_independent, Pef,
    SublabellingWeights,
};
use arglab_core::semantics::{grounded_labelling, labellings};
use arglab_core::{check_properties, CheckStatus, FrameError, PropertyReport};

fn holds(report: &PropertyReport, name: &str, context: &str) -> Result<(), TestCaseError> {
    let check = report
        .get(name)
        .ok_or_else(|| TestCaseError::fail(format!("{context}: no check named {name}")))?;
    if check.status == CheckStatus::Violated {
        return Err(TestCaseError::fail(format!("{context}: {name} violated: {:?}", check.witnesses)));
    }
    Ok(())
}

fn all_mandatory(report: &PropertyReport, context: &str) -> Result<(), TestCaseError> {
    if let Some(bad) = report.mandatory_violations().next() {
        return Err(TestCaseError::fail(format!("{context}: {} violated: {:?}", bad.name, bad.witnesses)));
    }
    Ok(())
}

/// Library semantics agree with the extension-based oracle; grounded fixpoint included.
pub fn semantics_agree_with_oracle(graph: &ArgumentationGraph) -> Result<(), TestCaseError> {
    let active = graph.all();
    for sem in Semantics::ALL {
        let found: Vec<Vec<ArgLabel>> = labellings(graph, &LabellingSpec::acceptance(sem), &Caps::default())
            .map_err(|e| TestCaseError::fail(e.to_string()))?
            .iter()
            .map(|l| l.labels().to_vec())
            .collect();
        let expected = oracle_labellings(graph, &active, sem);
        prop_assert_eq!(&found, &expected, "semantics {}", sem);
    }
    let oracle = oracle_labellings(graph, &active, Semantics::Grounded);
    prop_assert_eq!(vec![grounded_labelling(graph).labels().to_vec()], oracle);
    Ok(())
}

/// Outcome of one random-theory pipeline run.
pub struct PipelineRun {
    pub arguments: usize,
    pub subgraphs: usize,
}

/// PTF → PGF → PLF on a random theory, checking every frame-level property.
pub fn theory_pipeline(text: &str) -> Result<PipelineRun, TestCaseError> {
    let doc = parse_theory(text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    let caps = Caps::default();
    let ptf = ptf_independent(&doc, &caps).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(ptf.dist().total().is_one());
    let pgf = pgf_from_ptf(&ptf, PreferencePolicy::LastLink, &caps).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let graph = pgf.graph();
    for set in pgf.dist().support() {
        prop_assert!(graph.is_legal(set).unwrap(), "non-legal subgraph with positive probability\n{}", text);
    }

    let structural = plf_from_pgf(&pgf);
    let report = check_properties(&structural, Some(&doc.theory));
    all_mandatory(&report, "structural")?;
    holds(&report, "subargument-on-monotonicity", "structural")?;
    let back = pgf_from_plf(&structural).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.dist(), pgf.dist(), "PGF -> PLF -> PGF");

    for sem in Semantics::ALL {
        let plf = match plf_with_semantics(&pgf, sem, &SublabellingWeights::uniform(), &caps) {
            Ok(plf) => plf,
            // Odd attack cycles leave some subgraphs without a stable labelling.
            Err(FrameError::NoLabellings(_)) if sem == Semantics::Stable => continue,
            Err(e) => return Err(TestCaseError::fail(format!("{sem}: {e}\n{text}"))),
        };
        let context = format!("{sem}\n{text}");
        let report = check_properties(&plf, Some(&doc.theory));
        all_mandatory(&report, &context)?;
        for name in [
            "label-marginals-sum-to-one",
            "statement-marginals-sum-to-one",
            "unp-zero-or-one",
            "coherence",
            "in-at-most-on",
            "superargument-in-at-most-sub-on",
            "subargument-on-monotonicity",
            "foundedness",
            "stable-no-undecided",
        ] {
            holds(&report, name, &context)?;
        }
        if sem.is_complete_based() {
            prop_assert_eq!(report.get("foundedness").unwrap().status, CheckStatus::Holds);
        }
        if sem == Semantics::Stable {
            prop_assert_eq!(report.get("stable-no-undecided").unwrap().status, CheckStatus::Holds);
        }
        let structure = pgf_from_plf(&plf).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(structure.dist(), pgf.dist(), "subgraph distribution survives {}", sem);
    }
    Ok(PipelineRun {
        arguments: graph.len(),
        subgraphs: pgf.dist().len(),
    })
}

/// Random PEF over `graph` from a list of (mask, weight) draws.
pub fn pef_from_draws(graph: &Arc<ArgumentationGraph>, draws: &[(u32, u8)]) -> Option<Pef> {
    let n = graph.len();
    let mut pairs: std::collections::BTreeMap<ArgSet, i64> = std::collections::BTreeMap::new();
    for (mask, weight) in draws {
        let set: ArgSet = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        *pairs.entry(set).or_default() += i64::from(*weight);
    }
    let total: i64 = pairs.values().sum();
    if total == 0 {
        return None;
    }
    Pef::new(Arc::clone(graph), pairs.into_iter().map(|(s, w)| (s, q(w, total)))).ok()
}

/// PEF → PLF → PEF is the identity, and a semantic PLF survives PLF → PEF → PLF in its IN sets.
pub fn pef_round_trips(graph: &Arc<ArgumentationGraph>, pef: &Pef) -> Result<(), TestCaseError> {
    let plf = plf_from_pef(pef);
    let back = pef_from_plf(&plf).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.dist(), pef.dist(), "PEF -> PLF -> PEF");
    all_mandatory(&check_properties(&plf, None), "PEF frame").or_else(|err| {
        // ALL-{IN,OUT,UN} frames only promise coherence when the belief sets are conflict-free.
        let conflict_free = pef.dist().support().all(|set| {
            set.iter().all(|&a| set.iter().all(|&b| !graph.attacks_pair(a, b)))
        });
        if conflict_free { Err(err) } else { Ok(()) }
    })?;

    let complete = labellings(graph, &LabellingSpec::acceptance(Semantics::Complete), &Caps::default())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let k = complete.len() as i64;
    let semantic = Plf::new(
        Arc::clone(graph),
        LabellingSpec::acceptance(Semantics::Complete),
        complete.into_iter().map(|l| (l, q(1, k))),
        &Caps::default(),
    )
    .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let pef = pef_from_plf(&semantic).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let again = pef_from_plf(&plf_from_pef(&pef)).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(again.dist(), pef.dist(), "PLF -> PEF -> PLF -> PEF");
    Ok(())
}
