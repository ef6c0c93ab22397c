//! Semi-abstract argumentation graphs: arguments, attacks and direct-subargument edges.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::argument::Argument;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("argument `{0}` carries no rule structure; a graph built from a theory is required")]
    MissingStructure(String),
}

/// A set of arguments given by their positions in a graph.
pub type ArgSet = BTreeSet<usize>;

/// One graph vertex. Abstract graphs have no argument structure attached.
#[derive(Debug, Clone)]
pub struct Node {
    id: String,
    argument: Option<Arc<Argument>>,
}

impl Node {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn argument(&self) -> Option<&Arc<Argument>> {
        self.argument.as_ref()
    }
}

/// Arguments sorted by canonical id, with the attack and direct-subargument relations.
///
/// Both relations are stored as index pairs. A sub edge `(a, b)` states that `a`
/// is a direct subargument of `b`.
#[derive(Debug, Clone)]
pub struct ArgumentationGraph {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    attacks: BTreeSet<(usize, usize)>,
    sub_edges: BTreeSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    direct_subs: Vec<Vec<usize>>,
}

impl PartialEq for ArgumentationGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids().eq(other.ids())
            && self.attacks == other.attacks
            && self.sub_edges == other.sub_edges
    }
}

impl Eq for ArgumentationGraph {}

impl ArgumentationGraph {
    /// Graph over structured arguments; sub edges come from each argument's direct subs.
    ///
    /// Direct subarguments missing from `arguments` are not linked.
    pub fn from_arguments(
        arguments: impl IntoIterator<Item = Arc<Argument>>,
        attacks: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let nodes: Vec<Node> = arguments
            .into_iter()
            .map(|a| Node {
                id: a.id().to_string(),
                argument: Some(a),
            })
            .collect();
        let mut sub_pairs = Vec::new();
        for node in &nodes {
            if let Some(arg) = &node.argument {
                for sub in arg.direct_subs() {
                    sub_pairs.push((sub.id().to_string(), node.id.clone()));
                }
            }
        }
        let known: BTreeSet<&str> = nodes.iter().map(|n| n.id.as_str()).collect();
        let sub_pairs: Vec<_> = sub_pairs
            .into_iter()
            .filter(|(a, _)| known.contains(a.as_str()))
            .collect();
        Self::assemble(nodes, attacks, sub_pairs)
    }

    /// Graph over bare identifiers.
    pub fn abstract_graph<S: Into<String>>(
        ids: impl IntoIterator<Item = S>,
        attacks: impl IntoIterator<Item = (String, String)>,
        sub_edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let nodes = ids
            .into_iter()
            .map(|id| Node {
                id: id.into(),
                argument: None,
            })
            .collect();
        Self::assemble(nodes, attacks, sub_edges)
    }

    fn assemble(
        mut nodes: Vec<Node>,
        attacks: impl IntoIterator<Item = (String, String)>,
        sub_edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateArgument(node.id.clone()));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownArgument(id.to_string()))
        };
        let attacks = attacks
            .into_iter()
            .map(|(a, b)| Ok((lookup(&a)?, lookup(&b)?)))
            .collect::<Result<BTreeSet<_>, GraphError>>()?;
        let sub_edges = sub_edges
            .into_iter()
            .map(|(a, b)| Ok((lookup(&a)?, lookup(&b)?)))
            .collect::<Result<BTreeSet<_>, GraphError>>()?;
        Ok(Self::from_indices(nodes, index, attacks, sub_edges))
    }

    fn from_indices(
        nodes: Vec<Node>,
        index: HashMap<String, usize>,
        attacks: BTreeSet<(usize, usize)>,
        sub_edges: BTreeSet<(usize, usize)>,
    ) -> Self {
        let mut attackers = vec![Vec::new(); nodes.len()];
        for &(from, to) in &attacks {
            attackers[to].push(from);
        }
        let mut direct_subs = vec![Vec::new(); nodes.len()];
        for &(sub, sup) in &sub_edges {
            direct_subs[sup].push(sub);
        }
        ArgumentationGraph {
            nodes,
            index,
            attacks,
            sub_edges,
            attackers,
            direct_subs,
        }
    }

    pub fn empty() -> Self {
        Self::from_indices(Vec::new(), HashMap::new(), BTreeSet::new(), BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    pub fn id(&self, index: usize) -> &str {
        &self.nodes[index].id
    }

    pub fn argument(&self, index: usize) -> Option<&Arc<Argument>> {
        self.nodes[index].argument.as_ref()
    }

    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownArgument(id.to_string()))
    }

    /// Translates canonical ids to an index set.
    pub fn resolve<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<ArgSet, GraphError> {
        ids.into_iter().map(|id| self.index_of(id)).collect()
    }

    pub fn set_ids<'a>(&'a self, set: &'a ArgSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |&i| self.id(i))
    }

    pub fn all(&self) -> ArgSet {
        (0..self.len()).collect()
    }

    /// Attack pairs `(attacker, attacked)` by index.
    pub fn attacks(&self) -> &BTreeSet<(usize, usize)> {
        &self.attacks
    }

    /// Sub edges `(subargument, superargument)` by index.
    pub fn sub_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.sub_edges
    }

    pub fn attack_ids(&self) -> Vec<(&str, &str)> {
        self.attacks.iter().map(|&(a, b)| (self.id(a), self.id(b))).collect()
    }

    pub fn sub_edge_ids(&self) -> Vec<(&str, &str)> {
        self.sub_edges.iter().map(|&(a, b)| (self.id(a), self.id(b))).collect()
    }

    pub fn attackers(&self, index: usize) -> &[usize] {
        &self.attackers[index]
    }

    pub fn direct_subs(&self, index: usize) -> &[usize] {
        &self.direct_subs[index]
    }

    pub fn attacks_pair(&self, from: usize, to: usize) -> bool {
        self.attacks.contains(&(from, to))
    }

    /// All strict (transitive) subarguments of `index`.
    pub fn strict_subarguments(&self, index: usize) -> ArgSet {
        let mut out = ArgSet::new();
        let mut stack: Vec<usize> = self.direct_subs[index].clone();
        while let Some(next) = stack.pop() {
            if out.insert(next) {
                stack.extend(self.direct_subs[next].iter().copied());
            }
        }
        out
    }

    /// Sub edges acyclic and antireflexive, and attacks propagate to superarguments.
    pub fn is_well_formed(&self) -> bool {
        let acyclic = (0..self.len()).all(|i| !self.strict_subarguments(i).contains(&i));
        let propagates = self.attacks.iter().all(|&(from, to)| {
            self.sub_edges
                .iter()
                .filter(|&&(sub, _)| sub == to)
                .all(|&(_, sup)| self.attacks.contains(&(from, sup)))
        });
        acyclic && propagates
    }

    /// Every direct subargument of a member is a member.
    pub fn is_subargument_complete(&self, set: &ArgSet) -> bool {
        set.iter()
            .all(|&a| self.direct_subs[a].iter().all(|s| set.contains(s)))
    }

    /// Every argument whose direct subs lie in `set` and whose top rule is used by a
    /// member must itself be a member.
    pub fn is_rule_complete(&self, set: &ArgSet) -> Result<bool, GraphError> {
        let mut used = BTreeSet::new();
        for &member in set {
            used.extend(self.structure(member)?.rules().iter());
        }
        for candidate in 0..self.len() {
            if set.contains(&candidate) {
                continue;
            }
            let arg = self.structure(candidate)?;
            let subs_inside = self.direct_subs[candidate].iter().all(|s| set.contains(s));
            if subs_inside && used.contains(arg.top_rule()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subargument-complete and rule-complete.
    pub fn is_legal(&self, set: &ArgSet) -> Result<bool, GraphError> {
        Ok(self.is_subargument_complete(set) && self.is_rule_complete(set)?)
    }

    fn structure(&self, index: usize) -> Result<&Arc<Argument>, GraphError> {
        self.nodes[index]
            .argument
            .as_ref()
            .ok_or_else(|| GraphError::MissingStructure(self.nodes[index].id.clone()))
    }

    /// True when every node carries argument structure.
    pub fn is_structured(&self) -> bool {
        self.nodes.iter().all(|n| n.argument.is_some())
    }

    /// The subgraph induced by `set`, re-indexed in canonical order.
    pub fn induced_subgraph(&self, set: &ArgSet) -> ArgumentationGraph {
        let mut remap = vec![usize::MAX; self.len()];
        let mut nodes = Vec::with_capacity(set.len());
        let mut index = HashMap::with_capacity(set.len());
        for (new, &old) in set.iter().enumerate() {
            remap[old] = new;
            nodes.push(self.nodes[old].clone());
            index.insert(self.nodes[old].id.clone(), new);
        }
        let keep = |&(a, b): &(usize, usize)| {
            (set.contains(&a) && set.contains(&b)).then(|| (remap[a], remap[b]))
        };
        let attacks = self.attacks.iter().filter_map(keep).collect();
        let sub_edges = self.sub_edges.iter().filter_map(keep).collect();
        Self::from_indices(nodes, index, attacks, sub_edges)
    }

    /// Same arguments and attacks, with the subargument relation dropped.
    pub fn without_sub_edges(&self) -> ArgumentationGraph {
        Self::from_indices(
            self.nodes.clone(),
            self.index.clone(),
            self.attacks.clone(),
            BTreeSet::new(),
        )
    }

    /// Graphviz rendering: attacks solid, subargument edges double-lined and labelled `sub`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph arguments {\n  rankdir=BT;\n  node [shape=box];\n");
        for node in &self.nodes {
            let label = match &node.argument {
                Some(arg) => format!("{}\\n{}", node.id, arg.conclusion()),
                None => node.id.clone(),
            };
            let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", escape(&node.id), escape_label(&label));
        }
        for &(from, to) in &self.attacks {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=solid];",
                escape(self.id(from)),
                escape(self.id(to))
            );
        }
        for &(sub, sup) in &self.sub_edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [color=\"black:invis:black\", label=\"sub\"];",
                escape(self.id(sub)),
                escape(self.id(sup))
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn escape_label(text: &str) -> String {
    text.replace('"', "\\\"")
}
