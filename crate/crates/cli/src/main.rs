//! `arglab`: build arguments from a defeasible theory, label them, and compute
//! exact label probabilities under a chosen probability frame.

mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use arglab_core::construct::{build_graph, Caps, PreferencePolicy};
use arglab_core::dsl::{parse_distribution_file, parse_theory, DistributionEntry, TheoryDocument};
use arglab_core::frames::{
    entry_labels, pag_to_pgf, pgf_from_ptf, plf_from_pef, plf_from_pgf, plf_with_semantics, ptf_independent, Pag,
    Pef, Pgf, Plf, Ptf, SublabellingWeights,
};
use arglab_core::marginals::{arg_marginal, justification_from_plf, stmt_distribution};
use arglab_core::report::statement_universe;
use arglab_core::semantics::labellings;
use arglab_core::{
    check_properties, ArgLabel, ArgSet, ArgumentationGraph, ConstructError, DslError, FrameError, GraphError,
    LabelError, LabelSet, LabellingSpec, Literal, MarginalError, Semantics, SemanticsError, StatementScheme,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use report::Inputs;

#[derive(Parser)]
#[command(name = "arglab", version, about = "Probabilistic argumentation over defeasible theories")]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limits {
    /// Maximum number of constructed arguments.
    #[arg(long, global = true, default_value_t = Caps::default().max_arguments)]
    max_args: usize,
    /// Maximum number of rules when enumerating subtheories.
    #[arg(long, global = true, default_value_t = Caps::default().max_rules)]
    max_rules: usize,
    /// Maximum number of arguments (or uncertain PAG arguments) to enumerate labellings over.
    #[arg(long, global = true, default_value_t = Caps::default().max_enumeration_args)]
    max_enum_args: usize,
    /// How rebuttals are resolved against the superiority relation.
    #[arg(long, global = true, value_enum, default_value_t = Preference::LastLink)]
    preference: Preference,
}

impl Limits {
    fn caps(&self) -> Caps {
        Caps {
            max_arguments: self.max_args,
            max_rules: self.max_rules,
            max_enumeration_args: self.max_enum_args,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Preference {
    LastLink,
    None,
}

impl From<Preference> for PreferencePolicy {
    fn from(value: Preference) -> Self {
        match value {
            Preference::LastLink => PreferencePolicy::LastLink,
            Preference::None => PreferencePolicy::None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the arguments built from a theory.
    Args { theory: PathBuf },
    /// Print the argumentation graph.
    Graph {
        theory: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Enumerate labellings under a semantics.
    Label {
        theory: PathBuf,
        #[arg(long, value_parser = Semantics::from_str)]
        semantics: Semantics,
        #[arg(long, value_enum, default_value_t = Labels::Inoutun)]
        labels: Labels,
        /// Restrict {IN,OUT,UN,OFF} labellings to legal subgraphs.
        #[arg(long)]
        legal_only: bool,
        /// Sublabelling weights file.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Marginal probabilities of argument and statement labels.
    Marginal {
        theory: PathBuf,
        #[command(flatten)]
        frame: FrameArgs,
        /// `arg:ID`, `stmt:LITERAL` or `all`.
        #[arg(long, default_value = "all")]
        target: Target,
        #[arg(long, value_parser = StatementScheme::from_str, default_value = "worstcase")]
        scheme: StatementScheme,
    },
    /// Check the probabilistic properties of a frame and report justification.
    Check {
        theory: PathBuf,
        #[command(flatten)]
        frame: FrameArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    Inoutun,
    Inoutunoff,
}

#[derive(Args)]
struct FrameArgs {
    /// `independent`, or `ptf:FILE`, `pgf:FILE`, `plf:FILE`, `pef:FILE`, `pag:FILE`.
    #[arg(long, default_value = "independent")]
    frame: FrameSource,
    /// Acceptance semantics; without it structural frames yield {ON,OFF} labellings.
    #[arg(long, value_parser = Semantics::from_str)]
    semantics: Option<Semantics>,
    /// Sublabelling weights file.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Read a PLF file as a legal-subgraph {IN,OUT,UN,OFF} specification.
    #[arg(long)]
    legal_only: bool,
}

#[derive(Clone)]
enum FrameSource {
    Independent,
    Ptf(PathBuf),
    Pgf(PathBuf),
    Plf(PathBuf),
    Pef(PathBuf),
    Pag(PathBuf),
}

impl FromStr for FrameSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "independent" {
            return Ok(FrameSource::Independent);
        }
        let (kind, path) = s
            .split_once(':')
            .ok_or_else(|| format!("expected `independent` or KIND:FILE, found `{s}`"))?;
        let path = PathBuf::from(path);
        match kind {
            "ptf" => Ok(FrameSource::Ptf(path)),
            "pgf" => Ok(FrameSource::Pgf(path)),
            "plf" => Ok(FrameSource::Plf(path)),
            "pef" => Ok(FrameSource::Pef(path)),
            "pag" => Ok(FrameSource::Pag(path)),
            _ => Err(format!("unknown frame kind `{kind}`")),
        }
    }
}

impl FrameSource {
    fn name(&self) -> &'static str {
        match self {
            FrameSource::Independent => "independent",
            FrameSource::Ptf(_) => "ptf",
            FrameSource::Pgf(_) => "pgf",
            FrameSource::Plf(_) => "plf",
            FrameSource::Pef(_) => "pef",
            FrameSource::Pag(_) => "pag",
        }
    }
}

#[derive(Clone)]
enum Target {
    All,
    Argument(String),
    Statement(String),
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(Target::All)
        } else if let Some(id) = s.strip_prefix("arg:") {
            Ok(Target::Argument(id.to_string()))
        } else if let Some(lit) = s.strip_prefix("stmt:") {
            Ok(Target::Statement(lit.to_string()))
        } else {
            Err(format!("expected `all`, `arg:ID` or `stmt:LITERAL`, found `{s}`"))
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: Box<DslError> },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] arglab_core::Error),
}

macro_rules! core_error {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(error: $ty) -> Self {
                CliError::Core(error.into())
            }
        }
    )*};
}

core_error!(ConstructError, SemanticsError, FrameError, GraphError, LabelError, MarginalError);

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Core(e) if e.is_cap_exceeded() => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
}

/// What a command produced: a document for stdout and an exit status.
struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match run(cli, echo) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli, echo: Vec<String>) -> Result<Output, CliError> {
    let caps = cli.limits.caps();
    let policy: PreferencePolicy = cli.limits.preference.into();
    let mut inputs = Inputs::default();
    let (result, code) = match cli.command {
        Command::Args { theory } => {
            let doc = load_theory(&theory, &mut inputs)?;
            let graph = build_graph(&doc.theory, policy, &caps)?;
            (json!({ "arguments": arguments_json(&graph) }), 0)
        }
        Command::Graph { theory, format } => {
            let doc = load_theory(&theory, &mut inputs)?;
            let graph = build_graph(&doc.theory, policy, &caps)?;
            if let GraphFormat::Dot = format {
                return Ok(Output {
                    text: graph.to_dot(),
                    code: 0,
                });
            }
            (
                json!({
                    "arguments": arguments_json(&graph),
                    "attacks": report::edge_list(graph.attack_ids()),
                    "subarguments": report::edge_list(graph.sub_edge_ids()),
                }),
                0,
            )
        }
        Command::Label {
            theory,
            semantics,
            labels,
            legal_only,
            weights,
        } => {
            let doc = load_theory(&theory, &mut inputs)?;
            let graph = build_graph(&doc.theory, policy, &caps)?;
            let weights = load_weights(weights.as_deref(), &mut inputs)?;
            (label_command(&graph, semantics, labels, legal_only, &weights, &caps)?, 0)
        }
        Command::Marginal {
            theory,
            frame,
            target,
            scheme,
        } => {
            let doc = load_theory(&theory, &mut inputs)?;
            let plf = build_frame(&doc, &frame, policy, &caps, &mut inputs)?;
            (marginal_result(&plf, &doc, &frame.frame, &target, scheme)?, 0)
        }
        Command::Check { theory, frame } => {
            let doc = load_theory(&theory, &mut inputs)?;
            let plf = build_frame(&doc, &frame, policy, &caps, &mut inputs)?;
            check_result(&plf, &doc, &frame.frame)?
        }
    };
    let document = report::envelope(echo, inputs, result);
    let mut text = serde_json::to_string_pretty(&document).expect("JSON values serialize");
    text.push('\n');
    Ok(Output { text, code })
}

fn read_file(path: &Path, role: &str, inputs: &mut Inputs) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    inputs.record(role, path, &bytes);
    String::from_utf8(bytes).map_err(|_| CliError::Invalid(format!("{}: not valid UTF-8", path.display())))
}

fn load_theory(path: &Path, inputs: &mut Inputs) -> Result<TheoryDocument, CliError> {
    let text = read_file(path, "theory", inputs)?;
    parse_theory(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source: Box::new(source),
    })
}

fn load_entries(path: &Path, role: &str, inputs: &mut Inputs) -> Result<Vec<DistributionEntry>, CliError> {
    let text = read_file(path, role, inputs)?;
    parse_distribution_file(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source: Box::new(source),
    })
}

fn load_weights(path: Option<&Path>, inputs: &mut Inputs) -> Result<SublabellingWeights, CliError> {
    match path {
        None => Ok(SublabellingWeights::uniform()),
        Some(path) => Ok(SublabellingWeights::from_entries(&load_entries(path, "weights", inputs)?)?),
    }
}

fn arguments_json(graph: &ArgumentationGraph) -> Value {
    let items = (0..graph.len())
        .map(|i| {
            let mut item = json!({ "id": graph.id(i) });
            if let Some(argument) = graph.argument(i) {
                item["conclusion"] = Value::from(argument.conclusion().to_string());
                item["top_rule"] = Value::from(argument.top_rule().as_str());
                item["direct_subarguments"] = report::id_list(argument.direct_subs().iter().map(|a| a.id()));
                item["rules"] = report::id_list(argument.rules().iter().map(|r| r.as_str()));
            }
            item
        })
        .collect();
    Value::Array(items)
}

fn label_command(
    graph: &ArgumentationGraph,
    semantics: Semantics,
    labels: Labels,
    legal_only: bool,
    weights: &SublabellingWeights,
    caps: &Caps,
) -> Result<Value, CliError> {
    let spec = match labels {
        Labels::Inoutun => LabellingSpec::new(arglab_core::Criterion::Semantics(semantics), LabelSet::InOutUn, legal_only)?,
        Labels::Inoutunoff => LabellingSpec::combined(semantics, legal_only),
    };
    let found = labellings(graph, &spec, caps)?;
    let mut blocks: BTreeMap<ArgSet, Vec<_>> = BTreeMap::new();
    for labelling in found {
        blocks.entry(labelling.active()).or_default().push(labelling);
    }
    if let Labels::Inoutun = labels {
        blocks.entry(graph.all()).or_default();
    }
    let mut ordered: Vec<(ArgSet, Vec<_>)> = blocks.into_iter().collect();
    ordered.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut rendered = Vec::with_capacity(ordered.len());
    let mut total = 0;
    for (subgraph, members) in &ordered {
        total += members.len();
        let weights = if members.is_empty() || weights.is_uniform() {
            None
        } else {
            Some(weights.weights_for(graph, subgraph, members)?)
        };
        let items: Vec<Value> = members
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let mut item = json!({ "labels": report::labelling(graph, l) });
                if let Some(w) = &weights {
                    item["weight"] = report::rational(&w[k]);
                }
                item
            })
            .collect();
        rendered.push(json!({
            "subgraph": report::id_list(graph.set_ids(subgraph)),
            "labellings": items,
        }));
    }
    let mut result = json!({
        "specification": spec.to_string(),
        "count": total,
    });
    match labels {
        Labels::Inoutun => result["labellings"] = rendered.remove(0)["labellings"].take(),
        Labels::Inoutunoff => result["blocks"] = Value::Array(rendered),
    }
    Ok(result)
}

/// Builds the PLF a `marginal` or `check` command works on.
fn build_frame(
    doc: &TheoryDocument,
    args: &FrameArgs,
    policy: PreferencePolicy,
    caps: &Caps,
    inputs: &mut Inputs,
) -> Result<Plf, CliError> {
    let weights = load_weights(args.weights.as_deref(), inputs)?;
    if args.legal_only && !matches!(args.frame, FrameSource::Plf(_)) {
        return Err(CliError::Invalid("--legal-only applies to plf frames only".into()));
    }
    let graph = || -> Result<Arc<ArgumentationGraph>, CliError> { Ok(Arc::new(build_graph(&doc.theory, policy, caps)?)) };
    let pgf: Pgf = match &args.frame {
        FrameSource::Independent => pgf_from_ptf(&ptf_independent(doc, caps)?, policy, caps)?,
        FrameSource::Ptf(path) => {
            let entries = load_entries(path, "ptf", inputs)?;
            pgf_from_ptf(&Ptf::from_entries(&doc.theory, &entries)?, policy, caps)?
        }
        FrameSource::Pgf(path) => Pgf::from_entries(graph()?, &load_entries(path, "pgf", inputs)?)?,
        FrameSource::Pag(path) => {
            let entries = load_entries(path, "pag", inputs)?;
            pag_to_pgf(&Pag::from_entries(graph()?.as_ref(), &entries)?, caps)?
        }
        FrameSource::Plf(path) => {
            let entries = load_entries(path, "plf", inputs)?;
            let spec = plf_file_spec(&entries, args.semantics, args.legal_only)?;
            return Ok(Plf::from_entries(graph()?, spec, &entries, caps)?);
        }
        FrameSource::Pef(path) => {
            if args.semantics.is_some() {
                return Err(CliError::Invalid("--semantics does not apply to pef frames".into()));
            }
            let entries = load_entries(path, "pef", inputs)?;
            return Ok(plf_from_pef(&Pef::from_entries(graph()?, &entries)?));
        }
    };
    Ok(match args.semantics {
        Some(semantics) => plf_with_semantics(&pgf, semantics, &weights, caps)?,
        None => plf_from_pgf(&pgf),
    })
}

/// Specification of a PLF file, from the labels it uses and the requested semantics.
fn plf_file_spec(
    entries: &[DistributionEntry],
    semantics: Option<Semantics>,
    legal_only: bool,
) -> Result<LabellingSpec, CliError> {
    let used = entry_labels(entries);
    let mut set = LabelSet::covering(used.iter().copied())
        .ok_or_else(|| CliError::Invalid("a PLF file cannot mix ON with IN/OUT/UN".into()))?;
    if semantics.is_some() && set == LabelSet::OnOff && !used.contains(&ArgLabel::On) {
        set = LabelSet::InOutUnOff;
    }
    Ok(match (semantics, set) {
        (Some(sem), LabelSet::InOutUn) => LabellingSpec::new(arglab_core::Criterion::Semantics(sem), set, legal_only)?,
        (Some(sem), LabelSet::InOutUnOff) => LabellingSpec::combined(sem, legal_only),
        (Some(_), LabelSet::OnOff) => {
            return Err(CliError::Invalid("--semantics needs IN/OUT/UN labels in the PLF file".into()))
        }
        (None, set) => LabellingSpec::new(arglab_core::Criterion::All, set, legal_only)?,
    })
}

fn frame_json(plf: &Plf, source: &FrameSource) -> Value {
    let graph = plf.graph();
    let distribution: Vec<Value> = plf
        .dist()
        .iter()
        .map(|(l, p)| json!({ "labels": report::labelling(graph, l), "probability": report::rational(p) }))
        .collect();
    json!({
        "source": source.name(),
        "specification": plf.spec().to_string(),
        "distribution": distribution,
    })
}

/// Labels reported for arguments: the label set, plus ON where it is an event.
fn reported_labels(set: LabelSet) -> Vec<ArgLabel> {
    let mut labels = set.labels().to_vec();
    if set == LabelSet::InOutUnOff {
        labels.push(ArgLabel::On);
    }
    labels
}

fn argument_marginals(plf: &Plf, index: usize) -> Value {
    let graph = plf.graph();
    let mut marginals = serde_json::Map::new();
    for label in reported_labels(plf.spec().label_set()) {
        marginals.insert(
            label.as_str().to_string(),
            report::rational(
                &arg_marginal(plf, graph.id(index), label).expect("reported labels belong to the label set"),
            ),
        );
    }
    json!({ "id": graph.id(index), "marginals": marginals })
}

fn statement_marginals(plf: &Plf, literal: &Literal, scheme: StatementScheme) -> Value {
    let mut marginals = serde_json::Map::new();
    for (label, p) in stmt_distribution(plf, literal, scheme) {
        marginals.insert(label.as_str().to_string(), report::rational(&p));
    }
    json!({ "literal": literal.to_string(), "scheme": scheme.as_str(), "marginals": marginals })
}

fn marginal_result(
    plf: &Plf,
    doc: &TheoryDocument,
    source: &FrameSource,
    target: &Target,
    scheme: StatementScheme,
) -> Result<Value, CliError> {
    let graph = plf.graph();
    let (arguments, statements): (Vec<Value>, Vec<Value>) = match target {
        Target::All => (
            (0..graph.len()).map(|i| argument_marginals(plf, i)).collect(),
            statement_universe(plf, Some(&doc.theory))
                .iter()
                .map(|lit| statement_marginals(plf, lit, scheme))
                .collect(),
        ),
        Target::Argument(id) => (vec![argument_marginals(plf, graph.index_of(id)?)], Vec::new()),
        Target::Statement(text) => {
            let literal = Literal::parse(text).map_err(|e| CliError::Invalid(e.to_string()))?;
            (Vec::new(), vec![statement_marginals(plf, &literal, scheme)])
        }
    };
    Ok(json!({
        "frame": frame_json(plf, source),
        "arguments": arguments,
        "statements": statements,
    }))
}

fn check_result(plf: &Plf, doc: &TheoryDocument, source: &FrameSource) -> Result<(Value, u8), CliError> {
    let graph = plf.graph();
    let report = check_properties(plf, Some(&doc.theory));
    let properties: Vec<Value> = report
        .checks
        .iter()
        .map(|check| {
            let mut item = json!({
                "name": check.name,
                "mandatory": check.mandatory,
                "status": check.status.as_str(),
                "witnesses": check.witnesses,
            });
            if let Some(note) = &check.note {
                item["note"] = Value::from(note.as_str());
            }
            item
        })
        .collect();
    let violations = report.mandatory_violations().count();
    let mut result = json!({
        "frame": frame_json(plf, source),
        "properties": properties,
        "mandatory_violations": violations,
    });
    if plf.spec().label_set().has_off() {
        let labels = justification_from_plf(plf)?;
        let mut justification = serde_json::Map::new();
        for (i, label) in labels.iter().enumerate() {
            justification.insert(graph.id(i).to_string(), Value::from(label.as_str()));
        }
        result["justification"] = Value::Object(justification);
    }
    let code = if violations > 0 { EXIT_VIOLATION } else { 0 };
    Ok((result, code))
}
