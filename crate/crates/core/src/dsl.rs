//! Line-oriented text format for theories, rule probabilities and distribution files.
//!
//! Theory statements, one or more per line, each terminated by `.`:
//!
//! ```text
//! # comment
//! rb: -b1, -b2 => -b.
//! rc: ~-b => c.
//! conflict(c, -c).
//! rnc > rc.
//! p(rb1) = 1/2.
//! ```
//!
//! Distribution files hold `{...} : RATIONAL.` lines whose braces contain either
//! argument or rule ids (`{a, b}`) or a labelling (`{a=IN, b=OFF}`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::label::ArgLabel;
use crate::rational::Rational;
use crate::theory::{is_atom, DefeasibleTheory, Literal, Rule, RuleId, TheoryError};

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourcePos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: duplicate rule id `{id}`")]
    DuplicateRule {
        id: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: unknown rule id `{id}`")]
    UnknownRule {
        id: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: duplicate probability for rule `{id}`")]
    DuplicateProbability {
        id: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: probability {value} of rule `{id}` is outside [0,1]")]
    ProbabilityOutOfRange {
        id: String,
        value: Rational,
        line: usize,
        column: usize,
    },
    #[error("invalid theory: {0}")]
    Theory(#[from] TheoryError),
}

impl DslError {
    fn syntax(pos: SourcePos, message: impl Into<String>) -> Self {
        DslError::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

/// A parsed theory together with rule probabilities and rule source positions.
#[derive(Debug, Clone, Default)]
pub struct TheoryDocument {
    pub theory: DefeasibleTheory,
    /// Explicitly stated probabilities; absent rules default to 1.
    pub rule_probs: BTreeMap<RuleId, Rational>,
    pub annotations: BTreeMap<RuleId, SourcePos>,
}

impl TheoryDocument {
    pub fn new(theory: DefeasibleTheory) -> Self {
        TheoryDocument {
            theory,
            ..Default::default()
        }
    }

    pub fn rule_prob(&self, id: &RuleId) -> Rational {
        self.rule_probs.get(id).cloned().unwrap_or_else(Rational::one)
    }
}

/// Structural equality: theory and probabilities, ignoring source positions.
impl PartialEq for TheoryDocument {
    fn eq(&self, other: &Self) -> bool {
        self.theory == other.theory && self.rule_probs == other.rule_probs
    }
}

impl Eq for TheoryDocument {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Colon,
    Comma,
    Arrow,
    Dot,
    Tilde,
    Minus,
    LParen,
    RParen,
    Gt,
    Equals,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Equals => "`=`".into(),
        }
    }
}

fn lex_line(line: &str, line_no: usize) -> Result<Vec<(Tok, SourcePos)>, DslError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = SourcePos {
            line: line_no,
            column: i + 1,
        };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            let digits = |i: &mut usize| {
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                }
            };
            digits(&mut i);
            if i + 1 < chars.len() && matches!(chars[i], '.' | '/') && chars[i + 1].is_ascii_digit() {
                i += 1;
                digits(&mut i);
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                return Err(DslError::syntax(pos, "scientific notation is not supported"));
            }
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(DslError::syntax(pos, "identifiers must start with a letter"));
            }
            out.push((Tok::Number(chars[start..i].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' => Tok::Tilde,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '>' => Tok::Gt,
            '=' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '=' => Tok::Equals,
            other => return Err(DslError::syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(Tok, SourcePos)],
    at: usize,
    end: SourcePos,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> SourcePos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, SourcePos)> {
        let item = self.toks.get(self.at).cloned();
        if item.is_some() {
            self.at += 1;
        }
        item
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        let found = match self.peek() {
            Some(tok) => tok.describe(),
            None => "end of line".to_string(),
        };
        DslError::syntax(self.pos(), format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<SourcePos, DslError> {
        if self.peek() == Some(&tok) {
            Ok(self.next().expect("peeked").1)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, SourcePos), DslError> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.next() {
                Some((Tok::Ident(s), pos)) => Ok((s, pos)),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn literal(&mut self) -> Result<Literal, DslError> {
        let negated = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        let (atom, pos) = self.ident("a literal")?;
        if !is_atom(&atom) {
            return Err(DslError::syntax(pos, format!("`{atom}` is not a valid atom")));
        }
        Ok(Literal::new(atom, negated)?)
    }
}

enum Statement {
    Rule(Rule, SourcePos),
    Conflict(Literal, Literal),
    Superiority((String, SourcePos), (String, SourcePos)),
    Probability((String, SourcePos), Rational),
}

fn statement(cur: &mut Cursor<'_>) -> Result<Statement, DslError> {
    let (head_ident, pos) = cur.ident("a rule id or directive")?;
    let stmt = match (head_ident.as_str(), cur.peek()) {
        (_, Some(Tok::Colon)) => {
            cur.next();
            let mut plain = Vec::new();
            let mut naf = Vec::new();
            if cur.peek() != Some(&Tok::Arrow) {
                loop {
                    if cur.peek() == Some(&Tok::Tilde) {
                        cur.next();
                        naf.push(cur.literal()?);
                    } else {
                        plain.push(cur.literal()?);
                    }
                    if cur.peek() == Some(&Tok::Comma) {
                        cur.next();
                    } else {
                        break;
                    }
                }
            }
            cur.expect(Tok::Arrow, "`=>`")?;
            let head = cur.literal()?;
            let id = RuleId::new(head_ident)?;
            Statement::Rule(Rule::new(id, plain, naf, head), pos)
        }
        ("conflict", Some(Tok::LParen)) => {
            cur.next();
            let first = cur.literal()?;
            cur.expect(Tok::Comma, "`,`")?;
            let second = cur.literal()?;
            cur.expect(Tok::RParen, "`)`")?;
            Statement::Conflict(first, second)
        }
        ("p", Some(Tok::LParen)) => {
            cur.next();
            let rule = cur.ident("a rule id")?;
            cur.expect(Tok::RParen, "`)`")?;
            cur.expect(Tok::Equals, "`=`")?;
            let value_pos = cur.pos();
            let value = match cur.next() {
                Some((Tok::Number(text), _)) => Rational::parse(&text)
                    .map_err(|e| DslError::syntax(value_pos, e.to_string()))?,
                Some((Tok::Minus, p)) => {
                    return Err(DslError::syntax(p, "probabilities must be non-negative"))
                }
                _ => {
                    cur.at = cur.at.saturating_sub(1);
                    return Err(cur.unexpected("a rational or decimal"));
                }
            };
            Statement::Probability(rule, value)
        }
        (_, Some(Tok::Gt)) => {
            cur.next();
            let weaker = cur.ident("a rule id")?;
            Statement::Superiority((head_ident, pos), weaker)
        }
        _ => return Err(cur.unexpected("`:` or `>` after a rule id")),
    };
    cur.expect(Tok::Dot, "`.`")?;
    Ok(stmt)
}

/// Parses and validates a theory document.
pub fn parse_theory(text: &str) -> Result<TheoryDocument, DslError> {
    let mut rules: Vec<(Rule, SourcePos)> = Vec::new();
    let mut conflicts = Vec::new();
    let mut superiority = Vec::new();
    let mut probs: Vec<((String, SourcePos), Rational)> = Vec::new();
    for (line_index, line) in text.lines().enumerate() {
        let line_no = line_index + 1;
        let toks = lex_line(line, line_no)?;
        let mut cur = Cursor {
            toks: &toks,
            at: 0,
            end: SourcePos {
                line: line_no,
                column: line.chars().count() + 1,
            },
        };
        while cur.peek().is_some() {
            match statement(&mut cur)? {
                Statement::Rule(rule, pos) => rules.push((rule, pos)),
                Statement::Conflict(a, b) => conflicts.push((a, b)),
                Statement::Superiority(a, b) => superiority.push((a, b)),
                Statement::Probability(rule, value) => probs.push((rule, value)),
            }
        }
    }

    let mut annotations = BTreeMap::new();
    for (rule, pos) in &rules {
        if annotations.insert(rule.id.clone(), *pos).is_some() {
            return Err(DslError::DuplicateRule {
                id: rule.id.to_string(),
                line: pos.line,
                column: pos.column,
            });
        }
    }
    let known = |(id, pos): &(String, SourcePos)| -> Result<RuleId, DslError> {
        let rule_id = RuleId::new(id.clone())?;
        if annotations.contains_key(&rule_id) {
            Ok(rule_id)
        } else {
            Err(DslError::UnknownRule {
                id: id.clone(),
                line: pos.line,
                column: pos.column,
            })
        }
    };
    let mut sup_pairs = Vec::new();
    for (stronger, weaker) in &superiority {
        sup_pairs.push((known(stronger)?, known(weaker)?));
    }
    let mut rule_probs = BTreeMap::new();
    for (target, value) in &probs {
        let id = known(target)?;
        let (_, pos) = target;
        if !value.is_probability() {
            return Err(DslError::ProbabilityOutOfRange {
                id: id.to_string(),
                value: value.clone(),
                line: pos.line,
                column: pos.column,
            });
        }
        if rule_probs.insert(id.clone(), value.clone()).is_some() {
            return Err(DslError::DuplicateProbability {
                id: id.to_string(),
                line: pos.line,
                column: pos.column,
            });
        }
    }
    let theory = DefeasibleTheory::new(rules.into_iter().map(|(r, _)| r), conflicts, sup_pairs)?;
    Ok(TheoryDocument {
        theory,
        rule_probs,
        annotations,
    })
}

/// Renders a document in the canonical text form; `parse_theory` inverts it.
pub fn serialize_theory(doc: &TheoryDocument) -> String {
    let mut out = String::new();
    for rule in doc.theory.rules() {
        let mut body: Vec<String> = rule.body_plain.iter().map(|l| l.to_string()).collect();
        body.extend(rule.body_naf.iter().map(|l| format!("~{l}")));
        if body.is_empty() {
            let _ = writeln!(out, "{}: => {}.", rule.id, rule.head);
        } else {
            let _ = writeln!(out, "{}: {} => {}.", rule.id, body.join(", "), rule.head);
        }
    }
    for (a, b) in doc.theory.declared_conflicts() {
        let _ = writeln!(out, "conflict({a}, {b}).");
    }
    for (stronger, weaker) in doc.theory.superiority() {
        let _ = writeln!(out, "{stronger} > {weaker}.");
    }
    for (id, p) in &doc.rule_probs {
        let _ = writeln!(out, "p({id}) = {p}.");
    }
    out
}

/// The braced part of a distribution-file line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryKey {
    /// `{id, id, ...}`
    Subset(Vec<String>),
    /// `{id=LABEL, ...}`
    Labelling(Vec<(String, ArgLabel)>),
}

/// One `{...} : RATIONAL.` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionEntry {
    pub key: EntryKey,
    pub value: Rational,
    pub line: usize,
}

/// Parses a distribution or weights file. Values are not required to sum to 1 here.
pub fn parse_distribution_file(text: &str) -> Result<Vec<DistributionEntry>, DslError> {
    let mut entries = Vec::new();
    for (line_index, raw) in text.lines().enumerate() {
        let line_no = line_index + 1;
        let content = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: &str| DslError::Syntax {
            line: line_no,
            column,
            message: message.to_string(),
        };
        let open = content
            .find(|c: char| !c.is_whitespace())
            .filter(|&i| content[i..].starts_with('{'))
            .ok_or_else(|| err(1, "expected `{`"))?;
        let mut depth = 0usize;
        let mut close = None;
        for (i, c) in content.char_indices().skip(open + 1) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| err(i + 1, "unbalanced `)`"))?
                }
                '}' if depth == 0 => {
                    close = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| err(content.len() + 1, "expected `}`"))?;
        let key = parse_key(&content[open + 1..close], open + 2)
            .map_err(|(column, message)| err(column, &message))?;
        let rest = &content[close + 1..];
        let rest_trimmed = rest.trim();
        let value_text = rest_trimmed
            .strip_prefix(':')
            .ok_or_else(|| err(close + 2, "expected `:` after `}`"))?
            .trim();
        let value_text = value_text
            .strip_suffix('.')
            .ok_or_else(|| err(content.len() + 1, "expected terminating `.`"))?
            .trim();
        let value_column = close + 2 + rest.find(':').unwrap_or(0) + 1;
        let value =
            Rational::parse(value_text).map_err(|e| err(value_column, &e.to_string()))?;
        entries.push(DistributionEntry {
            key,
            value,
            line: line_no,
        });
    }
    Ok(entries)
}

fn parse_key(inner: &str, base_column: usize) -> Result<EntryKey, (usize, String)> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                items.push((start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push((start, &inner[start..]));
    if items.len() == 1 && items[0].1.trim().is_empty() {
        return Ok(EntryKey::Subset(Vec::new()));
    }
    let mut plain = Vec::new();
    let mut labelled = Vec::new();
    for (offset, item) in items {
        let column = base_column + offset;
        let item = item.trim();
        if item.is_empty() {
            return Err((column, "empty element".into()));
        }
        match item.rsplit_once('=') {
            Some((id, label)) => {
                let label: ArgLabel = label
                    .parse()
                    .map_err(|_| (column, format!("unknown label `{}`", label.trim())))?;
                labelled.push((id.trim().to_string(), label));
            }
            None => plain.push(item.to_string()),
        }
    }
    match (plain.is_empty(), labelled.is_empty()) {
        (false, true) => Ok(EntryKey::Subset(plain)),
        (true, false) => Ok(EntryKey::Labelling(labelled)),
        _ => Err((base_column, "cannot mix plain ids and `id=LABEL` pairs".into())),
    }
}
