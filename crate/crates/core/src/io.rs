//! Text formats.
//!
//! Every format starts with a header token naming it. Lines starting with
//! `c` are comments wherever a header or body line may appear. Parsers
//! either return a complete value or an error carrying the 1-based line
//! number; nothing is returned on failure.
//!
//! * DIMACS CNF: `p cnf n m`, then clauses as nonzero integers ending in 0.
//! * Affine systems: `affine n r`, then `r` lines `i1 i2 ... = b` (1-based).
//! * Uniform: `uniform n`.
//! * Topic models: `topicmodel n`, then `topic <prob> i:p ...` lines and at
//!   most one `generic i:p ...` line (1-based word index, inclusion
//!   probability).
//! * Masked samples: `samples n m mu=<float> seed=<int>`, an optional
//!   `c source <text>` line, then `m` rows over `{0,1,*}`.
//! * Proofs: `proof k`, then one step per line, `idx <lits> 0 | rule` with
//!   rule `axiom i`, `weaken j` or `cut j k v`, or `idx top`. Step and axiom
//!   indices are 0-based, the pivot variable is 1-based.
//! * Learned tables: one clause per line, `<lits> 0 falsified=<count>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::distributions::{AffineSystem, BitRow, Distribution, Equation, Topic, TopicModel, Uniform};
use crate::learner::LearnedTable;
use crate::logic::{Clause, Cnf, Literal, LogicError, PartialAssignment, RestrictedClause, Var};
use crate::masking::MaskedSampleSet;
use crate::resolution::{Justification, ProofStep, ResolutionProof};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("literal {lit} out of range for {n} variables")]
    LiteralOutOfRange { lit: i64, n: usize },
    #[error("header declares {declared} entries, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("tautological clause")]
    TautologicalClause,
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("linear system is unsolvable")]
    Unsolvable,
    #[error("row has {got} characters, expected {expected}")]
    RaggedLine { got: usize, expected: usize },
    #[error("illegal character {0:?} in sample row")]
    IllegalCharacter(char),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

/// Non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !(l.is_empty() || l.starts_with('c') && (l.len() == 1 || l[1..].starts_with(char::is_whitespace))))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse().or_else(|_| err(line, ParseErrorKind::InvalidToken(tok.to_string())))
}

fn header<'a>(line: usize, l: &'a str, words: &[&str], fields: usize) -> Result<Vec<&'a str>, ParseError> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != words.len() + fields || toks.iter().zip(words).any(|(t, w)| t != w) {
        return err(line, ParseErrorKind::MalformedHeader(l.to_string()));
    }
    Ok(toks[words.len()..].to_vec())
}

fn header_count(line: usize, l: &str, tok: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| err(line, ParseErrorKind::MalformedHeader(l.to_string())))
}

fn clause_from_ints(line: usize, lits: &[i64], n: usize) -> Result<Clause, ParseError> {
    if let Some(&bad) = lits.iter().find(|l| l.unsigned_abs() as usize > n) {
        return err(line, ParseErrorKind::LiteralOutOfRange { lit: bad, n });
    }
    Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l))).or_else(|e| match e {
        LogicError::Tautology(_) => err(line, ParseErrorKind::TautologicalClause),
        other => err(line, ParseErrorKind::Invalid(other.to_string())),
    })
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, ParseErrorKind::Empty);
    };
    let f = header(hl, h, &["p", "cnf"], 2)?;
    let n = header_count(hl, h, f[0])?;
    let m = header_count(hl, h, f[1])?;
    let mut clauses = Vec::with_capacity(m);
    let mut pending: Vec<i64> = Vec::new();
    let mut last = hl;
    for (ln, l) in lines {
        if l.starts_with('%') {
            break;
        }
        last = ln;
        for tok in l.split_whitespace() {
            let v: i64 = parse_num(ln, tok)?;
            if v == 0 {
                clauses.push(clause_from_ints(ln, &pending, n)?);
                pending.clear();
            } else {
                pending.push(v);
            }
        }
    }
    if !pending.is_empty() {
        return err(last, ParseErrorKind::UnterminatedClause);
    }
    if clauses.len() != m {
        return err(last, ParseErrorKind::CountMismatch { declared: m, found: clauses.len() });
    }
    Ok(Cnf::new(n, clauses).expect("range checked"))
}

fn clause_ints(c: &Clause) -> String {
    let mut s = String::new();
    for l in c.literals() {
        write!(s, "{} ", l.to_dimacs()).unwrap();
    }
    s.push('0');
    s
}

pub fn write_dimacs(phi: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", phi.num_vars(), phi.len());
    for c in phi.clauses() {
        s.push_str(&clause_ints(c));
        s.push('\n');
    }
    s
}

fn index(line: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    let i: usize = parse_num(line, tok)?;
    if i == 0 || i > n {
        return err(line, ParseErrorKind::IndexOutOfRange { index: i, n });
    }
    Ok(i - 1)
}

fn parse_affine_body<'a>(
    n: usize,
    r: usize,
    hl: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<AffineSystem, ParseError> {
    let mut eqs = Vec::with_capacity(r);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let Some((lhs, rhs)) = l.split_once('=') else {
            return err(ln, ParseErrorKind::MalformedLine(l.to_string()));
        };
        let b = match rhs.trim() {
            "0" => false,
            "1" => true,
            _ => return err(ln, ParseErrorKind::MalformedLine(l.to_string())),
        };
        let mut coeffs = BitRow::zeros(n);
        for tok in lhs.split_whitespace() {
            // repeated indices cancel over F2
            coeffs.flip(index(ln, tok, n)?);
        }
        eqs.push((ln, Equation { coeffs, rhs: b }));
    }
    if eqs.len() != r {
        return err(last, ParseErrorKind::CountMismatch { declared: r, found: eqs.len() });
    }
    // report the first line at which the system becomes unsolvable
    let mut prefix = Vec::with_capacity(r);
    for (ln, e) in eqs {
        prefix.push(e);
        if !crate::distributions::rref_f2(n, &prefix).solvable {
            return err(ln, ParseErrorKind::Unsolvable);
        }
    }
    AffineSystem::new(n, prefix).or_else(|e| err(last, ParseErrorKind::Invalid(e.to_string())))
}

pub fn parse_affine(text: &str) -> Result<AffineSystem, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, ParseErrorKind::Empty);
    };
    let f = header(hl, h, &["affine"], 2)?;
    let n = header_count(hl, h, f[0])?;
    let r = header_count(hl, h, f[1])?;
    parse_affine_body(n, r, hl, lines)
}

pub fn write_affine(a: &AffineSystem) -> String {
    let mut s = format!("affine {} {}\n", a.num_vars(), a.equations().len());
    for e in a.equations() {
        for i in e.coeffs.ones() {
            write!(s, "{} ", i + 1).unwrap();
        }
        writeln!(s, "= {}", e.rhs as u8).unwrap();
    }
    s
}

fn word_probs(line: usize, toks: &[&str], n: usize, probs: &mut [f64]) -> Result<Vec<usize>, ParseError> {
    let mut words = Vec::with_capacity(toks.len());
    for tok in toks {
        let Some((i, p)) = tok.split_once(':') else {
            return err(line, ParseErrorKind::InvalidToken(tok.to_string()));
        };
        let i = index(line, i, n)?;
        probs[i] = parse_num(line, p)?;
        words.push(i);
    }
    Ok(words)
}

fn parse_topic_body<'a>(
    n: usize,
    hl: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<TopicModel, ParseError> {
    let mut probs = vec![0.0; n];
    let mut topics = Vec::new();
    let mut generic: Option<Vec<usize>> = None;
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "topic" if toks.len() >= 2 => {
                let probability: f64 = parse_num(ln, toks[1])?;
                let primary = word_probs(ln, &toks[2..], n, &mut probs)?;
                topics.push(Topic { probability, primary });
            }
            "generic" if generic.is_none() => generic = Some(word_probs(ln, &toks[1..], n, &mut probs)?),
            _ => return err(ln, ParseErrorKind::MalformedLine(l.to_string())),
        }
    }
    TopicModel::new(n, topics, generic.unwrap_or_default(), probs)
        .or_else(|e| err(last, ParseErrorKind::Invalid(e.to_string())))
}

pub fn write_topic_model(t: &TopicModel) -> String {
    let probs = t.word_probabilities();
    let words = |ws: &[usize]| ws.iter().map(|&w| format!(" {}:{}", w + 1, probs[w])).collect::<String>();
    let mut s = format!("topicmodel {}\n", probs.len());
    for topic in t.topics() {
        writeln!(s, "topic {}{}", topic.probability, words(&topic.primary)).unwrap();
    }
    if !t.generic().is_empty() {
        writeln!(s, "generic{}", words(t.generic())).unwrap();
    }
    s
}

/// Any distribution file, recognised by its header token.
pub fn parse_distribution(text: &str) -> Result<Distribution, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, ParseErrorKind::Empty);
    };
    match h.split_whitespace().next() {
        Some("affine") => parse_affine(text).map(Distribution::Affine),
        Some("uniform") => {
            let f = header(hl, h, &["uniform"], 1)?;
            let n = header_count(hl, h, f[0])?;
            if let Some((ln, l)) = lines.next() {
                return err(ln, ParseErrorKind::MalformedLine(l.to_string()));
            }
            Ok(Distribution::Uniform(Uniform::new(n)))
        }
        Some("topicmodel") => {
            let f = header(hl, h, &["topicmodel"], 1)?;
            let n = header_count(hl, h, f[0])?;
            parse_topic_body(n, hl, lines).map(Distribution::Topic)
        }
        _ => err(hl, ParseErrorKind::MalformedHeader(h.to_string())),
    }
}

pub fn write_distribution(d: &Distribution) -> String {
    match d {
        Distribution::Uniform(u) => format!("uniform {}\n", u.n),
        Distribution::Affine(a) => write_affine(a),
        Distribution::Topic(t) => write_topic_model(t),
    }
}

pub fn parse_samples(text: &str) -> Result<MaskedSampleSet, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let Some((hl, h)) = lines.next() else {
        return err(1, ParseErrorKind::Empty);
    };
    let f = header(hl, h, &["samples"], 4)?;
    let n = header_count(hl, h, f[0])?;
    let m = header_count(hl, h, f[1])?;
    let bad = || ParseError { line: hl, kind: ParseErrorKind::MalformedHeader(h.to_string()) };
    let mu: f64 = f[2].strip_prefix("mu=").and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    let seed: u64 = f[3].strip_prefix("seed=").and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    let mut provenance = String::new();
    let mut samples = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if let Some(src) = l.strip_prefix("c source ") {
            if samples.is_empty() && provenance.is_empty() {
                provenance = src.to_string();
                continue;
            }
        }
        if l.starts_with('c') && (l.len() == 1 || l[1..].starts_with(' ')) {
            continue;
        }
        let mut row = Vec::with_capacity(n);
        for ch in l.chars() {
            row.push(match ch {
                '0' => Some(false),
                '1' => Some(true),
                '*' => None,
                other => return err(ln, ParseErrorKind::IllegalCharacter(other)),
            });
        }
        if row.len() != n {
            return err(ln, ParseErrorKind::RaggedLine { got: row.len(), expected: n });
        }
        samples.push(PartialAssignment::new(row));
    }
    if samples.len() != m {
        return err(last, ParseErrorKind::CountMismatch { declared: m, found: samples.len() });
    }
    Ok(MaskedSampleSet { n, mu, seed, provenance, samples })
}

pub fn write_samples(set: &MaskedSampleSet) -> String {
    let mut s = format!("samples {} {} mu={} seed={}\n", set.n, set.samples.len(), set.mu, set.seed);
    if !set.provenance.is_empty() {
        writeln!(s, "c source {}", set.provenance).unwrap();
    }
    for r in &set.samples {
        writeln!(s, "{r}").unwrap();
    }
    s
}

pub fn write_proof(proof: &ResolutionProof) -> String {
    let mut s = format!("proof {}\n", proof.size());
    for (idx, step) in proof.steps.iter().enumerate() {
        let RestrictedClause::Clause(c) = &step.clause else {
            writeln!(s, "{idx} top").unwrap();
            continue;
        };
        write!(s, "{idx} {} | ", clause_ints(c)).unwrap();
        match step.justification {
            Justification::Axiom(i) => writeln!(s, "axiom {i}"),
            Justification::Weakening(j) => writeln!(s, "weaken {j}"),
            Justification::Cut(j, k, v) => writeln!(s, "cut {j} {k} {}", v.index() + 1),
            Justification::TopMark => unreachable!("⊤ steps have no clause"),
        }
        .unwrap();
    }
    s
}

/// Parse a proof; `n` bounds the literals. Only the syntax is checked here.
pub fn parse_proof(text: &str, n: usize) -> Result<ResolutionProof, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, ParseErrorKind::Empty);
    };
    let f = header(hl, h, &["proof"], 1)?;
    let k = header_count(hl, h, f[0])?;
    let mut steps = Vec::with_capacity(k);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let malformed = || ParseError { line: ln, kind: ParseErrorKind::MalformedLine(l.to_string()) };
        let (idx, rest) = l.split_once(char::is_whitespace).ok_or_else(malformed)?;
        if parse_num::<usize>(ln, idx)? != steps.len() {
            return Err(malformed());
        }
        if rest.trim() == "top" {
            steps.push(ProofStep::top());
            continue;
        }
        let (lits, rule) = rest.split_once('|').ok_or_else(malformed)?;
        let mut lits: Vec<i64> = lits.split_whitespace().map(|t| parse_num(ln, t)).collect::<Result<_, _>>()?;
        if lits.pop() != Some(0) || lits.contains(&0) {
            return Err(malformed());
        }
        let clause = clause_from_ints(ln, &lits, n)?;
        let rule: Vec<&str> = rule.split_whitespace().collect();
        let justification = match rule.as_slice() {
            ["axiom", i] => Justification::Axiom(parse_num(ln, i)?),
            ["weaken", j] => Justification::Weakening(parse_num(ln, j)?),
            ["cut", j, k, v] => Justification::Cut(parse_num(ln, j)?, parse_num(ln, k)?, Var(index(ln, v, n)? as u32)),
            _ => return Err(malformed()),
        };
        steps.push(ProofStep::new(clause, justification));
    }
    if steps.len() != k {
        return err(last, ParseErrorKind::CountMismatch { declared: k, found: steps.len() });
    }
    Ok(ResolutionProof::new(steps))
}

pub fn write_learned_table(t: &LearnedTable) -> String {
    let mut s = format!("c learned table width={} threshold={} m0={}\n", t.width, t.threshold_count, t.m0);
    for l in &t.clauses {
        writeln!(s, "{} falsified={}", clause_ints(&l.clause), l.falsified).unwrap();
    }
    s
}
