//! Flat key-value problem files.
//!
//! ```text
//! # comment
//! p=3 vars=x,y,z
//! quotient=x*y-z^2
//! gens=x, y, z
//! ```
//!
//! A key starts at the beginning of a line or after whitespace and runs until
//! the next key. Keys: `p vars weights quotient gens order e_max
//! degree_budget regular_sequence inhomogeneous`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use hk_core::{GradedRing, Ideal, PolyRing, Polynomial, PrimeField, TermOrder};

use crate::expr::parse_polynomial;

pub const KEYS: &[&str] = &[
    "p",
    "vars",
    "weights",
    "quotient",
    "gens",
    "order",
    "e_max",
    "degree_budget",
    "regular_sequence",
    "inhomogeneous",
];

/// Default cap on the degree of any Groebner basis element.
pub const DEFAULT_DEGREE_BUDGET: u64 = 120;

/// A structured input error; positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub code: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl InputError {
    fn at(code: &str, message: impl Into<String>, pos: Option<(usize, usize)>) -> Self {
        InputError {
            code: code.to_string(),
            message: message.into(),
            line: pos.map(|p| p.0),
            column: pos.map(|p| p.1),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {} [{}]", self.message, self.code),
            _ => write!(f, "{} [{}]", self.message, self.code),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomogeneityPolicy {
    Error,
    Warn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemOptions {
    pub order: TermOrder,
    pub e_max: u32,
    pub degree_budget: u64,
    pub regular_sequence: bool,
    pub inhomogeneous: HomogeneityPolicy,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions {
            order: TermOrder::Grevlex,
            e_max: 2,
            degree_budget: DEFAULT_DEGREE_BUDGET,
            regular_sequence: false,
            inhomogeneous: HomogeneityPolicy::Error,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ring: GradedRing,
    pub ideal: Ideal,
    pub options: ProblemOptions,
    pub warnings: Vec<String>,
}

impl Problem {
    /// Canonical key-value rendering; parses back to the same problem.
    pub fn echo(&self) -> BTreeMap<&'static str, String> {
        let amb = self.ring.ambient();
        let join = |ps: &[Polynomial]| ps.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        let mut m = BTreeMap::new();
        m.insert("p", amb.characteristic().to_string());
        m.insert("vars", amb.vars().join(","));
        m.insert("weights", amb.weights().iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        m.insert("quotient", join(self.ring.relations()));
        m.insert("gens", join(self.ideal.generators()));
        m.insert("order", self.options.order.name().to_string());
        m.insert("e_max", self.options.e_max.to_string());
        m.insert("degree_budget", self.options.degree_budget.to_string());
        m.insert("regular_sequence", self.options.regular_sequence.to_string());
        m
    }

    /// The echo as problem-file text.
    pub fn to_text(&self) -> String {
        let echo = self.echo();
        KEYS.iter()
            .filter_map(|k| echo.get(k).filter(|v| !v.is_empty()).map(|v| format!("{k}={v}\n")))
            .collect()
    }
}

struct Entry {
    key_pos: usize,
    value_start: usize,
    value: String,
}

/// Char offset to 1-based (line, column).
fn position(chars: &[char], offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for &c in &chars[..offset.min(chars.len())] {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Splits the text into `key=value` entries, comments blanked out.
fn split_entries(text: &str) -> Result<(Vec<char>, BTreeMap<String, Entry>), InputError> {
    let mut chars: Vec<char> = Vec::new();
    let mut in_comment = false;
    for c in text.chars() {
        if c == '\n' {
            in_comment = false;
        } else if c == '#' {
            in_comment = true;
        }
        chars.push(if in_comment { ' ' } else { c });
    }

    // candidate key starts: identifier followed by '=' at line start or after whitespace
    let mut starts = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let boundary = i == 0 || chars[i - 1].is_whitespace();
        if boundary && (chars[i].is_alphabetic() || chars[i] == '_') {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j < chars.len() && chars[j] == '=' {
                starts.push((i, j));
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }

    if let Some(first) = chars.iter().position(|c| !c.is_whitespace()) {
        if starts.first().is_none_or(|s| s.0 != first) {
            return Err(InputError::at("syntax_error", "expected `key=value`", Some(position(&chars, first))));
        }
    }

    let mut entries = BTreeMap::new();
    for (k, &(ks, ke)) in starts.iter().enumerate() {
        let key: String = chars[ks..ke].iter().collect();
        let pos = position(&chars, ks);
        if !KEYS.contains(&key.as_str()) {
            return Err(InputError::at("unknown_key", format!("unknown key `{key}`"), Some(pos)));
        }
        let end = starts.get(k + 1).map_or(chars.len(), |s| s.0);
        let value: String = chars[ke + 1..end].iter().collect();
        if entries.contains_key(&key) {
            return Err(InputError::at("duplicate_key", format!("duplicate key `{key}`"), Some(pos)));
        }
        entries.insert(key, Entry { key_pos: ks, value_start: ke + 1, value });
    }
    Ok((chars, entries))
}

/// Comma-separated items of an entry with their char offsets, trimmed.
fn items(entry: &Entry) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut offset = entry.value_start;
    for piece in entry.value.split(',') {
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        out.push((offset + lead, piece.trim().to_string()));
        offset += piece.chars().count() + 1;
    }
    if out.len() == 1 && out[0].1.is_empty() {
        out.clear();
    }
    out
}

fn scalar<T: std::str::FromStr>(chars: &[char], entry: &Entry, key: &str) -> Result<T, InputError> {
    let v = entry.value.trim();
    let lead = entry.value.chars().take_while(|c| c.is_whitespace()).count();
    v.parse().map_err(|_| {
        InputError::at("invalid_value", format!("invalid value `{v}` for `{key}`"), Some(position(chars, entry.value_start + lead)))
    })
}

fn polys(chars: &[char], entry: &Entry, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>, InputError> {
    items(entry)
        .into_iter()
        .map(|(off, s)| {
            parse_polynomial(&s, ring).map_err(|e| {
                InputError::at(e.kind.code(), e.message, Some(position(chars, off + e.offset)))
            })
        })
        .collect()
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem, InputError> {
    let (chars, entries) = split_entries(text)?;
    let end = position(&chars, chars.len());
    let require = |k: &str| {
        entries
            .get(k)
            .ok_or_else(|| InputError::at("missing_key", format!("missing required key `{k}`"), Some(end)))
    };
    let at = |e: &Entry| Some(position(&chars, e.key_pos));

    let p_entry = require("p")?;
    let p: u64 = scalar(&chars, p_entry, "p")?;
    let field = PrimeField::new(p).map_err(|e| InputError::at(e.code(), e.to_string(), at(p_entry)))?;

    let vars_entry = require("vars")?;
    let mut vars = Vec::new();
    for (off, v) in items(vars_entry) {
        let ok = v.chars().next().is_some_and(char::is_alphabetic)
            && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(InputError::at("invalid_variable", format!("invalid variable name `{v}`"), Some(position(&chars, off))));
        }
        vars.push(v);
    }
    let weights = match entries.get("weights") {
        None => vec![1; vars.len()],
        Some(e) => {
            let mut w = Vec::new();
            for (off, s) in items(e) {
                w.push(s.parse::<u32>().map_err(|_| {
                    InputError::at("invalid_value", format!("invalid weight `{s}`"), Some(position(&chars, off)))
                })?);
            }
            if w.len() != vars.len() {
                return Err(InputError::at(
                    "arity_mismatch",
                    format!("{} variables but {} weights", vars.len(), w.len()),
                    at(e),
                ));
            }
            w
        }
    };
    let ambient = PolyRing::new(field, vars, weights).map_err(|e| InputError::at(e.code(), e.to_string(), at(vars_entry)))?;

    let mut options = ProblemOptions::default();
    if let Some(e) = entries.get("order") {
        options.order = scalar(&chars, e, "order")?;
    }
    if let Some(e) = entries.get("e_max") {
        options.e_max = scalar(&chars, e, "e_max")?;
    }
    if let Some(e) = entries.get("degree_budget") {
        options.degree_budget = scalar(&chars, e, "degree_budget")?;
    }
    if let Some(e) = entries.get("regular_sequence") {
        options.regular_sequence = scalar(&chars, e, "regular_sequence")?;
    }
    if let Some(e) = entries.get("inhomogeneous") {
        options.inhomogeneous = match e.value.trim() {
            "error" => HomogeneityPolicy::Error,
            "warn" => HomogeneityPolicy::Warn,
            v => return Err(InputError::at("invalid_value", format!("invalid value `{v}` for `inhomogeneous`"), at(e))),
        };
    }

    let relations = match entries.get("quotient") {
        Some(e) => polys(&chars, e, &ambient)?,
        None => Vec::new(),
    };
    let ring = GradedRing::quotient(ambient.clone(), relations)
        .map_err(|err| InputError::at(err.code(), err.to_string(), entries.get("quotient").and_then(at)))?;

    let gens_entry = require("gens")?;
    let gens = polys(&chars, gens_entry, &ambient)?;
    if gens.is_empty() {
        return Err(InputError::at("empty_ideal", "`gens` lists no generators", at(gens_entry)));
    }
    let mut warnings = Vec::new();
    for ((off, src), g) in items(gens_entry).into_iter().zip(&gens) {
        let pos = Some(position(&chars, off));
        if g.is_zero() {
            return Err(InputError::at("zero_generator", format!("generator `{src}` is zero mod {p}"), pos));
        }
        if !g.is_homogeneous() {
            let msg = format!("generator `{src}` is not homogeneous");
            match options.inhomogeneous {
                HomogeneityPolicy::Error => return Err(InputError::at("inhomogeneous", msg, pos)),
                HomogeneityPolicy::Warn => warnings.push(msg),
            }
        }
    }
    let ideal = Ideal::new(&ring, gens).map_err(|e| InputError::at(e.code(), e.to_string(), at(gens_entry)))?;
    Ok(Problem { ring, ideal, options, warnings })
}
