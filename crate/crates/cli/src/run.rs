//! Command dispatch and report rendering.

use std::fmt::Write as _;
use std::time::Instant;

use hk_core::{
    chi_from_betti, chi_reduced, colength_with, conjecture_report, ehk_estimate, frobenius_series_identity,
    graded_betti, hilbert_series_quotient_with, hilbert_series_ring, length_identity_check, ring_dimension, verify_factorization,
    ChiPolynomial, ChiRoute, Error, GbOptions, HilbertSeries, LaurentPoly, RationalFunction, TermOrder,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::problem::{parse_problem, InputError, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Length,
    Series,
    Betti,
    Chi,
    Verify,
    Frobcheck,
    Ehk,
    Conjecture,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Length => "length",
            Command::Series => "series",
            Command::Betti => "betti",
            Command::Chi => "chi",
            Command::Verify => "verify",
            Command::Frobcheck => "frobcheck",
            Command::Ehk => "ehk",
            Command::Conjecture => "conjecture",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug, Default)]
pub struct RunFlags {
    pub e: Option<u32>,
    pub max_e: Option<u32>,
    pub order: Option<TermOrder>,
    pub degree_budget: Option<u64>,
    /// Emit `timing_ms: null`.
    pub no_timing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: Value, got: Value) -> Self {
        let pass = expected == got;
        Check { name: name.to_string(), expected, got, pass }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub input_echo: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    /// Partial result after a resource cap.
    pub truncated: bool,
    pub timing_ms: Option<u64>,
    /// Human-readable body for the table format.
    pub body: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "expected": c.expected, "got": c.got, "pass": c.pass}))
            .collect();
        let mut v = json!({
            "command": self.command.name(),
            "input_echo": self.input_echo,
            "result": self.result,
            "checks": checks,
            "timing_ms": self.timing_ms,
        });
        if !self.warnings.is_empty() {
            v["warnings"] = json!(self.warnings);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    Input,
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub kind: FailureKind,
    pub code: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl From<InputError> for RunError {
    fn from(e: InputError) -> Self {
        RunError { kind: FailureKind::Input, code: e.code, message: e.message, line: e.line, column: e.column }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::DegreeBudgetExceeded { .. } | Error::ExponentOverflow => FailureKind::Resource,
            _ => FailureKind::Input,
        };
        RunError { kind, code: e.code().to_string(), message: e.to_string(), line: None, column: None }
    }
}

/// Exit status: 0 pass, 1 check failure, 2 input error, 3 resource cap.
pub fn exit_code(outcome: &Result<Report, RunError>) -> i32 {
    match outcome {
        Ok(r) if !r.passed() => 1,
        Ok(r) if r.truncated => 3,
        Ok(_) => 0,
        Err(e) if e.kind == FailureKind::Resource => 3,
        Err(_) => 2,
    }
}

/// Integer as a JSON number when it fits in `i64`, else a decimal string.
pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `"num/den"` in lowest terms, `den > 0`.
pub fn rational(r: &BigRational) -> Value {
    json!(format!("{}/{}", r.numer(), r.denom()))
}

/// Decimal rendering with `digits` places, rounded half away from zero.
pub fn decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled: BigInt = r.numer().abs() * &scale * 2 + r.denom();
    let (units, _) = scaled.div_rem(&(r.denom() * 2));
    let (int, frac) = units.div_rem(&scale);
    let sign = if r.is_negative() && !units.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({
        "text": p.to_string(),
        "terms": p.terms().map(|(e, c)| json!([e, big(c)])).collect::<Vec<_>>(),
    })
}

fn series_json(s: &HilbertSeries) -> Value {
    json!({
        "text": s.to_string(),
        "numerator": poly_json(s.numerator()),
        "denominator": s.denominator(),
    })
}

fn rational_function_text(f: &RationalFunction) -> String {
    match f.as_polynomial() {
        Some(p) => p.to_string(),
        None => format!("({}) / ({})", f.numerator, f.denominator),
    }
}

struct Ctx<'a> {
    problem: &'a Problem,
    order: TermOrder,
    opts: GbOptions,
    flags: &'a RunFlags,
}

type Body = (Value, Vec<Check>, Vec<String>, bool);

fn length(ctx: &Ctx) -> Result<Body, RunError> {
    let n = colength_with(&ctx.problem.ideal, ctx.order, &ctx.opts)?;
    Ok((json!(n), vec![], vec![format!("length: {n}")], false))
}

fn series(ctx: &Ctx) -> Result<Body, RunError> {
    let s = hilbert_series_quotient_with(&ctx.problem.ideal, ctx.order, &ctx.opts)?;
    let dim = s.dimension();
    let value = (dim == 0).then(|| s.evaluate_at_one()).transpose()?;
    let mut checks = vec![];
    let mut body = vec![format!("series: {s}"), format!("dimension: {dim}")];
    if let Some(v) = &value {
        let n = colength_with(&ctx.problem.ideal, ctx.order, &ctx.opts)?;
        checks.push(Check::new("P(1) = length", json!(n), big(&v.to_integer())));
        if !v.is_integer() {
            checks.last_mut().unwrap().pass = false;
        }
        body.push(format!("P(1): {v}"));
    }
    let result = json!({
        "series": series_json(&s),
        "dimension": dim,
        "value_at_one": value.as_ref().map(rational),
    });
    Ok((result, checks, body, false))
}

fn betti(ctx: &Ctx) -> Result<Body, RunError> {
    let t = graded_betti(&ctx.problem.ideal)?;
    let entries: Vec<Value> = t.triples().into_iter().map(|(i, j, b)| json!([i, j, b])).collect();
    let pd = t.projective_dimension().unwrap_or(0);
    let totals: Vec<u64> = (0..=pd).map(|i| t.total(i)).collect();
    let alternating: i64 = totals.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    let result = json!({
        "entries": entries,
        "projective_dimension": pd,
        "totals": totals,
        "characteristic": t.characteristic(),
    });
    let body = vec![t.to_string()];
    Ok((result, vec![Check::new("sum (-1)^i b_i = 0", json!(0), json!(alternating))], body, false))
}

fn chi(ctx: &Ctx) -> Result<Body, RunError> {
    let t = graded_betti(&ctx.problem.ideal)?;
    let chi = chi_from_betti(&t);
    let d = ring_dimension(&ctx.problem.ideal)?;
    let reduced = chi_reduced(&chi, d)?;
    let n = colength_with(&ctx.problem.ideal, ctx.order, &ctx.opts)?;
    let result = json!({"chi": poly_json(chi.poly()), "chi_reduced": poly_json(reduced.poly()), "d": d});
    let body = vec![format!("chi: {chi}"), format!("chi_reduced: {reduced}"), format!("d: {d}")];
    let check = length_check(ctx, &reduced, n)?;
    Ok((result, vec![check], body, false))
}

/// `chi~(1) e(R) = length`, `e(R)` being `((1 - t)^d P_R)(1)`.
fn length_check(ctx: &Ctx, reduced: &ChiPolynomial, n: u64) -> Result<Check, RunError> {
    let e_r = hilbert_series_ring(ctx.problem.ideal.ring())?.multiplicity();
    let got = BigRational::from_integer(reduced.poly().eval_at_one()) * e_r;
    Ok(Check::new("chi_reduced(1) * e(R) = length", rational(&BigRational::from_integer(n.into())), rational(&got)))
}

fn verify(ctx: &Ctx) -> Result<Body, RunError> {
    let ideal = &ctx.problem.ideal;
    let route = if ideal.ring().is_polynomial_ring() {
        ChiRoute::Betti
    } else if ctx.problem.options.regular_sequence {
        ChiRoute::RegularSequence
    } else {
        return Err(Error::QuotientRingUnsupported.into());
    };
    let rep = verify_factorization(ideal, route)?;
    let route_name = match route {
        ChiRoute::Betti => "betti",
        ChiRoute::RegularSequence => "regular_sequence",
    };
    let mut checks = vec![Check {
        name: "P_M = chi * P_R".into(),
        expected: json!(rep.module_series.to_string()),
        got: json!(rep.product.to_string()),
        pass: rep.holds,
    }];
    let d = ring_dimension(ideal)?;
    let reduced = chi_reduced(&rep.chi, d)?;
    let n = colength_with(ideal, ctx.order, &ctx.opts)?;
    checks.push(length_check(ctx, &reduced, n)?);
    let result = json!({
        "route": route_name,
        "chi": poly_json(rep.chi.poly()),
        "chi_reduced": poly_json(reduced.poly()),
        "module_series": series_json(&rep.module_series),
        "ring_series": series_json(&rep.ring_series),
        "product": series_json(&rep.product),
        "holds": rep.holds,
    });
    let body = vec![
        format!("route: {route_name}"),
        format!("chi: {}", rep.chi),
        format!("P_M: {}", rep.module_series),
        format!("P_R: {}", rep.ring_series),
        format!("chi * P_R: {}", rep.product),
    ];
    Ok((result, checks, body, false))
}

fn frobcheck(ctx: &Ctx) -> Result<Body, RunError> {
    let ideal = &ctx.problem.ideal;
    let e = ctx.flags.e.unwrap_or(1);
    let rep = length_identity_check(ideal, e, ctx.problem.options.regular_sequence, &ctx.opts)?;
    let mut checks = vec![];
    if rep.evidence.certified() {
        checks.push(Check::new("q^d scaling", big(&rep.predicted), json!(rep.length_bracket)));
    }
    let mut result = json!({
        "e": rep.e,
        "q": rep.q,
        "d": rep.d,
        "length": rep.colength,
        "length_bracket": rep.length_bracket,
        "predicted": big(&rep.predicted),
        "equal": rep.equal,
        "ratio": rational(&rep.ratio),
        "hypothesis": rep.evidence.describe(),
        "asserted": rep.evidence.certified(),
    });
    let mut body = vec![
        format!("e: {}  q: {}  d: {}", rep.e, rep.q, rep.d),
        format!("length: {}", rep.colength),
        format!("length of bracket power: {}", rep.length_bracket),
        format!("q^d * length: {}", rep.predicted),
        format!("hypothesis: {}", rep.evidence.describe()),
    ];
    if ideal.ring().is_polynomial_ring() {
        let s = frobenius_series_identity(ideal, e, &ctx.opts)?;
        checks.push(Check {
            name: "series identity".into(),
            expected: json!(s.direct.to_string()),
            got: json!(rational_function_text(&s.derived)),
            pass: s.series_equal,
        });
        checks.push(Check {
            name: "chi of Frobenius table = chi(t^q)".into(),
            expected: json!(s.chi.poly().substitute_power(s.q as u32).to_string()),
            got: json!(s.chi_frobenius.to_string()),
            pass: s.chi_frobenius_matches_substitution,
        });
        checks.push(Check::new("P(1) = q^d * length", rational(&BigRational::from_integer(s.predicted.clone())), rational(&s.derived_at_one)));
        result["series"] = json!({
            "direct": series_json(&s.direct),
            "derived": rational_function_text(&s.derived),
            "chi_reduced": poly_json(s.chi_reduced.poly()),
            "value_at_one": rational(&s.direct_at_one),
        });
        body.push(format!("P_(R/I^[q]): {}", s.direct));
        body.push(format!("chi_reduced(t^q) (1 + ... + t^(q-1))^d p / g: {}", rational_function_text(&s.derived)));
    }
    Ok((result, checks, body, false))
}

fn ratio_rows(est: &hk_core::EhkEstimate) -> (Value, Vec<String>) {
    let v = json!({
        "length": est.colength,
        "d": est.d,
        "e": est.ratios.iter().map(|r| r.e).collect::<Vec<_>>(),
        "q": est.ratios.iter().map(|r| r.q).collect::<Vec<_>>(),
        "lengths": est.ratios.iter().map(|r| r.length).collect::<Vec<_>>(),
        "ratios": est.ratios.iter().map(|r| rational(&r.ratio)).collect::<Vec<_>>(),
        "ratios_decimal": est.ratios.iter().map(|r| decimal(&r.ratio, 6)).collect::<Vec<_>>(),
        "lengths_increasing": est.lengths_increasing,
        "ratios_nonincreasing": est.ratios_nonincreasing,
        "truncated_at": est.truncated_at.as_ref().map(|(e, err)| json!({"e": e, "code": err.code(), "message": err.to_string()})),
    });
    let mut body = vec![format!("length: {}  d: {}", est.colength, est.d), format!("{:>3} {:>8} {:>12} {:>20} {:>10}", "e", "q", "length", "ratio", "decimal")];
    for r in &est.ratios {
        body.push(format!("{:>3} {:>8} {:>12} {:>20} {:>10}", r.e, r.q, r.length, rational(&r.ratio).as_str().unwrap(), decimal(&r.ratio, 6)));
    }
    if let Some((e, err)) = &est.truncated_at {
        body.push(format!("stopped at e = {e}: {err}"));
    }
    (v, body)
}

fn ehk(ctx: &Ctx) -> Result<Body, RunError> {
    let max_e = ctx.flags.max_e.unwrap_or(ctx.problem.options.e_max);
    let est = ehk_estimate(&ctx.problem.ideal, max_e, &ctx.opts)?;
    let (result, body) = ratio_rows(&est);
    let checks = vec![Check::new("lengths strictly increasing", json!(true), json!(est.lengths_increasing))];
    Ok((result, checks, body, est.truncated_at.is_some()))
}

fn conjecture(ctx: &Ctx) -> Result<Body, RunError> {
    let max_e = ctx.flags.max_e.unwrap_or(ctx.problem.options.e_max);
    let rep = conjecture_report(&ctx.problem.ideal, max_e, ctx.problem.options.regular_sequence, &ctx.opts)?;
    let (mut result, mut body) = ratio_rows(&rep.estimate);
    result["part1_holds_so_far"] = json!(rep.part1_holds_so_far);
    result["part2_exact"] = json!(rep.part2_exact);
    result["hypothesis"] = json!(rep.evidence.describe());
    result["note"] = json!(rep.note);
    result["label"] = json!("finite-stage evidence");
    let mut checks = vec![Check::new("lengths strictly increasing", json!(true), json!(rep.estimate.lengths_increasing))];
    checks.push(Check::new("ratio >= length at each e", json!(true), json!(rep.part1_holds_so_far)));
    if let Some(exact) = rep.part2_exact {
        checks.push(Check::new("ratio = length at each e", json!(true), json!(exact)));
    }
    body.push(format!("hypothesis: {}", rep.evidence.describe()));
    body.push(rep.note.clone());
    Ok((result, checks, body, rep.estimate.truncated_at.is_some()))
}

/// Runs one command on a parsed problem.
pub fn run(command: Command, problem: &Problem, flags: &RunFlags) -> Result<Report, RunError> {
    let ctx = Ctx {
        problem,
        order: flags.order.unwrap_or(problem.options.order),
        opts: GbOptions { degree_budget: Some(flags.degree_budget.unwrap_or(problem.options.degree_budget)) },
        flags,
    };
    let start = Instant::now();
    let (result, checks, body, truncated) = match command {
        Command::Length => length(&ctx),
        Command::Series => series(&ctx),
        Command::Betti => betti(&ctx),
        Command::Chi => chi(&ctx),
        Command::Verify => verify(&ctx),
        Command::Frobcheck => frobcheck(&ctx),
        Command::Ehk => ehk(&ctx),
        Command::Conjecture => conjecture(&ctx),
    }?;
    let elapsed = start.elapsed().as_millis() as u64;
    let mut echo = serde_json::Map::new();
    for (k, v) in problem.echo() {
        echo.insert(k.to_string(), json!(v));
    }
    if let Some(o) = flags.order {
        echo.insert("order".into(), json!(o.name()));
    }
    if let Some(b) = flags.degree_budget {
        echo.insert("degree_budget".into(), json!(b.to_string()));
    }
    Ok(Report {
        command,
        input_echo: Value::Object(echo),
        result,
        checks,
        warnings: problem.warnings.clone(),
        truncated,
        timing_ms: (!flags.no_timing).then_some(elapsed),
        body,
    })
}

/// JSON with keys sorted at every level, two-space indent.
pub fn canonical_json(v: &Value) -> String {
    fn sorted(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort();
                let mut out = serde_json::Map::new();
                for k in keys {
                    out.insert(k.clone(), sorted(&m[k]));
                }
                Value::Object(out)
            }
            Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string_pretty(&sorted(v)).expect("serializable")
}

fn error_json(command: Command, e: &RunError) -> Value {
    json!({
        "command": command.name(),
        "error": {"code": e.code, "message": e.message, "line": e.line, "column": e.column},
    })
}

/// Renders a report or error.
pub fn emit(command: Command, outcome: &Result<Report, RunError>, format: Format) -> String {
    match (outcome, format) {
        (Ok(r), Format::Json) => canonical_json(&r.to_json()),
        (Err(e), Format::Json) => canonical_json(&error_json(command, e)),
        (Ok(r), Format::Table) => {
            let mut s = String::new();
            writeln!(s, "{}", command.name()).unwrap();
            for w in &r.warnings {
                writeln!(s, "warning: {w}").unwrap();
            }
            for line in &r.body {
                writeln!(s, "{line}").unwrap();
            }
            for c in &r.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                writeln!(s, "{mark} {}: expected {} got {}", c.name, c.expected, c.got).unwrap();
            }
            if let Some(ms) = r.timing_ms {
                writeln!(s, "time: {ms} ms").unwrap();
            }
            s.pop();
            s
        }
        (Err(e), Format::Table) => match (e.line, e.column) {
            (Some(l), Some(c)) => format!("error [{}] line {l}, column {c}: {}", e.code, e.message),
            _ => format!("error [{}]: {}", e.code, e.message),
        },
    }
}

/// Parses `text`, runs `command`, and returns the rendered output with its
/// exit status.
pub fn execute(command: Command, text: &str, flags: &RunFlags, format: Format) -> (String, i32) {
    let outcome = parse_problem(text).map_err(RunError::from).and_then(|p| run(command, &p, flags));
    (emit(command, &outcome, format), exit_code(&outcome))
}
