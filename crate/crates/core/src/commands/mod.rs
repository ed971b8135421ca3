//! Command dispatch and reports for the command-line tool.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::pbwengine::{
    check_conditions_with, deformation_from_potential, gr_oracle, reconstruct_potential, BaseStatus, CheckOptions,
    ConditionResult, Deformation,
};
use crate::potentials::Potential;
use crate::quiverpath::Quiver;
use crate::textformat::{self, InputDocument};
use crate::vacualgebra::{build_graded, cy_check, cy_check_relations, CyReport, POSITIONS};
use crate::zoo::{self, FitMode, FitOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Derive,
    CheckPbw,
    Reconstruct,
    CheckCy,
    Hilbert,
    FitPotential,
    Zoo,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Derive,
        Command::CheckPbw,
        Command::Reconstruct,
        Command::CheckCy,
        Command::Hilbert,
        Command::FitPotential,
        Command::Zoo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Derive => "derive",
            Command::CheckPbw => "check-pbw",
            Command::Reconstruct => "reconstruct",
            Command::CheckCy => "check-cy",
            Command::Hilbert => "hilbert",
            Command::FitPotential => "fit-potential",
            Command::Zoo => "zoo",
        }
    }

    /// Whether the command reads an input document.
    pub fn needs_input(self) -> bool {
        self != Command::Zoo
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown command `{s}`")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Truncation degree.
    pub degree: Option<usize>,
    /// Extra generator length for the dimension oracle; None skips it.
    pub slack: Option<usize>,
    pub seed: u64,
    pub mode: FitMode,
    /// Zoo instance `family[:params]`.
    pub zoo: Option<String>,
    /// Index of a documented deformation of the zoo instance.
    pub deformation: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            degree: None,
            slack: None,
            seed: 0,
            mode: FitMode::PerGeneratorLine,
            zoo: None,
            deformation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Completed and every requested verdict is affirmative.
    Ok,
    /// Completed with a negative verdict.
    Negative,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Command,
    pub status: Status,
    pub fields: Map<String, Value>,
    /// Document printed verbatim in text output.
    pub document: Option<String>,
}

impl Report {
    fn new(command: Command) -> Self {
        Report {
            command,
            status: Status::Ok,
            fields: Map::new(),
            document: None,
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    fn error(command: Command, e: &Error) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        let mut err = Map::new();
        err.insert("kind".into(), e.kind().into());
        err.insert("message".into(), e.to_string().into());
        if let Error::Parse { line, column, .. } = e {
            err.insert("line".into(), (*line).into());
            err.insert("column".into(), (*column).into());
        }
        r.set("error", Value::Object(err));
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.name().into());
        m.insert("status".into(), self.status.name().into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if let Some(d) = &self.document {
            m.insert("document".into(), d.clone().into());
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialise");
        s.push('\n');
        s
    }

    /// `key: value` lines with dotted keys for nested objects. A zoo report
    /// prints its document instead.
    pub fn to_text(&self) -> String {
        if let (Some(d), Status::Ok) = (&self.document, self.status) {
            return d.clone();
        }
        let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status.name());
        for (k, v) in &self.fields {
            flatten(k, v, &mut out);
        }
        out
    }
}

fn flatten(key: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{key}.{k}"), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(Value::is_object) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{key}.{i}"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
        other => out.push_str(&format!("{key}: {other}\n")),
    }
}

/// Parses `text` (when the command reads input) and runs the command.
pub fn run_text(command: Command, text: Option<&str>, options: &RunOptions) -> Report {
    if !command.needs_input() {
        return run(command, None, options);
    }
    let Some(text) = text else {
        return Report::error(command, &Error::Invalid("no input document".into()));
    };
    match textformat::parse(text) {
        Ok(doc) => run(command, Some(&doc), options),
        Err(e) => Report::error(command, &e),
    }
}

pub fn run(command: Command, doc: Option<&InputDocument>, options: &RunOptions) -> Report {
    let result = match (command, doc) {
        (Command::Zoo, _) => zoo_command(options),
        (_, None) => Err(Error::Invalid("no input document".into())),
        (Command::Derive, Some(d)) => derive(d),
        (Command::CheckPbw, Some(d)) => check_pbw(d, options),
        (Command::Reconstruct, Some(d)) => reconstruct(d),
        (Command::CheckCy, Some(d)) => check_cy(d, options),
        (Command::Hilbert, Some(d)) => hilbert(d, options),
        (Command::FitPotential, Some(d)) => fit(d, options),
    };
    match result {
        Ok(mut r) => {
            r.command = command;
            r
        }
        Err(e) => Report::error(command, &e),
    }
}

fn require_degree(options: &RunOptions) -> Result<usize> {
    options
        .degree
        .ok_or_else(|| Error::Precondition("this command needs a truncation degree".into()))
}

fn header(doc: &InputDocument, command: Command) -> Report {
    let mut r = Report::new(command);
    r.set("field", doc.field.to_string());
    r
}

fn potential_value(q: &Quiver, w: &Potential) -> Value {
    w.terms()
        .map(|(k, c)| Value::String(crate::quiverpath::Element::term(c.clone(), k.representative().clone()).display(q)))
        .collect()
}

fn phi_value(d: &Deformation) -> Value {
    let q = d.base().quiver();
    let m: Map<String, Value> = d
        .phi()
        .iter()
        .enumerate()
        .map(|(a, x)| (q.arrow_name(a).to_string(), x.display(q).into()))
        .collect();
    Value::Object(m)
}

fn condition_value(q: &Quiver, c: &ConditionResult) -> Value {
    json!({
        "holds": c.holds,
        "evaluated": c.evaluated,
        "witness": c.witness.as_ref().map(|w| w.display(q)),
    })
}

fn derive(doc: &InputDocument) -> Result<Report> {
    let base = doc.base_relations()?;
    let lower = doc.lower_potential()?;
    let d = deformation_from_potential(&base, &lower)?;
    let mut r = header(doc, Command::Derive);
    r.set("relation_degree", base.degree());
    r.set("phi", phi_value(&d));
    match reconstruct_potential(&d) {
        Ok(w) => {
            let same = w == lower;
            r.set("round_trip", same);
            if !same {
                r.status = Status::Negative;
            }
        }
        Err(e @ Error::CharacteristicDividesFactorial { .. }) => {
            r.set("round_trip", Value::Null);
            r.set("round_trip_skipped", e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn base_status_value(s: &BaseStatus) -> Value {
    match s {
        BaseStatus::NotChecked => json!({"verdict": "not-checked"}),
        BaseStatus::ConsistentUpTo(d) => json!({"verdict": "consistent", "truncation": d}),
        BaseStatus::Inconsistent {
            truncation,
            first_failure,
        } => json!({
            "verdict": "inconsistent",
            "truncation": truncation,
            "first_failure": first_failure.map(|(d, p)| json!({"degree": d, "position": POSITIONS[p]})),
        }),
    }
}

fn check_pbw(doc: &InputDocument, options: &RunOptions) -> Result<Report> {
    let d = doc.deformation()?;
    let n = d.degree();
    let q = d.base().quiver();
    let cy_degree = options.degree.unwrap_or(n + 2);
    let rep = check_conditions_with(&d, CheckOptions { cy_degree: Some(cy_degree) })?;
    let mut r = header(doc, Command::CheckPbw);
    r.set("relation_degree", n);
    r.set("characteristic", rep.characteristic);
    r.set("char_divides_n_factorial", rep.char_divides_n_factorial);
    r.set("char_divides_n1_factorial", rep.char_divides_n1_factorial);
    r.set("pbw1", condition_value(q, &rep.pbw1));
    r.set("pbw2", condition_value(q, &rep.pbw2));
    let pbw3: Vec<Value> = rep
        .pbw3
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = condition_value(q, c);
            v.as_object_mut().expect("object").insert("j".into(), (i + 1).into());
            v
        })
        .collect();
    r.set("pbw3", pbw3);
    r.set("pbw4", condition_value(q, &rep.pbw4));
    r.set("conditions_hold", rep.overall);
    r.set("base", base_status_value(&rep.base_status));
    r.set("pbw_implied", rep.pbw_implied());
    r.set("pbw2prime", condition_value(q, &rep.pbw2prime));
    let mut affirmative = rep.pbw_implied();
    if let Some(slack) = options.slack {
        let truncation = options.degree.unwrap_or(n + 1);
        let v = gr_oracle(&d, truncation, slack)?;
        affirmative &= v.consistent();
        r.set(
            "oracle",
            json!({
                "truncation": v.truncation,
                "slack": v.slack,
                "upper_bounds": v.upper_bounds,
                "graded_cumulative": v.graded_cumulative,
                "violation": v.violation,
                "verdict": if v.consistent() { "consistent" } else { "violated" },
            }),
        );
    }
    if !affirmative {
        r.status = Status::Negative;
    }
    Ok(r)
}

fn reconstruct(doc: &InputDocument) -> Result<Report> {
    let d = doc.deformation()?;
    let w = reconstruct_potential(&d)?;
    let mut r = header(doc, Command::Reconstruct);
    r.set("relation_degree", d.degree());
    r.set("potential", potential_value(d.base().quiver(), &w));
    Ok(r)
}

fn cy_value(rep: &CyReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("truncation".into(), rep.truncation.into());
    m.insert("relation_degree".into(), rep.relation_degree.into());
    m.insert("relations_independent".into(), rep.relations_independent.into());
    m.insert("theta_injective".into(), rep.theta_injective.into());
    m.insert("theta_two_sided".into(), rep.theta_two_sided.into());
    m.insert("theta_spans_intersection".into(), rep.theta_spans_intersection.into());
    m.insert("intersection_dim".into(), rep.intersection_dim.into());
    m.insert("vertex_count".into(), rep.vertex_count.into());
    m.insert("hilbert".into(), rep.hilbert.clone().into());
    m.insert(
        "homology".into(),
        rep.homology.iter().map(|h| Value::from(h.homology.to_vec())).collect(),
    );
    m.insert(
        "first_failure".into(),
        rep.first_failure
            .map(|(d, p)| json!({"degree": d, "position": POSITIONS[p]}))
            .unwrap_or(Value::Null),
    );
    m.insert(
        "verdict".into(),
        if rep.consistent() {
            format!("consistent up to degree {}", rep.truncation)
        } else {
            "inconsistent".to_string()
        }
        .into(),
    );
    m
}

fn check_cy(doc: &InputDocument, options: &RunOptions) -> Result<Report> {
    let degree = require_degree(options)?;
    let rep = match doc.homogeneous_potential()? {
        Some(w) => cy_check(&doc.quiver, &w, degree)?,
        None => cy_check_relations(&doc.base_relations()?, degree)?,
    };
    let mut r = header(doc, Command::CheckCy);
    r.fields.extend(cy_value(&rep));
    if !rep.consistent() {
        r.status = Status::Negative;
    }
    Ok(r)
}

fn hilbert(doc: &InputDocument, options: &RunOptions) -> Result<Report> {
    let degree = require_degree(options)?;
    let base = doc.base_relations()?;
    let alg = build_graded(&base, degree)?;
    let mut r = header(doc, Command::Hilbert);
    r.set("relation_degree", base.degree());
    r.set("truncation", degree);
    r.set("dims", alg.dims());
    Ok(r)
}

fn fit(doc: &InputDocument, options: &RunOptions) -> Result<Report> {
    let base = doc.base_relations()?;
    let outcome = zoo::fit_potential(&doc.quiver, &base, options.mode, options.seed)?;
    let mut r = header(doc, Command::FitPotential);
    r.set("relation_degree", base.degree());
    r.set(
        "mode",
        match options.mode {
            FitMode::PerGeneratorLine => "per-line",
            FitMode::WholeSpan => "whole-span",
        },
    );
    r.set("seed", options.seed);
    match outcome {
        FitOutcome::Found { potential, solution_dim } => {
            r.set("outcome", "found");
            r.set("solution_dim", solution_dim);
            r.set("potential", potential_value(&doc.quiver, &potential));
        }
        FitOutcome::Infeasible => {
            r.set("outcome", "infeasible");
            r.status = Status::Negative;
        }
        FitOutcome::RankNotAchieved {
            solution_dim,
            rank,
            needed,
        } => {
            r.set("outcome", "rank-not-achieved");
            r.set("solution_dim", solution_dim);
            r.set("rank", rank);
            r.set("needed", needed);
            r.status = Status::Negative;
        }
    }
    Ok(r)
}

fn zoo_command(options: &RunOptions) -> Result<Report> {
    let name = options
        .zoo
        .as_deref()
        .ok_or_else(|| Error::Precondition("zoo needs an instance name".into()))?;
    let inst = zoo::by_name(name)?;
    let mut doc = InputDocument::from_instance(&inst);
    if let Some(k) = options.deformation {
        let d = match name.split(':').next() {
            Some("two-vertex") => zoo::two_vertex_deformation(&inst, k)?,
            Some("cyclic") if k == 1 => zoo::cyclic_quiver_deformation(&inst)?,
            _ => return Err(Error::Invalid(format!("no documented deformation {k} for `{name}`"))),
        };
        doc = doc.with_deformation(&d);
    }
    let mut r = Report::new(Command::Zoo);
    r.set("name", inst.name.clone());
    r.set("field", inst.field().to_string());
    r.set("relation_degree", inst.relation_degree());
    r.set("calabi_yau", inst.calabi_yau);
    r.set("expected_hilbert", inst.expected_hilbert.clone());
    r.document = Some(textformat::print(&doc));
    Ok(r)
}

#[cfg(test)]
mod tests;
