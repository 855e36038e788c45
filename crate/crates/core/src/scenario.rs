//! JSON scenario documents describing a buffer run, and JSON/text renderings
//! of traces.
//!
//! A scenario is a flat object:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "kind": "simo",
//!   "n": 4, "m": 3, "k": 2,
//!   "addresses": [1, 0, 1],
//!   "payloads": { "d1": "10", "d2": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]] },
//!   "scheduler": "address-driven",
//!   "seed": 0,
//!   "enumerate": false
//! }
//! ```
//!
//! Parameters by kind: `siso` takes `n, m`; `simo` takes `n, m, k`; `miso`
//! takes `inputs, m`; `mimo` takes `inputs, outputs, m`; `priority` takes
//! `low, high, m_low, m_high`. `scheduler` is one of `"address-driven"`
//! (default), `"eager-output"`, `"random"` (seeded by `seed`) or
//! `{"scripted": ["T1", ...]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::buffers::{BufferParams, BufferSpec, SpecError};
use crate::qpn::{
    self, EngineError, Entry, FiringEvent, Marking, QPNet, QToken, Scheduler, SkippedSelection,
    StagedEntry, TokenSnapshot, Trace,
};
use crate::statevector::StateVector;

pub const SCENARIO_SCHEMA_VERSION: u32 = 1;
pub const TRACE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioIoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> ScenarioIoError {
    ScenarioIoError::Field {
        field: field.into(),
        message: message.into(),
    }
}

impl From<serde_json::Error> for ScenarioIoError {
    fn from(e: serde_json::Error) -> Self {
        ScenarioIoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Siso,
    Simo,
    Miso,
    Mimo,
    Priority,
}

/// A payload as a basis label (`"10"`) or explicit amplitudes, `[re, im]`
/// per basis index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PayloadDoc {
    Label(String),
    Amplitudes(Vec<[f64; 2]>),
}

impl PayloadDoc {
    pub fn to_state(&self) -> Result<StateVector, String> {
        match self {
            PayloadDoc::Label(label) => StateVector::from_label(label).map_err(|e| e.to_string()),
            PayloadDoc::Amplitudes(pairs) => StateVector::from_amplitudes(
                pairs
                    .iter()
                    .map(|[re, im]| Complex64::new(*re, *im))
                    .collect(),
            )
            .map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchedulerDoc {
    #[default]
    AddressDriven,
    EagerOutput,
    Random,
    Scripted(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    #[serde(default = "scenario_version")]
    pub schema_version: u32,
    pub kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub low: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_low: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_high: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub payloads: BTreeMap<String, PayloadDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub addresses: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_addresses: Option<Vec<usize>>,
    #[serde(default)]
    pub scheduler: SchedulerDoc,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub enumerate: bool,
}

fn scenario_version() -> u32 {
    SCENARIO_SCHEMA_VERSION
}

impl ScenarioDoc {
    /// A document of the given kind with every optional field unset.
    pub fn new(kind: KindDoc) -> Self {
        Self {
            schema_version: SCENARIO_SCHEMA_VERSION,
            kind,
            n: None,
            m: None,
            k: None,
            inputs: None,
            outputs: None,
            low: None,
            high: None,
            m_low: None,
            m_high: None,
            payloads: BTreeMap::new(),
            addresses: None,
            output_addresses: None,
            scheduler: SchedulerDoc::default(),
            seed: 0,
            enumerate: false,
        }
    }

    pub fn to_spec(&self) -> Result<BufferSpec, ScenarioIoError> {
        if self.schema_version != SCENARIO_SCHEMA_VERSION {
            return Err(field_error(
                "schema_version",
                format!("unsupported version {}", self.schema_version),
            ));
        }
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| field_error(name, "required for this kind"))
        };
        let allowed: &[&str] = match self.kind {
            KindDoc::Siso => &["n", "m"],
            KindDoc::Simo => &["n", "m", "k"],
            KindDoc::Miso => &["inputs", "m"],
            KindDoc::Mimo => &["inputs", "outputs", "m"],
            KindDoc::Priority => &["low", "high", "m_low", "m_high"],
        };
        let present = [
            ("n", self.n.is_some()),
            ("m", self.m.is_some()),
            ("k", self.k.is_some()),
            ("inputs", self.inputs.is_some()),
            ("outputs", self.outputs.is_some()),
            ("low", self.low.is_some()),
            ("high", self.high.is_some()),
            ("m_low", self.m_low.is_some()),
            ("m_high", self.m_high.is_some()),
        ];
        if let Some((name, _)) = present
            .iter()
            .find(|(name, set)| *set && !allowed.contains(name))
        {
            return Err(field_error(*name, "not a parameter of this buffer kind"));
        }
        let params = match self.kind {
            KindDoc::Siso => BufferParams::Siso {
                n: need(self.n, "n")?,
                m: need(self.m, "m")?,
            },
            KindDoc::Simo => BufferParams::Simo {
                n: need(self.n, "n")?,
                m: need(self.m, "m")?,
                k: need(self.k, "k")?,
            },
            KindDoc::Miso => BufferParams::Miso {
                inputs: self
                    .inputs
                    .clone()
                    .ok_or_else(|| field_error("inputs", "required for this kind"))?,
                m: need(self.m, "m")?,
            },
            KindDoc::Mimo => BufferParams::Mimo {
                inputs: self
                    .inputs
                    .clone()
                    .ok_or_else(|| field_error("inputs", "required for this kind"))?,
                outputs: need(self.outputs, "outputs")?,
                m: need(self.m, "m")?,
            },
            KindDoc::Priority => BufferParams::Priority {
                low: need(self.low, "low")?,
                high: need(self.high, "high")?,
                m_low: need(self.m_low, "m_low")?,
                m_high: need(self.m_high, "m_high")?,
            },
        };
        let mut spec = BufferSpec::new(params);
        for (token, payload) in &self.payloads {
            let state = payload
                .to_state()
                .map_err(|e| field_error(format!("payloads.{token}"), e))?;
            spec.payloads.insert(token.clone(), state);
        }
        spec.addresses = self.addresses.clone();
        spec.output_addresses = self.output_addresses.clone();
        spec.build().map_err(|e| match e {
            SpecError::AddressOutOfRange {
                field,
                index,
                value,
                choices,
            } => field_error(
                format!("{field}[{index}]"),
                format!("address {value} is out of range for {choices} selectable transitions"),
            ),
            SpecError::CapacityExceedsInput { .. } => field_error("m", e.to_string()),
            SpecError::Invalid { field, message } => field_error(field, message),
            SpecError::Engine(err) => field_error("kind", err.to_string()),
        })?;
        Ok(spec)
    }

    pub fn scheduler(&self) -> Scheduler {
        match &self.scheduler {
            SchedulerDoc::AddressDriven => Scheduler::AddressDriven,
            SchedulerDoc::EagerOutput => Scheduler::EagerOutputThenScript,
            SchedulerDoc::Random => Scheduler::Random(self.seed),
            SchedulerDoc::Scripted(ids) => Scheduler::scripted(ids.iter().map(String::as_str)),
        }
    }
}

/// Strict parse: unknown fields are rejected and the result is checked to
/// describe a buildable buffer.
pub fn parse_scenario(text: &str) -> Result<ScenarioDoc, ScenarioIoError> {
    let doc: ScenarioDoc = serde_json::from_str(text)?;
    doc.to_spec()?;
    Ok(doc)
}

pub fn emit_scenario(doc: &ScenarioDoc) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("scenario serializes");
    text.push('\n');
    text
}

pub type Amplitudes = Vec<[f64; 2]>;

fn amplitudes_of(state: &StateVector) -> Amplitudes {
    state.amplitudes().iter().map(|c| [c.re, c.im]).collect()
}

fn state_of(pairs: &Amplitudes, what: &str) -> Result<StateVector, ScenarioIoError> {
    PayloadDoc::Amplitudes(pairs.clone())
        .to_state()
        .map_err(|e| field_error(what, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceDoc {
    pub place: String,
    /// Queue entries front to back; a fused entry lists several tokens.
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TokenDoc {
    pub kind: String,
    pub payload: Amplitudes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkingDoc {
    pub time: u64,
    pub places: Vec<PlaceDoc>,
    pub tokens: BTreeMap<String, TokenDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TokenStateDoc {
    pub token: String,
    pub payload: Amplitudes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StagedDoc {
    pub place: String,
    pub tokens: Vec<TokenStateDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub time: u64,
    pub transition: String,
    pub consumed: Vec<StagedDoc>,
    pub produced: Vec<StagedDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkipDoc {
    pub time: u64,
    pub ancillary: String,
    pub transition: String,
    pub empty_place: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub places: Vec<String>,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    pub schema_version: u32,
    pub initial: MarkingDoc,
    pub events: Vec<EventDoc>,
    pub skipped: Vec<SkipDoc>,
    #[serde(rename = "final")]
    pub final_marking: MarkingDoc,
    pub table: TableDoc,
}

fn marking_doc(m: &Marking) -> MarkingDoc {
    MarkingDoc {
        time: m.time(),
        places: m
            .queues()
            .map(|(p, q)| PlaceDoc {
                place: p.to_string(),
                entries: q
                    .iter()
                    .map(|e| e.tokens().iter().map(|t| t.to_string()).collect())
                    .collect(),
            })
            .collect(),
        tokens: m
            .tokens()
            .map(|t| {
                (
                    t.id.to_string(),
                    TokenDoc {
                        kind: t.kind.name().to_string(),
                        payload: amplitudes_of(&t.payload),
                    },
                )
            })
            .collect(),
    }
}

fn staged_doc(s: &StagedEntry) -> StagedDoc {
    StagedDoc {
        place: s.place.to_string(),
        tokens: s
            .tokens
            .iter()
            .map(|t| TokenStateDoc {
                token: t.id.to_string(),
                payload: amplitudes_of(&t.payload),
            })
            .collect(),
    }
}

impl TraceDoc {
    pub fn from_trace(trace: &Trace) -> Self {
        Self {
            schema_version: TRACE_SCHEMA_VERSION,
            initial: marking_doc(&trace.initial),
            events: trace
                .events
                .iter()
                .map(|e| EventDoc {
                    time: e.time,
                    transition: e.transition.to_string(),
                    consumed: e.consumed.iter().map(staged_doc).collect(),
                    produced: e.produced.iter().map(staged_doc).collect(),
                })
                .collect(),
            skipped: trace
                .skipped
                .iter()
                .map(|s| SkipDoc {
                    time: s.time,
                    ancillary: s.ancillary.to_string(),
                    transition: s.transition.to_string(),
                    empty_place: s.empty_place.to_string(),
                })
                .collect(),
            final_marking: marking_doc(&trace.final_marking),
            table: TableDoc {
                places: trace.initial.queues().map(|(p, _)| p.to_string()).collect(),
                rows: marking_table(trace),
            },
        }
    }

    /// Rebuilds the trace against `net`, checking every marking for
    /// consistency.
    pub fn to_trace(&self, net: &QPNet) -> Result<Trace, ScenarioIoError> {
        if self.schema_version != TRACE_SCHEMA_VERSION {
            return Err(field_error(
                "schema_version",
                format!("unsupported version {}", self.schema_version),
            ));
        }
        let staged = |s: &StagedDoc, what: &str| -> Result<StagedEntry, ScenarioIoError> {
            Ok(StagedEntry {
                place: s.place.as_str().into(),
                tokens: s
                    .tokens
                    .iter()
                    .map(|t| {
                        Ok(TokenSnapshot {
                            id: t.token.as_str().into(),
                            payload: state_of(&t.payload, &format!("{what}.{}", t.token))?,
                        })
                    })
                    .collect::<Result<_, ScenarioIoError>>()?,
            })
        };
        let mut events = Vec::with_capacity(self.events.len());
        for (i, e) in self.events.iter().enumerate() {
            let what = format!("events[{i}]");
            events.push(FiringEvent {
                time: e.time,
                transition: e.transition.as_str().into(),
                consumed: e
                    .consumed
                    .iter()
                    .map(|s| staged(s, &what))
                    .collect::<Result<_, _>>()?,
                produced: e
                    .produced
                    .iter()
                    .map(|s| staged(s, &what))
                    .collect::<Result<_, _>>()?,
            });
        }
        Ok(Trace {
            initial: marking_from_doc(net, &self.initial, "initial")?,
            events,
            skipped: self
                .skipped
                .iter()
                .map(|s| SkippedSelection {
                    time: s.time,
                    ancillary: s.ancillary.as_str().into(),
                    transition: s.transition.as_str().into(),
                    empty_place: s.empty_place.as_str().into(),
                })
                .collect(),
            final_marking: marking_from_doc(net, &self.final_marking, "final")?,
        })
    }
}

fn marking_from_doc(net: &QPNet, doc: &MarkingDoc, what: &str) -> Result<Marking, ScenarioIoError> {
    let mut tokens = Vec::with_capacity(doc.tokens.len());
    for (id, t) in &doc.tokens {
        let field = format!("{what}.tokens.{id}");
        let payload = state_of(&t.payload, &field)?;
        let token = match t.kind.as_str() {
            "data" => QToken::data(id.as_str(), payload),
            "ancillary" => QToken::ancillary(id.as_str(), payload)
                .map_err(|e| field_error(&field, e.to_string()))?,
            other => return Err(field_error(field, format!("unknown token kind {other:?}"))),
        };
        tokens.push(token);
    }
    let queues = doc
        .places
        .iter()
        .map(|p| {
            (
                p.place.as_str().into(),
                p.entries
                    .iter()
                    .map(|e| Entry(e.iter().map(|t| t.as_str().into()).collect()))
                    .collect(),
            )
        })
        .collect();
    Marking::from_parts(net, doc.time, queues, tokens).map_err(|e| field_error(what, e.to_string()))
}

/// Canonical JSON for a trace: object keys sorted, two-space indentation.
pub fn emit_trace(trace: &Trace) -> String {
    emit_trace_doc(&TraceDoc::from_trace(trace))
}

pub fn emit_trace_doc(doc: &TraceDoc) -> String {
    // serde_json::Value keeps object keys in a BTreeMap, which sorts them.
    let value = serde_json::to_value(doc).expect("trace serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    text
}

pub fn parse_trace(text: &str) -> Result<TraceDoc, ScenarioIoError> {
    Ok(serde_json::from_str(text)?)
}

/// Replays the recorded transitions from the recorded initial marking and
/// checks that the recorded final marking is reached.
pub fn verify_replay(net: &QPNet, doc: &TraceDoc) -> Result<Marking, ScenarioIoError> {
    let trace = doc.to_trace(net)?;
    let script = Scheduler::Scripted(trace.firing_order());
    let replayed = qpn::run(net, &trace.initial, &script)
        .map_err(|e: EngineError| field_error("events", e.to_string()))?;
    if replayed.final_marking != trace.final_marking {
        return Err(field_error(
            "final",
            format!(
                "replay ends in {} but the document records {}",
                replayed.final_marking, trace.final_marking
            ),
        ));
    }
    Ok(replayed.final_marking)
}

/// Token counts per place (net order) after each step, starting at step 0.
pub fn marking_table(trace: &Trace) -> Vec<Vec<usize>> {
    let places: Vec<_> = trace.initial.queues().map(|(p, _)| p.clone()).collect();
    let mut row = trace.initial.counts();
    let mut rows = vec![row.clone()];
    let index = |place| {
        places
            .iter()
            .position(|p| p == place)
            .expect("event place in net")
    };
    for e in &trace.events {
        for s in &e.consumed {
            row[index(&s.place)] -= s.tokens.len();
        }
        for s in &e.produced {
            row[index(&s.place)] += s.tokens.len();
        }
        rows.push(row.clone());
    }
    rows
}

/// Fixed-width text table: a `t` column, then one column per place.
pub fn emit_marking_table(trace: &Trace) -> String {
    let mut header = vec!["t".to_string()];
    header.extend(trace.initial.queues().map(|(p, _)| p.to_string()));
    let rows: Vec<Vec<String>> = marking_table(trace)
        .into_iter()
        .enumerate()
        .map(|(t, counts)| {
            std::iter::once(t.to_string())
                .chain(counts.into_iter().map(|c| c.to_string()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in std::iter::once(&header).chain(rows.iter()) {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buffers::run_scenario;

    #[test]
    fn minimal_document_gets_defaults() {
        let doc = parse_scenario(r#"{"kind": "siso", "n": 1, "m": 1}"#).unwrap();
        assert_eq!(doc.scheduler, SchedulerDoc::AddressDriven);
        assert_eq!(doc.seed, 0);
        assert_eq!(doc.schema_version, SCENARIO_SCHEMA_VERSION);
        assert!(!doc.enumerate);
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let err = parse_scenario("{\n  \"kind\": \"siso\",\n  \"n\": ,\n}").unwrap_err();
        assert!(
            matches!(err, ScenarioIoError::Syntax { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_scenario(r#"{"kind": "siso", "n": 1, "m": 1, "colour": 3}"#).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn bad_address_names_the_entry() {
        let err =
            parse_scenario(r#"{"kind": "simo", "n": 4, "m": 3, "k": 2, "addresses": [1, 3, 0]}"#)
                .unwrap_err();
        assert!(
            matches!(err, ScenarioIoError::Field { ref field, .. } if field == "addresses[1]"),
            "{err:?}"
        );
    }

    #[test]
    fn missing_and_foreign_parameters() {
        let err = parse_scenario(r#"{"kind": "simo", "n": 4, "m": 3}"#).unwrap_err();
        assert!(matches!(err, ScenarioIoError::Field { ref field, .. } if field == "k"));
        let err = parse_scenario(r#"{"kind": "siso", "n": 4, "m": 3, "k": 2}"#).unwrap_err();
        assert!(matches!(err, ScenarioIoError::Field { ref field, .. } if field == "k"));
    }

    #[test]
    fn scripted_scheduler_parses() {
        let doc = parse_scenario(
            r#"{"kind": "siso", "n": 2, "m": 1, "scheduler": {"scripted": ["T1"]}}"#,
        )
        .unwrap();
        assert_eq!(doc.scheduler(), Scheduler::scripted(["T1"]));
    }

    #[test]
    fn empty_trace_document() {
        let doc = parse_scenario(r#"{"kind": "siso", "n": 2, "m": 0}"#).unwrap();
        let trace = run_scenario(&doc.to_spec().unwrap(), &doc.scheduler()).unwrap();
        let td = TraceDoc::from_trace(&trace);
        assert!(td.events.is_empty());
        assert_eq!(td.initial, td.final_marking);
        assert_eq!(td.table.rows, vec![vec![2, 0, 0, 0]]);
    }

    #[test]
    fn table_text_layout() {
        let doc = parse_scenario(r#"{"kind": "siso", "n": 4, "m": 3}"#).unwrap();
        let trace = run_scenario(&doc.to_spec().unwrap(), &doc.scheduler()).unwrap();
        let text = emit_marking_table(&trace);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t  P_I  P_A  P_A1  P_O");
        assert_eq!(lines[1], "0    4    3     0    0");
        assert_eq!(lines[2], "1    3    2     1    1");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn trace_keys_are_sorted() {
        let doc = parse_scenario(r#"{"kind": "siso", "n": 2, "m": 1}"#).unwrap();
        let trace = run_scenario(&doc.to_spec().unwrap(), &doc.scheduler()).unwrap();
        let text = emit_trace(&trace);
        let top: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(
            top,
            [
                "events",
                "final",
                "initial",
                "schema_version",
                "skipped",
                "table"
            ]
        );
    }
}
