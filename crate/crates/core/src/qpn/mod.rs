//! Quantum Petri nets: places holding FIFO queues of q-tokens, transitions
//! with labeled input/output arcs, inhibitor arcs and address guards.
//!
//! A place queue holds *entries*. An entry is usually one token; a fused
//! output arc instead deposits everything routed to it as a single entry
//! (a data token travelling with its ancillary companion). Enabledness and
//! arc multiplicities count entries, while marking tables and distribution
//! signatures count tokens.

mod enumerate;
mod example;
mod firing;
mod marking;
mod run;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::statevector::{GateError, GateOp, StateVector};

pub use enumerate::{
    enumerate_final_markings, explore, DistributionSignature, Enumeration, DEFAULT_STEP_BOUND,
};
pub use example::cnot_example;
pub use firing::{enabled_transitions, fire, unfire, unfire_trace};
pub use marking::{Entry, Marking};
pub use run::{
    run, run_bounded, FiringEvent, Scheduler, SkippedSelection, StagedEntry, TokenSnapshot, Trace,
};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl PartialEq<str> for $name {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $name {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }
    };
}

string_id!(TokenId);
string_id!(PlaceId);
string_id!(TransitionId);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("model error: {0}")]
    Model(String),
    #[error("unknown transition {0}")]
    UnknownTransition(TransitionId),
    #[error("cannot fire {transition}: not enabled{}", step_suffix(*.step))]
    NotEnabled {
        transition: TransitionId,
        step: Option<usize>,
    },
    #[error("reversal error: {0}")]
    Reversal(String),
    #[error("gate of {transition} failed: {source}")]
    Gate {
        transition: TransitionId,
        #[source]
        source: GateError,
    },
    #[error("gate of {0} entangled the consumed payloads; they cannot be split back into tokens")]
    Entangled(TransitionId),
    #[error("step bound of {0} firings exceeded")]
    Explosion(usize),
    #[error("token error: {0}")]
    Token(String),
}

fn step_suffix(step: Option<usize>) -> String {
    step.map(|s| format!(" at script step {s}"))
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Data,
    Ancillary,
}

impl TokenKind {
    pub fn name(self) -> &'static str {
        match self {
            TokenKind::Data => "data",
            TokenKind::Ancillary => "ancillary",
        }
    }
}

/// A named token and its quantum payload.
#[derive(Debug, Clone, PartialEq)]
pub struct QToken {
    pub id: TokenId,
    pub kind: TokenKind,
    pub payload: StateVector,
}

impl QToken {
    pub fn data(id: impl Into<TokenId>, payload: StateVector) -> Self {
        Self {
            id: id.into(),
            kind: TokenKind::Data,
            payload,
        }
    }

    /// Ancillary tokens address transitions by their basis value, so the
    /// payload must be a computational basis state.
    pub fn ancillary(id: impl Into<TokenId>, payload: StateVector) -> Result<Self, EngineError> {
        let id = id.into();
        if payload.as_basis_index().is_none() {
            return Err(EngineError::Token(format!(
                "ancillary token {id} must carry a basis state, got {payload}"
            )));
        }
        Ok(Self {
            id,
            kind: TokenKind::Ancillary,
            payload,
        })
    }

    /// Basis value of an ancillary token.
    pub fn address(&self) -> Option<usize> {
        match self.kind {
            TokenKind::Ancillary => self.payload.as_basis_index(),
            TokenKind::Data => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Input,
    Output,
    Ancillary,
    DataAncillary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub id: PlaceId,
    pub kind: PlaceKind,
}

impl Place {
    pub fn new(id: impl Into<PlaceId>, kind: PlaceKind) -> Self {
        Self {
            id: id.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputArc {
    pub place: PlaceId,
    pub label: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputArc {
    pub place: PlaceId,
    pub label: String,
    /// Deposit every routed token as one fused entry.
    pub fuse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InhibitorArc {
    pub place: PlaceId,
    pub label: String,
}

/// Sends tokens consumed through input arc `from` (optionally only those of
/// `kind`) to output arc `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub from: String,
    pub kind: Option<TokenKind>,
    pub to: String,
}

/// Enabled only when the head entry of `place` carries an ancillary token
/// whose basis value equals `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressGuard {
    pub place: PlaceId,
    pub value: usize,
}

/// Input-side transitions draw on an ancillary supply; output-side
/// transitions drain staged tokens. Schedulers use the distinction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionRole {
    Input,
    Output,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub id: TransitionId,
    pub role: TransitionRole,
    pub inputs: Vec<InputArc>,
    pub outputs: Vec<OutputArc>,
    pub inhibitors: Vec<InhibitorArc>,
    /// Applied to the concatenated data payloads, first consumed token on
    /// the high-order qubits. Empty means identity.
    pub gate: Vec<GateOp>,
    pub guard: Option<AddressGuard>,
    pub routes: Vec<Route>,
}

impl Transition {
    pub fn new(id: impl Into<TransitionId>, role: TransitionRole) -> Self {
        Self {
            id: id.into(),
            role,
            inputs: Vec::new(),
            outputs: Vec::new(),
            inhibitors: Vec::new(),
            gate: Vec::new(),
            guard: None,
            routes: Vec::new(),
        }
    }

    pub fn input(self, place: impl Into<PlaceId>, label: &str) -> Self {
        self.input_n(place, label, 1)
    }

    pub fn input_n(mut self, place: impl Into<PlaceId>, label: &str, multiplicity: usize) -> Self {
        self.inputs.push(InputArc {
            place: place.into(),
            label: label.to_string(),
            multiplicity,
        });
        self
    }

    pub fn output(mut self, place: impl Into<PlaceId>, label: &str) -> Self {
        self.outputs.push(OutputArc {
            place: place.into(),
            label: label.to_string(),
            fuse: false,
        });
        self
    }

    pub fn fused_output(mut self, place: impl Into<PlaceId>, label: &str) -> Self {
        self.outputs.push(OutputArc {
            place: place.into(),
            label: label.to_string(),
            fuse: true,
        });
        self
    }

    pub fn inhibitor(mut self, place: impl Into<PlaceId>, label: &str) -> Self {
        self.inhibitors.push(InhibitorArc {
            place: place.into(),
            label: label.to_string(),
        });
        self
    }

    pub fn route(mut self, from: &str, to: &str) -> Self {
        self.routes.push(Route {
            from: from.to_string(),
            kind: None,
            to: to.to_string(),
        });
        self
    }

    pub fn route_kind(mut self, from: &str, kind: TokenKind, to: &str) -> Self {
        self.routes.push(Route {
            from: from.to_string(),
            kind: Some(kind),
            to: to.to_string(),
        });
        self
    }

    pub fn gate(mut self, ops: Vec<GateOp>) -> Self {
        self.gate = ops;
        self
    }

    pub fn guard(mut self, place: impl Into<PlaceId>, value: usize) -> Self {
        self.guard = Some(AddressGuard {
            place: place.into(),
            value,
        });
        self
    }

    /// Output arc index for a token consumed through `label`. Kind-specific
    /// routes win over catch-all ones.
    pub(crate) fn destination(&self, label: &str, kind: TokenKind) -> Option<usize> {
        let route = self
            .routes
            .iter()
            .find(|r| r.from == label && r.kind == Some(kind))
            .or_else(|| {
                self.routes
                    .iter()
                    .find(|r| r.from == label && r.kind.is_none())
            })?;
        self.outputs.iter().position(|o| o.label == route.to)
    }

    /// Places whose inputs feed this transition.
    pub fn input_places(&self) -> impl Iterator<Item = &PlaceId> {
        self.inputs.iter().map(|a| &a.place)
    }
}

/// A validated net: places in declaration order and transitions in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPNet {
    places: Vec<Place>,
    transitions: Vec<Transition>,
}

impl QPNet {
    pub fn new(places: Vec<Place>, transitions: Vec<Transition>) -> Result<Self, EngineError> {
        let model = |msg: String| Err(EngineError::Model(msg));
        let mut seen = BTreeSet::new();
        for p in &places {
            if !seen.insert(p.id.clone()) {
                return model(format!("duplicate place {}", p.id));
            }
        }
        let has_place = |id: &PlaceId| places.iter().any(|p| &p.id == id);
        let mut tseen = BTreeSet::new();
        for t in &transitions {
            if !tseen.insert(t.id.clone()) {
                return model(format!("duplicate transition {}", t.id));
            }
            let mut labels = BTreeSet::new();
            for a in &t.inputs {
                if !has_place(&a.place) {
                    return model(format!("{}: unknown input place {}", t.id, a.place));
                }
                if a.multiplicity == 0 {
                    return model(format!("{}: arc {} has multiplicity 0", t.id, a.label));
                }
                if !labels.insert(a.label.as_str()) {
                    return model(format!("{}: duplicate arc label {}", t.id, a.label));
                }
            }
            for o in &t.outputs {
                if !has_place(&o.place) {
                    return model(format!("{}: unknown output place {}", t.id, o.place));
                }
                if !labels.insert(o.label.as_str()) {
                    return model(format!("{}: duplicate arc label {}", t.id, o.label));
                }
            }
            for h in &t.inhibitors {
                if !has_place(&h.place) {
                    return model(format!("{}: unknown inhibitor place {}", t.id, h.place));
                }
                if !labels.insert(h.label.as_str()) {
                    return model(format!("{}: duplicate arc label {}", t.id, h.label));
                }
            }
            for r in &t.routes {
                if !t.inputs.iter().any(|a| a.label == r.from) {
                    return model(format!("{}: route from unknown input arc {}", t.id, r.from));
                }
                if !t.outputs.iter().any(|o| o.label == r.to) {
                    return model(format!("{}: route to unknown output arc {}", t.id, r.to));
                }
            }
            for a in &t.inputs {
                for kind in [TokenKind::Data, TokenKind::Ancillary] {
                    if t.destination(&a.label, kind).is_none() {
                        return model(format!(
                            "{}: {} tokens consumed via {} have no route",
                            t.id,
                            kind.name(),
                            a.label
                        ));
                    }
                }
            }
            if let Some(g) = &t.guard {
                if !t.inputs.iter().any(|a| a.place == g.place) {
                    return model(format!("{}: guard place {} is not an input", t.id, g.place));
                }
            }
        }
        Ok(Self {
            places,
            transitions,
        })
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn place_ids(&self) -> Vec<PlaceId> {
        self.places.iter().map(|p| p.id.clone()).collect()
    }

    pub fn place_index(&self, id: &PlaceId) -> Option<usize> {
        self.places.iter().position(|p| &p.id == id)
    }

    pub fn transition(&self, id: &TransitionId) -> Option<&Transition> {
        self.transitions.iter().find(|t| &t.id == id)
    }

    pub fn has_gates(&self) -> bool {
        self.transitions.iter().any(|t| !t.gate.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_places() -> Vec<Place> {
        vec![
            Place::new("A", PlaceKind::Input),
            Place::new("B", PlaceKind::Output),
        ]
    }

    #[test]
    fn rejects_unrouted_inputs() {
        let t = Transition::new("T1", TransitionRole::Input)
            .input("A", "x")
            .output("B", "f")
            .route_kind("x", TokenKind::Data, "f");
        let err = QPNet::new(two_places(), vec![t]).unwrap_err();
        assert!(err
            .to_string()
            .contains("ancillary tokens consumed via x have no route"));
    }

    #[test]
    fn rejects_unknown_places_and_duplicate_labels() {
        let t = Transition::new("T1", TransitionRole::Input)
            .input("C", "x")
            .output("B", "f")
            .route("x", "f");
        assert!(QPNet::new(two_places(), vec![t]).is_err());

        let t = Transition::new("T1", TransitionRole::Input)
            .input("A", "x")
            .output("B", "x")
            .route("x", "x");
        assert!(QPNet::new(two_places(), vec![t]).is_err());
    }

    #[test]
    fn rejects_guard_on_non_input() {
        let t = Transition::new("T1", TransitionRole::Input)
            .input("A", "x")
            .output("B", "f")
            .route("x", "f")
            .guard("B", 0);
        assert!(QPNet::new(two_places(), vec![t]).is_err());
    }

    #[test]
    fn ancillary_tokens_must_be_basis_states() {
        assert!(QToken::ancillary("z1", StateVector::plus()).is_err());
        let z = QToken::ancillary("z1", StateVector::from_label("10").unwrap()).unwrap();
        assert_eq!(z.address(), Some(2));
    }

    #[test]
    fn kind_specific_route_wins() {
        let t = Transition::new("T", TransitionRole::Output)
            .input("A", "x")
            .output("B", "f1")
            .output("A", "f2")
            .route("x", "f1")
            .route_kind("x", TokenKind::Ancillary, "f2");
        assert_eq!(t.destination("x", TokenKind::Data), Some(0));
        assert_eq!(t.destination("x", TokenKind::Ancillary), Some(1));
    }
}
