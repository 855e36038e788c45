//! Constructors for the SISO, SIMO, MISO, MIMO and priority buffer nets and
//! a scenario runner on top of them.
//!
//! Token naming follows the net scripts: data tokens `d1, d2, ...` numbered
//! across input places in order, and ancillary tokens `z1, ...` (plus `w1,
//! ...` for the MIMO input selectors and the low-priority supply). Every
//! buffer transition is an identity gate.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::qpn::{
    self, EngineError, Marking, Place, PlaceId, PlaceKind, QPNet, QToken, Scheduler, TokenKind,
    Trace, Transition, TransitionRole,
};
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("capacity m={m} exceeds the {n} data tokens available")]
    CapacityExceedsInput { m: usize, n: usize },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error(
        "{field}[{index}] = {value} selects nothing; only {choices} transitions are selectable"
    )]
    AddressOutOfRange {
        field: String,
        index: usize,
        value: usize,
        choices: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn invalid(field: &str, message: impl Into<String>) -> SpecError {
    SpecError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BufferKind {
    Siso,
    Simo,
    Miso,
    Mimo,
    Priority,
}

impl BufferKind {
    pub fn name(self) -> &'static str {
        match self {
            BufferKind::Siso => "siso",
            BufferKind::Simo => "simo",
            BufferKind::Miso => "miso",
            BufferKind::Mimo => "mimo",
            BufferKind::Priority => "priority",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BufferParams {
    Siso {
        n: usize,
        m: usize,
    },
    Simo {
        n: usize,
        m: usize,
        k: usize,
    },
    Miso {
        inputs: Vec<usize>,
        m: usize,
    },
    Mimo {
        inputs: Vec<usize>,
        outputs: usize,
        m: usize,
    },
    Priority {
        low: usize,
        high: usize,
        m_low: usize,
        m_high: usize,
    },
}

impl BufferParams {
    pub fn kind(&self) -> BufferKind {
        match self {
            BufferParams::Siso { .. } => BufferKind::Siso,
            BufferParams::Simo { .. } => BufferKind::Simo,
            BufferParams::Miso { .. } => BufferKind::Miso,
            BufferParams::Mimo { .. } => BufferKind::Mimo,
            BufferParams::Priority { .. } => BufferKind::Priority,
        }
    }
}

/// A buffer instance: topology parameters, data payload overrides and the
/// address programs carried by the ancillary tokens.
///
/// Without an address program the ancillary tokens are `|0>` and the
/// selectable transitions are unguarded, so any of them may fire.
#[derive(Debug, Clone, PartialEq)]
pub struct BufferSpec {
    pub params: BufferParams,
    /// Payloads for data tokens; unspecified ones start in `|0>`.
    pub payloads: BTreeMap<String, StateVector>,
    /// SIMO: output selection. MISO and MIMO: input selection.
    pub addresses: Option<Vec<usize>>,
    /// MIMO only: output selection.
    pub output_addresses: Option<Vec<usize>>,
}

/// A built net with its initial marking.
#[derive(Debug, Clone, PartialEq)]
pub struct BufferNet {
    pub net: QPNet,
    pub marking: Marking,
}

impl BufferSpec {
    pub fn new(params: BufferParams) -> Self {
        Self {
            params,
            payloads: BTreeMap::new(),
            addresses: None,
            output_addresses: None,
        }
    }

    pub fn siso(n: usize, m: usize) -> Self {
        Self::new(BufferParams::Siso { n, m })
    }

    pub fn simo(n: usize, m: usize, k: usize) -> Self {
        Self::new(BufferParams::Simo { n, m, k })
    }

    pub fn miso(inputs: Vec<usize>, m: usize) -> Self {
        Self::new(BufferParams::Miso { inputs, m })
    }

    pub fn mimo(inputs: Vec<usize>, outputs: usize, m: usize) -> Self {
        Self::new(BufferParams::Mimo { inputs, outputs, m })
    }

    pub fn priority(low: usize, high: usize, m_low: usize, m_high: usize) -> Self {
        Self::new(BufferParams::Priority {
            low,
            high,
            m_low,
            m_high,
        })
    }

    pub fn with_payload(mut self, token: &str, payload: StateVector) -> Self {
        self.payloads.insert(token.to_string(), payload);
        self
    }

    pub fn with_addresses(mut self, addresses: Vec<usize>) -> Self {
        self.addresses = Some(addresses);
        self
    }

    pub fn with_output_addresses(mut self, addresses: Vec<usize>) -> Self {
        self.output_addresses = Some(addresses);
        self
    }

    pub fn kind(&self) -> BufferKind {
        self.params.kind()
    }

    pub fn build(&self) -> Result<BufferNet, SpecError> {
        let built = match &self.params {
            BufferParams::Siso { n, m } => self.build_siso(*n, *m)?,
            BufferParams::Simo { n, m, k } => self.build_simo(*n, *m, *k)?,
            BufferParams::Miso { inputs, m } => self.build_miso(inputs, *m)?,
            BufferParams::Mimo { inputs, outputs, m } => self.build_mimo(inputs, *outputs, *m)?,
            BufferParams::Priority {
                low,
                high,
                m_low,
                m_high,
            } => self.build_priority(*low, *high, *m_low, *m_high)?,
        };
        for name in self.payloads.keys() {
            let known = built
                .marking
                .token(&name.as_str().into())
                .is_some_and(|t| t.kind == TokenKind::Data);
            if !known {
                return Err(invalid(
                    &format!("payloads.{name}"),
                    "no data token with this name",
                ));
            }
        }
        Ok(built)
    }

    fn data_tokens(&self, first: usize, count: usize) -> Vec<QToken> {
        (first..first + count)
            .map(|i| {
                let id = format!("d{i}");
                let payload = self.payloads.get(&id).cloned().unwrap_or_else(zero_qubit);
                QToken::data(id, payload)
            })
            .collect()
    }

    fn check_addresses(
        &self,
        program: Option<&Vec<usize>>,
        field: &str,
        m: usize,
        choices: usize,
    ) -> Result<(), SpecError> {
        let Some(program) = program else {
            return Ok(());
        };
        if program.len() != m {
            return Err(invalid(
                field,
                format!("{} addresses given for capacity {m}", program.len()),
            ));
        }
        if let Some((index, &value)) = program.iter().enumerate().find(|(_, &v)| v >= choices) {
            return Err(SpecError::AddressOutOfRange {
                field: field.to_string(),
                index,
                value,
                choices,
            });
        }
        Ok(())
    }

    fn build_siso(&self, n: usize, m: usize) -> Result<BufferNet, SpecError> {
        if m > n {
            return Err(SpecError::CapacityExceedsInput { m, n });
        }
        if self.addresses.is_some() || self.output_addresses.is_some() {
            return Err(invalid("addresses", "a SISO buffer has nothing to select"));
        }
        let places = vec![
            Place::new("P_I", PlaceKind::Input),
            Place::new("P_A", PlaceKind::Ancillary),
            Place::new("P_A1", PlaceKind::Ancillary),
            Place::new("P_O", PlaceKind::Output),
        ];
        let t1 = Transition::new("T1", TransitionRole::Input)
            .input("P_I", "x1")
            .input("P_A", "x2")
            .output("P_O", "f1")
            .output("P_A1", "f2")
            .route("x1", "f1")
            .route("x2", "f2");
        let net = QPNet::new(places, vec![t1])?;
        let marking = Marking::new(
            &net,
            vec![
                ("P_I".into(), self.data_tokens(1, n)),
                ("P_A".into(), ancillaries("z", 1, None, m, 1)?),
            ],
        )?;
        Ok(BufferNet { net, marking })
    }

    fn build_simo(&self, n: usize, m: usize, k: usize) -> Result<BufferNet, SpecError> {
        if k < 2 {
            return Err(invalid("k", "a SIMO buffer needs at least two outputs"));
        }
        if m > n {
            return Err(SpecError::CapacityExceedsInput { m, n });
        }
        if self.output_addresses.is_some() {
            return Err(invalid(
                "output_addresses",
                "only MIMO buffers take output addresses",
            ));
        }
        self.check_addresses(self.addresses.as_ref(), "addresses", m, k)?;
        let guarded = self.addresses.is_some();

        let mut places = vec![
            Place::new("P_I", PlaceKind::Input),
            Place::new("P_A", PlaceKind::Ancillary),
            Place::new("P_A1", PlaceKind::Ancillary),
        ];
        places.extend((1..=k).map(|j| Place::new(format!("P_O{j}"), PlaceKind::Output)));
        let transitions = (1..=k)
            .map(|j| {
                let t = Transition::new(format!("T{j}"), TransitionRole::Input)
                    .input("P_I", "x1")
                    .input("P_A", "x2")
                    .output(format!("P_O{j}"), "f1")
                    .output("P_A1", "f2")
                    .route("x1", "f1")
                    .route("x2", "f2");
                if guarded {
                    t.guard("P_A", j - 1)
                } else {
                    t
                }
            })
            .collect();
        let net = QPNet::new(places, transitions)?;
        let marking = Marking::new(
            &net,
            vec![
                ("P_I".into(), self.data_tokens(1, n)),
                (
                    "P_A".into(),
                    ancillaries("z", 1, self.addresses.as_deref(), m, address_width(k))?,
                ),
            ],
        )?;
        Ok(BufferNet { net, marking })
    }

    fn build_miso(&self, inputs: &[usize], m: usize) -> Result<BufferNet, SpecError> {
        let k = inputs.len();
        if k < 2 {
            return Err(invalid("inputs", "a MISO buffer needs at least two inputs"));
        }
        if self.output_addresses.is_some() {
            return Err(invalid(
                "output_addresses",
                "only MIMO buffers take output addresses",
            ));
        }
        self.check_addresses(self.addresses.as_ref(), "addresses", m, k)?;
        let guarded = self.addresses.is_some();

        let mut places: Vec<Place> = (1..=k)
            .map(|j| Place::new(format!("P_I{j}"), PlaceKind::Input))
            .collect();
        places.push(Place::new("P_DA", PlaceKind::DataAncillary));
        places.push(Place::new("P_A", PlaceKind::Ancillary));
        places.push(Place::new("P_A1", PlaceKind::Ancillary));
        places.push(Place::new("P_O", PlaceKind::Output));

        let mut transitions: Vec<Transition> = (1..=k)
            .map(|j| {
                let t = Transition::new(format!("T{j}"), TransitionRole::Input)
                    .input(format!("P_I{j}"), "x1")
                    .input("P_A", "x2")
                    .fused_output("P_DA", "f1")
                    .route("x1", "f1")
                    .route("x2", "f1");
                if guarded {
                    t.guard("P_A", j - 1)
                } else {
                    t
                }
            })
            .collect();
        transitions.push(
            Transition::new(format!("T{}", k + 1), TransitionRole::Output)
                .input("P_DA", "x1")
                .output("P_O", "f1")
                .output("P_A1", "f2")
                .route_kind("x1", TokenKind::Data, "f1")
                .route_kind("x1", TokenKind::Ancillary, "f2"),
        );
        let net = QPNet::new(places, transitions)?;

        let mut placements = Vec::new();
        let mut next = 1;
        for (j, &r) in inputs.iter().enumerate() {
            placements.push((
                PlaceId::from(format!("P_I{}", j + 1)),
                self.data_tokens(next, r),
            ));
            next += r;
        }
        placements.push((
            "P_A".into(),
            ancillaries("z", 1, self.addresses.as_deref(), m, address_width(k))?,
        ));
        let marking = Marking::new(&net, placements)?;
        Ok(BufferNet { net, marking })
    }

    fn build_mimo(
        &self,
        inputs: &[usize],
        outputs: usize,
        m: usize,
    ) -> Result<BufferNet, SpecError> {
        let k = inputs.len();
        if k < 2 {
            return Err(invalid("inputs", "a MIMO buffer needs at least two inputs"));
        }
        if outputs < 2 {
            return Err(invalid(
                "outputs",
                "a MIMO buffer needs at least two outputs",
            ));
        }
        self.check_addresses(self.addresses.as_ref(), "addresses", m, k)?;
        self.check_addresses(
            self.output_addresses.as_ref(),
            "output_addresses",
            m,
            outputs,
        )?;

        let mut places: Vec<Place> = (1..=k)
            .map(|j| Place::new(format!("P_I{j}"), PlaceKind::Input))
            .collect();
        places.push(Place::new("P_DA", PlaceKind::DataAncillary));
        places.push(Place::new("P_A1", PlaceKind::Ancillary));
        places.push(Place::new("P_A2", PlaceKind::Ancillary));
        places.push(Place::new("P_A3", PlaceKind::Ancillary));
        places.extend((1..=outputs).map(|j| Place::new(format!("P_O{j}"), PlaceKind::Output)));

        let mut transitions = Vec::new();
        for j in 1..=k {
            let t = Transition::new(format!("T{j}"), TransitionRole::Input)
                .input(format!("P_I{j}"), "x1")
                .input("P_A1", "x2")
                .fused_output("P_DA", "f1")
                .route("x1", "f1")
                .route("x2", "f1");
            transitions.push(if self.addresses.is_some() {
                t.guard("P_A1", j - 1)
            } else {
                t
            });
        }
        for j in 1..=outputs {
            let t = Transition::new(format!("T{}", k + j), TransitionRole::Output)
                .input("P_DA", "x1")
                .input("P_A2", "x2")
                .output(format!("P_O{j}"), "f1")
                .output("P_A3", "f2")
                .route_kind("x1", TokenKind::Data, "f1")
                .route_kind("x1", TokenKind::Ancillary, "f2")
                .route("x2", "f2");
            transitions.push(if self.output_addresses.is_some() {
                t.guard("P_A2", j - 1)
            } else {
                t
            });
        }
        let net = QPNet::new(places, transitions)?;

        let mut placements = Vec::new();
        let mut next = 1;
        for (j, &r) in inputs.iter().enumerate() {
            placements.push((
                PlaceId::from(format!("P_I{}", j + 1)),
                self.data_tokens(next, r),
            ));
            next += r;
        }
        placements.push((
            "P_A1".into(),
            ancillaries("w", 1, self.addresses.as_deref(), m, address_width(k))?,
        ));
        placements.push((
            "P_A2".into(),
            ancillaries(
                "z",
                1,
                self.output_addresses.as_deref(),
                m,
                address_width(outputs),
            )?,
        ));
        let marking = Marking::new(&net, placements)?;
        Ok(BufferNet { net, marking })
    }

    fn build_priority(
        &self,
        low: usize,
        high: usize,
        m_low: usize,
        m_high: usize,
    ) -> Result<BufferNet, SpecError> {
        if self.addresses.is_some() || self.output_addresses.is_some() {
            return Err(invalid(
                "addresses",
                "a priority buffer has nothing to select",
            ));
        }
        let places = vec![
            Place::new("P_I1", PlaceKind::Input),
            Place::new("P_I2", PlaceKind::Input),
            Place::new("P_DA1", PlaceKind::DataAncillary),
            Place::new("P_A", PlaceKind::Ancillary),
            Place::new("P_DA2", PlaceKind::DataAncillary),
            Place::new("P_A1", PlaceKind::Ancillary),
            Place::new("P_A2", PlaceKind::Ancillary),
            Place::new("P_O", PlaceKind::Output),
        ];
        let input = |id: &str, data: &str, supply: &str, staging: &str| {
            Transition::new(id, TransitionRole::Input)
                .input(data, "x1")
                .input(supply, "x2")
                .fused_output(staging, "f1")
                .route("x1", "f1")
                .route("x2", "f1")
        };
        let output = |id: &str, staging: &str| {
            Transition::new(id, TransitionRole::Output)
                .input(staging, "x1")
                .output("P_O", "f1")
                .output("P_A2", "f2")
                .route_kind("x1", TokenKind::Data, "f1")
                .route_kind("x1", TokenKind::Ancillary, "f2")
        };
        let transitions = vec![
            input("T1", "P_I1", "P_A", "P_DA1"),
            input("T2", "P_I2", "P_A1", "P_DA2"),
            output("T3", "P_DA1").inhibitor("P_DA2", "x9"),
            output("T4", "P_DA2"),
        ];
        let net = QPNet::new(places, transitions)?;
        let marking = Marking::new(
            &net,
            vec![
                ("P_I1".into(), self.data_tokens(1, low)),
                ("P_I2".into(), self.data_tokens(low + 1, high)),
                ("P_A".into(), ancillaries("w", 1, None, m_low, 1)?),
                ("P_A1".into(), ancillaries("z", 1, None, m_high, 1)?),
            ],
        )?;
        Ok(BufferNet { net, marking })
    }
}

fn zero_qubit() -> StateVector {
    StateVector::basis_index(1, 0).expect("one qubit")
}

/// Qubits needed to hold addresses `0..choices`.
pub fn address_width(choices: usize) -> usize {
    (usize::BITS - choices.saturating_sub(1).leading_zeros()).max(1) as usize
}

fn ancillaries(
    prefix: &str,
    first: usize,
    program: Option<&[usize]>,
    m: usize,
    width: usize,
) -> Result<Vec<QToken>, SpecError> {
    (0..m)
        .map(|i| {
            let value = program.map_or(0, |p| p[i]);
            let payload = StateVector::basis_index(width, value)
                .map_err(|e| invalid("addresses", e.to_string()))?;
            Ok(QToken::ancillary(
                format!("{prefix}{}", first + i),
                payload,
            )?)
        })
        .collect()
}

pub fn build_siso(n: usize, m: usize) -> Result<BufferNet, SpecError> {
    BufferSpec::siso(n, m).build()
}

pub fn build_simo(n: usize, m: usize, k: usize) -> Result<BufferNet, SpecError> {
    BufferSpec::simo(n, m, k).build()
}

pub fn build_miso(inputs: &[usize], m: usize) -> Result<BufferNet, SpecError> {
    BufferSpec::miso(inputs.to_vec(), m).build()
}

pub fn build_mimo(inputs: &[usize], outputs: usize, m: usize) -> Result<BufferNet, SpecError> {
    BufferSpec::mimo(inputs.to_vec(), outputs, m).build()
}

pub fn build_priority(
    low: usize,
    high: usize,
    m_low: usize,
    m_high: usize,
) -> Result<BufferNet, SpecError> {
    BufferSpec::priority(low, high, m_low, m_high).build()
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} scenario: {source}")]
pub struct ScenarioError {
    pub kind: &'static str,
    #[source]
    pub source: SpecError,
}

/// Builds the net for `spec`, runs `scheduler` and returns the trace.
pub fn run_scenario(spec: &BufferSpec, scheduler: &Scheduler) -> Result<Trace, ScenarioError> {
    run_scenario_bounded(spec, scheduler, qpn::DEFAULT_STEP_BOUND)
}

pub fn run_scenario_bounded(
    spec: &BufferSpec,
    scheduler: &Scheduler,
    step_bound: usize,
) -> Result<Trace, ScenarioError> {
    let wrap = |source: SpecError| ScenarioError {
        kind: spec.kind().name(),
        source,
    };
    let built = spec.build().map_err(wrap)?;
    qpn::run_bounded(&built.net, &built.marking, scheduler, step_bound)
        .map_err(|e| wrap(SpecError::Engine(e)))
}
