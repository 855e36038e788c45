//! Quantum S-R flip-flop: reference truth table, the two circuit variants,
//! register composition and the conformance report.
//!
//! Qubit roles of a single flip-flop: q0 = S, q1 = R, q2 = condition flag,
//! q3 = Q', q4 = Q, q5 = |0> source, q6 = |1> source (set by the leading X).
//! Registers keep S and R on q0/q1 and give each lane five consecutive
//! qubits in the order flag, Q', Q, |0>, |1>, so lane 0 coincides with the
//! single flip-flop layout.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::statevector::{Circuit, GateOp, StateVector};

pub const S: usize = 0;
pub const R: usize = 1;
const LANE_WIDTH: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsrError {
    #[error("a register needs at least one flip-flop")]
    EmptyRegister,
    #[error("{lanes} lane values given for a {width}-lane register")]
    LaneCount { lanes: usize, width: usize },
    #[error("final state is not a single basis state")]
    NotBasis,
}

/// Qubit indices of one flip-flop lane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lane {
    pub flag: usize,
    pub q_prime: usize,
    pub q: usize,
    pub zero: usize,
    pub one: usize,
}

impl Lane {
    pub fn new(index: usize) -> Self {
        let base = 2 + LANE_WIDTH * index;
        Self {
            flag: base,
            q_prime: base + 1,
            q: base + 2,
            zero: base + 3,
            one: base + 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QsrInputs {
    pub s: bool,
    pub r: bool,
    /// Present state; Q' is always its complement.
    pub q: bool,
}

impl QsrInputs {
    pub fn new(s: bool, r: bool, q: bool) -> Self {
        Self { s, r, q }
    }

    pub fn is_defined(&self) -> bool {
        !(self.s && self.r)
    }

    /// Qubits that an X-gate preparation must flip from |0...0>.
    pub fn init_x_gates(&self) -> Vec<usize> {
        let lane = Lane::new(0);
        let mut gates = Vec::new();
        if self.s {
            gates.push(S);
        }
        if self.r {
            gates.push(R);
        }
        if self.q {
            gates.push(lane.q);
        } else {
            gates.push(lane.q_prime);
        }
        gates.sort_unstable();
        gates
    }
}

impl fmt::Display for QsrInputs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S={} R={} Q={} Q'={}",
            self.s as u8, self.r as u8, self.q as u8, !self.q as u8
        )
    }
}

/// Truth-table row order: hold, set, reset, then the two forbidden rows.
pub const TABLE_ROWS: [QsrInputs; 8] = [
    QsrInputs {
        s: false,
        r: false,
        q: false,
    },
    QsrInputs {
        s: false,
        r: false,
        q: true,
    },
    QsrInputs {
        s: true,
        r: false,
        q: false,
    },
    QsrInputs {
        s: true,
        r: false,
        q: true,
    },
    QsrInputs {
        s: false,
        r: true,
        q: false,
    },
    QsrInputs {
        s: false,
        r: true,
        q: true,
    },
    QsrInputs {
        s: true,
        r: true,
        q: false,
    },
    QsrInputs {
        s: true,
        r: true,
        q: true,
    },
];

/// Next-state values. `None` marks the undefined S=R=1 outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsrOutcome {
    pub q_next: Option<bool>,
    pub q_prime_next: Option<bool>,
    /// Measured bit per qubit index; empty for the reference model.
    pub readout: BTreeMap<usize, bool>,
}

impl QsrOutcome {
    pub fn is_undefined(&self) -> bool {
        self.q_next.is_none()
    }
}

pub fn fmt_line(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "1",
        Some(false) => "0",
        None => "Undefined",
    }
}

pub fn reference_next_state(inputs: QsrInputs) -> QsrOutcome {
    let q_next = match (inputs.s, inputs.r) {
        (false, false) => Some(inputs.q),
        (true, false) => Some(true),
        (false, true) => Some(false),
        (true, true) => None,
    };
    QsrOutcome {
        q_next,
        q_prime_next: q_next.map(|q| !q),
        readout: BTreeMap::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CircuitVariant {
    /// The reference gate sequence, unchanged.
    Verbatim,
    /// Flag compute, swaps, flag uncompute per condition; no CX pre-flips.
    Normalized,
}

impl CircuitVariant {
    pub fn name(self) -> &'static str {
        match self {
            CircuitVariant::Verbatim => "verbatim",
            CircuitVariant::Normalized => "normalized",
        }
    }
}

impl std::str::FromStr for CircuitVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(CircuitVariant::Verbatim),
            "normalized" => Ok(CircuitVariant::Normalized),
            other => Err(format!(
                "unknown variant {other:?} (expected verbatim or normalized)"
            )),
        }
    }
}

fn lane_ops(variant: CircuitVariant, lane: Lane) -> Vec<GateOp> {
    let Lane {
        flag,
        q_prime,
        q,
        zero,
        one,
    } = lane;
    match variant {
        CircuitVariant::Verbatim => vec![
            GateOp::x(one),
            GateOp::x(R),
            GateOp::x(S),
            GateOp::cx(S, q_prime),
            GateOp::cx(R, q),
            GateOp::x(R),
            GateOp::ccx(S, R, flag),
            GateOp::cswap(flag, q_prime, one),
            GateOp::x(R),
            GateOp::x(S),
            GateOp::cswap(flag, q, zero),
            GateOp::ccx(S, R, flag),
            GateOp::cswap(flag, q, one),
            GateOp::cswap(flag, q_prime, zero),
        ],
        CircuitVariant::Normalized => {
            // reset: flag = !S & R
            let reset_flag = [GateOp::x(S), GateOp::ccx(S, R, flag), GateOp::x(S)];
            // set: flag = S & !R
            let set_flag = [GateOp::x(R), GateOp::ccx(S, R, flag), GateOp::x(R)];
            let mut ops = vec![GateOp::x(one)];
            ops.extend(reset_flag.iter().cloned());
            ops.push(GateOp::cswap(flag, q_prime, one));
            ops.push(GateOp::cswap(flag, q, zero));
            ops.extend(reset_flag.iter().cloned());
            ops.extend(set_flag.iter().cloned());
            ops.push(GateOp::cswap(flag, q, one));
            ops.push(GateOp::cswap(flag, q_prime, zero));
            ops.extend(set_flag.iter().cloned());
            ops
        }
    }
}

/// Seven-qubit flip-flop measuring Q' into c0 and Q into c1.
pub fn build_qsr_circuit(variant: CircuitVariant) -> Circuit {
    let lane = Lane::new(0);
    Circuit::new(
        2 + LANE_WIDTH,
        lane_ops(variant, lane),
        vec![(lane.q_prime, 0), (lane.q, 1)],
    )
    .expect("flip-flop layout is valid")
}

/// `u` normalized flip-flops sharing the S and R lines. Lane `i` measures
/// Q' into `c[2i]` and Q into `c[2i+1]`.
pub fn build_register(u: usize) -> Result<Circuit, QsrError> {
    build_register_with(CircuitVariant::Normalized, u)
}

/// Lanes run one after another on the shared lines. The verbatim body ends
/// with R complemented, so its lanes after the first see the opposite R.
pub fn build_register_with(variant: CircuitVariant, u: usize) -> Result<Circuit, QsrError> {
    if u == 0 {
        return Err(QsrError::EmptyRegister);
    }
    let mut ops = Vec::new();
    let mut measured = Vec::new();
    for i in 0..u {
        let lane = Lane::new(i);
        ops.extend(lane_ops(variant, lane));
        measured.push((lane.q_prime, 2 * i));
        measured.push((lane.q, 2 * i + 1));
    }
    Ok(Circuit::new(2 + LANE_WIDTH * u, ops, measured).expect("register layout is valid"))
}

/// Runs the basis-state circuit and returns the final basis index.
fn run_basis(circuit: &Circuit, init: &[usize]) -> Result<usize, QsrError> {
    let mut index = 0usize;
    for &q in init {
        index |= 1 << q;
    }
    let state = StateVector::basis_index(circuit.num_qubits(), index)
        .expect("circuit width fits a dense state");
    let out = state
        .apply_all(circuit.ops())
        .expect("circuit ops are validated at construction");
    out.as_basis_index().ok_or(QsrError::NotBasis)
}

pub fn simulate_qsr(variant: CircuitVariant, inputs: QsrInputs) -> QsrOutcome {
    let circuit = build_qsr_circuit(variant);
    let index = run_basis(&circuit, &inputs.init_x_gates())
        .expect("permutation circuits map basis states to basis states");
    let lane = Lane::new(0);
    let bit = |q: usize| (index >> q) & 1 == 1;
    QsrOutcome {
        q_next: Some(bit(lane.q)),
        q_prime_next: Some(bit(lane.q_prime)),
        readout: BTreeMap::from([(lane.q_prime, bit(lane.q_prime)), (lane.q, bit(lane.q))]),
    }
}

/// Simulates a register with broadcast `s`/`r` and per-lane present states.
/// Returns `(Q, Q')` per lane.
pub fn simulate_register(
    variant: CircuitVariant,
    s: bool,
    r: bool,
    lanes: &[bool],
) -> Result<Vec<(bool, bool)>, QsrError> {
    let circuit = build_register_with(variant, lanes.len())?;
    let mut init = Vec::new();
    if s {
        init.push(S);
    }
    if r {
        init.push(R);
    }
    for (i, &q) in lanes.iter().enumerate() {
        let lane = Lane::new(i);
        init.push(if q { lane.q } else { lane.q_prime });
    }
    let index = run_basis(&circuit, &init)?;
    let bit = |q: usize| (index >> q) & 1 == 1;
    Ok((0..lanes.len())
        .map(|i| {
            let lane = Lane::new(i);
            (bit(lane.q), bit(lane.q_prime))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceRow {
    pub inputs: QsrInputs,
    pub reference: QsrOutcome,
    pub verbatim: QsrOutcome,
    pub normalized: QsrOutcome,
    pub verbatim_q_match: bool,
    pub verbatim_q_prime_match: bool,
    pub normalized_q_match: bool,
    pub normalized_q_prime_match: bool,
}

/// Compares both variants against the reference model on the six defined
/// input rows. Verbatim mismatches are recorded, not corrected.
pub fn conformance_report() -> Vec<ConformanceRow> {
    TABLE_ROWS
        .iter()
        .filter(|i| i.is_defined())
        .map(|&inputs| {
            let reference = reference_next_state(inputs);
            let verbatim = simulate_qsr(CircuitVariant::Verbatim, inputs);
            let normalized = simulate_qsr(CircuitVariant::Normalized, inputs);
            ConformanceRow {
                inputs,
                verbatim_q_match: verbatim.q_next == reference.q_next,
                verbatim_q_prime_match: verbatim.q_prime_next == reference.q_prime_next,
                normalized_q_match: normalized.q_next == reference.q_next,
                normalized_q_prime_match: normalized.q_prime_next == reference.q_prime_next,
                reference,
                verbatim,
                normalized,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GateKind;

    #[test]
    fn reference_rows() {
        let row = |s, r, q| reference_next_state(QsrInputs::new(s, r, q));
        assert_eq!(row(true, false, false).q_next, Some(true));
        assert_eq!(row(false, true, true).q_next, Some(false));
        assert!(row(true, true, false).is_undefined());
        assert!(row(true, true, false).q_prime_next.is_none());
    }

    #[test]
    fn verbatim_shape() {
        let c = build_qsr_circuit(CircuitVariant::Verbatim);
        assert_eq!(c.num_qubits(), 7);
        assert_eq!(c.ops().len(), 14);
        assert_eq!(c.ops()[3], GateOp::cx(0, 3));
        assert_eq!(c.count(GateKind::CX), 2);
        assert_eq!(c.count(GateKind::CSwap), 4);
        assert_eq!(c.measured(), &[(3, 0), (4, 1)]);
    }

    #[test]
    fn normalized_shape() {
        let c = build_qsr_circuit(CircuitVariant::Normalized);
        assert_eq!(c.count(GateKind::CX), 0);
        assert_eq!(c.count(GateKind::CSwap), 4);
        assert_eq!(c.count(GateKind::CCX), 4);
    }

    #[test]
    fn simulate_examples() {
        let n = simulate_qsr(
            CircuitVariant::Normalized,
            QsrInputs::new(true, false, false),
        );
        assert_eq!((n.readout[&4], n.readout[&3]), (true, false));
        let n = simulate_qsr(
            CircuitVariant::Normalized,
            QsrInputs::new(false, false, true),
        );
        assert_eq!((n.readout[&4], n.readout[&3]), (true, false));
        let v = simulate_qsr(CircuitVariant::Verbatim, QsrInputs::new(false, true, false));
        assert!(!v.readout[&4]);
    }

    #[test]
    fn listing_initialization_is_x_q1_x_q3() {
        assert_eq!(
            QsrInputs::new(false, true, false).init_x_gates(),
            vec![1, 3]
        );
    }

    #[test]
    fn register_shapes() {
        assert!(matches!(build_register(0), Err(QsrError::EmptyRegister)));
        let one = build_register(1).unwrap();
        assert_eq!(one, build_qsr_circuit(CircuitVariant::Normalized));
        let three = build_register(3).unwrap();
        assert_eq!(three.num_qubits(), 17);
        assert_eq!(three.ops().len(), 3 * one.ops().len());
    }

    #[test]
    fn register_set_reaches_every_lane() {
        let out =
            simulate_register(CircuitVariant::Normalized, true, false, &[false, true]).unwrap();
        assert_eq!(out, vec![(true, false), (true, false)]);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "verbatim".parse::<CircuitVariant>(),
            Ok(CircuitVariant::Verbatim)
        );
        assert!("fixed".parse::<CircuitVariant>().is_err());
    }
}
