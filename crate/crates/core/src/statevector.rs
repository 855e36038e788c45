//! Dense statevector simulation over the small permutation gate set used by
//! the flip-flop and buffer nets.
//!
//! Qubit 0 is the least significant bit of the basis index. Bitstrings are
//! displayed most-significant-first, so `"10"` on two qubits is index 2.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used for norm checks and basis-state detection.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("label {label:?} has length {len}, expected {expected}")]
    LabelLength {
        label: String,
        len: usize,
        expected: usize,
    },
    #[error("label {0:?} contains characters other than 0 and 1")]
    LabelAlphabet(String),
    #[error("amplitude vector has length {0}, which is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("amplitude vector has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("basis index {index} does not fit in {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },
    #[error("state of {0} qubits is too large for a dense vector")]
    TooManyQubits(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("{kind} takes {expected} qubit(s), got {got}")]
    Arity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit state")]
    OutOfRange { qubit: usize, num_qubits: usize },
    #[error("{kind} applied with repeated qubit {qubit}")]
    Duplicate { kind: GateKind, qubit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit acts on {circuit} qubits but the initial state has {state}")]
    QubitCountMismatch { circuit: usize, state: usize },
    #[error("operation #{index}: {source}")]
    InvalidOp {
        index: usize,
        #[source]
        source: GateError,
    },
    #[error("measured qubit {qubit} out of range for {num_qubits} qubits")]
    MeasuredOutOfRange { qubit: usize, num_qubits: usize },
    #[error("classical bit {0} is written by more than one measurement")]
    DuplicateClbit(usize),
}

/// A normalized amplitude vector over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state from a most-significant-first label.
    pub fn basis_state(num_qubits: usize, label: &str) -> Result<Self, ConstructionError> {
        if label.len() != num_qubits {
            return Err(ConstructionError::LabelLength {
                label: label.to_string(),
                len: label.len(),
                expected: num_qubits,
            });
        }
        let index = parse_label(label)?;
        Self::basis_index(num_qubits, index)
    }

    /// Computational basis state from a label, taking the width from the label.
    pub fn from_label(label: &str) -> Result<Self, ConstructionError> {
        Self::basis_state(label.len(), label)
    }

    pub fn basis_index(num_qubits: usize, index: usize) -> Result<Self, ConstructionError> {
        if num_qubits > 30 {
            return Err(ConstructionError::TooManyQubits(num_qubits));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(ConstructionError::IndexOutOfRange { index, num_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps an explicit amplitude vector, checking length and normalization.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, ConstructionError> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(ConstructionError::NotPowerOfTwo(len));
        }
        let state = Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(ConstructionError::NotNormalized(norm));
        }
        Ok(state)
    }

    /// `(|0> + |1>)/sqrt(2)` on one qubit.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            num_qubits: 1,
            amplitudes: vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Index of the single basis state carrying the whole norm, if any.
    pub fn as_basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if (p - 1.0).abs() <= NORM_TOLERANCE {
                found = Some(i);
            } else if p > NORM_TOLERANCE {
                return None;
            }
        }
        found
    }

    pub fn as_basis_label(&self) -> Option<String> {
        self.as_basis_index()
            .map(|i| format_label(i, self.num_qubits))
    }

    /// Applies a single gate, returning the transformed state.
    pub fn apply(&self, op: &GateOp) -> Result<StateVector, GateError> {
        op.validate(self.num_qubits)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            out[op.permute(i)] = *amp;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    pub fn apply_all<'a, I>(&self, ops: I) -> Result<StateVector, GateError>
    where
        I: IntoIterator<Item = &'a GateOp>,
    {
        let mut state = self.clone();
        for op in ops {
            state = state.apply(op)?;
        }
        Ok(state)
    }

    /// Kronecker product with `self` on the high-order qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// Splits a product state into a high-order factor of `high_qubits`
    /// qubits and the low-order remainder. Returns `None` when the state is
    /// entangled across that cut.
    pub fn split(&self, high_qubits: usize) -> Option<(StateVector, StateVector)> {
        assert!(high_qubits <= self.num_qubits);
        let low_qubits = self.num_qubits - high_qubits;
        let low_dim = 1usize << low_qubits;
        let high_dim = 1usize << high_qubits;
        let at = |h: usize, l: usize| self.amplitudes[h * low_dim + l];

        let (pivot, _) = self
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))?;
        let (ph, pl) = (pivot / low_dim, pivot % low_dim);
        let pivot_amp = at(ph, pl);

        // Low factor carries the pivot's phase; high factor is phase-normalized
        // so that the pivot row is real and positive.
        let mut high: Vec<Complex64> = (0..high_dim).map(|h| at(h, pl) / pivot_amp).collect();
        let high_norm = high.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        high.iter_mut().for_each(|a| *a /= high_norm);
        let scale = high[ph];
        let low: Vec<Complex64> = (0..low_dim).map(|l| at(ph, l) / scale).collect();

        let high = StateVector {
            num_qubits: high_qubits,
            amplitudes: high,
        };
        let low = StateVector {
            num_qubits: low_qubits,
            amplitudes: low,
        };
        let rebuilt = high.tensor(&low);
        let ok = rebuilt
            .amplitudes
            .iter()
            .zip(&self.amplitudes)
            .all(|(a, b)| (a - b).norm() <= 1e-10);
        ok.then_some((high, low))
    }

    /// Basis states with non-negligible probability, in index order.
    pub fn probabilities(&self) -> Vec<(String, f64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let p = a.norm_sqr();
                (p > NORM_TOLERANCE).then(|| (format_label(i, self.num_qubits), p))
            })
            .collect()
    }

    /// True when both states agree amplitude-wise within `tol`.
    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// True when the states agree up to a global phase.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.num_qubits != other.num_qubits {
            return false;
        }
        let overlap: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        (overlap.norm() - 1.0).abs() <= tol
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = self.as_basis_label() {
            return write!(f, "|{label}>");
        }
        let terms: Vec<String> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > NORM_TOLERANCE)
            .map(|(i, a)| {
                format!(
                    "({:.4}{:+.4}i)|{}>",
                    a.re,
                    a.im,
                    format_label(i, self.num_qubits)
                )
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub(crate) fn parse_label(label: &str) -> Result<usize, ConstructionError> {
    if label.len() > 30 {
        return Err(ConstructionError::TooManyQubits(label.len()));
    }
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(ConstructionError::LabelAlphabet(label.to_string())),
    })
}

/// Most-significant-first bitstring of `index` over `width` bits.
pub fn format_label(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (index >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X,
    CX,
    CCX,
    Swap,
    CSwap,
    I,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::I => 1,
            GateKind::CX | GateKind::Swap => 2,
            GateKind::CCX | GateKind::CSwap => 3,
        }
    }

    /// Lower-case QASM mnemonic.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::CX => "cx",
            GateKind::CCX => "ccx",
            GateKind::Swap => "swap",
            GateKind::CSwap => "cswap",
            GateKind::I => "id",
        }
    }

    pub fn from_mnemonic(name: &str) -> Option<Self> {
        Some(match name {
            "x" => GateKind::X,
            "cx" | "CX" => GateKind::CX,
            "ccx" => GateKind::CCX,
            "swap" => GateKind::Swap,
            "cswap" => GateKind::CSwap,
            "id" => GateKind::I,
            _ => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// A gate with its qubit operands, controls first and targets last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self { kind, qubits }
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::CX, vec![control, target])
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Self::new(GateKind::CCX, vec![c0, c1, target])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, vec![a, b])
    }

    pub fn cswap(control: usize, a: usize, b: usize) -> Self {
        Self::new(GateKind::CSwap, vec![control, a, b])
    }

    pub fn id(q: usize) -> Self {
        Self::new(GateKind::I, vec![q])
    }

    pub fn validate(&self, num_qubits: usize) -> Result<(), GateError> {
        let expected = self.kind.arity();
        if self.qubits.len() != expected {
            return Err(GateError::Arity {
                kind: self.kind,
                expected,
                got: self.qubits.len(),
            });
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(GateError::OutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
            if self.qubits[..i].contains(&q) {
                return Err(GateError::Duplicate {
                    kind: self.kind,
                    qubit: q,
                });
            }
        }
        Ok(())
    }

    /// Image of basis index `i` under this (permutation) gate.
    fn permute(&self, i: usize) -> usize {
        let bit = |q: usize| (i >> q) & 1 == 1;
        let swapped = |a: usize, b: usize| {
            if bit(a) != bit(b) {
                i ^ (1 << a) ^ (1 << b)
            } else {
                i
            }
        };
        let q = &self.qubits;
        match self.kind {
            GateKind::I => i,
            GateKind::X => i ^ (1 << q[0]),
            GateKind::CX => {
                if bit(q[0]) {
                    i ^ (1 << q[1])
                } else {
                    i
                }
            }
            GateKind::CCX => {
                if bit(q[0]) && bit(q[1]) {
                    i ^ (1 << q[2])
                } else {
                    i
                }
            }
            GateKind::Swap => swapped(q[0], q[1]),
            GateKind::CSwap => {
                if bit(q[0]) {
                    swapped(q[1], q[2])
                } else {
                    i
                }
            }
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.qubits.iter().map(|q| format!("q{q}")).collect();
        write!(f, "{} {}", self.kind, args.join(","))
    }
}

/// An ordered gate list plus the qubit-to-classical-bit measurement map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<GateOp>,
    measured: Vec<(usize, usize)>,
}

impl Circuit {
    pub fn new(
        num_qubits: usize,
        ops: Vec<GateOp>,
        measured: Vec<(usize, usize)>,
    ) -> Result<Self, CircuitError> {
        for (index, op) in ops.iter().enumerate() {
            op.validate(num_qubits)
                .map_err(|source| CircuitError::InvalidOp { index, source })?;
        }
        for (i, &(qubit, clbit)) in measured.iter().enumerate() {
            if qubit >= num_qubits {
                return Err(CircuitError::MeasuredOutOfRange { qubit, num_qubits });
            }
            if measured[..i].iter().any(|&(_, c)| c == clbit) {
                return Err(CircuitError::DuplicateClbit(clbit));
            }
        }
        Ok(Self {
            num_qubits,
            ops,
            measured,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    /// `(qubit, classical bit)` pairs in declaration order.
    pub fn measured(&self) -> &[(usize, usize)] {
        &self.measured
    }

    /// Width of the classical register: one past the highest classical bit.
    pub fn num_clbits(&self) -> usize {
        self.measured.iter().map(|&(_, c)| c + 1).max().unwrap_or(0)
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.ops.iter().filter(|op| op.kind == kind).count()
    }

    /// Same circuit with `ops` prepended, e.g. basis-state preparation.
    pub fn with_prefix(&self, prefix: Vec<GateOp>) -> Result<Self, CircuitError> {
        let mut ops = prefix;
        ops.extend(self.ops.iter().cloned());
        Self::new(self.num_qubits, ops, self.measured.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub final_state: StateVector,
    /// Classical register value (most-significant-first) to shot count.
    pub histogram: BTreeMap<String, usize>,
}

/// Runs `circuit` on `initial`, then samples the measured qubits `shots`
/// times with a ChaCha8 generator seeded from `seed`.
///
/// Circuits without measurements sample every qubit, qubit `i` into bit `i`.
pub fn run_circuit(
    circuit: &Circuit,
    initial: &StateVector,
    shots: usize,
    seed: u64,
) -> Result<RunOutcome, CircuitError> {
    if initial.num_qubits() != circuit.num_qubits() {
        return Err(CircuitError::QubitCountMismatch {
            circuit: circuit.num_qubits(),
            state: initial.num_qubits(),
        });
    }
    let mut final_state = initial.clone();
    for (index, op) in circuit.ops().iter().enumerate() {
        final_state = final_state
            .apply(op)
            .map_err(|source| CircuitError::InvalidOp { index, source })?;
    }

    let measured: Vec<(usize, usize)> = if circuit.measured().is_empty() {
        (0..circuit.num_qubits()).map(|q| (q, q)).collect()
    } else {
        circuit.measured().to_vec()
    };
    let width = measured.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);

    let mut cumulative = Vec::with_capacity(final_state.amplitudes.len());
    let mut acc = 0.0;
    for a in &final_state.amplitudes {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    for _ in 0..shots {
        let r: f64 = rng.random::<f64>() * acc;
        let index = cumulative
            .partition_point(|&c| c <= r)
            .min(cumulative.len() - 1);
        let mut value = 0usize;
        for &(q, c) in &measured {
            if (index >> q) & 1 == 1 {
                value |= 1 << c;
            }
        }
        *histogram.entry(format_label(value, width)).or_insert(0) += 1;
    }
    Ok(RunOutcome {
        final_state,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_encoding_is_lsb_first() {
        assert_eq!(
            StateVector::basis_state(1, "0").unwrap().amplitudes(),
            &[amp(1.0), amp(0.0)]
        );
        assert_eq!(
            StateVector::basis_state(2, "10").unwrap().as_basis_index(),
            Some(2)
        );
        assert_eq!(
            StateVector::basis_state(3, "101").unwrap().as_basis_index(),
            Some(5)
        );
    }

    #[test]
    fn basis_state_rejects_bad_labels() {
        assert!(matches!(
            StateVector::basis_state(2, "1"),
            Err(ConstructionError::LabelLength { .. })
        ));
        assert!(matches!(
            StateVector::basis_state(2, "1a"),
            Err(ConstructionError::LabelAlphabet(_))
        ));
    }

    #[test]
    fn gate_examples() {
        let s = StateVector::from_label("10").unwrap();
        assert_eq!(
            s.apply(&GateOp::cx(1, 0))
                .unwrap()
                .as_basis_label()
                .unwrap(),
            "11"
        );

        let s = StateVector::from_label("011").unwrap();
        assert_eq!(
            s.apply(&GateOp::cswap(2, 1, 0))
                .unwrap()
                .as_basis_label()
                .unwrap(),
            "011"
        );

        let p = StateVector::plus();
        assert!(p.apply(&GateOp::x(0)).unwrap().approx_eq(&p, 1e-15));
    }

    #[test]
    fn cswap_with_control_on_exchanges_targets() {
        let s = StateVector::from_label("101").unwrap();
        // control q2 = 1, swap q1 (0) with q0 (1)
        assert_eq!(
            s.apply(&GateOp::cswap(2, 1, 0))
                .unwrap()
                .as_basis_label()
                .unwrap(),
            "110"
        );
    }

    #[test]
    fn invalid_ops_are_rejected() {
        let s = StateVector::from_label("00").unwrap();
        assert!(matches!(
            s.apply(&GateOp::x(2)),
            Err(GateError::OutOfRange { qubit: 2, .. })
        ));
        assert!(matches!(
            s.apply(&GateOp::cx(1, 1)),
            Err(GateError::Duplicate { .. })
        ));
        assert!(matches!(
            s.apply(&GateOp::new(GateKind::CCX, vec![0, 1])),
            Err(GateError::Arity { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let one = StateVector::from_label("1").unwrap();
        let zero = StateVector::from_label("0").unwrap();
        assert_eq!(one.tensor(&zero).as_basis_label().unwrap(), "10");

        let t = zero.tensor(&StateVector::plus());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected =
            StateVector::from_amplitudes(vec![amp(h), amp(h), amp(0.0), amp(0.0)]).unwrap();
        assert!(t.approx_eq(&expected, 1e-15));

        let ten = StateVector::from_label("10").unwrap();
        assert_eq!(ten.tensor(&zero).as_basis_label().unwrap(), "100");
    }

    #[test]
    fn split_inverts_tensor_and_detects_entanglement() {
        let a = StateVector::plus();
        let b = StateVector::from_label("10").unwrap();
        let (h, l) = a.tensor(&b).split(1).unwrap();
        assert!(h.approx_eq_up_to_phase(&a, 1e-12));
        assert!(l.approx_eq_up_to_phase(&b, 1e-12));

        let bell = StateVector::plus()
            .tensor(&StateVector::from_label("0").unwrap())
            .apply(&GateOp::cx(1, 0))
            .unwrap();
        assert!(bell.split(1).is_none());
    }

    #[test]
    fn probability_examples() {
        let p = StateVector::from_label("11").unwrap().probabilities();
        assert_eq!(p, vec![("11".to_string(), 1.0)]);
        let p = StateVector::plus().probabilities();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].0, "0");
        assert!((p[0].1 - 0.5).abs() < 1e-12 && (p[1].1 - 0.5).abs() < 1e-12);
        assert_eq!(
            StateVector::basis_state(3, "101").unwrap().probabilities(),
            vec![("101".to_string(), 1.0)]
        );
    }

    #[test]
    fn run_circuit_examples() {
        let zero = StateVector::from_label("0").unwrap();
        let empty = Circuit::new(1, vec![], vec![]).unwrap();
        let out = run_circuit(&empty, &zero, 10, 0).unwrap();
        assert_eq!(out.histogram, BTreeMap::from([("0".to_string(), 10)]));

        let flip = Circuit::new(1, vec![GateOp::x(0)], vec![(0, 0)]).unwrap();
        let out = run_circuit(&flip, &zero, 100, 7).unwrap();
        assert_eq!(out.histogram, BTreeMap::from([("1".to_string(), 100)]));
    }

    #[test]
    fn run_circuit_rejects_width_mismatch() {
        let c = Circuit::new(2, vec![], vec![]).unwrap();
        let s = StateVector::from_label("0").unwrap();
        assert!(matches!(
            run_circuit(&c, &s, 1, 0),
            Err(CircuitError::QubitCountMismatch { .. })
        ));
    }

    #[test]
    fn sampling_superposition_is_seeded() {
        let c = Circuit::new(1, vec![], vec![(0, 0)]).unwrap();
        let a = run_circuit(&c, &StateVector::plus(), 1000, 42).unwrap();
        let b = run_circuit(&c, &StateVector::plus(), 1000, 42).unwrap();
        assert_eq!(a.histogram, b.histogram);
        assert_eq!(a.histogram.len(), 2);
        let zeros = a.histogram["0"];
        assert!((400..600).contains(&zeros), "{zeros}");
    }

    #[test]
    fn circuit_rejects_duplicate_clbits() {
        assert!(matches!(
            Circuit::new(2, vec![], vec![(0, 0), (1, 0)]),
            Err(CircuitError::DuplicateClbit(0))
        ));
    }
}
