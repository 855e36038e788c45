//! Quantum Petri net engine, buffer net constructors, a small statevector
//! simulator and the Q-S-R flip-flop circuits built on it.

pub mod buffers;
pub mod qasm;
pub mod qpn;
pub mod qsr;
pub mod scenario;
pub mod statevector;
