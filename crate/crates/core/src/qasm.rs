//! OpenQASM 2.0 text for the permutation gate subset.
//!
//! The emitter writes one quantum register `q` and, when anything is
//! measured, one classical register `c`. The parser accepts the same subset:
//! `OPENQASM`, `include`, a single `qreg` and `creg`, the gates
//! `x cx ccx swap cswap id`, and `measure`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::statevector::{Circuit, CircuitError, GateKind, GateOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Circuit {
        line: usize,
        #[source]
        source: CircuitError,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> QasmError {
    QasmError::Syntax {
        line,
        message: message.into(),
    }
}

/// Renders `circuit` as QASM 2.0. `initial_x_gates` are emitted as a
/// separate initialization block ahead of the gate body.
pub fn export_qasm(circuit: &Circuit, initial_x_gates: &[usize]) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    if !circuit.measured().is_empty() {
        let _ = writeln!(out, "creg c[{}];", circuit.num_clbits());
    }
    if !initial_x_gates.is_empty() {
        out.push_str("\n// Initialization\n");
        for q in initial_x_gates {
            let _ = writeln!(out, "x q[{q}];");
        }
    }
    if !circuit.ops().is_empty() {
        out.push_str("\n// Logic circuit\n");
        for op in circuit.ops() {
            let args: Vec<String> = op.qubits.iter().map(|q| format!("q[{q}]")).collect();
            let _ = writeln!(out, "{} {};", op.kind.mnemonic(), args.join(", "));
        }
    }
    if !circuit.measured().is_empty() {
        out.push('\n');
        for (q, c) in circuit.measured() {
            let _ = writeln!(out, "measure q[{q}] -> c[{c}];");
        }
    }
    out
}

/// Statement tokens of a QASM text: comments and blank lines dropped,
/// whitespace around punctuation normalized. Used to compare listings
/// token-for-token.
pub fn significant_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| match l.find("//") {
            Some(i) => &l[..i],
            None => l,
        })
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .map(|l| l.replace(" ,", ",").replace(" ;", ";"))
        .filter(|l| !l.is_empty())
        .collect()
}

/// Parses the supported QASM subset back into a [`Circuit`]. Every gate,
/// including initialization X gates, lands in the op list in source order.
pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut parser = Parser::default();
    for (stmt, line) in statements(text)? {
        parser.statement(&stmt, line)?;
    }
    parser.finish()
}

/// Splits on `;`, tracking the line where each statement starts.
fn statements(text: &str) -> Result<Vec<(String, usize)>, QasmError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = match raw.find("//") {
            Some(idx) => &raw[..idx],
            None => raw,
        };
        for ch in code.chars() {
            if ch == ';' {
                let stmt = current.trim().to_string();
                if stmt.is_empty() {
                    return Err(syntax(line_no, "empty statement"));
                }
                out.push((stmt, start));
                current.clear();
            } else {
                if current.trim().is_empty() && !ch.is_whitespace() {
                    start = line_no;
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        return Err(syntax(start, "statement not terminated by ';'"));
    }
    Ok(out)
}

#[derive(Default)]
struct Parser {
    header_seen: bool,
    qreg: Option<(String, usize)>,
    creg: Option<(String, usize)>,
    ops: Vec<GateOp>,
    measured: Vec<(usize, usize)>,
    last_line: usize,
}

impl Parser {
    fn statement(&mut self, stmt: &str, line: usize) -> Result<(), QasmError> {
        self.last_line = line;
        let (head, rest) = match stmt.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (stmt, ""),
        };
        if !self.header_seen {
            if head != "OPENQASM" {
                return Err(syntax(line, "expected 'OPENQASM 2.0' header"));
            }
            if rest != "2.0" {
                return Err(syntax(line, format!("unsupported version {rest:?}")));
            }
            self.header_seen = true;
            return Ok(());
        }
        match head {
            "OPENQASM" => Err(syntax(line, "duplicate OPENQASM header")),
            "include" => {
                if rest.len() < 2 || !rest.starts_with('"') || !rest.ends_with('"') {
                    return Err(syntax(line, "include expects a quoted file name"));
                }
                Ok(())
            }
            "qreg" | "creg" => {
                let (name, size) = register_decl(rest, line)?;
                let slot = if head == "qreg" {
                    &mut self.qreg
                } else {
                    &mut self.creg
                };
                if slot.is_some() {
                    return Err(syntax(line, format!("only one {head} is supported")));
                }
                *slot = Some((name, size));
                Ok(())
            }
            "measure" => {
                let (src, dst) = rest
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "measure expects 'q[i] -> c[j]'"))?;
                let q = self.qubit(src.trim(), line)?;
                let (cname, csize) = self
                    .creg
                    .clone()
                    .ok_or_else(|| syntax(line, "measure before creg declaration"))?;
                let c = indexed(dst.trim(), &cname, csize, line)?;
                self.measured.push((q, c));
                Ok(())
            }
            gate => {
                let kind = GateKind::from_mnemonic(gate)
                    .ok_or_else(|| syntax(line, format!("unsupported statement {gate:?}")))?;
                if rest.is_empty() {
                    return Err(syntax(line, format!("{gate} without operands")));
                }
                let qubits = rest
                    .split(',')
                    .map(|a| self.qubit(a.trim(), line))
                    .collect::<Result<Vec<_>, _>>()?;
                let op = GateOp::new(kind, qubits);
                op.validate(self.qreg.as_ref().map_or(0, |r| r.1))
                    .map_err(|source| QasmError::Circuit {
                        line,
                        source: CircuitError::InvalidOp {
                            index: self.ops.len(),
                            source,
                        },
                    })?;
                self.ops.push(op);
                Ok(())
            }
        }
    }

    fn qubit(&self, arg: &str, line: usize) -> Result<usize, QasmError> {
        let (name, size) = self
            .qreg
            .as_ref()
            .ok_or_else(|| syntax(line, "qubit used before qreg declaration"))?;
        indexed(arg, name, *size, line)
    }

    fn finish(self) -> Result<Circuit, QasmError> {
        if !self.header_seen {
            return Err(syntax(1, "missing OPENQASM header"));
        }
        let num_qubits = self.qreg.map_or(0, |r| r.1);
        Circuit::new(num_qubits, self.ops, self.measured).map_err(|source| QasmError::Circuit {
            line: self.last_line,
            source,
        })
    }
}

fn register_decl(rest: &str, line: usize) -> Result<(String, usize), QasmError> {
    let open = rest
        .find('[')
        .ok_or_else(|| syntax(line, "register declaration expects name[size]"))?;
    let name = rest[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax(line, format!("invalid register name {name:?}")));
    }
    let size = bracket_index(&rest[open..], line)?;
    Ok((name.to_string(), size))
}

fn indexed(arg: &str, reg: &str, size: usize, line: usize) -> Result<usize, QasmError> {
    let open = arg
        .find('[')
        .ok_or_else(|| syntax(line, format!("expected {reg}[index], got {arg:?}")))?;
    if arg[..open].trim() != reg {
        return Err(syntax(line, format!("unknown register in {arg:?}")));
    }
    let index = bracket_index(&arg[open..], line)?;
    if index >= size {
        return Err(syntax(
            line,
            format!("index {index} out of range for {reg}[{size}]"),
        ));
    }
    Ok(index)
}

fn bracket_index(s: &str, line: usize) -> Result<usize, QasmError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(line, format!("malformed index {s:?}")))?;
    inner
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("invalid index {inner:?}")))
}
