use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qpn_core::buffers::{run_scenario_bounded, BufferSpec};
use qpn_core::qasm::export_qasm;
use qpn_core::qpn::{self, Enumeration, Marking, QPNet, Scheduler, Trace, DEFAULT_STEP_BOUND};
use qpn_core::qsr::{
    build_qsr_circuit, conformance_report, fmt_line, reference_next_state, simulate_qsr,
    CircuitVariant, QsrInputs, TABLE_ROWS,
};
use qpn_core::scenario::{emit_marking_table, emit_trace, parse_scenario, ScenarioDoc};
use qpn_core::statevector::StateVector;

#[derive(Parser)]
#[command(
    name = "qpn",
    version,
    about = "Quantum Petri net buffers and Q-S-R flip-flop tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Q-S-R flip-flop: truth table, simulation, conformance, QASM export.
    Qsr {
        #[command(subcommand)]
        mode: QsrMode,
    },
    /// Buffer nets: run or enumerate a scenario file, or a built-in demo.
    Buffer {
        #[command(subcommand)]
        mode: BufferMode,
    },
}

#[derive(Subcommand)]
enum QsrMode {
    /// Print the 8-row reference next-state table.
    Table,
    /// Simulate one input combination.
    Simulate {
        #[arg(long, default_value = "normalized")]
        variant: CircuitVariant,
        #[arg(short = 'S', value_parser = bit, action = clap::ArgAction::Set)]
        s: bool,
        #[arg(short = 'R', value_parser = bit, action = clap::ArgAction::Set)]
        r: bool,
        #[arg(short = 'Q', value_parser = bit, action = clap::ArgAction::Set)]
        q: bool,
    },
    /// Compare both circuit variants with the reference table.
    Conformance,
    /// Write the circuit as OpenQASM 2.0.
    ExportQasm {
        #[arg(long, default_value = "verbatim")]
        variant: CircuitVariant,
        /// Initial S, R and Q; the default matches the reference listing.
        #[arg(short = 'S', value_parser = bit, action = clap::ArgAction::Set, default_value = "0")]
        s: bool,
        #[arg(short = 'R', value_parser = bit, action = clap::ArgAction::Set, default_value = "1")]
        r: bool,
        #[arg(short = 'Q', value_parser = bit, action = clap::ArgAction::Set, default_value = "0")]
        q: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BufferMode {
    /// Run a scenario and emit its trace.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Enumerate all maximal firing sequences of a scenario.
    Enumerate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in example.
    Demo {
        name: Demo,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    /// One gated CNOT transition over two input places.
    Cnot,
    /// SISO, n=3, m=2, with a two-qubit first payload.
    Siso,
    /// SIMO, n=4, m=3, k=2, address program (1, 0, 1).
    Simo,
    /// Priority buffer, one low and two high tokens, scripted.
    Priority,
    /// Every distribution SIMO n=4, m=3, k=2 can reach.
    SimoEnum,
    /// Every distribution MIMO inputs (2, 1), m=2 can reach.
    MimoEnum,
}

fn bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = step_bound().and_then(|bound| match cli.command {
        Command::Qsr { mode } => cmd_qsr(mode),
        Command::Buffer { mode } => cmd_buffer(mode, bound),
    });
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn step_bound() -> Result<usize, Failure> {
    match std::env::var("QPN_STEP_BOUND") {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "QPN_STEP_BOUND must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_STEP_BOUND),
    }
}

fn write_or_return(out: Option<&PathBuf>, text: String, summary: String) -> CmdResult {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?;
            Ok(summary)
        }
        None => Ok(text + &summary),
    }
}

fn cmd_qsr(mode: QsrMode) -> CmdResult {
    let mut out = String::new();
    match mode {
        QsrMode::Table => {
            let _ = writeln!(out, "S  R  Q  Q'  Q-Output  Q'-Output");
            for inputs in TABLE_ROWS {
                let next = reference_next_state(inputs);
                let _ = writeln!(
                    out,
                    "{}  {}  {}  {}   {:<9} {}",
                    u8::from(inputs.s),
                    u8::from(inputs.r),
                    u8::from(inputs.q),
                    u8::from(!inputs.q),
                    fmt_line(next.q_next),
                    fmt_line(next.q_prime_next)
                );
            }
            Ok(out)
        }
        QsrMode::Simulate { variant, s, r, q } => {
            let inputs = QsrInputs::new(s, r, q);
            let outcome = simulate_qsr(variant, inputs);
            let reference = reference_next_state(inputs);
            let _ = writeln!(out, "variant: {}", variant.name());
            let _ = writeln!(
                out,
                "inputs: S={} R={} Q={}",
                u8::from(s),
                u8::from(r),
                u8::from(q)
            );
            for (qubit, value) in &outcome.readout {
                let _ = writeln!(out, "q{qubit}={}", u8::from(*value));
            }
            let _ = writeln!(
                out,
                "reference: Q={} Q'={}",
                fmt_line(reference.q_next),
                fmt_line(reference.q_prime_next)
            );
            Ok(out)
        }
        QsrMode::Conformance => {
            let _ = writeln!(
                out,
                "S R Q  ref(Q Q')  verbatim(q4 q3)  match  normalized(q4 q3)  match"
            );
            let flag = |b: bool| if b { "y" } else { "n" };
            for row in conformance_report() {
                let i = row.inputs;
                let _ = writeln!(
                    out,
                    "{} {} {}  {} {}         {} {}              {}{}     {} {}                {}{}",
                    u8::from(i.s),
                    u8::from(i.r),
                    u8::from(i.q),
                    fmt_line(row.reference.q_next),
                    fmt_line(row.reference.q_prime_next),
                    fmt_line(row.verbatim.q_next),
                    fmt_line(row.verbatim.q_prime_next),
                    flag(row.verbatim_q_match),
                    flag(row.verbatim_q_prime_match),
                    fmt_line(row.normalized.q_next),
                    fmt_line(row.normalized.q_prime_next),
                    flag(row.normalized_q_match),
                    flag(row.normalized_q_prime_match),
                );
            }
            Ok(out)
        }
        QsrMode::ExportQasm {
            variant,
            s,
            r,
            q,
            out: path,
        } => {
            let circuit = build_qsr_circuit(variant);
            let text = export_qasm(&circuit, &QsrInputs::new(s, r, q).init_x_gates());
            let summary = path
                .as_ref()
                .map(|p| format!("wrote {}\n", p.display()))
                .unwrap_or_default();
            write_or_return(path.as_ref(), text, summary)
        }
    }
}

fn load_scenario(path: &PathBuf) -> Result<ScenarioDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_buffer(mode: BufferMode, bound: usize) -> CmdResult {
    match mode {
        BufferMode::Run {
            scenario,
            format,
            out,
            seed,
        } => {
            let mut doc = load_scenario(&scenario)?;
            if let Some(seed) = seed {
                doc.seed = seed;
            }
            let spec = doc.to_spec().map_err(|e| Failure::Usage(e.to_string()))?;
            if doc.enumerate {
                let text = enumeration_report(&spec, bound)?;
                return write_or_return(out.as_ref(), text, String::new());
            }
            let trace =
                run_scenario_bounded(&spec, &doc.scheduler(), bound).map_err(Failure::domain)?;
            match format {
                Format::Json => {
                    let summary = if out.is_some() {
                        emit_marking_table(&trace)
                    } else {
                        String::new()
                    };
                    write_or_return(out.as_ref(), emit_trace(&trace), summary)
                }
                Format::Table => {
                    write_or_return(out.as_ref(), emit_marking_table(&trace), String::new())
                }
            }
        }
        BufferMode::Enumerate { scenario, out } => {
            let doc = load_scenario(&scenario)?;
            let spec = doc.to_spec().map_err(|e| Failure::Usage(e.to_string()))?;
            write_or_return(
                out.as_ref(),
                enumeration_report(&spec, bound)?,
                String::new(),
            )
        }
        BufferMode::Demo { name, out } => {
            write_or_return(out.as_ref(), demo(name, bound)?, String::new())
        }
    }
}

fn enumeration_report(spec: &BufferSpec, bound: usize) -> CmdResult {
    let built = spec.build().map_err(Failure::domain)?;
    let e = qpn::enumerate_final_markings(&built.net, &built.marking, bound)
        .map_err(Failure::domain)?;
    Ok(format_enumeration(&e, None))
}

fn format_enumeration(e: &Enumeration, projection: Option<&[&str]>) -> String {
    let mut out = String::new();
    match projection {
        Some(places) => {
            let _ = writeln!(
                out,
                "signatures: {} over ({})",
                e.outcomes.len(),
                places.join(", ")
            );
        }
        None => {
            let _ = writeln!(out, "signatures: {}", e.outcomes.len());
        }
    }
    for (sig, witness) in &e.outcomes {
        let witness: Vec<String> = witness.iter().map(|t| t.to_string()).collect();
        match projection {
            Some(places) => {
                let counts: Vec<String> =
                    sig.project(places).iter().map(|c| c.to_string()).collect();
                let _ = writeln!(
                    out,
                    "({})  {sig}  witness: {}",
                    counts.join(","),
                    witness.join(" ")
                );
            }
            None => {
                let _ = writeln!(out, "{sig}  witness: {}", witness.join(" "));
            }
        }
    }
    let lengths: Vec<String> = e.run_lengths.iter().map(|l| l.to_string()).collect();
    let _ = writeln!(out, "maximal sequences: {}", e.maximal_sequences);
    let _ = writeln!(out, "sequence lengths: {}", lengths.join(","));
    let _ = writeln!(out, "distinct markings: {}", e.states);
    out
}

fn describe_places(net: &QPNet, m: &Marking) -> String {
    let mut out = String::new();
    for place in net.places() {
        let ids: Vec<String> = m
            .tokens_in(place.id.as_str())
            .iter()
            .map(|t| t.to_string())
            .collect();
        let _ = writeln!(out, "{} = [{}]", place.id, ids.join(", "));
    }
    out
}

fn describe_run(spec: &BufferSpec, scheduler: &Scheduler, bound: usize) -> CmdResult {
    let built = spec.build().map_err(Failure::domain)?;
    let trace = run_scenario_bounded(spec, scheduler, bound).map_err(Failure::domain)?;
    Ok(describe_trace(&built.net, &trace))
}

fn describe_trace(net: &QPNet, trace: &Trace) -> String {
    let mut out = String::new();
    let order: Vec<String> = trace.firing_order().iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "firings: {}", order.len());
    let _ = writeln!(out, "order: {}", order.join(" "));
    for s in &trace.skipped {
        let _ = writeln!(
            out,
            "skipped: t={} {} selects {} but {} is empty",
            s.time, s.ancillary, s.transition, s.empty_place
        );
    }
    out.push_str(&describe_places(net, &trace.final_marking));
    out.push('\n');
    out.push_str(&emit_marking_table(trace));
    out
}

fn demo(name: Demo, bound: usize) -> CmdResult {
    match name {
        Demo::Cnot => {
            let (net, marking) = qpn::cnot_example().map_err(Failure::domain)?;
            let trace = qpn::run_bounded(&net, &marking, &Scheduler::scripted(["T1"]), bound)
                .map_err(Failure::domain)?;
            let mut out = describe_trace(&net, &trace);
            out.push('\n');
            for token in trace.final_marking.tokens() {
                let _ = writeln!(out, "{}: {}", token.id, token.payload);
            }
            Ok(out)
        }
        Demo::Siso => {
            let spec = BufferSpec::siso(3, 2)
                .with_payload("d1", label("10"))
                .with_payload("d2", label("1"))
                .with_payload("d3", label("1"));
            describe_run(&spec, &Scheduler::AddressDriven, bound)
        }
        Demo::Simo => describe_run(
            &BufferSpec::simo(4, 3, 2).with_addresses(vec![1, 0, 1]),
            &Scheduler::AddressDriven,
            bound,
        ),
        Demo::Priority => describe_run(
            &BufferSpec::priority(1, 2, 2, 2),
            &Scheduler::scripted(["T2", "T4", "T2", "T4", "T1", "T3"]),
            bound,
        ),
        Demo::SimoEnum => {
            let built = BufferSpec::simo(4, 3, 2).build().map_err(Failure::domain)?;
            let e = qpn::enumerate_final_markings(&built.net, &built.marking, bound)
                .map_err(Failure::domain)?;
            Ok(format_enumeration(&e, Some(&["P_O1", "P_O2"])))
        }
        Demo::MimoEnum => {
            let built = BufferSpec::mimo(vec![2, 1], 2, 2)
                .build()
                .map_err(Failure::domain)?;
            let e = qpn::enumerate_final_markings(&built.net, &built.marking, bound)
                .map_err(Failure::domain)?;
            Ok(format_enumeration(
                &e,
                Some(&["P_I1", "P_I2", "P_O1", "P_O2"]),
            ))
        }
    }
}

fn label(s: &str) -> StateVector {
    StateVector::from_label(s).expect("demo labels are valid")
}
