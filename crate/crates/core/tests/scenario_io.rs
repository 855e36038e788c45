mod common;

use proptest::prelude::*;

use qpn_core::buffers::{run_scenario, BufferParams, BufferSpec};
use qpn_core::scenario::{
    emit_marking_table, emit_scenario, emit_trace, emit_trace_doc, marking_table, parse_scenario,
    parse_trace, verify_replay, KindDoc, PayloadDoc, ScenarioDoc, ScenarioIoError, SchedulerDoc,
    TraceDoc,
};

fn doc_from(params: &BufferParams) -> ScenarioDoc {
    match params.clone() {
        BufferParams::Siso { n, m } => ScenarioDoc {
            n: Some(n),
            m: Some(m),
            ..ScenarioDoc::new(KindDoc::Siso)
        },
        BufferParams::Simo { n, m, k } => ScenarioDoc {
            n: Some(n),
            m: Some(m),
            k: Some(k),
            ..ScenarioDoc::new(KindDoc::Simo)
        },
        BufferParams::Miso { inputs, m } => ScenarioDoc {
            inputs: Some(inputs),
            m: Some(m),
            ..ScenarioDoc::new(KindDoc::Miso)
        },
        BufferParams::Mimo { inputs, outputs, m } => ScenarioDoc {
            inputs: Some(inputs),
            outputs: Some(outputs),
            m: Some(m),
            ..ScenarioDoc::new(KindDoc::Mimo)
        },
        BufferParams::Priority {
            low,
            high,
            m_low,
            m_high,
        } => ScenarioDoc {
            low: Some(low),
            high: Some(high),
            m_low: Some(m_low),
            m_high: Some(m_high),
            ..ScenarioDoc::new(KindDoc::Priority)
        },
    }
}

fn arb_payload_doc() -> impl Strategy<Value = PayloadDoc> {
    prop_oneof![
        "[01]{1,3}".prop_map(PayloadDoc::Label),
        common::arb_payload().prop_map(|s| PayloadDoc::Amplitudes(
            s.amplitudes().iter().map(|c| [c.re, c.im]).collect()
        )),
    ]
}

fn arb_scheduler() -> impl Strategy<Value = SchedulerDoc> {
    prop_oneof![
        Just(SchedulerDoc::AddressDriven),
        Just(SchedulerDoc::EagerOutput),
        Just(SchedulerDoc::Random),
    ]
}

fn arb_doc() -> impl Strategy<Value = ScenarioDoc> {
    common::arb_params().prop_flat_map(|(params, addresses, output_addresses)| {
        let n = common::data_token_count(&params);
        (
            prop::collection::vec(prop::option::of(arb_payload_doc()), n),
            arb_scheduler(),
            any::<u64>(),
            any::<bool>(),
        )
            .prop_map(move |(payloads, scheduler, seed, enumerate)| {
                let mut doc = doc_from(&params);
                doc.addresses = addresses.clone();
                doc.output_addresses = output_addresses.clone();
                for (i, p) in payloads.into_iter().enumerate() {
                    if let Some(p) = p {
                        doc.payloads.insert(format!("d{}", i + 1), p);
                    }
                }
                doc.scheduler = scheduler;
                doc.seed = seed;
                doc.enumerate = enumerate;
                doc
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scenario_round_trip(doc in arb_doc()) {
        let text = emit_scenario(&doc);
        prop_assert_eq!(parse_scenario(&text).unwrap(), doc);
    }

    #[test]
    fn trace_round_trip_and_replay(doc in arb_doc()) {
        let spec = doc.to_spec().unwrap();
        let built = spec.build().unwrap();
        let trace = run_scenario(&spec, &doc.scheduler()).unwrap();
        let text = emit_trace(&trace);
        let parsed = parse_trace(&text).unwrap();
        prop_assert_eq!(&parsed, &TraceDoc::from_trace(&trace));
        prop_assert_eq!(emit_trace_doc(&parsed), text);
        prop_assert_eq!(parsed.to_trace(&built.net).unwrap(), trace.clone());
        prop_assert_eq!(verify_replay(&built.net, &parsed).unwrap(), trace.final_marking.clone());
    }

    #[test]
    fn table_rows_conserve_tokens(spec in common::arb_spec(), seed in any::<u64>()) {
        let trace = run_scenario(&spec, &qpn_core::qpn::Scheduler::Random(seed)).unwrap();
        let rows = marking_table(&trace);
        prop_assert_eq!(rows.len(), trace.events.len() + 1);
        let total = trace.initial.total_tokens();
        for row in rows {
            prop_assert_eq!(row.iter().sum::<usize>(), total);
        }
    }
}

#[test]
fn siso_document_with_two_qubit_payload() {
    let doc = parse_scenario(
        r#"{"kind": "siso", "n": 3, "m": 2, "payloads": {"d1": "10", "d2": "1", "d3": "1"}}"#,
    )
    .unwrap();
    let trace = run_scenario(&doc.to_spec().unwrap(), &doc.scheduler()).unwrap();
    let parsed = parse_trace(&emit_trace(&trace)).unwrap();
    assert_eq!(parsed.events.len(), 2);
    let p_o = parsed
        .final_marking
        .places
        .iter()
        .find(|p| p.place == "P_O")
        .unwrap();
    assert_eq!(
        p_o.entries,
        [vec!["d1".to_string()], vec!["d2".to_string()]]
    );
}

#[test]
fn out_of_range_address_is_located() {
    let err = parse_scenario(r#"{"kind": "simo", "n": 4, "m": 3, "k": 2, "addresses": [0, 0, 3]}"#)
        .unwrap_err();
    match err {
        ScenarioIoError::Field { field, .. } => assert_eq!(field, "addresses[2]"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bad_payload_is_located() {
    let err = parse_scenario(
        r#"{"kind": "siso", "n": 1, "m": 1, "payloads": {"d1": [[1.0, 0.0], [1.0, 0.0]]}}"#,
    )
    .unwrap_err();
    assert!(
        matches!(err, ScenarioIoError::Field { ref field, .. } if field == "payloads.d1"),
        "{err:?}"
    );
}

#[test]
fn type_errors_report_a_line() {
    let err =
        parse_scenario("{\n  \"kind\": \"siso\",\n  \"n\": \"three\",\n  \"m\": 1\n}").unwrap_err();
    assert!(
        matches!(err, ScenarioIoError::Syntax { line: 3, .. }),
        "{err:?}"
    );
}

#[test]
fn identical_runs_emit_identical_bytes() {
    let spec = BufferSpec::mimo(vec![2, 2], 2, 3);
    let a = emit_trace(&run_scenario(&spec, &qpn_core::qpn::Scheduler::Random(9)).unwrap());
    let b = emit_trace(&run_scenario(&spec, &qpn_core::qpn::Scheduler::Random(9)).unwrap());
    assert_eq!(a, b);
}

#[test]
fn simo_table_final_row() {
    let spec = BufferSpec::simo(4, 3, 2).with_addresses(vec![1, 0, 1]);
    let trace = run_scenario(&spec, &qpn_core::qpn::Scheduler::AddressDriven).unwrap();
    assert_eq!(marking_table(&trace).last().unwrap(), &[1, 0, 3, 1, 2]);
    let text = emit_marking_table(&trace);
    assert_eq!(
        text.lines()
            .next()
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["t", "P_I", "P_A", "P_A1", "P_O1", "P_O2"]
    );
}

#[test]
fn replay_detects_tampering() {
    let spec = BufferSpec::siso(3, 2);
    let built = spec.build().unwrap();
    let trace = run_scenario(&spec, &qpn_core::qpn::Scheduler::AddressDriven).unwrap();
    let mut doc = TraceDoc::from_trace(&trace);
    doc.final_marking.places[0].entries.clear();
    doc.final_marking.places[3].entries.push(vec!["d3".into()]);
    assert!(verify_replay(&built.net, &doc).is_err());
}
