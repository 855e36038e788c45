mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use qpn_core::buffers::{run_scenario, BufferSpec, SpecError};
use qpn_core::qpn::{
    enumerate_final_markings, explore, run, Marking, PlaceKind, QPNet, Scheduler, TokenKind,
};
use qpn_core::statevector::StateVector;

fn ids(m: &Marking, place: &str) -> Vec<String> {
    m.tokens_in(place).into_iter().map(|t| t.0).collect()
}

fn order(trace: &qpn_core::qpn::Trace) -> Vec<String> {
    trace.firing_order().into_iter().map(|t| t.0).collect()
}

fn supply_places(net: &QPNet) -> Vec<String> {
    net.places()
        .iter()
        .filter(|p| p.kind == PlaceKind::Ancillary)
        .filter(|p| {
            net.transitions()
                .iter()
                .any(|t| t.input_places().any(|q| q == &p.id))
        })
        .map(|p| p.id.to_string())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Each supply place is drawn on at most as many times as it initially
    /// held tokens, whatever the schedule.
    #[test]
    fn supplies_bound_consumption(spec in common::arb_spec(), seed in any::<u64>()) {
        let b = spec.build().unwrap();
        let trace = run(&b.net, &b.marking, &Scheduler::Random(seed)).unwrap();
        for place in supply_places(&b.net) {
            let drawn = trace
                .events
                .iter()
                .flat_map(|e| &e.consumed)
                .filter(|s| s.place == place.as_str())
                .count();
            prop_assert!(drawn <= b.marking.entry_count(&place.as_str().into()));
        }
    }

    #[test]
    fn data_payloads_arrive_unchanged(spec in common::arb_spec(), seed in any::<u64>()) {
        let b = spec.build().unwrap();
        let trace = run(&b.net, &b.marking, &Scheduler::Random(seed)).unwrap();
        for token in b.marking.tokens().filter(|t| t.kind == TokenKind::Data) {
            let end = trace.final_marking.token(&token.id).unwrap();
            prop_assert!(end.payload.approx_eq(&token.payload, 1e-12));
        }
    }

    /// No low-priority token reaches P_O while a high-priority pair waits,
    /// checked on every state reachable under any schedule.
    #[test]
    fn priority_dominates(low in 0usize..=3, high in 0usize..=3, m_low in 0usize..=3, m_high in 0usize..=3) {
        let b = BufferSpec::priority(low, high, m_low, m_high).build().unwrap();
        let mut violations = 0;
        explore(&b.net, &b.marking, 100_000, |m, t| {
            if t == "T3" && m.entry_count(&"P_DA2".into()) > 0 {
                violations += 1;
            }
        })
        .unwrap();
        prop_assert_eq!(violations, 0);
    }
}

#[test]
fn siso_scenario_run() {
    let spec = BufferSpec::siso(3, 2)
        .with_payload("d1", StateVector::from_label("10").unwrap())
        .with_payload("d2", StateVector::from_label("1").unwrap())
        .with_payload("d3", StateVector::from_label("1").unwrap());
    let trace = run_scenario(&spec, &Scheduler::AddressDriven).unwrap();
    assert_eq!(trace.events.len(), 2);
    let m = &trace.final_marking;
    assert_eq!(ids(m, "P_O"), ["d1", "d2"]);
    assert_eq!(ids(m, "P_A1"), ["z1", "z2"]);
    assert_eq!(ids(m, "P_I"), ["d3"]);
    assert_eq!(m.token(&"d1".into()).unwrap().payload.num_qubits(), 2);
}

#[test]
fn simo_scenario_run() {
    let spec = BufferSpec::simo(4, 3, 2).with_addresses(vec![1, 0, 1]);
    let trace = run_scenario(&spec, &Scheduler::AddressDriven).unwrap();
    assert_eq!(order(&trace), ["T2", "T1", "T2"]);
    let m = &trace.final_marking;
    assert_eq!(ids(m, "P_O2"), ["d1", "d3"]);
    assert_eq!(ids(m, "P_O1"), ["d2"]);
    assert_eq!(ids(m, "P_I"), ["d4"]);
}

#[test]
fn simo_enumerates_four_splits() {
    let b = BufferSpec::simo(4, 3, 2).build().unwrap();
    let e = enumerate_final_markings(&b.net, &b.marking, 1_000_000).unwrap();
    let got: BTreeSet<Vec<usize>> = e
        .outcomes
        .keys()
        .map(|s| s.project(&["P_O1", "P_O2"]))
        .collect();
    let want: BTreeSet<Vec<usize>> = [[3, 0], [2, 1], [1, 2], [0, 3]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    assert_eq!(got, want);
    assert_eq!(e.run_lengths, BTreeSet::from([3]));
}

#[test]
fn mimo_enumerates_six_patterns_in_2m_steps() {
    let b = BufferSpec::mimo(vec![2, 1], 2, 2).build().unwrap();
    let e = enumerate_final_markings(&b.net, &b.marking, 1_000_000).unwrap();
    let got: BTreeSet<Vec<usize>> = e
        .outcomes
        .keys()
        .map(|s| s.project(&["P_I1", "P_I2", "P_O1", "P_O2"]))
        .collect();
    let want: BTreeSet<Vec<usize>> = [
        [0, 1, 2, 0],
        [0, 1, 1, 1],
        [0, 1, 0, 2],
        [1, 0, 2, 0],
        [1, 0, 1, 1],
        [1, 0, 0, 2],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    assert_eq!(got, want);
    assert_eq!(e.run_lengths, BTreeSet::from([4]));
    // more sequences than signatures: reorderings collapse
    assert!(e.maximal_sequences > 6);
}

#[test]
fn mimo_reorderings_share_a_signature() {
    let b = BufferSpec::mimo(vec![2, 1], 2, 2).build().unwrap();
    let a = run(
        &b.net,
        &b.marking,
        &Scheduler::scripted(["T1", "T3", "T1", "T4"]),
    )
    .unwrap();
    let c = run(
        &b.net,
        &b.marking,
        &Scheduler::scripted(["T1", "T4", "T1", "T3"]),
    )
    .unwrap();
    assert_eq!(a.final_marking.counts(), c.final_marking.counts());
    assert_ne!(a.final_marking, c.final_marking);
}

#[test]
fn miso_eager_output_forwards_in_address_order() {
    let spec = BufferSpec::miso(vec![3, 2], 3).with_addresses(vec![0, 1, 1]);
    let trace = run_scenario(&spec, &Scheduler::EagerOutputThenScript).unwrap();
    assert_eq!(order(&trace), ["T1", "T3", "T2", "T3", "T2", "T3"]);
    assert_eq!(ids(&trace.final_marking, "P_O"), ["d1", "d4", "d5"]);
}

#[test]
fn miso_input_fire_counts() {
    let b = BufferSpec::miso(vec![2, 1], 2).build().unwrap();
    let mut t1_max = 0;
    let mut t2_max = 0;
    let e = enumerate_final_markings(&b.net, &b.marking, 100_000).unwrap();
    for witness in e.outcomes.values() {
        t1_max = t1_max.max(witness.iter().filter(|t| *t == "T1").count());
        t2_max = t2_max.max(witness.iter().filter(|t| *t == "T2").count());
    }
    assert_eq!((t1_max, t2_max), (2, 1));
}

#[test]
fn priority_scripted_run() {
    let spec = BufferSpec::priority(1, 2, 2, 2);
    let trace = run_scenario(
        &spec,
        &Scheduler::scripted(["T2", "T4", "T2", "T4", "T1", "T3"]),
    )
    .unwrap();
    let m = &trace.final_marking;
    assert_eq!(ids(m, "P_O"), ["d2", "d3", "d1"]);
    assert_eq!(ids(m, "P_A"), ["w2"]);
    assert_eq!(ids(m, "P_A2"), ["z1", "z2", "w1"]);
}

#[test]
fn zero_capacity_runs_are_empty() {
    for spec in [
        BufferSpec::siso(3, 0),
        BufferSpec::simo(3, 0, 2),
        BufferSpec::miso(vec![1, 2], 0),
        BufferSpec::mimo(vec![1, 2], 2, 0),
        BufferSpec::priority(2, 2, 0, 0),
    ] {
        let trace = run_scenario(&spec, &Scheduler::AddressDriven).unwrap();
        assert!(trace.events.is_empty(), "{:?}", spec.kind());
    }
}

#[test]
fn capacity_above_input_is_rejected() {
    assert!(matches!(
        BufferSpec::simo(2, 3, 2).build(),
        Err(SpecError::CapacityExceedsInput { m: 3, n: 2 })
    ));
}

#[test]
fn mimo_output_address_range_is_checked() {
    let err = BufferSpec::mimo(vec![1, 1], 2, 2)
        .with_output_addresses(vec![0, 2])
        .build()
        .unwrap_err();
    assert!(
        matches!(err, SpecError::AddressOutOfRange { ref field, index: 1, .. } if field == "output_addresses")
    );
}
