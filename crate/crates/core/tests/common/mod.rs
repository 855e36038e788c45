#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;

use qpn_core::buffers::{BufferParams, BufferSpec};
use qpn_core::statevector::StateVector;

pub fn arb_payload() -> impl Strategy<Value = StateVector> {
    (1usize..=2).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
            .prop_filter("non-zero", |v| {
                v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
            })
            .prop_map(|v| {
                let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                StateVector::from_amplitudes(
                    v.iter()
                        .map(|(a, b)| Complex64::new(a / norm, b / norm))
                        .collect(),
                )
                .unwrap()
            })
    })
}

fn program(m: usize, choices: usize) -> impl Strategy<Value = Option<Vec<usize>>> {
    prop::option::of(prop::collection::vec(0..choices, m))
}

pub fn arb_params() -> impl Strategy<Value = (BufferParams, Option<Vec<usize>>, Option<Vec<usize>>)>
{
    let siso = (0usize..=6)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_map(|(n, m)| (BufferParams::Siso { n, m }, None, None));
    let simo = (0usize..=6, 2usize..=4)
        .prop_flat_map(|(n, k)| (Just(n), 0..=n, Just(k)))
        .prop_flat_map(|(n, m, k)| {
            (
                Just(BufferParams::Simo { n, m, k }),
                program(m, k),
                Just(None),
            )
        });
    let miso =
        (prop::collection::vec(0usize..=3, 2..=3), 0usize..=5).prop_flat_map(|(inputs, m)| {
            let k = inputs.len();
            (
                Just(BufferParams::Miso { inputs, m }),
                program(m, k),
                Just(None),
            )
        });
    let mimo = (
        prop::collection::vec(0usize..=3, 2..=3),
        2usize..=3,
        0usize..=4,
    )
        .prop_flat_map(|(inputs, outputs, m)| {
            let k = inputs.len();
            (
                Just(BufferParams::Mimo { inputs, outputs, m }),
                program(m, k),
                program(m, outputs),
            )
        });
    let priority =
        (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3).prop_map(|(low, high, m_low, m_high)| {
            (
                BufferParams::Priority {
                    low,
                    high,
                    m_low,
                    m_high,
                },
                None,
                None,
            )
        });
    prop_oneof![siso, simo, miso, mimo, priority]
}

pub fn data_token_count(params: &BufferParams) -> usize {
    match params {
        BufferParams::Siso { n, .. } | BufferParams::Simo { n, .. } => *n,
        BufferParams::Miso { inputs, .. } | BufferParams::Mimo { inputs, .. } => {
            inputs.iter().sum()
        }
        BufferParams::Priority { low, high, .. } => low + high,
    }
}

/// A random valid buffer instance with random data payloads.
pub fn arb_spec() -> impl Strategy<Value = BufferSpec> {
    arb_params().prop_flat_map(|(params, addresses, output_addresses)| {
        let n = data_token_count(&params);
        prop::collection::vec(arb_payload(), n).prop_map(move |payloads| {
            let mut spec = BufferSpec::new(params.clone());
            spec.addresses = addresses.clone();
            spec.output_addresses = output_addresses.clone();
            for (i, p) in payloads.into_iter().enumerate() {
                spec.payloads.insert(format!("d{}", i + 1), p);
            }
            spec
        })
    })
}
