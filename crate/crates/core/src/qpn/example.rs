use super::{EngineError, Marking, Place, PlaceKind, QPNet, QToken, Transition, TransitionRole};
use crate::statevector::{GateOp, StateVector};

/// Three places and one CNOT transition. `P1` holds `a:|1>, b:|1>, c:|+>`
/// and `P2` holds `d:|0>, e:|1>`. `T1` takes one token from each, applies
/// CX with the `P1` token as control and puts both tokens in `P3`.
pub fn cnot_example() -> Result<(QPNet, Marking), EngineError> {
    let places = vec![
        Place::new("P1", PlaceKind::Input),
        Place::new("P2", PlaceKind::Input),
        Place::new("P3", PlaceKind::Output),
    ];
    // payloads are concatenated in consumption order: x on qubit 1, y on qubit 0
    let t1 = Transition::new("T1", TransitionRole::Input)
        .input("P1", "x")
        .input("P2", "y")
        .output("P3", "z")
        .route("x", "z")
        .route("y", "z")
        .gate(vec![GateOp::cx(1, 0)]);
    let net = QPNet::new(places, vec![t1])?;
    let one = || StateVector::from_label("1").expect("valid label");
    let zero = StateVector::from_label("0").expect("valid label");
    let marking = Marking::new(
        &net,
        vec![
            (
                "P1".into(),
                vec![
                    QToken::data("a", one()),
                    QToken::data("b", one()),
                    QToken::data("c", StateVector::plus()),
                ],
            ),
            (
                "P2".into(),
                vec![QToken::data("d", zero), QToken::data("e", one())],
            ),
        ],
    )?;
    Ok((net, marking))
}
