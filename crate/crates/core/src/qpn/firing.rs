use super::run::{FiringEvent, StagedEntry, TokenSnapshot};
use super::{EngineError, Entry, Marking, QPNet, TokenKind, Transition, TransitionId};
use crate::statevector::StateVector;

fn guard_satisfied(t: &Transition, marking: &Marking) -> bool {
    let Some(guard) = &t.guard else {
        return true;
    };
    let Some(head) = marking.queue(&guard.place).and_then(|q| q.front()) else {
        return false;
    };
    head.tokens()
        .iter()
        .filter_map(|id| marking.token(id))
        .find(|tok| tok.kind == TokenKind::Ancillary)
        .and_then(|tok| tok.address())
        == Some(guard.value)
}

pub(crate) fn is_enabled(t: &Transition, marking: &Marking) -> bool {
    t.inputs
        .iter()
        .all(|a| marking.entry_count(&a.place) >= a.multiplicity)
        && t.inhibitors
            .iter()
            .all(|h| marking.entry_count(&h.place) == 0)
        && guard_satisfied(t, marking)
}

/// Transitions enabled in `marking`, in the net's transition order.
pub fn enabled_transitions(
    net: &QPNet,
    marking: &Marking,
) -> Result<Vec<TransitionId>, EngineError> {
    marking.validate(net)?;
    Ok(enabled_unchecked(net, marking))
}

pub(crate) fn enabled_unchecked(net: &QPNet, marking: &Marking) -> Vec<TransitionId> {
    net.transitions()
        .iter()
        .filter(|t| is_enabled(t, marking))
        .map(|t| t.id.clone())
        .collect()
}

/// Applies `gate` to the tensor product of `payloads` (first on the
/// high-order qubits) and splits the result back to the original widths.
fn apply_to_payloads(
    t: &Transition,
    payloads: &[StateVector],
    gate: &[crate::statevector::GateOp],
) -> Result<Vec<StateVector>, EngineError> {
    let Some((first, rest)) = payloads.split_first() else {
        return Ok(Vec::new());
    };
    let joint = rest.iter().fold(first.clone(), |acc, p| acc.tensor(p));
    let mut state = joint.apply_all(gate).map_err(|source| EngineError::Gate {
        transition: t.id.clone(),
        source,
    })?;
    let mut out = Vec::with_capacity(payloads.len());
    for p in &payloads[..payloads.len() - 1] {
        let (head, tail) = state
            .split(p.num_qubits())
            .ok_or_else(|| EngineError::Entangled(t.id.clone()))?;
        out.push(head);
        state = tail;
    }
    out.push(state);
    Ok(out)
}

/// Fires `transition`, returning the successor marking and the event.
///
/// Head entries are consumed from each input arc in declaration order. Data
/// payloads pass through the transition's gate; tokens are then appended to
/// their routed output places.
pub fn fire(
    net: &QPNet,
    marking: &Marking,
    transition: &TransitionId,
) -> Result<(Marking, FiringEvent), EngineError> {
    marking.validate(net)?;
    fire_unchecked(net, marking, transition)
}

pub(crate) fn fire_unchecked(
    net: &QPNet,
    marking: &Marking,
    transition: &TransitionId,
) -> Result<(Marking, FiringEvent), EngineError> {
    let t = net
        .transition(transition)
        .ok_or_else(|| EngineError::UnknownTransition(transition.clone()))?;
    if !is_enabled(t, marking) {
        return Err(EngineError::NotEnabled {
            transition: transition.clone(),
            step: None,
        });
    }
    let mut next = marking.clone();

    // (input arc label, entry) in consumption order
    let mut consumed_entries = Vec::new();
    for arc in &t.inputs {
        let queue = next.queue_mut(&arc.place).expect("validated marking");
        for _ in 0..arc.multiplicity {
            let entry = queue.pop_front().expect("enabled transition");
            consumed_entries.push((arc, entry));
        }
    }

    let consumed: Vec<StagedEntry> = consumed_entries
        .iter()
        .map(|(arc, entry)| StagedEntry {
            place: arc.place.clone(),
            tokens: entry
                .tokens()
                .iter()
                .map(|id| TokenSnapshot {
                    id: id.clone(),
                    payload: marking.tokens[id].payload.clone(),
                })
                .collect(),
        })
        .collect();

    if !t.gate.is_empty() {
        let data: Vec<_> = consumed_entries
            .iter()
            .flat_map(|(_, e)| e.tokens().iter())
            .filter(|id| next.tokens[*id].kind == TokenKind::Data)
            .cloned()
            .collect();
        let payloads: Vec<StateVector> = data
            .iter()
            .map(|id| next.tokens[id].payload.clone())
            .collect();
        let updated = apply_to_payloads(t, &payloads, &t.gate)?;
        for (id, p) in data.iter().zip(updated) {
            next.tokens.get_mut(id).expect("consumed token").payload = p;
        }
    }

    let mut routed: Vec<Vec<_>> = vec![Vec::new(); t.outputs.len()];
    for (arc, entry) in &consumed_entries {
        for id in entry.tokens() {
            let kind = next.tokens[id].kind;
            let dest = t
                .destination(&arc.label, kind)
                .expect("routes validated at construction");
            routed[dest].push(id.clone());
        }
    }

    let mut produced = Vec::new();
    for (out, ids) in t.outputs.iter().zip(routed) {
        if ids.is_empty() {
            continue;
        }
        let entries = if out.fuse {
            vec![Entry(ids)]
        } else {
            ids.into_iter().map(Entry::single).collect()
        };
        for entry in entries {
            produced.push(StagedEntry {
                place: out.place.clone(),
                tokens: entry
                    .tokens()
                    .iter()
                    .map(|id| TokenSnapshot {
                        id: id.clone(),
                        payload: next.tokens[id].payload.clone(),
                    })
                    .collect(),
            });
            next.queue_mut(&out.place)
                .expect("validated marking")
                .push_back(entry);
        }
    }

    let event = FiringEvent {
        time: marking.time,
        transition: transition.clone(),
        consumed,
        produced,
    };
    next.time += 1;
    Ok((next, event))
}

/// Undoes the most recent firing `event`, restoring the pre-firing marking.
///
/// Produced entries must still sit at the tails of their places. When the
/// transition carries a gate, the inverse gate is applied to the current
/// payloads and the result must reproduce the recorded pre-firing payloads.
pub fn unfire(net: &QPNet, marking: &Marking, event: &FiringEvent) -> Result<Marking, EngineError> {
    let rev = |msg: String| EngineError::Reversal(msg);
    marking.validate(net)?;
    let t = net
        .transition(&event.transition)
        .ok_or_else(|| EngineError::UnknownTransition(event.transition.clone()))?;
    if marking.time != event.time + 1 {
        return Err(rev(format!(
            "event at t={} cannot be undone from marking at t={}",
            event.time, marking.time
        )));
    }
    let mut prev = marking.clone();

    for staged in event.produced.iter().rev() {
        let queue = prev
            .queue_mut(&staged.place)
            .ok_or_else(|| rev(format!("unknown place {}", staged.place)))?;
        let tail = queue
            .pop_back()
            .ok_or_else(|| rev(format!("{} is empty", staged.place)))?;
        if tail.tokens() != staged.ids().as_slice() {
            return Err(rev(format!(
                "tail of {} is {tail}, event produced {}",
                staged.place,
                Entry(staged.ids())
            )));
        }
        for snap in &staged.tokens {
            if !marking.tokens[&snap.id]
                .payload
                .approx_eq(&snap.payload, 1e-12)
            {
                return Err(rev(format!(
                    "payload of {} changed since the event",
                    snap.id
                )));
            }
        }
    }

    let pre: Vec<&TokenSnapshot> = event
        .consumed
        .iter()
        .flat_map(|e| e.tokens.iter())
        .collect();
    if t.gate.is_empty() {
        for snap in &pre {
            if !marking.tokens[&snap.id]
                .payload
                .approx_eq(&snap.payload, 1e-12)
            {
                return Err(rev(format!("identity transition changed {}", snap.id)));
            }
        }
    } else {
        let data: Vec<&TokenSnapshot> = pre
            .iter()
            .copied()
            .filter(|s| marking.tokens[&s.id].kind == TokenKind::Data)
            .collect();
        let current: Vec<StateVector> = data
            .iter()
            .map(|s| marking.tokens[&s.id].payload.clone())
            .collect();
        let inverse: Vec<_> = t.gate.iter().rev().cloned().collect();
        let restored = apply_to_payloads(t, &current, &inverse)?;
        for (snap, p) in data.iter().zip(&restored) {
            if !p.approx_eq_up_to_phase(&snap.payload, 1e-10) {
                return Err(rev(format!(
                    "inverse gate gives {p} for {}, event recorded {}",
                    snap.id, snap.payload
                )));
            }
        }
    }

    for staged in event.consumed.iter().rev() {
        let queue = prev
            .queue_mut(&staged.place)
            .ok_or_else(|| rev(format!("unknown place {}", staged.place)))?;
        queue.push_front(Entry(staged.ids()));
    }
    for snap in pre {
        prev.tokens
            .get_mut(&snap.id)
            .ok_or_else(|| rev(format!("unknown token {}", snap.id)))?
            .payload = snap.payload.clone();
    }
    prev.time -= 1;
    prev.validate(net)?;
    Ok(prev)
}

/// Undoes every event of a trace, newest first.
pub fn unfire_trace(
    net: &QPNet,
    final_marking: &Marking,
    events: &[FiringEvent],
) -> Result<Marking, EngineError> {
    events
        .iter()
        .rev()
        .try_fold(final_marking.clone(), |m, e| unfire(net, &m, e))
}
