use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::firing::{enabled_unchecked, fire_unchecked, is_enabled};
use super::{
    EngineError, Marking, PlaceId, QPNet, TokenId, TokenKind, TransitionId, TransitionRole,
    DEFAULT_STEP_BOUND,
};
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct TokenSnapshot {
    pub id: TokenId,
    pub payload: StateVector,
}

/// An entry as it left or arrived at a place during one firing.
#[derive(Debug, Clone, PartialEq)]
pub struct StagedEntry {
    pub place: PlaceId,
    pub tokens: Vec<TokenSnapshot>,
}

impl StagedEntry {
    pub fn ids(&self) -> Vec<TokenId> {
        self.tokens.iter().map(|t| t.id.clone()).collect()
    }
}

/// One firing: consumed entries with their pre-firing payloads and produced
/// entries with post-firing payloads. `time` is the step at which it fired.
#[derive(Debug, Clone, PartialEq)]
pub struct FiringEvent {
    pub time: u64,
    pub transition: TransitionId,
    pub consumed: Vec<StagedEntry>,
    pub produced: Vec<StagedEntry>,
}

impl FiringEvent {
    pub fn consumed_ids(&self) -> Vec<TokenId> {
        self.consumed.iter().flat_map(|e| e.ids()).collect()
    }

    pub fn produced_ids(&self) -> Vec<TokenId> {
        self.produced.iter().flat_map(|e| e.ids()).collect()
    }
}

/// An address selected a transition that could not fire because one of its
/// data inputs was empty. The ancillary token stays at the head of its
/// supply, so no later address of that supply is consulted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedSelection {
    pub time: u64,
    pub ancillary: TokenId,
    pub transition: TransitionId,
    pub empty_place: PlaceId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub initial: Marking,
    pub events: Vec<FiringEvent>,
    pub skipped: Vec<SkippedSelection>,
    pub final_marking: Marking,
}

impl Trace {
    pub fn firing_order(&self) -> Vec<TransitionId> {
        self.events.iter().map(|e| e.transition.clone()).collect()
    }

    /// Marking after each prefix of the trace, starting with the initial one.
    pub fn markings(&self, net: &QPNet) -> Result<Vec<Marking>, EngineError> {
        let mut out = vec![self.initial.clone()];
        let mut current = self.initial.clone();
        for e in &self.events {
            current = fire_unchecked(net, &current, &e.transition)?.0;
            out.push(current.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheduler {
    /// Fire exactly these transitions, in order.
    Scripted(Vec<TransitionId>),
    /// Keep firing input-side transitions (selected by the head ancillary
    /// addresses where guarded); output-side transitions fire only when no
    /// input-side transition is enabled.
    AddressDriven,
    /// Like `AddressDriven`, but an enabled output-side transition always
    /// fires before the next input-side selection.
    EagerOutputThenScript,
    /// Uniform choice among enabled transitions from a seeded ChaCha8 stream.
    Random(u64),
}

impl Scheduler {
    pub fn scripted<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<TransitionId>,
    {
        Scheduler::Scripted(ids.into_iter().map(Into::into).collect())
    }
}

/// Runs `net` from `marking` until the scheduler is exhausted or nothing is
/// enabled.
pub fn run(net: &QPNet, marking: &Marking, scheduler: &Scheduler) -> Result<Trace, EngineError> {
    run_bounded(net, marking, scheduler, DEFAULT_STEP_BOUND)
}

pub fn run_bounded(
    net: &QPNet,
    marking: &Marking,
    scheduler: &Scheduler,
    step_bound: usize,
) -> Result<Trace, EngineError> {
    marking.validate(net)?;
    let mut current = marking.clone();
    let mut events = Vec::new();
    let mut skipped = Vec::new();
    let mut rng = match scheduler {
        Scheduler::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };

    if let Scheduler::Scripted(script) = scheduler {
        for (step, id) in script.iter().enumerate() {
            let (next, event) = fire_unchecked(net, &current, id).map_err(|e| match e {
                EngineError::NotEnabled { transition, .. } => EngineError::NotEnabled {
                    transition,
                    step: Some(step),
                },
                other => other,
            })?;
            current = next;
            events.push(event);
        }
    } else {
        loop {
            if events.len() >= step_bound {
                return Err(EngineError::Explosion(step_bound));
            }
            let enabled = enabled_unchecked(net, &current);
            let choice = match scheduler {
                Scheduler::Random(_) => enabled
                    .choose(rng.as_mut().expect("seeded for Random"))
                    .cloned(),
                Scheduler::AddressDriven => {
                    let input = first_with_role(net, &enabled, TransitionRole::Input);
                    if input.is_none() {
                        note_skips(net, &current, &mut skipped);
                    }
                    input.or_else(|| first_with_role(net, &enabled, TransitionRole::Output))
                }
                Scheduler::EagerOutputThenScript => {
                    first_with_role(net, &enabled, TransitionRole::Output).or_else(|| {
                        let input = first_with_role(net, &enabled, TransitionRole::Input);
                        if input.is_none() {
                            note_skips(net, &current, &mut skipped);
                        }
                        input
                    })
                }
                Scheduler::Scripted(_) => unreachable!(),
            };
            let Some(id) = choice else { break };
            let (next, event) = fire_unchecked(net, &current, &id)?;
            current = next;
            events.push(event);
        }
    }

    Ok(Trace {
        initial: marking.clone(),
        events,
        skipped,
        final_marking: current,
    })
}

fn first_with_role(
    net: &QPNet,
    enabled: &[TransitionId],
    role: TransitionRole,
) -> Option<TransitionId> {
    enabled
        .iter()
        .find(|id| net.transition(id).is_some_and(|t| t.role == role))
        .cloned()
}

/// Records guarded transitions whose address matches the head ancillary
/// token but which lack data on some other input. Each ancillary token is
/// reported once.
fn note_skips(net: &QPNet, marking: &Marking, skipped: &mut Vec<SkippedSelection>) {
    for t in net
        .transitions()
        .iter()
        .filter(|t| t.role == TransitionRole::Input)
    {
        let Some(guard) = &t.guard else { continue };
        let Some(head) = marking.queue(&guard.place).and_then(|q| q.front()) else {
            continue;
        };
        let Some(anc) = head.tokens().iter().find(|id| {
            marking
                .token(id)
                .is_some_and(|tok| tok.kind == TokenKind::Ancillary)
        }) else {
            continue;
        };
        if marking.token(anc).and_then(|tok| tok.address()) != Some(guard.value)
            || is_enabled(t, marking)
        {
            continue;
        }
        let Some(empty) = t
            .inputs
            .iter()
            .find(|a| marking.entry_count(&a.place) < a.multiplicity)
        else {
            continue;
        };
        if skipped.iter().any(|s| &s.ancillary == anc) {
            continue;
        }
        skipped.push(SkippedSelection {
            time: marking.time(),
            ancillary: anc.clone(),
            transition: t.id.clone(),
            empty_place: empty.place.clone(),
        });
    }
}
