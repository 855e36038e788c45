use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use super::firing::{enabled_unchecked, fire_unchecked};
use super::{EngineError, Marking, PlaceId, QPNet, TransitionId};

/// Firing budget for exhaustive exploration.
pub const DEFAULT_STEP_BOUND: usize = 1_000_000;

/// Token count per place at quiescence, in net place order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistributionSignature {
    pub counts: Vec<(PlaceId, usize)>,
}

impl DistributionSignature {
    pub fn of(marking: &Marking) -> Self {
        Self {
            counts: marking
                .queues()
                .map(|(p, q)| (p.clone(), q.iter().map(|e| e.len()).sum()))
                .collect(),
        }
    }

    /// Counts of the named places, in the order given. Unknown places read 0.
    pub fn project(&self, places: &[&str]) -> Vec<usize> {
        places
            .iter()
            .map(|name| {
                self.counts
                    .iter()
                    .find(|(p, _)| p == name)
                    .map_or(0, |(_, c)| *c)
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|(_, c)| c).sum()
    }
}

impl fmt::Display for DistributionSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(p, c)| format!("{p}={c}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Result of exhaustive exploration of all maximal firing sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Each reachable quiescent signature with one witness firing sequence.
    pub outcomes: BTreeMap<DistributionSignature, Vec<TransitionId>>,
    /// Lengths of all maximal firing sequences.
    pub run_lengths: BTreeSet<usize>,
    /// Number of distinct maximal firing sequences (saturating).
    pub maximal_sequences: u128,
    /// Distinct markings visited.
    pub states: usize,
    /// Firings performed during exploration.
    pub firings: usize,
}

#[derive(Debug, Default)]
struct Summary {
    outcomes: BTreeMap<DistributionSignature, Vec<TransitionId>>,
    lengths: BTreeSet<usize>,
    sequences: u128,
}

struct Explorer<'a, F> {
    net: &'a QPNet,
    bound: usize,
    firings: usize,
    with_payloads: bool,
    memo: HashMap<String, Rc<Summary>>,
    visit: F,
}

impl<F: FnMut(&Marking, &TransitionId)> Explorer<'_, F> {
    fn summarize(&mut self, marking: &Marking) -> Result<Rc<Summary>, EngineError> {
        let key = marking.state_key(self.with_payloads);
        if let Some(s) = self.memo.get(&key) {
            return Ok(Rc::clone(s));
        }
        let enabled = enabled_unchecked(self.net, marking);
        let mut summary = Summary::default();
        if enabled.is_empty() {
            summary
                .outcomes
                .insert(DistributionSignature::of(marking), Vec::new());
            summary.lengths.insert(0);
            summary.sequences = 1;
        }
        for t in enabled {
            (self.visit)(marking, &t);
            self.firings += 1;
            if self.firings > self.bound {
                return Err(EngineError::Explosion(self.bound));
            }
            let (next, _) = fire_unchecked(self.net, marking, &t)?;
            let child = self.summarize(&next)?;
            for (sig, witness) in &child.outcomes {
                summary.outcomes.entry(sig.clone()).or_insert_with(|| {
                    let mut w = Vec::with_capacity(witness.len() + 1);
                    w.push(t.clone());
                    w.extend(witness.iter().cloned());
                    w
                });
            }
            summary.lengths.extend(child.lengths.iter().map(|l| l + 1));
            summary.sequences = summary.sequences.saturating_add(child.sequences);
        }
        let summary = Rc::new(summary);
        self.memo.insert(key, Rc::clone(&summary));
        Ok(summary)
    }
}

/// Explores every maximal firing sequence from `marking`, deduplicating
/// quiescent markings by their distribution signature.
///
/// Identical intermediate markings are explored once, so the firing budget
/// is spent on distinct states rather than on every interleaving.
pub fn enumerate_final_markings(
    net: &QPNet,
    marking: &Marking,
    step_bound: usize,
) -> Result<Enumeration, EngineError> {
    explore(net, marking, step_bound, |_, _| {})
}

/// Like [`enumerate_final_markings`], calling `visit(marking, transition)`
/// for every enabled transition of every distinct explored marking.
pub fn explore<F>(
    net: &QPNet,
    marking: &Marking,
    step_bound: usize,
    visit: F,
) -> Result<Enumeration, EngineError>
where
    F: FnMut(&Marking, &TransitionId),
{
    marking.validate(net)?;
    let mut explorer = Explorer {
        net,
        bound: step_bound,
        firings: 0,
        with_payloads: net.has_gates(),
        memo: HashMap::new(),
        visit,
    };
    let root = explorer.summarize(marking)?;
    Ok(Enumeration {
        outcomes: root.outcomes.clone(),
        run_lengths: root.lengths.clone(),
        maximal_sequences: root.sequences,
        states: explorer.memo.len(),
        firings: explorer.firings,
    })
}
