use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{EngineError, PlaceId, QPNet, QToken, TokenId};

/// One queue slot: a single token, or a fused group travelling together.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry(pub Vec<TokenId>);

impl Entry {
    pub fn single(id: TokenId) -> Self {
        Self(vec![id])
    }

    pub fn tokens(&self) -> &[TokenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|t| t.as_str()).collect();
        f.write_str(&names.join("+"))
    }
}

/// Token placement and payloads at one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct Marking {
    pub(crate) time: u64,
    pub(crate) queues: Vec<(PlaceId, VecDeque<Entry>)>,
    pub(crate) tokens: BTreeMap<TokenId, QToken>,
}

impl Marking {
    /// Places each token as its own entry, in the given order, at time 0.
    pub fn new(net: &QPNet, placements: Vec<(PlaceId, Vec<QToken>)>) -> Result<Self, EngineError> {
        let mut queues: Vec<(PlaceId, VecDeque<Entry>)> = net
            .places()
            .iter()
            .map(|p| (p.id.clone(), VecDeque::new()))
            .collect();
        let mut tokens = BTreeMap::new();
        for (place, toks) in placements {
            let idx = net
                .place_index(&place)
                .ok_or_else(|| EngineError::Model(format!("unknown place {place}")))?;
            for tok in toks {
                queues[idx].1.push_back(Entry::single(tok.id.clone()));
                if tokens.insert(tok.id.clone(), tok).is_some() {
                    return Err(EngineError::Model("duplicate token id".into()));
                }
            }
        }
        let m = Self {
            time: 0,
            queues,
            tokens,
        };
        m.validate(net)?;
        Ok(m)
    }

    /// Rebuilds a marking from serialized parts, checking consistency.
    pub fn from_parts(
        net: &QPNet,
        time: u64,
        queues: Vec<(PlaceId, Vec<Entry>)>,
        tokens: Vec<QToken>,
    ) -> Result<Self, EngineError> {
        let mut table = BTreeMap::new();
        for t in tokens {
            if table.insert(t.id.clone(), t).is_some() {
                return Err(EngineError::Model(
                    "duplicate token id in token table".into(),
                ));
            }
        }
        let m = Self {
            time,
            queues: queues
                .into_iter()
                .map(|(p, entries)| (p, entries.into_iter().collect()))
                .collect(),
            tokens: table,
        };
        m.validate(net)?;
        Ok(m)
    }

    /// Checks that queues follow the net's places and that every token sits
    /// in exactly one entry.
    pub fn validate(&self, net: &QPNet) -> Result<(), EngineError> {
        let model = |msg: String| Err(EngineError::Model(msg));
        if self.queues.len() != net.places().len()
            || self
                .queues
                .iter()
                .zip(net.places())
                .any(|((id, _), p)| *id != p.id)
        {
            return model("marking places do not match the net".into());
        }
        let mut seen = BTreeSet::new();
        for (place, queue) in &self.queues {
            for entry in queue {
                if entry.is_empty() {
                    return model(format!("empty entry in {place}"));
                }
                for id in entry.tokens() {
                    if !self.tokens.contains_key(id) {
                        return model(format!("{id} in {place} has no payload"));
                    }
                    if !seen.insert(id) {
                        return model(format!("{id} appears more than once"));
                    }
                }
            }
        }
        if seen.len() != self.tokens.len() {
            return model("token table holds tokens that are in no place".into());
        }
        Ok(())
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn queue(&self, place: &PlaceId) -> Option<&VecDeque<Entry>> {
        self.queues.iter().find(|(p, _)| p == place).map(|(_, q)| q)
    }

    pub(crate) fn queue_mut(&mut self, place: &PlaceId) -> Option<&mut VecDeque<Entry>> {
        self.queues
            .iter_mut()
            .find(|(p, _)| p == place)
            .map(|(_, q)| q)
    }

    pub fn queues(&self) -> impl Iterator<Item = (&PlaceId, &VecDeque<Entry>)> {
        self.queues.iter().map(|(p, q)| (p, q))
    }

    pub fn entry_count(&self, place: &PlaceId) -> usize {
        self.queue(place).map_or(0, |q| q.len())
    }

    pub fn token_count(&self, place: &PlaceId) -> usize {
        self.queue(place)
            .map_or(0, |q| q.iter().map(Entry::len).sum())
    }

    /// Token ids of a place in queue order, fused entries flattened.
    pub fn tokens_in(&self, place: &str) -> Vec<TokenId> {
        self.queue(&PlaceId::from(place))
            .map(|q| q.iter().flat_map(|e| e.tokens().iter().cloned()).collect())
            .unwrap_or_default()
    }

    /// Token counts per place, in net place order.
    pub fn counts(&self) -> Vec<usize> {
        self.queues
            .iter()
            .map(|(_, q)| q.iter().map(Entry::len).sum())
            .collect()
    }

    pub fn total_tokens(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, id: &TokenId) -> Option<&QToken> {
        self.tokens.get(id)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &QToken> {
        self.tokens.values()
    }

    /// Where every token currently sits.
    pub fn token_places(&self) -> BTreeMap<TokenId, PlaceId> {
        let mut out = BTreeMap::new();
        for (place, queue) in &self.queues {
            for entry in queue {
                for id in entry.tokens() {
                    out.insert(id.clone(), place.clone());
                }
            }
        }
        out
    }

    /// Placement-only key (plus payload bits when `with_payloads`) used to
    /// memoize state-space exploration.
    pub(crate) fn state_key(&self, with_payloads: bool) -> String {
        let mut key = String::new();
        for (_, queue) in &self.queues {
            for entry in queue {
                for id in entry.tokens() {
                    key.push_str(id.as_str());
                    key.push('+');
                }
                key.push(',');
            }
            key.push('|');
        }
        if with_payloads {
            for tok in self.tokens.values() {
                for a in tok.payload.amplitudes() {
                    key.push_str(&format!("{:x}:{:x};", a.re.to_bits(), a.im.to_bits()));
                }
            }
        }
        key
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t = {}", self.time)?;
        for (place, queue) in &self.queues {
            let items: Vec<String> = queue
                .iter()
                .map(|e| {
                    let parts: Vec<String> = e
                        .tokens()
                        .iter()
                        .map(|id| format!("{id}:{}", self.tokens[id].payload))
                        .collect();
                    parts.join("+")
                })
                .collect();
            writeln!(f, "  {place}: [{}]", items.join(", "))?;
        }
        Ok(())
    }
}
