//! Adaptive collision rate.
//!
//! The collision rate is a sigmoid of a signed success counter: successful
//! on-wall collisions push it down, successful inter-molecular collisions
//! push it up.

use crate::operators::ReactionKind;

/// `1 / (1 + exp(-6 * counter / max_fe))`.
pub fn coll_rate(counter: i64, max_fe: u64) -> f64 {
    debug_assert!(max_fe > 0);
    let x = -6.0 * counter as f64 / max_fe as f64;
    1.0 / (1.0 + libm::exp(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdaptiveState {
    pub counter: i64,
    pub max_fe: u64,
}

impl AdaptiveState {
    pub fn new(max_fe: u64) -> Self {
        AdaptiveState { counter: 0, max_fe }
    }

    pub fn coll_rate(&self) -> f64 {
        coll_rate(self.counter, self.max_fe)
    }

    /// Only committed on-wall (-1) and inter-molecular (+1) collisions move
    /// the counter.
    pub fn update(self, reaction: &ReactionKind, accepted: bool) -> Self {
        AdaptiveState {
            counter: update_counter(self.counter, reaction, accepted),
            ..self
        }
    }
}

pub fn update_counter(counter: i64, reaction: &ReactionKind, accepted: bool) -> i64 {
    match (reaction, accepted) {
        (ReactionKind::Onwall(_), true) => counter - 1,
        (ReactionKind::Inter(..), true) => counter + 1,
        _ => counter,
    }
}
