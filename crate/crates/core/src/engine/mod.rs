//! Deterministic single-turn state machine.
//!
//! A [`GameState`] is a value: cloning yields an independent snapshot and all
//! operations are pure functions from (state, action) to a new state. The
//! engine performs no internal concurrency and holds no global state.

mod actions;
mod apply;
mod goal;
mod key;
mod state;

#[cfg(test)]
mod tests;

pub use actions::{dynamic_cost, legal_actions};
pub use apply::{
    apply_action, apply_action_traced, draw, process_deaths, summon, TraceEvent,
};
pub use goal::goal_satisfied;
pub use key::canonical_key;
pub use state::{
    Action, EngineError, Entity, EntityRef, GameResult, GameState, Goal, HandCard, HeroId,
    HeroPower, HeroState, MinionInstance, NondeterminismPolicy, PlayerState, ScalingMode, Side,
    Weapon,
};
