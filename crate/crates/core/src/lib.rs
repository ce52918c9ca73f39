//! Single-turn "find lethal" engine for a small Hearthstone fragment, plus
//! compilers that turn PARTITION / 3-PARTITION instances into puzzles, an
//! exhaustive solver, and independent brute-force/DP oracles.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! instance --reductions--> Puzzle --solver--> SolutionLine --certificate--> witness partition
//!                                     |
//!                         oracle <----+--- roundtrip checks: solver verdict == oracle verdict
//! ```
//!
//! * [`cards`] — static registry of every card and token the constructions use.
//! * [`engine`] — deterministic single-turn state machine: legal actions,
//!   action application with trigger/death resolution, goal predicates, and
//!   canonical state hashing.
//! * [`oracle`] — ground-truth deciders for PARTITION and 3-PARTITION.
//! * [`reductions`] — instance-to-puzzle compilers, goal adapters, and
//!   witness-partition extraction from solved lines.
//! * [`solver`] — exhaustive memoized search with symmetry pruning, plus a
//!   line verifier and a naive reference enumerator.

pub mod cards;
pub mod engine;
pub mod oracle;
pub mod reductions;
pub mod solver;

pub use cards::{card_def, token_def, CardDef, CardId, CardKind, Tribe};
pub use engine::{
    apply_action, canonical_key, draw, dynamic_cost, goal_satisfied, legal_actions,
    process_deaths, summon, Action, Entity, EntityRef, GameResult, GameState, Goal, HandCard,
    HeroId, HeroState, MinionInstance, NondeterminismPolicy, PlayerState, ScalingMode, Side,
    Weapon,
};
pub use oracle::{oracle_3partition, oracle_partition, OracleResult};
pub use reductions::{
    adapt_goal, encoding_sequence, evaluate_encoding, extract_certificate,
    integer_card_sequence, reduce_board_3partition, reduce_deck_partition, reduce_hand_partition,
    Certificate, EncodingOp, PartitionInstance, Puzzle, ReductionKind, ThreePartitionInstance,
    Variant,
};
pub use solver::{naive_solvable, solve, verify_line, SolutionLine, SolveLimits, SolveResult};
