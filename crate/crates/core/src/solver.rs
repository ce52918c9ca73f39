//! Exhaustive single-turn search.
//!
//! Depth-first search over legal actions with memoization on the canonical
//! state key (the hand is a multiset there, which collapses the factorially
//! many equivalent play orders) and action-level symmetry pruning. A goal is
//! checked after every applied action. `Unsolvable` is only reported when
//! the reachable space was enumerated without hitting any limit; any limit
//! event downgrades the verdict to `ResourceLimit`.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cards::CardId;
use crate::engine::{
    apply_action, canonical_key, goal_satisfied, legal_actions, Action, EngineError, Entity,
    EntityRef, GameState, Goal, MinionInstance, NondeterminismPolicy, Side,
};
use crate::reductions::Puzzle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    /// Maximum number of applied actions before giving up.
    pub max_states: u64,
    /// Maximum line length.
    pub max_depth: u32,
    /// Optional wall-clock budget.
    pub time_limit: Option<Duration>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits { max_states: 10_000_000, max_depth: 512, time_limit: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    States,
    Depth,
    Time,
}

/// An ordered action list claimed to achieve a puzzle's goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionLine {
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Solved { line: SolutionLine, states_explored: u64 },
    Unsolvable { states_explored: u64 },
    ResourceLimit { limit: LimitKind, states_explored: u64 },
}

impl SolveResult {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveResult::Solved { .. })
    }

    pub fn states_explored(&self) -> u64 {
        match self {
            SolveResult::Solved { states_explored, .. }
            | SolveResult::Unsolvable { states_explored }
            | SolveResult::ResourceLimit { states_explored, .. } => *states_explored,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// The puzzle state already has a result.
    AlreadyTerminal,
    /// A random-generation effect was reachable; solving forbids those.
    RandomGeneration(EngineError),
    /// An enumerated action failed to apply; this is a bug, not an input error.
    Internal(String),
}

impl std::fmt::Display for SolveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveError::AlreadyTerminal => write!(f, "puzzle state is already terminal"),
            SolveError::RandomGeneration(e) => write!(f, "{e}"),
            SolveError::Internal(msg) => write!(f, "internal solver error: {msg}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Solve with symmetry pruning enabled.
pub fn solve(puzzle: &Puzzle, limits: &SolveLimits) -> Result<SolveResult, SolveError> {
    solve_with_options(puzzle, limits, true)
}

/// Solve with pruning switched explicitly; pruning affects runtime only,
/// never the verdict (checked by the completeness suite).
pub fn solve_with_options(
    puzzle: &Puzzle,
    limits: &SolveLimits,
    pruning: bool,
) -> Result<SolveResult, SolveError> {
    if !puzzle.state.is_ongoing() {
        return Err(SolveError::AlreadyTerminal);
    }
    if goal_satisfied(&puzzle.state, puzzle.goal) {
        return Ok(SolveResult::Solved {
            line: SolutionLine { actions: Vec::new() },
            states_explored: 0,
        });
    }
    let mut ctx = SearchCtx {
        goal: puzzle.goal,
        limits: *limits,
        pruning,
        started: Instant::now(),
        visited: HashSet::new(),
        line: Vec::new(),
        states_explored: 0,
        limit_hit: None,
    };
    ctx.visited.insert(memo_key(&puzzle.state));
    let found = ctx.dfs(&puzzle.state, 0)?;
    let states_explored = ctx.states_explored;
    Ok(if found {
        SolveResult::Solved { line: SolutionLine { actions: ctx.line }, states_explored }
    } else if let Some(limit) = ctx.limit_hit {
        SolveResult::ResourceLimit { limit, states_explored }
    } else {
        SolveResult::Unsolvable { states_explored }
    })
}

fn memo_key(state: &GameState) -> [u8; 16] {
    let digest = Sha256::digest(canonical_key(state));
    digest[..16].try_into().expect("sha256 yields 32 bytes")
}

struct SearchCtx {
    goal: Goal,
    limits: SolveLimits,
    pruning: bool,
    started: Instant,
    visited: HashSet<[u8; 16]>,
    line: Vec<Action>,
    states_explored: u64,
    limit_hit: Option<LimitKind>,
}

impl SearchCtx {
    fn dfs(&mut self, state: &GameState, depth: u32) -> Result<bool, SolveError> {
        for action in candidate_actions(state, self.goal, self.pruning) {
            if self.states_explored >= self.limits.max_states {
                self.limit_hit = Some(LimitKind::States);
                return Ok(false);
            }
            if let Some(budget) = self.limits.time_limit {
                if self.started.elapsed() > budget {
                    self.limit_hit = Some(LimitKind::Time);
                    return Ok(false);
                }
            }
            let child = match apply_action(state, &action, &mut NondeterminismPolicy::Forbidden) {
                Ok(child) => child,
                Err(e @ EngineError::RandomEffectForbidden { .. }) => {
                    return Err(SolveError::RandomGeneration(e))
                }
                Err(e) => {
                    return Err(SolveError::Internal(format!(
                        "enumerated action {action:?} failed: {e}"
                    )))
                }
            };
            self.states_explored += 1;
            if goal_satisfied(&child, self.goal) {
                self.line.push(action);
                return Ok(true);
            }
            if !child.is_ongoing() {
                continue;
            }
            if depth + 1 >= self.limits.max_depth {
                // An expandable state goes unexplored: no exhaustion claim.
                self.limit_hit = Some(LimitKind::Depth);
                continue;
            }
            if !self.visited.insert(memo_key(&child)) {
                continue;
            }
            self.line.push(action);
            if self.dfs(&child, depth + 1)? {
                return Ok(true);
            }
            self.line.pop();
        }
        Ok(false)
    }
}

/// Canonical description of a minion for symmetry purposes: two minions with
/// equal descriptions are interchangeable wherever board order cannot matter.
type MinionDesc = (CardId, i64, i64, i64, bool, bool, bool, u32, bool, bool);

fn describe(m: &MinionInstance) -> MinionDesc {
    (
        m.card,
        m.attack,
        m.current_health,
        m.max_health,
        m.frozen,
        m.has_charge,
        m.cannot_attack_heroes,
        m.attacks_used,
        m.summoned_this_turn,
        m.immune_this_turn,
    )
}

/// Whether board positions can influence the outcome from this state on:
/// only through the mirror goal or a positional battlecry still in reach
/// (Void Terror in the active hand or deck).
fn positions_matter(state: &GameState, goal: Goal) -> bool {
    goal == Goal::Mirror
        || state.active.hand.iter().any(|h| h.card == CardId::VoidTerror)
        || state.active.deck.contains(&CardId::VoidTerror)
}

/// Ordered candidate actions for the search.
///
/// With pruning enabled this applies, on top of [`legal_actions`] semantics:
/// one representative per class of identical hand cards; one representative
/// per class of identical attackers, spell targets, and enemy defenders
/// (only when positions cannot matter); a single canonical board position
/// for minion plays (same condition); and, in states with uncapped
/// temporary mana, forced mana-gain plays first (playing a free mana spell
/// earlier never hurts, so any solution can be reordered to have them up
/// front).
fn candidate_actions(state: &GameState, goal: Goal, pruning: bool) -> Vec<Action> {
    if !pruning {
        return order_actions(state, legal_actions(state));
    }
    if !state.is_ongoing() {
        return Vec::new();
    }

    // Forced Innervate: in uncapped-mana states the play is pure profit.
    if state.mode.temp_mana_uncapped() {
        if let Some(i) = state.active.hand.iter().position(|h| h.card == CardId::Innervate) {
            return vec![Action::PlayCard { hand_index: i, position: None, target: None }];
        }
    }

    let reorder_free = !positions_matter(state, goal);
    let mut actions = legal_actions(state);

    // One representative per identical hand card.
    let mut seen_hand: HashSet<(CardId, i64, i64)> = HashSet::new();
    let mut keep_hand = vec![false; state.active.hand.len()];
    for (i, h) in state.active.hand.iter().enumerate() {
        if seen_hand.insert((h.card, h.bolvar_bonus_attack, h.cost_discount)) {
            keep_hand[i] = true;
        }
    }

    // One representative per identical minion on each side.
    let mut keep_minion = [vec![], vec![]];
    for (si, side) in [Side::Active, Side::Opponent].into_iter().enumerate() {
        let board = &state.player(side).board;
        let mut seen: HashSet<MinionDesc> = HashSet::new();
        keep_minion[si] = board
            .iter()
            .map(|m| seen.insert(describe(m)))
            .collect::<Vec<bool>>();
    }
    let minion_kept = |r: EntityRef| -> bool {
        match r.entity {
            Entity::Hero => true,
            Entity::Minion(i) => keep_minion[if r.side == Side::Active { 0 } else { 1 }][i],
        }
    };

    let board_end = state.active.board.len();
    actions.retain(|action| match *action {
        Action::PlayCard { hand_index, position, target } => {
            if !keep_hand[hand_index] {
                return false;
            }
            if reorder_free {
                if let Some(p) = position {
                    if p != board_end {
                        return false;
                    }
                }
                if let Some(t) = target {
                    if !minion_kept(t) {
                        return false;
                    }
                }
            }
            true
        }
        Action::Attack { attacker, defender } => {
            if reorder_free {
                minion_kept(attacker) && minion_kept(defender)
            } else {
                true
            }
        }
        Action::HeroPower { target } => match target {
            Some(t) if reorder_free => minion_kept(t),
            _ => true,
        },
        Action::EndTurn => true,
    });

    order_actions(state, actions)
}

/// Fixed exploration order: attacks first (enemy minions by remaining
/// health, heroes last), then card plays, then the hero power, then ending
/// the turn.
fn order_actions(state: &GameState, mut actions: Vec<Action>) -> Vec<Action> {
    let defender_key = |r: &EntityRef| -> (u8, i64) {
        match r.entity {
            Entity::Minion(i) => (0, state.player(r.side).board[i].current_health),
            Entity::Hero => (1, 0),
        }
    };
    actions.sort_by_key(|action| match action {
        Action::Attack { defender, .. } => {
            let (h, hp) = defender_key(defender);
            (0u8, h, hp)
        }
        Action::PlayCard { .. } => (1, 0, 0),
        Action::HeroPower { .. } => (2, 0, 0),
        Action::EndTurn => (3, 0, 0),
    });
    actions
}

/// Report from replaying a claimed solution line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Index and reason of the first illegal action, if any.
    pub first_illegal: Option<(usize, String)>,
    /// Index of the action after which the goal held.
    pub goal_reached_at: Option<usize>,
    /// Actions replayed (stops at the goal or the first illegal action).
    pub actions_replayed: usize,
}

impl VerificationReport {
    pub fn goal_reached(&self) -> bool {
        self.goal_reached_at.is_some()
    }

    pub fn is_legal(&self) -> bool {
        self.first_illegal.is_none()
    }
}

/// Replay a line action by action under the forbidden-randomness policy.
pub fn verify_line(puzzle: &Puzzle, line: &SolutionLine) -> VerificationReport {
    let mut report = VerificationReport {
        first_illegal: None,
        goal_reached_at: None,
        actions_replayed: 0,
    };
    let mut state = puzzle.state.clone();
    if goal_satisfied(&state, puzzle.goal) {
        // A pre-satisfied puzzle is degenerate; record it as index 0 with no
        // actions replayed.
        report.goal_reached_at = Some(0);
        return report;
    }
    for (i, action) in line.actions.iter().enumerate() {
        match apply_action(&state, action, &mut NondeterminismPolicy::Forbidden) {
            Ok(next) => {
                state = next;
                report.actions_replayed = i + 1;
                if goal_satisfied(&state, puzzle.goal) {
                    report.goal_reached_at = Some(i);
                    return report;
                }
            }
            Err(e) => {
                report.first_illegal = Some((i, e.to_string()));
                return report;
            }
        }
    }
    report
}

/// Reference enumerator for the completeness checks: breadth-first over the
/// full legal action space with no symmetry pruning, no canonical-key
/// merging, and no ordering heuristic (only exact duplicate states are
/// skipped). Returns an error string when `max_nodes` is exhausted first.
pub fn naive_solvable(puzzle: &Puzzle, max_nodes: u64) -> Result<bool, String> {
    if !puzzle.state.is_ongoing() {
        return Err("terminal state".to_string());
    }
    if goal_satisfied(&puzzle.state, puzzle.goal) {
        return Ok(true);
    }
    let mut queue = std::collections::VecDeque::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut nodes = 0u64;
    seen.insert(exact_key(&puzzle.state));
    queue.push_back(puzzle.state.clone());
    while let Some(state) = queue.pop_front() {
        for action in legal_actions(&state) {
            nodes += 1;
            if nodes > max_nodes {
                return Err(format!("naive enumeration exceeded {max_nodes} nodes"));
            }
            let child = apply_action(&state, &action, &mut NondeterminismPolicy::Forbidden)
                .map_err(|e| format!("apply failed during naive enumeration: {e}"))?;
            if goal_satisfied(&child, puzzle.goal) {
                return Ok(true);
            }
            if !child.is_ongoing() {
                continue;
            }
            if seen.insert(exact_key(&child)) {
                queue.push_back(child);
            }
        }
    }
    Ok(false)
}

/// Exact (order-sensitive) state fingerprint: the canonical key plus the
/// literal hand order, so the naive enumerator merges nothing the canonical
/// abstraction would.
fn exact_key(state: &GameState) -> Vec<u8> {
    let mut key = canonical_key(state);
    for h in &state.active.hand {
        key.push(h.card.ordinal());
        key.extend_from_slice(&h.bolvar_bonus_attack.to_le_bytes());
    }
    for h in &state.opponent.hand {
        key.push(h.card.ordinal());
    }
    key
}

/// Convenience for tests: true exactly when the solver proves the puzzle
/// solvable, panicking on resource limits.
pub fn must_decide(puzzle: &Puzzle, limits: &SolveLimits) -> bool {
    match solve(puzzle, limits).expect("solvable input") {
        SolveResult::Solved { .. } => true,
        SolveResult::Unsolvable { .. } => false,
        SolveResult::ResourceLimit { limit, states_explored } => {
            panic!("search hit {limit:?} after {states_explored} states")
        }
    }
}
