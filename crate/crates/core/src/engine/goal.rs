//! Puzzle goal predicates.

use super::state::{GameResult, GameState, Goal};

/// Whether the state satisfies the goal.
///
/// Evaluated after every fully resolved action; a goal once satisfied ends
/// the puzzle successfully. Lethal is winning outright. The other three are
/// state predicates that additionally require the game to still be ongoing:
/// a lost (or already decided) game cannot satisfy them.
pub fn goal_satisfied(state: &GameState, goal: Goal) -> bool {
    match goal {
        Goal::Lethal => state.result == GameResult::ActiveWon,
        Goal::Survival => {
            state.result == GameResult::Ongoing
                && state.active.hero.health == state.active.hero.max_health
        }
        Goal::BoardClear => {
            state.result == GameResult::Ongoing
                && state.active.board.is_empty()
                && state.opponent.board.is_empty()
        }
        Goal::Mirror => {
            state.result == GameResult::Ongoing
                && state.active.board.len() == state.opponent.board.len()
                && state
                    .active
                    .board
                    .iter()
                    .zip(state.opponent.board.iter())
                    .all(|(a, b)| {
                        a.card == b.card
                            && a.attack == b.attack
                            && a.current_health == b.current_health
                            && a.max_health == b.max_health
                            && a.frozen == b.frozen
                    })
        }
    }
}
