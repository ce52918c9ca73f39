//! Scratch: print the solver's line for a deck puzzle, step by step.

use lethal_core::*;

fn main() {
    let inst = PartitionInstance::new(vec![1, 2]).unwrap();
    let puzzle = reduce_deck_partition(&inst).unwrap();
    let result = solve(&puzzle, &SolveLimits::default()).unwrap();
    let SolveResult::Solved { line, .. } = result else {
        println!("not solved: {result:?}");
        return;
    };
    let mut state = puzzle.state.clone();
    for (i, action) in line.actions.iter().enumerate() {
        let describe_entity = |r: &EntityRef| match r.entity {
            Entity::Hero => format!("{:?} hero", r.side),
            Entity::Minion(p) => {
                let m = &state.player(r.side).board[p];
                format!("{:?} {}@{} {}/{}", r.side, m.card, p, m.attack, m.current_health)
            }
        };
        let text = match action {
            Action::PlayCard { hand_index, position, target } => {
                let card = state.active.hand[*hand_index].card;
                format!(
                    "play {card} (idx {hand_index}, pos {position:?}, target {})",
                    target.map(|t| describe_entity(&t)).unwrap_or_default()
                )
            }
            Action::Attack { attacker, defender } => {
                format!("attack {} -> {}", describe_entity(attacker), describe_entity(defender))
            }
            Action::HeroPower { target } => format!(
                "hero power (target {})",
                target.map(|t| describe_entity(&t)).unwrap_or_default()
            ),
            Action::EndTurn => "end turn".to_string(),
        };
        state = apply_action(&state, action, &mut NondeterminismPolicy::Forbidden).unwrap();
        let dummies: Vec<String> = state
            .opponent
            .board
            .iter()
            .map(|m| format!("{} {}/{}", m.card, m.attack, m.current_health))
            .collect();
        let ours: Vec<String> = state
            .active
            .board
            .iter()
            .map(|m| format!("{} {}/{}", m.card, m.attack, m.current_health))
            .collect();
        println!(
            "{i:2}. {text}\n      mana {}, hand {}, deck {}, our board [{}], their board [{}], opp hero {}",
            state.active.mana_available,
            state.active.hand.len(),
            state.active.deck.len(),
            ours.join(", "),
            dummies.join(", "),
            state.opponent.hero.health,
        );
    }
}
