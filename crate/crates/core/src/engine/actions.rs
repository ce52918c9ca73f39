//! Legal-action enumeration and dynamic card costs.

use crate::cards::{self, CardKind, CostRule, TargetRule, Tribe};

use super::state::{
    Action, Entity, EntityRef, GameState, HeroPower, Side,
};

/// Mana cost of the hand card at `hand_index` in the current state.
///
/// Applies the card's own cost rule (Solemn Vigil discounts per minion dead
/// this turn), any generated-card discount carried on the hand card, and the
/// free-spells flag left behind by Millhouse Manastorm. Never negative.
pub fn dynamic_cost(state: &GameState, hand_index: usize) -> i64 {
    let hc = &state.active.hand[hand_index];
    let def = cards::def(hc.card);
    if def.is_spell() && state.enemy_spells_cost_zero {
        return 0;
    }
    let mut cost = def.base_cost - hc.cost_discount;
    if let Some(CostRule::DiscountPerMinionDeadThisTurn(per)) = def.effect.cost_rule {
        cost -= per * i64::from(state.minions_died_total);
    }
    cost.max(0)
}

/// All live minions matching a target rule, in active-then-opponent board
/// order.
pub(crate) fn valid_targets(state: &GameState, rule: TargetRule) -> Vec<EntityRef> {
    let mut out = Vec::new();
    let mut push_board = |side: Side, beast_only: bool| {
        for (i, m) in state.player(side).board.iter().enumerate() {
            if !beast_only || cards::def(m.card).tribe == Tribe::Beast {
                out.push(EntityRef::minion(side, i));
            }
        }
    };
    match rule {
        TargetRule::None => {}
        TargetRule::AnyMinion => {
            push_board(Side::Active, false);
            push_board(Side::Opponent, false);
        }
        TargetRule::FriendlyMinion => push_board(Side::Active, false),
        TargetRule::EnemyMinion => push_board(Side::Opponent, false),
        TargetRule::AnyBeast => {
            push_board(Side::Active, true);
            push_board(Side::Opponent, true);
        }
    }
    out
}

pub(crate) fn board_has_room(state: &GameState, side: Side) -> bool {
    match state.mode.board_cap() {
        Some(cap) => state.player(side).board.len() < cap,
        None => true,
    }
}

/// Defenders the given attacker may strike: taunt minions only while one is
/// alive, otherwise any enemy minion plus the enemy hero (minions barred
/// from heroes this turn excepted).
pub(crate) fn attackable_defenders(state: &GameState, attacker: EntityRef) -> Vec<EntityRef> {
    let enemy = state.player(Side::Opponent);
    let taunts: Vec<usize> = enemy
        .board
        .iter()
        .enumerate()
        .filter(|(_, m)| m.taunt())
        .map(|(i, _)| i)
        .collect();
    if !taunts.is_empty() {
        return taunts
            .into_iter()
            .map(|i| EntityRef::minion(Side::Opponent, i))
            .collect();
    }
    let mut out: Vec<EntityRef> = (0..enemy.board.len())
        .map(|i| EntityRef::minion(Side::Opponent, i))
        .collect();
    let face_barred = match attacker.entity {
        Entity::Minion(i) => state.active.board[i].cannot_attack_heroes,
        Entity::Hero => false,
    };
    if !face_barred {
        out.push(EntityRef::hero(Side::Opponent));
    }
    out
}

/// Enumerate every action whose application succeeds in this state (random
/// card generators included: they fail only with a policy error). Returns
/// nothing once the game has a result.
pub fn legal_actions(state: &GameState) -> Vec<Action> {
    enumerate_plays(state, false)
}

/// Shared enumerator. With `canonical_positions` set, minion plays are only
/// generated at the right end of the board; the solver uses this when board
/// positions provably cannot matter.
pub(crate) fn enumerate_plays(state: &GameState, canonical_positions: bool) -> Vec<Action> {
    if !state.is_ongoing() {
        return Vec::new();
    }
    let mut actions = Vec::new();

    // Card plays.
    for hand_index in 0..state.active.hand.len() {
        let def = cards::def(state.active.hand[hand_index].card);
        if dynamic_cost(state, hand_index) > state.active.mana_available {
            continue;
        }
        match def.kind {
            CardKind::Minion => {
                if !board_has_room(state, Side::Active) {
                    continue;
                }
                let positions: Vec<usize> = if canonical_positions {
                    vec![state.active.board.len()]
                } else {
                    (0..=state.active.board.len()).collect()
                };
                let targets = battlecry_targets(state, def.effect.target);
                for &position in &positions {
                    for &target in &targets {
                        actions.push(Action::PlayCard {
                            hand_index,
                            position: Some(position),
                            target,
                        });
                    }
                }
            }
            CardKind::Spell => {
                if def.effect.target == TargetRule::None {
                    actions.push(Action::PlayCard { hand_index, position: None, target: None });
                } else {
                    // A targeted spell with nothing to point at is unplayable.
                    for target in valid_targets(state, def.effect.target) {
                        actions.push(Action::PlayCard {
                            hand_index,
                            position: None,
                            target: Some(target),
                        });
                    }
                }
            }
            CardKind::Weapon => {
                actions.push(Action::PlayCard { hand_index, position: None, target: None });
            }
        }
    }

    // Attacks.
    for (i, m) in state.active.board.iter().enumerate() {
        if !m.can_attack() {
            continue;
        }
        let attacker = EntityRef::minion(Side::Active, i);
        for defender in attackable_defenders(state, attacker) {
            actions.push(Action::Attack { attacker, defender });
        }
    }
    let hero = &state.active.hero;
    if hero.own_turn_attack() >= 1 && hero.attacks_used < 1 {
        let attacker = EntityRef::hero(Side::Active);
        for defender in attackable_defenders(state, attacker) {
            actions.push(Action::Attack { attacker, defender });
        }
    }

    // Hero power.
    if let Some(power) = hero.hero.power() {
        if !hero.hero_power_used && state.active.mana_available >= 2 {
            match power {
                HeroPower::Fireblast | HeroPower::LesserHeal => {
                    for target in character_targets(state) {
                        actions.push(Action::HeroPower { target: Some(target) });
                    }
                }
                HeroPower::Reinforce => {
                    if board_has_room(state, Side::Active) {
                        actions.push(Action::HeroPower { target: None });
                    }
                }
            }
        }
    }

    actions.push(Action::EndTurn);
    actions
}

/// Battlecry target choices for a minion play: every valid target when any
/// exist, otherwise the single no-target (fizzled) play.
fn battlecry_targets(state: &GameState, rule: TargetRule) -> Vec<Option<EntityRef>> {
    if rule == TargetRule::None {
        return vec![None];
    }
    let targets = valid_targets(state, rule);
    if targets.is_empty() {
        vec![None]
    } else {
        targets.into_iter().map(Some).collect()
    }
}

/// Every character: both heroes and all minions on both boards.
pub(crate) fn character_targets(state: &GameState) -> Vec<EntityRef> {
    let mut out = vec![EntityRef::hero(Side::Active), EntityRef::hero(Side::Opponent)];
    for side in [Side::Active, Side::Opponent] {
        for i in 0..state.player(side).board.len() {
            out.push(EntityRef::minion(side, i));
        }
    }
    out
}
