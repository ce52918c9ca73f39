//! Canonical state encoding.
//!
//! Two states get equal keys exactly when they are identical up to hand
//! reordering: the hand is treated as a multiset of (card, bolvar bonus,
//! cost discount), while board order, deck order, and every counter are
//! encoded verbatim. The key is an opaque byte string, a pure function of
//! the state.

use super::state::{GameResult, GameState, PlayerState, ScalingMode, Side};

fn push_i64(buf: &mut Vec<u8>, v: i64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn push_len(buf: &mut Vec<u8>, v: usize) {
    buf.extend_from_slice(&(v as u32).to_le_bytes());
}

fn encode_player(buf: &mut Vec<u8>, p: &PlayerState) {
    buf.push(p.hero.hero as u8);
    push_i64(buf, p.hero.health);
    push_i64(buf, p.hero.max_health);
    match p.hero.weapon {
        Some(w) => {
            buf.push(1);
            push_i64(buf, w.attack);
            push_i64(buf, w.durability);
        }
        None => buf.push(0),
    }
    buf.push(u8::from(p.hero.hero_power_used));
    buf.push(p.hero.attacks_used.min(255) as u8);
    push_i64(buf, p.mana_available);
    push_i64(buf, p.mana_crystals);
    buf.extend_from_slice(&p.fatigue_counter.to_le_bytes());

    // Hand as a sorted multiset.
    let mut hand: Vec<(u8, i64, i64)> = p
        .hand
        .iter()
        .map(|h| (h.card.ordinal(), h.bolvar_bonus_attack, h.cost_discount))
        .collect();
    hand.sort_unstable();
    push_len(buf, hand.len());
    for (card, bonus, discount) in hand {
        buf.push(card);
        push_i64(buf, bonus);
        push_i64(buf, discount);
    }

    push_len(buf, p.deck.len());
    for card in &p.deck {
        buf.push(card.ordinal());
    }

    push_len(buf, p.board.len());
    for m in &p.board {
        buf.push(m.card.ordinal());
        push_i64(buf, m.attack);
        push_i64(buf, m.current_health);
        push_i64(buf, m.max_health);
        let flags = u8::from(m.frozen)
            | u8::from(m.has_charge) << 1
            | u8::from(m.cannot_attack_heroes) << 2
            | u8::from(m.summoned_this_turn) << 3
            | u8::from(m.immune_this_turn) << 4
            | u8::from(m.attacks_used > 0) << 5;
        buf.push(flags);
    }
}

/// Canonical key for solver memoization and state identity checks.
pub fn canonical_key(state: &GameState) -> Vec<u8> {
    let mut buf = Vec::with_capacity(256);
    buf.push(match state.mode {
        ScalingMode::BoardScaled => 0,
        ScalingMode::HandScaled => 1,
        ScalingMode::DeckScaled => 2,
    });
    buf.push(match state.result {
        GameResult::Ongoing => 0,
        GameResult::ActiveWon => 1,
        GameResult::ActiveLost => 2,
    });
    buf.push(u8::from(state.enemy_spells_cost_zero));
    buf.extend_from_slice(&state.minions_died_active.to_le_bytes());
    buf.extend_from_slice(&state.minions_died_total.to_le_bytes());
    buf.extend_from_slice(&state.spells_cast_this_game.to_le_bytes());
    push_len(&mut buf, state.murloc_graveyard.len());
    for card in &state.murloc_graveyard {
        buf.push(card.ordinal());
    }
    for side in [Side::Active, Side::Opponent] {
        encode_player(&mut buf, state.player(side));
    }
    buf
}
