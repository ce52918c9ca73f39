//! Action application with full trigger and death resolution.
//!
//! Resolution order is fixed and documented so the engine is deterministic:
//! battlecries fire after the minion is placed (twice while Brann is on the
//! acting board, with deaths processed after each firing); dead minions are
//! removed one at a time in board order (active board first), and each death
//! event fires its deathrattle, then Cult Master draws, then in-hand Bolvar
//! gains, before the next dead minion is removed.

use crate::cards::{
    self, Battlecry, CardId, CardKind, Deathrattle, SpellOp, TargetRule,
};

use super::actions::{attackable_defenders, board_has_room, dynamic_cost, valid_targets};
use super::state::{
    Action, EngineError, Entity, EntityRef, GameResult, GameState, HeroPower, MinionInstance,
    NondeterminismPolicy, Side,
};

/// Low-level state-change record emitted by [`apply_action_traced`]. Consumers
/// that need to follow card identities through a replay (certificate
/// extraction) mirror these events onto their own bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    /// The active player's hand card at `index` left the hand by being played.
    HandCardPlayed { index: usize },
    /// A minion was inserted at `position`. `from_hand` is true for plays,
    /// false for summons produced by the resolving card or hero power.
    MinionEntered { side: Side, position: usize, card: CardId, from_hand: bool },
    /// The minion at `position` left the board.
    MinionRemoved { side: Side, position: usize },
    /// An attack was declared (positions refer to the pre-combat state).
    AttackDeclared { attacker: EntityRef, defender: EntityRef },
    /// The top card of `side`'s deck moved to the end of their hand.
    CardDrawn { side: Side },
    /// The top card of `side`'s deck was burnt against a full hand.
    CardBurned { side: Side },
    /// A scripted generation appended `card` to `side`'s hand.
    CardGenerated { side: Side, card: CardId },
}

struct Ctx<'a> {
    policy: &'a mut NondeterminismPolicy,
    trace: Option<&'a mut Vec<TraceEvent>>,
}

impl Ctx<'_> {
    fn emit(&mut self, ev: TraceEvent) {
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(ev);
        }
    }

    fn next_outcome(&mut self, card: CardId, want: CardKind) -> Result<CardId, EngineError> {
        match self.policy {
            NondeterminismPolicy::Forbidden => Err(EngineError::RandomEffectForbidden { card }),
            NondeterminismPolicy::Scripted(queue) => {
                let outcome = queue
                    .pop_front()
                    .ok_or(EngineError::ScriptExhausted { card })?;
                if cards::def(outcome).kind != want {
                    return Err(EngineError::ScriptTypeMismatch { card, outcome });
                }
                Ok(outcome)
            }
        }
    }
}

/// Apply one action, returning the fully resolved successor state.
///
/// The action must be legal; illegal actions and policy violations are
/// reported as errors and leave the input untouched.
pub fn apply_action(
    state: &GameState,
    action: &Action,
    policy: &mut NondeterminismPolicy,
) -> Result<GameState, EngineError> {
    let mut next = state.clone();
    let mut ctx = Ctx { policy, trace: None };
    apply_inner(&mut next, action, &mut ctx)?;
    Ok(next)
}

/// Like [`apply_action`], also returning the ordered trace of state changes.
pub fn apply_action_traced(
    state: &GameState,
    action: &Action,
    policy: &mut NondeterminismPolicy,
) -> Result<(GameState, Vec<TraceEvent>), EngineError> {
    let mut next = state.clone();
    let mut events = Vec::new();
    let mut ctx = Ctx { policy, trace: Some(&mut events) };
    apply_inner(&mut next, action, &mut ctx)?;
    Ok((next, events))
}

/// Draw cards for the active player: top of deck to end of hand, burning
/// against a full hand, with escalating fatigue damage once the deck is out.
pub fn draw(state: &GameState, count: usize) -> GameState {
    let mut next = state.clone();
    let mut ctx = Ctx { policy: &mut NondeterminismPolicy::Forbidden, trace: None };
    draw_cards(&mut next, Side::Active, count, &mut ctx);
    finalize_result(&mut next);
    next
}

/// Summon a fresh minion at `position` (at most the board length). Fizzles
/// into a no-op when the board is at its cap.
pub fn summon(state: &GameState, side: Side, position: usize, card: CardId) -> GameState {
    let mut next = state.clone();
    let mut ctx = Ctx { policy: &mut NondeterminismPolicy::Forbidden, trace: None };
    summon_at(&mut next, side, position, card, &mut ctx);
    next
}

/// Remove dead minions and resolve their triggers until no minion is dead.
pub fn process_deaths(state: &GameState) -> GameState {
    let mut next = state.clone();
    let mut ctx = Ctx { policy: &mut NondeterminismPolicy::Forbidden, trace: None };
    process_deaths_inner(&mut next, &mut ctx, &mut []);
    finalize_result(&mut next);
    next
}

fn illegal(why: impl Into<String>) -> EngineError {
    EngineError::IllegalAction(why.into())
}

fn apply_inner(state: &mut GameState, action: &Action, ctx: &mut Ctx) -> Result<(), EngineError> {
    if !state.is_ongoing() {
        return Err(EngineError::GameFinished);
    }
    match *action {
        Action::PlayCard { hand_index, position, target } => {
            play_card(state, hand_index, position, target, ctx)?
        }
        Action::Attack { attacker, defender } => attack(state, attacker, defender, ctx)?,
        Action::HeroPower { target } => hero_power(state, target, ctx)?,
        Action::EndTurn => {
            // Single-turn puzzle: ending the turn forfeits it.
            state.result = GameResult::ActiveLost;
        }
    }
    finalize_result(state);
    debug_assert_eq!(state.validate(), Ok(()));
    Ok(())
}

fn finalize_result(state: &mut GameState) {
    if state.result != GameResult::Ongoing {
        return;
    }
    if state.active.hero.health <= 0 {
        // A simultaneous double knockout is a loss for the acting player.
        state.result = GameResult::ActiveLost;
    } else if state.opponent.hero.health <= 0 {
        state.result = GameResult::ActiveWon;
    }
}

fn resolve_minion<'s>(
    state: &'s mut GameState,
    target: EntityRef,
) -> Result<&'s mut MinionInstance, EngineError> {
    match target.entity {
        Entity::Minion(i) => state
            .player_mut(target.side)
            .board
            .get_mut(i)
            .ok_or_else(|| illegal("target names a minion position that is not on the board")),
        Entity::Hero => Err(illegal("effect requires a minion target")),
    }
}

fn check_target_rule(
    state: &GameState,
    rule: TargetRule,
    target: Option<EntityRef>,
) -> Result<(), EngineError> {
    match (rule, target) {
        (TargetRule::None, None) => Ok(()),
        (TargetRule::None, Some(_)) => Err(illegal("card takes no target")),
        (rule, Some(t)) => {
            if valid_targets(state, rule).contains(&t) {
                Ok(())
            } else {
                Err(illegal("target does not satisfy the card's target rule"))
            }
        }
        (rule, None) => {
            if valid_targets(state, rule).is_empty() {
                Ok(())
            } else {
                Err(illegal("a valid target exists and must be chosen"))
            }
        }
    }
}

fn play_card(
    state: &mut GameState,
    hand_index: usize,
    position: Option<usize>,
    target: Option<EntityRef>,
    ctx: &mut Ctx,
) -> Result<(), EngineError> {
    let hc = *state
        .active
        .hand
        .get(hand_index)
        .ok_or_else(|| illegal("hand index out of range"))?;
    let def = cards::def(hc.card);
    let cost = dynamic_cost(state, hand_index);
    if cost > state.active.mana_available {
        return Err(illegal("not enough mana"));
    }

    match def.kind {
        CardKind::Minion => {
            if !board_has_room(state, Side::Active) {
                return Err(illegal("board is full"));
            }
            let insert_at = position.unwrap_or(state.active.board.len());
            if insert_at > state.active.board.len() {
                return Err(illegal("board position out of range"));
            }
            check_target_rule(state, def.effect.target, target)?;

            state.active.mana_available -= cost;
            state.active.hand.remove(hand_index);
            ctx.emit(TraceEvent::HandCardPlayed { index: hand_index });

            let mut minion = MinionInstance::fresh(hc.card);
            minion.attack += hc.bolvar_bonus_attack;
            state.active.board.insert(insert_at, minion);
            ctx.emit(TraceEvent::MinionEntered {
                side: Side::Active,
                position: insert_at,
                card: hc.card,
                from_hand: true,
            });

            if let Some(battlecry) = def.effect.battlecry {
                // Shift a pre-play target to account for the insertion.
                let target = target.map(|t| match t.entity {
                    Entity::Minion(i) if t.side == Side::Active && i >= insert_at => {
                        EntityRef::minion(t.side, i + 1)
                    }
                    _ => t,
                });
                fire_battlecry(state, insert_at, battlecry, target, ctx)?;
            }
        }
        CardKind::Spell => {
            check_target_rule(state, def.effect.target, target)?;
            if def.effect.target != TargetRule::None && target.is_none() {
                return Err(illegal("spell requires a target"));
            }
            state.active.mana_available -= cost;
            state.active.hand.remove(hand_index);
            ctx.emit(TraceEvent::HandCardPlayed { index: hand_index });
            state.spells_cast_this_game += 1;
            for op in def.effect.spell {
                run_spell_op(state, hc.card, *op, target, ctx)?;
            }
        }
        CardKind::Weapon => {
            if target.is_some() {
                return Err(illegal("weapons take no target"));
            }
            state.active.mana_available -= cost;
            state.active.hand.remove(hand_index);
            ctx.emit(TraceEvent::HandCardPlayed { index: hand_index });
            state.active.hero.weapon = Some(super::state::Weapon {
                attack: def.base_attack,
                durability: def.durability,
            });
        }
    }
    process_deaths_inner(state, ctx, &mut []);
    Ok(())
}

/// Fire a battlecry once, or twice while Brann Bronzebeard is on the acting
/// board. The trigger count is fixed before the first firing; deaths are
/// processed after each firing, with the played minion's position tracked
/// through removals.
fn fire_battlecry(
    state: &mut GameState,
    played_at: usize,
    battlecry: Battlecry,
    target: Option<EntityRef>,
    ctx: &mut Ctx,
) -> Result<(), EngineError> {
    let triggers = if state
        .active
        .board
        .iter()
        .any(|m| m.card == CardId::BrannBronzebeard && m.current_health >= 1)
    {
        2
    } else {
        1
    };

    // Track the played minion and the battlecry target across removals.
    let mut tracked = [
        Some((Side::Active, played_at)),
        target.and_then(|t| match t.entity {
            Entity::Minion(i) => Some((t.side, i)),
            Entity::Hero => None,
        }),
    ];

    for _ in 0..triggers {
        let Some((_, my_pos)) = tracked[0] else {
            break; // the played minion died mid-resolution
        };
        match battlecry {
            Battlecry::SwapAttackHealth => {
                if let Some((side, pos)) = tracked[1] {
                    let m = &mut state.player_mut(side).board[pos];
                    let (attack, health) = (m.attack, m.current_health);
                    m.attack = health;
                    m.current_health = attack;
                    m.max_health = attack;
                }
            }
            Battlecry::DestroyAdjacentGainStats => {
                let board = &mut state.active.board;
                let mut gain_attack = 0;
                let mut gain_health = 0;
                let mut doomed: Vec<usize> = Vec::new();
                if my_pos > 0 {
                    doomed.push(my_pos - 1);
                }
                if my_pos + 1 < board.len() {
                    doomed.push(my_pos + 1);
                }
                for &i in &doomed {
                    gain_attack += board[i].attack;
                    gain_health += board[i].current_health;
                    board[i].current_health = 0;
                }
                let me = &mut board[my_pos];
                me.attack += gain_attack;
                me.current_health += gain_health;
                me.max_health += gain_health;
            }
            Battlecry::AddRandomSpellToEachHand => {
                for side in [Side::Active, Side::Opponent] {
                    let outcome = ctx.next_outcome(CardId::Spellslinger, CardKind::Spell)?;
                    add_generated_card(state, side, outcome, 0, ctx);
                }
            }
        }
        process_deaths_inner(state, ctx, &mut tracked);
    }
    Ok(())
}

fn run_spell_op(
    state: &mut GameState,
    card: CardId,
    op: SpellOp,
    target: Option<EntityRef>,
    ctx: &mut Ctx,
) -> Result<(), EngineError> {
    match op {
        SpellOp::Buff { attack, health } => {
            let m = resolve_minion(state, target.expect("validated target"))?;
            m.attack += attack;
            m.current_health += health;
            m.max_health += health;
        }
        SpellOp::DoubleAttack => {
            let m = resolve_minion(state, target.expect("validated target"))?;
            m.attack *= 2;
        }
        SpellOp::GrantChargeNoFace => {
            let m = resolve_minion(state, target.expect("validated target"))?;
            m.has_charge = true;
            m.cannot_attack_heroes = true;
        }
        SpellOp::GainTempMana(n) => {
            if state.mode.temp_mana_uncapped() {
                state.active.mana_available += n;
            } else if state.active.mana_available < 10 {
                state.active.mana_available = (state.active.mana_available + n).min(10);
            }
        }
        SpellOp::Draw(n) => draw_cards(state, Side::Active, n, ctx),
        SpellOp::SummonDeadMurlocs(cap) => {
            let dead: Vec<CardId> = state.murloc_graveyard.iter().copied().take(cap).collect();
            for token in dead {
                let at = state.active.board.len();
                if !summon_at(state, Side::Active, at, token, ctx) {
                    break;
                }
            }
        }
        SpellOp::DestroyEnemyMinion => {
            let m = resolve_minion(state, target.expect("validated target"))?;
            m.current_health = 0;
            process_deaths_inner(state, ctx, &mut []);
        }
        SpellOp::ImmuneAndBuffAttack(attack) => {
            let m = resolve_minion(state, target.expect("validated target"))?;
            m.attack += attack;
            m.immune_this_turn = true;
        }
        SpellOp::AddRandomMageSpells(n) => {
            for _ in 0..n {
                let outcome = ctx.next_outcome(card, CardKind::Spell)?;
                add_generated_card(state, Side::Active, outcome, 0, ctx);
            }
        }
        SpellOp::AddRandomMinionDiscounted { discount } => {
            let outcome = ctx.next_outcome(card, CardKind::Minion)?;
            add_generated_card(state, Side::Active, outcome, discount, ctx);
        }
    }
    Ok(())
}

/// Append a generated card to a hand; against a full hand the card vanishes.
fn add_generated_card(
    state: &mut GameState,
    side: Side,
    card: CardId,
    cost_discount: i64,
    ctx: &mut Ctx,
) {
    let cap = state.mode.hand_cap();
    let hand = &mut state.player_mut(side).hand;
    if cap.is_none_or(|c| hand.len() < c) {
        hand.push(super::state::HandCard { card, bolvar_bonus_attack: 0, cost_discount });
        ctx.emit(TraceEvent::CardGenerated { side, card });
    }
}

fn attack(
    state: &mut GameState,
    attacker: EntityRef,
    defender: EntityRef,
    ctx: &mut Ctx,
) -> Result<(), EngineError> {
    if attacker.side != Side::Active {
        return Err(illegal("only the active player attacks"));
    }
    if defender.side != Side::Opponent {
        return Err(illegal("attacks target the opposing side"));
    }
    let attack_value = match attacker.entity {
        Entity::Minion(i) => {
            let m = state
                .active
                .board
                .get(i)
                .ok_or_else(|| illegal("attacker position is not on the board"))?;
            if !m.can_attack() {
                return Err(illegal("minion cannot attack"));
            }
            m.attack
        }
        Entity::Hero => {
            let hero = &state.active.hero;
            if hero.own_turn_attack() < 1 || hero.attacks_used >= 1 {
                return Err(illegal("hero cannot attack"));
            }
            hero.own_turn_attack()
        }
    };
    if !attackable_defenders(state, attacker).contains(&defender) {
        return Err(illegal("defender is not attackable (taunt or hero restriction)"));
    }
    ctx.emit(TraceEvent::AttackDeclared { attacker, defender });

    // Both characters deal their attack simultaneously; a defending hero's
    // weapon is sheathed (zero attack on the opponent's turn).
    let retaliation = match defender.entity {
        Entity::Minion(i) => {
            let d = &mut state.opponent.board[i];
            if !d.immune_this_turn {
                d.current_health -= attack_value;
            }
            d.attack
        }
        Entity::Hero => {
            state.opponent.hero.health -= attack_value;
            0
        }
    };
    match attacker.entity {
        Entity::Minion(i) => {
            let a = &mut state.active.board[i];
            if !a.immune_this_turn {
                a.current_health -= retaliation;
            }
            a.attacks_used += 1;
        }
        Entity::Hero => {
            let hero = &mut state.active.hero;
            hero.health -= retaliation;
            hero.attacks_used += 1;
            if let Some(w) = hero.weapon.as_mut() {
                w.durability -= 1;
                if w.durability <= 0 {
                    hero.weapon = None;
                }
            }
        }
    }
    process_deaths_inner(state, ctx, &mut []);
    Ok(())
}

fn hero_power(
    state: &mut GameState,
    target: Option<EntityRef>,
    ctx: &mut Ctx,
) -> Result<(), EngineError> {
    let power = state
        .active
        .hero
        .hero
        .power()
        .ok_or_else(|| illegal("this hero's power is not available"))?;
    if state.active.hero.hero_power_used {
        return Err(illegal("hero power already used this turn"));
    }
    if state.active.mana_available < 2 {
        return Err(illegal("not enough mana for the hero power"));
    }
    match power {
        HeroPower::Fireblast => {
            let t = target.ok_or_else(|| illegal("power requires a target"))?;
            damage_character(state, t, 1)?;
        }
        HeroPower::LesserHeal => {
            let t = target.ok_or_else(|| illegal("power requires a target"))?;
            heal_character(state, t, 2)?;
        }
        HeroPower::Reinforce => {
            if target.is_some() {
                return Err(illegal("power takes no target"));
            }
            if !board_has_room(state, Side::Active) {
                return Err(illegal("board is full"));
            }
            let at = state.active.board.len();
            summon_at(state, Side::Active, at, CardId::SilverHandRecruit, ctx);
        }
    }
    state.active.mana_available -= 2;
    state.active.hero.hero_power_used = true;
    process_deaths_inner(state, ctx, &mut []);
    Ok(())
}

fn damage_character(state: &mut GameState, target: EntityRef, amount: i64) -> Result<(), EngineError> {
    match target.entity {
        Entity::Minion(_) => {
            let m = resolve_minion(state, target)?;
            if !m.immune_this_turn {
                m.current_health -= amount;
            }
        }
        Entity::Hero => state.player_mut(target.side).hero.health -= amount,
    }
    Ok(())
}

fn heal_character(state: &mut GameState, target: EntityRef, amount: i64) -> Result<(), EngineError> {
    match target.entity {
        Entity::Minion(_) => {
            let m = resolve_minion(state, target)?;
            m.current_health = (m.current_health + amount).min(m.max_health);
        }
        Entity::Hero => {
            let hero = &mut state.player_mut(target.side).hero;
            hero.health = (hero.health + amount).min(hero.max_health);
        }
    }
    Ok(())
}

fn draw_cards(state: &mut GameState, side: Side, count: usize, ctx: &mut Ctx) {
    let hand_cap = state.mode.hand_cap();
    for _ in 0..count {
        let player = state.player_mut(side);
        if player.deck.is_empty() {
            player.fatigue_counter += 1;
            player.hero.health -= i64::from(player.fatigue_counter);
            continue;
        }
        let hand_full = hand_cap.is_some_and(|c| player.hand.len() >= c);
        let card = player.deck.remove(0);
        if hand_full {
            // Burnt: removed from the game entirely.
            ctx.emit(TraceEvent::CardBurned { side });
        } else {
            player.hand.push(super::state::HandCard::new(card));
            ctx.emit(TraceEvent::CardDrawn { side });
        }
    }
}

/// Insert a fresh minion; returns false when the summon fizzled on a full
/// board.
fn summon_at(state: &mut GameState, side: Side, position: usize, card: CardId, ctx: &mut Ctx) -> bool {
    if !board_has_room(state, side) {
        return false;
    }
    let board = &mut state.player_mut(side).board;
    let position = position.min(board.len());
    board.insert(position, MinionInstance::fresh(card));
    ctx.emit(TraceEvent::MinionEntered { side, position, card, from_hand: false });
    true
}

/// Remove dead minions to a fixpoint.
///
/// Scan order is active board left to right, then opponent board. For each
/// death: remove the minion, fire its deathrattle, let the controller's
/// surviving Cult Masters draw, then grant +1 attack to Bolvars in the
/// controller's hand. `tracked` positions are kept current across removals
/// (entries become `None` when their minion is removed).
fn process_deaths_inner(
    state: &mut GameState,
    ctx: &mut Ctx,
    tracked: &mut [Option<(Side, usize)>],
) {
    loop {
        let dead = [Side::Active, Side::Opponent].into_iter().find_map(|side| {
            state
                .player(side)
                .board
                .iter()
                .position(|m| m.current_health <= 0)
                .map(|i| (side, i))
        });
        let Some((side, pos)) = dead else { break };

        let minion = state.player_mut(side).board.remove(pos);
        ctx.emit(TraceEvent::MinionRemoved { side, position: pos });
        for t in tracked.iter_mut() {
            if let Some((ts, tp)) = t {
                if *ts == side {
                    if *tp == pos {
                        *t = None;
                    } else if *tp > pos {
                        *tp -= 1;
                    }
                }
            }
        }

        state.minions_died_total += 1;
        if side == Side::Active {
            state.minions_died_active += 1;
        }
        if cards::def(minion.card).tribe == cards::Tribe::Murloc {
            state.murloc_graveyard.push(minion.card);
        }

        if let Some(rattle) = cards::def(minion.card).effect.deathrattle {
            match rattle {
                Deathrattle::DamageAllMinions(amount) => {
                    for s in [Side::Active, Side::Opponent] {
                        for m in &mut state.player_mut(s).board {
                            if !m.immune_this_turn {
                                m.current_health -= amount;
                            }
                        }
                    }
                }
                Deathrattle::RestoreEachHero(amount) => {
                    for s in [Side::Active, Side::Opponent] {
                        let hero = &mut state.player_mut(s).hero;
                        hero.health = (hero.health + amount).min(hero.max_health);
                    }
                }
            }
        }

        // Cult Master: only masters still alive at this point draw.
        let cult_masters = state
            .player(side)
            .board
            .iter()
            .filter(|m| m.card == CardId::CultMaster && m.current_health >= 1)
            .count();
        if cult_masters > 0 {
            draw_cards(state, side, cult_masters, ctx);
        }

        for hc in &mut state.player_mut(side).hand {
            if hc.card == CardId::BolvarFordragon {
                hc.bolvar_bonus_attack += 1;
            }
        }
    }
}
