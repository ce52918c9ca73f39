//! Engine behavior tests: legality, costs, combat, triggers, draws, goals,
//! and canonical keys.

use crate::cards::CardId;

use super::*;

/// Bare two-hero state with 10 mana in the given mode.
pub(crate) fn base_state(mode: ScalingMode, active: HeroId, opponent: HeroId) -> GameState {
    GameState::new(
        mode,
        PlayerState::new(HeroState::new(active, 30)),
        PlayerState::new(HeroState::new(opponent, 30)),
    )
}

pub(crate) fn minion(card: CardId, attack: i64, health: i64) -> MinionInstance {
    MinionInstance::established(card, attack, health)
}

fn apply_ok(state: &GameState, action: Action) -> GameState {
    apply_action(state, &action, &mut NondeterminismPolicy::Forbidden).expect("legal action")
}

fn attack_actions_from(state: &GameState, pos: usize) -> Vec<Action> {
    legal_actions(state)
        .into_iter()
        .filter(|a| {
            matches!(a, Action::Attack { attacker, .. }
                if *attacker == EntityRef::minion(Side::Active, pos))
        })
        .collect()
}

#[test]
fn frozen_minions_cannot_attack() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board.push(minion(CardId::BloodfenRaptor, 3, 2).frozen());
    assert!(attack_actions_from(&s, 0).is_empty());
}

#[test]
fn taunt_restricts_attack_targets() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    s.opponent.board.push(minion(CardId::EvilHeckler, 5, 4)); // taunt
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));

    let attacks = attack_actions_from(&s, 0);
    assert_eq!(
        attacks,
        vec![Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        }],
        "only the taunt is attackable, never the non-taunt or the hero"
    );
}

#[test]
fn summoning_sickness_blocks_attacks_without_charge() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board.push(MinionInstance::fresh(CardId::PitFighter));
    assert!(attack_actions_from(&s, 0).is_empty());

    // Charge lets a fresh minion attack.
    s.active.board.push(MinionInstance::fresh(CardId::BluegillWarrior));
    assert!(!attack_actions_from(&s, 1).is_empty());
}

#[test]
fn solemn_vigil_cost_discounts_per_death() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::SolemnVigil));

    s.minions_died_total = 3;
    assert_eq!(dynamic_cost(&s, 0), 2);

    s.minions_died_total = 7;
    assert_eq!(dynamic_cost(&s, 0), 0, "cost floors at zero");

    s.minions_died_total = 0;
    s.enemy_spells_cost_zero = true;
    assert_eq!(dynamic_cost(&s, 0), 0, "free spells override everything");
}

#[test]
fn generated_minion_discount_applies() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard {
        card: CardId::Spellslinger,
        bolvar_bonus_attack: 0,
        cost_discount: 3,
    });
    assert_eq!(dynamic_cost(&s, 0), 0);
    s.enemy_spells_cost_zero = true;
    assert_eq!(dynamic_cost(&s, 0), 0, "minions are not spells but discount already floors");
}

#[test]
fn combat_is_simultaneous() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board.push(minion(CardId::BloodfenRaptor, 4, 3));
    s.opponent.board.push(minion(CardId::EvilHeckler, 5, 12));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert!(next.active.board.is_empty(), "attacker took 5 with 3 health");
    assert_eq!(next.opponent.board[0].current_health, 8);
    assert_eq!(next.minions_died_active, 1);
    assert_eq!(next.minions_died_total, 1);
}

#[test]
fn combat_conservation_before_deaths() {
    // Attack between minions moves total board health down by exactly
    // attacker.attack + defender.attack (measured before removal).
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board.push(minion(CardId::BoulderfistOgre, 6, 7));
    s.opponent.board.push(minion(CardId::PitFighter, 5, 6));
    let before: i64 = 7 + 6;
    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    let after: i64 = next.active.board.iter().map(|m| m.current_health).sum::<i64>()
        + next.opponent.board.iter().map(|m| m.current_health).sum::<i64>();
    assert_eq!(before - after, 6 + 5);
}

#[test]
fn weapon_attack_into_taunt_kills_the_fragile_hero() {
    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    s.active.hero.health = 1;
    s.active.hero.weapon = Some(Weapon { attack: 1, durability: 4 });
    s.opponent.board.push(minion(CardId::EvilHeckler, 5, 12));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::hero(Side::Active),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert_eq!(next.result, GameResult::ActiveLost);
    assert_eq!(next.opponent.board[0].current_health, 11);
}

#[test]
fn weapon_durability_decrements_and_breaks() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hero.weapon = Some(Weapon { attack: 1, durability: 1 });
    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::hero(Side::Active),
            defender: EntityRef::hero(Side::Opponent),
        },
    );
    assert_eq!(next.opponent.hero.health, 29);
    assert!(next.active.hero.weapon.is_none(), "weapon breaks at zero durability");
    assert_eq!(next.active.hero.health, 30, "defending heroes deal no damage back");
}

#[test]
fn blessing_of_kings_buffs_the_target() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::BlessingOfKings));
    s.active.board.push(minion(CardId::Duskboar, 4, 1));

    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: None,
            target: Some(EntityRef::minion(Side::Active, 0)),
        },
    );
    let m = &next.active.board[0];
    assert_eq!((m.attack, m.current_health, m.max_health), (8, 5, 5));
    assert_eq!(next.active.mana_available, 6);
    assert_eq!(next.spells_cast_this_game, 1);
}

#[test]
fn charge_spell_grants_charge_but_not_face() {
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::Charge));
    s.active.board.push(MinionInstance::fresh(CardId::BolvarFordragon));

    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: None,
            target: Some(EntityRef::minion(Side::Active, 0)),
        },
    );
    let m = &next.active.board[0];
    assert_eq!(m.attack, 3, "plus two attack");
    assert!(m.has_charge);
    assert!(m.cannot_attack_heroes);

    // It may attack minions but not the hero.
    let mut with_enemy = next.clone();
    with_enemy.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    let attacks = attack_actions_from(&with_enemy, 0);
    assert_eq!(attacks.len(), 1);
    assert!(matches!(
        attacks[0],
        Action::Attack { defender: EntityRef { side: Side::Opponent, entity: Entity::Minion(0) }, .. }
    ));
}

#[test]
fn innervate_respects_the_crystal_cap_outside_hand_scaling() {
    for (mode, expected) in [(ScalingMode::DeckScaled, 10), (ScalingMode::HandScaled, 11)] {
        let mut s = base_state(mode, HeroId::Uther, HeroId::Uther);
        s.active.hand.push(HandCard::new(CardId::Innervate));
        let next = apply_ok(&s, Action::PlayCard { hand_index: 0, position: None, target: None });
        assert_eq!(next.active.mana_available, expected, "{mode:?}");
    }
}

#[test]
fn draw_burns_against_a_full_hand() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand = vec![HandCard::new(CardId::PitFighter); 10];
    s.active.deck = vec![CardId::SolemnVigil, CardId::AnyfinCanHappen];

    let next = draw(&s, 1);
    assert_eq!(next.active.hand.len(), 10);
    assert_eq!(next.active.deck, vec![CardId::AnyfinCanHappen], "top card burnt");
}

#[test]
fn fatigue_escalates() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.deck.clear();
    let next = draw(&s, 3);
    assert_eq!(next.active.fatigue_counter, 3);
    assert_eq!(next.active.hero.health, 30 - (1 + 2 + 3));
}

#[test]
fn draw_two_into_room() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand = vec![HandCard::new(CardId::PitFighter); 8];
    s.active.deck = vec![CardId::SolemnVigil; 5];
    let next = draw(&s, 2);
    assert_eq!(next.active.hand.len(), 10);
    assert_eq!(next.active.deck.len(), 3);
    assert_eq!(next.active.hand[9].bolvar_bonus_attack, 0);
    assert_eq!(next.active.hand[9].cost_discount, 0);
}

#[test]
fn summon_fizzles_at_the_cap_and_not_beyond_it() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.board = vec![minion(CardId::BloodfenRaptor, 3, 2); 7];
    let next = summon(&s, Side::Active, 7, CardId::SilverHandRecruit);
    assert_eq!(next, s, "full deck-scaled board fizzles the summon");

    let mut big = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    big.active.board = vec![minion(CardId::Duskboar, 4, 3); 9];
    let next = summon(&big, Side::Active, 9, CardId::SilverHandRecruit);
    assert_eq!(next.active.board.len(), 10, "board-scaled cap is lifted");
    assert!(next.active.board[9].summoned_this_turn);
}

#[test]
fn anyfin_summons_up_to_the_open_slots() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::AnyfinCanHappen));
    s.active.board = vec![minion(CardId::BloodfenRaptor, 3, 2); 6];
    s.murloc_graveyard = vec![CardId::BluegillWarrior; 3];

    let next = apply_ok(&s, Action::PlayCard { hand_index: 0, position: None, target: None });
    assert_eq!(next.active.board.len(), 7, "exactly one bluegill fit");
    let bw = &next.active.board[6];
    assert_eq!(bw.card, CardId::BluegillWarrior);
    assert!(bw.has_charge && bw.summoned_this_turn);
}

#[test]
fn bolvar_gains_attack_in_hand_per_friendly_death() {
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard {
        card: CardId::BolvarFordragon,
        bolvar_bonus_attack: 2,
        cost_discount: 0,
    });
    s.active.board.push(minion(CardId::StonetuskBoar, 1, 1));
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert!(next.active.board.is_empty());
    assert_eq!(next.active.hand[0].bolvar_bonus_attack, 3);
}

#[test]
fn enemy_deaths_do_not_buff_bolvar() {
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::BolvarFordragon));
    s.active.board.push(minion(CardId::BoulderfistOgre, 6, 7));
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert_eq!(next.active.hand[0].bolvar_bonus_attack, 0);
}

#[test]
fn explosive_sheep_chains_to_a_fixpoint() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.opponent.board.push(minion(CardId::ExplosiveSheep, 1, 1));
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    s.active.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    s.active.board.push(minion(CardId::ExplosiveSheep, 1, 1));
    s.active.board.push(minion(CardId::BoulderfistOgre, 6, 7));

    // Kill the enemy sheep by attacking it with the raptor: its deathrattle
    // hits everything for 2, killing both raptors and our sheep, whose own
    // deathrattle then hits the ogre again.
    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert!(next.opponent.board.is_empty());
    assert_eq!(next.active.board.len(), 1);
    assert_eq!(next.active.board[0].card, CardId::BoulderfistOgre);
    assert_eq!(next.active.board[0].current_health, 7 - 2 - 2);
    assert_eq!(next.minions_died_total, 4);
}

#[test]
fn mistress_heal_caps_at_max_health() {
    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    s.active.hero.health = 28;
    s.active.hero.weapon = Some(Weapon { attack: 1, durability: 4 });
    let mut mistress = minion(CardId::MistressOfMixtures, 2, 2);
    mistress.current_health = 1;
    s.opponent.board.push(mistress);
    s.opponent.hero.health = 1;

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::hero(Side::Active),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    // 28 - 2 from the counterattack, +4 from the deathrattle.
    assert_eq!(next.active.hero.health, 30);
    assert_eq!(next.opponent.hero.health, 5.min(next.opponent.hero.max_health));
    assert!(next.opponent.board.is_empty());
}

#[test]
fn cult_master_draws_on_other_friendly_deaths_only() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.deck = vec![CardId::SolemnVigil; 4];
    s.active.board.push(minion(CardId::CultMaster, 4, 2).frozen());
    s.active.board.push(minion(CardId::StonetuskBoar, 1, 1));
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 1),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert_eq!(next.active.hand.len(), 1, "one draw for the boar's death");
    assert_eq!(next.active.deck.len(), 3);

    // A dying Cult Master does not draw for itself.
    let mut solo = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    solo.active.deck = vec![CardId::SolemnVigil; 4];
    solo.active.board.push(minion(CardId::CultMaster, 4, 1));
    solo.active.board[0].summoned_this_turn = false;
    solo.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    let after = apply_ok(
        &solo,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert!(after.active.board.is_empty());
    assert!(after.active.hand.is_empty());
}

#[test]
fn void_terror_absorbs_both_neighbors() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::VoidTerror));
    s.active.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    s.active.board.push(minion(CardId::StonetuskBoar, 1, 1));

    // Play between the two: position 1.
    let next = apply_ok(
        &s,
        Action::PlayCard { hand_index: 0, position: Some(1), target: None },
    );
    assert_eq!(next.active.board.len(), 1);
    let vt = &next.active.board[0];
    assert_eq!(vt.card, CardId::VoidTerror);
    assert_eq!(vt.attack, 3 + 3 + 1);
    assert_eq!(vt.current_health, 3 + 2 + 1);
    assert_eq!(vt.max_health, 3 + 2 + 1);
    assert_eq!(next.minions_died_total, 2);
}

#[test]
fn brann_doubles_spellslinger_battlecry() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Jaina, HeroId::Uther);
    s.active.board.push(minion(CardId::BrannBronzebeard, 2, 4));
    s.active.hand.push(HandCard::new(CardId::Spellslinger));

    let mut policy = NondeterminismPolicy::scripted([
        CardId::CabalistsTome,
        CardId::Innervate,
        CardId::BlessingOfKings,
        CardId::Assassinate,
    ]);
    let next = apply_action(
        &s,
        &Action::PlayCard { hand_index: 0, position: Some(1), target: None },
        &mut policy,
    )
    .unwrap();
    // Two triggers, each adding one spell to each hand.
    assert_eq!(
        next.active.hand.iter().map(|h| h.card).collect::<Vec<_>>(),
        vec![CardId::CabalistsTome, CardId::BlessingOfKings]
    );
    assert_eq!(
        next.opponent.hand.iter().map(|h| h.card).collect::<Vec<_>>(),
        vec![CardId::Innervate, CardId::Assassinate]
    );
    assert_eq!(policy, NondeterminismPolicy::scripted([]));
}

#[test]
fn random_generation_is_forbidden_without_a_script() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::CabalistsTome));
    let err = apply_action(
        &s,
        &Action::PlayCard { hand_index: 0, position: None, target: None },
        &mut NondeterminismPolicy::Forbidden,
    )
    .unwrap_err();
    assert!(matches!(err, EngineError::RandomEffectForbidden { card: CardId::CabalistsTome }));
}

#[test]
fn scripted_exhaustion_and_type_mismatch_are_errors() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::UnstablePortal));

    let err = apply_action(
        &s,
        &Action::PlayCard { hand_index: 0, position: None, target: None },
        &mut NondeterminismPolicy::scripted([]),
    )
    .unwrap_err();
    assert!(matches!(err, EngineError::ScriptExhausted { .. }));

    let err = apply_action(
        &s,
        &Action::PlayCard { hand_index: 0, position: None, target: None },
        &mut NondeterminismPolicy::scripted([CardId::Innervate]),
    )
    .unwrap_err();
    assert!(matches!(err, EngineError::ScriptTypeMismatch { .. }));

    // A proper outcome lands in hand with the discount.
    let mut policy = NondeterminismPolicy::scripted([CardId::Spellslinger]);
    let next = apply_action(
        &s,
        &Action::PlayCard { hand_index: 0, position: None, target: None },
        &mut policy,
    )
    .unwrap();
    assert_eq!(next.active.hand.len(), 1);
    assert_eq!(next.active.hand[0].card, CardId::Spellslinger);
    assert_eq!(next.active.hand[0].cost_discount, 3);
}

#[test]
fn hero_powers_resolve() {
    // Fireblast can finish the enemy hero.
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.opponent.hero.health = 1;
    let next = apply_ok(
        &s,
        Action::HeroPower { target: Some(EntityRef::hero(Side::Opponent)) },
    );
    assert_eq!(next.result, GameResult::ActiveWon);
    assert_eq!(next.active.mana_available, 8);
    assert!(next.active.hero.hero_power_used);

    // Lesser Heal caps at max health.
    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    s.active.hero.health = 29;
    let next = apply_ok(&s, Action::HeroPower { target: Some(EntityRef::hero(Side::Active)) });
    assert_eq!(next.active.hero.health, 30);

    // Reinforce summons a recruit.
    let s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    let next = apply_ok(&s, Action::HeroPower { target: None });
    assert_eq!(next.active.board.len(), 1);
    assert_eq!(next.active.board[0].card, CardId::SilverHandRecruit);

    // Valeera's power is unimplemented and never offered.
    let s = base_state(ScalingMode::BoardScaled, HeroId::Valeera, HeroId::Anduin);
    assert!(!legal_actions(&s).iter().any(|a| matches!(a, Action::HeroPower { .. })));
}

#[test]
fn hero_power_fires_once_and_needs_mana() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hero.hero_power_used = true;
    assert!(!legal_actions(&s).iter().any(|a| matches!(a, Action::HeroPower { .. })));

    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.mana_available = 1;
    assert!(!legal_actions(&s).iter().any(|a| matches!(a, Action::HeroPower { .. })));
}

#[test]
fn end_turn_forfeits() {
    let s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    let next = apply_ok(&s, Action::EndTurn);
    assert_eq!(next.result, GameResult::ActiveLost);
    assert!(legal_actions(&next).is_empty());
    assert!(matches!(
        apply_action(&next, &Action::EndTurn, &mut NondeterminismPolicy::Forbidden),
        Err(EngineError::GameFinished)
    ));
}

#[test]
fn simultaneous_hero_deaths_lose() {
    // A 1-health hero attacking a 1-health 5-attack taunt with a 1-attack
    // weapon kills both heroes' chances: the minion dies, but so do we.
    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    s.active.hero.health = 1;
    s.active.hero.weapon = Some(Weapon { attack: 1, durability: 4 });
    s.opponent.hero.health = 1;
    s.opponent.board.push(minion(CardId::EvilHeckler, 5, 1));

    let next = apply_ok(
        &s,
        Action::Attack {
            attacker: EntityRef::hero(Side::Active),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert_eq!(next.result, GameResult::ActiveLost);

    // And killing the enemy hero while dying ourselves is still a loss.
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hero.health = 1;
    s.opponent.hero.health = 1;
    let next = apply_ok(&s, Action::HeroPower { target: Some(EntityRef::hero(Side::Active)) });
    // Fireblast our own face: both at 0 is just a loss for us.
    assert_eq!(next.active.hero.health, 0);
    assert_eq!(next.result, GameResult::ActiveLost);
}

#[test]
fn goals() {
    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    assert!(!goal_satisfied(&s, Goal::Lethal));
    s.result = GameResult::ActiveWon;
    assert!(goal_satisfied(&s, Goal::Lethal));

    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    assert!(goal_satisfied(&s, Goal::BoardClear), "both boards start empty here");
    assert!(goal_satisfied(&s, Goal::Mirror), "empty boards mirror");
    s.active.board.push(minion(CardId::Duskboar, 4, 3));
    assert!(!goal_satisfied(&s, Goal::BoardClear));
    assert!(!goal_satisfied(&s, Goal::Mirror));
    s.opponent.board.push(minion(CardId::Duskboar, 4, 3));
    assert!(goal_satisfied(&s, Goal::Mirror), "identical boards mirror");
    s.opponent.board[0].current_health = 2;
    assert!(!goal_satisfied(&s, Goal::Mirror));

    let mut s = base_state(ScalingMode::BoardScaled, HeroId::Anduin, HeroId::Valeera);
    s.active.hero.health = 30;
    assert!(goal_satisfied(&s, Goal::Survival));
    s.active.hero.health = 29;
    assert!(!goal_satisfied(&s, Goal::Survival));

    // A lost game satisfies nothing.
    s.active.hero.health = 30;
    s.result = GameResult::ActiveLost;
    assert!(!goal_satisfied(&s, Goal::Survival));
    assert!(!goal_satisfied(&s, Goal::BoardClear));
}

#[test]
fn canonical_key_treats_the_hand_as_a_multiset() {
    let mut a = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    a.active.hand.push(HandCard::new(CardId::PitFighter));
    a.active.hand.push(HandCard::new(CardId::SolemnVigil));
    let mut b = a.clone();
    b.active.hand.swap(0, 1);
    assert_eq!(canonical_key(&a), canonical_key(&b));

    // But any included field distinguishes.
    let mut c = a.clone();
    c.active.hand[0].cost_discount = 1;
    assert_ne!(canonical_key(&a), canonical_key(&c));

    let mut d = a.clone();
    d.active.board.push(minion(CardId::BloodfenRaptor, 3, 2));
    let mut e = a.clone();
    e.active.board.push(minion(CardId::BloodfenRaptor, 3, 1));
    assert_ne!(canonical_key(&d), canonical_key(&e));

    // Deck order is verbatim.
    let mut f = a.clone();
    f.active.deck = vec![CardId::SolemnVigil, CardId::PitFighter];
    let mut g = a.clone();
    g.active.deck = vec![CardId::PitFighter, CardId::SolemnVigil];
    assert_ne!(canonical_key(&f), canonical_key(&g));

    // Determinism across clones.
    assert_eq!(canonical_key(&a), canonical_key(&a.clone()));
}

#[test]
fn crazed_alchemist_swaps_stats() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::CrazedAlchemist));
    s.opponent.board.push(minion(CardId::TargetDummy, 0, 2));

    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: Some(0),
            target: Some(EntityRef::minion(Side::Opponent, 0)),
        },
    );
    // 0/2 swapped to 2/0 dies on the spot.
    assert!(next.opponent.board.is_empty());
    assert_eq!(next.minions_died_total, 1);

    // With stats that survive, attack and health trade places.
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::CrazedAlchemist));
    s.opponent.board.push(minion(CardId::PitFighter, 5, 6));
    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: Some(0),
            target: Some(EntityRef::minion(Side::Opponent, 0)),
        },
    );
    let m = &next.opponent.board[0];
    assert_eq!((m.attack, m.current_health, m.max_health), (6, 5, 5));
}

#[test]
fn bestial_wrath_makes_a_beast_immune() {
    let mut s = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::BestialWrath));
    s.active.board.push(minion(CardId::StonetuskBoar, 1, 1));
    s.opponent.board.push(minion(CardId::BloodfenRaptor, 3, 2));

    // Cast on the opponent's beast, as the constructions do.
    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: None,
            target: Some(EntityRef::minion(Side::Opponent, 0)),
        },
    );
    assert_eq!(next.opponent.board[0].attack, 5);
    assert!(next.opponent.board[0].immune_this_turn);

    // Attacking it kills the boar while the raptor takes nothing.
    let after = apply_ok(
        &next,
        Action::Attack {
            attacker: EntityRef::minion(Side::Active, 0),
            defender: EntityRef::minion(Side::Opponent, 0),
        },
    );
    assert!(after.active.board.is_empty());
    assert_eq!(after.opponent.board[0].current_health, 2);

    // Non-beasts are not valid targets.
    let mut bad = base_state(ScalingMode::HandScaled, HeroId::Jaina, HeroId::Uther);
    bad.active.hand.push(HandCard::new(CardId::BestialWrath));
    bad.opponent.board.push(minion(CardId::PitFighter, 5, 6));
    assert!(!legal_actions(&bad)
        .iter()
        .any(|a| matches!(a, Action::PlayCard { hand_index: 0, .. })));
}

#[test]
fn assassinate_destroys_an_enemy_minion() {
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Valeera, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::Assassinate));
    s.opponent.board.push(minion(CardId::BoulderfistOgre, 6, 7));
    let next = apply_ok(
        &s,
        Action::PlayCard {
            hand_index: 0,
            position: None,
            target: Some(EntityRef::minion(Side::Opponent, 0)),
        },
    );
    assert!(next.opponent.board.is_empty());
}

#[test]
fn legal_actions_all_apply_cleanly() {
    // Every enumerated action either succeeds or fails only with a policy
    // error under the forbidden policy.
    let mut s = base_state(ScalingMode::DeckScaled, HeroId::Uther, HeroId::Uther);
    s.active.hand.push(HandCard::new(CardId::SolemnVigil));
    s.active.hand.push(HandCard::new(CardId::PitFighter));
    s.active.hand.push(HandCard::new(CardId::BlessingOfKings));
    s.active.hand.push(HandCard::new(CardId::UnstablePortal));
    s.active.deck = vec![CardId::PitFighter; 3];
    s.active.board.push(minion(CardId::BluegillWarrior, 2, 1));
    s.active.board.push(minion(CardId::CultMaster, 4, 2));
    s.opponent.board.push(minion(CardId::EvilHeckler, 5, 4));
    s.opponent.board.push(minion(CardId::ExplosiveSheep, 1, 1));
    s.active.hero.weapon = Some(Weapon { attack: 1, durability: 2 });

    let actions = legal_actions(&s);
    assert!(!actions.is_empty());
    for action in actions {
        match apply_action(&s, &action, &mut NondeterminismPolicy::Forbidden) {
            Ok(next) => assert_eq!(next.validate(), Ok(()), "{action:?}"),
            Err(EngineError::RandomEffectForbidden { .. }) => {}
            Err(e) => panic!("{action:?} failed with {e}"),
        }
    }
}
