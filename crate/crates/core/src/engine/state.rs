//! State types for the single-turn engine.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::{self, CardId};

/// Which game resource is allowed to grow beyond the stock limits.
///
/// The caps are a pure function of the mode: board-scaled lifts the 7-minion
/// board cap, hand-scaled lifts the 10-card hand cap (and the temporary-mana
/// ceiling, which its constructions spend past), deck-scaled lifts nothing
/// but the deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    BoardScaled,
    HandScaled,
    DeckScaled,
}

impl ScalingMode {
    /// Maximum board size, `None` when unbounded.
    pub fn board_cap(self) -> Option<usize> {
        match self {
            ScalingMode::BoardScaled | ScalingMode::HandScaled => None,
            ScalingMode::DeckScaled => Some(7),
        }
    }

    /// Maximum hand size, `None` when unbounded.
    pub fn hand_cap(self) -> Option<usize> {
        match self {
            ScalingMode::BoardScaled | ScalingMode::DeckScaled => Some(10),
            ScalingMode::HandScaled => None,
        }
    }

    /// Whether temporary mana may exceed the 10-crystal ceiling.
    pub fn temp_mana_uncapped(self) -> bool {
        matches!(self, ScalingMode::HandScaled)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Active,
    Opponent,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Active => Side::Opponent,
            Side::Opponent => Side::Active,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeroId {
    Anduin,
    Jaina,
    Uther,
    Valeera,
}

/// The implemented hero powers. All cost 2 mana and fire once per turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeroPower {
    /// Deal 1 damage to any character.
    Fireblast,
    /// Restore 2 health to any character.
    LesserHeal,
    /// Summon a Silver Hand Recruit.
    Reinforce,
}

impl HeroId {
    /// The hero's power, or `None` where unimplemented (the opposing hero
    /// never acts, so Valeera's power is never needed).
    pub fn power(self) -> Option<HeroPower> {
        match self {
            HeroId::Anduin => Some(HeroPower::LesserHeal),
            HeroId::Jaina => Some(HeroPower::Fireblast),
            HeroId::Uther => Some(HeroPower::Reinforce),
            HeroId::Valeera => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weapon {
    pub attack: i64,
    pub durability: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeroState {
    pub hero: HeroId,
    pub health: i64,
    pub max_health: i64,
    pub weapon: Option<Weapon>,
    pub hero_power_used: bool,
    pub attacks_used: u32,
}

impl HeroState {
    pub fn new(hero: HeroId, health: i64) -> Self {
        HeroState {
            hero,
            health,
            max_health: 30,
            weapon: None,
            hero_power_used: false,
            attacks_used: 0,
        }
    }

    pub fn with_weapon(mut self, attack: i64, durability: i64) -> Self {
        self.weapon = Some(Weapon { attack, durability });
        self
    }

    /// Attack value while it is this hero's turn (weapons are sheathed on the
    /// opponent's turn, so a defending hero deals no damage back).
    pub fn own_turn_attack(&self) -> i64 {
        self.weapon.map_or(0, |w| w.attack)
    }
}

/// A minion on the board. Its position is its index in the board list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinionInstance {
    pub card: CardId,
    pub attack: i64,
    pub current_health: i64,
    pub max_health: i64,
    #[serde(default)]
    pub frozen: bool,
    #[serde(default)]
    pub has_charge: bool,
    #[serde(default)]
    pub cannot_attack_heroes: bool,
    #[serde(default)]
    pub attacks_used: u32,
    #[serde(default)]
    pub summoned_this_turn: bool,
    #[serde(default)]
    pub immune_this_turn: bool,
}

impl MinionInstance {
    /// A fresh copy of the card, as summoned or played this turn.
    pub fn fresh(card: CardId) -> Self {
        let def = cards::def(card);
        MinionInstance {
            card,
            attack: def.base_attack,
            current_health: def.base_health,
            max_health: def.base_health,
            frozen: false,
            has_charge: def.charge,
            cannot_attack_heroes: false,
            attacks_used: 0,
            summoned_this_turn: true,
            immune_this_turn: false,
        }
    }

    /// A minion that has been on the board since before this turn, with
    /// overridden stats (the reductions construct such boards directly).
    pub fn established(card: CardId, attack: i64, health: i64) -> Self {
        let def = cards::def(card);
        MinionInstance {
            card,
            attack,
            current_health: health,
            max_health: health,
            frozen: false,
            has_charge: def.charge,
            cannot_attack_heroes: false,
            attacks_used: 0,
            summoned_this_turn: false,
            immune_this_turn: false,
        }
    }

    pub fn frozen(mut self) -> Self {
        self.frozen = true;
        self
    }

    pub fn taunt(&self) -> bool {
        cards::def(self.card).taunt
    }

    pub fn can_attack(&self) -> bool {
        self.attack >= 1
            && self.attacks_used < 1
            && !self.frozen
            && (!self.summoned_this_turn || self.has_charge)
    }
}

/// A card in hand. The bolvar bonus is only ever nonzero for Bolvar
/// Fordragon; the cost discount carries the generated-minion discount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandCard {
    pub card: CardId,
    #[serde(default)]
    pub bolvar_bonus_attack: i64,
    #[serde(default)]
    pub cost_discount: i64,
}

impl HandCard {
    pub fn new(card: CardId) -> Self {
        HandCard { card, bolvar_bonus_attack: 0, cost_discount: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerState {
    pub hero: HeroState,
    pub mana_available: i64,
    pub mana_crystals: i64,
    pub hand: Vec<HandCard>,
    /// Index 0 is the next draw; the deck is perfect-information and ordered.
    pub deck: Vec<CardId>,
    pub board: Vec<MinionInstance>,
    pub fatigue_counter: u32,
}

impl PlayerState {
    pub fn new(hero: HeroState) -> Self {
        PlayerState {
            hero,
            mana_available: 10,
            mana_crystals: 10,
            hand: Vec::new(),
            deck: Vec::new(),
            board: Vec::new(),
            fatigue_counter: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameResult {
    Ongoing,
    ActiveWon,
    ActiveLost,
}

/// Complete single-turn snapshot. Only the active player ever acts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub mode: ScalingMode,
    pub active: PlayerState,
    pub opponent: PlayerState,
    /// Minions of the active player's side that died this turn.
    pub minions_died_active: u32,
    /// Minions that died this turn on either side.
    pub minions_died_total: u32,
    /// Set when the opponent played Millhouse Manastorm last turn: the active
    /// player's spells cost 0 this turn.
    pub enemy_spells_cost_zero: bool,
    /// Murlocs that died this game, in death order.
    pub murloc_graveyard: Vec<CardId>,
    pub spells_cast_this_game: u32,
    pub result: GameResult,
}

impl GameState {
    pub fn new(mode: ScalingMode, active: PlayerState, opponent: PlayerState) -> Self {
        GameState {
            mode,
            active,
            opponent,
            minions_died_active: 0,
            minions_died_total: 0,
            enemy_spells_cost_zero: false,
            murloc_graveyard: Vec::new(),
            spells_cast_this_game: 0,
            result: GameResult::Ongoing,
        }
    }

    pub fn player(&self, side: Side) -> &PlayerState {
        match side {
            Side::Active => &self.active,
            Side::Opponent => &self.opponent,
        }
    }

    pub fn player_mut(&mut self, side: Side) -> &mut PlayerState {
        match side {
            Side::Active => &mut self.active,
            Side::Opponent => &mut self.opponent,
        }
    }

    pub fn is_ongoing(&self) -> bool {
        self.result == GameResult::Ongoing
    }

    /// Check every structural invariant the engine promises to preserve.
    /// Used by tests and the randomized property suite.
    pub fn validate(&self) -> Result<(), String> {
        for (side, p) in [(Side::Active, &self.active), (Side::Opponent, &self.opponent)] {
            if let Some(cap) = self.mode.hand_cap() {
                if p.hand.len() > cap {
                    return Err(format!("{side:?}: hand over cap ({})", p.hand.len()));
                }
            }
            if let Some(cap) = self.mode.board_cap() {
                if p.board.len() > cap {
                    return Err(format!("{side:?}: board over cap ({})", p.board.len()));
                }
            }
            if p.mana_available < 0 {
                return Err(format!("{side:?}: negative mana"));
            }
            if p.mana_crystals > 10 {
                return Err(format!("{side:?}: more than 10 mana crystals"));
            }
            if p.hero.health > p.hero.max_health {
                return Err(format!("{side:?}: hero above max health"));
            }
            if let Some(w) = p.hero.weapon {
                if w.durability < 1 {
                    return Err(format!("{side:?}: equipped weapon at zero durability"));
                }
            }
            for (i, m) in p.board.iter().enumerate() {
                if m.current_health < 1 {
                    return Err(format!("{side:?}: board minion {i} with health <= 0"));
                }
                if m.current_health > m.max_health {
                    return Err(format!("{side:?}: board minion {i} above max health"));
                }
                if m.attack < 0 || m.max_health < 1 {
                    return Err(format!("{side:?}: board minion {i} with invalid stats"));
                }
            }
            for (i, h) in p.hand.iter().enumerate() {
                if h.bolvar_bonus_attack != 0 && h.card != CardId::BolvarFordragon {
                    return Err(format!("{side:?}: hand card {i} with stray bolvar bonus"));
                }
                if h.bolvar_bonus_attack < 0 || h.cost_discount < 0 {
                    return Err(format!("{side:?}: hand card {i} with negative modifier"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entity {
    Hero,
    Minion(usize),
}

/// Names a hero or a live minion by side and board position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntityRef {
    pub side: Side,
    pub entity: Entity,
}

impl EntityRef {
    pub fn hero(side: Side) -> Self {
        EntityRef { side, entity: Entity::Hero }
    }

    pub fn minion(side: Side, position: usize) -> Self {
        EntityRef { side, entity: Entity::Minion(position) }
    }
}

/// One player action. Targets and positions refer to the state *before* the
/// action is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Action {
    PlayCard {
        hand_index: usize,
        /// Board insertion position for minions; `None` means the right end.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        position: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<EntityRef>,
    },
    Attack {
        attacker: EntityRef,
        defender: EntityRef,
    },
    HeroPower {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<EntityRef>,
    },
    EndTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Lethal,
    Survival,
    BoardClear,
    Mirror,
}

/// How random-generation effects are resolved.
///
/// Under `Forbidden` any random-generation effect is an error; under
/// `Scripted` each generation event consumes the next outcome in order, and
/// exhaustion or a type mismatch is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NondeterminismPolicy {
    Forbidden,
    Scripted(VecDeque<CardId>),
}

impl NondeterminismPolicy {
    pub fn scripted(outcomes: impl IntoIterator<Item = CardId>) -> Self {
        NondeterminismPolicy::Scripted(outcomes.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// No actions are legal once the game has a result.
    GameFinished,
    /// The action is not legal in this state; the message says why.
    IllegalAction(String),
    /// A random-generation effect fired under the `Forbidden` policy.
    RandomEffectForbidden { card: CardId },
    /// The scripted outcome list ran out.
    ScriptExhausted { card: CardId },
    /// A scripted outcome has the wrong kind for the generator consuming it.
    ScriptTypeMismatch { card: CardId, outcome: CardId },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::GameFinished => write!(f, "the game already has a result"),
            EngineError::IllegalAction(why) => write!(f, "illegal action: {why}"),
            EngineError::RandomEffectForbidden { card } => {
                write!(f, "{card} generates random cards, which the policy forbids")
            }
            EngineError::ScriptExhausted { card } => {
                write!(f, "scripted outcomes exhausted while resolving {card}")
            }
            EngineError::ScriptTypeMismatch { card, outcome } => {
                write!(f, "scripted outcome {outcome} has the wrong kind for {card}")
            }
        }
    }
}

impl std::error::Error for EngineError {}
