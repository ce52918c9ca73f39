//! Static card registry.
//!
//! Every card and token used by the reductions, the scripted combo replay,
//! and the goal adapters has exactly one [`CardDef`] here, with a
//! machine-readable effect script drawn from a closed set of effect
//! descriptors. The registry is immutable data; lookups never touch global
//! mutable state, so concurrent reads are unrestricted.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifier for every card and token the engine knows about.
///
/// Ids serialize as snake_case strings (`"blessing_of_kings"`). Anything not
/// in this enum is an unknown card by construction.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum CardId {
    AnyfinCanHappen,
    Assassinate,
    BestialWrath,
    BlessedChampion,
    BlessingOfKings,
    BloodfenRaptor,
    BluegillWarrior,
    BolvarFordragon,
    BoulderfistOgre,
    BrannBronzebeard,
    CabalistsTome,
    Charge,
    CrazedAlchemist,
    CultMaster,
    Duskboar,
    EvilHeckler,
    ExplosiveSheep,
    Innervate,
    LightsJustice,
    MillhouseManastorm,
    MistressOfMixtures,
    PitFighter,
    SilverHandRecruit,
    SolemnVigil,
    Spellslinger,
    StonetuskBoar,
    TargetDummy,
    UnstablePortal,
    VoidTerror,
}

impl CardId {
    /// Stable snake_case name, identical to the serde representation.
    pub fn as_str(self) -> &'static str {
        match self {
            CardId::AnyfinCanHappen => "anyfin_can_happen",
            CardId::Assassinate => "assassinate",
            CardId::BestialWrath => "bestial_wrath",
            CardId::BlessedChampion => "blessed_champion",
            CardId::BlessingOfKings => "blessing_of_kings",
            CardId::BloodfenRaptor => "bloodfen_raptor",
            CardId::BluegillWarrior => "bluegill_warrior",
            CardId::BolvarFordragon => "bolvar_fordragon",
            CardId::BoulderfistOgre => "boulderfist_ogre",
            CardId::BrannBronzebeard => "brann_bronzebeard",
            CardId::CabalistsTome => "cabalists_tome",
            CardId::Charge => "charge",
            CardId::CrazedAlchemist => "crazed_alchemist",
            CardId::CultMaster => "cult_master",
            CardId::Duskboar => "duskboar",
            CardId::EvilHeckler => "evil_heckler",
            CardId::ExplosiveSheep => "explosive_sheep",
            CardId::Innervate => "innervate",
            CardId::LightsJustice => "lights_justice",
            CardId::MillhouseManastorm => "millhouse_manastorm",
            CardId::MistressOfMixtures => "mistress_of_mixtures",
            CardId::PitFighter => "pit_fighter",
            CardId::SilverHandRecruit => "silver_hand_recruit",
            CardId::SolemnVigil => "solemn_vigil",
            CardId::Spellslinger => "spellslinger",
            CardId::StonetuskBoar => "stonetusk_boar",
            CardId::TargetDummy => "target_dummy",
            CardId::UnstablePortal => "unstable_portal",
            CardId::VoidTerror => "void_terror",
        }
    }

    /// All registered playable cards, in id order.
    pub fn all_cards() -> &'static [CardId] {
        &ALL_CARDS
    }

    /// Stable ordinal used by the canonical state encoding.
    pub(crate) fn ordinal(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for CardId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CardId {
    type Err = CardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_IDS
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| CardError::UnknownCard(s.to_string()))
    }
}

const ALL_IDS: [CardId; 29] = [
    CardId::AnyfinCanHappen,
    CardId::Assassinate,
    CardId::BestialWrath,
    CardId::BlessedChampion,
    CardId::BlessingOfKings,
    CardId::BloodfenRaptor,
    CardId::BluegillWarrior,
    CardId::BolvarFordragon,
    CardId::BoulderfistOgre,
    CardId::BrannBronzebeard,
    CardId::CabalistsTome,
    CardId::Charge,
    CardId::CrazedAlchemist,
    CardId::CultMaster,
    CardId::Duskboar,
    CardId::EvilHeckler,
    CardId::ExplosiveSheep,
    CardId::Innervate,
    CardId::LightsJustice,
    CardId::MillhouseManastorm,
    CardId::MistressOfMixtures,
    CardId::PitFighter,
    CardId::SilverHandRecruit,
    CardId::SolemnVigil,
    CardId::Spellslinger,
    CardId::StonetuskBoar,
    CardId::TargetDummy,
    CardId::UnstablePortal,
    CardId::VoidTerror,
];

/// Playable cards (everything except token-only entries).
const ALL_CARDS: [CardId; 28] = [
    CardId::AnyfinCanHappen,
    CardId::Assassinate,
    CardId::BestialWrath,
    CardId::BlessedChampion,
    CardId::BlessingOfKings,
    CardId::BloodfenRaptor,
    CardId::BluegillWarrior,
    CardId::BolvarFordragon,
    CardId::BoulderfistOgre,
    CardId::BrannBronzebeard,
    CardId::CabalistsTome,
    CardId::Charge,
    CardId::CrazedAlchemist,
    CardId::CultMaster,
    CardId::Duskboar,
    CardId::EvilHeckler,
    CardId::ExplosiveSheep,
    CardId::Innervate,
    CardId::LightsJustice,
    CardId::MillhouseManastorm,
    CardId::MistressOfMixtures,
    CardId::PitFighter,
    CardId::SolemnVigil,
    CardId::Spellslinger,
    CardId::StonetuskBoar,
    CardId::TargetDummy,
    CardId::UnstablePortal,
    CardId::VoidTerror,
];

const TOKENS: [CardId; 2] = [CardId::SilverHandRecruit, CardId::BluegillWarrior];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardKind {
    Minion,
    Spell,
    Weapon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tribe {
    Murloc,
    Beast,
    None,
}

/// What a targeted effect may point at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetRule {
    /// Effect takes no target.
    None,
    /// Any minion on either board.
    AnyMinion,
    /// A minion on the acting player's board.
    FriendlyMinion,
    /// A minion on the opposing board.
    EnemyMinion,
    /// Any beast on either board.
    AnyBeast,
}

/// One step of a spell's resolution. Spells run their ops in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpellOp {
    /// Give the target +attack/+health.
    Buff { attack: i64, health: i64 },
    /// Double the target's attack.
    DoubleAttack,
    /// Grant the target Charge; it cannot attack heroes this turn.
    GrantChargeNoFace,
    /// Gain temporary mana this turn.
    GainTempMana(i64),
    /// Draw cards.
    Draw(usize),
    /// Summon up to this many murlocs that died this game, in death order.
    SummonDeadMurlocs(usize),
    /// Destroy the targeted enemy minion.
    DestroyEnemyMinion,
    /// Give the target +attack and make it immune to damage this turn.
    ImmuneAndBuffAttack(i64),
    /// Add this many scripted Mage spells to the caster's hand. Scripted only.
    AddRandomMageSpells(usize),
    /// Add one scripted minion to the caster's hand at a cost discount.
    /// Scripted only.
    AddRandomMinionDiscounted { discount: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Battlecry {
    /// Swap the target minion's attack and health.
    SwapAttackHealth,
    /// Destroy both adjacent minions and gain their attack and health.
    DestroyAdjacentGainStats,
    /// Add one scripted spell to each player's hand. Scripted only.
    AddRandomSpellToEachHand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deathrattle {
    /// Deal this much damage to all other minions.
    DamageAllMinions(i64),
    /// Restore this much health to each hero.
    RestoreEachHero(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aura {
    /// While on the acting player's board, that player's battlecries fire twice.
    BattlecriesTriggerTwice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HandTrigger {
    /// Gains +1 attack while in hand whenever a friendly minion dies.
    GainAttackPerFriendlyDeath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoardTrigger {
    /// Controller draws a card whenever another friendly minion dies.
    DrawOnFriendlyDeath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostRule {
    /// Costs this much less per minion that died this turn (either side).
    DiscountPerMinionDeadThisTurn(i64),
}

/// Machine-readable effect script for one card.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EffectScript {
    pub battlecry: Option<Battlecry>,
    pub deathrattle: Option<Deathrattle>,
    pub aura: Option<Aura>,
    pub hand_trigger: Option<HandTrigger>,
    pub board_trigger: Option<BoardTrigger>,
    pub spell: &'static [SpellOp],
    pub cost_rule: Option<CostRule>,
    pub target: TargetRule,
}

const NO_EFFECT: EffectScript = EffectScript {
    battlecry: None,
    deathrattle: None,
    aura: None,
    hand_trigger: None,
    board_trigger: None,
    spell: &[],
    cost_rule: None,
    target: TargetRule::None,
};

/// Static card identity: printed stats plus the effect script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardDef {
    pub id: CardId,
    pub name: &'static str,
    pub kind: CardKind,
    pub base_cost: i64,
    /// Minions and weapons.
    pub base_attack: i64,
    /// Minions only; at least 1.
    pub base_health: i64,
    /// Weapons only; at least 1.
    pub durability: i64,
    pub tribe: Tribe,
    pub taunt: bool,
    pub charge: bool,
    pub effect: EffectScript,
}

impl CardDef {
    pub fn is_minion(&self) -> bool {
        self.kind == CardKind::Minion
    }

    pub fn is_spell(&self) -> bool {
        self.kind == CardKind::Spell
    }

    /// True if resolving the card invokes a random-generation effect, which
    /// is only legal under a scripted nondeterminism policy.
    pub fn generates_random_cards(&self) -> bool {
        self.effect.battlecry == Some(Battlecry::AddRandomSpellToEachHand)
            || self.effect.spell.iter().any(|op| {
                matches!(
                    op,
                    SpellOp::AddRandomMageSpells(_) | SpellOp::AddRandomMinionDiscounted { .. }
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CardError {
    UnknownCard(String),
    UnknownToken(String),
}

impl fmt::Display for CardError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardError::UnknownCard(id) => write!(f, "unknown card: {id}"),
            CardError::UnknownToken(id) => write!(f, "unknown token: {id}"),
        }
    }
}

impl std::error::Error for CardError {}

const fn minion(
    id: CardId,
    name: &'static str,
    cost: i64,
    attack: i64,
    health: i64,
    tribe: Tribe,
) -> CardDef {
    CardDef {
        id,
        name,
        kind: CardKind::Minion,
        base_cost: cost,
        base_attack: attack,
        base_health: health,
        durability: 0,
        tribe,
        taunt: false,
        charge: false,
        effect: NO_EFFECT,
    }
}

const fn spell(id: CardId, name: &'static str, cost: i64) -> CardDef {
    CardDef {
        id,
        name,
        kind: CardKind::Spell,
        base_cost: cost,
        base_attack: 0,
        base_health: 0,
        durability: 0,
        tribe: Tribe::None,
        taunt: false,
        charge: false,
        effect: NO_EFFECT,
    }
}

static ANYFIN_CAN_HAPPEN: CardDef = {
    let mut c = spell(CardId::AnyfinCanHappen, "Anyfin Can Happen", 10);
    c.effect.spell = &[SpellOp::SummonDeadMurlocs(7)];
    c
};

static ASSASSINATE: CardDef = {
    let mut c = spell(CardId::Assassinate, "Assassinate", 5);
    c.effect.spell = &[SpellOp::DestroyEnemyMinion];
    c.effect.target = TargetRule::EnemyMinion;
    c
};

// The beast restriction is kept but the friendly restriction is not: the
// construction narratives cast this on an opponent's beast.
static BESTIAL_WRATH: CardDef = {
    let mut c = spell(CardId::BestialWrath, "Bestial Wrath", 1);
    c.effect.spell = &[SpellOp::ImmuneAndBuffAttack(2)];
    c.effect.target = TargetRule::AnyBeast;
    c
};

static BLESSED_CHAMPION: CardDef = {
    let mut c = spell(CardId::BlessedChampion, "Blessed Champion", 5);
    c.effect.spell = &[SpellOp::DoubleAttack];
    c.effect.target = TargetRule::AnyMinion;
    c
};

static BLESSING_OF_KINGS: CardDef = {
    let mut c = spell(CardId::BlessingOfKings, "Blessing of Kings", 4);
    c.effect.spell = &[SpellOp::Buff { attack: 4, health: 4 }];
    c.effect.target = TargetRule::AnyMinion;
    c
};

static BLOODFEN_RAPTOR: CardDef =
    minion(CardId::BloodfenRaptor, "Bloodfen Raptor", 2, 3, 2, Tribe::Beast);

static BLUEGILL_WARRIOR: CardDef = {
    let mut c = minion(CardId::BluegillWarrior, "Bluegill Warrior", 2, 2, 1, Tribe::Murloc);
    c.charge = true;
    c
};

static BOLVAR_FORDRAGON: CardDef = {
    let mut c = minion(CardId::BolvarFordragon, "Bolvar Fordragon", 5, 1, 7, Tribe::None);
    c.effect.hand_trigger = Some(HandTrigger::GainAttackPerFriendlyDeath);
    c
};

static BOULDERFIST_OGRE: CardDef =
    minion(CardId::BoulderfistOgre, "Boulderfist Ogre", 6, 6, 7, Tribe::None);

static BRANN_BRONZEBEARD: CardDef = {
    let mut c = minion(CardId::BrannBronzebeard, "Brann Bronzebeard", 3, 2, 4, Tribe::None);
    c.effect.aura = Some(Aura::BattlecriesTriggerTwice);
    c
};

static CABALISTS_TOME: CardDef = {
    let mut c = spell(CardId::CabalistsTome, "Cabalist's Tome", 5);
    c.effect.spell = &[SpellOp::AddRandomMageSpells(3)];
    c
};

// The two-line historical text: +2 attack, Charge, and no hero attacks this
// turn. The hand-scaled construction arithmetic depends on the +2.
static CHARGE: CardDef = {
    let mut c = spell(CardId::Charge, "Charge", 1);
    c.effect.spell = &[
        SpellOp::Buff { attack: 2, health: 0 },
        SpellOp::GrantChargeNoFace,
    ];
    c.effect.target = TargetRule::FriendlyMinion;
    c
};

static CRAZED_ALCHEMIST: CardDef = {
    let mut c = minion(CardId::CrazedAlchemist, "Crazed Alchemist", 2, 2, 2, Tribe::None);
    c.effect.battlecry = Some(Battlecry::SwapAttackHealth);
    c.effect.target = TargetRule::AnyMinion;
    c
};

static CULT_MASTER: CardDef = {
    let mut c = minion(CardId::CultMaster, "Cult Master", 4, 4, 2, Tribe::None);
    c.effect.board_trigger = Some(BoardTrigger::DrawOnFriendlyDeath);
    c
};

static DUSKBOAR: CardDef = minion(CardId::Duskboar, "Duskboar", 2, 4, 1, Tribe::Beast);

static EVIL_HECKLER: CardDef = {
    let mut c = minion(CardId::EvilHeckler, "Evil Heckler", 4, 5, 4, Tribe::None);
    c.taunt = true;
    c
};

static EXPLOSIVE_SHEEP: CardDef = {
    let mut c = minion(CardId::ExplosiveSheep, "Explosive Sheep", 2, 1, 1, Tribe::None);
    c.effect.deathrattle = Some(Deathrattle::DamageAllMinions(2));
    c
};

static INNERVATE: CardDef = {
    let mut c = spell(CardId::Innervate, "Innervate", 0);
    c.effect.spell = &[SpellOp::GainTempMana(1)];
    c
};

static LIGHTS_JUSTICE: CardDef = CardDef {
    id: CardId::LightsJustice,
    name: "Light's Justice",
    kind: CardKind::Weapon,
    base_cost: 1,
    base_attack: 1,
    base_health: 0,
    durability: 4,
    tribe: Tribe::None,
    taunt: false,
    charge: false,
    effect: NO_EFFECT,
};

// The "enemy spells cost (0) next turn" battlecry is realized as the
// `enemy_spells_cost_zero` state flag set when constructing states in which
// Millhouse was played on the previous turn; within the simulated turn the
// minion itself is vanilla.
static MILLHOUSE_MANASTORM: CardDef =
    minion(CardId::MillhouseManastorm, "Millhouse Manastorm", 2, 4, 4, Tribe::None);

static MISTRESS_OF_MIXTURES: CardDef = {
    let mut c = minion(CardId::MistressOfMixtures, "Mistress of Mixtures", 1, 2, 2, Tribe::None);
    c.effect.deathrattle = Some(Deathrattle::RestoreEachHero(4));
    c
};

static PIT_FIGHTER: CardDef = minion(CardId::PitFighter, "Pit Fighter", 5, 5, 6, Tribe::None);

static SILVER_HAND_RECRUIT: CardDef =
    minion(CardId::SilverHandRecruit, "Silver Hand Recruit", 1, 1, 1, Tribe::None);

static SOLEMN_VIGIL: CardDef = {
    let mut c = spell(CardId::SolemnVigil, "Solemn Vigil", 5);
    c.effect.spell = &[SpellOp::Draw(2)];
    c.effect.cost_rule = Some(CostRule::DiscountPerMinionDeadThisTurn(1));
    c
};

static SPELLSLINGER: CardDef = {
    let mut c = minion(CardId::Spellslinger, "Spellslinger", 3, 3, 4, Tribe::None);
    c.effect.battlecry = Some(Battlecry::AddRandomSpellToEachHand);
    c
};

static STONETUSK_BOAR: CardDef = {
    let mut c = minion(CardId::StonetuskBoar, "Stonetusk Boar", 1, 1, 1, Tribe::Beast);
    c.charge = true;
    c
};

static TARGET_DUMMY: CardDef = {
    let mut c = minion(CardId::TargetDummy, "Target Dummy", 0, 0, 2, Tribe::None);
    c.taunt = true;
    c
};

static UNSTABLE_PORTAL: CardDef = {
    let mut c = spell(CardId::UnstablePortal, "Unstable Portal", 2);
    c.effect.spell = &[SpellOp::AddRandomMinionDiscounted { discount: 3 }];
    c
};

static VOID_TERROR: CardDef = {
    let mut c = minion(CardId::VoidTerror, "Void Terror", 3, 3, 3, Tribe::None);
    c.effect.battlecry = Some(Battlecry::DestroyAdjacentGainStats);
    c
};

/// Infallible definition lookup for a known id.
pub(crate) fn def(id: CardId) -> &'static CardDef {
    match id {
        CardId::AnyfinCanHappen => &ANYFIN_CAN_HAPPEN,
        CardId::Assassinate => &ASSASSINATE,
        CardId::BestialWrath => &BESTIAL_WRATH,
        CardId::BlessedChampion => &BLESSED_CHAMPION,
        CardId::BlessingOfKings => &BLESSING_OF_KINGS,
        CardId::BloodfenRaptor => &BLOODFEN_RAPTOR,
        CardId::BluegillWarrior => &BLUEGILL_WARRIOR,
        CardId::BolvarFordragon => &BOLVAR_FORDRAGON,
        CardId::BoulderfistOgre => &BOULDERFIST_OGRE,
        CardId::BrannBronzebeard => &BRANN_BRONZEBEARD,
        CardId::CabalistsTome => &CABALISTS_TOME,
        CardId::Charge => &CHARGE,
        CardId::CrazedAlchemist => &CRAZED_ALCHEMIST,
        CardId::CultMaster => &CULT_MASTER,
        CardId::Duskboar => &DUSKBOAR,
        CardId::EvilHeckler => &EVIL_HECKLER,
        CardId::ExplosiveSheep => &EXPLOSIVE_SHEEP,
        CardId::Innervate => &INNERVATE,
        CardId::LightsJustice => &LIGHTS_JUSTICE,
        CardId::MillhouseManastorm => &MILLHOUSE_MANASTORM,
        CardId::MistressOfMixtures => &MISTRESS_OF_MIXTURES,
        CardId::PitFighter => &PIT_FIGHTER,
        CardId::SilverHandRecruit => &SILVER_HAND_RECRUIT,
        CardId::SolemnVigil => &SOLEMN_VIGIL,
        CardId::Spellslinger => &SPELLSLINGER,
        CardId::StonetuskBoar => &STONETUSK_BOAR,
        CardId::TargetDummy => &TARGET_DUMMY,
        CardId::UnstablePortal => &UNSTABLE_PORTAL,
        CardId::VoidTerror => &VOID_TERROR,
    }
}

/// Look up a playable card by its snake_case id.
///
/// Token-only entries (the Silver Hand Recruit) and anything outside the
/// registry produce an unknown-card error.
pub fn card_def(card_id: &str) -> Result<&'static CardDef, CardError> {
    let id: CardId = card_id
        .parse()
        .map_err(|_| CardError::UnknownCard(card_id.to_string()))?;
    if ALL_CARDS.contains(&id) {
        Ok(def(id))
    } else {
        Err(CardError::UnknownCard(card_id.to_string()))
    }
}

/// Look up a summonable token by its snake_case id.
///
/// Tokens are the Silver Hand Recruit (hero power) and fresh Bluegill
/// Warrior copies (murloc resummons). Other ids produce an unknown-token
/// error even when they name a registered card.
pub fn token_def(token_id: &str) -> Result<&'static CardDef, CardError> {
    let id: CardId = token_id
        .parse()
        .map_err(|_| CardError::UnknownToken(token_id.to_string()))?;
    if TOKENS.contains(&id) {
        Ok(def(id))
    } else {
        Err(CardError::UnknownToken(token_id.to_string()))
    }
}
