//! Witness-partition extraction from solved lines.
//!
//! A winning line on a reduction output kills the enemy taunts with damage
//! sources that each stand for one instance element. Replaying the line with
//! the engine's trace events lets us follow those identities: board minions
//! carry an element tag, tags flow from deck to hand to board through draws
//! and plays (a resummon inherits the tag of the card that cast it), and
//! each declared attack attributes one element to one enemy taunt.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{
    apply_action_traced, Entity, EntityRef, NondeterminismPolicy, Side, TraceEvent,
};
use crate::solver::{verify_line, SolutionLine};

use super::{Puzzle, ReductionKind};

/// A witness partition recovered from a winning line: instance element
/// indices grouped by the enemy taunt they were spent on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Groups indexed by enemy taunt/dummy board order.
    pub groups: Vec<Vec<usize>>,
    /// Sum of instance values per group.
    pub group_sums: Vec<u64>,
    /// The common target each group must hit exactly.
    pub target: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    /// The line does not reach the puzzle goal.
    GoalNotReached,
    /// Damage reached a counted taunt from a source that stands for no
    /// instance element.
    UnattributableDamage,
    /// An element was spent more than once, or not at all.
    ElementMisuse,
    /// The recovered group sums do not hit the targets.
    WrongGroupSums { sums: Vec<u64>, target: u64 },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::GoalNotReached => write!(f, "line does not reach the goal"),
            CertificateError::UnattributableDamage => {
                write!(f, "damage on a counted taunt is not attributable to an instance element")
            }
            CertificateError::ElementMisuse => {
                write!(f, "instance elements must be spent exactly once")
            }
            CertificateError::WrongGroupSums { sums, target } => {
                write!(f, "group sums {sums:?} do not all equal {target}")
            }
        }
    }
}

impl std::error::Error for CertificateError {}

/// Tag state threaded through the replay.
struct Tags {
    deck: Vec<Option<usize>>,
    hand: Vec<Option<usize>>,
    active_board: Vec<Option<usize>>,
    /// Enemy minions tagged with their taunt ordinal.
    opponent_board: Vec<Option<usize>>,
}

fn initial_tags(puzzle: &Puzzle) -> Tags {
    let state = &puzzle.state;
    let values = &puzzle.provenance.values;
    match puzzle.provenance.reduction {
        ReductionKind::Board3Partition => Tags {
            deck: Vec::new(),
            hand: state.active.hand.iter().map(|_| None).collect(),
            // Board minion i stands for element i.
            active_board: (0..values.len()).map(Some).collect(),
            opponent_board: tag_prefix(state.opponent.board.len(), puzzle.taunt_count()),
        },
        ReductionKind::HandPartition => Tags {
            deck: Vec::new(),
            // The layout puts the n Bolvars first.
            hand: (0..state.active.hand.len())
                .map(|i| if i < values.len() { Some(i) } else { None })
                .collect(),
            active_board: Vec::new(),
            opponent_board: tag_prefix(state.opponent.board.len(), 2),
        },
        ReductionKind::DeckPartition => {
            // Tag each value's resummon card with its element index: the
            // deck is the 4-card opener, then one block per element whose
            // second card is the resummon, then the final resummon.
            let mut deck = vec![None; 4];
            for (element, &a) in values.iter().enumerate() {
                let block = super::integer_card_sequence(4 * a)
                    .expect("reduction outputs encode valid multiples of 4");
                for (j, _) in block.iter().enumerate() {
                    deck.push(if j == 1 { Some(element) } else { None });
                }
            }
            deck.push(None); // final resummon feeds the face hit, not a dummy
            debug_assert_eq!(deck.len(), state.active.deck.len());
            Tags {
                deck,
                hand: state.active.hand.iter().map(|_| None).collect(),
                active_board: state.active.board.iter().map(|_| None).collect(),
                opponent_board: tag_prefix(state.opponent.board.len(), 2),
            }
        }
    }
}

fn tag_prefix(len: usize, tagged: usize) -> Vec<Option<usize>> {
    (0..len).map(|i| if i < tagged { Some(i) } else { None }).collect()
}

impl Puzzle {
    fn taunt_count(&self) -> usize {
        match self.provenance.reduction {
            ReductionKind::Board3Partition => self.provenance.n.unwrap_or(1),
            ReductionKind::HandPartition | ReductionKind::DeckPartition => 2,
        }
    }

    fn certificate_target(&self) -> u64 {
        let sum: u64 = self.provenance.values.iter().sum();
        match self.provenance.reduction {
            ReductionKind::Board3Partition => sum / self.provenance.n.unwrap_or(1) as u64,
            ReductionKind::HandPartition | ReductionKind::DeckPartition => sum / 2,
        }
    }
}

/// Recover the witness partition from a goal-achieving line.
pub fn extract_certificate(
    puzzle: &Puzzle,
    line: &SolutionLine,
) -> Result<Certificate, CertificateError> {
    let report = verify_line(puzzle, line);
    let Some(goal_index) = report.goal_reached_at else {
        return Err(CertificateError::GoalNotReached);
    };

    let mut tags = initial_tags(puzzle);
    let mut assignments: Vec<(usize, usize)> = Vec::new();
    let mut state = puzzle.state.clone();

    for action in &line.actions[..=goal_index] {
        let (next, events) =
            apply_action_traced(&state, action, &mut NondeterminismPolicy::Forbidden)
                .expect("verified line replays");
        // The tag of the card the current action played; summons it causes
        // inherit it.
        let mut pending: Option<usize> = None;
        for event in events {
            match event {
                TraceEvent::HandCardPlayed { index } => {
                    pending = tags.hand.remove(index);
                }
                TraceEvent::CardDrawn { side } => {
                    if side == Side::Active {
                        let tag = tags.deck.remove(0);
                        tags.hand.push(tag);
                    }
                }
                TraceEvent::CardBurned { side } => {
                    if side == Side::Active {
                        tags.deck.remove(0);
                    }
                }
                TraceEvent::CardGenerated { side, .. } => {
                    if side == Side::Active {
                        tags.hand.push(None);
                    }
                }
                TraceEvent::MinionEntered { side, position, .. } => match side {
                    Side::Active => tags.active_board.insert(position, pending),
                    Side::Opponent => tags.opponent_board.insert(position, None),
                },
                TraceEvent::MinionRemoved { side, position } => {
                    match side {
                        Side::Active => tags.active_board.remove(position),
                        Side::Opponent => tags.opponent_board.remove(position),
                    };
                }
                TraceEvent::AttackDeclared { attacker, defender } => {
                    let attacker_tag = match attacker {
                        EntityRef { side: Side::Active, entity: Entity::Minion(i) } => {
                            tags.active_board[i]
                        }
                        _ => None,
                    };
                    let defender_tag = match defender {
                        EntityRef { side: Side::Opponent, entity: Entity::Minion(i) } => {
                            tags.opponent_board[i]
                        }
                        _ => None,
                    };
                    match (attacker_tag, defender_tag) {
                        (Some(e), Some(g)) => assignments.push((e, g)),
                        // A counted taunt took damage from an untagged
                        // source: the accounting cannot stand for a
                        // partition any more.
                        (None, Some(_)) => return Err(CertificateError::UnattributableDamage),
                        _ => {}
                    }
                }
            }
        }
        state = next;
    }

    let values = &puzzle.provenance.values;
    let mut groups = vec![Vec::new(); puzzle.taunt_count()];
    let mut used = vec![false; values.len()];
    for (element, group) in assignments {
        if used[element] {
            return Err(CertificateError::ElementMisuse);
        }
        used[element] = true;
        groups[group].push(element);
    }
    if !used.iter().all(|&u| u) {
        return Err(CertificateError::ElementMisuse);
    }

    let target = puzzle.certificate_target();
    let group_sums: Vec<u64> = groups
        .iter()
        .map(|g| g.iter().map(|&e| values[e]).sum())
        .collect();
    if group_sums.iter().any(|&s| s != target) {
        return Err(CertificateError::WrongGroupSums { sums: group_sums, target });
    }
    Ok(Certificate { groups, group_sums, target })
}
