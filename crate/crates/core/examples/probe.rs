//! Scratch timing probe for the solver families (not part of the test suite).

use std::time::Instant;

use lethal_core::*;

fn time_solve(label: &str, puzzle: &Puzzle, limits: &SolveLimits) {
    let start = Instant::now();
    let result = solve(puzzle, limits);
    let elapsed = start.elapsed();
    match result {
        Ok(SolveResult::Solved { states_explored, ref line, .. }) => println!(
            "{label}: SOLVED in {elapsed:?} ({states_explored} states, line len {})",
            line.actions.len()
        ),
        Ok(SolveResult::Unsolvable { states_explored }) => {
            println!("{label}: UNSOLVABLE in {elapsed:?} ({states_explored} states)")
        }
        Ok(SolveResult::ResourceLimit { limit, states_explored }) => {
            println!("{label}: LIMIT {limit:?} in {elapsed:?} ({states_explored} states)")
        }
        Err(e) => println!("{label}: ERROR {e}"),
    }
}

fn main() {
    let limits = SolveLimits::default();

    let deck = |values: &[u64]| {
        reduce_deck_partition(&PartitionInstance::new(values.to_vec()).unwrap()).unwrap()
    };
    time_solve("deck {1,1}", &deck(&[1, 1]), &limits);
    time_solve("deck {1,2}", &deck(&[1, 2]), &limits);
    time_solve("deck {6,6}", &deck(&[6, 6]), &limits);
    time_solve("deck {5,6}", &deck(&[5, 6]), &limits);
    time_solve("deck {6,6,6}", &deck(&[6, 6, 6]), &limits);
    time_solve("deck {4,5,6}", &deck(&[4, 5, 6]), &limits);
    time_solve("deck {1,2,3}", &deck(&[1, 2, 3]), &limits);
    time_solve("deck {5,6,6}", &deck(&[5, 6, 6]), &limits);
    time_solve("deck {233,233}", &deck(&[233, 233]), &limits);

    let hand = |values: &[u64]| {
        reduce_hand_partition(&PartitionInstance::new(values.to_vec()).unwrap(), Variant::Default)
            .unwrap()
    };
    time_solve("hand {1,1}", &hand(&[1, 1]), &limits);
    time_solve("hand {5,5,5,5}", &hand(&[5, 5, 5, 5]), &limits);
    time_solve("hand {4,5,5,5}", &hand(&[4, 5, 5, 5]), &limits);
    time_solve("hand {2,3,4,5}", &hand(&[2, 3, 4, 5]), &limits);
    time_solve("hand {1,3,5,5}", &hand(&[1, 3, 5, 5]), &limits);

    let board = |values: &[u64], n: usize| {
        reduce_board_3partition(&ThreePartitionInstance::new(values.to_vec(), n).unwrap(), Variant::Default)
            .unwrap()
    };
    time_solve("board {4,4,4,4,4,4}", &board(&[4, 4, 4, 4, 4, 4], 2), &limits);
    time_solve("board {1,2,3,4,4,4}", &board(&[1, 2, 3, 4, 4, 4], 2), &limits);
    time_solve("board {2,2,2,2,2,4}", &board(&[2, 2, 2, 2, 2, 4], 2), &limits);
    time_solve("board {1,1,2,3,4,3}", &board(&[1, 1, 2, 3, 4, 3], 2), &limits);

    // Strict-paper exploit regression.
    let strict = reduce_hand_partition(
        &PartitionInstance::new(vec![1, 1, 1]).unwrap(),
        Variant::StrictPaper,
    )
    .unwrap();
    time_solve("hand strict {1,1,1}", &strict, &limits);
    let default = reduce_hand_partition(
        &PartitionInstance::new(vec![1, 1, 1]).unwrap(),
        Variant::Default,
    )
    .unwrap();
    time_solve("hand default {1,1,1}", &default, &limits);
}
