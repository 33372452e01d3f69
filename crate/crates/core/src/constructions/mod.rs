//! Transformations between automata and subshifts.

mod cover;
mod guard;
mod lift;
mod recogniser;

pub use cover::{alternating_to_cover, annotate, annotate_with, cover_consistent, Clause, Cover, COVER_STATE_LIMIT};
pub use guard::{guard_automaton, intersect_with_sft, Guard, GUARD_MAX_EXTENT};
pub use lift::{flatten_automaton, lift_word};
pub use recogniser::{higher_block_code, recogniser_to_sft, sft_to_recogniser, BlockCode, BLOCK_CODE_LIMIT};
