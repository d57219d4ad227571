//! Split search for pairs, with its filters, join, checkpointing and the
//! exhaustive reference search.

mod brute;
mod canon;
mod checkpoint;
mod engine;
mod filters;
mod half;
mod jp30;
mod join;
mod report;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_search, side_cascade, side_sum, SideCascade, BRUTE_MAX_LEN};
pub use canon::{canonicalize, normalize_alpha0, normalize_beta0, orbit};
pub use checkpoint::{Checkpoint, ChunkId};
pub use engine::{
    expand_pair, format_output, output_header, run_search, subsum_representatives, SearchConfig,
    SearchOutcome, StageToggles, DEFAULT_CHUNK_SIZE, DEFAULT_MEMORY_BUDGET,
};
pub use filters::{filter_t1, filter_t2, filter_t3, t3_classes, CandidateRecord, MatchKey, PSD_TOLERANCE};
pub use half::{combined_dft, gen_half_candidates, interleave_halves, HalfCandidate, HalfSequences};
pub use jp30::jp30_pair;
pub use join::{MemoryIndex, SpillJoin, SHARDS};
pub use report::{FilterReport, Stage, StageCounters};
pub use verify::{verify_pair, PairDiagnostic};

/// Role of a sequence: `A` sums to 0, `B` to `1 + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}
