//! The split search: enumerate even/odd halves with fixed sums, filter
//! their interleavings in parallel chunks, and join the two sides.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::feasibility::{
    alpha0_options, beta0_options, eligible_half_pairs, enumerate_subsums, psd_total, FeasiblePsdPair,
};
use crate::quat::{GaussInt, QuatSeq, RootTable, MAX_PACKED_LEN};

use super::brute::side_sum;
use super::canon::{canonicalize, normalize_alpha0, normalize_beta0};
use super::checkpoint::{Checkpoint, ChunkId};
use super::filters::{filter_t3, quarter_a_values, quarter_value_ok, PSD_TOLERANCE};
use super::half::{gen_half_candidates, HalfCandidate};
use super::join::{Match, MemoryIndex, SpillJoin};
use super::report::{FilterReport, Stage, StageCounters};
use super::verify::verify_pair;
use super::Side;

pub const DEFAULT_CHUNK_SIZE: usize = 64;
pub const DEFAULT_MEMORY_BUDGET: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageToggles {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
}

impl Default for StageToggles {
    fn default() -> Self {
        StageToggles { t1: true, t2: true, t3: true }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub len: usize,
    pub half: FeasiblePsdPair,
    /// Index into [`enumerate_subsums`]; `None` runs every assignment.
    pub subsum: Option<usize>,
    /// Maximum number of pairs; 0 is exhaustive.
    pub limit: usize,
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub toggles: StageToggles,
    /// Even-index halves per work chunk.
    pub chunk_size: usize,
    /// A-side survivors above which the join spills to disk.
    pub memory_budget: usize,
    pub spill_dir: Option<PathBuf>,
}

impl SearchConfig {
    /// Defaults for `len` with the half-point pair whose A value is `value_a`.
    pub fn new(len: usize, value_a: u64) -> Result<Self> {
        if len > MAX_PACKED_LEN {
            return Err(Error::UnsupportedLength { len, reason: "search supports lengths up to 64" });
        }
        let total = psd_total(len);
        let half = eligible_half_pairs(len)?
            .into_iter()
            .find(|p| p.value_a == value_a)
            .ok_or(Error::Infeasible { len, a: value_a, b: total.saturating_sub(value_a) })?;
        Ok(SearchConfig {
            len,
            half,
            subsum: None,
            limit: 0,
            threads: 0,
            checkpoint: None,
            output: None,
            toggles: StageToggles::default(),
            chunk_size: DEFAULT_CHUNK_SIZE,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            spill_dir: None,
        })
    }

    /// Hash of every setting that affects which survivors are produced.
    pub fn digest(&self) -> String {
        let text = format!(
            "qlp-search/1 l={} a={} b={} subsum={:?} t1={} t2={} t3={} chunk={}",
            self.len,
            self.half.value_a,
            self.half.value_b,
            self.subsum,
            self.toggles.t1,
            self.toggles.t2,
            self.toggles.t3,
            self.chunk_size
        );
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn validate(&self) -> Result<usize> {
        let len = self.len;
        if len > MAX_PACKED_LEN {
            return Err(Error::UnsupportedLength { len, reason: "search supports lengths up to 64" });
        }
        let pairs = eligible_half_pairs(len)?;
        pairs.iter().position(|p| *p == self.half).ok_or(Error::Infeasible {
            len,
            a: self.half.value_a,
            b: self.half.value_b,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Verified pairs with both members orbit representatives, sorted.
    pub pairs: Vec<(QuatSeq, QuatSeq)>,
    pub report: FilterReport,
    /// False when the pair limit stopped the search early.
    pub exhausted: bool,
}

/// Header line of the pair output format.
pub fn output_header(len: usize, half: &FeasiblePsdPair) -> String {
    format!("# qlp l={len} psd_half={},{}", half.value_a, half.value_b)
}

pub fn format_output(len: usize, half: &FeasiblePsdPair, pairs: &[(QuatSeq, QuatSeq)]) -> String {
    let mut out = output_header(len, half);
    out.push('\n');
    for (a, b) in pairs {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Even-index subsums to enumerate for each side, one per symmetry class.
pub fn subsum_representatives(config: &SearchConfig) -> Result<(Vec<GaussInt>, Vec<GaussInt>)> {
    let len = config.len;
    let beta = side_sum(Side::B);
    let (alphas, betas) = match config.subsum {
        Some(index) => {
            let subs = enumerate_subsums(len, &config.half);
            let s = subs.get(index).ok_or(Error::SubsumOutOfRange { index, count: subs.len() })?;
            (vec![normalize_alpha0(s.alpha0)], vec![normalize_beta0(s.beta0, beta)])
        }
        None => (
            alpha0_options(len, config.half.value_a)
                .into_iter()
                .filter(|&g| normalize_alpha0(g) == g)
                .collect(),
            beta0_options(len, config.half.value_b)
                .into_iter()
                .filter(|&g| normalize_beta0(g, beta) == g)
                .collect::<Vec<_>>(),
        ),
    };
    if alphas.is_empty() || betas.is_empty() {
        return Err(Error::EmptyFeasibleSet { len, a: config.half.value_a, b: config.half.value_b });
    }
    Ok((alphas, betas))
}

struct SideSets {
    len: usize,
    side: Side,
    s0: Vec<HalfCandidate>,
    s1: Vec<HalfCandidate>,
    /// `s1.len()` rows of `len` twiddled values.
    twiddle: Vec<Complex64>,
}

impl SideSets {
    fn new(len: usize, side: Side, sum0: GaussInt) -> Self {
        let k = len / 2;
        let s0: Vec<HalfCandidate> = gen_half_candidates(k, sum0).collect();
        SideSets { len, side, s0, s1: Vec::new(), twiddle: Vec::new() }
    }

    fn fill_odd(&mut self, sum1: GaussInt) {
        if !self.s1.is_empty() {
            return;
        }
        let full = RootTable::shared(self.len);
        self.s1 = gen_half_candidates(self.len / 2, sum1).collect();
        self.twiddle = self.s1.iter().flat_map(|h| h.twiddled(&full)).collect();
    }
}

struct ChunkResult {
    counters: StageCounters,
    survivors: Vec<u128>,
}

fn process_chunk(sets: &SideSets, toggles: StageToggles, quarter: &[u64], range: std::ops::Range<usize>) -> ChunkResult {
    let start = Instant::now();
    let len = sets.len;
    let k = len / 2;
    let side = sets.side;
    let bound = psd_total(len) as f64 + PSD_TOLERANCE;
    let check_t2 = toggles.t2 && len % 4 == 0;
    let mut counters = StageCounters::default();
    let generated = (range.len() * sets.s1.len()) as u64;
    counters.bump(Stage::Generated, generated);
    counters.bump(Stage::ForcedHalf, generated);
    let mut later = std::time::Duration::ZERO;
    let mut survivors = Vec::new();
    for h0 in &sets.s0[range] {
        for (j, h1) in sets.s1.iter().enumerate() {
            if toggles.t1 {
                let tw = &sets.twiddle[j * len..(j + 1) * len];
                let mut ok = true;
                for s in (1..len).filter(|&s| s != k) {
                    let z = h0.dft[if s < k { s } else { s - k }] + tw[s];
                    if z.norm_sqr() > bound {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }
            counters.bump(Stage::T1, 1);
            let t = Instant::now();
            if check_t2 {
                let (x0, x1) = (h0.alt_sum.expect("even half"), h1.alt_sum.expect("even half"));
                let ok = [x0 + x1.mul_i_pow(1), x0 + x1.mul_i_pow(3)]
                    .iter()
                    .all(|q| quarter_value_ok(len, side, q.norm() as u64, quarter));
                counters.charge(Stage::T2, t.elapsed());
                if !ok {
                    later += t.elapsed();
                    continue;
                }
            }
            counters.bump(Stage::T2, 1);
            let seq = QuatSeq::interleave(&h0.elems, &h1.elems).expect("equal halves");
            let t_canon = Instant::now();
            let canonical = canonicalize(&seq, side).1;
            counters.charge(Stage::Canonical, t_canon.elapsed());
            if !canonical {
                later += t.elapsed();
                continue;
            }
            counters.bump(Stage::Canonical, 1);
            if toggles.t3 {
                let t_t3 = Instant::now();
                let ok = filter_t3(&seq);
                counters.charge(Stage::T3, t_t3.elapsed());
                if !ok {
                    later += t.elapsed();
                    continue;
                }
            }
            counters.bump(Stage::T3, 1);
            survivors.push(seq.pack().expect("length within packing limit"));
            later += t.elapsed();
        }
    }
    counters.charge(Stage::T1, start.elapsed().saturating_sub(later));
    ChunkResult { counters, survivors }
}

struct Driver<'a> {
    config: &'a SearchConfig,
    pool: rayon::ThreadPool,
    checkpoint: Option<Checkpoint>,
    loaded: std::collections::BTreeMap<ChunkId, Vec<u128>>,
    quarter: Vec<u64>,
    counters_a: StageCounters,
    counters_b: StageCounters,
}

impl Driver<'_> {
    fn is_complete(&self, id: ChunkId) -> bool {
        self.checkpoint.as_ref().is_some_and(|c| c.is_complete(id))
    }

    fn counters(&mut self, side: Side) -> &mut StageCounters {
        match side {
            Side::A => &mut self.counters_a,
            Side::B => &mut self.counters_b,
        }
    }

    /// Runs one side over all its subsum representatives, handing each
    /// chunk's survivors to `sink` in chunk order with a global ordinal.
    /// `sink` returns true to stop.
    fn run_side(
        &mut self,
        side: Side,
        reps: &[GaussInt],
        sink: &mut dyn FnMut(u64, &[u128]) -> Result<bool>,
    ) -> Result<bool> {
        let len = self.config.len;
        let chunk = self.config.chunk_size.max(1);
        let batch = self.pool.current_num_threads() * 4;
        let mut ordinal_base = 0u64;
        for (rep, &sum0) in reps.iter().enumerate() {
            let sum1 = side_sum(side) - sum0;
            let mut sets = SideSets::new(len, side, sum0);
            let chunks = sets.s0.len().div_ceil(chunk);
            let mut c = 0;
            while c < chunks {
                let id = (side, rep, c);
                if self.is_complete(id) {
                    let survivors = self.loaded.remove(&id).unwrap_or_default();
                    if sink(ordinal_base + c as u64, &survivors)? {
                        return Ok(true);
                    }
                    c += 1;
                    continue;
                }
                let mut pending = Vec::new();
                while c < chunks && pending.len() < batch && !self.is_complete((side, rep, c)) {
                    pending.push(c);
                    c += 1;
                }
                sets.fill_odd(sum1);
                let (toggles, quarter, sets_ref) = (self.config.toggles, &self.quarter, &sets);
                let n0 = sets_ref.s0.len();
                let results: Vec<ChunkResult> = self.pool.install(|| {
                    pending
                        .par_iter()
                        .map(|&i| process_chunk(sets_ref, toggles, quarter, i * chunk..((i + 1) * chunk).min(n0)))
                        .collect()
                });
                for r in &results {
                    self.counters(side).merge(&r.counters);
                }
                if let Some(cp) = self.checkpoint.as_mut() {
                    let ids: Vec<ChunkId> = pending.iter().map(|&i| (side, rep, i)).collect();
                    let batch: Vec<(ChunkId, &[u128])> =
                        ids.iter().zip(&results).map(|(&id, r)| (id, r.survivors.as_slice())).collect();
                    cp.append_survivors(&batch)?;
                    cp.counters_a = self.counters_a;
                    cp.counters_b = self.counters_b;
                    cp.commit(&ids)?;
                }
                let mut stop = false;
                for (&i, r) in pending.iter().zip(&results) {
                    stop |= sink(ordinal_base + i as u64, &r.survivors)?;
                }
                if stop {
                    return Ok(true);
                }
            }
            ordinal_base += chunks as u64;
        }
        Ok(false)
    }
}

/// Keeps the matches of the shortest prefix of B chunks that yields
/// `limit` pairs, so the result does not depend on batch boundaries.
fn apply_limit(mut matches: Vec<Match>, limit: usize) -> Vec<Match> {
    if limit == 0 || matches.len() <= limit {
        return matches;
    }
    matches.sort();
    let cutoff = matches[limit - 1].0;
    matches.retain(|m| m.0 <= cutoff);
    matches
}

pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    let wall = Instant::now();
    let feasible_index = config.validate()?;
    let len = config.len;
    let (alphas, betas) = subsum_representatives(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    let checkpoint = match &config.checkpoint {
        Some(path) => Some(Checkpoint::open(
            path,
            &config.digest(),
            len,
            (config.half.value_a, config.half.value_b),
            feasible_index,
            config.subsum,
        )?),
        None => None,
    };
    let loaded = match &checkpoint {
        Some(cp) => cp.load_survivors()?,
        None => Default::default(),
    };
    let (counters_a, counters_b) = checkpoint
        .as_ref()
        .map(|c| (c.counters_a, c.counters_b))
        .unwrap_or_default();
    let mut driver = Driver {
        config,
        pool,
        checkpoint,
        loaded,
        quarter: quarter_a_values(len),
        counters_a,
        counters_b,
    };

    let mut a_survivors: Vec<u128> = Vec::new();
    driver.run_side(Side::A, &alphas, &mut |_, s| {
        a_survivors.extend_from_slice(s);
        Ok(false)
    })?;

    let join_start = Instant::now();
    let mut join_time = std::time::Duration::ZERO;
    let limit = config.limit;
    let (matches, stopped) = if a_survivors.len() > config.memory_budget {
        let mut spill = SpillJoin::new(len, config.spill_dir.as_deref())?;
        for &a in &a_survivors {
            spill.push_a(a)?;
        }
        drop(a_survivors);
        driver.run_side(Side::B, &betas, &mut |ord, s| {
            for &b in s {
                spill.push_b(ord, b)?;
            }
            Ok(false)
        })?;
        let t = Instant::now();
        let m = spill.finish()?;
        join_time += t.elapsed();
        (m, false)
    } else {
        let index = MemoryIndex::new(len, &a_survivors);
        join_time += join_start.elapsed();
        let mut found: Vec<Match> = Vec::new();
        let stopped = driver.run_side(Side::B, &betas, &mut |ord, s| {
            let t = Instant::now();
            for &b in s {
                index.probe(ord, b, &mut found);
            }
            join_time += t.elapsed();
            Ok(limit > 0 && found.len() >= limit)
        })?;
        (found, stopped)
    };

    let mut pairs: Vec<(QuatSeq, QuatSeq)> = Vec::new();
    for (_, a, b) in apply_limit(matches, limit) {
        let a = QuatSeq::unpack(a, len)?;
        let b = QuatSeq::unpack(b, len)?;
        if verify_pair(&a, &b)?.holds {
            pairs.push((a, b));
        }
    }
    pairs.sort();
    pairs.dedup();
    if limit > 0 {
        pairs.truncate(limit);
    }

    if let Some(path) = &config.output {
        fs::write(path, format_output(len, &config.half, &pairs))?;
    }
    let report = FilterReport {
        len,
        psd_half: (config.half.value_a, config.half.value_b),
        a: driver.counters_a,
        b: driver.counters_b,
        matched: pairs.len() as u64,
        join_seconds: join_time.as_secs_f64(),
        wall_seconds: wall.elapsed().as_secs_f64(),
    };
    Ok(SearchOutcome { pairs, report, exhausted: !stopped })
}

/// Every pair obtained from `(a, b)` by the symmetries modded out by the
/// search: rotations and unit multiples of `a`, rotations of `b`.
pub fn expand_pair(a: &QuatSeq, b: &QuatSeq) -> Vec<(QuatSeq, QuatSeq)> {
    let mut out = Vec::new();
    for x in super::canon::orbit(a, Side::A) {
        for y in super::canon::orbit(b, Side::B) {
            out.push((x.clone(), y));
        }
    }
    out
}

