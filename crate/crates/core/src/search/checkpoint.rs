//! Resumable progress: a JSON document of completed chunks plus a sidecar
//! file of survivors, one per line.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::report::StageCounters;
use super::Side;

const VERSION: u32 = 1;

/// A unit of work: one chunk of even-index halves for one subsum choice.
pub type ChunkId = (Side, usize, usize);

#[derive(Debug, Serialize, Deserialize)]
struct Ranges {
    side: Side,
    rep: usize,
    /// Half-open `[start, end)` chunk ranges.
    ranges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Document {
    version: u32,
    digest: String,
    len: usize,
    psd_half: [u64; 2],
    feasible_index: usize,
    subsum_index: Option<usize>,
    completed: Vec<Ranges>,
    counters_a: StageCounters,
    counters_b: StageCounters,
}

#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    digest: String,
    len: usize,
    psd_half: [u64; 2],
    feasible_index: usize,
    subsum_index: Option<usize>,
    completed: BTreeSet<ChunkId>,
    pub counters_a: StageCounters,
    pub counters_b: StageCounters,
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".survivors");
    PathBuf::from(name)
}

fn to_ranges(chunks: &BTreeSet<ChunkId>) -> Vec<Ranges> {
    let mut out: Vec<Ranges> = Vec::new();
    for &(side, rep, chunk) in chunks {
        match out.last_mut() {
            Some(r) if r.side == side && r.rep == rep => match r.ranges.last_mut() {
                Some(last) if last[1] == chunk => last[1] = chunk + 1,
                _ => r.ranges.push([chunk, chunk + 1]),
            },
            _ => out.push(Ranges { side, rep, ranges: vec![[chunk, chunk + 1]] }),
        }
    }
    out
}

impl Checkpoint {
    /// Loads `path` if it exists, failing on a digest mismatch; otherwise
    /// starts empty.
    pub fn open(
        path: &Path,
        digest: &str,
        len: usize,
        psd_half: (u64, u64),
        feasible_index: usize,
        subsum_index: Option<usize>,
    ) -> Result<Checkpoint> {
        let mut cp = Checkpoint {
            path: path.to_path_buf(),
            digest: digest.to_string(),
            len,
            psd_half: [psd_half.0, psd_half.1],
            feasible_index,
            subsum_index,
            completed: BTreeSet::new(),
            counters_a: StageCounters::default(),
            counters_b: StageCounters::default(),
        };
        if !path.exists() {
            return Ok(cp);
        }
        let doc: Document = serde_json::from_str(&fs::read_to_string(path)?)?;
        if doc.version != VERSION {
            return Err(Error::BadCheckpoint(format!("unsupported version {}", doc.version)));
        }
        if doc.digest != digest {
            return Err(Error::CheckpointMismatch { path: path.to_path_buf() });
        }
        for r in doc.completed {
            for [start, end] in r.ranges {
                cp.completed.extend((start..end).map(|c| (r.side, r.rep, c)));
            }
        }
        cp.counters_a = doc.counters_a;
        cp.counters_b = doc.counters_b;
        Ok(cp)
    }

    pub fn is_complete(&self, id: ChunkId) -> bool {
        self.completed.contains(&id)
    }

    pub fn completed(&self) -> impl Iterator<Item = &ChunkId> {
        self.completed.iter()
    }

    /// Appends survivors of finished chunks to the sidecar and syncs it.
    pub fn append_survivors(&self, batch: &[(ChunkId, &[u128])]) -> Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(sidecar(&self.path))?;
        let mut text = String::new();
        for ((side, rep, chunk), packed) in batch {
            for p in packed.iter() {
                text.push_str(&format!("{side} {rep} {chunk} {p:032x}\n"));
            }
        }
        file.write_all(text.as_bytes())?;
        file.sync_data()?;
        Ok(())
    }

    /// Marks chunks complete and rewrites the document atomically.
    pub fn commit(&mut self, ids: &[ChunkId]) -> Result<()> {
        self.completed.extend(ids.iter().copied());
        let doc = Document {
            version: VERSION,
            digest: self.digest.clone(),
            len: self.len,
            psd_half: self.psd_half,
            feasible_index: self.feasible_index,
            subsum_index: self.subsum_index,
            completed: to_ranges(&self.completed),
            counters_a: self.counters_a,
            counters_b: self.counters_b,
        };
        let tmp = self.path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&doc)?.as_bytes())?;
            f.sync_data()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }

    /// Survivors of completed chunks, deduplicated, in chunk order.
    pub fn load_survivors(&self) -> Result<BTreeMap<ChunkId, Vec<u128>>> {
        let mut out: BTreeMap<ChunkId, BTreeSet<u128>> = BTreeMap::new();
        let path = sidecar(&self.path);
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                let bad = || Error::BadCheckpoint(format!("bad survivor line {line:?}"));
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 4 {
                    return Err(bad());
                }
                let side = match f[0] {
                    "A" => Side::A,
                    "B" => Side::B,
                    _ => return Err(bad()),
                };
                let rep = f[1].parse().map_err(|_| bad())?;
                let chunk = f[2].parse().map_err(|_| bad())?;
                let packed = u128::from_str_radix(f[3], 16).map_err(|_| bad())?;
                if self.completed.contains(&(side, rep, chunk)) {
                    out.entry((side, rep, chunk)).or_default().insert(packed);
                }
            }
        }
        Ok(out.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        let mut cp = Checkpoint::open(&path, "abc", 6, (4, 10), 0, None).unwrap();
        let ids = [(Side::A, 0, 0), (Side::A, 0, 1), (Side::B, 1, 3)];
        cp.append_survivors(&[(ids[0], &[5, 7]), (ids[2], &[9])]).unwrap();
        // Crash before commit leaves an orphan line that must be ignored.
        cp.append_survivors(&[((Side::B, 1, 4), &[11])]).unwrap();
        cp.commit(&ids).unwrap();
        cp.append_survivors(&[(ids[0], &[5])]).unwrap();

        let again = Checkpoint::open(&path, "abc", 6, (4, 10), 0, None).unwrap();
        assert!(again.is_complete((Side::A, 0, 1)));
        assert!(!again.is_complete((Side::B, 1, 4)));
        let s = again.load_survivors().unwrap();
        assert_eq!(s[&ids[0]], vec![5, 7]);
        assert_eq!(s[&ids[2]], vec![9]);
        assert!(!s.contains_key(&(Side::B, 1, 4)));
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"digest\": \"abc\""));

        match Checkpoint::open(&path, "xyz", 6, (4, 10), 0, None) {
            Err(Error::CheckpointMismatch { .. }) => {}
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn ranges_compress() {
        let set: BTreeSet<ChunkId> =
            [(Side::A, 0, 0), (Side::A, 0, 1), (Side::A, 0, 3), (Side::B, 0, 0)].into_iter().collect();
        let r = to_ranges(&set);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].ranges, vec![[0, 2], [3, 4]]);
    }
}
