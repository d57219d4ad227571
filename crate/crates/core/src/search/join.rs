//! Matching A survivors against B survivors on complementary keys, in
//! memory or through hash-sharded temporary files.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::Result;
use crate::quat::QuatSeq;

use super::filters::MatchKey;

pub const SHARDS: usize = 64;

/// A matched pair of packed sequences with the ordinal of the B chunk that
/// produced it.
pub type Match = (u64, u128, u128);

fn key_of(packed: u128, len: usize) -> MatchKey {
    MatchKey::of(&QuatSeq::unpack(packed, len).expect("packed length"))
}

pub struct MemoryIndex {
    len: usize,
    map: HashMap<MatchKey, Vec<u128>>,
}

impl MemoryIndex {
    pub fn new(len: usize, a_side: &[u128]) -> Self {
        let mut map: HashMap<MatchKey, Vec<u128>> = HashMap::new();
        for &a in a_side {
            map.entry(key_of(a, len)).or_default().push(a);
        }
        MemoryIndex { len, map }
    }

    pub fn probe(&self, ordinal: u64, b: u128, out: &mut Vec<Match>) {
        if let Some(list) = self.map.get(&key_of(b, self.len).complement()) {
            out.extend(list.iter().map(|&a| (ordinal, a, b)));
        }
    }
}

fn shard_of(key: &MatchKey) -> usize {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &byte in &key.0 {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    (h % SHARDS as u64) as usize
}

/// Shard files keyed by the A-side key; B records are written under their
/// complemented key so that matching records share a shard.
pub struct SpillJoin {
    len: usize,
    dir: tempfile::TempDir,
    a_files: Vec<BufWriter<File>>,
    b_files: Vec<BufWriter<File>>,
}

impl SpillJoin {
    pub fn new(len: usize, parent: Option<&Path>) -> Result<Self> {
        let dir = match parent {
            Some(p) => tempfile::tempdir_in(p)?,
            None => tempfile::tempdir()?,
        };
        let open = |prefix: &str, i: usize| -> Result<BufWriter<File>> {
            Ok(BufWriter::new(File::create(dir.path().join(format!("{prefix}-{i:03}.bin")))?))
        };
        let a_files = (0..SHARDS).map(|i| open("a", i)).collect::<Result<_>>()?;
        let b_files = (0..SHARDS).map(|i| open("b", i)).collect::<Result<_>>()?;
        Ok(SpillJoin { len, dir, a_files, b_files })
    }

    pub fn push_a(&mut self, a: u128) -> Result<()> {
        let key = key_of(a, self.len);
        let f = &mut self.a_files[shard_of(&key)];
        f.write_all(&key.0)?;
        f.write_all(&a.to_le_bytes())?;
        Ok(())
    }

    pub fn push_b(&mut self, ordinal: u64, b: u128) -> Result<()> {
        let key = key_of(b, self.len).complement();
        let f = &mut self.b_files[shard_of(&key)];
        f.write_all(&key.0)?;
        f.write_all(&b.to_le_bytes())?;
        f.write_all(&ordinal.to_le_bytes())?;
        Ok(())
    }

    /// Joins shard by shard in shard order.
    pub fn finish(mut self) -> Result<Vec<Match>> {
        for f in self.a_files.iter_mut().chain(self.b_files.iter_mut()) {
            f.flush()?;
        }
        drop(self.a_files);
        drop(self.b_files);
        let key_len = 4 * (self.len / 2);
        let mut out = Vec::new();
        for i in 0..SHARDS {
            let mut index: HashMap<Vec<u8>, Vec<u128>> = HashMap::new();
            let mut r = BufReader::new(File::open(self.dir.path().join(format!("a-{i:03}.bin")))?);
            let mut rec = vec![0u8; key_len + 16];
            while read_record(&mut r, &mut rec)? {
                let a = u128::from_le_bytes(rec[key_len..].try_into().unwrap());
                index.entry(rec[..key_len].to_vec()).or_default().push(a);
            }
            let mut r = BufReader::new(File::open(self.dir.path().join(format!("b-{i:03}.bin")))?);
            let mut rec = vec![0u8; key_len + 24];
            while read_record(&mut r, &mut rec)? {
                let b = u128::from_le_bytes(rec[key_len..key_len + 16].try_into().unwrap());
                let ordinal = u64::from_le_bytes(rec[key_len + 16..].try_into().unwrap());
                if let Some(list) = index.get(&rec[..key_len]) {
                    out.extend(list.iter().map(|&a| (ordinal, a, b)));
                }
            }
        }
        Ok(out)
    }
}

fn read_record(r: &mut impl Read, buf: &mut [u8]) -> Result<bool> {
    match r.read_exact(buf) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => Ok(false),
        Err(e) => Err(e.into()),
    }
}
