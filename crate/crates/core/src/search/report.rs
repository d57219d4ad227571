//! Per-stage survivor counters and timings, as `key=value` text.

use std::fmt::Write as _;
use std::time::Duration;

use crate::error::{Error, Result};

use super::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Generated,
    ForcedHalf,
    T1,
    T2,
    Canonical,
    T3,
}

impl Stage {
    pub const ALL: [Stage; 6] =
        [Stage::Generated, Stage::ForcedHalf, Stage::T1, Stage::T2, Stage::Canonical, Stage::T3];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Generated => "generated",
            Stage::ForcedHalf => "forced_half",
            Stage::T1 => "t1",
            Stage::T2 => "t2",
            Stage::Canonical => "canonical",
            Stage::T3 => "t3",
        }
    }

    fn from_name(name: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Survivors after each stage and the CPU time spent in it.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct StageCounters {
    pub counts: [u64; 6],
    pub nanos: [u64; 6],
}

impl StageCounters {
    pub fn count(&self, stage: Stage) -> u64 {
        self.counts[stage as usize]
    }

    pub fn seconds(&self, stage: Stage) -> f64 {
        self.nanos[stage as usize] as f64 * 1e-9
    }

    pub fn bump(&mut self, stage: Stage, n: u64) {
        self.counts[stage as usize] += n;
    }

    pub fn charge(&mut self, stage: Stage, d: Duration) {
        self.nanos[stage as usize] += d.as_nanos() as u64;
    }

    pub fn merge(&mut self, other: &StageCounters) {
        for i in 0..6 {
            self.counts[i] += other.counts[i];
            self.nanos[i] += other.nanos[i];
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] >= w[1])
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FilterReport {
    pub len: usize,
    pub psd_half: (u64, u64),
    pub a: StageCounters,
    pub b: StageCounters,
    pub matched: u64,
    pub join_seconds: f64,
    pub wall_seconds: f64,
}

impl FilterReport {
    pub fn side(&self, side: Side) -> &StageCounters {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.a.is_monotone() && self.b.is_monotone()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "l={}", self.len).unwrap();
        writeln!(out, "psd_half={},{}", self.psd_half.0, self.psd_half.1).unwrap();
        for side in [Side::A, Side::B] {
            let c = self.side(side);
            for stage in Stage::ALL {
                writeln!(out, "{side}.{}={}", stage.name(), c.count(stage)).unwrap();
                writeln!(out, "{side}.{}.seconds={:.6}", stage.name(), c.seconds(stage)).unwrap();
            }
        }
        writeln!(out, "matched={}", self.matched).unwrap();
        writeln!(out, "join.seconds={:.6}", self.join_seconds).unwrap();
        writeln!(out, "wall.seconds={:.6}", self.wall_seconds).unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<FilterReport> {
        let bad = |line: &str| Error::BadCheckpoint(format!("bad report line {line:?}"));
        let mut r = FilterReport::default();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (key, value) = line.split_once('=').ok_or_else(|| bad(line))?;
            let int = || value.parse::<u64>().map_err(|_| bad(line));
            let float = || value.parse::<f64>().map_err(|_| bad(line));
            match key {
                "l" => r.len = int()? as usize,
                "psd_half" => {
                    let (x, y) = value.split_once(',').ok_or_else(|| bad(line))?;
                    r.psd_half = (
                        x.parse().map_err(|_| bad(line))?,
                        y.parse().map_err(|_| bad(line))?,
                    );
                }
                "matched" => r.matched = int()?,
                "join.seconds" => r.join_seconds = float()?,
                "wall.seconds" => r.wall_seconds = float()?,
                _ => {
                    let (side, rest) = key.split_once('.').ok_or_else(|| bad(line))?;
                    let counters = match side {
                        "A" => &mut r.a,
                        "B" => &mut r.b,
                        _ => return Err(bad(line)),
                    };
                    let (stage, seconds) = match rest.strip_suffix(".seconds") {
                        Some(s) => (s, true),
                        None => (rest, false),
                    };
                    let stage = Stage::from_name(stage).ok_or_else(|| bad(line))?;
                    if seconds {
                        counters.nanos[stage as usize] = (float()? * 1e9).round() as u64;
                    } else {
                        counters.counts[stage as usize] = int()?;
                    }
                }
            }
        }
        Ok(r)
    }

    /// Aligned table for terminal display.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "length {}  half-point pair ({},{})", self.len, self.psd_half.0, self.psd_half.1)
            .unwrap();
        writeln!(out, "{:<12} {:>16} {:>10} {:>16} {:>10}", "stage", "A", "A sec", "B", "B sec").unwrap();
        for stage in Stage::ALL {
            writeln!(
                out,
                "{:<12} {:>16} {:>10.3} {:>16} {:>10.3}",
                stage.name(),
                self.a.count(stage),
                self.a.seconds(stage),
                self.b.count(stage),
                self.b.seconds(stage)
            )
            .unwrap();
        }
        writeln!(out, "matched pairs {}  join {:.3}s  wall {:.3}s", self.matched, self.join_seconds, self.wall_seconds)
            .unwrap();
        out
    }
}
