//! Three-valued verdicts for window-truncated checks.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Status>) -> Status {
        it.into_iter().fold(Status::Pass, Status::and)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Default share of the window treated as the horizon.
pub const DEFAULT_MARGIN_PERCENT: usize = 25;

/// The top part of a window where truncation effects may show.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizon {
    pub lo: i64,
    pub hi: i64,
    pub start: i64,
}

impl Horizon {
    pub fn new(lo: i64, hi: i64, percent: usize) -> Horizon {
        let count = (hi - lo + 1).max(0) as usize;
        let margin = (count * percent).div_ceil(100).max(1) as i64;
        Horizon { lo, hi, start: hi - margin + 1 }
    }

    pub fn default_for(lo: i64, hi: i64) -> Horizon {
        Horizon::new(lo, hi, DEFAULT_MARGIN_PERCENT)
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.start && n <= self.hi
    }

    /// Whether an eventual level `n0` for data based at `m` is trustworthy.
    pub fn certifies(&self, m: i64, n0: i64) -> bool {
        n0 <= m.max(self.start)
    }
}
