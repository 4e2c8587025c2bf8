use std::fmt;

use serde::{Deserialize, Serialize};

/// A proposer's level, stored as one integer code so that a single total
/// order covers every comparison: ordinary level `l` is `2l` and the starred
/// sub-level of `t` is `2t + 1`. This gives `0 < 1 < … < t < t* < t+1 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level(u32);

impl Level {
    pub const ZERO: Level = Level(0);

    pub fn ordinary(level: usize) -> Self {
        Level(u32::try_from(2 * level).expect("level fits in u32"))
    }

    /// The starred sub-level `t*`.
    pub fn star(t: usize) -> Self {
        Level(Level::ordinary(t).0 + 1)
    }

    pub fn from_code(code: u32) -> Self {
        Level(code)
    }

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_star(self) -> bool {
        self.0 % 2 == 1
    }

    /// Partition bucket: the ordinary level, with `t*` collapsed onto `t`.
    pub fn bucket(self) -> usize {
        (self.0 / 2) as usize
    }

    /// The next ordinary level (`t*` steps to `t + 1`).
    pub fn next_ordinary(self) -> Self {
        Level::ordinary(self.bucket() + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_star() {
            write!(f, "{}*", self.bucket())
        } else {
            write!(f, "{}", self.bucket())
        }
    }
}
