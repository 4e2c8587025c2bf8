//! Brute-force ground truth for small instances.
//!
//! Everything here walks every matching of the instance, so it is guarded by
//! [`MAX_SIDE`]. The critical-coverage optimum is found by the enumeration
//! itself, independently of the assignment solver in [`crate::verify`].

use serde::Serialize;
use thiserror::Error;

use crate::model::{Instance, Matching};
use crate::verify::{self, CriticalCount, Mates, VerifyError};

/// Largest side size the oracle accepts.
pub const MAX_SIDE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance is {n_a}x{n_b}; the oracle handles at most {limit} vertices per side")]
    TooLarge {
        n_a: usize,
        n_b: usize,
        limit: usize,
    },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn guard(inst: &Instance, limit: usize) -> Result<(), OracleError> {
    if inst.n_a() > limit || inst.n_b() > limit {
        return Err(OracleError::TooLarge {
            n_a: inst.n_a(),
            n_b: inst.n_b(),
            limit,
        });
    }
    Ok(())
}

/// Iterator over every matching of an instance, the empty one first.
///
/// Each A-vertex picks "unmatched" or one of its neighbours; the choice
/// vector advances like an odometer, skipping choices that reuse a B-vertex.
pub struct Matchings<'a> {
    inst: &'a Instance,
    // 0 = unmatched, k = k-th entry of the neighbour list plus one
    choice: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl Matchings<'_> {
    fn neighbour(&self, a: usize, choice: usize) -> usize {
        self.inst.neighbours_a(a)[choice - 1].index
    }

    fn current(&self) -> Matching {
        Matching {
            pairs: self
                .choice
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(a, &c)| (a, self.neighbour(a, c)))
                .collect(),
        }
    }

    fn advance(&mut self) -> bool {
        for a in (0..self.choice.len()).rev() {
            let current = self.choice[a];
            if current > 0 {
                let b = self.neighbour(a, current);
                self.used[b] = false;
            }
            let degree = self.inst.neighbours_a(a).len();
            let next = (current + 1..=degree).find(|&c| !self.used[self.neighbour(a, c)]);
            match next {
                Some(c) => {
                    self.choice[a] = c;
                    let b = self.neighbour(a, c);
                    self.used[b] = true;
                    return true;
                }
                None => self.choice[a] = 0,
            }
        }
        false
    }
}

impl Iterator for Matchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// Every matching of `inst`, each exactly once.
pub fn enumerate_matchings(inst: &Instance) -> Result<Matchings<'_>, OracleError> {
    guard(inst, MAX_SIDE)?;
    Ok(Matchings {
        inst,
        choice: vec![0; inst.n_a()],
        used: vec![false; inst.n_b()],
        started: false,
        done: false,
    })
}

fn coverage(inst: &Instance, m: &Matching) -> CriticalCount {
    let mut count = CriticalCount::default();
    for &(a, b) in &m.pairs {
        count.from_a += usize::from(inst.is_critical_a(a));
        count.from_b += usize::from(inst.is_critical_b(b));
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub max_critical_rsm_size: usize,
    /// First maximum-size critical relaxed stable matching in enumeration
    /// order.
    pub witness: Matching,
    pub num_critical_rsm: u64,
    pub num_critical_matchings: u64,
    /// Best critical coverage over all matchings, by enumeration.
    pub max_critical_coverage: usize,
    /// Per-side critical counts of the first critical matching found.
    pub per_side_critical_counts: CriticalCount,
    /// Whether every critical matching has the same per-side counts.
    pub per_side_uniform: bool,
}

/// Exhaustive search for the largest critical relaxed stable matching.
pub fn max_critical_rsm(inst: &Instance) -> Result<OracleResult, OracleError> {
    let mut best: Option<OracleResult> = None;
    for m in enumerate_matchings(inst)? {
        let cov = coverage(inst, &m);
        let reset = best
            .as_ref()
            .is_none_or(|r| cov.total() > r.max_critical_coverage);
        if reset {
            best = Some(OracleResult {
                max_critical_rsm_size: 0,
                witness: Matching::default(),
                num_critical_rsm: 0,
                num_critical_matchings: 0,
                max_critical_coverage: cov.total(),
                per_side_critical_counts: cov,
                per_side_uniform: true,
            });
        }
        let r = best.as_mut().expect("initialized above");
        if cov.total() < r.max_critical_coverage {
            continue;
        }
        r.num_critical_matchings += 1;
        r.per_side_uniform &= cov == r.per_side_critical_counts;
        if verify::is_rsm(inst, &m)?.is_rsm {
            if r.num_critical_rsm == 0 || m.len() > r.max_critical_rsm_size {
                r.max_critical_rsm_size = m.len();
                r.witness = m;
            }
            r.num_critical_rsm += 1;
        }
    }
    Ok(best.expect("the empty matching is always enumerated"))
}

/// Largest critical coverage over all matchings, by enumeration.
pub fn brute_force_max_coverage(inst: &Instance) -> Result<usize, OracleError> {
    Ok(enumerate_matchings(inst)?
        .map(|m| coverage(inst, &m).total())
        .max()
        .unwrap_or(0))
}

/// Size of a largest weakly stable matching (no blocking pair at all).
pub fn max_stable_size(inst: &Instance) -> Result<usize, OracleError> {
    let mut best = 0;
    for m in enumerate_matchings(inst)? {
        if m.len() > best && verify::blocking_pairs(inst, &m)?.is_empty() {
            best = m.len();
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Popular {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PopularityVote {
    pub winner: Popular,
    pub for_first: usize,
    pub for_second: usize,
}

/// Head-to-head vote between two matchings. Every vertex votes for the
/// matching giving it a strictly better-ranked partner; being unmatched is
/// worse than any partner and equal ranks abstain.
pub fn more_popular(
    inst: &Instance,
    first: &Matching,
    second: &Matching,
) -> Result<PopularityVote, OracleError> {
    let (m1, m2) = (Mates::new(inst, first)?, Mates::new(inst, second)?);
    let (mut for_first, mut for_second) = (0, 0);
    let mut tally = |r1: Option<u32>, r2: Option<u32>| {
        // None sorts last: unmatched is worst
        let key = |r: Option<u32>| r.unwrap_or(u32::MAX);
        match key(r1).cmp(&key(r2)) {
            std::cmp::Ordering::Less => for_first += 1,
            std::cmp::Ordering::Greater => for_second += 1,
            std::cmp::Ordering::Equal => {}
        }
    };
    for a in 0..inst.n_a() {
        let rank = |p: Option<usize>| p.and_then(|b| inst.rank_at_a(a, b));
        tally(rank(m1.of_a[a]), rank(m2.of_a[a]));
    }
    for b in 0..inst.n_b() {
        let rank = |p: Option<usize>| p.and_then(|a| inst.rank_at_b(b, a));
        tally(rank(m1.of_b[b]), rank(m2.of_b[b]));
    }
    let winner = match for_first.cmp(&for_second) {
        std::cmp::Ordering::Greater => Popular::First,
        std::cmp::Ordering::Less => Popular::Second,
        std::cmp::Ordering::Equal => Popular::Tie,
    };
    Ok(PopularityVote {
        winner,
        for_first,
        for_second,
    })
}
