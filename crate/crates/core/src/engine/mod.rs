//! The multi-level proposal algorithm.
//!
//! Side A proposes, side B accepts or rejects. A proposer climbs through the
//! levels `0 .. t-1` courting critical neighbours only (strict list PrefSC),
//! runs the ties mechanics over its full tied list at `t` and again with star
//! status at `t*`, and, if it is critical, retries its full strict list PrefS
//! at every level `t+1 ..= s+t`. A B-vertex always prefers a higher level;
//! inside the `t`/`t*` band the star only breaks rank ties.
//!
//! Work is a single FIFO queue seeded with every A-vertex at level 0 in index
//! order, which makes a run fully deterministic.

mod level;

pub use level::Level;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{derive_pref_s, derive_pref_sc, Instance, Matching};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("a{a} and b{b} are not neighbours")]
    NotNeighbours { a: usize, b: usize },
    #[error("a{a} has no proposal left at level {level}")]
    Exhausted { a: usize, level: Level },
    #[error("a{a} is matched and cannot propose")]
    AlreadyMatched { a: usize },
    #[error("proposal count {count} exceeds the bound {bound}")]
    BoundExceeded { count: u64, bound: u64 },
}

/// One matched pair together with the level of its A-endpoint when the pair
/// was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeveledPair {
    pub a: usize,
    pub b: usize,
    pub level: Level,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeveledMatching {
    pub pairs: Vec<LeveledPair>,
}

impl LeveledMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn to_matching(&self) -> Matching {
        self.pairs.iter().map(|p| (p.a, p.b)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCount {
    pub level: Level,
    pub label: String,
    pub proposals: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub proposal_count: u64,
    /// `(s + t + 3) * |E|`.
    pub proposal_bound: u64,
    pub histogram: Vec<LevelCount>,
    /// Level of every A-vertex when the queue drained.
    pub final_levels: Vec<Level>,
    pub uncertain_proposals: u64,
    pub marks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub matching: LeveledMatching,
    pub stats: RunStats,
}

/// Everything observable that happens during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Event {
    Propose {
        a: usize,
        b: usize,
        level: Level,
    },
    /// `b` accepts `a`. `displaced` is the previous partner of `b`, if any.
    Accept {
        a: usize,
        b: usize,
        level: Level,
        uncertain: bool,
        displaced: Option<usize>,
    },
    /// `b` rejects the proposal of `a`.
    Reject {
        a: usize,
        b: usize,
        level: Level,
    },
    Mark {
        a: usize,
        b: usize,
    },
    Unmark {
        a: usize,
        b: usize,
    },
    LevelUp {
        a: usize,
        from: Level,
        to: Level,
    },
    /// `a` stays unmatched for good.
    Retire {
        a: usize,
        level: Level,
    },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Event::Propose { a, b, level } => write!(f, "propose a{a}@{level} -> b{b}"),
            Event::Accept {
                a,
                b,
                level,
                uncertain,
                displaced,
            } => {
                write!(f, "accept b{b} <- a{a}@{level}")?;
                if uncertain {
                    f.write_str(" (uncertain)")?;
                }
                if let Some(d) = displaced {
                    write!(f, ", drops a{d}")?;
                }
                Ok(())
            }
            Event::Reject { a, b, level } => write!(f, "reject b{b} x a{a}@{level}"),
            Event::Mark { a, b } => write!(f, "mark a{a} marks b{b}"),
            Event::Unmark { a, b } => write!(f, "unmark a{a} unmarks b{b}"),
            Event::LevelUp { a, from, to } => write!(f, "level a{a} {from} -> {to}"),
            Event::Retire { a, level } => write!(f, "retire a{a}@{level}"),
        }
    }
}

/// Outcome of a comparison made by a B-vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preferred {
    Challenger,
    Incumbent,
}

/// Which clause of the favourite-neighbour rule selected the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FavouriteRule {
    Unmatched,
    Unproposed,
    Marked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Favourite {
    pub b: usize,
    pub rank: u32,
    pub rule: FavouriteRule,
    /// Position of `b` in the rank-sorted neighbour list of the proposer.
    position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// Below `t`: PrefSC, level-based acceptance.
    Critical,
    /// `t` or `t*`: full tied list, ties mechanics.
    Ties,
    /// Above `t*`: PrefS, level-based acceptance.
    Escalated,
}

#[derive(Debug, Clone)]
pub struct ProposerState {
    pub level: Level,
    pub matched_to: Option<usize>,
    /// Strict phases: number of entries of the current list already proposed.
    cursor: usize,
    /// Ties phase: proposed-at-this-level flags, by neighbour position.
    proposed: Vec<bool>,
    /// Marks, by neighbour position.
    marked: Vec<bool>,
}

impl ProposerState {
    fn new(degree: usize) -> Self {
        ProposerState {
            level: Level::ZERO,
            matched_to: None,
            cursor: 0,
            proposed: vec![false; degree],
            marked: vec![false; degree],
        }
    }

    fn enter(&mut self, level: Level) {
        self.level = level;
        self.cursor = 0;
        self.proposed.iter_mut().for_each(|p| *p = false);
        self.marked.iter_mut().for_each(|m| *m = false);
    }
}

/// The full state of one run. Drive it with [`EngineState::run`] or step by
/// step with [`EngineState::step`].
pub struct EngineState<'a> {
    inst: &'a Instance,
    t: usize,
    top: Level,
    pref_s: Vec<Vec<usize>>,
    pref_sc: Vec<Vec<usize>>,
    proposers: Vec<ProposerState>,
    partner: Vec<Option<(usize, Level)>>,
    uncertain: Vec<bool>,
    queue: VecDeque<(usize, Level)>,
    proposal_count: u64,
    proposal_bound: u64,
    histogram: BTreeMap<Level, u64>,
    uncertain_proposals: u64,
    marks: u64,
    trace: Option<Vec<Event>>,
}

impl<'a> EngineState<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let (s, t) = (inst.s(), inst.t());
        let pref_s = (0..inst.n_a())
            .map(|a| derive_pref_s(inst, a).expect("index in range").order)
            .collect();
        let pref_sc = (0..inst.n_a())
            .map(|a| derive_pref_sc(inst, a).expect("index in range").order)
            .collect();
        EngineState {
            inst,
            t,
            top: Level::ordinary(s + t),
            pref_s,
            pref_sc,
            proposers: (0..inst.n_a())
                .map(|a| ProposerState::new(inst.neighbours_a(a).len()))
                .collect(),
            partner: vec![None; inst.n_b()],
            uncertain: vec![false; inst.n_b()],
            queue: (0..inst.n_a()).map(|a| (a, Level::ZERO)).collect(),
            proposal_count: 0,
            proposal_bound: (s + t + 3) as u64 * inst.num_edges() as u64,
            histogram: BTreeMap::new(),
            uncertain_proposals: 0,
            marks: 0,
            trace: None,
        }
    }

    /// Records every event; see [`EngineState::events`].
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn events(&self) -> &[Event] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn proposer(&self, a: usize) -> &ProposerState {
        &self.proposers[a]
    }

    /// Current partner of `b` and the level it was matched at.
    pub fn partner_of(&self, b: usize) -> Option<(usize, Level)> {
        self.partner[b]
    }

    pub fn is_uncertain(&self, b: usize) -> bool {
        self.uncertain[b]
    }

    pub fn is_marked(&self, a: usize, b: usize) -> bool {
        self.position(a, b)
            .is_some_and(|p| self.proposers[a].marked[p])
    }

    pub fn proposal_count(&self) -> u64 {
        self.proposal_count
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    fn kiraly_level(&self) -> Level {
        Level::ordinary(self.t)
    }

    fn star_level(&self) -> Level {
        Level::star(self.t)
    }

    fn phase(&self, level: Level) -> Phase {
        if level < self.kiraly_level() {
            Phase::Critical
        } else if level <= self.star_level() {
            Phase::Ties
        } else {
            Phase::Escalated
        }
    }

    fn position(&self, a: usize, b: usize) -> Option<usize> {
        self.inst.neighbours_a(a).iter().position(|n| n.index == b)
    }

    fn emit(&mut self, event: Event) {
        log::trace!("{event}");
        if let Some(trace) = &mut self.trace {
            trace.push(event);
        }
    }

    fn count_proposal(&mut self, a: usize, b: usize, level: Level) -> Result<(), EngineError> {
        self.proposal_count += 1;
        *self.histogram.entry(level).or_default() += 1;
        self.emit(Event::Propose { a, b, level });
        if self.proposal_count > self.proposal_bound {
            return Err(EngineError::BoundExceeded {
                count: self.proposal_count,
                bound: self.proposal_bound,
            });
        }
        Ok(())
    }

    /// How `b` ranks `challenger` against `incumbent`.
    ///
    /// Across different phases the higher level wins outright. Inside the
    /// `t`/`t*` band a strictly better rank wins and a rank tie goes to a
    /// starred challenger over an unstarred incumbent. At equal ordinary
    /// levels a strictly better rank is required.
    pub fn prefers(
        &self,
        b: usize,
        challenger: (usize, Level),
        incumbent: (usize, Level),
    ) -> Result<Preferred, EngineError> {
        let rank = |a: usize| {
            self.inst
                .rank_at_b(b, a)
                .ok_or(EngineError::NotNeighbours { a, b })
        };
        let (rc, ri) = (rank(challenger.0)?, rank(incumbent.0)?);
        let (lc, li) = (challenger.1, incumbent.1);
        let challenger_wins = if self.phase(lc) == Phase::Ties && self.phase(li) == Phase::Ties {
            rc < ri || (rc == ri && lc.is_star() && !li.is_star())
        } else {
            lc > li || (lc == li && rc < ri)
        };
        Ok(if challenger_wins {
            Preferred::Challenger
        } else {
            Preferred::Incumbent
        })
    }

    /// Matches `a` to `b` at `level`; a displaced partner goes back on the
    /// queue at its own level.
    fn install(&mut self, a: usize, b: usize, level: Level, uncertain: bool) -> Option<usize> {
        let displaced = self.partner[b].replace((a, level));
        self.proposers[a].matched_to = Some(b);
        self.uncertain[b] = uncertain;
        if uncertain {
            self.uncertain_proposals += 1;
        }
        self.emit(Event::Accept {
            a,
            b,
            level,
            uncertain,
            displaced: displaced.map(|(d, _)| d),
        });
        displaced.map(|(d, dl)| {
            self.proposers[d].matched_to = None;
            self.queue.push_back((d, dl));
            d
        })
    }

    fn reject(&mut self, a: usize, b: usize, level: Level) {
        self.emit(Event::Reject { a, b, level });
        self.queue.push_back((a, level));
    }

    fn strict_list(&self, a: usize, level: Level) -> &[usize] {
        match self.phase(level) {
            Phase::Critical => &self.pref_sc[a],
            _ => &self.pref_s[a],
        }
    }

    /// One strict-list proposal: `a` proposes to the first entry of PrefSC
    /// (below `t`) or PrefS (above `t*`) it has not proposed to at this level.
    pub fn critical_propose(&mut self, a: usize) -> Result<(), EngineError> {
        let level = self.proposers[a].level;
        if self.proposers[a].matched_to.is_some() {
            return Err(EngineError::AlreadyMatched { a });
        }
        let cursor = self.proposers[a].cursor;
        let b = match (self.phase(level), self.strict_list(a, level).get(cursor)) {
            (Phase::Ties, _) | (_, None) => return Err(EngineError::Exhausted { a, level }),
            (_, Some(&b)) => b,
        };
        self.proposers[a].cursor += 1;
        self.count_proposal(a, b, level)?;

        match self.partner[b] {
            None => {
                self.install(a, b, level, false);
            }
            Some(incumbent) => match self.prefers(b, (a, level), incumbent)? {
                Preferred::Challenger => {
                    self.install(a, b, level, false);
                }
                Preferred::Incumbent => self.reject(a, b, level),
            },
        }
        Ok(())
    }

    /// Best rank holding an unproposed or marked neighbour of `a`, and within
    /// it: the lowest-index unmatched neighbour, else the lowest-index
    /// unproposed one, else the lowest-index marked one.
    pub fn favourite_neighbour(&self, a: usize) -> Option<Favourite> {
        let state = &self.proposers[a];
        let nbrs = self.inst.neighbours_a(a);
        let first = (0..nbrs.len()).find(|&p| !state.proposed[p] || state.marked[p])?;
        let rank = nbrs[first].rank;
        // neighbour lists are sorted by (rank, index): the tie group is a
        // contiguous range and the first hit in it has the lowest index
        let group =
            nbrs.partition_point(|n| n.rank < rank)..nbrs.partition_point(|n| n.rank <= rank);
        let pick = |rule: FavouriteRule, p: usize| Favourite {
            b: nbrs[p].index,
            rank,
            rule,
            position: p,
        };
        if let Some(p) = group
            .clone()
            .find(|&p| self.partner[nbrs[p].index].is_none())
        {
            return Some(pick(FavouriteRule::Unmatched, p));
        }
        if let Some(p) = group.clone().find(|&p| !state.proposed[p]) {
            return Some(pick(FavouriteRule::Unproposed, p));
        }
        group
            .clone()
            .find(|&p| state.marked[p])
            .map(|p| pick(FavouriteRule::Marked, p))
    }

    /// One ties-phase proposal of `a` (at level `t` or `t*`) to its favourite
    /// neighbour.
    pub fn ties_propose(&mut self, a: usize) -> Result<(), EngineError> {
        let level = self.proposers[a].level;
        if self.proposers[a].matched_to.is_some() {
            return Err(EngineError::AlreadyMatched { a });
        }
        let fav = match (self.phase(level), self.favourite_neighbour(a)) {
            (Phase::Ties, Some(fav)) => fav,
            _ => return Err(EngineError::Exhausted { a, level }),
        };
        let b = fav.b;
        if self.proposers[a].marked[fav.position] {
            self.proposers[a].marked[fav.position] = false;
            self.emit(Event::Unmark { a, b });
        }
        self.proposers[a].proposed[fav.position] = true;
        self.count_proposal(a, b, level)?;

        match self.partner[b] {
            None => {
                let uncertain = self.has_open_tie(a, fav);
                self.install(a, b, level, uncertain);
            }
            Some((incumbent, _)) if self.uncertain[b] => {
                self.install(a, b, level, false);
                let p = self
                    .position(incumbent, b)
                    .expect("incumbent is a neighbour");
                self.proposers[incumbent].marked[p] = true;
                self.marks += 1;
                self.emit(Event::Mark { a: incumbent, b });
            }
            Some(incumbent) => match self.prefers(b, (a, level), incumbent)? {
                Preferred::Challenger => {
                    self.install(a, b, level, false);
                }
                Preferred::Incumbent => self.reject(a, b, level),
            },
        }
        Ok(())
    }

    /// Whether `a` still has another neighbour at the favourite's rank that
    /// is unmatched and not yet proposed to at this level.
    fn has_open_tie(&self, a: usize, fav: Favourite) -> bool {
        let state = &self.proposers[a];
        self.inst.neighbours_a(a).iter().enumerate().any(|(p, n)| {
            n.rank == fav.rank
                && p != fav.position
                && !state.proposed[p]
                && self.partner[n.index].is_none()
        })
    }

    /// Moves an unmatched `a` that exhausted its current level to the next
    /// one and requeues it, or retires it. Returns the new level, if any.
    pub fn advance_level(&mut self, a: usize) -> Option<Level> {
        let from = self.proposers[a].level;
        let critical = self.inst.is_critical_a(a);
        let to = match self.phase(from) {
            Phase::Critical => Some(from.next_ordinary()),
            Phase::Ties if !from.is_star() => Some(self.star_level()),
            Phase::Ties | Phase::Escalated if critical && from < self.top => {
                Some(from.next_ordinary())
            }
            _ => None,
        };
        match to {
            Some(to) => {
                self.proposers[a].enter(to);
                self.emit(Event::LevelUp { a, from, to });
                self.queue.push_back((a, to));
            }
            None => self.emit(Event::Retire { a, level: from }),
        }
        to
    }

    /// Processes one queue item. Returns `false` once the queue is empty.
    pub fn step(&mut self) -> Result<bool, EngineError> {
        let Some((a, level)) = self.queue.pop_front() else {
            return Ok(false);
        };
        debug_assert_eq!(self.proposers[a].level, level);
        debug_assert!(self.proposers[a].matched_to.is_none());
        match self.phase(level) {
            Phase::Critical | Phase::Escalated => {
                if self.proposers[a].cursor < self.strict_list(a, level).len() {
                    self.critical_propose(a)?;
                } else {
                    self.advance_level(a);
                }
            }
            Phase::Ties => {
                if self.favourite_neighbour(a).is_some() {
                    self.ties_propose(a)?;
                } else {
                    self.advance_level(a);
                }
            }
        }
        Ok(true)
    }

    pub fn run(&mut self) -> Result<Solution, EngineError> {
        while self.step()? {}
        let pairs = self
            .partner
            .iter()
            .enumerate()
            .filter_map(|(b, p)| p.map(|(a, level)| LeveledPair { a, b, level }))
            .collect::<Vec<_>>();
        let mut matching = LeveledMatching { pairs };
        matching.pairs.sort_unstable();
        let stats = RunStats {
            proposal_count: self.proposal_count,
            proposal_bound: self.proposal_bound,
            histogram: self
                .histogram
                .iter()
                .map(|(&level, &proposals)| LevelCount {
                    level,
                    label: level.to_string(),
                    proposals,
                })
                .collect(),
            final_levels: self.proposers.iter().map(|p| p.level).collect(),
            uncertain_proposals: self.uncertain_proposals,
            marks: self.marks,
        };
        log::info!(
            "solved: {} pairs, {} proposals (bound {})",
            matching.len(),
            stats.proposal_count,
            stats.proposal_bound
        );
        Ok(Solution { matching, stats })
    }
}

/// Computes a critical relaxed stable matching of `inst`.
pub fn solve(inst: &Instance) -> Result<Solution, EngineError> {
    EngineState::new(inst).run()
}

/// Like [`solve`], also returning every event of the run.
pub fn solve_traced(inst: &Instance) -> Result<(Solution, Vec<Event>), EngineError> {
    let mut state = EngineState::new(inst).with_trace();
    let solution = state.run()?;
    Ok((solution, state.trace.take().unwrap_or_default()))
}

#[cfg(test)]
mod tests;
