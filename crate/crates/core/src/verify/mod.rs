//! Checkers for matchings: blocking pairs, relaxed stability, criticality and
//! the level-structure audit of a solver run.
//!
//! Nothing here calls into the engine; the engine's output is only read
//! through [`LeveledMatching`].

mod assignment;

pub use assignment::min_cost_assignment;

use serde::Serialize;
use thiserror::Error;

use crate::engine::LeveledMatching;
use crate::model::{Instance, Matching, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexRef),
    #[error("({a}, {b}) is not an edge", a = VertexRef::a(*.a), b = VertexRef::b(*.b))]
    NonEdge { a: usize, b: usize },
    #[error("not a matching: {0} appears in more than one pair")]
    SharedEndpoint(VertexRef),
}

/// Partner arrays for a checked matching.
#[derive(Debug, Clone)]
pub struct Mates {
    pub of_a: Vec<Option<usize>>,
    pub of_b: Vec<Option<usize>>,
}

impl Mates {
    /// Checks that `m` is a matching over the edges of `inst`.
    pub fn new(inst: &Instance, m: &Matching) -> Result<Self, VerifyError> {
        let mut of_a = vec![None; inst.n_a()];
        let mut of_b = vec![None; inst.n_b()];
        for &(a, b) in &m.pairs {
            for v in [VertexRef::a(a), VertexRef::b(b)] {
                if !inst.contains(v) {
                    return Err(VerifyError::UnknownVertex(v));
                }
            }
            if !inst.is_edge(a, b) {
                return Err(VerifyError::NonEdge { a, b });
            }
            if of_a[a].replace(b).is_some() {
                return Err(VerifyError::SharedEndpoint(VertexRef::a(a)));
            }
            if of_b[b].replace(a).is_some() {
                return Err(VerifyError::SharedEndpoint(VertexRef::b(b)));
            }
        }
        Ok(Mates { of_a, of_b })
    }
}

/// An unmatched edge whose endpoints both strictly prefer each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BlockingPair {
    pub a: usize,
    pub b: usize,
    /// `a` is matched and its partner is critical.
    pub justified_by_a: bool,
    /// `b` is matched and its partner is critical.
    pub justified_by_b: bool,
}

impl BlockingPair {
    pub fn is_justified(&self) -> bool {
        self.justified_by_a || self.justified_by_b
    }
}

fn blocking_pairs_of(inst: &Instance, mates: &Mates) -> Vec<BlockingPair> {
    let mut out = Vec::new();
    for e in inst.edges() {
        let (ma, mb) = (mates.of_a[e.a], mates.of_b[e.b]);
        if ma == Some(e.b) {
            continue;
        }
        let a_wants =
            ma.is_none_or(|cur| e.rank_a < inst.rank_at_a(e.a, cur).expect("matched edge"));
        let b_wants =
            mb.is_none_or(|cur| e.rank_b < inst.rank_at_b(e.b, cur).expect("matched edge"));
        if a_wants && b_wants {
            out.push(BlockingPair {
                a: e.a,
                b: e.b,
                justified_by_a: ma.is_some_and(|b| inst.is_critical_b(b)),
                justified_by_b: mb.is_some_and(|a| inst.is_critical_a(a)),
            });
        }
    }
    out
}

/// Every blocking pair of `m`, in `(a, b)` order.
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Result<Vec<BlockingPair>, VerifyError> {
    Ok(blocking_pairs_of(inst, &Mates::new(inst, m)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RsmVerdict {
    pub is_rsm: bool,
    pub unjustified: Vec<BlockingPair>,
}

/// Relaxed stability: every blocking pair has an endpoint whose partner is
/// critical.
pub fn is_rsm(inst: &Instance, m: &Matching) -> Result<RsmVerdict, VerifyError> {
    let unjustified: Vec<_> = blocking_pairs(inst, m)?
        .into_iter()
        .filter(|bp| !bp.is_justified())
        .collect();
    Ok(RsmVerdict {
        is_rsm: unjustified.is_empty(),
        unjustified,
    })
}

/// Matched critical vertices, per side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CriticalCount {
    pub from_a: usize,
    pub from_b: usize,
}

impl CriticalCount {
    pub fn total(&self) -> usize {
        self.from_a + self.from_b
    }
}

pub fn critical_coverage(inst: &Instance, m: &Matching) -> Result<CriticalCount, VerifyError> {
    Mates::new(inst, m)?;
    Ok(m.pairs
        .iter()
        .fold(CriticalCount::default(), |acc, &(a, b)| CriticalCount {
            from_a: acc.from_a + usize::from(inst.is_critical_a(a)),
            from_b: acc.from_b + usize::from(inst.is_critical_b(b)),
        }))
}

/// The largest number of critical vertices any matching of `inst` covers.
///
/// Exact: a maximum-weight bipartite matching where an edge weighs the
/// number of its critical endpoints, solved as an assignment of every
/// A-vertex to a B-vertex or to its own zero-weight dummy column.
pub fn max_critical_coverage(inst: &Instance) -> usize {
    max_critical_matching(inst).1
}

/// A matching attaining [`max_critical_coverage`], with its coverage.
pub fn max_critical_matching(inst: &Instance) -> (Matching, usize) {
    const CAP: i64 = 2;
    let (n_a, n_b) = (inst.n_a(), inst.n_b());
    let weight = |a: usize, b: usize| -> i64 {
        if inst.is_edge(a, b) {
            i64::from(inst.is_critical_a(a)) + i64::from(inst.is_critical_b(b))
        } else {
            0
        }
    };
    let cost: Vec<Vec<i64>> = (0..n_a)
        .map(|a| {
            (0..n_b + n_a)
                .map(|j| if j < n_b { CAP - weight(a, j) } else { CAP })
                .collect()
        })
        .collect();
    let assignment = min_cost_assignment(&cost);
    let pairs: Matching = assignment
        .iter()
        .enumerate()
        .filter(|&(a, &j)| j < n_b && weight(a, j) > 0)
        .map(|(a, &j)| (a, j))
        .collect();
    let covered = pairs
        .pairs
        .iter()
        .map(|&(a, b)| weight(a, b) as usize)
        .sum();
    (pairs, covered)
}

pub fn is_critical(inst: &Instance, m: &Matching) -> Result<bool, VerifyError> {
    Ok(critical_coverage(inst, m)?.total() == max_critical_coverage(inst))
}

/// Level buckets `0 ..= s+t` for every vertex, derived from a leveled
/// matching. The starred sub-level collapses onto `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelPartition {
    pub a_bucket: Vec<usize>,
    pub b_bucket: Vec<usize>,
    /// `s + t`.
    pub top: usize,
    pub t: usize,
}

pub fn build_level_partition(
    inst: &Instance,
    lm: &LeveledMatching,
) -> Result<LevelPartition, VerifyError> {
    Mates::new(inst, &lm.to_matching())?;
    let (s, t) = (inst.s(), inst.t());
    let top = s + t;
    let mut a_bucket: Vec<usize> = (0..inst.n_a())
        .map(|a| if inst.is_critical_a(a) { top } else { t })
        .collect();
    let mut b_bucket: Vec<usize> = (0..inst.n_b())
        .map(|b| if inst.is_critical_b(b) { 0 } else { t })
        .collect();
    for p in &lm.pairs {
        a_bucket[p.a] = p.level.bucket();
        b_bucket[p.b] = p.level.bucket();
    }
    Ok(LevelPartition {
        a_bucket,
        b_bucket,
        top,
        t,
    })
}

/// A breach of one of the six partition properties. `item` is 1-based:
/// 1 high A-buckets hold critical vertices only, 2 low B-buckets hold
/// critical vertices only, 3/4 unmatched critical/non-critical A-vertices,
/// 5/6 unmatched critical/non-critical B-vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionViolation {
    pub item: u8,
    pub vertex: VertexRef,
    pub witness: Option<VertexRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BucketEdge {
    pub a: usize,
    pub b: usize,
    pub a_bucket: usize,
    pub b_bucket: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub property1_violations: Vec<PartitionViolation>,
    /// Edges from bucket `x` to bucket `y` with `x > y + 1`.
    pub steep_downward_edges: Vec<BucketEdge>,
    /// Blocking pairs whose A-bucket is not strictly below the B-bucket.
    pub non_upward_blocking_pairs: Vec<BucketEdge>,
}

impl StructureReport {
    pub fn is_empty(&self) -> bool {
        self.property1_violations.is_empty()
            && self.steep_downward_edges.is_empty()
            && self.non_upward_blocking_pairs.is_empty()
    }
}

/// Audits the level structure of a solver run.
pub fn check_structure(
    inst: &Instance,
    lm: &LeveledMatching,
) -> Result<StructureReport, VerifyError> {
    let part = build_level_partition(inst, lm)?;
    Ok(audit_partition(
        inst,
        &part,
        &Mates::new(inst, &lm.to_matching())?,
    ))
}

/// The audit behind [`check_structure`], on an explicit partition.
pub fn audit_partition(inst: &Instance, part: &LevelPartition, mates: &Mates) -> StructureReport {
    let (t, top) = (part.t, part.top);
    let mut report = StructureReport::default();
    let mut violation = |item: u8, vertex: VertexRef, witness: Option<VertexRef>| {
        report.property1_violations.push(PartitionViolation {
            item,
            vertex,
            witness,
        })
    };

    for a in 0..inst.n_a() {
        let bucket = part.a_bucket[a];
        let critical = inst.is_critical_a(a);
        if bucket > t && !critical {
            violation(1, VertexRef::a(a), None);
        }
        if mates.of_a[a].is_some() {
            continue;
        }
        let (item, home) = if critical { (3, top) } else { (4, t) };
        if bucket != home {
            violation(item, VertexRef::a(a), None);
        }
        for n in inst.neighbours_a(a) {
            let nb = part.b_bucket[n.index];
            let ok = mates.of_b[n.index].is_some() && if critical { nb == top } else { nb >= t };
            if !ok {
                violation(item, VertexRef::a(a), Some(VertexRef::b(n.index)));
            }
        }
    }
    for b in 0..inst.n_b() {
        let bucket = part.b_bucket[b];
        let critical = inst.is_critical_b(b);
        if bucket < t && !critical {
            violation(2, VertexRef::b(b), None);
        }
        if mates.of_b[b].is_some() {
            continue;
        }
        let (item, home) = if critical { (5, 0) } else { (6, t) };
        if bucket != home {
            violation(item, VertexRef::b(b), None);
        }
        for n in inst.neighbours_b(b) {
            let na = part.a_bucket[n.index];
            let ok = if critical { na == 0 } else { na <= t };
            if !ok {
                violation(item, VertexRef::b(b), Some(VertexRef::a(n.index)));
            }
        }
    }

    let bucket_edge = |a: usize, b: usize| BucketEdge {
        a,
        b,
        a_bucket: part.a_bucket[a],
        b_bucket: part.b_bucket[b],
    };
    report.steep_downward_edges = inst
        .edges()
        .iter()
        .map(|e| bucket_edge(e.a, e.b))
        .filter(|e| e.a_bucket > e.b_bucket + 1)
        .collect();
    report.non_upward_blocking_pairs = blocking_pairs_of(inst, mates)
        .into_iter()
        .map(|bp| bucket_edge(bp.a, bp.b))
        .filter(|e| e.a_bucket >= e.b_bucket)
        .collect();
    report
}

/// Everything the verifiers say about one matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_matching: bool,
    pub blocking_pairs: Vec<BlockingPair>,
    pub unjustified: Vec<BlockingPair>,
    pub is_rsm: bool,
    pub critical_covered: usize,
    pub critical_covered_by_side: CriticalCount,
    pub max_critical_coverage: usize,
    pub is_critical: bool,
    /// Present when the matching carries levels from a solver run.
    pub structure_report: Option<StructureReport>,
}

impl VerificationReport {
    /// Relaxed stable, critical and, when audited, structurally sound.
    pub fn passed(&self) -> bool {
        self.is_matching
            && self.is_rsm
            && self.is_critical
            && self.structure_report.as_ref().is_none_or(|r| r.is_empty())
    }
}

pub fn report(inst: &Instance, m: &Matching) -> Result<VerificationReport, VerifyError> {
    let blocking = blocking_pairs(inst, m)?;
    let unjustified: Vec<_> = blocking
        .iter()
        .copied()
        .filter(|bp| !bp.is_justified())
        .collect();
    let covered = critical_coverage(inst, m)?;
    let max = max_critical_coverage(inst);
    Ok(VerificationReport {
        is_matching: true,
        is_rsm: unjustified.is_empty(),
        blocking_pairs: blocking,
        unjustified,
        critical_covered: covered.total(),
        critical_covered_by_side: covered,
        max_critical_coverage: max,
        is_critical: covered.total() == max,
        structure_report: None,
    })
}

/// [`report`] plus the level-structure audit.
pub fn report_leveled(
    inst: &Instance,
    lm: &LeveledMatching,
) -> Result<VerificationReport, VerifyError> {
    let mut r = report(inst, &lm.to_matching())?;
    r.structure_report = Some(check_structure(inst, lm)?);
    Ok(r)
}
