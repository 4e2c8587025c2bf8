//! Plain-text output. Solver output doubles as a matching file: everything
//! but the `pair` lines is a comment.

use std::fmt::Write;

use critical_match::oracle::OracleResult;
use critical_match::verify::{BlockingPair, StructureReport, VerificationReport};

use crate::SolveOutcome;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn justification(bp: &BlockingPair) -> &'static str {
    match (bp.justified_by_a, bp.justified_by_b) {
        (true, true) => "justified by both partners",
        (true, false) => "justified by the a-side partner",
        (false, true) => "justified by the b-side partner",
        (false, false) => "unjustified",
    }
}

pub fn solution(outcome: &SolveOutcome) -> String {
    let (m, stats) = (&outcome.solution.matching, &outcome.solution.stats);
    let mut s = String::new();
    writeln!(
        s,
        "# {} pairs, {} proposals (bound {}), {} uncertain, {} marks",
        m.len(),
        stats.proposal_count,
        stats.proposal_bound,
        stats.uncertain_proposals,
        stats.marks
    )
    .unwrap();
    for p in &m.pairs {
        writeln!(s, "pair {} {}  # level {}", p.a, p.b, p.level).unwrap();
    }
    if !stats.histogram.is_empty() {
        let counts: Vec<String> = stats
            .histogram
            .iter()
            .map(|c| format!("{}:{}", c.label, c.proposals))
            .collect();
        writeln!(s, "# proposals by level: {}", counts.join(" ")).unwrap();
    }
    if let Some(r) = &outcome.verification {
        for line in report(r).lines() {
            writeln!(s, "# {line}").unwrap();
        }
    }
    s
}

fn structure(s: &mut String, r: &StructureReport) {
    if r.is_empty() {
        writeln!(s, "level structure: ok").unwrap();
        return;
    }
    writeln!(s, "level structure: violated").unwrap();
    for v in &r.property1_violations {
        match v.witness {
            Some(w) => {
                writeln!(s, "  partition item {}: {} (witness {w})", v.item, v.vertex).unwrap()
            }
            None => writeln!(s, "  partition item {}: {}", v.item, v.vertex).unwrap(),
        }
    }
    for e in &r.steep_downward_edges {
        writeln!(
            s,
            "  steep edge a{} b{}: buckets {} -> {}",
            e.a, e.b, e.a_bucket, e.b_bucket
        )
        .unwrap();
    }
    for e in &r.non_upward_blocking_pairs {
        writeln!(
            s,
            "  blocking pair a{} b{} not upward: buckets {} -> {}",
            e.a, e.b, e.a_bucket, e.b_bucket
        )
        .unwrap();
    }
}

pub fn report(r: &VerificationReport) -> String {
    let mut s = String::new();
    let c = r.critical_covered_by_side;
    writeln!(
        s,
        "critical: {} ({} of {} matchable critical vertices; a-side {}, b-side {})",
        yes_no(r.is_critical),
        r.critical_covered,
        r.max_critical_coverage,
        c.from_a,
        c.from_b
    )
    .unwrap();
    writeln!(
        s,
        "relaxed stable: {} ({} blocking, {} unjustified)",
        yes_no(r.is_rsm),
        r.blocking_pairs.len(),
        r.unjustified.len()
    )
    .unwrap();
    for bp in &r.blocking_pairs {
        writeln!(
            s,
            "  blocking pair a{} b{}: {}",
            bp.a,
            bp.b,
            justification(bp)
        )
        .unwrap();
    }
    if let Some(st) = &r.structure_report {
        structure(&mut s, st);
    }
    s
}

pub fn oracle(r: &OracleResult) -> String {
    let mut s = String::new();
    let c = r.per_side_critical_counts;
    writeln!(
        s,
        "# largest critical relaxed stable matching: {} pairs",
        r.max_critical_rsm_size
    )
    .unwrap();
    writeln!(
        s,
        "# critical matchings: {} ({} relaxed stable)",
        r.num_critical_matchings, r.num_critical_rsm
    )
    .unwrap();
    writeln!(
        s,
        "# critical coverage: {} (a-side {}, b-side {}, same on every critical matching: {})",
        r.max_critical_coverage,
        c.from_a,
        c.from_b,
        yes_no(r.per_side_uniform)
    )
    .unwrap();
    s.push_str(&r.witness.to_text());
    s
}
