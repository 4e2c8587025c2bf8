//! Instance representation, validation and the derived strict preference lists.
//!
//! Vertices are identified by side and a dense 0-based index. Every tie-break
//! "by index" anywhere in the crate means ascending numeric index. Ranks are
//! positive integers compared only relative to each other, so a list ranked
//! `1, 3, 7` is as good as `1, 2, 3`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One side of the bipartition. `A` is the proposing side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("a"),
            Side::B => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub fn a(index: usize) -> Self {
        VertexRef {
            side: Side::A,
            index,
        }
    }

    pub fn b(index: usize) -> Self {
        VertexRef {
            side: Side::B,
            index,
        }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side, self.index)
    }
}

/// An acceptable pair together with the rank each endpoint gives the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub rank_a: u32,
    pub rank_b: u32,
}

/// Unvalidated instance, exactly as read from a file or built by hand.
///
/// This is also the structured-object (JSON) form of an instance file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceData {
    pub n_a: usize,
    pub n_b: usize,
    #[serde(default)]
    pub critical_a: Vec<usize>,
    #[serde(default)]
    pub critical_b: Vec<usize>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

/// A broken instance invariant. Returned as data by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("duplicate edge (a{a}, b{b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("rank < 1 on edge (a{a}, b{b})")]
    RankBelowOne { a: usize, b: usize },
    #[error("index out of range: {vertex} (side has {len} vertices)")]
    IndexOutOfRange { vertex: VertexRef, len: usize },
    #[error("critical vertex {vertex} listed more than once")]
    DuplicateCritical { vertex: VertexRef },
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: edge must carry both ranks (`edge <a> <b> <rank_at_a> <rank_at_b>`)")]
    HalfEdge { line: usize },
    #[error("malformed instance object: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(Violation),
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexRef),
}

/// Checks every instance invariant and reports all violations found.
pub fn validate(data: &InstanceData) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut check_critical = |side: Side, list: &[usize], len: usize| {
        let mut seen = BTreeSet::new();
        for &index in list {
            let vertex = VertexRef { side, index };
            if index >= len {
                violations.push(Violation::IndexOutOfRange { vertex, len });
            } else if !seen.insert(index) {
                violations.push(Violation::DuplicateCritical { vertex });
            }
        }
    };
    check_critical(Side::A, &data.critical_a, data.n_a);
    check_critical(Side::B, &data.critical_b, data.n_b);

    let mut seen = BTreeSet::new();
    for e in &data.edges {
        if e.a >= data.n_a {
            violations.push(Violation::IndexOutOfRange {
                vertex: VertexRef::a(e.a),
                len: data.n_a,
            });
        }
        if e.b >= data.n_b {
            violations.push(Violation::IndexOutOfRange {
                vertex: VertexRef::b(e.b),
                len: data.n_b,
            });
        }
        if e.rank_a < 1 || e.rank_b < 1 {
            violations.push(Violation::RankBelowOne { a: e.a, b: e.b });
        }
        if !seen.insert((e.a, e.b)) {
            violations.push(Violation::DuplicateEdge { a: e.a, b: e.b });
        }
    }
    violations
}

/// A neighbour entry in an adjacency list: the other endpoint and the rank
/// the owner gives it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Neighbour {
    pub index: usize,
    pub rank: u32,
}

/// A validated, immutable instance.
///
/// Adjacency lists are kept sorted by `(rank, index)`, which is exactly the
/// tie-broken strict order used by the proposing side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n_a: usize,
    n_b: usize,
    edges: Vec<Edge>,
    critical_a: Vec<bool>,
    critical_b: Vec<bool>,
    pref_a: Vec<Vec<Neighbour>>,
    pref_b: Vec<Vec<Neighbour>>,
    // sorted by neighbour index, for rank lookups
    lookup_a: Vec<Vec<Neighbour>>,
    lookup_b: Vec<Vec<Neighbour>>,
}

impl Instance {
    pub fn new(data: InstanceData) -> Result<Self, ModelError> {
        if let Some(v) = validate(&data).into_iter().next() {
            return Err(ModelError::Invalid(v));
        }
        let InstanceData {
            n_a,
            n_b,
            critical_a,
            critical_b,
            mut edges,
        } = data;
        edges.sort_unstable();

        let mut flags_a = vec![false; n_a];
        critical_a.iter().for_each(|&i| flags_a[i] = true);
        let mut flags_b = vec![false; n_b];
        critical_b.iter().for_each(|&i| flags_b[i] = true);

        let mut lookup_a = vec![Vec::new(); n_a];
        let mut lookup_b = vec![Vec::new(); n_b];
        for e in &edges {
            lookup_a[e.a].push(Neighbour {
                index: e.b,
                rank: e.rank_a,
            });
            lookup_b[e.b].push(Neighbour {
                index: e.a,
                rank: e.rank_b,
            });
        }
        // edges are sorted by (a, b), so lookup_a is already in index order
        lookup_b
            .iter_mut()
            .for_each(|l| l.sort_unstable_by_key(|n| n.index));

        let by_rank = |lists: &[Vec<Neighbour>]| -> Vec<Vec<Neighbour>> {
            lists
                .iter()
                .map(|l| {
                    let mut l = l.clone();
                    l.sort_unstable_by_key(|n| (n.rank, n.index));
                    l
                })
                .collect()
        };
        let pref_a = by_rank(&lookup_a);
        let pref_b = by_rank(&lookup_b);

        Ok(Instance {
            n_a,
            n_b,
            edges,
            critical_a: flags_a,
            critical_b: flags_b,
            pref_a,
            pref_b,
            lookup_a,
            lookup_b,
        })
    }

    pub fn empty() -> Self {
        Instance::new(InstanceData::default()).expect("the empty instance is valid")
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Edges sorted by `(a, b)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of critical vertices on side A.
    pub fn s(&self) -> usize {
        self.critical_a.iter().filter(|&&c| c).count()
    }

    /// Number of critical vertices on side B.
    pub fn t(&self) -> usize {
        self.critical_b.iter().filter(|&&c| c).count()
    }

    pub fn is_critical_a(&self, a: usize) -> bool {
        self.critical_a[a]
    }

    pub fn is_critical_b(&self, b: usize) -> bool {
        self.critical_b[b]
    }

    pub fn is_critical(&self, v: VertexRef) -> bool {
        match v.side {
            Side::A => self.critical_a[v.index],
            Side::B => self.critical_b[v.index],
        }
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        match v.side {
            Side::A => v.index < self.n_a,
            Side::B => v.index < self.n_b,
        }
    }

    /// Neighbours of `a` sorted by `(rank, index)`.
    pub fn neighbours_a(&self, a: usize) -> &[Neighbour] {
        &self.pref_a[a]
    }

    /// Neighbours of `b` sorted by `(rank, index)`.
    pub fn neighbours_b(&self, b: usize) -> &[Neighbour] {
        &self.pref_b[b]
    }

    /// Rank `a` gives `b`, or `None` if `(a, b)` is not an edge.
    pub fn rank_at_a(&self, a: usize, b: usize) -> Option<u32> {
        let l = self.lookup_a.get(a)?;
        l.binary_search_by_key(&b, |n| n.index)
            .ok()
            .map(|i| l[i].rank)
    }

    /// Rank `b` gives `a`, or `None` if `(a, b)` is not an edge.
    pub fn rank_at_b(&self, b: usize, a: usize) -> Option<u32> {
        let l = self.lookup_b.get(b)?;
        l.binary_search_by_key(&a, |n| n.index)
            .ok()
            .map(|i| l[i].rank)
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.rank_at_a(a, b).is_some()
    }

    pub fn critical_indices(&self, side: Side) -> Vec<usize> {
        let flags = match side {
            Side::A => &self.critical_a,
            Side::B => &self.critical_b,
        };
        flags
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| c.then_some(i))
            .collect()
    }

    pub fn to_data(&self) -> InstanceData {
        InstanceData {
            n_a: self.n_a,
            n_b: self.n_b,
            critical_a: self.critical_indices(Side::A),
            critical_b: self.critical_indices(Side::B),
            edges: self.edges.clone(),
        }
    }

    /// Serializes to the line-oriented instance format.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;

        let join = |v: Vec<usize>| v.iter().map(|i| format!(" {i}")).collect::<String>();
        let mut out = String::new();
        let _ = writeln!(out, "instance {} {}", self.n_a, self.n_b);
        let _ = writeln!(out, "critical_a{}", join(self.critical_indices(Side::A)));
        let _ = writeln!(out, "critical_b{}", join(self.critical_indices(Side::B)));
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {} {}", e.a, e.b, e.rank_a, e.rank_b);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_data()).expect("instance data always serializes")
    }

    /// Pref(v) as rank-sorted tie groups.
    pub fn preference_list(&self, owner: VertexRef) -> Result<PreferenceList, ModelError> {
        if !self.contains(owner) {
            return Err(ModelError::UnknownVertex(owner));
        }
        let list = match owner.side {
            Side::A => &self.pref_a[owner.index],
            Side::B => &self.pref_b[owner.index],
        };
        let mut groups: Vec<TieGroup> = Vec::new();
        for n in list {
            match groups.last_mut() {
                Some(g) if g.rank == n.rank => g.members.push(n.index),
                _ => groups.push(TieGroup {
                    rank: n.rank,
                    members: vec![n.index],
                }),
            }
        }
        Ok(PreferenceList { owner, groups })
    }
}

/// Neighbours sharing one rank, in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieGroup {
    pub rank: u32,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreferenceList {
    pub owner: VertexRef,
    pub groups: Vec<TieGroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrictVariant {
    /// Every neighbour, ties broken by ascending index.
    PrefS,
    /// [`StrictVariant::PrefS`] restricted to critical neighbours.
    PrefSC,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictList {
    pub owner: VertexRef,
    pub order: Vec<usize>,
    pub variant: StrictVariant,
}

impl StrictList {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

pub fn derive_pref_s(inst: &Instance, a: usize) -> Result<StrictList, ModelError> {
    if a >= inst.n_a() {
        return Err(ModelError::UnknownVertex(VertexRef::a(a)));
    }
    Ok(StrictList {
        owner: VertexRef::a(a),
        order: inst.neighbours_a(a).iter().map(|n| n.index).collect(),
        variant: StrictVariant::PrefS,
    })
}

pub fn derive_pref_sc(inst: &Instance, a: usize) -> Result<StrictList, ModelError> {
    let mut list = derive_pref_s(inst, a)?;
    list.order.retain(|&b| inst.is_critical_b(b));
    list.variant = StrictVariant::PrefSC;
    Ok(list)
}

/// Parses an instance file, autodetecting the line format or the structured
/// object form by the first non-comment token.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let data = if first_token(text).is_some_and(|t| t.starts_with('{')) {
        parse_json(text)?
    } else {
        parse_text(text)?
    };
    Instance::new(data)
}

/// Strips a `#` comment from one line.
pub fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn first_token(text: &str) -> Option<&str> {
    text.lines()
        .flat_map(|l| strip_comment(l).split_whitespace())
        .next()
}

fn parse_json(text: &str) -> Result<InstanceData, ModelError> {
    let stripped: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(serde_json::from_str(&stripped)?)
}

fn parse_text(text: &str) -> Result<InstanceData, ModelError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                strip_comment(l).split_whitespace().collect::<Vec<_>>(),
            )
        })
        .filter(|(_, toks)| !toks.is_empty());

    let syntax = |line: usize, message: String| ModelError::Syntax { line, message };
    let number = |line: usize, tok: &str| -> Result<usize, ModelError> {
        tok.parse::<usize>().map_err(|_| {
            syntax(
                line,
                format!("expected a non-negative integer, found `{tok}`"),
            )
        })
    };

    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `instance <n_a> <n_b>` header".into()))?;
    if header[0] != "instance" || header.len() != 3 {
        return Err(syntax(line, "expected `instance <n_a> <n_b>`".into()));
    }
    let n_a = number(line, header[1])?;
    let n_b = number(line, header[2])?;

    let mut critical = |keyword: &str| -> Result<Vec<usize>, ModelError> {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| syntax(line, format!("missing `{keyword}` line")))?;
        if toks[0] != keyword {
            return Err(syntax(
                line,
                format!("expected `{keyword}`, found `{}`", toks[0]),
            ));
        }
        toks[1..].iter().map(|t| number(line, t)).collect()
    };
    let critical_a = critical("critical_a")?;
    let critical_b = critical("critical_b")?;

    let mut edges = Vec::new();
    for (line, toks) in lines {
        if toks[0] != "edge" {
            return Err(syntax(
                line,
                format!("expected `edge`, found `{}`", toks[0]),
            ));
        }
        match toks.len() {
            5 => {}
            4 => return Err(ModelError::HalfEdge { line }),
            _ => {
                return Err(syntax(
                    line,
                    "expected `edge <a> <b> <rank_at_a> <rank_at_b>`".into(),
                ))
            }
        }
        let rank = |tok: &str| -> Result<u32, ModelError> {
            tok.parse::<u32>()
                .map_err(|_| syntax(line, format!("expected a rank, found `{tok}`")))
        };
        edges.push(Edge {
            a: number(line, toks[1])?,
            b: number(line, toks[2])?,
            rank_a: rank(toks[3])?,
            rank_b: rank(toks[4])?,
        });
    }

    Ok(InstanceData {
        n_a,
        n_b,
        critical_a,
        critical_b,
        edges,
    })
}

/// A set of `(a, b)` pairs claimed to be a matching. Nothing is checked on
/// construction; the verifiers reject non-matchings and non-edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// `pair <a> <b>` lines.
    pub fn to_text(&self) -> String {
        self.pairs
            .iter()
            .map(|(a, b)| format!("pair {a} {b}\n"))
            .collect()
    }
}

impl FromIterator<(usize, usize)> for Matching {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Matching::new(iter.into_iter().collect())
    }
}

/// Parses a matching file: `pair <a_index> <b_index>` lines, `#` comments.
pub fn parse_matching(text: &str) -> Result<Matching, ModelError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<_> = strip_comment(raw).split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 3 || toks[0] != "pair" {
            return Err(ModelError::Syntax {
                line,
                message: "expected `pair <a_index> <b_index>`".into(),
            });
        }
        let idx = |tok: &str| {
            tok.parse::<usize>().map_err(|_| ModelError::Syntax {
                line,
                message: format!("expected a vertex index, found `{tok}`"),
            })
        };
        pairs.push((idx(toks[1])?, idx(toks[2])?));
    }
    Ok(Matching::new(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE: &str = "\
# three A-vertices, four B-vertices; a1 and b1 are critical (0-based)
instance 3 4
critical_a 1
critical_b 1
edge 0 0 1 1
edge 0 1 2 1
edge 1 0 2 2
edge 1 2 1 1
edge 1 3 1 1
edge 2 2 1 1
";

    fn tied_list() -> Instance {
        // Pref(a) = (b2, b1), b5, (b3, b4) with b4, b5 critical; 1-based names
        // map to indices 0..=4.
        let edge = |b, rank_a| Edge {
            a: 0,
            b,
            rank_a,
            rank_b: 1,
        };
        Instance::new(InstanceData {
            n_a: 1,
            n_b: 5,
            critical_a: vec![],
            critical_b: vec![3, 4],
            edges: vec![edge(1, 1), edge(0, 1), edge(4, 2), edge(2, 3), edge(3, 3)],
        })
        .unwrap()
    }

    #[test]
    fn parses_worked_example() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!((inst.n_a(), inst.n_b(), inst.num_edges()), (3, 4, 6));
        assert_eq!((inst.s(), inst.t()), (1, 1));
        assert!(inst.is_critical_a(1) && inst.is_critical_b(1));
        assert_eq!(inst.rank_at_a(0, 1), Some(2));
        assert_eq!(inst.rank_at_b(0, 1), Some(2));
        assert_eq!(inst.rank_at_a(0, 3), None);
        assert!(validate(&inst.to_data()).is_empty());
    }

    #[test]
    fn parses_empty_instance() {
        let inst = parse_instance("instance 0 0\ncritical_a\ncritical_b\n").unwrap();
        assert_eq!(inst, Instance::empty());
        assert_eq!(inst.num_edges(), 0);
    }

    #[test]
    fn parses_json_form() {
        let text = Instance::new(parse_text(EXAMPLE).unwrap())
            .unwrap()
            .to_json();
        let inst = parse_instance(&format!("# comment\n{text}")).unwrap();
        assert_eq!(inst, parse_instance(EXAMPLE).unwrap());
    }

    #[test]
    fn rejects_duplicate_edge() {
        let text = "instance 1 1\ncritical_a\ncritical_b\nedge 0 0 1 1\nedge 0 0 2 2\n";
        assert!(matches!(
            parse_instance(text),
            Err(ModelError::Invalid(Violation::DuplicateEdge { a: 0, b: 0 }))
        ));
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            (
                "instance 1 1\ncritical_a\ncritical_b\nedge 0 0 0 1\n",
                "rank",
            ),
            (
                "instance 1 1\ncritical_a\ncritical_b\nedge 0 3 1 1\n",
                "range",
            ),
            ("instance 1 1\ncritical_a 4\ncritical_b\n", "range"),
            ("instance 1 1\ncritical_a\ncritical_b\nedge 0 0 1\n", "half"),
            ("instance 1\ncritical_a\ncritical_b\n", "syntax"),
            ("instance 1 1\ncritical_b\ncritical_a\n", "syntax"),
            (
                "instance 1 1\ncritical_a\ncritical_b\nedge 0 x 1 1\n",
                "syntax",
            ),
            ("", "syntax"),
            ("{\"n_a\": 1}", "json"),
        ];
        for (text, kind) in cases {
            let err = parse_instance(text).unwrap_err();
            let ok = match kind {
                "rank" => matches!(err, ModelError::Invalid(Violation::RankBelowOne { .. })),
                "range" => matches!(err, ModelError::Invalid(Violation::IndexOutOfRange { .. })),
                "half" => matches!(err, ModelError::HalfEdge { line: 4 }),
                "syntax" => matches!(err, ModelError::Syntax { .. }),
                "json" => matches!(err, ModelError::Json(_)),
                _ => unreachable!(),
            };
            assert!(ok, "{text:?}: unexpected {err:?}");
        }
    }

    #[test]
    fn validate_reports_all_violations() {
        let data = InstanceData {
            n_a: 2,
            n_b: 2,
            critical_a: vec![0, 0],
            critical_b: vec![],
            edges: vec![
                Edge {
                    a: 0,
                    b: 0,
                    rank_a: 0,
                    rank_b: 1,
                },
                Edge {
                    a: 0,
                    b: 0,
                    rank_a: 1,
                    rank_b: 1,
                },
                Edge {
                    a: 5,
                    b: 1,
                    rank_a: 1,
                    rank_b: 1,
                },
            ],
        };
        let v = validate(&data);
        assert_eq!(v.len(), 4, "{v:?}");
        assert!(v.contains(&Violation::DuplicateCritical {
            vertex: VertexRef::a(0)
        }));
        assert!(v.contains(&Violation::RankBelowOne { a: 0, b: 0 }));
        assert!(v.contains(&Violation::DuplicateEdge { a: 0, b: 0 }));
        assert!(v.contains(&Violation::IndexOutOfRange {
            vertex: VertexRef::a(5),
            len: 2
        }));
        let rank = v
            .iter()
            .find(|x| matches!(x, Violation::RankBelowOne { .. }))
            .unwrap();
        assert!(rank.to_string().contains("rank < 1"));
    }

    #[test]
    fn no_critical_vertices_is_valid() {
        let mut data = parse_text(EXAMPLE).unwrap();
        data.critical_a.clear();
        data.critical_b.clear();
        assert!(validate(&data).is_empty());
        let inst = Instance::new(data).unwrap();
        assert_eq!((inst.s(), inst.t()), (0, 0));
    }

    #[test]
    fn strict_lists_of_tied_list() {
        let inst = tied_list();
        assert_eq!(derive_pref_s(&inst, 0).unwrap().order, vec![0, 1, 4, 2, 3]);
        assert_eq!(derive_pref_sc(&inst, 0).unwrap().order, vec![4, 3]);
        let groups = inst.preference_list(VertexRef::a(0)).unwrap().groups;
        assert_eq!(
            groups.iter().map(|g| g.members.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![4], vec![2, 3]]
        );
    }

    #[test]
    fn strict_lists_of_worked_example() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!(derive_pref_s(&inst, 1).unwrap().order, vec![2, 3, 0]);
        assert_eq!(derive_pref_sc(&inst, 0).unwrap().order, vec![1]);
        assert!(derive_pref_sc(&inst, 2).unwrap().is_empty());
        assert_eq!(derive_pref_s(&inst, 2).unwrap().order, vec![2]);
        assert!(matches!(
            derive_pref_s(&inst, 3),
            Err(ModelError::UnknownVertex(_))
        ));
    }

    #[test]
    fn matching_file() {
        let m = parse_matching("# M2\npair 1 3\npair 0 1 # critical\n\npair 2 2\n").unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (1, 3), (2, 2)]);
        assert_eq!(parse_matching(&m.to_text()).unwrap(), m);
        assert!(parse_matching("pair 0\n").is_err());
        assert!(parse_matching("match 0 1\n").is_err());
    }
}
