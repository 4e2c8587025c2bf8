use super::*;
use crate::model::{Edge, InstanceData};

fn instance(
    n_a: usize,
    n_b: usize,
    critical_a: &[usize],
    critical_b: &[usize],
    edges: &[(usize, usize, u32, u32)],
) -> Instance {
    Instance::new(InstanceData {
        n_a,
        n_b,
        critical_a: critical_a.to_vec(),
        critical_b: critical_b.to_vec(),
        edges: edges
            .iter()
            .map(|&(a, b, rank_a, rank_b)| Edge {
                a,
                b,
                rank_a,
                rank_b,
            })
            .collect(),
    })
    .unwrap()
}

/// Worked example: a1 and b1 are critical.
fn example() -> Instance {
    instance(
        3,
        4,
        &[1],
        &[1],
        &[
            (0, 0, 1, 1),
            (0, 1, 2, 1),
            (1, 0, 2, 2),
            (1, 2, 1, 1),
            (1, 3, 1, 1),
            (2, 2, 1, 1),
        ],
    )
}

/// Puts `a` at `level` and matches it to `b`, bypassing the queue.
fn force_match(state: &mut EngineState<'_>, a: usize, b: usize, level: Level) {
    state.proposers[a].enter(level);
    state.proposers[a].matched_to = Some(b);
    state.partner[b] = Some((a, level));
    state.queue.retain(|&(x, _)| x != a);
}

fn force_level(state: &mut EngineState<'_>, a: usize, level: Level) {
    state.proposers[a].enter(level);
    state.queue.retain(|&(x, _)| x != a);
}

#[test]
fn solves_worked_example() {
    let inst = example();
    let sol = solve(&inst).unwrap();
    let t = Level::ordinary(1);
    assert_eq!(
        sol.matching.pairs,
        vec![
            LeveledPair {
                a: 0,
                b: 1,
                level: Level::ZERO
            },
            LeveledPair {
                a: 1,
                b: 3,
                level: t
            },
            LeveledPair {
                a: 2,
                b: 2,
                level: t
            },
        ]
    );
    assert_eq!(sol.stats.proposal_count, 4);
    assert_eq!(sol.stats.proposal_bound, 5 * 6);
    assert_eq!(sol.stats.final_levels, vec![Level::ZERO, t, t]);
    assert_eq!((sol.stats.uncertain_proposals, sol.stats.marks), (1, 1));
}

#[test]
fn worked_example_trace() {
    let (_, events) = solve_traced(&example()).unwrap();
    let (z, t) = (Level::ZERO, Level::ordinary(1));
    let expected = vec![
        Event::Propose {
            a: 0,
            b: 1,
            level: z,
        },
        Event::Accept {
            a: 0,
            b: 1,
            level: z,
            uncertain: false,
            displaced: None,
        },
        Event::LevelUp {
            a: 1,
            from: z,
            to: t,
        },
        Event::LevelUp {
            a: 2,
            from: z,
            to: t,
        },
        Event::Propose {
            a: 1,
            b: 2,
            level: t,
        },
        Event::Accept {
            a: 1,
            b: 2,
            level: t,
            uncertain: true,
            displaced: None,
        },
        Event::Propose {
            a: 2,
            b: 2,
            level: t,
        },
        Event::Accept {
            a: 2,
            b: 2,
            level: t,
            uncertain: false,
            displaced: Some(1),
        },
        Event::Mark { a: 1, b: 2 },
        Event::Propose {
            a: 1,
            b: 3,
            level: t,
        },
        Event::Accept {
            a: 1,
            b: 3,
            level: t,
            uncertain: false,
            displaced: None,
        },
    ];
    assert_eq!(events, expected);
}

#[test]
fn empty_instance() {
    let sol = solve(&Instance::empty()).unwrap();
    assert!(sol.matching.is_empty());
    assert_eq!(sol.stats.proposal_count, 0);
}

#[test]
fn single_edge_without_critical_vertices() {
    let inst = instance(1, 1, &[], &[], &[(0, 0, 1, 1)]);
    let sol = solve(&inst).unwrap();
    assert_eq!(
        sol.matching.pairs,
        vec![LeveledPair {
            a: 0,
            b: 0,
            level: Level::ZERO
        }]
    );
}

#[test]
fn deterministic() {
    let inst = example();
    assert_eq!(solve(&inst).unwrap(), solve(&inst).unwrap());
}

#[test]
fn prefers_rules() {
    // b0 ranks a0 at 2 and a1, a2 at 1; t = 1 so level 1 is the ties level
    let inst = instance(
        3,
        2,
        &[0, 1],
        &[0],
        &[(0, 0, 1, 2), (1, 0, 1, 1), (2, 0, 1, 1)],
    );
    let state = EngineState::new(&inst);
    let (l1, l3, t, star) = (
        Level::ordinary(1),
        Level::ordinary(3),
        Level::ordinary(1),
        Level::star(1),
    );
    let p = |c, i| state.prefers(0, c, i).unwrap();

    // higher level wins whatever the ranks
    assert_eq!(p((0, l3), (1, l1)), Preferred::Challenger);
    // equal level and a rank tie: strict preference required
    assert_eq!(p((1, l3), (2, l3)), Preferred::Incumbent);
    assert_eq!(p((1, l3), (0, l3)), Preferred::Challenger);
    assert_eq!(p((0, l3), (1, l3)), Preferred::Incumbent);
    // a star wins a tie against a non-star
    assert_eq!(p((1, star), (2, t)), Preferred::Challenger);
    assert_eq!(p((1, t), (2, star)), Preferred::Incumbent);
    assert_eq!(p((1, star), (2, star)), Preferred::Incumbent);
    // a star does not beat a strictly better rank
    assert_eq!(p((0, star), (1, t)), Preferred::Incumbent);
    assert_eq!(p((1, t), (0, star)), Preferred::Challenger);
    // below t loses to the ties band, the band loses to t+1
    assert_eq!(p((1, t), (2, Level::ZERO)), Preferred::Challenger);
    assert_eq!(p((1, star), (2, Level::ordinary(2))), Preferred::Incumbent);
    assert_eq!(p((0, Level::ordinary(2)), (1, star)), Preferred::Challenger);

    assert_eq!(
        state.prefers(1, (0, l1), (1, l1)),
        Err(EngineError::NotNeighbours { a: 0, b: 1 })
    );
}

/// Two proposers sharing b0; three critical B-vertices so levels 0..=2 all
/// use PrefSC. b0 prefers a1.
fn low_level_pair() -> Instance {
    instance(2, 3, &[], &[0, 1, 2], &[(0, 0, 1, 2), (1, 0, 1, 1)])
}

#[test]
fn critical_propose_first_step_of_worked_example() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    assert_eq!(state.queue.pop_front(), Some((0, Level::ZERO)));
    state.critical_propose(0).unwrap();
    assert_eq!(state.partner_of(1), Some((0, Level::ZERO)));
    assert_eq!(state.proposer(0).matched_to, Some(1));
}

#[test]
fn critical_propose_higher_level_displaces() {
    let inst = low_level_pair();
    let mut state = EngineState::new(&inst);
    force_match(&mut state, 1, 0, Level::ordinary(1));
    force_level(&mut state, 0, Level::ordinary(2));
    state.critical_propose(0).unwrap();
    assert_eq!(state.partner_of(0), Some((0, Level::ordinary(2))));
    assert_eq!(state.proposer(1).matched_to, None);
    assert_eq!(state.queue.back(), Some(&(1, Level::ordinary(1))));
}

#[test]
fn critical_propose_same_level_preferred_incumbent_rejects() {
    let inst = low_level_pair();
    let mut state = EngineState::new(&inst);
    force_match(&mut state, 1, 0, Level::ordinary(1));
    force_level(&mut state, 0, Level::ordinary(1));
    state.critical_propose(0).unwrap();
    assert_eq!(state.partner_of(0), Some((1, Level::ordinary(1))));
    assert_eq!(state.queue.back(), Some(&(0, Level::ordinary(1))));
    // list exhausted now
    assert_eq!(
        state.critical_propose(0),
        Err(EngineError::Exhausted {
            a: 0,
            level: Level::ordinary(1)
        })
    );
}

#[test]
fn favourite_neighbour_rules() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    force_level(&mut state, 1, Level::ordinary(1));
    let fav = state.favourite_neighbour(1).unwrap();
    assert_eq!(
        (fav.b, fav.rank, fav.rule),
        (2, 1, FavouriteRule::Unmatched)
    );

    // rule (ii): every rank-1 neighbour matched, b2 unproposed
    let inst = instance(
        3,
        3,
        &[],
        &[],
        &[
            (0, 0, 1, 1),
            (0, 2, 1, 1),
            (0, 1, 2, 1),
            (1, 0, 1, 1),
            (2, 2, 1, 1),
        ],
    );
    let mut state = EngineState::new(&inst);
    force_match(&mut state, 1, 0, Level::ZERO);
    force_match(&mut state, 2, 2, Level::ZERO);
    let fav = state.favourite_neighbour(0).unwrap();
    assert_eq!((fav.b, fav.rule), (0, FavouriteRule::Unproposed));
}

#[test]
fn favourite_neighbour_prefers_marked_before_lower_rank() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    // run until a1 has marked b2 (a3 took it from the uncertain proposal)
    while !state.is_marked(1, 2) {
        assert!(state.step().unwrap());
    }
    // pretend a1 also went through b3 without success
    let p = state.position(1, 3).unwrap();
    state.proposers[1].proposed[p] = true;
    state.partner[3] = Some((0, Level::ordinary(1)));
    let fav = state.favourite_neighbour(1).unwrap();
    assert_eq!((fav.b, fav.rank, fav.rule), (2, 1, FavouriteRule::Marked));

    // after unmarking, a proposal to b2 fails and a1 moves on to rank 2
    state.ties_propose(1).unwrap();
    assert!(!state.is_marked(1, 2));
    let fav = state.favourite_neighbour(1).unwrap();
    assert_eq!((fav.b, fav.rank), (0, 2));
}

#[test]
fn ties_propose_uncertain_then_displaced() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    force_level(&mut state, 1, Level::ordinary(1));
    force_level(&mut state, 2, Level::ordinary(1));
    state.ties_propose(1).unwrap();
    assert_eq!(state.partner_of(2), Some((1, Level::ordinary(1))));
    assert!(state.is_uncertain(2));

    state.ties_propose(2).unwrap();
    assert_eq!(state.partner_of(2), Some((2, Level::ordinary(1))));
    assert!(!state.is_uncertain(2));
    assert!(state.is_marked(1, 2));
    assert_eq!(state.proposer(1).matched_to, None);
}

#[test]
fn ties_propose_star_beats_tie() {
    let inst = instance(2, 1, &[], &[], &[(0, 0, 1, 1), (1, 0, 1, 1)]);
    let mut state = EngineState::new(&inst);
    force_match(&mut state, 1, 0, Level::ZERO);
    force_level(&mut state, 0, Level::star(0));
    state.ties_propose(0).unwrap();
    assert_eq!(state.partner_of(0), Some((0, Level::star(0))));
    assert_eq!(state.queue.back(), Some(&(1, Level::ZERO)));
}

#[test]
fn ties_propose_without_favourite_is_a_contract_violation() {
    let inst = instance(1, 0, &[], &[], &[]);
    let mut state = EngineState::new(&inst);
    assert_eq!(
        state.ties_propose(0),
        Err(EngineError::Exhausted {
            a: 0,
            level: Level::ZERO
        })
    );
}

#[test]
fn advance_level_transitions() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    // a1 has an empty PrefSC at level 0 = t - 1
    force_level(&mut state, 1, Level::ZERO);
    assert_eq!(state.advance_level(1), Some(Level::ordinary(1)));
    assert_eq!(state.advance_level(1), Some(Level::star(1)));
    // a1 is critical: t* -> t+1 = s+t, then retire
    assert_eq!(state.advance_level(1), Some(Level::ordinary(2)));
    assert_eq!(state.advance_level(1), None);

    // a0 is not critical: retires at t*
    force_level(&mut state, 0, Level::star(1));
    assert_eq!(state.advance_level(0), None);
}

#[test]
fn level_transition_clears_marks() {
    let inst = example();
    let mut state = EngineState::new(&inst);
    while !state.is_marked(1, 2) {
        state.step().unwrap();
    }
    state.advance_level(1);
    assert!(!state.is_marked(1, 2));
    assert!(state.proposer(1).proposed.iter().all(|p| !p));
}

#[test]
fn isolated_proposers_cascade_and_retire() {
    // a0 critical with no edges climbs to s+t and retires
    let inst = instance(2, 2, &[0], &[0, 1], &[(1, 0, 1, 1)]);
    let (sol, events) = solve_traced(&inst).unwrap();
    assert_eq!(sol.matching.to_matching().pairs, vec![(1, 0)]);
    assert_eq!(sol.stats.final_levels[0], Level::ordinary(3));
    assert!(events.contains(&Event::Retire {
        a: 0,
        level: Level::ordinary(3)
    }));
}
