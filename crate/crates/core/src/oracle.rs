//! Exhaustive breadth-first search over labeled configurations.
//!
//! States are pebble-position tuples; holes are anonymous. In the
//! trans-shipment variant a crossing `u -> s -> v` is a single transition.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::instance::Instance;
use crate::plan::{Configuration, Move, Plan, Variant};
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_states: 2_000_000,
            max_depth: usize::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// A shortest plan, counted in moves.
    OptimalPlan(Plan),
    Infeasible,
    LimitExceeded,
}

type State = Vec<Vertex>;

/// Successor states of `state`, each with the moves that produce it.
fn successors(tree: &Tree, state: &State, variant: Variant) -> Vec<(State, Vec<Move>)> {
    let mut occupied = vec![false; tree.vertex_count()];
    for &v in state {
        occupied[v] = true;
    }
    let ts = variant == Variant::TransShipment;
    let mut out = Vec::new();
    for (i, &u) in state.iter().enumerate() {
        for &s in tree.neighbors(u) {
            if occupied[s] {
                continue;
            }
            if ts && !tree.is_regular(s) {
                for &v in tree.neighbors(s) {
                    if v != u && !occupied[v] {
                        let mut next = state.clone();
                        next[i] = v;
                        out.push((next, vec![Move::new(u, s), Move::new(s, v)]));
                    }
                }
            } else {
                let mut next = state.clone();
                next[i] = s;
                out.push((next, vec![Move::new(u, s)]));
            }
        }
    }
    out
}

/// Shortest plan reaching the instance goal, if one exists within `limits`.
///
/// Depth is counted in moves, so a trans-shipment crossing costs two.
/// States are expanded in order of moves spent, which keeps the returned
/// plan optimal in moves.
pub fn bfs_solve(instance: &Instance, limits: SearchLimits) -> OracleOutcome {
    let tree = &instance.tree;
    let start: State = instance.start.positions().to_vec();
    let n = tree.vertex_count();
    let is_goal = |s: &State| {
        let config = Configuration::new(n, s.clone()).expect("states are valid");
        instance.problem.is_satisfied(&config)
    };

    // Transitions cost one or two moves; a bucket queue keeps the order.
    let mut parent: HashMap<State, Option<(State, Vec<Move>)>> = HashMap::new();
    let mut cost: HashMap<State, usize> = HashMap::new();
    let mut buckets: Vec<VecDeque<State>> = vec![VecDeque::new()];
    cost.insert(start.clone(), 0);
    parent.insert(start.clone(), None);
    buckets[0].push_back(start);
    let mut level = 0;
    let mut truncated = false;
    while level < buckets.len() {
        let Some(state) = buckets[level].pop_front() else {
            level += 1;
            continue;
        };
        if cost[&state] != level {
            continue;
        }
        if is_goal(&state) {
            let mut moves = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, step))) = parent.get(&cur) {
                moves.extend(step.iter().rev());
                cur = prev.clone();
            }
            moves.reverse();
            return OracleOutcome::OptimalPlan(Plan::from(moves));
        }
        if level >= limits.max_depth {
            truncated = true;
            continue;
        }
        for (next, step) in successors(tree, &state, instance.variant) {
            let c = level + step.len();
            if cost.get(&next).is_some_and(|&old| old <= c) {
                continue;
            }
            if !cost.contains_key(&next) && cost.len() >= limits.max_states {
                return OracleOutcome::LimitExceeded;
            }
            cost.insert(next.clone(), c);
            parent.insert(next.clone(), Some((state.clone(), step)));
            if buckets.len() <= c {
                buckets.resize_with(c + 1, VecDeque::new);
            }
            buckets[c].push_back(next);
        }
    }
    if truncated {
        OracleOutcome::LimitExceeded
    } else {
        OracleOutcome::Infeasible
    }
}

/// Every pebble-position tuple reachable from `start`, or `None` when more
/// than `max_states` exist.
pub fn reachable_states(
    tree: &Tree,
    start: &Configuration,
    variant: Variant,
    max_states: usize,
) -> Option<HashSet<Vec<Vertex>>> {
    let first: State = start.positions().to_vec();
    let mut seen = HashSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(state) = queue.pop_front() {
        for (next, _) in successors(tree, &state, variant) {
            if !seen.contains(&next) {
                if seen.len() >= max_states {
                    return None;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Some(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Problem;
    use crate::plan::{apply_plan, PebbleId};

    fn pmt(tree: Tree, start: Vec<Vertex>, target: Vec<Vertex>) -> Instance {
        let n = tree.vertex_count();
        Instance::new(
            tree,
            Variant::Plain,
            Configuration::new(n, start).unwrap(),
            Problem::Pmt {
                target: Configuration::new(n, target).unwrap(),
            },
        )
    }

    #[test]
    fn path_motion_is_two_moves() {
        let inst = Instance::new(
            Tree::path_graph(3),
            Variant::Plain,
            Configuration::new(3, vec![0]).unwrap(),
            Problem::MotionPlanning {
                pebble: PebbleId(0),
                target: 2,
            },
        );
        let OracleOutcome::OptimalPlan(plan) = bfs_solve(&inst, SearchLimits::default()) else {
            panic!("path motion is feasible");
        };
        assert_eq!(plan.len(), 2);
    }

    #[test]
    fn path_swap_is_infeasible() {
        let inst = pmt(Tree::path_graph(3), vec![0, 1], vec![1, 0]);
        assert_eq!(
            bfs_solve(&inst, SearchLimits::default()),
            OracleOutcome::Infeasible
        );
    }

    #[test]
    fn star_swap_length() {
        // Swapping two leaves of K1,3 needs one pebble to step aside.
        let inst = pmt(Tree::star(3), vec![1, 2], vec![2, 1]);
        let OracleOutcome::OptimalPlan(plan) = bfs_solve(&inst, SearchLimits::default()) else {
            panic!("star swap is feasible");
        };
        assert_eq!(plan.len(), 6);
        let end = apply_plan(&inst.tree, &inst.start, &plan, Variant::Plain).unwrap();
        assert_eq!(end.positions(), &[2, 1]);
    }

    #[test]
    fn limits_are_reported() {
        let inst = pmt(Tree::star(3), vec![1, 2], vec![2, 1]);
        let tight = SearchLimits {
            max_states: 3,
            max_depth: usize::MAX,
        };
        assert_eq!(bfs_solve(&inst, tight), OracleOutcome::LimitExceeded);
        let shallow = SearchLimits {
            max_states: 1000,
            max_depth: 2,
        };
        assert_eq!(bfs_solve(&inst, shallow), OracleOutcome::LimitExceeded);
    }

    #[test]
    fn trans_shipment_crossing_is_atomic() {
        let tree = Tree::with_trans_shipment(3, &[(0, 1), (1, 2)], &[1]).unwrap();
        let inst = Instance::new(
            tree,
            Variant::TransShipment,
            Configuration::new(3, vec![0]).unwrap(),
            Problem::MotionPlanning {
                pebble: PebbleId(0),
                target: 2,
            },
        );
        let OracleOutcome::OptimalPlan(plan) = bfs_solve(&inst, SearchLimits::default()) else {
            panic!("crossing is feasible");
        };
        assert_eq!(plan, Plan::from(vec![Move::new(0, 1), Move::new(1, 2)]));
        let states = reachable_states(&inst.tree, &inst.start, Variant::TransShipment, 10).unwrap();
        assert_eq!(states.len(), 2);
    }
}
