//! Labeled pebble motion: intermediate targets, the leaves pipeline and the
//! uniform `solve` entry point.

use crate::caterpillar::{motion_in, solve_motion_planning};
use crate::error::SolveError;
use crate::instance::{assumption_threshold, Instance, Problem};
use crate::plan::{replay, reverse_plan, Configuration, Plan, PlanBuilder, Variant};
use crate::tree::{analyze, Tree, TreeView, Vertex};
use crate::unlabeled::{gather_holes, solve_unlabeled, unlabeled_in};

/// Leaves `t_1..t_k` peeled off one at a time, with the views `T_1..T_k`
/// they are leaves of (`T_1` is the whole tree).
#[derive(Debug, Clone)]
pub struct IntermediateTargets<'a> {
    pub targets: Vec<Vertex>,
    pub views: Vec<TreeView<'a>>,
}

fn feasibility_constant(view: &TreeView<'_>, variant: Variant) -> usize {
    let profile = analyze(view);
    match variant {
        Variant::Plain => profile.c,
        Variant::TransShipment => profile.c_tilde,
    }
}

/// Leaf of `view` whose removal does not raise the feasibility constant.
fn pick_leaf(view: &TreeView<'_>, variant: Variant) -> Option<Vertex> {
    let tree = view.tree();
    let leaves: Vec<Vertex> = view
        .leaves()
        .into_iter()
        .filter(|&v| tree.is_regular(v))
        .collect();
    let anchor_degree = |v: Vertex| view.neighbors(v).next().map_or(0, |w| view.degree(w));

    let preferred = leaves
        .iter()
        .copied()
        .find(|&v| anchor_degree(v) > 3)
        .or_else(|| leaves.iter().copied().find(|&v| anchor_degree(v) <= 2))
        .or_else(|| {
            if view.len() == 4 {
                return leaves.first().copied();
            }
            // A degree-three junction carrying exactly two leaves.
            leaves.iter().copied().find(|&v| {
                let Some(w) = view.neighbors(v).next() else {
                    return false;
                };
                view.degree(w) == 3
                    && view.neighbors(w).filter(|&x| view.degree(x) == 1).count() == 2
            })
        });

    let before = feasibility_constant(view, variant);
    let after = |v: Vertex| feasibility_constant(&shrink(view, v), variant);
    if let Some(v) = preferred {
        if after(v) <= before {
            return Some(v);
        }
    }
    leaves
        .iter()
        .copied()
        .min_by_key(|&v| (after(v) > before, after(v), v))
}

/// `view` without `leaf`, dropping trans-shipment vertices left dangling.
fn shrink<'a>(view: &TreeView<'a>, leaf: Vertex) -> TreeView<'a> {
    let tree = view.tree();
    let mut next = view.without(leaf);
    loop {
        let dangling = next
            .vertices()
            .find(|&s| !tree.is_regular(s) && next.degree(s) <= 1);
        let Some(s) = dangling else { break };
        next.remove(s);
    }
    next
}

/// Picks `count` intermediate targets, each a leaf of the tree left after
/// removing the previous ones, without ever raising `c` (or `c~`).
pub fn intermediate_targets(
    tree: &Tree,
    count: usize,
    variant: Variant,
) -> Result<IntermediateTargets<'_>, SolveError> {
    targets_in(tree.view(), count, variant)
}

fn targets_in(
    view: TreeView<'_>,
    count: usize,
    variant: Variant,
) -> Result<IntermediateTargets<'_>, SolveError> {
    let mut current = view;
    let mut targets = Vec::with_capacity(count);
    let mut views = Vec::with_capacity(count);
    for _ in 0..count {
        let v = pick_leaf(&current, variant).ok_or_else(|| {
            SolveError::InvalidInstance(format!(
                "no regular leaf left for target {}",
                targets.len()
            ))
        })?;
        let next = shrink(&current, v);
        targets.push(v);
        views.push(std::mem::replace(&mut current, next));
    }
    Ok(IntermediateTargets { targets, views })
}

/// Labeled plan taking `start` to `target`.
///
/// Pebbles are parked one by one on leaf targets with single-pebble plans,
/// then an unlabeled plan from the target, reversed, spreads them out.
pub fn solve_pmt(
    tree: &Tree,
    start: &Configuration,
    target: &Configuration,
    variant: Variant,
) -> Result<Plan, SolveError> {
    let instance = Instance::new(
        tree.clone(),
        variant,
        start.clone(),
        Problem::Pmt {
            target: target.clone(),
        },
    );
    instance.validate()?;
    let threshold = assumption_threshold(&tree.view(), start, variant);
    if !threshold.holds() {
        return Err(SolveError::InfeasibleAssumption {
            holes: threshold.holes,
            required: threshold.required,
        });
    }

    let IntermediateTargets { targets, views } =
        intermediate_targets(tree, start.pebble_count(), variant)?;

    let mut unlabeled = PlanBuilder::new(tree, target.clone(), variant);
    unlabeled_in(&tree.view(), &mut unlabeled, &targets)?;
    let (g, parked) = unlabeled.finish();

    let mut builder = PlanBuilder::new(tree, start.clone(), variant);
    for (view, &t) in views.iter().zip(&targets) {
        let pebble = parked
            .pebble_at(t)
            .ok_or_else(|| SolveError::InternalStuck(format!("no pebble parked on {t}")))?;
        motion_in(view, &mut builder, pebble, t)?;
    }
    if builder.config() != &parked {
        return Err(SolveError::InternalStuck(
            "pebbles did not reach their intermediate targets".into(),
        ));
    }
    builder.extend(&reverse_plan(&g));
    Ok(builder.finish().0)
}

/// Solves any instance and replays the result before returning it.
pub fn solve(instance: &Instance) -> Result<Plan, SolveError> {
    instance.validate()?;
    let Instance {
        tree,
        variant,
        start,
        problem,
    } = instance;
    let plan = match problem {
        Problem::Pmt { target } => solve_pmt(tree, start, target, *variant)?,
        Problem::Unlabeled { destinations } => {
            solve_unlabeled(tree, start, destinations, *variant)?
        }
        Problem::MotionPlanning { pebble, target } => {
            solve_motion_planning(tree, start, *pebble, *target, *variant)?
        }
        Problem::GatherHoles { subtree } => gather_holes(tree, start, subtree, *variant)?,
    };
    let report = replay(tree, start, &plan, *variant);
    if let Some(violation) = report.violation {
        return Err(SolveError::ValidationFailed(violation.to_string()));
    }
    if !problem.is_satisfied(&report.final_config) {
        return Err(SolveError::ValidationFailed(
            "plan does not reach the goal".into(),
        ));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{apply_plan, PebbleId};

    #[test]
    fn star_targets_keep_c() {
        let t = Tree::star(3);
        let it = intermediate_targets(&t, 1, Variant::Plain).unwrap();
        assert_eq!(it.targets, vec![1]);
        assert_eq!(analyze(&it.views[0].without(1)).c, 2);
    }

    #[test]
    fn targets_prefer_high_degree_anchors() {
        // 0 has four leaves 1..4 and a tail 5 - 6.
        let t = Tree::new(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)]).unwrap();
        let it = intermediate_targets(&t, 2, Variant::Plain).unwrap();
        assert_eq!(it.targets, vec![1, 2]);
        assert_eq!(it.views[1].len(), 6);
    }

    #[test]
    fn star_swap() {
        let t = Tree::star(3);
        let start = Configuration::new(4, vec![1, 2]).unwrap();
        let target = Configuration::new(4, vec![2, 1]).unwrap();
        let plan = solve_pmt(&t, &start, &target, Variant::Plain).unwrap();
        assert_eq!(
            apply_plan(&t, &start, &plan, Variant::Plain).unwrap(),
            target
        );
    }

    #[test]
    fn identity_instance() {
        let t = Tree::path_graph(5);
        let start = Configuration::new(5, vec![3]).unwrap();
        let plan = solve_pmt(&t, &start, &start, Variant::Plain).unwrap();
        assert_eq!(
            apply_plan(&t, &start, &plan, Variant::Plain).unwrap(),
            start
        );
    }

    #[test]
    fn solve_dispatches_trivial_cases() {
        let t = Tree::path_graph(3);
        let start = Configuration::new(3, vec![1]).unwrap();
        let gather = Instance::new(
            t.clone(),
            Variant::Plain,
            start.clone(),
            Problem::GatherHoles { subtree: vec![] },
        );
        assert!(solve(&gather).unwrap().is_empty());
        let stay = Instance::new(
            t,
            Variant::Plain,
            start,
            Problem::MotionPlanning {
                pebble: PebbleId(0),
                target: 1,
            },
        );
        assert!(solve(&stay).unwrap().is_empty());
    }

    #[test]
    fn infeasible_is_reported() {
        let t = Tree::path_graph(3);
        let start = Configuration::new(3, vec![0, 1]).unwrap();
        let target = Configuration::new(3, vec![1, 0]).unwrap();
        assert_eq!(
            solve_pmt(&t, &start, &target, Variant::Plain),
            Err(SolveError::InfeasibleAssumption {
                holes: 1,
                required: 2
            })
        );
    }
}
