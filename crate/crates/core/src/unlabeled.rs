//! Unlabeled pebble motion (leaf pruning) and gathering holes into a subtree.

use crate::error::SolveError;
use crate::instance::{assumption_threshold, Threshold};
use crate::plan::{Configuration, Plan, PlanBuilder, Variant};
use crate::tree::{closest_subset, Tree, TreeView, Vertex, UNREACHABLE};

/// Plan after which the pebbles occupy exactly `destinations`.
///
/// Leaves are processed lowest id first; every step moves at most `n`
/// pebbles, so the plan has at most `n^2` moves.
pub fn solve_unlabeled(
    tree: &Tree,
    config: &Configuration,
    destinations: &[Vertex],
    variant: Variant,
) -> Result<Plan, SolveError> {
    let view = tree.view();
    let Threshold { holes, required } = assumption_threshold(&view, config, variant);
    if holes < required {
        return Err(SolveError::InfeasibleAssumption { holes, required });
    }
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    unlabeled_in(&view, &mut builder, destinations)?;
    Ok(builder.finish().0)
}

pub(crate) fn unlabeled_in(
    view: &TreeView<'_>,
    builder: &mut PlanBuilder<'_>,
    destinations: &[Vertex],
) -> Result<(), SolveError> {
    let tree = view.tree();
    let n = tree.vertex_count();
    let ts = builder.variant() == Variant::TransShipment;

    let mut is_destination = vec![false; n];
    for &d in destinations {
        if !view.contains(d) {
            return Err(SolveError::VertexOutsideTree(d));
        }
        if ts && !tree.is_regular(d) {
            return Err(SolveError::TargetIsTransShipment(d));
        }
        if is_destination[d] {
            return Err(SolveError::InvalidInstance(format!(
                "destination {d} listed twice"
            )));
        }
        is_destination[d] = true;
    }
    let occupied_here = view
        .vertices()
        .filter(|&v| !builder.config().is_hole(v))
        .count();
    if occupied_here != destinations.len() {
        return Err(SolveError::InvalidInstance(format!(
            "{} destinations for {} pebbles",
            destinations.len(),
            occupied_here
        )));
    }

    let mut remaining = view.clone();
    loop {
        let leaf = remaining.vertices().find(|&v| remaining.degree(v) <= 1);
        let Some(v) = leaf else { break };
        let occupied = !builder.config().is_hole(v);
        match (occupied, is_destination[v]) {
            (true, true) | (false, false) => {}
            (false, true) => {
                // Pull the nearest pebble in; the path to it is free.
                let dist = remaining.distances_from(v);
                let w = remaining
                    .vertices()
                    .filter(|&u| !builder.config().is_hole(u))
                    .min_by_key(|&u| (dist[u], u))
                    .ok_or_else(|| SolveError::InternalStuck(format!("no pebble left for {v}")))?;
                builder.move_pebble_along(&remaining.path(w, v))?;
            }
            (true, false) => {
                // Push the pebbles towards the nearest free vertex.
                let dist = remaining.distances_from(v);
                let u = remaining
                    .vertices()
                    .filter(|&u| builder.config().is_hole(u) && (!ts || tree.is_regular(u)))
                    .min_by_key(|&u| (dist[u], u))
                    .ok_or_else(|| SolveError::InternalStuck(format!("no free vertex for {v}")))?;
                builder.bring_hole_along(&remaining.path(v, u))?;
            }
        }
        remaining.remove(v);
    }
    Ok(())
}

/// Plan after which no pebble sits on `subtree`.
///
/// Holes are drawn from the closest free vertices (regular ones in the
/// trans-shipment variant); the plan has at most `n * q` moves where `q` is
/// the number of vertices to clear.
pub fn gather_holes(
    tree: &Tree,
    config: &Configuration,
    subtree: &[Vertex],
    variant: Variant,
) -> Result<Plan, SolveError> {
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    gather_in(&tree.view(), &mut builder, subtree)?;
    Ok(builder.finish().0)
}

/// Gathers holes into `target` using only vertices of `view`.
pub(crate) fn gather_in(
    view: &TreeView<'_>,
    builder: &mut PlanBuilder<'_>,
    target: &[Vertex],
) -> Result<(), SolveError> {
    let tree = view.tree();
    let ts = builder.variant() == Variant::TransShipment;
    let usable = |v: Vertex| !ts || tree.is_regular(v);

    if target.is_empty() {
        return Ok(());
    }
    if !view.is_connected_subset(target) {
        return Err(SolveError::NotConnectedSubtree);
    }
    let mut in_target = vec![false; tree.vertex_count()];
    for &v in target {
        in_target[v] = true;
    }
    let mut occupied: Vec<Vertex> = target
        .iter()
        .copied()
        .filter(|&v| !builder.config().is_hole(v))
        .collect();
    if occupied.is_empty() {
        return Ok(());
    }

    let q = target.iter().filter(|&&v| usable(v)).count();
    let free: Vec<Vertex> = view
        .vertices()
        .filter(|&v| builder.config().is_hole(v) && usable(v))
        .collect();
    if free.len() < q {
        return Err(SolveError::NotEnoughHoles {
            needed: q,
            available: free.len(),
        });
    }
    // Closest holes, nearest first; the ones already inside the target
    // need no work.
    let chosen = closest_subset(view, &free, target, q)?;
    let mut outside = chosen.into_iter().filter(|&h| !in_target[h]);

    while !occupied.is_empty() {
        let h = outside
            .next()
            .ok_or_else(|| SolveError::InternalStuck("ran out of holes while gathering".into()))?;
        if !builder.config().is_hole(h) {
            return Err(SolveError::InternalStuck(format!(
                "selected hole {h} was filled before use"
            )));
        }
        let dist = view.distances_from(h);
        let (idx, &u) = occupied
            .iter()
            .enumerate()
            .min_by_key(|&(_, &u)| (dist[u], u))
            .unwrap();
        debug_assert_ne!(dist[u], UNREACHABLE);
        occupied.swap_remove(idx);

        let path = view.path(u, h);
        // Last target vertex on the way from u to the hole.
        let exit = path.iter().rposition(|&x| in_target[x]).unwrap();
        // A pebble cannot wait on a trans-shipment vertex; stop just before it.
        let exit = if usable(path[exit]) { exit } else { exit - 1 };
        if exit > 0 {
            builder.move_pebble_along(&path[..=exit])?;
        }
        builder.bring_hole_along(&path[exit..])?;
    }
    Ok(())
}
