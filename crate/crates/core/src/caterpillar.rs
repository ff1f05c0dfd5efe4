//! Single-pebble motion planning along caterpillar sets.
//!
//! The route from the pebble to its target is cut into overlapping vertex
//! sets, each holding a stretch of the route plus two parking vertices off
//! it. The pebble hops from one parking vertex to the next while the other
//! pebbles are slid out of the way inside two consecutive sets.

use crate::error::SolveError;
use crate::instance::Threshold;
use crate::plan::{Configuration, PebbleId, Plan, PlanBuilder, Variant};
use crate::tree::{analyze, CorridorProfile, Tree, TreeView, Vertex};
use crate::unlabeled::gather_in;

/// Route triples `(i_k, j_k, l_k)` and the sets `S_0..S_m` built from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaterpillarDecomposition {
    /// `(i_k, j_k, l_k)`: the stretch `i_k..j_k` of the route and the
    /// parking vertex `l_k` next to `i_k` (`l_0` is the source).
    pub triples: Vec<(Vertex, Vertex, Vertex)>,
    /// Sorted vertex sets, one per triple.
    pub sets: Vec<Vec<Vertex>>,
    pub m: usize,
}

impl CaterpillarDecomposition {
    pub fn parking(&self, k: usize) -> Vertex {
        self.triples[k].2
    }
}

/// Builds the caterpillar sets for moving a pebble from `r` to `t`.
pub fn build_caterpillar_sets(
    tree: &Tree,
    profile: &CorridorProfile,
    r: Vertex,
    t: Vertex,
    variant: Variant,
) -> Result<CaterpillarDecomposition, SolveError> {
    caterpillar_in(&tree.view(), profile, r, t, variant)
}

pub(crate) fn caterpillar_in(
    view: &TreeView<'_>,
    profile: &CorridorProfile,
    r: Vertex,
    t: Vertex,
    variant: Variant,
) -> Result<CaterpillarDecomposition, SolveError> {
    if r == t {
        return Err(SolveError::InvalidInstance(
            "caterpillar sets need distinct endpoints".into(),
        ));
    }
    let tree = view.tree();
    let ts = variant == Variant::TransShipment;
    let route = view.path(r, t);
    let last = route.len() - 1;
    let mut on_route = vec![false; tree.vertex_count()];
    for &v in &route {
        on_route[v] = true;
    }

    // In the trans-shipment variant lengths count regular vertices.
    let mut prefix = vec![0; route.len() + 1];
    for (i, &v) in route.iter().enumerate() {
        prefix[i + 1] = prefix[i] + usize::from(!ts || tree.is_regular(v));
    }
    let span = |a: usize, b: usize| {
        if ts {
            prefix[b + 1] - prefix[a]
        } else {
            b - a
        }
    };
    let limit = if ts { profile.c_tilde } else { profile.c };
    let degenerate = |msg: String| SolveError::DegenerateGeometry(msg);

    let parking_path = |i: Vertex| -> Result<Vec<Vertex>, SolveError> {
        let mut off = view.neighbors(i).filter(|&w| !on_route[w]);
        if !ts {
            return off
                .next()
                .map(|l| vec![i, l])
                .ok_or_else(|| degenerate(format!("junction {i} has no parking vertex")));
        }
        let off: Vec<Vertex> = off.collect();
        if let Some(&l) = off.iter().find(|&&w| tree.is_regular(w)) {
            return Ok(vec![i, l]);
        }
        off.iter()
            .find_map(|&s| view.neighbors(s).find(|&w| w != i).map(|l| vec![i, s, l]))
            .ok_or_else(|| degenerate(format!("no parking vertex within two hops of {i}")))
    };

    // (route index of i_k, route index of j_k, path from i_k to l_k)
    let mut stretches: Vec<(usize, usize, Vec<Vertex>)> = Vec::new();
    let mut a = 1;
    let mut park = vec![route[1], r];
    loop {
        if span(a, last) < limit {
            stretches.push((a, last, park));
            break;
        }
        let goal = limit
            .checked_sub(2)
            .ok_or_else(|| degenerate(format!("constant {limit} too small")))?;
        let b = (a..last)
            .rev()
            .find(|&b| span(a, b) == goal)
            .ok_or_else(|| degenerate(format!("no stretch end after vertex {}", route[a])))?;
        let next = (a + 1..=b)
            .rev()
            .find(|&x| view.degree(route[x]) >= 3)
            .ok_or_else(|| {
                degenerate(format!("no junction between {} and {}", route[a], route[b]))
            })?;
        stretches.push((a, b, park));
        park = parking_path(route[next])?;
        a = next;
    }

    let m = stretches.len() - 1;
    let mut triples = Vec::with_capacity(m + 1);
    let mut sets = Vec::with_capacity(m + 1);
    for (k, (a, b, park)) in stretches.iter().enumerate() {
        let mut set: Vec<Vertex> = route[*a..=*b].to_vec();
        set.extend_from_slice(park);
        if let Some((_, _, next_park)) = stretches.get(k + 1) {
            set.extend_from_slice(next_park);
        }
        set.sort_unstable();
        set.dedup();
        sets.push(set);
        triples.push((route[*a], route[*b], *park.last().unwrap()));
    }
    Ok(CaterpillarDecomposition { triples, sets, m })
}

/// Holes needed on the target side of the source for Procedure A.
fn case_a_need(profile: &CorridorProfile, variant: Variant) -> usize {
    match variant {
        Variant::Plain => profile.c,
        Variant::TransShipment => profile.c_tilde.saturating_sub(1),
    }
}

/// Holes that count towards [`case_a_need`] inside `view`.
fn usable_holes(view: &TreeView<'_>, config: &Configuration, variant: Variant) -> usize {
    match variant {
        Variant::Plain => config.holes_in(view),
        Variant::TransShipment => config.regular_holes_in(view),
    }
}

/// Procedure A: the target side of the source already holds enough holes.
pub fn procedure_a(
    tree: &Tree,
    profile: &CorridorProfile,
    config: &Configuration,
    pebble: PebbleId,
    t: Vertex,
    variant: Variant,
) -> Result<Plan, SolveError> {
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    procedure_a_in(&tree.view(), profile, &mut builder, pebble, t)?;
    Ok(builder.finish().0)
}

/// Procedure B: holes are first borrowed from the branches behind the source.
pub fn procedure_b(
    tree: &Tree,
    profile: &CorridorProfile,
    config: &Configuration,
    pebble: PebbleId,
    t: Vertex,
    variant: Variant,
) -> Result<Plan, SolveError> {
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    procedure_b_in(&tree.view(), profile, &mut builder, pebble, t)?;
    Ok(builder.finish().0)
}

pub(crate) fn procedure_a_in(
    view: &TreeView<'_>,
    profile: &CorridorProfile,
    builder: &mut PlanBuilder<'_>,
    pebble: PebbleId,
    t: Vertex,
) -> Result<(), SolveError> {
    let variant = builder.variant();
    let r = builder.config().position(pebble);
    if r == t {
        return Ok(());
    }
    let side = view.restrict(view.component(r, t));
    let needed = case_a_need(profile, variant);
    let found = usable_holes(&side, builder.config(), variant);
    if found < needed {
        return Err(SolveError::PreconditionHoleDeficit { needed, found });
    }

    let dec = caterpillar_in(view, profile, r, t, variant)?;
    let first: Vec<Vertex> = dec.sets[0].iter().copied().filter(|&v| v != r).collect();
    gather_in(&side, builder, &first)?;
    let goal = if dec.m == 0 { t } else { dec.parking(1) };
    builder.move_pebble_along(&view.path(r, goal))?;

    for k in 0..dec.m {
        let park = dec.parking(k + 1);
        let pair = view
            .restrict(dec.sets[k].iter().chain(&dec.sets[k + 1]).copied())
            .without(park);
        let target: Vec<Vertex> = dec.sets[k + 1]
            .iter()
            .copied()
            .filter(|&v| v != park)
            .collect();
        gather_in(&pair, builder, &target)?;
        let goal = if k + 1 == dec.m {
            t
        } else {
            dec.parking(k + 2)
        };
        builder.move_pebble_along(&view.path(park, goal))?;
    }
    Ok(())
}

pub(crate) fn procedure_b_in(
    view: &TreeView<'_>,
    profile: &CorridorProfile,
    builder: &mut PlanBuilder<'_>,
    pebble: PebbleId,
    t: Vertex,
) -> Result<(), SolveError> {
    let tree = view.tree();
    let variant = builder.variant();
    let ts = variant == Variant::TransShipment;
    let r = builder.config().position(pebble);
    if r == t {
        return Ok(());
    }
    let toward_t = view.path(r, t)[1];
    let side = view.restrict(view.component(r, t));
    let needed = case_a_need(profile, variant);
    let mut missing = needed.saturating_sub(usable_holes(&side, builder.config(), variant));

    let mut last: Option<Vec<Vertex>> = None;
    let branches: Vec<Vertex> = view.neighbors(r).filter(|&z| z != toward_t).collect();
    for z in branches {
        if missing == 0 {
            break;
        }
        let branch = view.restrict(view.component(r, z));
        let take = usable_holes(&branch, builder.config(), variant).min(missing);
        if take == 0 {
            continue;
        }
        let (dist, parent) = branch.bfs(&[z]);
        let mut nearest: Vec<Vertex> = branch
            .vertices()
            .filter(|&v| !ts || tree.is_regular(v))
            .collect();
        nearest.sort_unstable_by_key(|&v| (dist[v], v));
        nearest.truncate(take);
        let mut target = nearest.clone();
        if ts {
            target.extend(
                nearest
                    .iter()
                    .map(|&v| parent[v])
                    .filter(|&p| !tree.is_regular(p)),
            );
            target.sort_unstable();
            target.dedup();
        }
        gather_in(&branch, builder, &target)?;
        missing -= take;
        last = Some(nearest);
    }
    if missing > 0 {
        let threshold = crate::instance::assumption_threshold(view, builder.config(), variant);
        let Threshold { holes, required } = threshold;
        return Err(SolveError::InfeasibleAssumption { holes, required });
    }

    if let Some(nearest) = last {
        let dist = view.distances_from(r);
        let v = nearest
            .iter()
            .copied()
            .max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))
            .unwrap();
        builder.move_pebble_along(&view.path(r, v))?;
    }
    procedure_a_in(view, profile, builder, pebble, t)
}

/// Plan that brings `pebble` to `t`.
pub fn solve_motion_planning(
    tree: &Tree,
    config: &Configuration,
    pebble: PebbleId,
    t: Vertex,
    variant: Variant,
) -> Result<Plan, SolveError> {
    if pebble.0 >= config.pebble_count() {
        return Err(SolveError::UnknownPebble(pebble));
    }
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    motion_in(&tree.view(), &mut builder, pebble, t)?;
    Ok(builder.finish().0)
}

pub(crate) fn motion_in(
    view: &TreeView<'_>,
    builder: &mut PlanBuilder<'_>,
    pebble: PebbleId,
    t: Vertex,
) -> Result<(), SolveError> {
    let tree = view.tree();
    let variant = builder.variant();
    if !view.contains(t) {
        return Err(SolveError::VertexOutsideTree(t));
    }
    if variant == Variant::TransShipment && !tree.is_regular(t) {
        return Err(SolveError::TargetIsTransShipment(t));
    }
    let r = builder.config().position(pebble);
    if !view.contains(r) {
        return Err(SolveError::VertexOutsideTree(r));
    }
    if r == t {
        return Ok(());
    }
    let route = view.path(r, t);
    if route[1..].iter().all(|&v| builder.config().is_hole(v)) {
        builder.move_pebble_along(&route)?;
        return Ok(());
    }

    let profile = analyze(view);
    let threshold = crate::instance::assumption_threshold(view, builder.config(), variant);
    if !threshold.holds() {
        return Err(SolveError::InfeasibleAssumption {
            holes: threshold.holes,
            required: threshold.required,
        });
    }
    let side = view.restrict(view.component(r, t));
    if usable_holes(&side, builder.config(), variant) >= case_a_need(&profile, variant) {
        procedure_a_in(view, &profile, builder, pebble, t)
    } else {
        procedure_b_in(view, &profile, builder, pebble, t)
    }
}
