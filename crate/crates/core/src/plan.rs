//! Configurations, moves, plans and the transition function.
//!
//! Holes are anonymous: a [`Configuration`] stores where each pebble is and
//! which vertices are free, so two configurations compare equal exactly when
//! every pebble sits on the same vertex.

use std::fmt;

use thiserror::Error;

use crate::tree::{Tree, TreeView, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PebbleId(pub usize);

impl fmt::Display for PebbleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occupant {
    Pebble(PebbleId),
    Hole,
}

/// Problem variant: plain trees, or trees with trans-shipment vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    #[default]
    Plain,
    TransShipment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigurationError {
    #[error("pebble {pebble} placed on vertex {vertex}, but the tree has {n} vertices")]
    OutOfRange {
        pebble: PebbleId,
        vertex: Vertex,
        n: usize,
    },
    #[error("pebbles {0} and {1} share vertex {2}")]
    Collision(PebbleId, PebbleId, Vertex),
}

/// Assignment of pebbles to vertices; every other vertex holds a hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    occupant: Vec<Option<PebbleId>>,
    positions: Vec<Vertex>,
}

impl Configuration {
    /// `positions[i]` is the vertex of pebble `i`.
    pub fn new(vertex_count: usize, positions: Vec<Vertex>) -> Result<Self, ConfigurationError> {
        let mut occupant = vec![None; vertex_count];
        for (i, &v) in positions.iter().enumerate() {
            let pebble = PebbleId(i);
            if v >= vertex_count {
                return Err(ConfigurationError::OutOfRange {
                    pebble,
                    vertex: v,
                    n: vertex_count,
                });
            }
            if let Some(other) = occupant[v] {
                return Err(ConfigurationError::Collision(other, pebble, v));
            }
            occupant[v] = Some(pebble);
        }
        Ok(Self {
            occupant,
            positions,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            occupant: vec![None; vertex_count],
            positions: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.occupant.len()
    }

    pub fn pebble_count(&self) -> usize {
        self.positions.len()
    }

    pub fn hole_count(&self) -> usize {
        self.vertex_count() - self.pebble_count()
    }

    pub fn occupant(&self, v: Vertex) -> Occupant {
        match self.occupant[v] {
            Some(p) => Occupant::Pebble(p),
            None => Occupant::Hole,
        }
    }

    pub fn pebble_at(&self, v: Vertex) -> Option<PebbleId> {
        self.occupant[v]
    }

    pub fn is_hole(&self, v: Vertex) -> bool {
        self.occupant[v].is_none()
    }

    pub fn position(&self, pebble: PebbleId) -> Vertex {
        self.positions[pebble.0]
    }

    /// Pebble positions indexed by pebble id.
    pub fn positions(&self) -> &[Vertex] {
        &self.positions
    }

    pub fn pebbles(&self) -> impl Iterator<Item = PebbleId> {
        (0..self.positions.len()).map(PebbleId)
    }

    pub fn occupied_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.positions.iter().copied()
    }

    /// Holes inside a view.
    pub fn holes_in(&self, view: &TreeView<'_>) -> usize {
        view.vertices().filter(|&v| self.is_hole(v)).count()
    }

    /// Holes on regular vertices inside a view.
    pub fn regular_holes_in(&self, view: &TreeView<'_>) -> usize {
        view.vertices()
            .filter(|&v| self.is_hole(v) && view.is_regular(v))
            .count()
    }

    /// Exchanges whatever sits on `u` and `v`.
    pub(crate) fn swap(&mut self, u: Vertex, v: Vertex) {
        let (a, b) = (self.occupant[u], self.occupant[v]);
        self.occupant[u] = b;
        self.occupant[v] = a;
        if let Some(p) = a {
            self.positions[p.0] = v;
        }
        if let Some(p) = b {
            self.positions[p.0] = u;
        }
    }

    /// Applies one move in place.
    pub fn apply(&mut self, tree: &Tree, mv: Move) -> Result<(), MoveError> {
        let n = self.vertex_count();
        for v in [mv.from, mv.to] {
            if v >= n {
                return Err(MoveError::VertexOutOfRange(v));
            }
        }
        if !tree.is_adjacent(mv.from, mv.to) {
            return Err(MoveError::NonAdjacent(mv));
        }
        if !self.is_hole(mv.to) {
            return Err(MoveError::DestinationOccupied(mv));
        }
        self.swap(mv.from, mv.to);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Self { from, to }
    }

    pub fn reversed(self) -> Self {
        Self {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// Ordered sequence of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Plan {
    moves: Vec<Move>,
}

impl Plan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    pub fn append(&mut self, other: &Plan) {
        self.moves.extend_from_slice(&other.moves);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.moves.iter()
    }
}

impl From<Vec<Move>> for Plan {
    fn from(moves: Vec<Move>) -> Self {
        Self { moves }
    }
}

impl FromIterator<Move> for Plan {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        Self {
            moves: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Plan {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;
    fn into_iter(self) -> Self::IntoIter {
        self.moves.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertex {0} does not exist")]
    VertexOutOfRange(Vertex),
    #[error("move {0} does not follow an edge")]
    NonAdjacent(Move),
    #[error("move {0} targets an occupied vertex")]
    DestinationOccupied(Move),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("move #{index} is illegal: {cause}")]
    IllegalMoveAt { index: usize, cause: MoveError },
    #[error("after move #{index} a pebble rests on trans-shipment vertex {vertex}")]
    PebbleRestsOnTransShipment { index: usize, vertex: Vertex },
    #[error("vertex {0} does not hold a hole")]
    SourceNotHole(Vertex),
    #[error("holes cannot be brought from trans-shipment vertex {0}")]
    TransShipmentSource(Vertex),
    #[error("vertex {0} does not hold a pebble")]
    NotAPebble(Vertex),
    #[error("path is blocked by a pebble on vertex {0}")]
    PathBlocked(Vertex),
    #[error("a pebble cannot stop on trans-shipment vertex {0}")]
    TransShipmentTarget(Vertex),
    #[error("configuration has {found} vertices, tree has {expected}")]
    SizeMismatch { expected: usize, found: usize },
}

/// Configuration after one move, leaving the input untouched.
pub fn apply_move(
    tree: &Tree,
    config: &Configuration,
    mv: Move,
) -> Result<Configuration, MoveError> {
    let mut next = config.clone();
    next.apply(tree, mv)?;
    Ok(next)
}

/// Folds a plan over a configuration.
///
/// In the trans-shipment variant a pebble that lands on a trans-shipment
/// vertex must leave it with the very next move.
pub fn apply_plan(
    tree: &Tree,
    config: &Configuration,
    plan: &Plan,
    variant: Variant,
) -> Result<Configuration, PlanError> {
    let report = replay(tree, config, plan, variant);
    match report.violation {
        Some(err) => Err(err),
        None => Ok(report.final_config),
    }
}

/// Outcome of replaying a plan move by move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Configuration reached before the first violation, or after the whole
    /// plan when there is none.
    pub final_config: Configuration,
    /// Number of moves applied successfully.
    pub applied: usize,
    pub violation: Option<PlanError>,
    pub length: usize,
    /// Arrivals per vertex over the applied prefix.
    pub crossings: Vec<usize>,
}

impl ValidationReport {
    pub fn is_legal(&self) -> bool {
        self.violation.is_none()
    }

    pub fn max_crossing(&self) -> usize {
        self.crossings.iter().copied().max().unwrap_or(0)
    }
}

/// Replays `plan`, stopping at the first violation.
pub fn replay(
    tree: &Tree,
    config: &Configuration,
    plan: &Plan,
    variant: Variant,
) -> ValidationReport {
    let n = tree.vertex_count();
    let mut current = config.clone();
    let mut crossings = vec![0; n];
    let report = |current: Configuration, applied, crossings, violation| ValidationReport {
        final_config: current,
        applied,
        violation,
        length: plan.len(),
        crossings,
    };
    if config.vertex_count() != n {
        let err = PlanError::SizeMismatch {
            expected: n,
            found: config.vertex_count(),
        };
        return report(current, 0, crossings, Some(err));
    }

    // Trans-shipment vertex currently hosting a pebble in transit.
    let mut transit: Option<Vertex> = None;
    for (index, &mv) in plan.iter().enumerate() {
        if let Some(s) = transit {
            if mv.from != s {
                let err = PlanError::PebbleRestsOnTransShipment {
                    index: index - 1,
                    vertex: s,
                };
                return report(current, index, crossings, Some(err));
            }
        }
        let moves_pebble = mv.from < n && !current.is_hole(mv.from);
        if let Err(cause) = current.apply(tree, mv) {
            let err = PlanError::IllegalMoveAt { index, cause };
            return report(current, index, crossings, Some(err));
        }
        crossings[mv.to] += 1;
        transit = (variant == Variant::TransShipment && moves_pebble && !tree.is_regular(mv.to))
            .then_some(mv.to);
    }
    if let Some(s) = transit {
        let err = PlanError::PebbleRestsOnTransShipment {
            index: plan.len() - 1,
            vertex: s,
        };
        return report(current, plan.len(), crossings, Some(err));
    }
    report(current, plan.len(), crossings, None)
}

/// Reversed order with every move flipped.
pub fn reverse_plan(plan: &Plan) -> Plan {
    plan.iter().rev().map(|mv| mv.reversed()).collect()
}

/// Number of moves arriving at each vertex.
pub fn vertex_crossings(plan: &Plan, vertex_count: usize) -> Vec<usize> {
    let mut counts = vec![0; vertex_count];
    for mv in plan {
        counts[mv.to] += 1;
    }
    counts
}

/// Plan that makes `v` free by shifting every pebble on the path from `v`
/// to the hole at `w` one step towards `w`.
pub fn bring_hole(
    tree: &Tree,
    config: &Configuration,
    w: Vertex,
    v: Vertex,
    variant: Variant,
) -> Result<Plan, PlanError> {
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    builder.bring_hole_along(&tree.path_between(v, w))?;
    Ok(builder.finish().0)
}

/// Plan walking the pebble on `v` to `w` over free vertices.
pub fn move_pebble(
    tree: &Tree,
    config: &Configuration,
    v: Vertex,
    w: Vertex,
    variant: Variant,
) -> Result<Plan, PlanError> {
    let mut builder = PlanBuilder::new(tree, config.clone(), variant);
    builder.move_pebble_along(&tree.path_between(v, w))?;
    Ok(builder.finish().0)
}

/// Accumulates a plan while keeping the configuration it leads to.
#[derive(Debug, Clone)]
pub(crate) struct PlanBuilder<'t> {
    tree: &'t Tree,
    variant: Variant,
    config: Configuration,
    plan: Plan,
}

impl<'t> PlanBuilder<'t> {
    pub(crate) fn new(tree: &'t Tree, config: Configuration, variant: Variant) -> Self {
        Self {
            tree,
            variant,
            config,
            plan: Plan::new(),
        }
    }

    pub(crate) fn config(&self) -> &Configuration {
        &self.config
    }

    pub(crate) fn variant(&self) -> Variant {
        self.variant
    }

    pub(crate) fn finish(self) -> (Plan, Configuration) {
        (self.plan, self.config)
    }

    fn step(&mut self, from: Vertex, to: Vertex) {
        debug_assert!(
            self.tree.is_adjacent(from, to),
            "{from} -> {to} is not an edge"
        );
        debug_assert!(self.config.is_hole(to), "{from} -> {to} lands on a pebble");
        self.config.swap(from, to);
        self.plan.push(Move::new(from, to));
    }

    /// Appends already-legal moves, e.g. a reversed sub-plan.
    pub(crate) fn extend(&mut self, plan: &Plan) {
        for mv in plan {
            self.step(mv.from, mv.to);
        }
    }

    fn is_transit(&self, v: Vertex) -> bool {
        self.variant == Variant::TransShipment && !self.tree.is_regular(v)
    }

    /// `path[0]` receives a hole from the hole at the last vertex.
    pub(crate) fn bring_hole_along(&mut self, path: &[Vertex]) -> Result<(), PlanError> {
        let w = *path.last().expect("non-empty path");
        if !self.config.is_hole(w) {
            return Err(PlanError::SourceNotHole(w));
        }
        if self.is_transit(w) {
            return Err(PlanError::TransShipmentSource(w));
        }
        // Walk from the hole end backwards; every destination has already
        // been vacated by the time a pebble steps onto it.
        for j in (0..path.len() - 1).rev() {
            let u = path[j];
            if self.config.is_hole(u) {
                continue;
            }
            let next = path[j + 1];
            self.step(u, next);
            if self.is_transit(next) {
                self.step(next, path[j + 2]);
            }
        }
        Ok(())
    }

    /// Walks the pebble on `path[0]` to the last vertex.
    pub(crate) fn move_pebble_along(&mut self, path: &[Vertex]) -> Result<(), PlanError> {
        let v = path[0];
        let w = *path.last().expect("non-empty path");
        if self.config.is_hole(v) {
            return Err(PlanError::NotAPebble(v));
        }
        if self.variant == Variant::TransShipment && !self.tree.is_regular(w) {
            return Err(PlanError::TransShipmentTarget(w));
        }
        if let Some(&blocked) = path[1..].iter().find(|&&u| !self.config.is_hole(u)) {
            return Err(PlanError::PathBlocked(blocked));
        }
        for pair in path.windows(2) {
            self.step(pair[0], pair[1]);
        }
        Ok(())
    }
}
