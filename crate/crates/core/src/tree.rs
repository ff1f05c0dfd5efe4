//! Tree representation and structural analysis.
//!
//! A [`Tree`] is immutable once built. Solvers work on [`TreeView`]s, which
//! are vertex masks over a tree: the leaf-removal sequence used by the PMT
//! pipeline and the restricted subtrees used by the gather and caterpillar
//! procedures are all views, never rebuilt trees.

use std::collections::VecDeque;

use thiserror::Error;

/// Dense vertex identifier in `0..n`.
pub type Vertex = usize;

/// Distance value for vertices that are unreachable or outside a view.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VertexKind {
    #[default]
    Regular,
    /// May be crossed by a pebble but never hosts one at rest.
    TransShipment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is out of range for a tree with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(Vertex, Vertex),
    #[error("a tree on {n} vertices has {expected} edges, got {found}")]
    EdgeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {0} is not reachable from vertex 0")]
    Disconnected(Vertex),
    #[error("trans-shipment vertex {vertex} has degree {degree}, at least 2 is required")]
    TransShipmentDegree { vertex: Vertex, degree: usize },
    #[error("trans-shipment vertices {0} and {1} are adjacent")]
    AdjacentTransShipment(Vertex, Vertex),
    #[error("asked for {requested} vertices but only {available} candidates are available")]
    InsufficientCandidates { requested: usize, available: usize },
}

/// Undirected tree on vertices `0..n` with per-vertex kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adjacency: Vec<Vec<Vertex>>,
    kinds: Vec<VertexKind>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Tree {
    /// Builds a tree with only regular vertices.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        Self::with_trans_shipment(n, edges, &[])
    }

    /// Builds a tree where the listed vertices are trans-shipment vertices.
    pub fn with_trans_shipment(
        n: usize,
        edges: &[(Vertex, Vertex)],
        trans_shipment: &[Vertex],
    ) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                n,
                expected: n - 1,
                found: edges.len(),
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        // n - 1 distinct edges plus connectivity implies acyclic.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(TreeError::Disconnected(v));
        }

        let mut kinds = vec![VertexKind::Regular; n];
        for &s in trans_shipment {
            if s >= n {
                return Err(TreeError::VertexOutOfRange { vertex: s, n });
            }
            kinds[s] = VertexKind::TransShipment;
        }
        for &s in trans_shipment {
            let degree = adjacency[s].len();
            if degree < 2 {
                return Err(TreeError::TransShipmentDegree { vertex: s, degree });
            }
            if let Some(&w) = adjacency[s]
                .iter()
                .find(|&&w| kinds[w] == VertexKind::TransShipment)
            {
                return Err(TreeError::AdjacentTransShipment(s.min(w), s.max(w)));
            }
        }

        let mut edges: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Ok(Self {
            adjacency,
            kinds,
            edges,
        })
    }

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn path_graph(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path graph is a tree")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &edges).expect("star is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Canonical edge list, each edge as `(min, max)`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors in increasing order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn kind(&self, v: Vertex) -> VertexKind {
        self.kinds[v]
    }

    pub fn is_regular(&self, v: Vertex) -> bool {
        self.kinds[v] == VertexKind::Regular
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn trans_shipment_vertices(&self) -> Vec<Vertex> {
        (0..self.vertex_count())
            .filter(|&v| !self.is_regular(v))
            .collect()
    }

    pub fn has_trans_shipment(&self) -> bool {
        self.kinds.contains(&VertexKind::TransShipment)
    }

    /// View containing every vertex.
    pub fn view(&self) -> TreeView<'_> {
        TreeView::full(self)
    }

    pub fn analyze(&self) -> CorridorProfile {
        analyze(&self.view())
    }

    pub fn path_between(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        self.view().path(a, b)
    }

    pub fn distance(&self, a: Vertex, b: Vertex) -> usize {
        self.path_between(a, b).len() - 1
    }

    /// Vertices of the component of `T - removed` that contains `anchor`.
    pub fn forest_component(&self, removed: Vertex, anchor: Vertex) -> Vec<Vertex> {
        self.view().component(removed, anchor)
    }
}

/// A connected vertex subset of a [`Tree`], seen as a tree of its own.
///
/// Neighborhoods, degrees and distances are taken inside the view.
#[derive(Debug, Clone)]
pub struct TreeView<'a> {
    tree: &'a Tree,
    alive: Vec<bool>,
    len: usize,
}

impl PartialEq for TreeView<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.tree, other.tree) && self.alive == other.alive
    }
}

impl<'a> TreeView<'a> {
    pub fn full(tree: &'a Tree) -> Self {
        let n = tree.vertex_count();
        Self {
            tree,
            alive: vec![true; n],
            len: n,
        }
    }

    /// View over the given vertices; the caller is responsible for
    /// connectivity.
    pub fn restricted(tree: &'a Tree, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut alive = vec![false; tree.vertex_count()];
        let mut len = 0;
        for v in vertices {
            if !alive[v] {
                alive[v] = true;
                len += 1;
            }
        }
        Self { tree, alive, len }
    }

    /// Intersection of this view with `vertices`.
    pub fn restrict(&self, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Self::restricted(self.tree, vertices.into_iter().filter(|&v| self.alive[v]))
    }

    pub fn tree(&self) -> &'a Tree {
        self.tree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.tree.adjacency[v]
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_regular(&self, v: Vertex) -> bool {
        self.tree.is_regular(v)
    }

    pub fn regular_count(&self) -> usize {
        self.vertices().filter(|&v| self.is_regular(v)).count()
    }

    pub fn trans_shipment_count(&self) -> usize {
        self.len - self.regular_count()
    }

    /// Drops a vertex from the view.
    pub fn remove(&mut self, v: Vertex) {
        if self.alive[v] {
            self.alive[v] = false;
            self.len -= 1;
        }
    }

    pub fn without(&self, v: Vertex) -> Self {
        let mut view = self.clone();
        view.remove(v);
        view
    }

    /// Vertices of degree at most one inside the view, increasing.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) <= 1).collect()
    }

    /// At least two vertices and no vertex of degree above two. A single
    /// vertex counts as a (trivial) path graph as well.
    pub fn is_path_graph(&self) -> bool {
        self.vertices().all(|v| self.degree(v) <= 2)
    }

    /// Breadth-first distances from `source`; [`UNREACHABLE`] outside the view.
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        self.bfs(&[source]).0
    }

    /// Multi-source BFS. Returns distances and BFS parents (the parent of a
    /// source is itself).
    pub fn bfs(&self, sources: &[Vertex]) -> (Vec<usize>, Vec<Vertex>) {
        let n = self.tree.vertex_count();
        let mut dist = vec![UNREACHABLE; n];
        let mut parent = vec![UNREACHABLE; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.contains(s) && dist[s] == UNREACHABLE {
                dist[s] = 0;
                parent[s] = s;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// The unique path from `a` to `b`, both endpoints included.
    ///
    /// Panics if either endpoint is outside the view or they are not
    /// connected inside it.
    pub fn path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let (_, parent) = self.bfs(&[b]);
        assert!(
            self.contains(a) && parent[a] != UNREACHABLE,
            "no path from {a} to {b} inside the view"
        );
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Component of `view - removed` containing `anchor`, increasing.
    pub fn component(&self, removed: Vertex, anchor: Vertex) -> Vec<Vertex> {
        assert_ne!(
            removed, anchor,
            "anchor must differ from the removed vertex"
        );
        let mut seen = vec![false; self.tree.vertex_count()];
        seen[removed] = true;
        seen[anchor] = true;
        let mut stack = vec![anchor];
        let mut out = vec![anchor];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether `vertices` is non-empty, inside the view and connected.
    pub fn is_connected_subset(&self, vertices: &[Vertex]) -> bool {
        let Some(&first) = vertices.first() else {
            return false;
        };
        if !vertices.iter().all(|&v| self.contains(v)) {
            return false;
        }
        let sub = self.restrict(vertices.iter().copied());
        let (dist, _) = sub.bfs(&[first]);
        vertices.iter().all(|&v| dist[v] != UNREACHABLE)
    }
}

/// A maximal path whose interior vertices have degree two and whose
/// endpoints do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corridor {
    pub vertices: Vec<Vertex>,
}

impl Corridor {
    /// Length in edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// Corridor decomposition and the feasibility constants derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorridorProfile {
    pub corridors: Vec<Corridor>,
    /// Indices into `corridors` of the corridors whose endpoints are both
    /// junctions.
    pub junction_corridors: Vec<usize>,
    pub is_path_graph: bool,
    pub c1: usize,
    pub c2: usize,
    pub c: usize,
    /// Same constants measured in regular vertices along the corridor.
    pub c1_tilde: usize,
    pub c2_tilde: usize,
    pub c_tilde: usize,
    pub diameter: usize,
}

impl CorridorProfile {
    pub fn junction_corridors(&self) -> impl Iterator<Item = &Corridor> {
        self.junction_corridors.iter().map(|&i| &self.corridors[i])
    }
}

/// Corridors, `c1`, `c2`, `c`, their regular-vertex counterparts, and the
/// diameter of a view.
///
/// An empty set of junction corridors contributes `c2 = 0`.
pub fn analyze(view: &TreeView<'_>) -> CorridorProfile {
    let tree = view.tree();
    let mut corridors = Vec::new();
    for start in view.vertices() {
        if view.degree(start) == 2 {
            continue;
        }
        for first in view.neighbors(start) {
            let mut walk = vec![start, first];
            let mut prev = start;
            let mut cur = first;
            while view.degree(cur) == 2 {
                let next = view.neighbors(cur).find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
                walk.push(cur);
            }
            // Each corridor is discovered from both ends; keep one.
            if start < cur {
                corridors.push(Corridor { vertices: walk });
            }
        }
    }

    let mut junction_corridors = Vec::new();
    let (mut c1, mut c2, mut c1_tilde, mut c2_tilde) = (0, 0, 0, 0);
    for (i, corridor) in corridors.iter().enumerate() {
        let len = corridor.length();
        let regular = corridor
            .vertices
            .iter()
            .filter(|&&v| tree.is_regular(v))
            .count();
        c1 = c1.max(len);
        c1_tilde = c1_tilde.max(regular);
        let (a, b) = corridor.endpoints();
        if view.degree(a) > 2 && view.degree(b) > 2 {
            junction_corridors.push(i);
            c2 = c2.max(len);
            c2_tilde = c2_tilde.max(regular);
        }
    }

    let is_path_graph = view.is_path_graph();
    let (c, c_tilde) = if is_path_graph {
        (c1, c1_tilde)
    } else {
        ((c1 + 1).max(c2 + 2), (c1_tilde + 1).max(c2_tilde + 2))
    };

    let diameter = match view.vertices().next() {
        None => 0,
        Some(any) => {
            let d0 = view.distances_from(any);
            let far = view.vertices().max_by_key(|&v| (d0[v], v)).unwrap();
            let d1 = view.distances_from(far);
            view.vertices().map(|v| d1[v]).max().unwrap()
        }
    };

    CorridorProfile {
        corridors,
        junction_corridors,
        is_path_graph,
        c1,
        c2,
        c,
        c1_tilde,
        c2_tilde,
        c_tilde,
        diameter,
    }
}

/// Picks `q` candidates minimizing the summed distance to `anchors`.
///
/// The objective separates per vertex, so taking the `q` candidates with the
/// smallest individual distance is exact. Ties go to the lower vertex id.
/// The result is ordered by increasing `(distance, id)`.
pub fn closest_subset(
    view: &TreeView<'_>,
    candidates: &[Vertex],
    anchors: &[Vertex],
    q: usize,
) -> Result<Vec<Vertex>, TreeError> {
    if q > candidates.len() {
        return Err(TreeError::InsufficientCandidates {
            requested: q,
            available: candidates.len(),
        });
    }
    let (dist, _) = view.bfs(anchors);
    let mut ranked: Vec<Vertex> = candidates.to_vec();
    ranked.sort_unstable_by_key(|&v| (dist[v], v));
    ranked.dedup();
    if q > ranked.len() {
        return Err(TreeError::InsufficientCandidates {
            requested: q,
            available: ranked.len(),
        });
    }
    ranked.truncate(q);
    Ok(ranked)
}
