#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use pmt_core::{Configuration, Instance, Move, Plan, Problem, Tree, Variant, Vertex};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Prüfer decoding written independently of the library generator.
fn decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut edges = Vec::new();
    for &v in code {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(adj, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical string of an unlabeled tree, rooted at its center(s).
fn canonical(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| encode(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

/// One representative of every unlabeled tree on `n` vertices.
pub fn nonisomorphic_trees(n: usize) -> Vec<Tree> {
    if n <= 2 {
        return vec![Tree::path_graph(n)];
    }
    let mut seen = BTreeMap::new();
    let mut code = vec![0; n - 2];
    loop {
        let edges = decode(n, &code);
        seen.entry(canonical(n, &edges)).or_insert(edges);
        let mut i = 0;
        while i < code.len() && code[i] == n - 1 {
            code[i] = 0;
            i += 1;
        }
        if i == code.len() {
            break;
        }
        code[i] += 1;
    }
    seen.values().map(|e| Tree::new(n, e).unwrap()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All orderings of `items`.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Replays `plan` with a plain occupancy array and reports the first
/// illegal move or trans-shipment rest.
pub fn independent_replay(
    tree: &Tree,
    start: &Configuration,
    plan: &Plan,
    variant: Variant,
) -> Result<Vec<Vertex>, String> {
    let n = tree.vertex_count();
    let edges: HashSet<(usize, usize)> = tree
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    let mut at: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in start.positions().iter().enumerate() {
        at[v] = Some(i);
    }
    let moves = plan.moves();
    for (index, mv) in moves.iter().enumerate() {
        if !edges.contains(&(mv.from, mv.to)) {
            return Err(format!("move {index} is not an edge"));
        }
        if at[mv.to].is_some() {
            return Err(format!("move {index} lands on a pebble"));
        }
        let pebble = at[mv.from]
            .take()
            .ok_or(format!("move {index} starts at a hole"))?;
        at[mv.to] = Some(pebble);
        if variant == Variant::TransShipment && !tree.is_regular(mv.to) {
            let leaves = moves.get(index + 1).is_some_and(|next| next.from == mv.to);
            if !leaves {
                return Err(format!("pebble rests on trans-shipment vertex {}", mv.to));
            }
        }
    }
    let mut positions = vec![0; start.pebble_count()];
    for (v, slot) in at.iter().enumerate() {
        if let Some(p) = slot {
            positions[*p] = v;
        }
    }
    Ok(positions)
}

/// Goal check written against raw positions.
pub fn reaches_goal(instance: &Instance, positions: &[Vertex]) -> bool {
    let occupied: HashSet<Vertex> = positions.iter().copied().collect();
    match &instance.problem {
        Problem::Pmt { target } => positions == target.positions(),
        Problem::Unlabeled { destinations } => destinations.iter().all(|d| occupied.contains(d)),
        Problem::MotionPlanning { pebble, target } => positions[pebble.0] == *target,
        Problem::GatherHoles { subtree } => subtree.iter().all(|v| !occupied.contains(v)),
    }
}

/// A legal random walk of up to `steps` moves; in the trans-shipment
/// variant a crossing is emitted as two consecutive moves.
pub fn random_walk<R: Rng>(
    rng: &mut R,
    tree: &Tree,
    start: &Configuration,
    variant: Variant,
    steps: usize,
) -> Plan {
    let n = tree.vertex_count();
    let mut occupied = vec![false; n];
    for &v in start.positions() {
        occupied[v] = true;
    }
    let ts = variant == Variant::TransShipment;
    let mut moves = Vec::new();
    for _ in 0..steps {
        let mut options: Vec<Vec<Move>> = Vec::new();
        for u in (0..n).filter(|&u| occupied[u]) {
            for &s in tree.neighbors(u) {
                if occupied[s] {
                    continue;
                }
                if ts && !tree.is_regular(s) {
                    for &v in tree.neighbors(s) {
                        if v != u && !occupied[v] {
                            options.push(vec![Move::new(u, s), Move::new(s, v)]);
                        }
                    }
                } else {
                    options.push(vec![Move::new(u, s)]);
                }
            }
        }
        let Some(step) = options.choose(rng) else {
            break;
        };
        for mv in step {
            occupied[mv.from] = false;
            occupied[mv.to] = true;
            moves.push(*mv);
        }
    }
    Plan::from(moves)
}

/// Random tree with trans-shipment marks that respect the constraints.
pub fn random_ts_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    let base = pmt_core::random_tree(rng, n);
    let mut marked = vec![false; n];
    for v in 0..n {
        let free = base.degree(v) >= 2 && base.neighbors(v).iter().all(|&w| !marked[w]);
        if free && rng.random_bool(0.3) {
            marked[v] = true;
        }
    }
    let ts: Vec<usize> = (0..n).filter(|&v| marked[v]).collect();
    Tree::with_trans_shipment(n, base.edges(), &ts).unwrap()
}

/// Random placement of `p` pebbles on regular vertices.
pub fn random_config<R: Rng>(rng: &mut R, tree: &Tree, p: usize) -> Configuration {
    use rand::seq::SliceRandom;
    let mut regular: Vec<usize> = (0..tree.vertex_count())
        .filter(|&v| tree.is_regular(v))
        .collect();
    regular.shuffle(rng);
    regular.truncate(p);
    Configuration::new(tree.vertex_count(), regular).unwrap()
}
