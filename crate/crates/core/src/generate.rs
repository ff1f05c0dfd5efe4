//! Seeded random instances: uniform trees from Prüfer sequences and uniform
//! pebble placements, resampled until the feasibility assumption holds.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{assumption_threshold, Instance, Problem, ProblemKind};
use crate::plan::{Configuration, PebbleId, Variant};
use crate::tree::{Tree, Vertex};

/// Resampling budget of [`generate_random_instance`].
pub const DEFAULT_ATTEMPTS: usize = 10_000;

/// Chance that an eligible vertex becomes trans-shipment.
pub const TRANS_SHIPMENT_PROBABILITY: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "no instance with {p} pebbles on {n} vertices met the assumption in {attempts} attempts"
    )]
    AssumptionUnsatisfiable { n: usize, p: usize, attempts: usize },
}

/// Uniformly random labeled tree on `n` vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    if n <= 2 {
        return Tree::path_graph(n.max(1));
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_decode(n, &code, &[])
}

/// Tree encoded by a Prüfer sequence of length `n - 2`.
pub fn prufer_decode(n: usize, code: &[Vertex], trans_shipment: &[Vertex]) -> Tree {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut degree = vec![1; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves
            .pop()
            .expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Tree::with_trans_shipment(n, &edges, trans_shipment).expect("decoded sequence is a tree")
}

/// Marks vertices as trans-shipment in random order, each eligible one
/// (degree at least two, no trans-shipment neighbor) with `probability`.
pub fn random_trans_shipment<R: Rng + ?Sized>(rng: &mut R, tree: &Tree, probability: f64) -> Tree {
    let n = tree.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut marked = vec![false; n];
    for v in order {
        let eligible = tree.degree(v) >= 2 && tree.neighbors(v).iter().all(|&w| !marked[w]);
        if eligible && rng.random_bool(probability) {
            marked[v] = true;
        }
    }
    let ts: Vec<Vertex> = (0..n).filter(|&v| marked[v]).collect();
    Tree::with_trans_shipment(n, tree.edges(), &ts).expect("marks respect the constraints")
}

/// Deterministic random instance for `seed`.
pub fn generate_random_instance(
    seed: u64,
    n: usize,
    p: usize,
    variant: Variant,
    kind: ProblemKind,
) -> Result<Instance, GenerateError> {
    generate_with_attempts(seed, n, p, variant, kind, DEFAULT_ATTEMPTS)
}

/// As [`generate_random_instance`] with an explicit resampling budget.
pub fn generate_with_attempts(
    seed: u64,
    n: usize,
    p: usize,
    variant: Variant,
    kind: ProblemKind,
    attempts: usize,
) -> Result<Instance, GenerateError> {
    if n < 2 || p >= n {
        return Err(GenerateError::InvalidParameters(format!(
            "need n >= 2 and p < n, got n = {n}, p = {p}"
        )));
    }
    if kind == ProblemKind::MotionPlanning && p == 0 {
        return Err(GenerateError::InvalidParameters(
            "motion planning needs a pebble".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut tree = random_tree(&mut rng, n);
        if variant == Variant::TransShipment {
            tree = random_trans_shipment(&mut rng, &tree, TRANS_SHIPMENT_PROBABILITY);
        }
        let regular: Vec<Vertex> = (0..n).filter(|&v| tree.is_regular(v)).collect();
        if regular.len() < p {
            continue;
        }
        let start = placement(&mut rng, &regular, n, p);
        if !assumption_threshold(&tree.view(), &start, variant).holds() {
            continue;
        }
        let problem = match kind {
            ProblemKind::Pmt => Problem::Pmt {
                target: placement(&mut rng, &regular, n, p),
            },
            ProblemKind::Unlabeled => {
                let mut destinations: Vec<Vertex> =
                    regular.choose_multiple(&mut rng, p).copied().collect();
                destinations.sort_unstable();
                Problem::Unlabeled { destinations }
            }
            ProblemKind::MotionPlanning => Problem::MotionPlanning {
                pebble: PebbleId(rng.random_range(0..p)),
                target: *regular.choose(&mut rng).unwrap(),
            },
            ProblemKind::GatherHoles => Problem::GatherHoles {
                subtree: random_subtree(&mut rng, &tree, &start, variant),
            },
        };
        return Ok(Instance::new(tree, variant, start, problem));
    }
    Err(GenerateError::AssumptionUnsatisfiable { n, p, attempts })
}

fn placement<R: Rng + ?Sized>(
    rng: &mut R,
    regular: &[Vertex],
    n: usize,
    p: usize,
) -> Configuration {
    let mut positions: Vec<Vertex> = regular.choose_multiple(rng, p).copied().collect();
    positions.shuffle(rng);
    Configuration::new(n, positions).expect("distinct vertices")
}

/// Connected subtree that can be cleared with the available holes.
fn random_subtree<R: Rng + ?Sized>(
    rng: &mut R,
    tree: &Tree,
    start: &Configuration,
    variant: Variant,
) -> Vec<Vertex> {
    let counts = |v: Vertex| variant == Variant::Plain || tree.is_regular(v);
    let n = tree.vertex_count();
    let capacity = (0..n).filter(|&v| start.is_hole(v) && counts(v)).count();
    let wanted = rng.random_range(1..=capacity.max(1));
    let seed_candidates: Vec<Vertex> = (0..n).filter(|&v| counts(v)).collect();
    let root = *seed_candidates.choose(rng).unwrap();

    let mut inside = vec![false; n];
    inside[root] = true;
    let mut chosen = vec![root];
    let mut weight = 1;
    while weight < wanted {
        let frontier: Vec<Vertex> = chosen
            .iter()
            .flat_map(|&v| tree.neighbors(v).iter().copied())
            .filter(|&w| !inside[w])
            .collect();
        let Some(&w) = frontier.choose(rng) else {
            break;
        };
        inside[w] = true;
        chosen.push(w);
        weight += usize::from(counts(w));
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_known_sequence() {
        // Sequence (3, 3, 3) on 5 vertices is the star around 3 plus 4.
        let t = prufer_decode(5, &[3, 3, 3], &[]);
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn deterministic_per_seed() {
        for kind in [
            ProblemKind::Pmt,
            ProblemKind::Unlabeled,
            ProblemKind::MotionPlanning,
            ProblemKind::GatherHoles,
        ] {
            let a = generate_random_instance(7, 30, 5, Variant::TransShipment, kind).unwrap();
            let b = generate_random_instance(7, 30, 5, Variant::TransShipment, kind).unwrap();
            assert_eq!(a, b);
            assert!(a.validate().is_ok());
        }
    }

    #[test]
    fn generated_instances_meet_assumption() {
        for seed in 0..100 {
            let inst =
                generate_random_instance(seed, 20, 2, Variant::Plain, ProblemKind::Pmt).unwrap();
            assert!(crate::instance::check_assumption(&inst));
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            generate_random_instance(0, 5, 5, Variant::Plain, ProblemKind::Pmt),
            Err(GenerateError::InvalidParameters(_))
        ));
        assert_eq!(
            generate_with_attempts(0, 10, 9, Variant::Plain, ProblemKind::Pmt, 5),
            Err(GenerateError::AssumptionUnsatisfiable {
                n: 10,
                p: 9,
                attempts: 5
            })
        );
    }
}
