//! Problem instances and the hole-count feasibility assumption.

use crate::error::SolveError;
use crate::plan::{Configuration, PebbleId, Variant};
use crate::tree::{analyze, Tree, TreeView, Vertex};

/// Goal of an instance; the start configuration lives on [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    /// Every pebble must reach its labeled target.
    Pmt { target: Configuration },
    /// The pebbles must cover exactly these vertices, in any order.
    Unlabeled { destinations: Vec<Vertex> },
    /// One marked pebble must reach `target`.
    MotionPlanning { pebble: PebbleId, target: Vertex },
    /// No pebble may remain on `subtree`.
    GatherHoles { subtree: Vec<Vertex> },
}

/// Tag used by the file formats and the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Pmt,
    Unlabeled,
    MotionPlanning,
    GatherHoles,
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Pmt { .. } => ProblemKind::Pmt,
            Problem::Unlabeled { .. } => ProblemKind::Unlabeled,
            Problem::MotionPlanning { .. } => ProblemKind::MotionPlanning,
            Problem::GatherHoles { .. } => ProblemKind::GatherHoles,
        }
    }

    /// Whether `config` reaches this goal.
    pub fn is_satisfied(&self, config: &Configuration) -> bool {
        match self {
            Problem::Pmt { target } => config.positions() == target.positions(),
            Problem::Unlabeled { destinations } => {
                destinations.len() == config.pebble_count()
                    && destinations.iter().all(|&d| !config.is_hole(d))
            }
            Problem::MotionPlanning { pebble, target } => config.position(*pebble) == *target,
            Problem::GatherHoles { subtree } => subtree.iter().all(|&v| config.is_hole(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub tree: Tree,
    pub variant: Variant,
    pub start: Configuration,
    pub problem: Problem,
}

impl Instance {
    pub fn new(tree: Tree, variant: Variant, start: Configuration, problem: Problem) -> Self {
        Self {
            tree,
            variant,
            start,
            problem,
        }
    }

    /// Structural checks: sizes agree, vertices exist, and in the
    /// trans-shipment variant pebbles rest on regular vertices only.
    pub fn validate(&self) -> Result<(), SolveError> {
        let n = self.tree.vertex_count();
        let invalid = |msg: String| Err(SolveError::InvalidInstance(msg));
        if self.start.vertex_count() != n {
            return invalid(format!(
                "start configuration has {} vertices, tree has {n}",
                self.start.vertex_count()
            ));
        }
        let ts = self.variant == Variant::TransShipment;
        let check_regular = |v: Vertex| -> Result<(), SolveError> {
            if v >= n {
                return Err(SolveError::VertexOutsideTree(v));
            }
            if ts && !self.tree.is_regular(v) {
                return Err(SolveError::InvalidInstance(format!(
                    "pebble placed on trans-shipment vertex {v}"
                )));
            }
            Ok(())
        };
        for &v in self.start.positions() {
            check_regular(v)?;
        }
        match &self.problem {
            Problem::Pmt { target } => {
                if target.vertex_count() != n || target.pebble_count() != self.start.pebble_count()
                {
                    return invalid("target configuration does not match the start".into());
                }
                for &v in target.positions() {
                    check_regular(v)?;
                }
            }
            Problem::Unlabeled { destinations } => {
                if destinations.len() != self.start.pebble_count() {
                    return invalid(format!(
                        "{} destinations for {} pebbles",
                        destinations.len(),
                        self.start.pebble_count()
                    ));
                }
                let mut seen = vec![false; n];
                for &d in destinations {
                    check_regular(d)?;
                    if std::mem::replace(&mut seen[d], true) {
                        return invalid(format!("destination {d} listed twice"));
                    }
                }
            }
            Problem::MotionPlanning { pebble, target } => {
                if pebble.0 >= self.start.pebble_count() {
                    return Err(SolveError::UnknownPebble(*pebble));
                }
                if *target >= n {
                    return Err(SolveError::VertexOutsideTree(*target));
                }
                if ts && !self.tree.is_regular(*target) {
                    return Err(SolveError::TargetIsTransShipment(*target));
                }
            }
            Problem::GatherHoles { subtree } => {
                if let Some(&v) = subtree.iter().find(|&&v| v >= n) {
                    return Err(SolveError::VertexOutsideTree(v));
                }
            }
        }
        Ok(())
    }
}

/// Holes available against holes required by the feasibility assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub holes: usize,
    pub required: usize,
}

impl Threshold {
    pub fn holds(&self) -> bool {
        self.holes >= self.required
    }
}

/// `|H| >= c` on plain trees, `|H| >= |V_T| + c~ - 1` with trans-shipment
/// vertices, both measured inside `view`.
pub fn assumption_threshold(
    view: &TreeView<'_>,
    config: &Configuration,
    variant: Variant,
) -> Threshold {
    let profile = analyze(view);
    let holes = config.holes_in(view);
    let required = match variant {
        Variant::Plain => profile.c,
        Variant::TransShipment => (view.trans_shipment_count() + profile.c_tilde).saturating_sub(1),
    };
    Threshold { holes, required }
}

/// Whether the instance satisfies the variant's hole-count assumption.
pub fn check_assumption(instance: &Instance) -> bool {
    assumption_threshold(&instance.tree.view(), &instance.start, instance.variant).holds()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motion(tree: Tree, positions: Vec<Vertex>) -> Instance {
        let n = tree.vertex_count();
        Instance::new(
            tree,
            Variant::Plain,
            Configuration::new(n, positions).unwrap(),
            Problem::MotionPlanning {
                pebble: PebbleId(0),
                target: 0,
            },
        )
    }

    #[test]
    fn path_assumption() {
        assert!(check_assumption(&motion(Tree::path_graph(4), vec![0])));
        assert!(!check_assumption(&motion(Tree::path_graph(4), vec![0, 1])));
    }

    #[test]
    fn trans_shipment_threshold_counts_transit_vertices() {
        // 0 - 1(ts) - 2 with a leaf 3 on 1: c~ = max(1 + 1, 0 + 2) = 2.
        let t = Tree::with_trans_shipment(4, &[(0, 1), (1, 2), (1, 3)], &[1]).unwrap();
        let c = Configuration::new(4, vec![0, 2]).unwrap();
        let th = assumption_threshold(&t.view(), &c, Variant::TransShipment);
        assert_eq!(
            th,
            Threshold {
                holes: 2,
                required: 2
            }
        );
        let crowded = Configuration::new(4, vec![0, 2, 3]).unwrap();
        assert!(!assumption_threshold(&t.view(), &crowded, Variant::TransShipment).holds());
    }

    #[test]
    fn goals() {
        let start = Configuration::new(3, vec![0]).unwrap();
        let moved = Configuration::new(3, vec![2]).unwrap();
        let g = Problem::GatherHoles {
            subtree: vec![1, 2],
        };
        assert!(g.is_satisfied(&start) && !g.is_satisfied(&moved));
        let u = Problem::Unlabeled {
            destinations: vec![2],
        };
        assert!(u.is_satisfied(&moved));
        assert_eq!(u.kind(), ProblemKind::Unlabeled);
    }

    #[test]
    fn validation_rejects_trans_shipment_placements() {
        let t = Tree::with_trans_shipment(3, &[(0, 1), (1, 2)], &[1]).unwrap();
        let inst = Instance::new(
            t,
            Variant::TransShipment,
            Configuration::new(3, vec![0]).unwrap(),
            Problem::MotionPlanning {
                pebble: PebbleId(0),
                target: 1,
            },
        );
        assert_eq!(inst.validate(), Err(SolveError::TargetIsTransShipment(1)));
    }
}
