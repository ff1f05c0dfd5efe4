//! Fixtures shared by the benchmarks.

use pmt_core::{generate_random_instance, Instance, ProblemKind, Variant};

/// Deterministic instances of `kind`, one per seed in `0..count`.
pub fn fixtures(
    kind: ProblemKind,
    variant: Variant,
    n: usize,
    p: usize,
    count: u64,
) -> Vec<Instance> {
    (0..count)
        .map(|seed| {
            generate_random_instance(seed, n, p, variant, kind)
                .unwrap_or_else(|e| panic!("fixture n = {n}, p = {p}, seed {seed}: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_solve() {
        for instance in fixtures(ProblemKind::Pmt, Variant::Plain, 30, 8, 4) {
            assert!(pmt_core::solve(&instance).is_ok());
        }
    }
}
