use serde::Serialize;

/// Search limits. Every exhaustive enumeration in the crate is bounded by
/// one of these; exceeding a bound is a clean `Error::SizeLimit`, never a
/// hang. All limits are configuration, not constants.
#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    /// Largest group order a closure is allowed to reach.
    pub max_group_order: u32,
    /// Largest group order for exhaustive automorphism search.
    pub max_aut_order: u32,
    /// Largest conjugacy-class count for normal-subgroup enumeration.
    pub max_class_count: usize,
    /// Largest per-open product of quotient orders when enumerating sections.
    pub max_section_product: u64,
    /// Largest assignment-space size |G|^n for equation solving.
    pub max_solution_space: u64,
    /// Largest vector count p^dim for Lie subspace-lattice enumeration.
    pub max_lie_vectors: u64,
    /// Seed for randomized spot checks (associativity above the exhaustive cutoff).
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 10_080,
            max_aut_order: 720,
            max_class_count: 64,
            max_section_product: 1_000_000,
            max_solution_space: 10_000_000,
            max_lie_vectors: 15_625,
            seed: 0,
        }
    }
}
