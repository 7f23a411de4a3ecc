use std::time::Duration;

/// Enumeration and search caps. Every exhaustive routine that can blow up
/// takes one of these and fails with [`Error::CapExceeded`](crate::Error)
/// instead of running unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of subgroups produced by lattice enumeration.
    pub max_subgroups: usize,
    /// Maximum order of a group built from an expression.
    pub max_order: usize,
    /// Order cap for the `gn`/`hn` families.
    pub max_order_gn: usize,
    /// Largest group whose full automorphism group is computed.
    pub max_aut_base: usize,
    /// Maximum number of automorphisms held explicitly.
    pub max_automorphisms: usize,
    /// Maximum number of morphisms materialized by a fusion system.
    pub max_morphisms: usize,
    /// Maximum number of homomorphisms / commuting tuples enumerated for Rep sets.
    pub max_tuples: usize,
    /// Wall-clock budget per sweep instance.
    pub budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subgroups: 20_000,
            max_order: 1_000,
            max_order_gn: 1_200,
            max_aut_base: 128,
            max_automorphisms: 1_000_000,
            max_morphisms: 500_000,
            max_tuples: 4_000_000,
            budget: Duration::from_secs(60),
        }
    }
}
