//! Resource limits for the exhaustive searches in this crate.
//!
//! Every search that is exponential in the number of link components or
//! in the number of arcs takes an explicit [`Caps`] value, so callers can
//! tighten or relax the limits without process-global state. The CLI
//! reads overrides from the environment via [`Caps::from_env`].

/// Environment variable overriding the component-count caps.
pub const ENV_MAX_MU: &str = "LQ_MAX_MU";
/// Environment variable overriding the coloring-enumeration cap.
pub const ENV_MAX_COLORINGS: &str = "LQ_MAX_COLORINGS";
/// Environment variable overriding the subset-enumeration cap.
pub const ENV_MAX_SUBSET_MU: &str = "LQ_MAX_SUBSET_MU";

/// Limits applied by the search routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of components for which permutation searches
    /// (isomorphism decisions) are attempted.
    pub max_mu: usize,
    /// Largest number of components for which the canonical form is
    /// computed; the canonical form enumerates all `mu!` permutations.
    pub max_canon_mu: usize,
    /// Largest number of components for which all subsets are
    /// enumerated when listing inseparable sublinks.
    pub max_subset_mu: usize,
    /// Largest number of candidate colorings (`|T|^arcs`) the
    /// brute-force counter will enumerate.
    pub max_colorings: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_mu: 10,
            max_canon_mu: 8,
            max_subset_mu: 12,
            max_colorings: 100_000_000,
        }
    }
}

impl Caps {
    /// Default caps with any environment overrides applied.
    ///
    /// `LQ_MAX_MU` overrides both component-count caps, `LQ_MAX_SUBSET_MU`
    /// the subset cap, and `LQ_MAX_COLORINGS` the enumeration cap.
    /// Unparsable values are ignored.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(n) = read_env(ENV_MAX_MU) {
            caps.max_mu = n as usize;
            caps.max_canon_mu = n as usize;
        }
        if let Some(n) = read_env(ENV_MAX_SUBSET_MU) {
            caps.max_subset_mu = n as usize;
        }
        if let Some(n) = read_env(ENV_MAX_COLORINGS) {
            caps.max_colorings = n;
        }
        caps
    }
}

fn read_env(name: &str) -> Option<u128> {
    std::env::var(name).ok()?.trim().parse().ok()
}
