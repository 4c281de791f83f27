use crate::actions::MAX_AUTOMORPHISM_ORDER;
use crate::isomorph::{MAX_CANONICAL_ORDER, MAX_CENSUS_ORDER};

/// Size caps for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_automorphism_order: usize,
    pub max_canonical_order: usize,
    pub max_census_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_automorphism_order: MAX_AUTOMORPHISM_ORDER,
            max_canonical_order: MAX_CANONICAL_ORDER,
            max_census_order: MAX_CENSUS_ORDER,
        }
    }
}

impl Limits {
    /// The same order cap for every search.
    pub fn with_max_order(order: usize) -> Self {
        Limits { max_automorphism_order: order, max_canonical_order: order, max_census_order: order }
    }
}
