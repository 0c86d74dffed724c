/// Size caps for table-backed structures and exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier accepted when a heap is built from user-supplied data.
    pub max_carrier: usize,
    /// Largest carrier on which sub-heaps, isomorphisms and hom-sets are enumerated.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: 64,
            enumeration_cap: 12,
        }
    }
}

impl Limits {
    pub fn with_max_carrier(mut self, max_carrier: usize) -> Self {
        self.max_carrier = max_carrier;
        self
    }

    pub fn with_enumeration_cap(mut self, cap: usize) -> Self {
        self.enumeration_cap = cap;
        self
    }

    /// Bound on the carrier of derived constructions (endomorphism and mapping trusses).
    pub fn construction_cap(&self) -> usize {
        self.enumeration_cap.saturating_mul(self.enumeration_cap)
    }
}
