/// Desk-scale guards shared by the constructors and the exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Constructors refuse semigroups larger than this.
    pub order_cap: usize,
    /// Lattice enumerations refuse semigroups larger than this.
    pub exhaustive_cap: usize,
    /// Upper bound on the inner iterations of a single scan.
    pub budget: u64,
}

pub const DEFAULT_ORDER_CAP: usize = 512;
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 64;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_budget(self, budget: u64) -> Self {
        Limits { budget, ..self }
    }

    /// Lifts the exhaustive guard up to the constructor cap.
    pub fn forced(self) -> Self {
        Limits {
            exhaustive_cap: self.order_cap,
            ..self
        }
    }

    pub(crate) fn check_exhaustive(&self, order: usize) -> crate::Result<()> {
        if order > self.exhaustive_cap {
            return Err(crate::Error::OrderTooLarge {
                order,
                cap: self.exhaustive_cap,
            });
        }
        Ok(())
    }

    pub(crate) fn check_budget(&self, what: &'static str, needed: u128) -> crate::Result<()> {
        if needed > self.budget as u128 {
            return Err(crate::Error::BudgetExceeded {
                what,
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }
}
