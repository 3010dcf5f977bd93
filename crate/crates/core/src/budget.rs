use std::time::{Duration, Instant};

/// Search budget shared by the exhaustive procedures.
///
/// The node limit is the primary, reproducible bound. The optional deadline
/// only ever makes a result less exact, never wrong.
#[derive(Clone, Debug)]
pub struct Budget {
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    used: u64,
    exhausted: bool,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            node_limit: None,
            deadline: None,
            used: 0,
            exhausted: false,
        }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget {
            node_limit: Some(limit),
            ..Budget::unlimited()
        }
    }

    pub fn with_deadline(mut self, wall: Duration) -> Self {
        self.deadline = Some(Instant::now() + wall);
        self
    }

    /// Consumes one search node. Returns `false` once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.used += 1;
        if let Some(limit) = self.node_limit {
            if self.used > limit {
                self.exhausted = true;
                return false;
            }
        }
        // checking the clock on every node is measurable; every 4096 is plenty
        if self.used & 0xfff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn node_limit(&self) -> Option<u64> {
        self.node_limit
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
