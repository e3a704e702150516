use alloc::format;
use alloc::sync::Arc;
use core::fmt;

use crate::error::{Error, Result};

/// External cancellation hook, polled periodically by long searches.
///
/// The std companion crate implements wall-clock deadlines on top of it.
pub trait Interrupt: Send + Sync {
    fn should_stop(&self) -> bool;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NeverInterrupt;

impl Interrupt for NeverInterrupt {
    fn should_stop(&self) -> bool {
        false
    }
}

/// Resource limits attached to a query.
#[derive(Clone)]
pub struct Limits {
    /// Maximum number of search nodes per backtracking run.
    pub node_budget: Option<u64>,
    /// Maximum number of solutions collected in enumerate mode.
    pub enumeration_cap: Option<usize>,
    /// Maximum number of stored entries in a single DP table.
    pub table_limit: usize,
    /// Hard limit on materialized graphs.
    pub vertex_limit: usize,
    pub interrupt: Option<Arc<dyn Interrupt>>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: None,
            enumeration_cap: None,
            table_limit: 50_000_000,
            vertex_limit: 1_000_000,
            interrupt: None,
        }
    }
}

impl fmt::Debug for Limits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Limits")
            .field("node_budget", &self.node_budget)
            .field("enumeration_cap", &self.enumeration_cap)
            .field("table_limit", &self.table_limit)
            .field("vertex_limit", &self.vertex_limit)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

impl Limits {
    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_vertex_limit(mut self, limit: usize) -> Self {
        self.vertex_limit = limit;
        self
    }

    pub fn with_interrupt(mut self, interrupt: Arc<dyn Interrupt>) -> Self {
        self.interrupt = Some(interrupt);
        self
    }

    pub(crate) fn check_vertices(&self, requested: u128) -> Result<()> {
        if requested > self.vertex_limit as u128 {
            Err(Error::VertexLimit {
                requested,
                limit: self.vertex_limit,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn interrupted(&self) -> bool {
        self.interrupt.as_ref().is_some_and(|i| i.should_stop())
    }
}

/// Search node counter enforcing the node budget and the interrupt hook.
#[derive(Debug, Default)]
pub(crate) struct NodeMeter {
    nodes: u64,
}

impl NodeMeter {
    pub(crate) fn tick(&mut self, limits: &Limits, what: &str) -> Result<()> {
        self.nodes += 1;
        let n = self.nodes;
        if let Some(budget) = limits.node_budget {
            if n > budget {
                return Err(Error::Inconclusive(format!(
                    "{what}: node budget {budget} exhausted"
                )));
            }
        }
        if (n == 1 || n & 0x3ff == 0) && limits.interrupted() {
            return Err(Error::Inconclusive(format!(
                "{what}: interrupted after {n} nodes"
            )));
        }
        Ok(())
    }

    pub(crate) fn get(&self) -> u64 {
        self.nodes
    }
}
