//! Wall-clock deadlines and environment-configured limits.

use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use twhom_core::{Interrupt, Limits};

/// Interrupts searches once the deadline has passed.
#[derive(Debug)]
pub struct Deadline {
    end: Instant,
}

impl Deadline {
    pub fn after(d: Duration) -> Self {
        Deadline { end: Instant::now() + d }
    }
}

impl Interrupt for Deadline {
    fn should_stop(&self) -> bool {
        Instant::now() >= self.end
    }
}

/// Overrides the table and vertex limits from `TWHOM_TABLE_LIMIT` and `TWHOM_VERTEX_LIMIT`.
pub fn limits_from_env(mut limits: Limits) -> Result<Limits> {
    if let Ok(v) = std::env::var("TWHOM_TABLE_LIMIT") {
        limits.table_limit = v.parse().context("TWHOM_TABLE_LIMIT")?;
    }
    if let Ok(v) = std::env::var("TWHOM_VERTEX_LIMIT") {
        limits.vertex_limit = v.parse().context("TWHOM_VERTEX_LIMIT")?;
    }
    Ok(limits)
}

pub fn build_limits(node_budget: Option<u64>, time_limit_s: Option<u64>) -> Result<Limits> {
    let mut limits = limits_from_env(Limits::default())?;
    limits.node_budget = node_budget;
    if let Some(s) = time_limit_s {
        limits = limits.with_interrupt(Arc::new(Deadline::after(Duration::from_secs(s))));
    }
    Ok(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expired_deadline_stops() {
        assert!(Deadline::after(Duration::ZERO).should_stop());
        assert!(!Deadline::after(Duration::from_secs(3600)).should_stop());
    }
}
