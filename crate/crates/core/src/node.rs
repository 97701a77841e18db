//! Resource bookkeeping for one edge node.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{validate_descriptors, ResourceVector, ServerDescriptor, ServerRuntime, Weights};
use crate::priority::compute_sps;

/// The servers hosted on a node and the free pool `FR`.
///
/// Every mutation keeps `Σ active allocations + free == capacity`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeNode {
    capacity: ResourceVector,
    unit: ResourceVector,
    min_allocation: ResourceVector,
    free: ResourceVector,
    servers: Vec<ServerRuntime>,
    index: HashMap<String, usize>,
}

impl EdgeNode {
    /// Deploys `descriptors` with an equal share of `capacity` each. The
    /// share is `floor(capacity / n)` per component, raised to
    /// `min_allocation`.
    pub fn deploy(
        capacity: ResourceVector,
        unit: ResourceVector,
        min_allocation: ResourceVector,
        descriptors: Vec<ServerDescriptor>,
        weights: &Weights,
    ) -> Result<EdgeNode> {
        if descriptors.is_empty() {
            return Err(Error::EmptyInput("no servers to deploy".into()));
        }
        if unit.is_zero() {
            return Err(Error::invalid("unit", "must be non-zero"));
        }
        validate_descriptors(&descriptors)?;
        let n = descriptors.len() as u64;
        let share = capacity.div_floor(n).max(&min_allocation);
        let used = share.times(n);
        let free = capacity.checked_sub(&used).map_err(|_| {
            Error::InsufficientCapacity(format!(
                "{n} servers need at least {} but capacity is {capacity}",
                min_allocation.times(n)
            ))
        })?;
        let servers: Vec<ServerRuntime> = descriptors
            .into_iter()
            .map(|d| {
                let sps = compute_sps(&d, weights);
                ServerRuntime::new(d, share, sps)
            })
            .collect();
        let index = servers.iter().enumerate().map(|(i, s)| (s.id().to_string(), i)).collect();
        Ok(EdgeNode {
            capacity,
            unit,
            min_allocation,
            free,
            servers,
            index,
        })
    }

    pub fn capacity(&self) -> ResourceVector {
        self.capacity
    }

    pub fn unit(&self) -> ResourceVector {
        self.unit
    }

    pub fn min_allocation(&self) -> ResourceVector {
        self.min_allocation
    }

    pub fn free(&self) -> ResourceVector {
        self.free
    }

    pub fn servers(&self) -> &[ServerRuntime] {
        &self.servers
    }

    pub fn server(&self, idx: usize) -> &ServerRuntime {
        &self.servers[idx]
    }

    pub(crate) fn server_mut(&mut self, idx: usize) -> &mut ServerRuntime {
        &mut self.servers[idx]
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownServer(id.to_string()))
    }

    pub fn active_count(&self) -> usize {
        self.servers.iter().filter(|s| s.active).count()
    }

    pub fn allocated(&self) -> ResourceVector {
        self.servers.iter().filter(|s| s.active).map(|s| s.allocation).sum()
    }

    /// True when allocations and the free pool add up to capacity exactly.
    pub fn is_conserved(&self) -> bool {
        self.allocated() + self.free == self.capacity
    }

    /// Moves `amount` from the free pool to server `idx`.
    pub(crate) fn grant(&mut self, idx: usize, amount: ResourceVector) -> Result<()> {
        self.free = self.free.checked_sub(&amount)?;
        self.servers[idx].allocation += amount;
        Ok(())
    }

    /// Moves `amount` from server `idx` back to the free pool.
    pub(crate) fn reclaim(&mut self, idx: usize, amount: ResourceVector) -> Result<()> {
        let s = &mut self.servers[idx];
        s.allocation = s.allocation.checked_sub(&amount)?;
        self.free += amount;
        Ok(())
    }

    /// Marks server `idx` inactive and returns its whole allocation.
    pub(crate) fn release_all(&mut self, idx: usize) -> ResourceVector {
        let s = &mut self.servers[idx];
        let freed = std::mem::take(&mut s.allocation);
        s.active = false;
        self.free += freed;
        freed
    }
}
