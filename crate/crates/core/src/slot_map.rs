//! Binary search from a main-chain block number to the beacon slot that
//! carries it.
//!
//! Beacon slots may be missed (no block), so the raw slot -> block mapping is
//! partial. [`SlotResolver::resolve_block_number`] fills missed slots with the
//! block number of the nearest earlier proposed slot, which makes the searched
//! function monotone non-decreasing and keeps the binary search sound. An
//! equality hit on a missed slot is then walked back to the proposed slot that
//! actually carries the block.

use crate::chain::SlotRecord;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SlotMapError {
    #[error("slot {slot} beyond resolver head {head}")]
    SlotOutOfRange { slot: u64, head: u64 },
    #[error("slot table violates block-number monotonicity at slot {slot}")]
    NonMonotonicTable { slot: u64 },
}

/// Monotone slot -> block-number lookup over `[0, head]`.
pub trait SlotResolver {
    /// Highest queryable slot.
    fn head(&self) -> u64;

    /// Block number for `slot`: its own block if proposed, otherwise the block
    /// of the nearest earlier proposed slot, or `None` when no proposed slot
    /// exists at or before `slot`.
    fn resolve_block_number(&self, slot: u64) -> Result<Option<u64>, SlotMapError>;
}

/// Resolver backed by an in-memory slot table.
#[derive(Clone, Debug)]
pub struct TableResolver {
    /// Proposed slots only, ascending by slot.
    proposed: Vec<(u64, u64)>,
    head: u64,
}

impl TableResolver {
    /// Builds a resolver from slot records. The head is the highest slot in
    /// the table. Fails if proposed block numbers are not strictly increasing
    /// in slot order.
    pub fn from_records(records: &[SlotRecord]) -> Result<Self, SlotMapError> {
        let mut rows: Vec<&SlotRecord> = records.iter().collect();
        rows.sort_by_key(|r| r.slot);
        let head = rows.last().map(|r| r.slot).unwrap_or(0);
        let mut proposed = Vec::new();
        let mut prev_block: Option<u64> = None;
        for row in rows {
            let Some(block) = row.block_number else { continue };
            if let Some(prev) = prev_block {
                if block <= prev {
                    return Err(SlotMapError::NonMonotonicTable { slot: row.slot });
                }
            }
            proposed.push((row.slot, block));
            prev_block = Some(block);
        }
        Ok(TableResolver { proposed, head })
    }

    /// Whether `slot` itself carries a block.
    pub fn is_proposed(&self, slot: u64) -> bool {
        self.proposed.binary_search_by_key(&slot, |&(s, _)| s).is_ok()
    }
}

impl SlotResolver for TableResolver {
    fn head(&self) -> u64 {
        self.head
    }

    fn resolve_block_number(&self, slot: u64) -> Result<Option<u64>, SlotMapError> {
        if slot > self.head {
            return Err(SlotMapError::SlotOutOfRange { slot, head: self.head });
        }
        // Index of the last proposed slot <= slot.
        let idx = match self.proposed.binary_search_by_key(&slot, |&(s, _)| s) {
            Ok(i) => i,
            Err(0) => return Ok(None),
            Err(i) => i - 1,
        };
        Ok(Some(self.proposed[idx].1))
    }
}

/// Finds the slot whose block number equals `target_block`, searching
/// `[0, beacon_head]`. Returns `Ok(None)` when no proposed slot carries the
/// target (printed as -1 at the CLI).
///
/// Resolver calls stay within ceil(log2(head+1)) + longest-missed-run + 1:
/// the backward walk after an equality hit never probes below the search's
/// current lower bound, which is already known to resolve before the target.
pub fn bsmap<R: SlotResolver>(
    beacon_head: u64,
    target_block: u64,
    resolver: &R,
) -> Result<Option<u64>, SlotMapError> {
    if beacon_head > resolver.head() {
        return Err(SlotMapError::SlotOutOfRange { slot: beacon_head, head: resolver.head() });
    }
    let mut lo: u64 = 0;
    let mut hi = beacon_head;
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match resolver.resolve_block_number(mid)? {
            Some(block) if block == target_block => {
                // A missed slot resolves to an earlier block; walk back to the
                // smallest slot still resolving to the target, which is the
                // proposed slot itself. Slots below `lo` resolve before the
                // target, so the walk stops there without probing.
                let mut slot = mid;
                while slot > lo && resolver.resolve_block_number(slot - 1)? == Some(target_block) {
                    slot -= 1;
                }
                return Ok(Some(slot));
            }
            Some(block) if block < target_block => lo = mid + 1,
            Some(_) => {
                // Resolved block above target: discard mid and everything after.
                match mid.checked_sub(1) {
                    Some(new_hi) => hi = new_hi,
                    None => break,
                }
            }
            // No proposed slot at or before mid: everything there is too early.
            None => lo = mid + 1,
        }
    }
    Ok(None)
}
