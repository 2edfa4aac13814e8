//! Execution- and consensus-layer record types shared across the pipeline.

use crate::types::{dec_string, dec_string_opt, Address, Wei, H256};
use serde::{Deserialize, Serialize};

/// Execution-layer block header metadata.
///
/// `producer` is the header fee-recipient address; it identifies the block
/// producer in both the proof-of-work and proof-of-stake eras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockHeader {
    #[serde(with = "dec_string")]
    pub number: u64,
    pub hash: H256,
    pub parent_hash: H256,
    pub producer: Address,
    #[serde(with = "dec_string")]
    pub timestamp: u64,
    #[serde(with = "dec_string")]
    pub gas_used: u64,
    #[serde(with = "dec_string")]
    pub gas_limit: u64,
    pub base_fee_per_gas: Wei,
}

/// One transaction's gas accounting, taken from its receipt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TxRecord {
    pub tx_hash: H256,
    #[serde(with = "dec_string")]
    pub block_number: u64,
    #[serde(with = "dec_string")]
    pub gas_used: u64,
    /// Effective gas price actually paid, wei per gas.
    pub gas_price: Wei,
    pub value: Wei,
}

/// One beacon-chain slot. A missed slot carries no block number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotRecord {
    #[serde(with = "dec_string")]
    pub slot: u64,
    #[serde(with = "dec_string")]
    pub proposer_index: u64,
    #[serde(
        with = "dec_string_opt",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub block_number: Option<u64>,
    #[serde(with = "dec_string")]
    pub total_votes: u64,
    #[serde(with = "dec_string")]
    pub active_validators: u64,
}

/// Outcome of one ingest run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub blocks_fetched: u64,
    pub txs_fetched: u64,
    pub slots_fetched: u64,
    /// Inclusive block-number ranges still missing from the store.
    pub gaps: Vec<(u64, u64)>,
    pub retries: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("block {number}: gas_used {gas_used} exceeds gas_limit {gas_limit}")]
    GasOverLimit { number: u64, gas_used: u64, gas_limit: u64 },
    #[error("block {child} does not link to parent {parent}: hash mismatch")]
    BrokenParentLink { parent: u64, child: u64 },
    #[error("block numbers not contiguous: {prev} followed by {next}")]
    NonContiguous { prev: u64, next: u64 },
    #[error("slot {slot} breaks block-number monotonicity ({prev} then {next})")]
    NonMonotonicSlots { slot: u64, prev: u64, next: u64 },
}

impl BlockHeader {
    pub fn validate(&self) -> Result<(), ChainError> {
        if self.gas_used > self.gas_limit {
            return Err(ChainError::GasOverLimit {
                number: self.number,
                gas_used: self.gas_used,
                gas_limit: self.gas_limit,
            });
        }
        Ok(())
    }
}

/// Checks that an ascending header list is contiguous and parent-linked.
pub fn verify_header_chain(headers: &[BlockHeader]) -> Result<(), ChainError> {
    for pair in headers.windows(2) {
        if pair[1].number != pair[0].number + 1 {
            return Err(ChainError::NonContiguous { prev: pair[0].number, next: pair[1].number });
        }
        if pair[1].parent_hash != pair[0].hash {
            return Err(ChainError::BrokenParentLink {
                parent: pair[0].number,
                child: pair[1].number,
            });
        }
    }
    Ok(())
}

/// Checks that block numbers of proposed slots strictly increase with slot.
pub fn verify_slot_monotonicity(slots: &[SlotRecord]) -> Result<(), ChainError> {
    let mut last: Option<(u64, u64)> = None;
    let mut sorted: Vec<&SlotRecord> = slots.iter().collect();
    sorted.sort_by_key(|s| s.slot);
    for record in sorted {
        let Some(block) = record.block_number else { continue };
        if let Some((_, prev_block)) = last {
            if block <= prev_block {
                return Err(ChainError::NonMonotonicSlots {
                    slot: record.slot,
                    prev: prev_block,
                    next: block,
                });
            }
        }
        last = Some((record.slot, block));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::H256;

    fn header(number: u64, parent: H256) -> BlockHeader {
        BlockHeader {
            number,
            hash: H256::from_low_u64(number + 1000),
            parent_hash: parent,
            producer: Address::from_low_u64(1),
            timestamp: 1_660_000_000 + 12 * number,
            gas_used: 10_000_000,
            gas_limit: 30_000_000,
            base_fee_per_gas: Wei::from_gwei(10),
        }
    }

    #[test]
    fn header_fixture_json_uses_decimal_strings() {
        let h = header(100, H256::from_low_u64(1099));
        let json = serde_json::to_string(&h).unwrap();
        assert!(json.contains("\"number\":\"100\""));
        assert!(json.contains("\"base_fee_per_gas\":\"10000000000\""));
        let back: BlockHeader = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn missed_slot_omits_block_number() {
        let slot = SlotRecord {
            slot: 9,
            proposer_index: 41,
            block_number: None,
            total_votes: 120,
            active_validators: 500_000,
        };
        let json = serde_json::to_string(&slot).unwrap();
        assert!(!json.contains("block_number"));
        let back: SlotRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.block_number, None);
    }

    #[test]
    fn gas_over_limit_rejected() {
        let mut h = header(5, H256::default());
        h.gas_used = h.gas_limit + 1;
        assert!(matches!(h.validate(), Err(ChainError::GasOverLimit { .. })));
    }

    #[test]
    fn chain_verification_catches_breaks() {
        let a = header(1, H256::default());
        let mut b = header(2, a.hash);
        assert!(verify_header_chain(&[a.clone(), b.clone()]).is_ok());
        b.parent_hash = H256::from_low_u64(777);
        assert!(matches!(
            verify_header_chain(&[a.clone(), b]).err(),
            Some(ChainError::BrokenParentLink { .. })
        ));
        let c = header(3, H256::default());
        assert!(matches!(
            verify_header_chain(&[a, c]).err(),
            Some(ChainError::NonContiguous { .. })
        ));
    }

    #[test]
    fn slot_monotonicity_checked_on_proposed_slots_only() {
        let mk = |slot, block| SlotRecord {
            slot,
            proposer_index: 0,
            block_number: block,
            total_votes: 0,
            active_validators: 0,
        };
        assert!(verify_slot_monotonicity(&[mk(0, Some(10)), mk(1, None), mk(2, Some(11))]).is_ok());
        assert!(verify_slot_monotonicity(&[mk(0, Some(10)), mk(1, Some(10))]).is_err());
    }
}
