//! Per-transaction fee derivation.
//!
//! All arithmetic is exact over arbitrary-precision integers:
//! base fee = gas used x base fee per gas, transaction fee = gas used x
//! effective gas price, priority fee = transaction fee - base fee.

use crate::chain::{BlockHeader, TxRecord};
use crate::types::{Wei, H256};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeeError {
    #[error("tx {tx} references block {tx_block}, header is block {header_block}")]
    BlockMismatch { tx: H256, tx_block: u64, header_block: u64 },
    #[error("tx {tx}: gas price {gas_price} below base fee per gas {base_fee_per_gas}")]
    InconsistentRecord { tx: H256, gas_price: Wei, base_fee_per_gas: Wei },
}

/// A transaction's derived fees together with the inputs they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeeBreakdown {
    pub tx_hash: H256,
    #[serde(with = "crate::types::dec_string")]
    pub block_number: u64,
    pub base_fee: Wei,
    pub txn_fee: Wei,
    pub priority_fee: Wei,
    #[serde(with = "crate::types::dec_string")]
    pub gas_used: u64,
    pub gas_price: Wei,
    pub base_fee_per_gas: Wei,
}

impl FeeBreakdown {
    /// Re-derives the three fee identities from the stored inputs.
    pub fn verify(&self) -> bool {
        let base = &self.base_fee_per_gas * self.gas_used;
        let txn = &self.gas_price * self.gas_used;
        base == self.base_fee
            && txn == self.txn_fee
            && txn.checked_sub(&base).as_ref() == Some(&self.priority_fee)
    }
}

/// Derives a transaction's fees from its receipt figures and its block header.
pub fn derive_fees(tx: &TxRecord, block: &BlockHeader) -> Result<FeeBreakdown, FeeError> {
    if tx.block_number != block.number {
        return Err(FeeError::BlockMismatch {
            tx: tx.tx_hash,
            tx_block: tx.block_number,
            header_block: block.number,
        });
    }
    if tx.gas_used > 0 && tx.gas_price < block.base_fee_per_gas {
        return Err(FeeError::InconsistentRecord {
            tx: tx.tx_hash,
            gas_price: tx.gas_price.clone(),
            base_fee_per_gas: block.base_fee_per_gas.clone(),
        });
    }
    let base_fee = &block.base_fee_per_gas * tx.gas_used;
    let txn_fee = &tx.gas_price * tx.gas_used;
    let priority_fee = txn_fee
        .checked_sub(&base_fee)
        .expect("txn fee >= base fee after the gas price guard");
    Ok(FeeBreakdown {
        tx_hash: tx.tx_hash,
        block_number: tx.block_number,
        base_fee,
        txn_fee,
        priority_fee,
        gas_used: tx.gas_used,
        gas_price: tx.gas_price.clone(),
        base_fee_per_gas: block.base_fee_per_gas.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Address;

    fn block(number: u64, base_fee_per_gas: Wei) -> BlockHeader {
        BlockHeader {
            number,
            hash: H256::from_low_u64(number),
            parent_hash: H256::from_low_u64(number - 1),
            producer: Address::from_low_u64(9),
            timestamp: 0,
            gas_used: 15_000_000,
            gas_limit: 30_000_000,
            base_fee_per_gas,
        }
    }

    fn tx(block_number: u64, gas_used: u64, gas_price: Wei) -> TxRecord {
        TxRecord {
            tx_hash: H256::from_low_u64(77),
            block_number,
            gas_used,
            gas_price,
            value: Wei::zero(),
        }
    }

    #[test]
    fn standard_transfer_fees() {
        let fees =
            derive_fees(&tx(10, 21_000, Wei::from_gwei(12)), &block(10, Wei::from_gwei(10)))
                .unwrap();
        assert_eq!(fees.base_fee, Wei::from_dec_str("210000000000000").unwrap());
        assert_eq!(fees.txn_fee, Wei::from_dec_str("252000000000000").unwrap());
        assert_eq!(fees.priority_fee, Wei::from_dec_str("42000000000000").unwrap());
        assert!(fees.verify());
    }

    #[test]
    fn zero_gas_used_means_zero_fees() {
        let fees = derive_fees(&tx(10, 0, Wei::from_gwei(12)), &block(10, Wei::from_gwei(10)))
            .unwrap();
        assert!(fees.base_fee.is_zero());
        assert!(fees.txn_fee.is_zero());
        assert!(fees.priority_fee.is_zero());
        assert!(fees.verify());
    }

    #[test]
    fn gas_price_below_base_fee_is_inconsistent() {
        let err = derive_fees(&tx(10, 21_000, Wei::from_gwei(10)), &block(10, Wei::from_gwei(12)))
            .unwrap_err();
        assert!(matches!(err, FeeError::InconsistentRecord { .. }));
    }

    #[test]
    fn block_mismatch_rejected() {
        let err = derive_fees(&tx(11, 21_000, Wei::from_gwei(12)), &block(10, Wei::from_gwei(10)))
            .unwrap_err();
        assert!(matches!(err, FeeError::BlockMismatch { .. }));
    }
}
