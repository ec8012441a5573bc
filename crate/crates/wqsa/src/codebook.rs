//! Hierarchical item labels and the block constraint a trusted digit carries.
//!
//! Every item index `z` gets an n-digit label: digit `c_lambda` says which of
//! the `2^(lambda-1)` equal blocks at that scale contains `z`, counted from 1,
//! so `c_lambda = floor(z / 2^(n-lambda+1)) + 1`. Digit 1 is always 1 (one
//! block covers everything) and consecutive digits nest: each block at scale
//! `lambda + 1` is one half of its parent. Trusting a single digit therefore
//! pins the item to a contiguous block, which is exactly the support of one
//! wavelet basis function; `choose_k` returns the index of that function.

use crate::error::{Error, Result};
use crate::haar::scale_to_index;
use crate::state::check_qubit_count;

/// An n-digit hierarchical label. Digit values are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeLabel {
    pub n: u32,
    /// `digits[lambda - 1]` is the digit at scale `lambda`.
    pub digits: Vec<usize>,
}

impl CodeLabel {
    /// Wraps a digit sequence; the values are checked by [`validate`], not here.
    pub fn new(n: u32, digits: Vec<usize>) -> Result<Self> {
        check_qubit_count(n)?;
        if digits.len() != n as usize {
            return Err(Error::BadLength { len: digits.len() });
        }
        Ok(CodeLabel { n, digits })
    }
}

/// Contiguous index block selected by one digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub lo: usize,
    pub hi: usize,
    pub lambda: u32,
    pub j: usize,
}

/// Outcome of checking a label against the range and nesting rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// First scale whose digit breaks a rule, with the rule spelled out.
    Reject { lambda: u32, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Labels an item index with its digit at every scale.
pub fn encode(n: u32, z: usize) -> Result<CodeLabel> {
    check_qubit_count(n)?;
    if z >= 1usize << n {
        return Err(Error::CodeOutOfRange { z, n });
    }
    let digits = (1..=n).map(|lambda| (z >> (n - lambda + 1)) + 1).collect();
    Ok(CodeLabel { n, digits })
}

/// The block of items whose digit at scale `lambda` equals `j`.
pub fn decode_digit(n: u32, lambda: u32, j: usize) -> Result<Block> {
    check_qubit_count(n)?;
    if lambda < 1 || lambda > n {
        return Err(Error::ScaleOutOfRange { lambda, min: 1, max: n });
    }
    if j < 1 || j > 1usize << (lambda - 1) {
        return Err(Error::ShiftOutOfRange { lambda, j });
    }
    let size = 1usize << (n - lambda + 1);
    let lo = (j - 1) * size;
    Ok(Block { lo, hi: lo + size - 1, lambda, j })
}

/// The wavelet index whose prepared state lives exactly on the trusted block.
///
/// Scale 1 is rejected: its single block is the whole space, the prepared
/// state degenerates to a full-width function, and the run would only match
/// the plain baseline.
pub fn choose_k(n: u32, lambda: u32, j: usize) -> Result<usize> {
    check_qubit_count(n)?;
    if lambda == 1 {
        return Err(Error::NoSpeedup { lambda });
    }
    if lambda > n {
        return Err(Error::ScaleOutOfRange { lambda, min: 2, max: n });
    }
    scale_to_index(lambda, j)
}

/// Checks the range rule (`1 <= c_lambda <= 2^(lambda-1)`) and the nesting
/// rule (`c_lambda = floor((c_(lambda+1) - 1)/2) + 1`), reporting the first
/// scale that breaks either.
pub fn validate(label: &CodeLabel) -> Verdict {
    for (i, &digit) in label.digits.iter().enumerate() {
        let lambda = i as u32 + 1;
        let max = 1usize << (lambda - 1);
        if digit < 1 || digit > max {
            return Verdict::Reject {
                lambda,
                reason: format!("digit {digit} out of range 1..={max}"),
            };
        }
        if i > 0 {
            let parent = label.digits[i - 1];
            let implied = (digit - 1) / 2 + 1;
            if implied != parent {
                return Verdict::Reject {
                    lambda,
                    reason: format!(
                        "digit {digit} sits in block {implied} one scale up, not {parent}"
                    ),
                };
            }
        }
    }
    Verdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{index_to_scale, wavelet_initial_state};
    use crate::state::MAX_QUBITS;

    #[test]
    fn encode_examples() {
        assert_eq!(encode(3, 0).unwrap().digits, vec![1, 1, 1]);
        assert_eq!(encode(3, 5).unwrap().digits, vec![1, 2, 3]);
        for n in 1..=10u32 {
            let top = encode(n, (1 << n) - 1).unwrap();
            for (i, &digit) in top.digits.iter().enumerate() {
                assert_eq!(digit, 1usize << i);
            }
        }
        assert!(matches!(encode(3, 8), Err(Error::CodeOutOfRange { z: 8, n: 3 })));
    }

    #[test]
    fn every_encoded_label_validates() {
        for n in 1..=8u32 {
            for z in 0..1usize << n {
                assert!(validate(&encode(n, z).unwrap()).is_accept(), "n={n} z={z}");
            }
        }
    }

    #[test]
    fn decode_examples() {
        let b = decode_digit(3, 2, 2).unwrap();
        assert_eq!((b.lo, b.hi), (4, 7));
        let b = decode_digit(3, 1, 1).unwrap();
        assert_eq!((b.lo, b.hi), (0, 7));
        let b = decode_digit(4, 4, 3).unwrap();
        assert_eq!((b.lo, b.hi), (4, 5));

        assert!(matches!(decode_digit(3, 4, 1), Err(Error::ScaleOutOfRange { .. })));
        assert!(matches!(decode_digit(3, 2, 3), Err(Error::ShiftOutOfRange { .. })));
        assert!(matches!(decode_digit(3, 2, 0), Err(Error::ShiftOutOfRange { .. })));
    }

    #[test]
    fn decode_agrees_with_enumerating_encoded_digits() {
        for n in 1..=8u32 {
            for lambda in 1..=n {
                for j in 1..=1usize << (lambda - 1) {
                    let block = decode_digit(n, lambda, j).unwrap();
                    let members: Vec<usize> = (0..1usize << n)
                        .filter(|&z| encode(n, z).unwrap().digits[lambda as usize - 1] == j)
                        .collect();
                    assert_eq!(members.first(), Some(&block.lo), "n={n} l={lambda} j={j}");
                    assert_eq!(members.last(), Some(&block.hi));
                    assert_eq!(members.len(), block.hi - block.lo + 1);
                }
            }
        }
    }

    #[test]
    fn blocks_partition_the_index_range() {
        for n in 1..=10u32 {
            for lambda in 1..=n {
                let mut next = 0usize;
                for j in 1..=1usize << (lambda - 1) {
                    let block = decode_digit(n, lambda, j).unwrap();
                    assert_eq!(block.lo, next);
                    next = block.hi + 1;
                }
                assert_eq!(next, 1usize << n);
            }
        }
    }

    #[test]
    fn every_item_round_trips_through_its_digits() {
        for n in 1..=10u32 {
            for z in 0..1usize << n {
                let label = encode(n, z).unwrap();
                for lambda in 1..=n {
                    let block = decode_digit(n, lambda, label.digits[lambda as usize - 1]).unwrap();
                    assert!(block.lo <= z && z <= block.hi, "n={n} z={z} l={lambda}");
                }
            }
        }
    }

    #[test]
    fn encode_is_monotone_in_the_item_index() {
        for n in 1..=8u32 {
            let mut prev = encode(n, 0).unwrap().digits;
            for z in 1..1usize << n {
                let digits = encode(n, z).unwrap().digits;
                assert!(prev <= digits, "n={n} z={z}");
                prev = digits;
            }
        }
    }

    #[test]
    fn choose_k_examples() {
        assert_eq!(choose_k(3, 2, 2).unwrap(), 3);
        assert_eq!(choose_k(10, 5, 1).unwrap(), 16);
        assert_eq!(index_to_scale(10, 16).unwrap().n1, 64);
        assert!(matches!(choose_k(8, 1, 1), Err(Error::NoSpeedup { lambda: 1 })));
        assert!(matches!(choose_k(3, 4, 1), Err(Error::ScaleOutOfRange { .. })));
        assert!(matches!(choose_k(3, 3, 5), Err(Error::ShiftOutOfRange { .. })));
    }

    #[test]
    fn chosen_index_support_equals_the_decoded_block() {
        for n in 2..=8u32 {
            for lambda in 2..=n {
                for j in 1..=1usize << (lambda - 1) {
                    let k = choose_k(n, lambda, j).unwrap();
                    let block = decode_digit(n, lambda, j).unwrap();
                    let idx = index_to_scale(n, k).unwrap();
                    assert_eq!((idx.support_lo, idx.support_hi), (block.lo, block.hi));
                    let state = wavelet_initial_state(n, k).unwrap();
                    for (i, a) in state.amplitudes().iter().enumerate() {
                        let inside = i >= block.lo && i <= block.hi;
                        assert_eq!(a.norm_sqr() > 0.0, inside, "n={n} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn validate_reports_the_first_broken_scale() {
        let label = CodeLabel::new(3, vec![1, 2, 2]).unwrap();
        match validate(&label) {
            Verdict::Reject { lambda, .. } => assert_eq!(lambda, 3),
            Verdict::Accept => panic!("nesting violation must be rejected"),
        }

        let label = CodeLabel::new(3, vec![2, 1, 1]).unwrap();
        match validate(&label) {
            Verdict::Reject { lambda, .. } => assert_eq!(lambda, 1),
            Verdict::Accept => panic!("range violation must be rejected"),
        }

        let label = CodeLabel::new(3, vec![1, 3, 5]).unwrap();
        match validate(&label) {
            Verdict::Reject { lambda, .. } => assert_eq!(lambda, 2),
            Verdict::Accept => panic!("range violation must be rejected"),
        }
    }

    #[test]
    fn label_constructor_checks_the_length() {
        assert!(matches!(
            CodeLabel::new(3, vec![1, 1]),
            Err(Error::BadLength { len: 2 })
        ));
        assert!(CodeLabel::new(MAX_QUBITS + 1, vec![]).is_err());
    }
}
