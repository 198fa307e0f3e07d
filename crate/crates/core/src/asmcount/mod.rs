//! Alternating sign matrices: enumeration, closed-form counts and the
//! generating-function identities relating plain and half-turn counts.

mod asm;
mod closed;
mod genpoly;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub use asm::{
    generate_asms, generate_asms_with_first_one, generate_half_turn_asms, Asm, AsmIter,
    HalfTurnIter, DEFAULT_ASM_CAP,
};
pub use closed::{
    asm_step_ratio, asm_total, ht_step_ratio, ht_total, refined_asm, refined_asm_ratio,
    refined_asm_table, refined_ht, refined_ht_ratio, refined_ht_table, HT_BASE,
};
pub use genpoly::{gen_poly_a, gen_poly_b, gen_poly_h, verify_ht_identity, HtIdentityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Plain,
    HalfTurn,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Plain => "plain",
            SymmetryClass::HalfTurn => "half-turn",
        }
    }
}

/// Counts binned by the row `r` (1-based) of the one in the leftmost column;
/// `counts[r - 1]` holds the bin for `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedTable {
    order: usize,
    class: SymmetryClass,
    counts: Vec<BigInt>,
}

impl RefinedTable {
    pub fn new(order: usize, class: SymmetryClass, counts: Vec<BigInt>) -> Self {
        assert_eq!(counts.len(), order, "one bin per row");
        RefinedTable { order, class, counts }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().fold(BigInt::zero(), |acc, c| acc + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }
}

/// Refined table by direct enumeration.
///
/// Half-turn tables come from the half-height generator, so `cap` bounds the
/// full order in both classes.
pub fn brute_refined(order: usize, class: SymmetryClass, cap: usize) -> Result<RefinedTable> {
    if order == 0 {
        return Err(Error::OutOfRange("order must be positive".into()));
    }
    let mut counts = vec![0u64; order];
    match class {
        SymmetryClass::Plain => {
            for m in generate_asms(order, cap)? {
                counts[m.first_column_one_row() - 1] += 1;
            }
        }
        SymmetryClass::HalfTurn => {
            if order % 2 == 1 {
                return Err(Error::OddOrderForHalfTurn(order));
            }
            for m in generate_half_turn_asms(order, cap)? {
                counts[m.first_column_one_row() - 1] += 1;
            }
        }
    }
    Ok(RefinedTable::new(order, class, counts.into_iter().map(BigInt::from).collect()))
}
