//! Conjugacy-class census of UT(n, p) and the commuting probability it implies.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::matrix::UnitriangularGroup;
use crate::error::Result;
use crate::fp::PrimeModulus;
use crate::group::{check_cap, commuting_pairs, conjugacy_class_sizes, FiniteGroup};

/// Largest order for which the `e = |G| c` identity is cross-checked by a
/// direct O(|G|²) pair count.
pub const DIRECT_PAIR_LIMIT: u64 = 1 << 12;

/// One census record. `commuting_pairs` is `|G|·c`; when the group is small
/// enough `direct_pairs` holds an independent exhaustive count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub p: u32,
    pub order: u64,
    pub classes: u64,
    pub commuting_pairs: u128,
    /// Commuting probability `c/|G|` in lowest terms.
    pub probability_num: u64,
    pub probability_den: u64,
    pub log_p_classes: f64,
    /// `n²/12`, the exponent of the lower bound.
    pub higman_exponent: f64,
    /// `7n²/44`, the exponent of the upper bound.
    pub soffer_exponent: f64,
    pub direct_pairs: Option<u128>,
}

impl CensusRecord {
    pub fn probability(&self) -> Ratio<u64> {
        Ratio::new_raw(self.probability_num, self.probability_den)
    }

    /// `e = |G| c`, and agreement with the direct count when one was made.
    pub fn identity_holds(&self) -> bool {
        self.commuting_pairs == self.order as u128 * self.classes as u128
            && self.direct_pairs.map_or(true, |d| d == self.commuting_pairs)
    }
}

pub fn conjugacy_census(n: usize, p: PrimeModulus, cap: u64) -> Result<CensusRecord> {
    let g = UnitriangularGroup::new(n, p);
    check_cap(g.order_u128(), cap)?;
    let order = g.order();
    let classes = conjugacy_class_sizes(&g, cap)?.len() as u64;
    let direct_pairs = if order <= DIRECT_PAIR_LIMIT {
        Some(commuting_pairs(&g, cap)?)
    } else {
        None
    };
    // e/|G|² = c/|G|.
    let prob = Ratio::new(BigUint::from(classes), BigUint::from(order));
    let to_u64 = |b: &BigUint| u64::try_from(b).expect("bounded by the group order");
    let nf = n as f64;
    Ok(CensusRecord {
        n,
        p: p.get(),
        order,
        classes,
        commuting_pairs: order as u128 * classes as u128,
        probability_num: to_u64(prob.numer()),
        probability_den: to_u64(prob.denom()),
        log_p_classes: (classes as f64).ln() / (p.get() as f64).ln(),
        higman_exponent: nf * nf / 12.0,
        soffer_exponent: 7.0 * nf * nf / 44.0,
        direct_pairs,
    })
}
