//! Formal bookkeeping for Heegaard Floer groups given as towers plus finite summands.
//!
//! Nothing here computes Floer homology. A [`FormalHFModule`] records, per Spin^c
//! slot, how many towers `𝒯⁺ = ℤ[U⁻¹]` and how many finite `ℤ` summands (with
//! `U = 0`) the group has. From that we read off `ĤF` ranks, the rank of
//! `HF_red`, and how many pairwise-distinct contact classes are forced out of
//! the tower kernels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("surgery coefficient parameter n = {0} is outside the tabulated range n > 6")]
    OutOfRange(i64),
    #[error("a module needs at least one Spin^c slot")]
    NoSlots,
    #[error("contact class set is missing the {0} assumption")]
    AssumptionMissing(&'static str),
    #[error("a contact class set needs at least one class")]
    NoClasses,
}

pub type Result<T> = std::result::Result<T, HfError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Slot {
    pub towers: u64,
    pub finite: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalHFModule {
    slots: Vec<Slot>,
}

impl FormalHFModule {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.is_empty() {
            return Err(HfError::NoSlots);
        }
        Ok(FormalHFModule { slots })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn spinc_count(&self) -> usize {
        self.slots.len()
    }

    pub fn tower_count(&self) -> u64 {
        self.slots.iter().map(|s| s.towers).sum()
    }
}

/// `HF⁺` of `S³_{n+1}(T(−2,3))` for `n > 6`: `n + 1` slots, `𝒯⁺ ⊕ ℤ` in slot 0 and
/// `𝒯⁺` in every other slot.
pub fn hf_plus_surgery(n: i64) -> Result<FormalHFModule> {
    if n <= 6 {
        return Err(HfError::OutOfRange(n));
    }
    let mut slots = vec![Slot { towers: 1, finite: 0 }; n as usize + 1];
    slots[0].finite = 1;
    FormalHFModule::new(slots)
}

/// Per-slot rank of `ĤF`: each tower contributes its `U`-kernel, each finite `ℤ`
/// two generators.
pub fn hf_hat(m: &FormalHFModule) -> Vec<u64> {
    m.slots.iter().map(|s| s.towers + 2 * s.finite).collect()
}

pub fn hf_red_rank(m: &FormalHFModule) -> u64 {
    m.slots.iter().map(|s| s.finite).sum()
}

/// Contact classes of pairwise non-isomorphic Stein fillings, with the two
/// imported facts about them recorded as flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactClassSet {
    pub count: u64,
    /// The classes are pairwise distinct primitive elements.
    pub distinct: bool,
    /// No two classes lie in the same tower-kernel summand.
    pub exclusive: bool,
}

impl ContactClassSet {
    pub fn new(count: u64) -> Self {
        ContactClassSet { count, distinct: true, exclusive: true }
    }
}

/// Number of classes that cannot be placed in the tower kernels when every
/// tower kernel holds at most one class: `max(0, classes − towers)`.
pub fn pigeonhole_excess(classes: &ContactClassSet, m: &FormalHFModule) -> Result<u64> {
    if !classes.distinct {
        return Err(HfError::AssumptionMissing("distinctness"));
    }
    if !classes.exclusive {
        return Err(HfError::AssumptionMissing("exclusion"));
    }
    if classes.count == 0 {
        return Err(HfError::NoClasses);
    }
    Ok(classes.count.saturating_sub(m.tower_count()))
}

/// Rotation numbers `2i − n − 3`, `i = 1 … n+2`, of the Legendrian right-handed
/// trefoils with `tb = −n`.
pub fn trefoil_rotation_list(n: u64) -> Vec<i64> {
    let n = n as i64;
    (1..=n + 2).map(|i| 2 * i - n - 3).collect()
}

/// Outcome of the planarity obstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NonPlanarity {
    pub excess: u64,
    pub hf_red_rank: u64,
}

impl NonPlanarity {
    /// Some contact class survives in `HF_red`, so that contact structure admits no planar open book.
    pub fn obstructs_planarity(&self) -> bool {
        self.excess > 0 && self.hf_red_rank > 0
    }
}

pub fn planarity_obstruction(classes: &ContactClassSet, m: &FormalHFModule) -> Result<NonPlanarity> {
    Ok(NonPlanarity { excess: pigeonhole_excess(classes, m)?, hf_red_rank: hf_red_rank(m) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surgery_module_shape() {
        for n in [7, 100] {
            let m = hf_plus_surgery(n).unwrap();
            assert_eq!(m.spinc_count(), n as usize + 1);
            assert_eq!(m.slots()[0], Slot { towers: 1, finite: 1 });
            assert!(m.slots()[1..].iter().all(|s| *s == Slot { towers: 1, finite: 0 }));
        }
        assert_eq!(hf_plus_surgery(3), Err(HfError::OutOfRange(3)));
        assert_eq!(hf_plus_surgery(6), Err(HfError::OutOfRange(6)));
    }

    #[test]
    fn hat_ranks() {
        let m = FormalHFModule::new(vec![
            Slot { towers: 1, finite: 1 },
            Slot { towers: 1, finite: 0 },
            Slot { towers: 0, finite: 0 },
        ])
        .unwrap();
        assert_eq!(hf_hat(&m), vec![3, 1, 0]);
    }

    #[test]
    fn red_rank() {
        assert_eq!(hf_red_rank(&hf_plus_surgery(7).unwrap()), 1);
        let towers = FormalHFModule::new(vec![Slot { towers: 1, finite: 0 }; 4]).unwrap();
        assert_eq!(hf_red_rank(&towers), 0);
        let two = FormalHFModule::new(vec![Slot { towers: 1, finite: 2 }; 2]).unwrap();
        assert_eq!(hf_red_rank(&two), 4);
    }

    #[test]
    fn excess_examples() {
        let one = FormalHFModule::new(vec![Slot { towers: 1, finite: 0 }]).unwrap();
        assert_eq!(pigeonhole_excess(&ContactClassSet::new(1), &one).unwrap(), 0);
        let two = FormalHFModule::new(vec![Slot { towers: 1, finite: 0 }; 2]).unwrap();
        assert_eq!(pigeonhole_excess(&ContactClassSet::new(5), &two).unwrap(), 3);
        for n in 1..20u64 {
            let m = FormalHFModule::new(vec![Slot { towers: 1, finite: 0 }; n as usize + 1]).unwrap();
            assert_eq!(pigeonhole_excess(&ContactClassSet::new(n + 2), &m).unwrap(), 1);
        }
    }

    #[test]
    fn missing_assumptions() {
        let m = hf_plus_surgery(7).unwrap();
        let mut c = ContactClassSet::new(9);
        c.exclusive = false;
        assert_eq!(pigeonhole_excess(&c, &m), Err(HfError::AssumptionMissing("exclusion")));
        c.distinct = false;
        assert_eq!(pigeonhole_excess(&c, &m), Err(HfError::AssumptionMissing("distinctness")));
    }

    #[test]
    fn rotation_lists() {
        assert_eq!(trefoil_rotation_list(1), vec![-2, 0, 2]);
        assert_eq!(trefoil_rotation_list(2), vec![-3, -1, 1, 3]);
        for n in 1..30 {
            let l = trefoil_rotation_list(n);
            assert_eq!(l.len() as u64, n + 2);
            assert_eq!(l.iter().sum::<i64>(), 0);
            assert!(l.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
