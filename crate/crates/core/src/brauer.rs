//! Brauer classes as Hasse-invariant vectors, and the kernel of the
//! localization map `b: H^2(k, Z(G)) -> sum over finite v of H^2(k_v, Z(G))`.
//!
//! A Brauer class of a number field is determined by its local invariants,
//! which are finitely supported and sum to an integer. A class lies in
//! `ker b` when it vanishes at every finite place; complex places carry no
//! invariant, so such a class is a set of real places carrying `1/2`, and the
//! sum condition says that set has even size.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::lie_data::{center, CartanType};
use crate::number_field::{NumberFieldProfile, Place};

pub type Invariant = Ratio<i64>;

/// A Brauer class of exponent dividing `order_bound`, given by its nonzero
/// local invariants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BrauerClass {
    pub order_bound: u64,
    pub invariants: BTreeMap<Place, Invariant>,
}

impl BrauerClass {
    pub fn new(order_bound: u64) -> Self {
        BrauerClass {
            order_bound,
            invariants: BTreeMap::new(),
        }
    }

    pub fn with(mut self, place: Place, value: Invariant) -> Self {
        self.invariants.insert(place, value);
        self
    }

    /// The class with invariant `1/2` at the given real places and zero
    /// elsewhere.
    pub fn from_real_support(order_bound: u64, support: &BTreeSet<u32>) -> Self {
        let half = Ratio::new(1, 2);
        let invariants = support.iter().map(|&i| (Place::Real(i), half)).collect();
        BrauerClass {
            order_bound,
            invariants,
        }
    }

    pub fn invariant_sum(&self) -> Invariant {
        self.invariants.values().copied().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.values().all(|v| *v.numer() == 0)
    }
}

/// Whether `c` is a legitimate class: invariants in `[0, 1)` with
/// denominators dividing the order bound, zero at complex places, `0` or
/// `1/2` at real places, and integral total.
pub fn validate_class(c: &BrauerClass) -> bool {
    if c.order_bound == 0 {
        return false;
    }
    let zero = Invariant::from_integer(0);
    let one = Invariant::from_integer(1);
    let half = Invariant::new(1, 2);
    let local_ok = c.invariants.iter().all(|(place, &v)| {
        if v < zero || v >= one || (c.order_bound as i64) % v.denom() != 0 {
            return false;
        }
        match place {
            Place::Complex(_) => v == zero,
            Place::Real(_) => v == zero || v == half,
            _ => true,
        }
    });
    local_ok && c.invariant_sum().is_integer()
}

/// One generator of `ker b`: the class supported on `support` in the given
/// coordinate of `Z(G)` and trivial in the others.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KerBGenerator {
    pub coordinate: usize,
    pub support: BTreeSet<u32>,
}

/// Closed-form description of `ker b` for a split group of type `t` over `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KerBDescription {
    /// Cyclic factors of the center: 2 for `D_{2m}`, else 1.
    pub coordinate_count: usize,
    pub f2_dimension_per_coordinate: u32,
    /// `2^(coordinate_count * f2_dimension_per_coordinate)`, saturating.
    pub total_count: u128,
    pub generators: Vec<KerBGenerator>,
}

impl KerBDescription {
    pub fn nontrivial_count(&self) -> u128 {
        self.total_count.saturating_sub(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.total_count == 1
    }

    /// The nontrivial elements of a single coordinate, as even-size sets of
    /// real places, in increasing order of their bitmask. Only sensible for
    /// small `r1`.
    pub fn coordinate_elements(&self) -> Vec<BTreeSet<u32>> {
        let r1 = if self.f2_dimension_per_coordinate == 0 {
            0
        } else {
            self.f2_dimension_per_coordinate + 1
        };
        even_subsets(r1)
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect()
    }
}

/// All even-size subsets of `{0, .., r1 - 1}`, ordered by bitmask.
pub fn even_subsets(r1: u32) -> Vec<BTreeSet<u32>> {
    assert!(r1 < 32, "even_subsets is for small r1");
    (0u32..1 << r1)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..r1).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

pub fn ker_b(t: CartanType, k: &NumberFieldProfile) -> KerBDescription {
    let z = center(t);
    let coordinate_count = z.invariant_factors().len().max(1);
    let r1 = k.r1();
    let dim = if z.exponent().is_multiple_of(2) && r1 >= 2 {
        r1 - 1
    } else {
        0
    };
    let bits = coordinate_count as u32 * dim;
    let total_count = 1u128
        .checked_shl(bits)
        .filter(|_| bits < 128)
        .unwrap_or(u128::MAX);
    let generators = (0..coordinate_count)
        .flat_map(|c| {
            (1..=dim).map(move |i| KerBGenerator {
                coordinate: c,
                support: BTreeSet::from([0, i]),
            })
        })
        .collect();
    KerBDescription {
        coordinate_count,
        f2_dimension_per_coordinate: dim,
        total_count,
        generators,
    }
}

/// `b` is injective iff the center has odd exponent or `k` has at most one
/// real place.
pub fn is_b_injective(t: CartanType, k: &NumberFieldProfile) -> bool {
    center(t).exponent() % 2 == 1 || k.r1() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    fn sig(r1: u32, r2: u32) -> NumberFieldProfile {
        NumberFieldProfile::with_signature(r1, r2).unwrap()
    }

    #[test]
    fn validation() {
        let half = Ratio::new(1, 2);
        let c = BrauerClass::new(2)
            .with(Place::Real(0), half)
            .with(Place::Real(1), half);
        assert!(validate_class(&c));
        assert!(!validate_class(
            &BrauerClass::new(2).with(Place::Real(0), half)
        ));
        assert!(validate_class(&BrauerClass::new(2)));
        assert!(!validate_class(
            &BrauerClass::new(2)
                .with(Place::Complex(0), half)
                .with(Place::Real(0), half)
        ));
        // denominator 3 does not divide 2
        let third = Ratio::new(1, 3);
        let c3 = BrauerClass::new(2)
            .with(Place::RationalPrime(3), third)
            .with(Place::RationalPrime(5), Ratio::new(2, 3));
        assert!(!validate_class(&c3));
        assert!(validate_class(&BrauerClass {
            order_bound: 3,
            ..c3
        }));
        assert!(!validate_class(
            &BrauerClass::new(2).with(Place::RationalPrime(2), Ratio::from_integer(1))
        ));
        assert!(!validate_class(&BrauerClass::new(0)));
        // a real place cannot carry 1/4 even when 4 is allowed
        let q = Ratio::new(1, 4);
        assert!(!validate_class(
            &BrauerClass::new(4)
                .with(Place::Real(0), q)
                .with(Place::RationalPrime(2), Ratio::new(3, 4))
        ));
    }

    #[test]
    fn c2_three_real_places() {
        let d = ker_b(ty("C2"), &sig(3, 0));
        assert_eq!(d.nontrivial_count(), 3);
        let elems = d.coordinate_elements();
        let expected: Vec<BTreeSet<u32>> = vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([0, 2]),
            BTreeSet::from([1, 2]),
        ];
        assert_eq!(elems, expected);
    }

    #[test]
    fn b3_two_real_places() {
        let d = ker_b(ty("B3"), &sig(2, 0));
        assert_eq!(d.nontrivial_count(), 1);
        assert_eq!(
            d.generators,
            vec![KerBGenerator {
                coordinate: 0,
                support: BTreeSet::from([0, 1])
            }]
        );
    }

    #[test]
    fn odd_center_is_trivial() {
        for r1 in 0..6 {
            for t in ["A2", "A4", "E6", "E8", "F4", "G2"] {
                assert!(ker_b(ty(t), &sig(r1, 1)).is_trivial());
                assert!(is_b_injective(ty(t), &sig(r1, 1)));
            }
        }
    }

    #[test]
    fn d4_has_two_coordinates() {
        let d = ker_b(ty("D4"), &sig(2, 0));
        assert_eq!(d.coordinate_count, 2);
        assert_eq!(d.f2_dimension_per_coordinate, 1);
        assert_eq!(d.nontrivial_count(), 3);
        assert!(d.generators.iter().all(|g| g.support.len() % 2 == 0));
    }

    #[test]
    fn injectivity_examples() {
        assert!(is_b_injective(ty("E6"), &sig(5, 0)));
        assert!(is_b_injective(ty("C3"), &sig(1, 2)));
        assert!(!is_b_injective(ty("A3"), &sig(2, 0)));
    }

    #[test]
    fn generators_span_even_subsets() {
        for r1 in 0..7u32 {
            let d = ker_b(ty("B3"), &sig(r1, 1));
            let masks: Vec<u32> = d
                .generators
                .iter()
                .map(|g| g.support.iter().map(|i| 1 << i).sum())
                .collect();
            let mut span = BTreeSet::from([0u32]);
            for m in masks {
                let next: Vec<u32> = span.iter().map(|s| s ^ m).collect();
                span.extend(next);
            }
            assert_eq!(span.len() as u128, d.total_count, "r1 = {r1}");
            assert!(span.iter().all(|m| m.count_ones() % 2 == 0));
        }
    }

    #[test]
    fn huge_signature_saturates() {
        let d = ker_b(ty("D4"), &sig(200, 0));
        assert_eq!(d.total_count, u128::MAX);
    }
}
