//! Representation counts `r_{k1,k2}(A, n)` and the classic `R1`, `R2`, `R3`.
//!
//! The fast counter never touches individual elements. For an `a2`-block
//! `[c, d)` and an `a1`-block `[e, f)`, the admissible `a2` form the integer
//! interval
//!
//! ```text
//! max(c, ceil((n - k1 (f-1)) / k2)) ..= min(d-1, floor((n - k1 e) / k2))
//! ```
//!
//! intersected with the residue class `k2 a2 ≡ n (mod k1)`, which is counted
//! in closed form.

use crate::arith::{progression_count, solve_linear_congruence, Int};
use crate::blockset::{BlockSet, BlockView};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightPair {
    k1: Int,
    k2: Int,
}

impl WeightPair {
    pub fn new(k1: Int, k2: Int) -> Result<Self> {
        if k1 < 1 || k2 < 1 {
            return Err(Error::InvalidWeights { k1, k2 });
        }
        Ok(WeightPair { k1, k2 })
    }

    /// The pair `(1, k)`.
    pub fn unit_first(k: Int) -> Result<Self> {
        Self::new(1, k)
    }

    pub fn k1(&self) -> Int {
        self.k1
    }

    pub fn k2(&self) -> Int {
        self.k2
    }
}

/// `R1` counts ordered pairs `a + a' = n`, `R2` pairs with `a < a'`, `R3`
/// pairs with `a <= a'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicVariant {
    R1,
    R2,
    R3,
}

/// Brute force: enumerate `a2 = 0..=n/k2` and test membership directly on
/// the set. Linear in `n`; kept as ground truth.
pub fn count_weighted_oracle(set: &BlockSet, n: Int, w: WeightPair) -> Int {
    if n < 0 {
        return 0;
    }
    let mut count = 0;
    for a2 in 0..=n / w.k2 {
        let rest = n - w.k2 * a2;
        if rest % w.k1 == 0 && set.contains(a2) && set.contains(rest / w.k1) {
            count += 1;
        }
    }
    count
}

/// Fast exact count. Materializes the set up to `n` once.
pub fn count_weighted(set: &BlockSet, n: Int, w: WeightPair) -> Result<Int> {
    if n < 0 {
        return Ok(0);
    }
    let view = set.view(n + 1)?;
    count_on_view(&view, n, w)
}

/// Fast count on a prepared view; the view must cover `[0, n]`.
pub fn count_on_view(view: &BlockView, n: Int, w: WeightPair) -> Result<Int> {
    if n < 0 {
        return Ok(0);
    }
    if view.horizon() <= n {
        return Err(Error::HorizonTooSmall { horizon: view.horizon(), needed: n + 1 });
    }
    Ok(count_restricted(view, n, w, 0, n / w.k2))
}

/// Counts pairs with `a2` restricted to `[a2_lo, a2_hi]`.
fn count_restricted(view: &BlockView, n: Int, w: WeightPair, a2_lo: Int, a2_hi: Int) -> Int {
    let Some((residue, step)) = solve_linear_congruence(w.k2, n, w.k1) else {
        return 0;
    };
    let ivs = view.intervals();
    let mut total = 0;
    for &(c, d) in ivs {
        let lo2 = c.max(a2_lo);
        let hi2 = (d - 1).min(a2_hi);
        if lo2 > hi2 {
            if c > a2_hi {
                break;
            }
            continue;
        }
        // a1 = (n - k2 a2) / k1 ranges over [(n - k2 hi2) / k1, (n - k2 lo2) / k1].
        let a1_min = (n - w.k2 * hi2).div_euclid(w.k1);
        let a1_max = (n - w.k2 * lo2).div_euclid(w.k1);
        let first = ivs.partition_point(|&(_, f)| f <= a1_min);
        for &(e, f) in &ivs[first..] {
            if e > a1_max {
                break;
            }
            let lo = lo2.max((n - w.k1 * (f - 1) + w.k2 - 1).div_euclid(w.k2));
            let hi = hi2.min((n - w.k1 * e).div_euclid(w.k2));
            total += progression_count(lo, hi, residue, step);
        }
    }
    total
}

/// Classic unweighted counters. `R2` and `R3` are counted directly by
/// restricting the larger summand, not derived from `R1`.
pub fn count_classic(set: &BlockSet, n: Int, variant: ClassicVariant) -> Result<Int> {
    if n < 0 {
        return Ok(0);
    }
    let view = set.view(n + 1)?;
    Ok(classic_on_view(&view, n, variant))
}

pub fn classic_on_view(view: &BlockView, n: Int, variant: ClassicVariant) -> Int {
    let w = WeightPair { k1: 1, k2: 1 };
    // a1 = a, a2 = a'; a < a' iff a2 > n/2.
    let a2_lo = match variant {
        ClassicVariant::R1 => 0,
        ClassicVariant::R2 => n / 2 + 1,
        ClassicVariant::R3 => (n + 1) / 2,
    };
    count_restricted(view, n, w, a2_lo, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockset::TailRule;
    use proptest::prelude::*;

    fn s1() -> BlockSet {
        BlockSet::new(vec![4, 5, 7], true, Some(TailRule::new(3, 2, 0).unwrap())).unwrap()
    }

    fn w(k1: Int, k2: Int) -> WeightPair {
        WeightPair::new(k1, k2).unwrap()
    }

    fn both(set: &BlockSet, n: Int, wp: WeightPair) -> Int {
        let fast = count_weighted(set, n, wp).unwrap();
        assert_eq!(fast, count_weighted_oracle(set, n, wp), "n = {n}, w = {wp:?}");
        fast
    }

    #[test]
    fn small_set_examples() {
        let a = BlockSet::normalize(&[(0, 1), (2, 4)]).unwrap();
        assert_eq!(both(&a, 6, w(1, 2)), 2);
        assert_eq!(both(&a, 0, w(1, 2)), 1);
        assert_eq!(both(&a, 4, w(1, 2)), 1);
        for n in 0..30 {
            assert_eq!(both(&BlockSet::empty(), n, w(1, 3)), 0);
            assert_eq!(both(&BlockSet::empty(), n, w(2, 3)), 0);
        }
    }

    #[test]
    fn full_set_closed_form() {
        let horizon = BlockSet::normalize(&[(0, 10_000)]).unwrap();
        for k in 2..6 {
            for n in 0..500 {
                assert_eq!(count_weighted(&horizon, n, w(1, k)).unwrap(), n / k + 1);
                assert_eq!(count_weighted(&BlockSet::full(), n, w(1, k)).unwrap(), n / k + 1);
            }
        }
    }

    // Values frozen from an independent bisect-based enumeration.
    #[test]
    fn scaling_set_fixtures() {
        let s = s1();
        assert_eq!(both(&s, 100, w(1, 2)), 14);
        assert_eq!(both(&s, 100, w(1, 3)), 12);
        assert_eq!(both(&s, 100, w(2, 3)), 1);
        assert_eq!(both(&s, 1000, w(1, 2)), 100);
        assert_eq!(both(&s, 1000, w(1, 3)), 102);
        assert_eq!(both(&s, 1000, w(2, 3)), 44);
        assert_eq!(both(&s, 4095, w(1, 2)), 511);
        assert_eq!(both(&s.complement(), 100, w(1, 2)), 17);
        assert_eq!(count_weighted(&s, 1_000_000, w(1, 2)).unwrap(), 90_400);
        assert_eq!(count_weighted(&s.complement(), 1_000_000, w(1, 2)).unwrap(), 90_403);
        assert_eq!(count_weighted(&s, 10_000_000, w(1, 2)).unwrap(), 1_553_598);
        assert_eq!(count_weighted(&s.complement(), 10_000_000, w(1, 2)).unwrap(), 1_553_601);
    }

    #[test]
    fn classic_examples() {
        let a = BlockSet::normalize(&[(0, 3)]).unwrap();
        assert_eq!(count_classic(&a, 2, ClassicVariant::R1).unwrap(), 3);
        assert_eq!(count_classic(&a, 2, ClassicVariant::R2).unwrap(), 1);
        assert_eq!(count_classic(&a, 2, ClassicVariant::R3).unwrap(), 2);
        assert_eq!(count_classic(&a, 0, ClassicVariant::R2).unwrap(), 0);
        assert_eq!(count_classic(&a, 0, ClassicVariant::R3).unwrap(), 1);
    }

    #[test]
    fn view_horizon_is_checked() {
        let v = s1().view(50).unwrap();
        assert!(matches!(count_on_view(&v, 50, w(1, 2)), Err(Error::HorizonTooSmall { .. })));
        assert!(count_on_view(&v, 49, w(1, 2)).is_ok());
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(WeightPair::new(0, 2).is_err());
        assert!(WeightPair::new(1, -1).is_err());
    }

    fn arb_set() -> impl Strategy<Value = BlockSet> {
        (prop::collection::vec(1..300i128, 0..24), any::<bool>()).prop_map(|(gaps, phase)| {
            let ts = gaps
                .iter()
                .scan(-1i128, |acc, g| {
                    *acc += g;
                    Some(*acc)
                })
                .collect();
            BlockSet::new(ts, phase, None).unwrap()
        })
    }

    fn classic_brute(set: &BlockSet, n: Int) -> [Int; 3] {
        let mut r = [0; 3];
        for a in 0..=n {
            let b = n - a;
            if set.contains(a) && set.contains(b) {
                r[0] += 1;
                r[1] += Int::from(a < b);
                r[2] += Int::from(a <= b);
            }
        }
        r
    }

    proptest! {
        #[test]
        fn fast_matches_oracle(s in arb_set(), n in 0..3000i128, k1 in 1..6i128, k2 in 1..6i128) {
            let wp = w(k1, k2);
            prop_assert_eq!(count_weighted(&s, n, wp).unwrap(), count_weighted_oracle(&s, n, wp));
        }

        #[test]
        fn trivial_ceiling(s in arb_set(), n in 0..3000i128, k in 2..6i128) {
            prop_assert!(count_weighted(&s, n, w(1, k)).unwrap() <= n / k + 1);
        }

        #[test]
        fn classic_identities(s in arb_set(), n in 0..2000i128) {
            let r1 = count_classic(&s, n, ClassicVariant::R1).unwrap();
            let r2 = count_classic(&s, n, ClassicVariant::R2).unwrap();
            let r3 = count_classic(&s, n, ClassicVariant::R3).unwrap();
            let delta = Int::from(n % 2 == 0 && s.contains(n / 2));
            prop_assert_eq!(r1, 2 * r2 + delta);
            prop_assert_eq!(r3, r2 + delta);
            prop_assert_eq!(r1, count_weighted(&s, n, w(1, 1)).unwrap());
            prop_assert_eq!([r1, r2, r3], classic_brute(&s, n));
        }
    }
}
