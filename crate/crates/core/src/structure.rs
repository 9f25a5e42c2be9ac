//! Structural machinery for scaling block sets: tail detection and
//! generation, the `(T, g)` selection, the decomposition
//! `n = (k^g + 1) m + r` with `m` located on the boundary lattice
//! `{k^s t_l : s >= 0, 0 <= l < a}`, and the multiplicative dependence
//! criterion deciding when two ratios can share a set.

use crate::arith::{checked_mul, checked_pow, Int};
use crate::blockset::{BlockSet, TailRule};
use crate::error::{Error, Result};
use num_integer::{Integer, Roots};

/// `T = 4 (t_{a+2} - t_0)` and the least odd `g` with `k^g > T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GSelection {
    pub threshold: Int,
    pub g: u32,
}

/// `n = (k^g + 1) m + r`, `0 <= r <= k^g`, `k^s t_l <= m < k^s t_{l+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: Int,
    pub m: Int,
    pub r: Int,
    pub s: u32,
    pub l: u32,
    pub g: u32,
}

/// `k = d^p`, `l = d^q` with `gcd(p, q) = 1`, or independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicativeProfile {
    Dependent { base: Int, p: u32, q: u32 },
    Independent,
}

impl MultiplicativeProfile {
    pub fn is_dependent(&self) -> bool {
        matches!(self, MultiplicativeProfile::Dependent { .. })
    }
}

/// Smallest odd period `a`, then smallest start `i0`, such that every
/// checkable relation `t_{i+a} = k t_i` with `i >= i0` holds and at least
/// `a` of them are checkable.
pub fn detect_tail(boundaries: &[Int], k: Int) -> Result<Option<TailRule>> {
    if k < 2 {
        return Err(Error::InvalidRatio(k));
    }
    if boundaries.len() < 2 {
        return Err(Error::InsufficientData);
    }
    if let Some(i) = boundaries.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing { index: i + 1 });
    }
    let len = boundaries.len();
    for a in (1..len).step_by(2) {
        if 2 * a > len {
            break;
        }
        // relations i in [i0, len - a); need len - a - i0 >= a
        let holds = |i: usize| boundaries[i].checked_mul(k) == Some(boundaries[i + a]);
        // Relations that hold form a suffix-closed run from the last failure.
        let first_ok = (0..len - a).rev().take_while(|&i| holds(i)).last();
        if let Some(i0) = first_ok {
            if len - a - i0 >= a {
                return TailRule::new(a as u32, k, i0).map(Some);
            }
        }
    }
    Ok(None)
}

/// Unique increasing extension of `seed` under `t_{i+a} = k t_i`, storing
/// every boundary below `limit` (and always the full seed).
pub fn generate_from_seed(seed: &[Int], k: Int, limit: Int) -> Result<BlockSet> {
    let a = seed.len();
    if a == 0 || a.is_multiple_of(2) {
        return Err(Error::InvalidSeed(format!("seed length a = {a} must be odd")));
    }
    if k < 2 {
        return Err(Error::InvalidRatio(k));
    }
    if seed[0] < 0 || seed.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSeed("seed must be nonnegative and strictly increasing".into()));
    }
    if seed[0].checked_mul(k).is_some_and(|v| v <= seed[a - 1]) {
        return Err(Error::InvalidSeed(format!(
            "k * t_0 = {} must exceed t_{} = {}",
            k * seed[0],
            a - 1,
            seed[a - 1]
        )));
    }
    let rule = TailRule::new(a as u32, k, 0)?;
    let mut ts = seed.to_vec();
    loop {
        let next = checked_mul(ts[ts.len() - a], k, "boundary")?;
        if next >= limit {
            break;
        }
        ts.push(next);
    }
    BlockSet::new(ts, true, Some(rule))
}

fn anchored_rule(set: &BlockSet) -> Result<TailRule> {
    let rule = set.tail().ok_or(Error::NoTail)?;
    if rule.start() != 0 {
        return Err(Error::TailNotAnchored(rule.start()));
    }
    Ok(rule)
}

fn int_boundary(set: &BlockSet, i: usize) -> Result<Int> {
    Ok(set.boundary_at(i)?.expect("tail sets are infinite"))
}

pub fn select_g(set: &BlockSet) -> Result<GSelection> {
    let rule = anchored_rule(set)?;
    let a = rule.period() as usize;
    let threshold = checked_mul(4, int_boundary(set, a + 2)? - int_boundary(set, 0)?, "T")?;
    let mut g = 1u32;
    while checked_pow(rule.ratio(), g).is_ok_and(|p| p <= threshold) {
        g += 2;
    }
    Ok(GSelection { threshold, g })
}

pub fn decompose(set: &BlockSet, n: Int, g: u32) -> Result<Decomposition> {
    let rule = anchored_rule(set)?;
    if g.is_multiple_of(2) {
        return Err(Error::InvalidExponent(g));
    }
    let k = rule.ratio();
    let modulus = checked_pow(k, g)? + 1;
    let (m, r) = n.div_mod_floor(&modulus);
    let t0 = int_boundary(set, 0)?;
    if m < t0 {
        return Err(Error::BelowRange { n, m, t0 });
    }
    // k^s t_0 <= m < k^{s+1} t_0 = k^s t_a
    let mut s = 0u32;
    let mut scale: Int = 1;
    while let Some(next) = scale.checked_mul(k).filter(|&p| p.checked_mul(t0).is_some_and(|v| v <= m)) {
        scale = next;
        s += 1;
    }
    let mut l = 0u32;
    for j in 1..rule.period() as usize {
        match int_boundary(set, j)?.checked_mul(scale) {
            Some(v) if v <= m => l = j as u32,
            _ => break,
        }
    }
    Ok(Decomposition { n, m, r, s, l, g })
}

/// `(b, e)` with `x = b^e` and `e` maximal. `x >= 2`.
fn perfect_power(x: Int) -> (Int, u32) {
    let bits = 127 - x.leading_zeros();
    for e in (2..=bits).rev() {
        let b = x.nth_root(e);
        if b.checked_pow(e) == Some(x) {
            return (b, e);
        }
    }
    (x, 1)
}

pub fn multiplicative_profile(k: Int, l: Int) -> Result<MultiplicativeProfile> {
    for v in [k, l] {
        if v < 2 {
            return Err(Error::InvalidRatio(v));
        }
    }
    let (bk, ek) = perfect_power(k);
    let (bl, el) = perfect_power(l);
    if bk != bl {
        return Ok(MultiplicativeProfile::Independent);
    }
    let h = ek.gcd(&el);
    Ok(MultiplicativeProfile::Dependent { base: bk.pow(h), p: ek / h, q: el / h })
}

/// True iff `log k / log l` is a ratio of odd positive integers.
pub fn intersection_nonempty(k: Int, l: Int) -> Result<bool> {
    Ok(match multiplicative_profile(k, l)? {
        MultiplicativeProfile::Dependent { p, q, .. } => p % 2 == 1 && q % 2 == 1,
        MultiplicativeProfile::Independent => false,
    })
}
