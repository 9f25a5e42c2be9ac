//! Subsets of ℕ written as unions of half-open blocks.
//!
//! A [`BlockSet`] stores a strictly increasing boundary sequence
//! `t_0 < t_1 < ...`. With `leading_gap = true` the set is
//! `[t_0, t_1) ∪ [t_2, t_3) ∪ ...`; with `leading_gap = false` it is the
//! complementary phase `[0, t_0) ∪ [t_1, t_2) ∪ ...`. Equivalently, `x`
//! belongs to the set iff the number of boundaries `<= x` is odd, XOR the
//! phase is flipped.
//!
//! An optional [`TailRule`] `(a, k, i0)` extends a stored prefix to an
//! infinite sequence via `t_{i+a} = k * t_i` for `i >= i0`. The same law,
//! read backwards, gives rational boundaries at negative indices.

use crate::arith::{checked_mul, checked_pow, Int, Rational};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Scaling law `t_{i+a} = k * t_i` for `i >= i0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TailRule {
    a: u32,
    k: Int,
    i0: usize,
}

impl TailRule {
    pub fn new(a: u32, k: Int, i0: usize) -> Result<Self> {
        if a == 0 || a.is_multiple_of(2) {
            return Err(Error::InvalidTail(format!("period a = {a} must be odd")));
        }
        if k < 2 {
            return Err(Error::InvalidTail(format!("ratio k = {k} must be at least 2")));
        }
        Ok(TailRule { a, k, i0 })
    }

    pub fn period(&self) -> u32 {
        self.a
    }

    pub fn ratio(&self) -> Int {
        self.k
    }

    pub fn start(&self) -> usize {
        self.i0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    boundaries: Vec<Int>,
    tail: Option<TailRule>,
    leading_gap: bool,
}

impl BlockSet {
    pub fn new(boundaries: Vec<Int>, leading_gap: bool, tail: Option<TailRule>) -> Result<Self> {
        check_increasing(&boundaries)?;
        if let Some(rule) = tail {
            let a = rule.a as usize;
            if boundaries.len() < rule.i0 + a {
                return Err(Error::InvalidTail(format!(
                    "need at least i0 + a = {} stored boundaries, found {}",
                    rule.i0 + a,
                    boundaries.len()
                )));
            }
            for i in rule.i0..boundaries.len() - a {
                if Some(boundaries[i + a]) != boundaries[i].checked_mul(rule.k) {
                    return Err(Error::InvalidTail(format!(
                        "t_{} = {} differs from k * t_{} = {} * {}",
                        i + a,
                        boundaries[i + a],
                        i,
                        rule.k,
                        boundaries[i]
                    )));
                }
            }
            let first = boundaries[rule.i0];
            let last = boundaries[rule.i0 + a - 1];
            if first.checked_mul(rule.k).is_some_and(|v| v <= last) {
                return Err(Error::InvalidTail(format!(
                    "k * t_{0} = {1} must exceed t_{2} = {3}",
                    rule.i0,
                    rule.k * first,
                    rule.i0 + a - 1,
                    last
                )));
            }
        }
        Ok(BlockSet { boundaries, tail, leading_gap })
    }

    /// Finite set `[t_0, t_1) ∪ [t_2, t_3) ∪ ...`.
    pub fn finite(boundaries: Vec<Int>) -> Result<Self> {
        Self::new(boundaries, true, None)
    }

    pub fn empty() -> Self {
        BlockSet { boundaries: Vec::new(), tail: None, leading_gap: true }
    }

    /// All of ℕ.
    pub fn full() -> Self {
        Self::empty().complement()
    }

    /// Sorts and merges intervals; touching intervals `[a, b), [b, c)` merge.
    pub fn normalize(intervals: &[(Int, Int)]) -> Result<Self> {
        for &(lo, hi) in intervals {
            if lo < 0 || lo >= hi {
                return Err(Error::InvalidInterval { lo, hi });
            }
        }
        let mut sorted = intervals.to_vec();
        sorted.sort_unstable();
        let mut merged: Vec<(Int, Int)> = Vec::with_capacity(sorted.len());
        for (lo, hi) in sorted {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        let boundaries = merged.into_iter().flat_map(|(lo, hi)| [lo, hi]).collect();
        Self::finite(boundaries)
    }

    pub fn boundaries(&self) -> &[Int] {
        &self.boundaries
    }

    pub fn tail(&self) -> Option<TailRule> {
        self.tail
    }

    pub fn leading_gap(&self) -> bool {
        self.leading_gap
    }

    /// Same boundaries, opposite phase. The tail rule carries over.
    pub fn complement(&self) -> Self {
        BlockSet {
            boundaries: self.boundaries.clone(),
            tail: self.tail,
            leading_gap: !self.leading_gap,
        }
    }

    /// `t_i` for `i >= 0`; `None` past the end of a finite sequence.
    pub fn boundary_at(&self, i: usize) -> Result<Option<Int>> {
        if let Some(&t) = self.boundaries.get(i) {
            return Ok(Some(t));
        }
        let Some(rule) = self.tail else {
            return Ok(None);
        };
        let a = rule.a as usize;
        let len = self.boundaries.len();
        let steps = (i - len) / a + 1;
        let base = self.boundaries[i - steps * a];
        let scale = u32::try_from(steps)
            .map_err(|_| Error::Overflow("boundary"))
            .and_then(|e| checked_pow(rule.k, e))?;
        checked_mul(base, scale, "boundary").map(Some)
    }

    /// Exact `t_i` for any integer index. Indices below the lawful region
    /// use the backward extension `t_{i-a} = t_i / k`.
    pub fn boundary(&self, i: i64) -> Result<Rational> {
        let Some(rule) = self.tail else {
            return usize::try_from(i)
                .ok()
                .and_then(|j| self.boundaries.get(j).copied())
                .map(Rational::from_integer)
                .ok_or(Error::IndexOutOfRange(i));
        };
        if i >= 0 {
            let t = self.boundary_at(i as usize)?.expect("tail sets are infinite");
            return Ok(Rational::from_integer(t));
        }
        let a = rule.a as i64;
        let i0 = rule.i0 as i64;
        let steps = (i0 - i + a - 1) / a;
        let anchor = self.boundary_at((i + steps * a) as usize)?.expect("tail sets are infinite");
        let scale = u32::try_from(steps)
            .map_err(|_| Error::Overflow("boundary"))
            .and_then(|e| checked_pow(rule.k, e))?;
        Ok(Rational::new(anchor, scale))
    }

    /// Number of boundaries `<= x`.
    pub fn block_index(&self, x: Int) -> usize {
        let stored = self.boundaries.partition_point(|&t| t <= x);
        if stored < self.boundaries.len() || self.tail.is_none() {
            return stored;
        }
        let mut i = stored;
        // Overflowing boundaries are larger than any representable x.
        while let Ok(Some(t)) = self.boundary_at(i) {
            if t > x {
                break;
            }
            i += 1;
        }
        i
    }

    /// Whether the block whose left boundary has index `j` lies in the set;
    /// `j = -1` names `[0, t_0)`.
    pub fn block_in_set(&self, j: i64) -> bool {
        (j.rem_euclid(2) == 0) == self.leading_gap
    }

    pub fn contains(&self, x: Int) -> bool {
        x >= 0 && self.block_in_set(self.block_index(x) as i64 - 1)
    }

    /// Every boundary strictly below `limit`, generating the tail as needed.
    pub fn boundaries_below(&self, limit: Int) -> Result<Vec<Int>> {
        let mut out: Vec<Int> = self.boundaries.iter().copied().take_while(|&t| t < limit).collect();
        if out.len() < self.boundaries.len() || self.tail.is_none() {
            return Ok(out);
        }
        let mut i = out.len();
        loop {
            let t = self.boundary_at(i)?.expect("tail sets are infinite");
            if t >= limit {
                return Ok(out);
            }
            out.push(t);
            i += 1;
        }
    }

    /// The set intersected with `[0, limit)` as sorted disjoint intervals.
    pub fn materialize(&self, limit: Int) -> Result<Vec<(Int, Int)>> {
        let ts = self.boundaries_below(limit)?;
        Ok(intervals_from(&ts, self.leading_gap, limit))
    }

    /// Snapshot of the set on `[0, horizon)` for repeated queries.
    pub fn view(&self, horizon: Int) -> Result<BlockView> {
        let boundaries = self.boundaries_below(horizon)?;
        let intervals = intervals_from(&boundaries, self.leading_gap, horizon);
        Ok(BlockView { boundaries, intervals, leading_gap: self.leading_gap, horizon })
    }

    /// Re-anchors a tail-ruled set so the law holds from index 0, dropping
    /// `[0, t_p)` where `p` is `i0` or `i0 + 1`, whichever keeps the phase
    /// `leading_gap = true`. Sets already anchored are returned unchanged.
    pub fn truncate_to_tail(&self) -> Result<Self> {
        let rule = self.tail.ok_or(Error::NoTail)?;
        if rule.i0 == 0 {
            return Ok(self.clone());
        }
        let p = rule.i0 + usize::from((rule.i0 % 2 == 0) != self.leading_gap);
        let keep = (self.boundaries.len().saturating_sub(p)).max(rule.a as usize);
        let boundaries = (p..p + keep)
            .map(|i| self.boundary_at(i).map(|t| t.expect("tail sets are infinite")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(boundaries, true, Some(TailRule { i0: 0, ..rule }))
    }

    pub fn to_document(&self) -> SetDocument {
        SetDocument {
            boundaries: self.boundaries.iter().map(|&t| JsonInt(t)).collect(),
            leading_gap: self.leading_gap,
            tail: self.tail.map(|r| TailDocument { a: r.a, k: JsonInt(r.k), i0: r.i0 }),
        }
    }

    pub fn from_document(doc: &SetDocument) -> Result<Self> {
        let tail = match &doc.tail {
            Some(t) => Some(TailRule::new(t.a, t.k.0, t.i0)?),
            None => None,
        };
        Self::new(doc.boundaries.iter().map(|t| t.0).collect(), doc.leading_gap, tail)
    }
}

fn check_increasing(ts: &[Int]) -> Result<()> {
    if let Some(&first) = ts.first() {
        if first < 0 {
            return Err(Error::NotIncreasing { index: 0 });
        }
    }
    match ts.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(Error::NotIncreasing { index: i + 1 }),
        None => Ok(()),
    }
}

fn intervals_from(ts: &[Int], leading_gap: bool, limit: Int) -> Vec<(Int, Int)> {
    let mut out = Vec::with_capacity(ts.len() / 2 + 1);
    let mut start = if leading_gap { None } else { Some(0) };
    for &t in ts {
        match start.take() {
            Some(lo) => {
                if lo < t {
                    out.push((lo, t));
                }
            }
            None => start = Some(t),
        }
    }
    if let Some(lo) = start {
        if lo < limit {
            out.push((lo, limit));
        }
    }
    out
}

/// A [`BlockSet`] frozen on `[0, horizon)`: boundaries and intervals are
/// materialized, so membership is a binary search.
#[derive(Clone, Debug)]
pub struct BlockView {
    boundaries: Vec<Int>,
    intervals: Vec<(Int, Int)>,
    leading_gap: bool,
    horizon: Int,
}

impl BlockView {
    pub fn horizon(&self) -> Int {
        self.horizon
    }

    pub fn intervals(&self) -> &[(Int, Int)] {
        &self.intervals
    }

    pub fn boundaries(&self) -> &[Int] {
        &self.boundaries
    }

    pub fn leading_gap(&self) -> bool {
        self.leading_gap
    }

    /// Membership for `0 <= x < horizon`; false outside.
    pub fn contains(&self, x: Int) -> bool {
        if x < 0 || x >= self.horizon {
            return false;
        }
        let i = self.intervals.partition_point(|&(lo, _)| lo <= x);
        i > 0 && x < self.intervals[i - 1].1
    }

    /// Number of boundaries `<= x`, for `x < horizon`.
    pub fn block_index(&self, x: Int) -> usize {
        self.boundaries.partition_point(|&t| t <= x)
    }
}

/// Integer carried in JSON as a number when it fits in `i64`, otherwise as
/// a decimal string. Both forms are accepted on input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Signed(v) => Ok(JsonInt(v.into())),
            Raw::Unsigned(v) => Ok(JsonInt(v.into())),
            Raw::Text(s) => s.trim().parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

/// Canonical JSON form of a set:
/// `{"boundaries": [4,5,7], "leading_gap": true, "tail": {"a": 3, "k": 2, "i0": 0}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDocument {
    pub boundaries: Vec<JsonInt>,
    #[serde(default = "default_leading_gap")]
    pub leading_gap: bool,
    #[serde(default)]
    pub tail: Option<TailDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDocument {
    pub a: u32,
    pub k: JsonInt,
    #[serde(default)]
    pub i0: usize,
}

fn default_leading_gap() -> bool {
    true
}
