//! Finite-horizon experiments: does `r_{1,k}(A, n) = r_{1,k}(ℕ \ A, n)`
//! hold on a range of `n`, how does `r / n` behave against the guaranteed
//! floor and the trivial ceiling `1/k`, and which scaling seeds survive
//! longest. Reports only ever describe the range that was checked.

use crate::arith::{checked_pow, Int, Rational};
use crate::blockset::{BlockSet, BlockView};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::repcount::{count_on_view, WeightPair};
use crate::structure::{decompose, generate_from_seed};
use crate::witness::{containing_side, Side};

const CHUNK: Int = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiPoint {
    pub n: Int,
    pub r_set: Int,
    pub r_comp: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub k: Int,
    pub n_lo: Int,
    pub n_hi: Int,
    pub equal_count: Int,
    pub first_violation: Option<Int>,
    pub per_n: Option<Vec<PsiPoint>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioPoint {
    pub n: Int,
    pub r_set: Int,
    pub r_comp: Int,
    pub side: Side,
    /// `r_side / n`.
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioScan {
    pub k: Int,
    pub n_lo: Int,
    pub n_hi: Int,
    pub stride: Int,
    pub series: Vec<RatioPoint>,
    /// Minimum ratio over sampled `n` in `[ceil((n_lo + n_hi) / 2), n_hi]`.
    pub min_ratio: Option<Rational>,
    /// `1 / (k^5 t_a (k^g + 2))`, present for tail-ruled sets.
    pub theoretical_floor: Option<Rational>,
    pub trivial_ceiling: Rational,
}

impl RatioScan {
    pub fn sampled(&self) -> bool {
        self.stride > 1
    }
}

fn check_range(lo: Int, hi: Int) -> Result<()> {
    if lo < 0 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(())
}

fn views(set: &BlockSet, n_hi: Int) -> Result<(BlockView, BlockView)> {
    Ok((set.view(n_hi + 1)?, set.complement().view(n_hi + 1)?))
}

pub fn verify_equality(set: &BlockSet, k: Int, n_lo: Int, n_hi: Int) -> Result<PsiReport> {
    verify_equality_with(set, k, n_lo, n_hi, true, Execution::default())
}

pub fn verify_equality_with(
    set: &BlockSet,
    k: Int,
    n_lo: Int,
    n_hi: Int,
    keep_series: bool,
    exec: Execution,
) -> Result<PsiReport> {
    check_range(n_lo, n_hi)?;
    if k < 2 {
        return Err(Error::InvalidRatio(k));
    }
    let w = WeightPair::unit_first(k)?;
    let (va, vc) = views(set, n_hi)?;
    let parts = exec::chunks(n_lo, n_hi, CHUNK);
    let chunks = exec::try_map(exec, &parts, |&(lo, hi)| -> Result<(Int, Option<Int>, Vec<PsiPoint>)> {
        let mut equal = 0;
        let mut first = None;
        let mut series = Vec::new();
        for n in lo..=hi {
            let r_set = count_on_view(&va, n, w)?;
            let r_comp = count_on_view(&vc, n, w)?;
            if r_set == r_comp {
                equal += 1;
            } else if first.is_none() {
                first = Some(n);
            }
            if keep_series {
                series.push(PsiPoint { n, r_set, r_comp });
            }
        }
        Ok((equal, first, series))
    })?;

    let mut report = PsiReport {
        k,
        n_lo,
        n_hi,
        equal_count: 0,
        first_violation: None,
        per_n: keep_series.then(Vec::new),
    };
    for (equal, first, series) in chunks {
        report.equal_count += equal;
        report.first_violation = report.first_violation.or(first);
        if let Some(all) = report.per_n.as_mut() {
            all.extend(series);
        }
    }
    Ok(report)
}

/// Side used for the ratio at `n`: the containing side of the block hosting
/// `m` when the set is an anchored scaling set and `n` decomposes, else the
/// set itself.
fn side_for(set: &BlockSet, n: Int, g: u32) -> Side {
    decompose(set, n, g)
        .and_then(|d| containing_side(set, d.s, d.l))
        .unwrap_or(Side::Set)
}

pub fn scan_ratio(set: &BlockSet, k: Int, n_lo: Int, n_hi: Int, g: u32, stride: Int) -> Result<RatioScan> {
    scan_ratio_with(set, k, n_lo, n_hi, g, stride, Execution::default())
}

pub fn scan_ratio_with(
    set: &BlockSet,
    k: Int,
    n_lo: Int,
    n_hi: Int,
    g: u32,
    stride: Int,
    exec: Execution,
) -> Result<RatioScan> {
    check_range(n_lo, n_hi)?;
    if n_lo < 1 || stride < 1 {
        return Err(Error::InvalidRange { lo: n_lo, hi: n_hi });
    }
    if k < 2 {
        return Err(Error::InvalidRatio(k));
    }
    let w = WeightPair::unit_first(k)?;
    let (va, vc) = views(set, n_hi)?;

    let mut ns: Vec<Int> = (0..).map(|i| n_lo + i * stride).take_while(|&n| n <= n_hi).collect();
    if ns.last() != Some(&n_hi) {
        ns.push(n_hi);
    }
    let series = exec::try_map(exec, &ns, |&n| -> Result<RatioPoint> {
        let r_set = count_on_view(&va, n, w)?;
        let r_comp = count_on_view(&vc, n, w)?;
        let side = side_for(set, n, g);
        let r = if side == Side::Set { r_set } else { r_comp };
        Ok(RatioPoint { n, r_set, r_comp, side, ratio: Rational::new(r, n) })
    })?;

    let window_start = (n_lo + n_hi + 1) / 2;
    let min_ratio = series.iter().filter(|p| p.n >= window_start).map(|p| p.ratio).min();
    let theoretical_floor = match set.tail() {
        Some(rule) if rule.start() == 0 => {
            let kk = rule.ratio();
            let t0 = set.boundary_at(0)?.expect("tail sets are infinite");
            let denom = checked_pow(kk, 6)?
                .checked_mul(t0)
                .and_then(|v| v.checked_mul(checked_pow(kk, g).ok()? + 2))
                .ok_or(Error::Overflow("floor"))?;
            Some(Rational::new(1, denom))
        }
        _ => None,
    };
    Ok(RatioScan {
        k,
        n_lo,
        n_hi,
        stride,
        series,
        min_ratio,
        theoretical_floor,
        trivial_ceiling: Rational::new(1, k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSearch {
    pub k: Int,
    pub a: u32,
    pub t0_max: Int,
    pub width_max: Int,
    pub horizon: Int,
    /// First `n` checked; defaults to `t_{a+2}` of each candidate, clamped
    /// to `horizon`.
    pub n_start: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedCandidate {
    pub seed: Vec<Int>,
    pub report: PsiReport,
}

/// All seeds `t_0 < ... < t_{a-1}` with `1 <= t_0 <= t0_max`,
/// `t_{a-1} - t_0 <= width_max` and `k t_0 > t_{a-1}`, in lexicographic order.
pub fn enumerate_seeds(k: Int, a: u32, t0_max: Int, width_max: Int) -> Vec<Vec<Int>> {
    fn extend(prefix: &mut Vec<Int>, left: u32, cap: Int, out: &mut Vec<Vec<Int>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        let last = *prefix.last().expect("prefix starts with t0");
        // leave room for the remaining strictly larger entries
        for next in last + 1..=cap - Int::from(left - 1) {
            prefix.push(next);
            extend(prefix, left - 1, cap, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for t0 in 1..=t0_max {
        let cap = (t0 + width_max).min(k * t0 - 1);
        extend(&mut vec![t0], a.saturating_sub(1), cap, &mut out);
    }
    out
}

pub fn search_seeds(params: &SeedSearch) -> Result<Vec<SeedCandidate>> {
    search_seeds_with(params, Execution::default())
}

/// Candidates ranked: no violation first, then latest first violation;
/// ties broken by the seed.
pub fn search_seeds_with(params: &SeedSearch, exec: Execution) -> Result<Vec<SeedCandidate>> {
    if params.a.is_multiple_of(2) {
        return Err(Error::InvalidSeed(format!("period a = {} must be odd", params.a)));
    }
    if params.k < 2 {
        return Err(Error::InvalidRatio(params.k));
    }
    let seeds = enumerate_seeds(params.k, params.a, params.t0_max, params.width_max);
    let mut found = exec::try_map(exec, &seeds, |seed| -> Result<SeedCandidate> {
        let set = generate_from_seed(seed, params.k, params.horizon + 1)?;
        let start = match params.n_start {
            Some(n) => n,
            None => set.boundary_at(params.a as usize + 2)?.expect("tail sets are infinite"),
        };
        let report =
            verify_equality_with(&set, params.k, start.min(params.horizon), params.horizon, false, Execution::Sequential)?;
        Ok(SeedCandidate { seed: seed.clone(), report })
    })?;
    found.sort_by(|x, y| {
        let key = |c: &SeedCandidate| (c.report.first_violation.is_some(), std::cmp::Reverse(c.report.first_violation));
        key(x).cmp(&key(y)).then_with(|| x.seed.cmp(&y.seed))
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> BlockSet {
        generate_from_seed(&[4, 5, 7], 2, 100).unwrap()
    }

    #[test]
    fn full_and_empty_fail_at_once() {
        let full = BlockSet::normalize(&[(0, 1000)]).unwrap();
        let rep = verify_equality(&full, 2, 10, 20).unwrap();
        assert_eq!(rep.first_violation, Some(10));
        assert_eq!(rep.equal_count, 0);
        let rep = verify_equality(&BlockSet::empty(), 2, 0, 20).unwrap();
        assert_eq!(rep.first_violation, Some(0));
        for p in rep.per_n.unwrap() {
            assert_eq!((p.r_set, p.r_comp), (0, p.n / 2 + 1));
        }
    }

    #[test]
    fn complement_swaps_series() {
        let s = s1();
        let a = verify_equality(&s, 2, 100, 600).unwrap();
        let b = verify_equality(&s.complement(), 2, 100, 600).unwrap();
        assert_eq!(a.first_violation, b.first_violation);
        assert_eq!(a.equal_count, b.equal_count);
        let swapped: Vec<_> = b.per_n.unwrap().iter().map(|p| PsiPoint { n: p.n, r_set: p.r_comp, r_comp: p.r_set }).collect();
        assert_eq!(a.per_n.unwrap(), swapped);
    }

    #[test]
    fn violation_bookkeeping() {
        let rep = verify_equality(&s1(), 2, 100, 2000).unwrap();
        let per_n = rep.per_n.as_ref().unwrap();
        assert_eq!(per_n.len(), 1901);
        let eq = per_n.iter().filter(|p| p.r_set == p.r_comp).count() as Int;
        assert_eq!(eq, rep.equal_count);
        assert_eq!(rep.first_violation, per_n.iter().find(|p| p.r_set != p.r_comp).map(|p| p.n));
        assert_eq!(rep.first_violation.is_none(), rep.equal_count == 1901);
        for p in per_n {
            assert!(p.r_set <= p.n / 2 + 1 && p.r_comp <= p.n / 2 + 1);
        }
    }

    #[test]
    fn strategies_agree() {
        let s = s1();
        let a = verify_equality_with(&s, 2, 0, 9000, true, Execution::Sequential).unwrap();
        let b = verify_equality_with(&s, 2, 0, 9000, true, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let a = scan_ratio_with(&s, 2, 1000, 200_000, 7, 997, Execution::Sequential).unwrap();
        let b = scan_ratio_with(&s, 2, 1000, 200_000, 7, 997, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ratio_of_full_set() {
        let full = BlockSet::normalize(&[(0, 100_000)]).unwrap();
        let scan = scan_ratio(&full, 2, 1, 5000, 7, 1).unwrap();
        assert!(!scan.sampled());
        assert_eq!(scan.theoretical_floor, None);
        for p in &scan.series {
            assert_eq!(p.ratio, Rational::new(p.n / 2 + 1, p.n));
            assert!(p.ratio >= Rational::new(1, 2));
            assert!(p.ratio <= Rational::new(1, 2) + Rational::new(1, p.n));
        }
        assert_eq!(scan.min_ratio, Some(Rational::new(2500, 4999)));
    }

    #[test]
    fn ratio_scan_brackets() {
        let s = s1();
        let scan = scan_ratio(&s, 2, 10_000_000, 12_000_000, 7, 100_003).unwrap();
        assert!(scan.sampled());
        assert_eq!(scan.series.last().unwrap().n, 12_000_000);
        assert_eq!(scan.theoretical_floor, Some(Rational::new(1, 33_280)));
        assert_eq!(scan.trivial_ceiling, Rational::new(1, 2));
        for p in &scan.series {
            let floor = (Rational::new(1, 33_280) - Rational::new(129, p.n)).max(Rational::from_integer(0));
            assert!(p.ratio >= floor, "n = {}", p.n);
            assert!(p.ratio <= Rational::new(p.n / 2 + 1, p.n));
        }
        assert!(scan.min_ratio.unwrap() > Rational::from_integer(0));
    }

    #[test]
    fn seed_enumeration() {
        let seeds = enumerate_seeds(2, 1, 8, 0);
        assert_eq!(seeds, (1..=8).map(|t| vec![t]).collect::<Vec<_>>());
        let seeds = enumerate_seeds(2, 3, 4, 3);
        assert!(seeds.contains(&vec![4, 5, 7]));
        assert!(!seeds.contains(&vec![1, 2, 3]));
        for s in &seeds {
            assert!(2 * s[0] > s[2] && s[2] - s[0] <= 3 && s[0] < s[1] && s[1] < s[2]);
        }
        // brute force over the box
        let mut brute = Vec::new();
        for t0 in 1..=4 {
            for t1 in t0 + 1..=t0 + 3 {
                for t2 in t1 + 1..=t0 + 3 {
                    if 2 * t0 > t2 {
                        brute.push(vec![t0, t1, t2]);
                    }
                }
            }
        }
        assert_eq!(seeds, brute);
    }

    #[test]
    fn search_ranks_deterministically() {
        let params = SeedSearch { k: 2, a: 1, t0_max: 8, width_max: 0, horizon: 3000, n_start: None };
        let a = search_seeds_with(&params, Execution::Sequential).unwrap();
        let b = search_seeds_with(&params, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        for w in a.windows(2) {
            let (x, y) = (&w[0].report, &w[1].report);
            match (x.first_violation, y.first_violation) {
                (Some(_), None) => panic!("unviolated seeds must come first"),
                (Some(p), Some(q)) => assert!(p >= q),
                _ => {}
            }
        }
        assert_eq!(a[0].report.n_lo.min(3000), a[0].report.n_lo);

        let params = SeedSearch { k: 2, a: 3, t0_max: 4, width_max: 3, horizon: 500, n_start: Some(50) };
        let found = search_seeds(&params).unwrap();
        assert!(found.iter().any(|c| c.seed == vec![4, 5, 7]));
        assert!(found.iter().all(|c| c.report.n_lo == 50));
    }
}
