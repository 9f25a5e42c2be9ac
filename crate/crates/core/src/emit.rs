//! Machine-readable documents for reports.
//!
//! Integers are written as decimal strings so that consumers with 53-bit
//! or 64-bit numbers lose nothing. Rationals are written as an exact
//! `"p/q"` string next to an advisory decimal.

use crate::arith::{Int, Rational};
use crate::psilab::{PsiReport, RatioScan, SeedCandidate};
use crate::structure::{Decomposition, GSelection, MultiplicativeProfile};
use crate::witness::WitnessReport;
use serde_json::{json, Value};
use std::io::Write;

pub fn int(x: Int) -> Value {
    Value::String(x.to_string())
}

pub fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational(r: &Rational) -> Value {
    json!({ "exact": fraction(r), "decimal": *r.numer() as f64 / *r.denom() as f64 })
}

pub fn decomposition(d: &Decomposition) -> Value {
    json!({
        "n": int(d.n),
        "m": int(d.m),
        "r": int(d.r),
        "s": d.s,
        "l": d.l,
        "g": d.g,
    })
}

pub fn g_selection(sel: &GSelection) -> Value {
    json!({ "T": int(sel.threshold), "g": sel.g })
}

pub fn profile(p: &MultiplicativeProfile) -> Value {
    match *p {
        MultiplicativeProfile::Dependent { base, p, q } => {
            json!({ "dependent": true, "base": int(base), "p": p, "q": q })
        }
        MultiplicativeProfile::Independent => json!({ "dependent": false }),
    }
}

/// Witness summary; the pair list itself is not written, only its two ends.
pub fn witness_report(rep: &WitnessReport) -> Value {
    let pair = |(a1, a2): (Int, Int)| json!([int(a1), int(a2)]);
    let ends = if rep.q_range.is_empty() {
        Value::Null
    } else {
        json!({
            "first": pair(rep.pair(rep.q_range.lo)),
            "last": pair(rep.pair(rep.q_range.hi)),
        })
    };
    json!({
        "k": int(rep.k),
        "decomposition": decomposition(&rep.decomposition),
        "case": rep.case.as_str(),
        "q_range": if rep.q_range.is_empty() {
            Value::Null
        } else {
            json!({ "lo": int(rep.q_range.lo), "hi": int(rep.q_range.hi) })
        },
        "side": rep.side.as_str(),
        "pairs_checked": int(rep.pairs_checked),
        "pair_ends": ends,
        "guaranteed": rational(&rep.guaranteed),
        "g_meets_threshold": rep.g_meets_threshold,
    })
}

pub fn psi_report(rep: &PsiReport) -> Value {
    let mut doc = json!({
        "k": int(rep.k),
        "n_lo": int(rep.n_lo),
        "n_hi": int(rep.n_hi),
        "equal_count": int(rep.equal_count),
        "first_violation": rep.first_violation.map(int),
    });
    if let Some(series) = &rep.per_n {
        doc["per_n"] = series
            .iter()
            .map(|p| json!({ "n": int(p.n), "r_A": int(p.r_set), "r_comp": int(p.r_comp) }))
            .collect();
    }
    doc
}

pub fn ratio_scan(scan: &RatioScan) -> Value {
    json!({
        "k": int(scan.k),
        "n_lo": int(scan.n_lo),
        "n_hi": int(scan.n_hi),
        "stride": int(scan.stride),
        "sampled": scan.sampled(),
        "min_ratio": scan.min_ratio.as_ref().map(rational),
        "theoretical_floor": scan.theoretical_floor.as_ref().map(rational),
        "trivial_ceiling": rational(&scan.trivial_ceiling),
        "series": scan.series.iter().map(|p| json!({
            "n": int(p.n),
            "r_A": int(p.r_set),
            "r_comp": int(p.r_comp),
            "side": p.side.as_str(),
            "ratio": fraction(&p.ratio),
        })).collect::<Vec<_>>(),
    })
}

pub fn search_results(found: &[SeedCandidate]) -> Value {
    found
        .iter()
        .map(|c| {
            json!({
                "seed": c.seed.iter().copied().map(int).collect::<Vec<_>>(),
                "report": psi_report(&c.report),
            })
        })
        .collect()
}

/// Columns `n, r_A, r_comp, ratio_num, ratio_den`; the ratio is the
/// containing-side count over `n`, in lowest terms.
pub fn ratio_scan_csv<W: Write>(scan: &RatioScan, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "r_A", "r_comp", "ratio_num", "ratio_den"])?;
    for p in &scan.series {
        w.write_record([
            p.n.to_string(),
            p.r_set.to_string(),
            p.r_comp.to_string(),
            p.ratio.numer().to_string(),
            p.ratio.denom().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
