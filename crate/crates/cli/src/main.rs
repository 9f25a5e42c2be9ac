//! `wrep`: command-line front end for weighted representation counts on
//! block sets.
//!
//! Exit status: 0 on success, 1 on a domain error (bad set, failed
//! precondition, oracle mismatch), 2 on a usage error.

mod args;
mod input;
mod output;

use anyhow::{bail, Context, Result};
use args::{Cli, Command, Format};
use clap::Parser;
use output::Emitter;
use serde_json::json;
use std::process::ExitCode;
use wrep_core::emit;
use wrep_core::psilab::{self, SeedSearch};
use wrep_core::repcount::{self, ClassicVariant};
use wrep_core::structure;
use wrep_core::witness;
use wrep_core::{BlockSet, Execution, Rational};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<usize>) -> Result<()> {
    Ok(())
}

fn exec(cli_sequential: bool) -> Execution {
    if cli_sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn ratio_of(set: &BlockSet) -> Result<i128> {
    set.tail().map(|t| t.ratio()).context("set has no tail rule")
}

fn run(cli: Cli) -> Result<()> {
    let out = Emitter::new(cli.format);
    let execution = exec(cli.sequential);
    match cli.command {
        Command::Eval { set, weights, n, check } => {
            let set = set.load()?;
            let w = weights.resolve()?;
            let count = repcount::count_weighted(&set, n, w)?;
            if check {
                let brute = repcount::count_weighted_oracle(&set, n, w);
                if brute != count {
                    bail!("fast count {count} disagrees with oracle {brute} at n = {n}");
                }
            }
            out.value(
                &json!({ "n": emit::int(n), "k1": emit::int(w.k1()), "k2": emit::int(w.k2()), "count": emit::int(count) }),
                || count.to_string(),
            )
        }
        Command::Oracle { set, weights, n } => {
            let set = set.load()?;
            let w = weights.resolve()?;
            let count = repcount::count_weighted_oracle(&set, n, w);
            out.value(
                &json!({ "n": emit::int(n), "k1": emit::int(w.k1()), "k2": emit::int(w.k2()), "count": emit::int(count) }),
                || count.to_string(),
            )
        }
        Command::Classic { set, n, variant } => {
            let set = set.load()?;
            let v = match variant {
                args::Variant::R1 => ClassicVariant::R1,
                args::Variant::R2 => ClassicVariant::R2,
                args::Variant::R3 => ClassicVariant::R3,
            };
            let count = repcount::count_classic(&set, n, v)?;
            out.value(
                &json!({ "n": emit::int(n), "variant": format!("{v:?}"), "count": emit::int(count) }),
                || count.to_string(),
            )
        }
        Command::Detect { set, boundaries, k } => {
            let ts = match (set.is_given(), boundaries) {
                (_, Some(list)) => list,
                (true, None) => set.load()?.boundaries().to_vec(),
                (false, None) => bail!("give --boundaries or a set"),
            };
            match structure::detect_tail(&ts, k)? {
                Some(rule) => out.value(
                    &json!({ "found": true, "a": rule.period(), "k": emit::int(rule.ratio()), "i0": rule.start() }),
                    || format!("a = {}, k = {}, i0 = {}", rule.period(), rule.ratio(), rule.start()),
                ),
                None => out.value(&json!({ "found": false }), || "no tail rule in the data".into()),
            }
        }
        Command::Gen { seed, k, limit } => {
            let set = structure::generate_from_seed(&seed, k, limit)?;
            out.set_document(&set)
        }
        Command::Materialize { set, limit } => {
            let set = set.load()?;
            let ivs = set.materialize(limit)?;
            let doc: Vec<_> = ivs.iter().map(|&(lo, hi)| json!([emit::int(lo), emit::int(hi)])).collect();
            out.value(&json!(doc), || {
                ivs.iter().map(|(lo, hi)| format!("[{lo}, {hi})")).collect::<Vec<_>>().join(" ")
            })
        }
        Command::Complement { set } => out.set_document(&set.load()?.complement()),
        Command::SelectG { set } => {
            let set = set.load()?.truncate_to_tail()?;
            let sel = structure::select_g(&set)?;
            out.value(&emit::g_selection(&sel), || format!("T = {}, g = {}", sel.threshold, sel.g))
        }
        Command::Decompose { set, n, g } => {
            let set = set.load()?.truncate_to_tail()?;
            let g = match g {
                Some(g) => g,
                None => structure::select_g(&set)?.g,
            };
            let d = structure::decompose(&set, n, g)?;
            let k = ratio_of(&set)?;
            out.value(&emit::decomposition(&d), || {
                format!(
                    "n = {n} = ({k}^{g} + 1) * {} + {}\nm in [{k}^{} t_{}, {k}^{} t_{})",
                    d.m,
                    d.r,
                    d.s,
                    d.l,
                    d.s,
                    d.l + 1
                )
            })
        }
        Command::Witnesses { set, n, g } => {
            let set = set.load()?.truncate_to_tail()?;
            let g = match g {
                Some(g) => g,
                None => structure::select_g(&set)?.g,
            };
            let rep = witness::enumerate_witnesses_with(&set, n, g, execution)?;
            if !rep.g_meets_threshold {
                eprintln!("warning: k^g does not exceed T for this set; the construction is not guaranteed");
            }
            out.value(&emit::witness_report(&rep), || {
                let d = &rep.decomposition;
                format!(
                    "n = {} : m = {}, r = {}, s = {}, l = {}, g = {}\ncase {} on the {} side, q in [{}, {}]\n{} pairs validated; guaranteed >= {} ({:.4})",
                    d.n,
                    d.m,
                    d.r,
                    d.s,
                    d.l,
                    d.g,
                    rep.case.as_str(),
                    rep.side.as_str(),
                    rep.q_range.lo,
                    rep.q_range.hi,
                    rep.pairs_checked,
                    emit::fraction(&rep.guaranteed),
                    decimal(&rep.guaranteed)
                )
            })
        }
        Command::VerifyPsi { set, k, n_lo, n_hi, per_n } => {
            let set = set.load()?;
            let k = k.map_or_else(|| ratio_of(&set), Ok)?;
            let rep = psilab::verify_equality_with(&set, k, n_lo, n_hi, per_n, execution)?;
            out.value(&emit::psi_report(&rep), || {
                let verdict = match rep.first_violation {
                    Some(n) => format!("first violation at n = {n}"),
                    None => "no violation".into(),
                };
                format!(
                    "r(A, n) = r(N \\ A, n) for {} of {} values in [{}, {}]; {verdict}",
                    rep.equal_count,
                    rep.n_hi - rep.n_lo + 1,
                    rep.n_lo,
                    rep.n_hi
                )
            })
        }
        Command::Scan { set, k, n_lo, n_hi, g, stride } => {
            let set = set.load()?;
            let set = if set.tail().is_some() { set.truncate_to_tail()? } else { set };
            let k = k.map_or_else(|| ratio_of(&set), Ok)?;
            let g = match g {
                Some(g) => g,
                None => structure::select_g(&set).map(|sel| sel.g).unwrap_or(1),
            };
            let scan = psilab::scan_ratio_with(&set, k, n_lo, n_hi, g, stride, execution)?;
            match cli.format {
                Format::Csv => {
                    emit::ratio_scan_csv(&scan, std::io::stdout().lock())?;
                    Ok(())
                }
                _ => out.value(&emit::ratio_scan(&scan), || {
                    let show = |r: Option<&Rational>| r.map_or("-".into(), |r| format!("{} ({:.6e})", emit::fraction(r), decimal(r)));
                    format!(
                        "{} points{}; min ratio on upper half {}; floor {}; ceiling {}",
                        scan.series.len(),
                        if scan.sampled() { " (sampled)" } else { "" },
                        show(scan.min_ratio.as_ref()),
                        show(scan.theoretical_floor.as_ref()),
                        show(Some(&scan.trivial_ceiling))
                    )
                }),
            }
        }
        Command::Search { k, a, t0_max, width_max, horizon, n_start, top } => {
            let params = SeedSearch { k, a, t0_max, width_max, horizon, n_start };
            let mut found = psilab::search_seeds_with(&params, execution)?;
            if let Some(top) = top {
                found.truncate(top);
            }
            out.value(&emit::search_results(&found), || {
                found
                    .iter()
                    .map(|c| {
                        let seed: Vec<String> = c.seed.iter().map(|t| t.to_string()).collect();
                        let v = c.report.first_violation.map_or("none".into(), |n| n.to_string());
                        format!("[{}] from n = {}: first violation {v}", seed.join(", "), c.report.n_lo)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Intersect { k, l } => {
            let profile = structure::multiplicative_profile(k, l)?;
            let nonempty = structure::intersection_nonempty(k, l)?;
            let mut doc = emit::profile(&profile);
            doc["nonempty"] = json!(nonempty);
            out.value(&doc, || if nonempty { "nonempty".into() } else { "empty".into() })
        }
    }
}

fn decimal(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
