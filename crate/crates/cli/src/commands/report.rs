//! Plot-ready tables and a plain-text summary for any output directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use specgame::analysis::{ccdf, horizon_gain_map};
use specgame::experiments::{CellRow, SweepSpec, WealthSnapshotRow, CELLS_FILE, EXTREME_SIGMA, WEALTHS_FILE};
use specgame::io::{read_document, read_table, write_json, write_table, Manifest, ManifestKind};

use super::analyze::{derive, RunAnalysis, RunData, ANALYSIS_FILE};
use super::fit::{FitReport, FIT_FILE};
use super::sweep::{AblationRow, ABLATION, ABLATION_SUMMARY_FILE};
use crate::output::{emit, prepare};
use crate::ReportArgs;

pub const SUMMARY_FILE: &str = "summary.txt";

#[derive(Serialize)]
struct ReturnRow {
    t: usize,
    price: f64,
    delta_p: f64,
    log_return: Option<f64>,
}

#[derive(Serialize)]
struct OrderClassRow {
    t: u64,
    big: u32,
    medium: u32,
    small: u32,
}

#[derive(Serialize)]
struct AcfRow {
    lag: usize,
    rho: f64,
}

#[derive(Serialize)]
struct CcdfRow {
    x: f64,
    ccdf: f64,
}

#[derive(Serialize)]
struct CellCcdfRow {
    cell: usize,
    x: f64,
    ccdf: f64,
}

#[derive(Serialize)]
struct HorizonGainRow {
    horizon: u64,
    gain: i64,
    count: u64,
}

#[derive(Serialize)]
struct ActionRow {
    action: &'static str,
    count: u64,
    ratio: f64,
}

#[derive(Serialize, Deserialize)]
struct CellActionRow {
    cell: usize,
    active_hold: Option<f64>,
    passive_hold: Option<f64>,
    buy: Option<f64>,
    sell: Option<f64>,
}

/// Collects the files written into the report directory.
struct Out {
    dir: PathBuf,
    files: Vec<String>,
}

impl Out {
    fn table<T: Serialize>(&mut self, name: &str, rows: impl IntoIterator<Item = T>) -> anyhow::Result<()> {
        write_table(&self.dir.join(name), rows)?;
        self.files.push(name.into());
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> anyhow::Result<()> {
        write_json(&self.dir.join(name), value)?;
        self.files.push(name.into());
        Ok(())
    }

    fn text(&mut self, name: &str, text: &str) -> anyhow::Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        self.files.push(name.into());
        Ok(())
    }
}

pub fn report(args: &ReportArgs) -> anyhow::Result<PathBuf> {
    let source = Manifest::read(&args.dir)?;
    let out = args.out.clone().unwrap_or_else(|| args.dir.join("report"));
    let mut out = Out { dir: prepare(Some(&out), String::new)?, files: Vec::new() };

    let summary = match source.kind {
        ManifestKind::Run => report_run(&args.dir, args.acf_lag, &mut out)?,
        ManifestKind::Sweep if source.extra.contains_key(ABLATION) => report_ablation(&args.dir)?,
        ManifestKind::Sweep => report_sweep(&args.dir, &source, &mut out)?,
        ManifestKind::Fit => {
            let fit: FitReport = read_document(&args.dir.join(FIT_FILE))?;
            fit_summary_text(&fit)
        }
        ManifestKind::Analyze => {
            let a: RunAnalysis = read_document(&args.dir.join(ANALYSIS_FILE))?;
            run_summary_text(&a)
        }
        ManifestKind::Report => bail!("{} is already a report", args.dir.display()),
    };
    out.text(SUMMARY_FILE, &summary)?;
    emit(&summary);

    let mut manifest = Manifest::new(ManifestKind::Report);
    manifest.config = source.config;
    manifest.files = out.files;
    manifest.extra.insert("source".into(), args.dir.display().to_string().into());
    manifest.write(&out.dir)?;
    Ok(out.dir)
}

fn report_run(dir: &Path, acf_lag: usize, out: &mut Out) -> anyhow::Result<String> {
    let data = RunData::load(dir)?;
    let derived = derive(&data, acf_lag, 0, 0);

    out.table(
        "returns.csv",
        data.steps.iter().enumerate().map(|(i, s)| ReturnRow {
            t: i + 1,
            price: s.price,
            delta_p: s.delta_p,
            log_return: derived.returns.as_ref().and_then(|r| r.valid[i].then_some(r.values[i])),
        }),
    )?;
    out.table(
        "order_classes.csv",
        data.steps.iter().map(|s| OrderClassRow { t: s.t, big: s.big, medium: s.medium, small: s.small }),
    )?;
    if let Some(acf) = &derived.acf {
        out.table("acf.csv", acf.lags.iter().zip(&acf.rho).map(|(&lag, &rho)| AcfRow { lag, rho }))?;
    }
    let w: Vec<f64> = data.wealths.iter().map(|&w| w as f64).collect();
    out.table("wealth_ccdf.csv", ccdf(&w).into_iter().map(|(x, ccdf)| CcdfRow { x, ccdf }))?;
    let map = horizon_gain_map(&data.trades);
    out.table(
        "horizon_gain.csv",
        map.cells.iter().map(|(&(horizon, gain), &count)| HorizonGainRow { horizon, gain, count }),
    )?;
    out.table("horizon_ccdf.csv", map.horizon_ccdf().into_iter().map(|(x, ccdf)| CcdfRow { x, ccdf }))?;
    let a = &derived.analysis;
    let mut counts = [0u64; 4];
    for s in &data.steps {
        counts[0] += s.active_hold as u64;
        counts[1] += s.passive_hold as u64;
        counts[2] += s.buy as u64;
        counts[3] += s.sell as u64;
    }
    let total = counts.iter().sum::<u64>().max(1) as f64;
    out.table(
        "actions.csv",
        ["active_hold", "passive_hold", "buy", "sell"]
            .into_iter()
            .zip(counts)
            .map(|(action, count)| ActionRow { action, count, ratio: count as f64 / total }),
    )?;
    out.json(ANALYSIS_FILE, a)?;
    Ok(run_summary_text(a))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".into(), |v| format!("{v:.4}"))
}

fn run_summary_text(a: &RunAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "steps: {}  players: {}", a.n_steps, a.n_players);
    let _ = writeln!(s, "sigma of price change: {}", opt(a.sigma));
    let _ = writeln!(s, "excess kurtosis: {}", opt(a.kurtosis));
    let _ = writeln!(s, "gini of final wealth: {}", opt(a.gini));
    let _ = writeln!(s, "final price: {}", opt(a.final_price));
    let _ = writeln!(s, "round trips: {}  replacements: {}", a.n_trades, a.n_replacements);
    let _ = writeln!(s, "mean horizon: {}", opt(a.mean_horizon));
    if a.n_masked_returns > 0 {
        let _ = writeln!(s, "returns masked for non-positive prices: {}", a.n_masked_returns);
    }
    if let Some(r) = &a.actions {
        let _ = writeln!(
            s,
            "actions: active hold {:.4}, passive hold {:.4}, buy {:.4}, sell {:.4}",
            r.active_hold, r.passive_hold, r.buy, r.sell
        );
    }
    let c = &a.order_classes;
    let _ = writeln!(s, "orders: big {}, medium {}, small {}", c.big, c.medium, c.small);
    match (&a.acf_fit, a.acf_max_lag) {
        (Some(f), Some(lag)) => {
            let _ = writeln!(
                s,
                "volatility acf over lags 1..={lag}: rho = {:.4} ln(tau) + {:.4}, R^2 = {:.4}",
                f.slope, f.intercept, f.r_squared
            );
        }
        _ => {
            let _ = writeln!(s, "volatility acf: n/a");
        }
    }
    match (&a.wealth_tail, &a.wealth_tail_error) {
        (Some(f), _) => {
            let _ = writeln!(
                s,
                "wealth tail: alpha {:.4} above x_min {} ({} of {} players), vuong prefers {:?}",
                f.alpha, f.x_min, f.n_tail, f.n_samples, f.vuong_preferred
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "wealth tail: {e}");
        }
        (None, None) => {}
    }
    s
}

fn fit_summary_text(r: &FitReport) -> String {
    let f = &r.fit;
    let mut s = String::new();
    let _ = writeln!(s, "input: {} column {}", r.input, r.column);
    let _ = writeln!(s, "alpha: {:.4}", f.alpha);
    let _ = writeln!(s, "x_min: {}  tail: {} of {}", f.x_min, f.n_tail, f.n_samples);
    let _ = writeln!(s, "ks distance: {:.5}", f.ks);
    let _ = writeln!(s, "goodness of fit p: {} ({} replicates)", opt(f.p_gof), f.n_bootstrap);
    let _ = writeln!(s, "vuong: R = {:.4}, p = {:.3e}, prefers {:?}", f.vuong_lr, f.vuong_p, f.vuong_preferred);
    s
}

fn report_ablation(dir: &Path) -> anyhow::Result<String> {
    let rows: Vec<AblationRow> = read_table(&dir.join(ABLATION_SUMMARY_FILE))?;
    let mut s = String::from("mode               trials  mean sigma  acf slope  acf R^2\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<18} {:>6}  {:>10}  {:>9}  {:>7}",
            r.mode.as_str(),
            r.n_ok,
            opt(r.mean_sigma),
            opt(r.acf_slope),
            opt(r.acf_r_squared)
        );
    }
    Ok(s)
}

fn report_sweep(dir: &Path, manifest: &Manifest, out: &mut Out) -> anyhow::Result<String> {
    let cells: Vec<CellRow> = read_table(&dir.join(CELLS_FILE))?;
    let spec: Option<SweepSpec> = manifest.sweep.clone().and_then(|v| serde_json::from_value(v).ok());
    let axes: Vec<String> = spec.iter().flat_map(|s| s.axes.iter().map(|a| a.param.symbol().to_owned())).collect();

    out.table(
        "actions_by_cell.csv",
        cells.iter().map(|c| CellActionRow {
            cell: c.cell,
            active_hold: c.active_hold_ratio,
            passive_hold: c.passive_hold_ratio,
            buy: c.buy_ratio,
            sell: c.sell_ratio,
        }),
    )?;
    if manifest.files.iter().any(|f| f == WEALTHS_FILE) {
        let snapshots: Vec<WealthSnapshotRow> = read_table(&dir.join(WEALTHS_FILE))?;
        let mut pooled: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for r in snapshots {
            pooled.entry(r.cell).or_default().push(r.wealth as f64);
        }
        out.table(
            "wealth_ccdf.csv",
            pooled.iter().flat_map(|(&cell, w)| ccdf(w).into_iter().map(move |(x, ccdf)| CellCcdfRow { cell, x, ccdf })),
        )?;
    }

    let mut s = String::new();
    if axes == ["M", "B"] || axes == ["B", "M"] {
        let _ = writeln!(s, "mean sigma of price change over M x B (* marks sigma > {EXTREME_SIGMA})");
        s.push_str(&phase_grid(&cells));
    } else {
        let _ = writeln!(s, "sweep over {}", axes.join(" x "));
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "cell  {:<28} trials  sigma      kurtosis   gini    mean total wealth", "N S M B C T");
    for c in &cells {
        let params = format!(
            "{} {} {} {} {} {}",
            c.n_players, c.n_strategies, c.memory, c.board_lot, c.cognitive_threshold, c.n_steps
        );
        let _ = writeln!(
            s,
            "{:>4}  {:<28} {:>6}  {:<10} {:<10} {:<7} {}",
            c.cell,
            params,
            c.n_ok,
            opt(c.mean_sigma),
            opt(c.mean_kurtosis),
            opt(c.mean_gini),
            opt(c.mean_total_wealth)
        );
    }
    let failed: usize = cells.iter().map(|c| c.n_failed).sum();
    if failed > 0 {
        let _ = writeln!(s, "failed trials: {failed}");
    }
    Ok(s)
}

fn phase_grid(cells: &[CellRow]) -> String {
    let mut ms: Vec<u32> = cells.iter().map(|c| c.memory).collect();
    let mut bs: Vec<i64> = cells.iter().map(|c| c.board_lot).collect();
    ms.sort_unstable();
    ms.dedup();
    bs.sort_unstable();
    bs.dedup();
    let mut s = String::from("M\\B");
    for b in &bs {
        let _ = write!(s, " {b:>10}");
    }
    s.push('\n');
    for m in &ms {
        let _ = write!(s, "{m:>3}");
        for b in &bs {
            let cell = cells.iter().find(|c| c.memory == *m && c.board_lot == *b);
            let text = match cell.and_then(|c| c.mean_sigma) {
                Some(v) => format!("{v:.3}{}", if v > EXTREME_SIGMA { "*" } else { " " }),
                None => "n/a ".into(),
            };
            let _ = write!(s, " {text:>10}");
        }
        s.push('\n');
    }
    s
}
