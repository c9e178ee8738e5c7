use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use specgame::analysis::{log_fit, log_returns};
use specgame::experiments::{ablation_suite, presets, run_sweep, write_sweep, AblationArm, SweepSpec, TrialOptions};
use specgame::io::{read_document, write_table, Manifest, ManifestKind};
use specgame::{GameConfig, Mode};

use crate::output::prepare;
use crate::SweepArgs;

pub const ABLATION: &str = "ablation";
pub const ABLATION_SUMMARY_FILE: &str = "ablation_summary.csv";
pub const ABLATION_ACF_FILE: &str = "ablation_acf.csv";
pub const ABLATION_RETURNS_FILE: &str = "ablation_returns.csv";

const DEFAULT_TRIALS: usize = 20;
const DEFAULT_SEED: u64 = 1;
const ABLATION_ACF_LAG: usize = 1000;

/// Per-arm scalars of the ablation suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub mode: Mode,
    pub n_ok: usize,
    pub n_failed: usize,
    pub mean_sigma: Option<f64>,
    pub acf_slope: Option<f64>,
    pub acf_intercept: Option<f64>,
    pub acf_r_squared: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationAcfRow {
    pub mode: Mode,
    pub lag: usize,
    pub rho: f64,
}

/// Trial 0's series for each arm. `log_return` is empty where a price was
/// not positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationReturnRow {
    pub mode: Mode,
    pub t: usize,
    pub price: f64,
    pub delta_p: f64,
    pub log_return: Option<f64>,
}

pub fn sweep(args: &SweepArgs) -> anyhow::Result<PathBuf> {
    if args.preset.as_deref() == Some(ABLATION) {
        return ablation(args);
    }
    let n_trials = args.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let (mut spec, label) = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let spec: SweepSpec =
                read_document(path).with_context(|| format!("cannot load sweep spec {}", path.display()))?;
            (spec, stem(path))
        }
        (None, Some(name)) => match presets::preset(name, n_trials, seed) {
            Some(spec) => (spec, name.clone()),
            None => bail!("unknown preset `{name}` (expected {} or {ABLATION})", presets::PRESETS.join(", ")),
        },
        (None, None) => bail!("give --config or --preset"),
    };
    args.game.apply(&mut spec.base);
    if let Some(t) = args.trials {
        spec.n_trials = t;
    }
    if let Some(s) = args.seed {
        spec.base_seed = s;
    }
    spec.validate()?;

    let opts = TrialOptions {
        acf_max_lag: args.acf_lag.filter(|&l| l > 0),
        horizons: args.horizons,
        keep_wealths: args.wealths,
        keep_series: false,
    };
    let dir = prepare(args.out.as_deref(), || {
        format!("sweep-{label}-trials{}-seed{}", spec.n_trials, spec.base_seed)
    })?;
    let result = run_sweep(&spec, &opts)?;
    write_sweep(&dir, &result)?;
    Ok(dir)
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "spec".into(), |s| s.to_string_lossy().into_owned())
}

fn ablation(args: &SweepArgs) -> anyhow::Result<PathBuf> {
    let mut base = GameConfig::default();
    args.game.apply(&mut base);
    base.validate()?;
    let n_trials = args.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let max_lag = args.acf_lag.unwrap_or(ABLATION_ACF_LAG);
    if max_lag == 0 {
        bail!("the ablation suite needs --acf-lag of at least 1");
    }
    let opts = TrialOptions { acf_max_lag: Some(max_lag), horizons: false, keep_wealths: false, keep_series: true };
    let dir = prepare(args.out.as_deref(), || format!("sweep-{ABLATION}-trials{n_trials}-seed{seed}"))?;
    let arms = ablation_suite(&base, n_trials, seed, &opts)?;

    write_table(&dir.join(ABLATION_SUMMARY_FILE), arms.iter().map(summary_row))?;
    write_table(
        &dir.join(ABLATION_ACF_FILE),
        arms.iter().flat_map(|arm| {
            let rho = arm.trials.mean_acf().unwrap_or_default();
            rho.into_iter().enumerate().map(move |(k, rho)| AblationAcfRow { mode: arm.mode, lag: k + 1, rho })
        }),
    )?;
    let mut returns = Vec::new();
    for arm in &arms {
        let Some(stats) = arm.trials.trials[0].stats() else { continue };
        let (Some(prices), Some(dp)) = (&stats.prices, &stats.delta_p) else { continue };
        let r = log_returns(prices)?;
        for (t, &d) in dp.iter().enumerate() {
            returns.push(AblationReturnRow {
                mode: arm.mode,
                t: t + 1,
                price: prices[t + 1],
                delta_p: d,
                log_return: r.valid[t].then_some(r.values[t]),
            });
        }
    }
    write_table(&dir.join(ABLATION_RETURNS_FILE), returns)?;

    let mut manifest = Manifest::new(ManifestKind::Sweep);
    manifest.config = Some(base);
    manifest.files = [ABLATION_SUMMARY_FILE, ABLATION_ACF_FILE, ABLATION_RETURNS_FILE].map(String::from).to_vec();
    manifest.extra.insert(ABLATION.into(), serde_json::json!({ "n_trials": n_trials, "base_seed": seed }));
    manifest.extra.insert("trial_options".into(), serde_json::to_value(&opts)?);
    manifest.write(&dir)?;
    Ok(dir)
}

fn summary_row(arm: &AblationArm) -> AblationRow {
    let sigmas: Vec<f64> = arm.trials.ok().filter_map(|s| s.sigma).collect();
    let fit = arm.trials.mean_acf().and_then(|rho| {
        let lags: Vec<usize> = (1..=rho.len()).collect();
        log_fit(&lags, &rho, 1, rho.len()).ok()
    });
    AblationRow {
        mode: arm.mode,
        n_ok: arm.trials.trials.len() - arm.trials.n_failed(),
        n_failed: arm.trials.n_failed(),
        mean_sigma: (!sigmas.is_empty()).then(|| sigmas.iter().sum::<f64>() / sigmas.len() as f64),
        acf_slope: fit.map(|f| f.slope),
        acf_intercept: fit.map(|f| f.intercept),
        acf_r_squared: fit.map(|f| f.r_squared),
    }
}
