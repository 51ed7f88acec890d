//! Command-line front end: resolve a scenario from preset, config file,
//! and flags (later sources win), then run it or sweep over it.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qwalk::scenario::{
    find_preset, parse_axes_file, parse_coin, parse_config_file, parse_initial,
    parse_interaction, parse_mode, parse_step_list, presets, run_scenario, run_sweep,
    ConfigPatch,
};
use qwalk::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qwalk",
    version,
    about = "Simulate one- and two-particle discrete-time quantum walks on the integer line",
    after_help = "EXAMPLES:\n  \
        qwalk --preset dynloc-one-psiplus-q1p50 --out results\n  \
        qwalk --mode pair --initial psi-minus --coin1 phi:1/50 --coin2 phi:1/50 \\\n        \
        --interaction pi-phase --steps 200 --snapshot-at 100,200 --out results\n  \
        qwalk --mode single --coin1 alpha:0.5 --steps 1000 --out spreading\n  \
        qwalk run.conf --steps 500\n  \
        qwalk run.conf --sweep axes.txt --out sweep-results"
)]
struct Cli {
    /// Config file of `key = value` lines; flags override its entries.
    config: Option<PathBuf>,

    /// Start from a named preset (see --list-presets).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// Walk mode: single | pair.
    #[arg(long, value_name = "MODE")]
    mode: Option<String>,

    /// Initial pair state: sep | psi-plus | psi-minus.
    #[arg(long, value_name = "STATE")]
    initial: Option<String>,

    /// Coin for particle 1 (or the lone walker):
    /// hadamard | alpha:A[:TAU] | phi:Q/P | general:THETA:PHI1:PHI2.
    #[arg(long, value_name = "COIN")]
    coin1: Option<String>,

    /// Coin for particle 2, same grammar as --coin1 (pair mode).
    #[arg(long, value_name = "COIN")]
    coin2: Option<String>,

    /// Contact interaction: none | identity | pi-phase (pair mode).
    #[arg(long, value_name = "RULE")]
    interaction: Option<String>,

    /// Number of walk steps.
    #[arg(long, value_name = "N")]
    steps: Option<u64>,

    /// Comma-separated steps at which to write P(x,y) snapshots (pair mode).
    #[arg(long, value_name = "LIST")]
    snapshot_at: Option<String>,

    /// Record the entanglement entropy every K steps (pair mode).
    #[arg(long, value_name = "K")]
    entropy_stride: Option<u64>,

    /// Output directory for CSV/JSON artifacts.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Axes file: run the Cartesian product of its values over the
    /// resolved configuration.
    #[arg(long, value_name = "AXESFILE")]
    sweep: Option<PathBuf>,

    /// List the preset catalog and exit.
    #[arg(long)]
    list_presets: bool,
}

fn flag_patch(cli: &Cli) -> Result<ConfigPatch<f64>> {
    let mut patch = ConfigPatch::default();
    if let Some(s) = &cli.mode {
        patch.mode = Some(parse_mode(s)?);
    }
    if let Some(s) = &cli.initial {
        patch.initial = Some(parse_initial(s)?);
    }
    if let Some(s) = &cli.coin1 {
        patch.coin1 = Some(parse_coin(s)?);
    }
    if let Some(s) = &cli.coin2 {
        patch.coin2 = Some(parse_coin(s)?);
    }
    if let Some(s) = &cli.interaction {
        patch.interaction = Some(parse_interaction(s)?);
    }
    if let Some(n) = cli.steps {
        patch.steps = Some(n);
    }
    if let Some(s) = &cli.snapshot_at {
        patch.snapshot_steps = Some(parse_step_list(s)?);
    }
    if let Some(k) = cli.entropy_stride {
        patch.entropy_stride = Some(k);
    }
    if let Some(dir) = &cli.out {
        patch.output_dir = Some(dir.clone());
    }
    Ok(patch)
}

fn run(cli: &Cli) -> Result<()> {
    if cli.list_presets {
        for preset in presets::<f64>() {
            println!("{}", preset.name);
        }
        return Ok(());
    }

    let mut patch = ConfigPatch::<f64>::default();
    if let Some(name) = &cli.preset {
        let preset = find_preset::<f64>(name).ok_or_else(|| {
            Error::Config(format!("unknown preset '{name}' (use --list-presets)"))
        })?;
        patch = ConfigPatch::from_config(&preset.config);
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(Error::io(path))?;
        patch = patch.merged(parse_config_file(&text)?);
    }
    patch = patch.merged(flag_patch(cli)?);
    let config = patch.resolve()?;

    if let Some(axes_path) = &cli.sweep {
        let text = std::fs::read_to_string(axes_path).map_err(Error::io(axes_path))?;
        let axes = parse_axes_file(&text)?;
        let outcome = run_sweep(&config, &axes)?;
        println!(
            "sweep complete: {} cells, {} failed",
            outcome.cells, outcome.failures
        );
        println!("manifest: {}", outcome.manifest_path.display());
        return Ok(());
    }

    let outputs = run_scenario(&config)?;
    println!("timeseries: {}", outputs.timeseries_path.display());
    for path in &outputs.snapshot_paths {
        println!("snapshot: {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
