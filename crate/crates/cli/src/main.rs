//! Command-line front end: schedule files in and out, gate verification
//! reports, Deutsch-Jozsa sweeps, rotating-wave validation sweeps, and trap
//! frequency tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod schedule_file;

use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use etrap::gates::{self, verify_recipe};
use etrap::hamiltonian::{rwa_sweep, StepPolicy};
use etrap::hilbert::{leakage, SpaceConfig, StateVector, COMP_DIM};
use etrap::oracle::{run_dj, sample_measurement, BoolFn3, FnClass};
use etrap::pulses::{run_schedule, LambDicke};
use etrap::trapcalc::{frequencies_from, free_space_wavenumber, physical_eta, TrapParameters};

use schedule_file::ScheduleFile;

#[derive(Parser)]
#[command(
    name = "etrap",
    about = "Pulse-level simulator and gate compiler for a trapped-electron three-qubit system",
    version
)]
struct Cli {
    /// Simulation context as comma-separated pairs, e.g. "n_cyc=6,n_ax=6,eta=2"
    #[arg(long, global = true)]
    config: Option<String>,

    /// Emit JSON instead of tables
    #[arg(long, global = true)]
    machine_readable: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a schedule file on an initial state and report the outcome
    Simulate(SimulateArgs),
    /// Verify every catalog gate against its ideal target
    VerifyGates,
    /// Run the Deutsch-Jozsa protocol for one function or all 72
    Dj(DjArgs),
    /// Compare the integrated spin-axial drive against the analytic pulse
    RwaSweep(RwaArgs),
    /// Print the trap frequency table for physical parameters
    Trap(TrapArgs),
    /// Write a catalog gate's pulse schedule to a file
    ExportGate(ExportArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Schedule file (JSON)
    schedule: PathBuf,
    /// Initial computational state label, e.g. "|101>" or "101"
    #[arg(long, default_value = "|000>", conflicts_with = "amplitudes")]
    init: String,
    /// JSON file with D complex amplitudes as [re, im] pairs
    #[arg(long)]
    amplitudes: Option<PathBuf>,
}

#[derive(Args)]
struct DjArgs {
    /// Function selector: two hex digits ("0F") or 8 bits ("00001111")
    #[arg(required_unless_present = "all")]
    selector: Option<String>,
    /// Run all 72 constant/balanced functions and print a summary
    #[arg(long)]
    all: bool,
    /// Sample projective readout with this many shots
    #[arg(long)]
    shots: Option<u64>,
    /// Seed for the measurement sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RwaArgs {
    /// Comma-separated Ω/ω_z ratios
    #[arg(long, default_value = "1e-1,1e-2,1e-3")]
    ratios: String,
    /// Lamb-Dicke parameter of the sweep drive
    #[arg(long, default_value_t = 0.5)]
    sweep_eta: f64,
    /// Target l = 0 rotation angle, rad
    #[arg(long, default_value_t = PI / 2.0)]
    theta: f64,
    /// Axial truncation for the integration
    #[arg(long, default_value_t = 8)]
    n_ax: usize,
    /// Integrator steps per period of the fastest frequency
    #[arg(long, default_value_t = 200.0)]
    steps_per_cycle: f64,
}

#[derive(Args)]
struct TrapArgs {
    /// Magnetic field, T
    #[arg(long, default_value_t = 5.3)]
    b_field: f64,
    /// Electrode potential, V
    #[arg(long, default_value_t = 10.0)]
    v0: f64,
    /// Characteristic trap length, m
    #[arg(long, default_value_t = 3.3e-3)]
    trap_d: f64,
    /// Traveling-wave wavenumber for the physical Lamb-Dicke parameter,
    /// 1/m; defaults to the free-space value at the sideband frequency
    #[arg(long)]
    wavenumber: Option<f64>,
}

#[derive(Args)]
struct ExportArgs {
    /// Catalog gate name (see --list)
    #[arg(required_unless_present = "list")]
    name: Option<String>,
    /// Output path; defaults to "<name>.pulses.json"
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// List catalog gate names
    #[arg(long)]
    list: bool,
}

/// Input errors exit with 2; verification failures return Ok(1).
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Simulate(args) => cmd_simulate(cli, args),
        Command::VerifyGates => cmd_verify_gates(cli),
        Command::Dj(args) => cmd_dj(cli, args),
        Command::RwaSweep(args) => cmd_rwa_sweep(cli, args),
        Command::Trap(args) => cmd_trap(cli, args),
        Command::ExportGate(args) => cmd_export_gate(cli, args),
    }
}

fn parse_config(text: &str) -> anyhow::Result<(SpaceConfig, LambDicke)> {
    let (mut n_cyc, mut n_ax, mut eta) = (6usize, 6usize, 2.0f64);
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in --config, got {part:?}"))?;
        match key.trim() {
            "n_cyc" => n_cyc = value.trim().parse().context("n_cyc")?,
            "n_ax" => n_ax = value.trim().parse().context("n_ax")?,
            "eta" => eta = value.trim().parse().context("eta")?,
            other => bail!("unknown --config key {other:?} (expected n_cyc, n_ax, eta)"),
        }
    }
    Ok((SpaceConfig::new(n_cyc, n_ax)?, LambDicke::new(eta)?))
}

fn context_from(cli: &Cli) -> anyhow::Result<(SpaceConfig, LambDicke)> {
    parse_config(cli.config.as_deref().unwrap_or(""))
}

fn state_label(c: usize) -> String {
    format!("{}{}{}", (c >> 2) & 1, (c >> 1) & 1, c & 1)
}

fn parse_state_label(text: &str) -> anyhow::Result<usize> {
    let inner = text.trim().trim_start_matches('|').trim_end_matches('>');
    if inner.len() != 3 || !inner.chars().all(|ch| ch == '0' || ch == '1') {
        bail!("initial state must be three bits like \"|101>\", got {text:?}");
    }
    Ok(usize::from_str_radix(inner, 2).unwrap())
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> anyhow::Result<u8> {
    let text = fs::read_to_string(&args.schedule)
        .with_context(|| format!("reading {}", args.schedule.display()))?;
    let file = ScheduleFile::parse(&text)?;
    // an explicit --config overrides the file's embedded context
    let (cfg, eta) = match &cli.config {
        Some(text) => parse_config(text)?,
        None => file.context()?,
    };
    let schedule = file.schedule()?;
    if schedule.is_empty() {
        bail!("schedule has no pulses");
    }

    let initial = match &args.amplitudes {
        Some(path) => {
            let raw =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let pairs: Vec<[f64; 2]> = serde_json::from_str(&raw)
                .context("amplitude file must be a JSON array of [re, im] pairs")?;
            if pairs.len() != cfg.dim() {
                bail!(
                    "amplitude file has {} entries, expected D = {}",
                    pairs.len(),
                    cfg.dim()
                );
            }
            let amps = pairs
                .iter()
                .map(|p| num_complex::Complex64::new(p[0], p[1]))
                .collect();
            StateVector::from_amplitudes(amps, 1e-9)?
        }
        None => StateVector::computational(&cfg, parse_state_label(&args.init)?),
    };

    let run = run_schedule(&initial, &schedule, eta, &cfg);
    let probs = run.final_state.computational_probabilities(&cfg);
    let leak = leakage(&run.final_state, &cfg);
    let indices = cfg.computational_indices();

    if cli.machine_readable {
        let mut prob_map = serde_json::Map::new();
        let mut amp_map = serde_json::Map::new();
        for c in 0..COMP_DIM {
            let a = run.final_state.amplitude(indices[c]);
            prob_map.insert(state_label(c), json!(probs[c]));
            amp_map.insert(state_label(c), json!([a.re, a.im]));
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "schedule": schedule.name(),
                "pulses": schedule.len(),
                "probabilities": prob_map,
                "amplitudes": amp_map,
                "leakage": leak,
                "boundary_max": run.boundary_max,
                "boundary_warning": run.boundary_max > etrap::pulses::BOUNDARY_WARN,
            }))?
        );
    } else {
        println!("schedule {} ({} pulses)", schedule.name(), schedule.len());
        println!("state   probability   phase/rad");
        for c in 0..COMP_DIM {
            let a = run.final_state.amplitude(indices[c]);
            let phase = if probs[c] > 1e-12 { a.arg() } else { 0.0 };
            println!("|{}>   {:>11.9}   {:>+9.5}", state_label(c), probs[c], phase);
        }
        println!("leakage             {leak:.3e}");
        println!("boundary diagnostic {:.3e}", run.boundary_max);
    }
    if run.boundary_max > etrap::pulses::BOUNDARY_WARN {
        eprintln!(
            "warning: boundary population {:.3e} exceeds {:.0e}; the truncation may be too tight for this schedule",
            run.boundary_max,
            etrap::pulses::BOUNDARY_WARN
        );
    }
    Ok(0)
}

fn cmd_verify_gates(cli: &Cli) -> anyhow::Result<u8> {
    let (cfg, eta) = context_from(cli)?;
    let mut all_pass = true;
    let mut rows = Vec::new();
    for recipe in gates::catalog(&cfg, eta) {
        let report = verify_recipe(&recipe, eta, &cfg);
        all_pass &= report.pass;
        rows.push(report);
    }
    if cli.machine_readable {
        let out: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "pulses": r.pulse_count,
                    "fidelity": r.fidelity,
                    "infidelity": 1.0 - r.fidelity,
                    "leakage": r.leakage,
                    "boundary_max": r.boundary,
                    "pass": r.pass,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!(
            "{:<12} {:>7} {:>18} {:>12} {:>12}  result",
            "gate", "pulses", "fidelity", "leakage", "boundary"
        );
        for r in &rows {
            println!(
                "{:<12} {:>7} {:>18.15} {:>12.3e} {:>12.3e}  {}",
                r.name,
                r.pulse_count,
                r.fidelity,
                r.leakage,
                r.boundary,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_dj(cli: &Cli, args: &DjArgs) -> anyhow::Result<u8> {
    let (cfg, eta) = context_from(cli)?;
    if args.all {
        let mut rows = Vec::new();
        let mut misclassified = 0usize;
        let mut constant = 0usize;
        let mut balanced = 0usize;
        for f in BoolFn3::all_constant_and_balanced() {
            let result = run_dj(&f, eta, &cfg)?;
            if result.classification != f.classify() {
                misclassified += 1;
            }
            match f.classify() {
                FnClass::Constant => constant += 1,
                FnClass::Balanced => balanced += 1,
                FnClass::Other => unreachable!(),
            }
            rows.push(result);
        }
        if cli.machine_readable {
            let out: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "function": r.hex_index,
                        "classification": r.classification.to_string(),
                        "p000": r.p000(),
                        "leakage": r.leakage,
                        "pulses": r.pulse_count,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "results": out,
                    "constant": constant,
                    "balanced": balanced,
                    "misclassified": misclassified,
                }))?
            );
        } else {
            println!(
                "{:<10} {:<10} {:>14} {:>12} {:>7}",
                "function", "class", "P(000)", "leakage", "pulses"
            );
            for r in &rows {
                println!(
                    "f_{:<8} {:<10} {:>14.9} {:>12.3e} {:>7}",
                    r.hex_index,
                    r.classification.to_string(),
                    r.p000(),
                    r.leakage,
                    r.pulse_count
                );
            }
            println!(
                "summary: {constant} constant / {balanced} balanced / {misclassified} misclassified"
            );
        }
        return Ok(if misclassified == 0 { 0 } else { 1 });
    }

    let selector = args.selector.as_deref().expect("clap enforces presence");
    let f = BoolFn3::parse(selector)?;
    if f.classify() == FnClass::Other {
        bail!(
            "f_{} has weight {}: neither constant (0 or 8) nor balanced (4)",
            f.hex_index(),
            f.weight()
        );
    }
    let result = run_dj(&f, eta, &cfg)?;
    let counts = match args.shots {
        Some(shots) => Some(sample_measurement(&result.probabilities, args.seed, shots)?),
        None => None,
    };
    if cli.machine_readable {
        let mut doc = json!({
            "function": result.hex_index,
            "classification": result.classification.to_string(),
            "p000": result.p000(),
            "probabilities": result.probabilities.to_vec(),
            "leakage": result.leakage,
            "boundary_max": result.boundary_max,
            "pulses": result.pulse_count,
        });
        if let Some(counts) = counts {
            doc["counts"] = json!(counts.to_vec());
            doc["seed"] = json!(args.seed);
        }
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "f_{}: {} (P(000) = {:.9}, leakage {:.3e}, {} pulses)",
            result.hex_index,
            result.classification,
            result.p000(),
            result.leakage,
            result.pulse_count
        );
        if let Some(counts) = counts {
            for (c, &n) in counts.iter().take(COMP_DIM).enumerate() {
                if n > 0 {
                    println!("  |{}>  {n}", state_label(c));
                }
            }
            if counts[COMP_DIM] > 0 {
                println!("  leaked {}", counts[COMP_DIM]);
            }
        }
    }
    Ok(0)
}

fn cmd_rwa_sweep(cli: &Cli, args: &RwaArgs) -> anyhow::Result<u8> {
    let ratios: Vec<f64> = args
        .ratios
        .split(',')
        .map(|s| s.trim().parse::<f64>().context("ratio list"))
        .collect::<anyhow::Result<_>>()?;
    if ratios.is_empty() {
        bail!("need at least one ratio");
    }
    let cfg = SpaceConfig::new(2, args.n_ax)?;
    let eta = LambDicke::new(args.sweep_eta)?;
    let policy = StepPolicy::with_steps_per_cycle(args.steps_per_cycle);
    let points = rwa_sweep(&ratios, eta, args.theta, &policy, &cfg)?;
    if cli.machine_readable {
        let out: Vec<_> = points
            .iter()
            .map(|p| json!({"ratio": p.ratio, "angle_error": p.angle_error, "duration": p.duration}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("# ratio      angle_error_rad");
        for p in &points {
            println!("{:<12.6e} {:.6e}", p.ratio, p.angle_error);
        }
    }
    Ok(0)
}

fn cmd_trap(cli: &Cli, args: &TrapArgs) -> anyhow::Result<u8> {
    let params = TrapParameters::new(args.b_field, args.v0, args.trap_d)?;
    let freqs = frequencies_from(&params)?;
    let k = args
        .wavenumber
        .unwrap_or_else(|| free_space_wavenumber(&freqs));
    let eta_phys = physical_eta(&freqs, k);
    if cli.machine_readable {
        let mut table = serde_json::Map::new();
        for (name, value) in freqs.entries() {
            table.insert(
                name.to_string(),
                json!({"rad_per_s": value, "hz": value / TAU}),
            );
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "frequencies": table,
                "wavenumber": k,
                "physical_eta": eta_phys,
            }))?
        );
    } else {
        println!("{:<16} {:>16} {:>16}", "frequency", "rad/s", "Hz");
        for (name, value) in freqs.entries() {
            println!("{:<16} {:>16.6e} {:>16.6e}", name, value, value / TAU);
        }
        println!();
        println!("wavenumber k = {k:.6e} 1/m");
        println!(
            "physical eta = {eta_phys:.6e} (informational; gate sequences use the configured eta, default 2)"
        );
    }
    Ok(0)
}

fn cmd_export_gate(cli: &Cli, args: &ExportArgs) -> anyhow::Result<u8> {
    let (cfg, eta) = context_from(cli)?;
    if args.list {
        for recipe in gates::catalog(&cfg, eta) {
            println!("{:<12} {:>5} pulses", recipe.name, recipe.schedule.len());
        }
        return Ok(0);
    }
    let name = args.name.as_deref().expect("clap enforces presence");
    let recipe = gates::recipe_by_name(name, &cfg, eta)
        .map_err(|_| anyhow!("no catalog gate named {name:?}; try --list"))?;
    let file = ScheduleFile::from_schedule(&recipe.schedule, &cfg, eta);
    let path = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.pulses.json")));
    fs::write(&path, file.to_json()).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {} ({} pulses)", path.display(), recipe.schedule.len());
    Ok(0)
}
