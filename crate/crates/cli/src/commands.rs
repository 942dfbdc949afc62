use std::path::Path;

use dengue_core::analysis::{compute_r0_ngm, equilibria_closed_form, EquilibriumKind};
use dengue_core::io::{parse_override, write_json, ConfigDocument, DataFormat, ResultBundle};
use dengue_core::scenario::{figure_suite, run_scenario, run_sweep, SweepAxis, SweepSpec};
use dengue_core::{Error, Result};

use crate::args::{Cli, Command, ConfigArgs, RunArgs};

pub fn dispatch(cli: &Cli) -> Result<()> {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Simulate(run) => simulate(run, verbose),
        Command::Analyze { run, json } => analyze(run, *json, verbose),
        Command::Sweep { run, axis, values } => sweep(run, *axis, values, verbose),
        Command::Figures { out, format } => figures(out, *format, verbose),
        Command::Validate(cfg) => validate(cfg, verbose),
    }
}

/// Loads the file (or the defaults), applies `--set` overrides in order, then validates.
fn load(args: &ConfigArgs) -> Result<ConfigDocument> {
    let base = if args.config == "baseline" {
        ConfigDocument::default()
    } else {
        let path = Path::new(&args.config);
        if !path.is_file() {
            return Err(Error::ConfigNotFound(path.to_path_buf()));
        }
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
        ConfigDocument::from_toml_str(&text, path)?
    };
    let overrides = args.overrides.iter().map(|s| parse_override(s)).collect::<Result<Vec<_>>>()?;
    let doc = base.with_overrides(&overrides)?;
    doc.validate()?;
    Ok(doc)
}

fn simulate(args: &RunArgs, verbose: u8) -> Result<()> {
    let doc = load(&args.config)?;
    let scenario = doc.to_scenario();
    let (out, summary) = run_scenario(&scenario)?;
    let bundle = ResultBundle::new(&scenario, &out, summary, doc.provenance_hash());
    let files = bundle.write(&args.out, args.format)?;
    println!("{bundle}");
    for f in &files {
        println!("wrote {}", f.display());
    }
    if verbose > 0 {
        eprintln!("config hash {}", bundle.provenance.config_hash);
        for e in &bundle.provenance.events {
            eprintln!("event {}", serde_json::to_string(e).unwrap_or_default());
        }
    }
    Ok(())
}

fn analyze(args: &RunArgs, json: bool, verbose: u8) -> Result<()> {
    let doc = load(&args.config)?;
    let (p, c) = (doc.parameters, doc.controls);
    let report = equilibria_closed_form(&p, &c);
    let dfe = report
        .find(EquilibriumKind::DfeBiotic)
        .or_else(|| report.find(EquilibriumKind::DfeTrivial))
        .map(|e| e.state)
        .ok_or_else(|| Error::Precondition("no disease-free equilibrium".into()))?;
    let r0_ngm = compute_r0_ngm(&p, &c, &dfe)?;
    let r0_closed = report.thresholds.r0;

    std::fs::create_dir_all(&args.out).map_err(|e| Error::Io { path: args.out.clone(), source: e })?;
    let path = args.out.join("equilibrium_report.json");
    write_json(&report, &path)?;

    if json {
        let doc = serde_json::json!({
            "report": report,
            "R0_closed_form": r0_closed,
            "R0_next_generation": r0_ngm,
        });
        println!("{}", serde_json::to_string_pretty(&doc).map_err(|e| Error::Serialization(e.to_string()))?);
    } else {
        println!("{report}");
        println!("R0 closed form      {r0_closed:.15}");
        println!("R0 next-generation  {r0_ngm:.15}");
        println!("R0 difference       {:.3e}", (r0_closed - r0_ngm).abs());
    }
    if verbose > 0 {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn sweep(args: &RunArgs, axis: SweepAxis, values: &[f64], verbose: u8) -> Result<()> {
    let doc = load(&args.config)?;
    let result = run_sweep(&SweepSpec { base: doc.to_scenario(), axis, values: values.to_vec() })?;

    std::fs::create_dir_all(&args.out).map_err(|e| Error::Io { path: args.out.clone(), source: e })?;
    let stem = format!("sweep_{}", axis.name());
    let overlay = args.out.join(format!("{stem}.{}", args.format.extension()));
    result.overlay.write(&overlay, args.format)?;
    let points = args.out.join(format!("{stem}_points.json"));
    write_json(&result.points, &points)?;

    println!("{:>10} {:>16} {:>12} {:>16} {:>12}", axis.name(), "peak_I_h", "t_peak_I_h", "infected", "R0");
    for pt in &result.points {
        match (&pt.summary, &pt.error) {
            (Some(s), _) => println!(
                "{:>10} {:>16.6} {:>12.3} {:>16.6} {:>12.6}",
                pt.level,
                s.peak_i_h,
                s.t_peak_i_h,
                s.total_infected_proxy,
                s.r0.unwrap_or(f64::NAN)
            ),
            (None, err) => println!("{:>10} failed: {}", pt.level, err.as_deref().unwrap_or("unknown")),
        }
    }
    if verbose > 0 {
        eprintln!("wrote {} and {}", overlay.display(), points.display());
    }
    if let Some(bad) = result.failures().next() {
        // Points only keep the message; re-running the level recovers the typed error.
        let scenario = axis.apply(&doc.to_scenario(), bad.level)?;
        run_scenario(&scenario)?;
    }
    Ok(())
}

fn figures(out: &Path, format: DataFormat, verbose: u8) -> Result<()> {
    let manifest = figure_suite(out, format)?;
    for entry in &manifest.entries {
        println!("{:<18} {}", entry.id, entry.files.join(", "));
    }
    println!("wrote {}", out.join("manifest.json").display());
    if verbose > 0 {
        eprintln!("{} figure data sets", manifest.entries.len());
    }
    Ok(())
}

fn validate(args: &ConfigArgs, verbose: u8) -> Result<()> {
    let doc = load(args)?;
    println!("ok {}", doc.provenance_hash());
    if verbose > 0 {
        eprint!("{}", doc.to_toml_string()?);
    }
    Ok(())
}
