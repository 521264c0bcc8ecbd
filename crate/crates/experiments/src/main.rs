use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use dice_core::{Die, Model};
use dice_experiments::cli::{BeatsArgs, Cli, Command};
use dice_experiments::{emit_report, run, ExperimentConfig, Kind, RunError};

const EXIT_CONFIG: u8 = 2;
const EXIT_CHECK: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dice: {e:#}");
            let config_error = e.chain().any(|c| {
                matches!(c.downcast_ref::<RunError>(), Some(RunError::Config(_)))
                    || c.downcast_ref::<dice_core::DieError>().is_some()
                    || c.downcast_ref::<serde_json::Error>().is_some()
            });
            ExitCode::from(if config_error { EXIT_CONFIG } else { 1 })
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    let (cfg, save) = match command {
        Command::Beats(args) => return beats(&args),
        Command::Run(args) => {
            let text = std::fs::read_to_string(&args.config)
                .with_context(|| format!("reading {}", args.config.display()))?;
            let mut cfg: ExperimentConfig =
                serde_json::from_str(&text).context("parsing config")?;
            cfg.threads = args.threads.or(cfg.threads);
            cfg.out = args.out.or(cfg.out);
            if let Some(f) = args.format {
                cfg.format = f.into();
            }
            (cfg, None)
        }
        Command::Sample(a) => (a.to_config(Kind::Sample), a.save_config),
        Command::Enumerate(a) => (a.to_config(Kind::Enumerate), a.save_config),
        Command::Ties(a) => (a.to_config(Kind::Ties), a.save_config),
        Command::Transitivity(a) => (a.to_config(Kind::Transitivity), a.save_config),
        Command::Tournament(a) => (a.to_config(Kind::Tournament), a.save_config),
        Command::Clt(a) => (a.to_config(Kind::Clt), a.save_config),
    };
    if let Some(path) = save {
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        serde_json::to_writer_pretty(file, &cfg)?;
    }

    let start = Instant::now();
    let report = run(&cfg)?;
    eprintln!(
        "dice: {} finished in {:.2?}",
        cfg.kind.as_str(),
        start.elapsed()
    );
    write_output(cfg.out.as_deref(), |w| {
        Ok(emit_report(&report, cfg.format, w)?)
    })?;

    let failures = report.hard_failures();
    for c in &failures {
        eprintln!("dice: check {} failed: {}", c.name, c.detail);
    }
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK)
    })
}

fn write_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
        }
    }
    Ok(())
}

fn parse_die(text: &str, model: Model) -> Result<Die> {
    let faces = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("faces must be comma-separated integers: {text:?}"))?;
    Ok(Die::from_signed(faces, model)?)
}

fn beats(args: &BeatsArgs) -> Result<ExitCode> {
    let model = args.model.into();
    let a = parse_die(&args.a, model)?;
    let b = parse_die(&args.b, model)?;
    let outcome = if args.reference {
        a.beats_reference(&b)?
    } else {
        a.beats(&b)?
    };
    let score = a.score_sum(&b)?;
    let out = serde_json::json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "greater": outcome.greater,
        "less": outcome.less,
        "equal": outcome.equal,
        "verdict": outcome.verdict,
        "score_sum": score.to_string(),
        "score_sum_doubled": score.doubled(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
