use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::commands::{Cli, Global, Output};

/// Flags that change where results go but not what they are.
const PLACEMENT: [&str; 4] = ["--out", "--config", "--jobs", "--manifest"];

#[derive(Debug, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Arguments after the program name, placement flags removed.
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Vec<String>,
    pub started_unix: u64,
    pub finished_unix: u64,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn flag_name(arg: &str) -> Option<&str> {
    let body = arg.strip_prefix("--")?;
    Some(body.split_once('=').map_or(body, |(k, _)| k))
}

/// Appends `--key value` for every config entry whose flag is not already on the command line.
pub fn merge_config(mut argv: Vec<String>) -> Result<Vec<String>> {
    let pos = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else { return Ok(argv) };
    let path = match argv[pos].split_once('=') {
        Some((_, p)) => p.to_string(),
        None => argv.get(pos + 1).cloned().context("--config needs a path")?,
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let present: BTreeSet<String> = argv.iter().filter_map(|a| flag_name(a)).map(str::to_string).collect();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else { bail!("{path}:{}: expected key = value", lineno + 1) };
        let (k, v) = (k.trim().trim_start_matches("--"), v.trim());
        if k == "config" || present.contains(k) {
            continue;
        }
        match v {
            "true" => argv.push(format!("--{k}")),
            "false" => {}
            _ => argv.push(format!("--{k}={v}")),
        }
    }
    Ok(argv)
}

pub fn recorded_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if PLACEMENT.contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if PLACEMENT.iter().any(|p| a.starts_with(&format!("{p}="))) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

pub fn load_replay(path: &Path, global: &Global) -> Result<(Cli, Vec<String>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
    let m: ExperimentManifest = serde_json::from_str(&text).context("parsing manifest")?;
    let mut argv = vec![m.tool.clone()];
    argv.extend(m.args.iter().cloned());
    let mut cli = Cli::try_parse_from(&argv).context("manifest arguments no longer parse")?;
    cli.global.out = global.out.clone();
    cli.global.manifest = global.manifest.clone();
    Ok((cli, m.args))
}

fn manifest_path(g: &Global) -> Option<PathBuf> {
    g.manifest.clone().or_else(|| {
        g.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

pub fn emit(cli: &Cli, recorded: &[String], out: &Output, started: u64) -> Result<()> {
    match &cli.global.out {
        Some(p) => fs::write(p, &out.body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", out.body),
    }
    let Some(path) = manifest_path(&cli.global) else { return Ok(()) };
    let mut args = recorded.to_vec();
    let seed = cli.command.seed();
    // a seed taken from the environment is pinned into the arguments
    if let Some(s) = seed {
        if !args.iter().any(|a| flag_name(a) == Some("seed")) {
            args.push(format!("--seed={s}"));
        }
    }
    let m = ExperimentManifest {
        tool: "speclab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: args.first().cloned().unwrap_or_default(),
        args,
        seed,
        inputs: cli.command.inputs(),
        started_unix: started,
        finished_unix: now(),
    };
    fs::write(&path, serde_json::to_string_pretty(&m)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn start() -> u64 {
    now()
}
