use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use fusionkit::job::{run_job, Command, FusionSpec, JobSpec, KSpec, Report, SystemSpec};
use fusionkit::Error;

/// Fusion systems of finite p-groups: build, classify, decompose, construct.
///
/// Every JSON-valued option accepts either a file path or inline JSON.
#[derive(Parser, Debug)]
#[command(name = "fusionkit", version)]
struct Cli {
    /// build | saturation | classify | fcr | decompose | product | quotient | normalizer | rv | witness
    command: String,
    /// A complete job file; other options override its fields.
    #[arg(long)]
    job: Option<String>,
    /// Group descriptor.
    #[arg(long)]
    group: Option<String>,
    /// The prime `p`.
    #[arg(long)]
    sylow: Option<u64>,
    /// Fusion descriptor (defaults to the transporter system).
    #[arg(long)]
    fusion: Option<String>,
    /// Second factor for `product`.
    #[arg(long)]
    group2: Option<String>,
    #[arg(long)]
    sylow2: Option<u64>,
    #[arg(long)]
    fusion2: Option<String>,
    /// Generators of the kernel, as image lists.
    #[arg(long)]
    kernel: Option<String>,
    /// Generators of `Q` for `normalizer`.
    #[arg(long)]
    at: Option<String>,
    /// `full`, `trivial`, or a list of automorphisms given on generators.
    #[arg(long)]
    k: Option<String>,
    /// The morphism to decompose: `{"domain_gens": [...], "images": [...]}`.
    #[arg(long)]
    morphism: Option<String>,
    /// rv1 | rv2 | rv3
    #[arg(long)]
    name: Option<String>,
    /// Prime for `witness`.
    #[arg(long)]
    p: Option<u64>,
    /// Enumeration cap on group orders.
    #[arg(long)]
    max_group_order: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(arg: &str) -> Result<String, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Error> {
    Ok(serde_json::from_str(&load(arg)?)?)
}

fn system(
    group: &Option<String>,
    sylow: Option<u64>,
    fusion: &Option<String>,
) -> Result<Option<SystemSpec>, Error> {
    let Some(group) = group else {
        return Ok(None);
    };
    let sylow = sylow.ok_or_else(|| Error::Malformed("--sylow is required with --group".into()))?;
    let fusion: FusionSpec = match fusion {
        Some(f) => json(f)?,
        None => FusionSpec::Transporter,
    };
    Ok(Some(SystemSpec {
        group: json(group)?,
        sylow,
        fusion,
    }))
}

fn job(cli: &Cli) -> Result<JobSpec, Error> {
    let command: Command =
        serde_json::from_value(serde_json::Value::String(cli.command.clone()))
            .map_err(|_| Error::Malformed(format!("unknown command `{}`", cli.command)))?;
    let mut job = match &cli.job {
        Some(j) => json(j)?,
        None => JobSpec::new(command),
    };
    job.command = command;
    if let Some(s) = system(&cli.group, cli.sylow, &cli.fusion)? {
        job.system = Some(s);
    }
    if let Some(s) = system(&cli.group2, cli.sylow2, &cli.fusion2)? {
        job.second = Some(s);
    }
    if let Some(k) = &cli.kernel {
        job.kernel = Some(json(k)?);
    }
    if let Some(a) = &cli.at {
        job.at = Some(json(a)?);
    }
    if let Some(k) = &cli.k {
        job.k = Some(match k.as_str() {
            "full" | "trivial" => KSpec::Named(k.clone()),
            other => json(other)?,
        });
    }
    if let Some(m) = &cli.morphism {
        job.morphism = Some(json(m)?);
    }
    if let Some(n) = &cli.name {
        job.rv = Some(n.parse()?);
    }
    if cli.p.is_some() {
        job.p = cli.p;
    }
    if cli.max_group_order.is_some() {
        job.max_group_order = cli.max_group_order;
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match job(&cli) {
        Ok(job) => {
            if let Some(cap) = job.max_group_order {
                std::env::set_var("FUSIONKIT_MAX_GROUP_ORDER", cap.to_string());
            }
            run_job(&job)
        }
        Err(e) => Report {
            command: Command::Build,
            verdict: None,
            result: serde_json::Value::Null,
            error: Some(e.to_string()),
            timing_ms: 0,
        },
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("fusionkit: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &report.error {
        eprintln!("fusionkit: {e}");
    }
    ExitCode::from(report.exit_code() as u8)
}
