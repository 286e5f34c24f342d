use clap::{Parser, Subcommand};
use skyrmelab_lab::norms::{norms_csv, parse_list, snapshot_norms, NormKind, NormRequest};
use skyrmelab_lab::run::{load_config, output_root, run, run_dir};
use skyrmelab_lab::{io, verify, LabError, LabResult, RawConfig, RunConfig, SweepAxis};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "skyrmelab", version, about = "Radial wave-map, Skyrme and Adkins-Nappi laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one configured scenario.
    Run { config: PathBuf },
    /// Run a configuration once per value of one parameter.
    Sweep {
        config: PathBuf,
        /// `section.key=v1,v2,...`
        #[arg(long)]
        axis: String,
    },
    /// Sobolev or Besov norms of a snapshot.
    Norms {
        snapshot: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value = "2")]
        q: String,
        /// 5 measures v on R^5, 3 measures u = r v on R^3.
        #[arg(long, default_value_t = 5)]
        dim: usize,
        /// Report H^s instead of B^s_{p,q}.
        #[arg(long)]
        sobolev: bool,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite: coefficients, grid, solver, spectral, theorems or all.
    Verify { suite: String },
}

/// `Ok(true)` when every criterion passed.
fn execute(cmd: Command) -> LabResult<bool> {
    match cmd {
        Command::Run { config } => {
            let cfg = load_config(&config)?;
            let out = run(&cfg, &run_dir(&cfg))?;
            print!("{}", out.report);
            println!("artifacts: {}", out.dir.display());
            Ok(out.report.passed())
        }
        Command::Sweep { config, axis } => {
            let axis: SweepAxis = axis.parse()?;
            let text = io::read_text(&config)?;
            let (raw, issues) = RawConfig::parse(&text);
            if !issues.is_empty() {
                return Err(LabError::Config(issues));
            }
            let cfg = RunConfig::from_raw(&raw)?;
            let dir = output_root().join(format!("{}-sweep", cfg.output_dir.display()));
            let rep = skyrmelab_lab::sweep(&raw, &axis, &dir)?;
            print!("{}", rep.csv());
            println!("artifacts: {}", dir.display());
            Ok(rep.all_ok())
        }
        Command::Norms { snapshot, s, p, q, dim, sobolev, out } => {
            let req = NormRequest {
                dim,
                s: parse_list("s", &s)?,
                p: parse_list("p", &p)?,
                q: parse_list("q", &q)?,
                kind: if sobolev { NormKind::Sobolev } else { NormKind::Besov },
            };
            let csv = norms_csv(&snapshot_norms(&snapshot, &req)?);
            match out {
                Some(path) => io::write_text(&path, &csv)?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let reports = verify(&suite)?;
            for r in &reports {
                print!("{r}");
            }
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
