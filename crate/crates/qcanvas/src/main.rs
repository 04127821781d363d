use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcanvas::io::manifest::{manifest_path, quoted, Manifest};
use qcanvas::io::{self, FormatError};
use qcanvas::pipeline::{self, SimulateConfig};
use qcanvas_core::stats::{build_report, ChannelAccumulator};
use qcanvas_core::{RelaxOptions, SccOptions};

/// Exit codes.
const OK: u8 = 0;
const USAGE: u8 = 1;
const DATA: u8 = 2;
const PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(name = "qcanvas", version, about = "Diatomic SCC tight-binding dataset: simulate, label, encode, summarise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Threads {
    /// Worker threads (default: all cores).
    #[arg(long, env = "QCANVAS_THREADS")]
    threads: Option<usize>,
}

impl Threads {
    fn get(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Relax dimers and write one record per pair.
    Simulate {
        #[arg(long)]
        params: PathBuf,
        /// "all", a file of A-B lines, or an inline list such as "H-H,H-Li".
        #[arg(long)]
        pairs: String,
        /// Electronic temperature in Hartree.
        #[arg(long = "te")]
        t_e: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        charge_total: f64,
        #[arg(long, default_value_t = SccOptions::default().eps_scc)]
        scc_tol: f64,
        #[arg(long, default_value_t = SccOptions::default().eps_scf)]
        scf_tol: f64,
        #[arg(long, default_value_t = RelaxOptions::default().eps_geom)]
        geom_tol: f64,
        #[arg(long, default_value_t = SccOptions::default().mixing)]
        mix: f64,
        #[arg(long, default_value_t = SccOptions::default().max_iter)]
        max_iter: u32,
        #[command(flatten)]
        threads: Threads,
        /// Only enumerate the pairs and print their count.
        #[arg(long)]
        dry_run: bool,
    },
    /// Derive the scalar label table from records.
    Label {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Leave out records whose SCC or geometry did not converge.
        #[arg(long)]
        skip_unconverged: bool,
    },
    /// Encode records as 10×32×32 image tensors (QCIM file).
    Encode {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        threads: Threads,
    },
    /// Dataset statistics report (JSON).
    Stats {
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        tensors: Option<PathBuf>,
        #[arg(long)]
        groups: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check records and, optionally, labels and tensors derived from them.
    Validate {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        tensors: Option<PathBuf>,
    },
}

struct Failure(u8, String);

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = if matches!(e, FormatError::Io { .. }) { USAGE } else { DATA };
        Failure(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn digest(path: &Path) -> Result<String, Failure> {
    Ok(io::file_sha256(path)?)
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Simulate {
            params,
            pairs,
            t_e,
            out,
            charge_total,
            scc_tol,
            scf_tol,
            geom_tol,
            mix,
            max_iter,
            threads,
            dry_run,
        } => {
            let table = io::params::load_params(&params)?;
            let pair_text = if pairs == "all" {
                None
            } else if Path::new(&pairs).is_file() {
                Some(std::fs::read_to_string(&pairs).map_err(|e| Failure(USAGE, format!("{pairs}: {e}")))?)
            } else {
                Some(pairs.clone())
            };
            let list = match &pair_text {
                None => pipeline::enumerate_all(&table),
                Some(t) => pipeline::parse_pair_list(t, &table).map_err(|e| Failure(USAGE, e.to_string()))?,
            };
            if dry_run {
                println!("{}", list.len());
                return Ok(OK);
            }
            let out = out.ok_or_else(|| Failure(USAGE, "--out is required unless --dry-run is given".into()))?;
            let cfg = SimulateConfig {
                t_e,
                charge_total,
                scc: SccOptions {
                    mixing: mix,
                    eps_scc: scc_tol,
                    eps_scf: scf_tol,
                    max_iter,
                },
                relax: RelaxOptions {
                    eps_geom: geom_tol,
                    ..RelaxOptions::default()
                },
            };
            if !(t_e >= 0.0 && t_e.is_finite()) {
                return Err(Failure(USAGE, "--te must be finite and >= 0".into()));
            }
            let results = pipeline::simulate(&table, &list, &cfg, threads.get());
            let mut records = Vec::with_capacity(results.len());
            let mut failures = Vec::new();
            for r in results {
                match r {
                    Ok(rec) => records.push(rec),
                    Err(f) => failures.push(f),
                }
            }
            io::records::write_records(&records, &out)?;
            let flagged: Vec<&str> = records.iter().filter(|r| r.is_flagged()).map(|r| r.pair_id.as_str()).collect();

            let mut m = Manifest::new("simulate");
            m.file("params", &params, &digest(&params)?)
                .field("t_e_ha", format!("{t_e:?}"))
                .field("charge_total", format!("{charge_total:?}"))
                .field("mixing", format!("{mix:?}"))
                .field("eps_scc", format!("{scc_tol:?}"))
                .field("eps_scf", format!("{scf_tol:?}"))
                .field("eps_geom", format!("{geom_tol:?}"))
                .field("max_iter", max_iter)
                .field("bracket_bohr", format!("[{:?}, {:?}]", cfg.relax.bracket.0, cfg.relax.bracket.1))
                .conventions()
                .field("pairs_requested", list.len())
                .field("records_written", records.len())
                .file("records", &out, &digest(&out)?)
                .list("unconverged", flagged.iter().map(|s| quoted(s)))
                .list("failed", failures.iter().map(|f| quoted(&f.to_string())));
            m.write(&manifest_path(&out))?;

            eprintln!(
                "{} pairs: {} records, {} flagged, {} failed",
                list.len(),
                records.len(),
                flagged.len(),
                failures.len()
            );
            for f in &failures {
                eprintln!("failed: {f}");
            }
            for id in &flagged {
                eprintln!("flagged: {id}");
            }
            Ok(if !failures.is_empty() {
                DATA
            } else if !flagged.is_empty() {
                PARTIAL
            } else {
                OK
            })
        }

        Command::Label {
            records,
            out,
            skip_unconverged,
        } => {
            let recs = io::records::read_records(&records)?;
            let (rows, skipped) =
                pipeline::label(&recs, skip_unconverged).map_err(|e| match e {
                    qcanvas_core::labels::LabelError::Flagged(id) => Failure(
                        DATA,
                        format!("record {id} did not converge; pass --skip-unconverged to leave it out"),
                    ),
                    e => Failure(DATA, e.to_string()),
                })?;
            for id in &skipped {
                eprintln!("warning: skipped unconverged record {id}");
            }
            io::labels::write_labels(&rows, &out)?;
            let mut m = Manifest::new("label");
            m.file("records", &records, &digest(&records)?)
                .conventions()
                .field("rows", rows.len())
                .file("labels", &out, &digest(&out)?)
                .list("skipped", skipped.iter().map(|s| quoted(s)));
            m.write(&manifest_path(&out))?;
            Ok(OK)
        }

        Command::Encode { records, out, threads } => {
            let recs = io::records::read_records(&records)?;
            let tensors = pipeline::encode(&recs, threads.get()).map_err(|e| Failure(DATA, e.to_string()))?;
            io::qcim::write_tensors(&tensors, &out)?;
            let mut m = Manifest::new("encode");
            m.file("records", &records, &digest(&records)?)
                .conventions()
                .field("tensors", tensors.len())
                .file("qcim", &out, &digest(&out)?);
            m.write(&manifest_path(&out))?;
            Ok(OK)
        }

        Command::Stats {
            labels,
            tensors,
            groups,
            out,
        } => {
            let rows = io::labels::read_labels(&labels)?;
            let groups = groups.as_deref().map(io::groups::load_groups).transpose()?;
            let channels = match &tensors {
                None => None,
                Some(p) => {
                    let mut acc = ChannelAccumulator::new();
                    io::qcim::read_tensors(p)?.iter().for_each(|t| acc.push(t));
                    Some(acc.finish().map_err(|e| Failure(DATA, format!("{}: {e}", p.display())))?)
                }
            };
            let report = build_report(&rows, groups.as_ref(), channels).map_err(|e| Failure(DATA, e.to_string()))?;
            io::report::write_report(&report, &out)?;
            Ok(OK)
        }

        Command::Validate {
            records,
            labels,
            tensors,
        } => {
            let recs = io::records::read_records(&records)?;
            let labels = labels.as_deref().map(io::labels::read_labels).transpose()?;
            let tensors = tensors.as_deref().map(io::qcim::read_tensors).transpose()?;
            let findings = pipeline::validate(&recs, labels.as_deref(), tensors.as_deref());
            for f in &findings {
                eprintln!("invalid: {f}");
            }
            if findings.is_empty() {
                eprintln!("ok: {} records", recs.len());
                Ok(OK)
            } else {
                Ok(DATA)
            }
        }
    }
}
