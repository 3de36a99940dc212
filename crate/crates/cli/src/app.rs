//! Argument parsing and dispatch, kept apart from `main` so tests can drive it.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::commands::*;
use crate::document::{ErrorDocument, PlaneDocument, StateDocument};
use crate::error::CliError;
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "stellar",
    version,
    about = "Stellar representation of spin-s k-planes"
)]
pub struct Cli {
    /// Worker threads for batches of input files.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Majorana constellation of a spin state.
    Constellation {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Principal polynomial and constellation of a plane.
    Principal {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// wronskian, sampled, top or all.
        #[arg(long, default_value = "wronskian")]
        route: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Irreducible components of the Plücker vector.
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Component constellations, spectator amplitudes and spectator constellation.
    Multicon {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Multiplicities of each spin j in the k-th exterior power of spin s.
    Multiplicities {
        two_s: u32,
        k: usize,
        /// genfun, char or basis.
        #[arg(long, default_value = "genfun")]
        method: String,
    },
    /// Number of planes sharing a generic principal constellation.
    Schubert { two_s: u32, k: usize },
    /// Cross-checks on a plane.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced for one input: a document, a flag, or both.
#[derive(Debug, Default)]
pub struct Outcome {
    pub document: Option<Value>,
    pub error: Option<CliError>,
}

impl Outcome {
    fn ok<T: Serialize>(doc: &T) -> Self {
        Self {
            document: Some(serde_json::to_value(doc).expect("documents serialise")),
            error: None,
        }
    }

    fn failed(e: CliError) -> Self {
        Self {
            document: None,
            error: Some(e),
        }
    }

    fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }
}

/// Everything the process should print and return.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn error_json(e: &CliError) -> Value {
    serde_json::to_value(ErrorDocument::from_error(e)).expect("errors serialise")
}

/// Input items: a file holds one document or an array of them.
fn load_items(files: &[PathBuf]) -> Vec<Result<Value, CliError>> {
    let mut items = Vec::new();
    for path in files {
        match read_json::<Value>(path) {
            Ok(Value::Array(docs)) => items.extend(docs.into_iter().map(Ok)),
            Ok(doc) => items.push(Ok(doc)),
            Err(e) => items.push(Err(e)),
        }
    }
    items
}

fn parse_item<T: DeserializeOwned>(item: &Result<Value, CliError>) -> Result<T, CliError> {
    match item {
        Ok(v) => Ok(T::deserialize(v)?),
        Err(e) => Err(e.clone()),
    }
}

/// Runs `f` on every item with up to `jobs` threads; results keep input order.
fn batch<T, F>(items: &[Result<Value, CliError>], jobs: usize, f: F) -> Vec<Outcome>
where
    T: DeserializeOwned,
    F: Fn(T) -> Outcome + Sync,
{
    let slots: Vec<Mutex<Option<Outcome>>> = items.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = match parse_item::<T>(&items[i]) {
                    Ok(doc) => f(doc),
                    Err(e) => Outcome::failed(e),
                };
                *slots[i].lock().expect("slot poisoned") = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| {
            m.into_inner()
                .expect("slot poisoned")
                .expect("every item processed")
        })
        .collect()
}

fn write_svg(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn single_svg(items: &[Result<Value, CliError>], svg: &Option<PathBuf>) -> Result<(), CliError> {
    if svg.is_some() && items.len() != 1 {
        return Err(CliError::Input(
            "--svg needs exactly one input document".into(),
        ));
    }
    Ok(())
}

fn outcome<T: Serialize>(r: Result<T, CliError>) -> Outcome {
    match r {
        Ok(doc) => Outcome::ok(&doc),
        Err(e) => Outcome::failed(e),
    }
}

fn run_files(cli: &Cli) -> Result<(Vec<Outcome>, bool), CliError> {
    let jobs = cli.jobs;
    let items = match &cli.command {
        Command::Constellation { files, .. }
        | Command::Principal { files, .. }
        | Command::Decompose { files }
        | Command::Multicon { files, .. }
        | Command::Verify { files, .. } => load_items(files),
        Command::Multiplicities { .. } | Command::Schubert { .. } => Vec::new(),
    };
    let outcomes =
        match &cli.command {
            Command::Constellation { svg, .. } => {
                single_svg(&items, svg)?;
                batch(&items, jobs, |doc: StateDocument| {
                    outcome(cmd_constellation(&doc).and_then(|out| {
                        if let Some(path) = svg {
                            let c = stellar::majorana::constellation_of_state(&doc.to_state()?)?;
                            write_svg(path, &svg::render_single("Majorana constellation", &c))?;
                        }
                        Ok(out)
                    }))
                })
            }
            Command::Principal { route, svg, .. } => {
                single_svg(&items, svg)?;
                let route: RouteChoice = route.parse()?;
                batch(&items, jobs, |doc: PlaneDocument| {
                    outcome(cmd_principal(&doc, route).and_then(|docs| {
                        if let Some(path) = svg {
                            write_svg(
                                path,
                                &svg::render_single(
                                    "principal constellation",
                                    &docs_constellation(&doc, route)?,
                                ),
                            )?;
                        }
                        Ok(if docs.len() == 1 {
                            serde_json::to_value(&docs[0])?
                        } else {
                            serde_json::to_value(&docs)?
                        })
                    }))
                })
            }
            Command::Decompose { .. } => batch(&items, jobs, |doc: PlaneDocument| {
                outcome(cmd_decompose(&doc))
            }),
            Command::Multicon { svg, .. } => {
                single_svg(&items, svg)?;
                batch(&items, jobs, |doc: PlaneDocument| {
                    match cmd_multicon(&doc) {
                        Err(e) => Outcome::failed(e),
                        Ok((doc, mc)) => {
                            if let Some(path) = svg {
                                if let Err(e) = write_svg(path, &svg::render_multicon(&mc)) {
                                    return Outcome::failed(e);
                                }
                            }
                            let mut out = Outcome::ok(&doc);
                            out.error = multicon_flag(&mc);
                            out
                        }
                    }
                })
            }
            Command::Verify { seed, .. } => batch(&items, jobs, |doc: PlaneDocument| {
                match cmd_verify(&doc, *seed) {
                    Err(e) => Outcome::failed(e),
                    Ok(report) => {
                        let mut out = Outcome::ok(&report);
                        if !report.passed {
                            let failed: Vec<&str> = report
                                .checks
                                .iter()
                                .filter(|c| !c.passed)
                                .map(|c| c.name.as_str())
                                .collect();
                            out.error = Some(CliError::CheckFailed(failed.join(", ")));
                        }
                        out
                    }
                }
            }),
            Command::Multiplicities { two_s, k, method } => {
                vec![outcome(
                    parse_method(method).and_then(|m| cmd_multiplicities(*two_s, *k, m)),
                )]
            }
            Command::Schubert { two_s, k } => vec![outcome(cmd_schubert(*two_s, *k))],
        };
    Ok((outcomes, items.len() > 1))
}

/// The constellation drawn by `principal --svg`: the chosen route, or the Wronskian one for `all`.
fn docs_constellation(
    doc: &PlaneDocument,
    route: RouteChoice,
) -> Result<stellar::majorana::Constellation, CliError> {
    let r = match route {
        RouteChoice::One(r) => r,
        RouteChoice::All => stellar::principal::PrincipalRoute::Wronskian,
    };
    Ok(stellar::principal::principal(&doc.to_plane()?, r)?.constellation)
}

/// Documents go to stdout; error documents go to stderr for a single input and
/// inline in the output array for a batch. The exit code is the most severe one.
pub fn run(cli: &Cli) -> Output {
    let (outcomes, is_batch) = match run_files(cli) {
        Ok(o) => o,
        Err(e) => {
            return Output {
                stdout: String::new(),
                stderr: pretty(&error_json(&e)),
                code: e.exit_code(),
            };
        }
    };
    let code = outcomes.iter().map(Outcome::exit_code).max().unwrap_or(0);
    if is_batch {
        let items: Vec<Value> = outcomes
            .iter()
            .map(|o| match (&o.document, &o.error) {
                (Some(d), _) => d.clone(),
                (None, Some(e)) => error_json(e),
                (None, None) => Value::Null,
            })
            .collect();
        let stderr = outcomes
            .iter()
            .filter_map(|o| o.error.as_ref())
            .map(|e| pretty(&error_json(e)))
            .collect();
        return Output {
            stdout: pretty(&Value::Array(items)),
            stderr,
            code,
        };
    }
    let o = &outcomes[0];
    Output {
        stdout: o.document.as_ref().map(pretty).unwrap_or_default(),
        stderr: o
            .error
            .as_ref()
            .map(|e| pretty(&error_json(e)))
            .unwrap_or_default(),
        code,
    }
}
