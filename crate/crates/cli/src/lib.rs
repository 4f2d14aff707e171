//! Command-line front end: argument parsing, dispatch, report formatting.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::Parser;
use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;
use zeckwin::dot::{dfa_to_dot, orbit_to_dot, theta_to_dot};
use zeckwin::multiplier::{StreamOutcome, ThetaMap};
use zeckwin::orbit::theta_orbit_trace;
use zeckwin::{
    avoids, build_avoidance_dfa, exponent_set, lsd_prefix, mul_oracle, stream_multiply,
    theta_orbit, theta_synthesize, window_sequence, zeck_decode, zeck_encode, ForbiddenFamily,
    MultiplierSpec, OrbitConfig, Period, Window, ZeckWord,
};

pub mod args;
pub mod report;
mod verify;

use args::{Cli, Command, DotKind, Format, Mode, OrbitArgs, Output};
pub use report::{Claim, ClaimVerdict, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zeckwin::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let started = Instant::now();
    match dispatch(cli.command, stdout) {
        Ok(code) => {
            let _ = writeln!(stderr, "runtime_ms={}", started.elapsed().as_millis());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Core(_) | CliError::Io { .. } => EXIT_DOMAIN,
            }
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Encode { n, output } => {
            let n = natural(&n)?;
            let word = zeck_encode(&n)?;
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "encode",
                    json!({ "n": n.to_string() }),
                    json!({ "z": word.to_string() }),
                ),
                _ => format!("{word}\n"),
            };
            emit(&output, &text, stdout)
        }
        Command::Decode { word, output } => {
            let w: ZeckWord = word.parse()?;
            let n = zeck_decode(&w);
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "decode",
                    json!({ "z": word }),
                    json!({ "n": n.to_string() }),
                ),
                _ => format!("{n}\n"),
            };
            emit(&output, &text, stdout)
        }
        Command::Mul {
            n,
            q,
            carry_bound,
            delay_cap,
            output,
        } => {
            let n = natural(&n)?;
            let product = mul_oracle(&n, q)?;
            let mut spec = MultiplierSpec::new(q)?;
            if let Some(c) = carry_bound {
                spec = spec.with_carry_bound(c);
            }
            if let Some(d) = delay_cap {
                spec = spec.with_delay_cap(d)?;
            }
            let stream = match stream_multiply(&n, &spec)? {
                StreamOutcome::Product(w) => {
                    json!({ "product": w.to_string(), "agrees": w == product })
                }
                StreamOutcome::Failed(f) => json!({
                    "failure": f.kind.to_string(),
                    "position": f.position,
                    "pending": [f.state.pending.0.to_string(), f.state.pending.1.to_string()],
                }),
            };
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "mul",
                    json!({
                        "n": n.to_string(),
                        "q": q,
                        "carry_bound": spec.carry_bound(),
                        "delay_cap": spec.delay_cap(),
                    }),
                    json!({ "oracle": product.to_string(), "stream": stream }),
                ),
                _ => format!("{product}\n"),
            };
            emit(&output, &text, stdout)
        }
        Command::Window { n, m, output } => {
            let n = natural(&n)?;
            let w = lsd_prefix(&n, m)?;
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "window",
                    json!({ "n": n.to_string(), "M": m }),
                    json!({ "window": w.to_string() }),
                ),
                _ => format!("{w}\n"),
            };
            emit(&output, &text, stdout)
        }
        Command::Avoid {
            word,
            family,
            output,
        } => {
            let f: ForbiddenFamily = family.parse()?;
            let ok = avoids(&word, &f)?;
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "avoid",
                    json!({ "word": word, "family": f.to_string() }),
                    json!({ "avoids": ok }),
                ),
                _ => format!("{}\n", if ok { "yes" } else { "no" }),
            };
            emit(&output, &text, stdout)
        }
        Command::SynthesizeTheta {
            q,
            m,
            n_cap,
            cache_dir,
            output,
        } => {
            format_or(&output, Format::Json, &[Format::Json])?;
            let theta = load_theta(q, m, n_cap, cache_dir.as_deref())?;
            let mut text = serde_json::to_string_pretty(&theta.to_json()).expect("json");
            text.push('\n');
            emit(&output, &text, stdout)
        }
        Command::CheckLocality {
            q,
            m,
            n_cap,
            d_max,
            output,
        } => {
            let found = zeckwin::locality_probe(q, m, n_cap, d_max)?;
            let text = match format_or(&output, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => report_json(
                    "check-locality",
                    json!({ "q": q, "M": m, "n_cap": n_cap, "d_max": d_max }),
                    json!({ "D": found }),
                ),
                _ => match found {
                    Some(d) => format!("{d}\n"),
                    None => "NotFound\n".to_string(),
                },
            };
            emit(&output, &text, stdout)
        }
        Command::Orbit { orbit, output } => {
            let format = format_or(
                &output,
                Format::Json,
                &[Format::Json, Format::Csv, Format::Text],
            )?;
            let cfg = orbit_config(&orbit)?;
            let summary = match orbit.mode {
                Mode::Oracle => exponent_set(&cfg)?,
                Mode::Theta => {
                    let theta = load_theta(
                        cfg.q,
                        cfg.window_len,
                        orbit.n_cap,
                        orbit.cache_dir.as_deref(),
                    )?;
                    theta_orbit(&cfg, &theta)?
                }
            };
            let text = match format {
                Format::Csv => {
                    let dfa = build_avoidance_dfa(&cfg.family);
                    let mut csv = String::from("n,w_n,member\n");
                    for (n, w) in window_sequence(&cfg)?.iter().enumerate() {
                        let member = if dfa.accepts_window(w) { "yes" } else { "no" };
                        csv.push_str(&format!("{n},{w},{member}\n"));
                    }
                    csv
                }
                Format::Text => {
                    let period = summary.candidate.map_or("none".to_string(), |p| {
                        format!("n0={} p={}", p.preperiod, p.period)
                    });
                    format!(
                        "exponent_set={:?}\nperiod={period}\nverified_horizon={}\nfiniteness_verdict={}\n",
                        summary.exponent_set, summary.verified_horizon, summary.finiteness_verdict
                    )
                }
                _ => {
                    let mut text = serde_json::to_string_pretty(&summary.to_json()).expect("json");
                    text.push('\n');
                    text
                }
            };
            emit(&output, &text, stdout)
        }
        Command::ExportDot {
            kind,
            orbit,
            output,
        } => {
            format_or(&output, Format::Dot, &[Format::Dot])?;
            let family: ForbiddenFamily = orbit.family.parse()?;
            let dfa = build_avoidance_dfa(&family);
            let text = match kind {
                DotKind::Dfa => dfa_to_dot(&dfa, &family),
                DotKind::Theta => {
                    let theta =
                        load_theta(orbit.q, orbit.m, orbit.n_cap, orbit.cache_dir.as_deref())?;
                    theta_to_dot(&theta, &dfa)
                }
                DotKind::Orbit => {
                    let cfg = orbit_config(&orbit)?;
                    let (windows, period) = orbit_payload(&cfg, &orbit)?;
                    orbit_to_dot(&windows, period, &dfa)
                }
            };
            emit(&output, &text, stdout)
        }
        Command::VerifyPaper {
            example: _,
            n_max,
            n_cap,
            cache_dir,
            output,
        } => {
            let format = format_or(&output, Format::Json, &[Format::Json, Format::Text])?;
            let report = verify::example_three(n_max, n_cap, cache_dir.as_deref())?;
            let text = match format {
                Format::Text => report.claims_text(),
                _ => report.to_json_string(),
            };
            emit(&output, &text, stdout)?;
            Ok(if report.mismatches() > 0 {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            })
        }
    }
}

fn natural(s: &str) -> CliResult<BigUint> {
    BigUint::from_str(s.trim()).map_err(|_| {
        CliError::Core(zeckwin::Error::Domain(format!(
            "{s:?} is not a natural number"
        )))
    })
}

fn format_or(output: &Output, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let format = output.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(CliError::Usage(format!(
            "format {format:?} is not available for this command"
        )))
    }
}

fn report_json(command: &str, inputs: Value, results: Value) -> String {
    Report::new(command, inputs, results).to_json_string()
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> CliResult<i32> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?,
    }
    Ok(EXIT_OK)
}

fn orbit_config(orbit: &OrbitArgs) -> CliResult<OrbitConfig> {
    let mut cfg = OrbitConfig::new(natural(&orbit.u)?, orbit.q, orbit.m, orbit.family.parse()?)
        .with_n_max(orbit.n_max);
    if orbit.override_ml_check {
        cfg = cfg.allow_short_window();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn orbit_payload(cfg: &OrbitConfig, orbit: &OrbitArgs) -> CliResult<(Vec<Window>, Option<Period>)> {
    match orbit.mode {
        Mode::Oracle => {
            let summary = exponent_set(cfg)?;
            Ok((window_sequence(cfg)?, summary.candidate))
        }
        Mode::Theta => {
            let theta = load_theta(
                cfg.q,
                cfg.window_len,
                orbit.n_cap,
                orbit.cache_dir.as_deref(),
            )?;
            let trace = theta_orbit_trace(cfg, &theta)?;
            let period = Period {
                preperiod: trace.preperiod,
                period: trace.period,
            };
            Ok((trace.states, Some(period)))
        }
    }
}

/// Cache file for the window map keyed by `(q, M, n_cap)`.
pub fn theta_cache_path(dir: &Path, q: u64, m: usize, n_cap: u64) -> PathBuf {
    dir.join(format!("theta_q{q}_M{m}_n{n_cap}.json"))
}

/// Window map from the cache if present, otherwise synthesized (and cached).
pub(crate) fn load_theta(
    q: u64,
    m: usize,
    n_cap: u64,
    cache_dir: Option<&Path>,
) -> CliResult<ThetaMap> {
    let Some(dir) = cache_dir else {
        return Ok(theta_synthesize(q, m, n_cap)?);
    };
    let path = theta_cache_path(dir, q, m, n_cap);
    if let Ok(text) = fs::read_to_string(&path) {
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| zeckwin::Error::Format(format!("{}: {e}", path.display())))?;
        let theta = ThetaMap::from_json(&value)?;
        if theta.q() == q && theta.window_len() == m && theta.n_cap() == n_cap {
            return Ok(theta);
        }
    }
    let theta = theta_synthesize(q, m, n_cap)?;
    let io = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    let text = serde_json::to_string(&theta.to_json()).expect("json");
    fs::write(&path, text).map_err(io)?;
    Ok(theta)
}
