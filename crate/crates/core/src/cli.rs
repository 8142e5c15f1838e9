//! The `areaseq` command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 usage error.
//! Data goes to the output stream, diagnostics to the error stream.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dyck::{enumerate, parse_word, AreaSequence, ValidationReport};
use crate::error::Error;
use crate::lab::{qt_matrix, verify, Check, LabConfig, QtMatrix, Statistic};
use crate::render::render_lines;
use crate::stats::{area, bounce, dinv, StatReport};
use crate::zeta::{admissible, insert, psi, psi_inverse, psi_trace};

/// Environment variable overriding the exhaustive size limit.
pub const LIMIT_ENV: &str = "AREASEQ_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Area sequences of Dyck paths: statistics, the zeta map and exhaustive checks.
#[derive(Debug, Parser)]
#[command(name = "areaseq", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Area, dinv and bounce of a word.
    Stats {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Apply ψ (the inverse zeta map).
    Map {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Show every intermediate image.
        #[arg(long)]
        trace: bool,
    },
    /// Apply ψ⁻¹ (the zeta map).
    Unmap {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Admissible insertion positions and the result of each insertion.
    Insertions {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// List every area sequence of size n.
    Enumerate {
        n: usize,
        #[arg(long)]
        with_stats: bool,
    },
    /// Run invariant suites over every word of size n.
    Verify {
        n: usize,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Override the exhaustive size limit.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Joint distribution matrix of two statistics.
    Matrix {
        n: usize,
        /// Two statistics among area, dinv, bounce, e.g. `dinv,area`.
        #[arg(long)]
        pair: String,
    },
    /// Draw the path, optionally with its bounce path.
    Render {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        bounce: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Usage(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Verify(_) => EXIT_VERIFY_FAILED,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCheck(_) | Error::UnknownStatistic(_) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let limit_env = std::env::var(LIMIT_ENV).ok();
    match execute(&cli, limit_env.as_deref(), out) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "areaseq: {}", failure.message());
            failure.code()
        }
    }
}

fn word_arg(text: &str) -> Result<AreaSequence, Failure> {
    parse_word(text).map_err(|report: ValidationReport| Failure::Invalid(format!("invalid word {text:?}: {report}")))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Invalid(format!("write failed: {e}")))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    emit(out, &(text + "\n"))
}

fn no_csv(command: &str) -> Failure {
    Failure::Usage(format!("--format csv is not available for `{command}`"))
}

fn lab_config(flag: Option<usize>, env: Option<&str>) -> Result<LabConfig, Failure> {
    let mut config = LabConfig::default();
    if let Some(raw) = env {
        let limit = raw
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{LIMIT_ENV} must be a natural number, got {raw:?}")))?;
        config.limit = limit;
    }
    if let Some(limit) = flag {
        config.limit = limit;
    }
    Ok(config)
}

fn execute(cli: &Cli, limit_env: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Stats { word } => {
            let w = word_arg(word)?;
            let report = StatReport::of(&w);
            match format {
                Format::Json => emit_json(out, &report),
                Format::Csv => Err(no_csv("stats")),
                Format::Text => emit(out, &stats_text(&report)),
            }
        }
        Command::Map { word, trace } => {
            let w = word_arg(word)?;
            let steps = trace.then(|| psi_trace(&w));
            let image = steps.as_ref().map_or_else(|| psi(&w), |t| t.image());
            match format {
                Format::Json => {
                    let mut doc = json!({ "input": w, "image": image });
                    if let Some(t) = &steps {
                        doc["trace"] = serde_json::to_value(t).expect("serializable trace");
                    }
                    emit_json(out, &doc)
                }
                Format::Csv => Err(no_csv("map")),
                Format::Text => {
                    let mut text = String::new();
                    for s in steps.iter().flat_map(|t| &t.steps) {
                        text.push_str(&format!("letter {} at c={:<3} {}\n", s.letter, s.position, s.image));
                    }
                    text.push_str(&format!("{image}\n"));
                    emit(out, &text)
                }
            }
        }
        Command::Unmap { word } => {
            let w = word_arg(word)?;
            let preimage = psi_inverse(&w);
            match format {
                Format::Json => emit_json(out, &json!({ "input": w, "image": preimage })),
                Format::Csv => Err(no_csv("unmap")),
                Format::Text => emit(out, &format!("{preimage}\n")),
            }
        }
        Command::Insertions { word } => {
            let w = word_arg(word)?;
            let positions = admissible(&w);
            let rows: Vec<Inserted> = positions
                .order
                .iter()
                .enumerate()
                .map(|(index, &position)| {
                    let image = insert(&w, position).expect("admissible positions are in range");
                    Inserted { index, position, dinv: dinv(&image), image }
                })
                .collect();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "w": w, "dinv": dinv(&w), "maxb": positions.maxb, "maxa": positions.maxa,
                        "i0": positions.i0, "order": positions.order, "insertions": rows,
                    }),
                ),
                Format::Csv => Err(no_csv("insertions")),
                Format::Text => {
                    let mut text = format!(
                        "w      {w}\ndinv   {}\nmaxb   {}\nmaxa   {}\ni0     {}\norder  {}\n",
                        dinv(&w),
                        join(&positions.maxb),
                        join(&positions.maxa),
                        positions.i0.map_or("-".to_string(), |i| i.to_string()),
                        join(&positions.order),
                    );
                    for row in &rows {
                        text.push_str(&format!(
                            "c_{} = {:<3} {}  dinv {}\n",
                            row.index, row.position, row.image, row.dinv
                        ));
                    }
                    emit(out, &text)
                }
            }
        }
        Command::Enumerate { n, with_stats } => enumerate_cmd(*n, *with_stats, format, limit_env, out),
        Command::Verify { n, checks, limit } => {
            let checks = Check::parse_list(checks)?;
            let config = lab_config(*limit, limit_env)?;
            let report = verify(*n, &checks, &config)?;
            match format {
                Format::Json => emit_json(out, &report)?,
                Format::Csv => return Err(no_csv("verify")),
                Format::Text => {
                    let mut text =
                        format!("n = {}, {} words, {} ms\n", report.n, report.words, report.elapsed.as_millis());
                    for c in &report.checks {
                        match &c.counterexample {
                            _ if c.pass => text.push_str(&format!("PASS {}\n", c.name)),
                            Some(w) => text.push_str(&format!("FAIL {}  counterexample {w}\n", c.name)),
                            None => text.push_str(&format!("FAIL {}\n", c.name)),
                        }
                    }
                    emit(out, &text)?;
                }
            }
            match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(Failure::Verify(format!(
                    "check {} failed{}",
                    c.name,
                    c.counterexample.as_ref().map_or(String::new(), |w| format!(" on {w}"))
                ))),
            }
        }
        Command::Matrix { n, pair } => {
            let stats: Vec<&str> = pair.split(',').collect();
            let [first, second] = stats[..] else {
                return Err(Failure::Usage(format!("--pair expects two statistics, got {pair:?}")));
            };
            let config = lab_config(None, limit_env)?;
            let m = qt_matrix(*n, first.parse::<Statistic>()?, second.parse::<Statistic>()?, &config)?;
            match format {
                Format::Json => emit_json(out, &m),
                Format::Csv => emit(out, &m.to_csv()),
                Format::Text => emit(out, &matrix_text(&m)),
            }
        }
        Command::Render { word, bounce } => {
            let w = word_arg(word)?;
            let lines = render_lines(&w, *bounce)?;
            match format {
                Format::Json => emit_json(out, &json!({ "w": w, "bounce": bounce, "grid": lines })),
                Format::Csv => Err(no_csv("render")),
                Format::Text => emit(out, &(lines.join("\n") + "\n")),
            }
        }
    }
}

fn enumerate_cmd(
    n: usize,
    with_stats: bool,
    format: Format,
    limit_env: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let limit = lab_config(None, limit_env)?.limit;
    if n > limit {
        return Err(Error::OverLimit { n, limit }.into());
    }
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = enumerate(n)
                .map(|w| {
                    if with_stats {
                        json!({ "w": w, "area": area(&w), "dinv": dinv(&w), "bounce": bounce(&w) })
                    } else {
                        json!(w)
                    }
                })
                .collect();
            emit_json(out, &rows)
        }
        Format::Csv => {
            emit(out, if with_stats { "w,area,dinv,bounce\n" } else { "w\n" })?;
            for w in enumerate(n) {
                let line = if with_stats {
                    format!("\"{w}\",{},{},{}\n", area(&w), dinv(&w), bounce(&w))
                } else {
                    format!("\"{w}\"\n")
                };
                emit(out, &line)?;
            }
            Ok(())
        }
        Format::Text => {
            for w in enumerate(n) {
                let line = if with_stats {
                    format!("{w}\tarea {}\tdinv {}\tbounce {}\n", area(&w), dinv(&w), bounce(&w))
                } else {
                    format!("{w}\n")
                };
                emit(out, &line)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Inserted {
    index: usize,
    position: usize,
    image: AreaSequence,
    dinv: u64,
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn stats_text(r: &StatReport) -> String {
    format!(
        "w                {}\nn                {}\narea             {}\ndinv             {}\ndinv_profile     {}\n\
         bounce           {}\nbounce_sequence  {}\nbounces          {}\n",
        r.w,
        r.n,
        r.area,
        r.dinv,
        join(&r.dinv_profile),
        r.bounce,
        r.bounce_sequence,
        join(&r.bounces)
    )
}

fn matrix_text(m: &QtMatrix) -> String {
    let width =
        m.counts.iter().flatten().map(|c| c.to_string().len()).max().unwrap_or(1).max(m.dim().to_string().len());
    let corner = format!("{}\\{}", m.pair[0], m.pair[1]);
    let mut text = format!("{corner:>w$}", w = corner.len().max(width));
    for b in 0..m.dim() {
        text.push_str(&format!(" {b:>width$}"));
    }
    text.push('\n');
    for (a, row) in m.counts.iter().enumerate() {
        text.push_str(&format!("{a:>w$}", w = corner.len().max(width)));
        for c in row {
            text.push_str(&format!(" {c:>width$}"));
        }
        text.push('\n');
    }
    text
}
