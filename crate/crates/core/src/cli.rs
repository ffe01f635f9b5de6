//! Command-line front end for the `dunwoody` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::amalgam::Word;
use crate::certify::{run_with, RunOptions};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::text::parse_expr;
use crate::tree::{build_ball_with, classify, joint_stabilizer_census_with};

#[derive(Debug, Parser)]
#[command(
    name = "dunwoody",
    version,
    about = "Exact computations in the segments of Dunwoody's inaccessible group"
)]
pub struct Cli {
    /// TOML file overriding enumeration caps and budgets.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the centralizer of g_i at every level in a range.
    Verify {
        #[arg(long, default_value_t = 2)]
        i_min: u32,
        #[arg(long, default_value_t = 12)]
        i_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add wall-clock timings (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Parse an element and print its canonical form.
    Eval { expr: String },
    /// Print the reduced form of a word.
    Reduce { word: String },
    /// Print `elliptic` or `loxodromic <translation length>`.
    Classify { word: String },
    /// Print the edge list of the ball around the base vertex.
    TreeBall {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        radius: u32,
    },
    /// Count elements of G_i fixing the census ray up to depth d.
    Census {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        d: u32,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ChecksFailed,
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let limits = match &cli.config {
        Some(path) => Limits::from_file(path)?,
        None => Limits::default(),
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let io = |e: std::io::Error| Error::Config(format!("write failed: {e}"));
    match &cli.command {
        Command::Verify {
            i_min,
            i_max,
            format,
            seed,
            timings,
        } => {
            let report = run_with(&RunOptions {
                i_min: *i_min,
                i_max: *i_max,
                seed: *seed,
                limits,
                exec,
                timings: *timings,
            })?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            return Ok(if report.passed() {
                Outcome::Success
            } else {
                Outcome::ChecksFailed
            });
        }
        Command::Eval { expr } => {
            writeln!(out, "{}", parse_expr(expr)?).map_err(io)?;
        }
        Command::Reduce { word } => {
            let w: Word = word.parse()?;
            writeln!(out, "{}", w.reduce()).map_err(io)?;
        }
        Command::Classify { word } => {
            let w: Word = word.parse()?;
            writeln!(out, "{}", classify(&w)).map_err(io)?;
        }
        Command::TreeBall { i, radius } => {
            let ball = build_ball_with(*i, *radius, &limits, exec)?;
            out.write_all(ball.to_edge_list().as_bytes()).map_err(io)?;
        }
        Command::Census { i, d } => {
            writeln!(
                out,
                "{}",
                joint_stabilizer_census_with(*i, *d, &limits, exec)?
            )
            .map_err(io)?;
        }
    }
    Ok(Outcome::Success)
}

/// Parses the process arguments and runs. Exit status: 0 success, 1 failed
/// checks or a computation error, 2 usage or input error.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::EmptyRange { .. }
        | Error::LevelOutOfRange { .. }
        | Error::Config(_)
        | Error::LevelMismatch { .. }
        | Error::InvalidElement { .. } => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (Result<Outcome>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("dunwoody").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let r = execute(&cli, &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(run(&["eval", "(0 1)(0 1)"]).1, "()\n");
        assert_eq!(
            run(&["eval", "g@2[v{-1,0}; (-2 -1)]"]).1,
            "g@2[v{-1,0}; (-2 -1)]\n"
        );
        assert_eq!(
            run(&[
                "eval",
                "w@2[A:g@2[v{-1,0}; (-2 -1)]; A:inv(g@2[v{-1,0}; (-2 -1)])]"
            ])
            .1,
            "w@2[]\n"
        );
        let (r, _) = run(&["eval", "(0 1"]);
        assert!(matches!(r, Err(Error::Parse { .. })));
    }

    #[test]
    fn classify_and_census() {
        let g2 = "w@2[A:g@2[v{-1,0}; (-2 -1)]; B:g@3[v{-2,-1}; (-3 -2)]]";
        assert_eq!(run(&["classify", g2]).1, "loxodromic 2\n");
        assert_eq!(run(&["reduce", g2]).1, format!("{g2}\n"));
        assert_eq!(run(&["census", "--i", "1", "--d", "1"]).1, "12\n");
    }

    #[test]
    fn tree_ball_radius_one() {
        let (r, text) = run(&["tree-ball", "--i", "1", "--radius", "1"]);
        assert_eq!(r.unwrap(), Outcome::Success);
        let edges = text.lines().filter(|l| l.starts_with("edge ")).count();
        assert_eq!(text.lines().count() - edges, 5);
        assert_eq!(edges, 4);
    }

    #[test]
    fn verify_range_errors_are_usage_errors() {
        let (r, _) = run(&["verify", "--i-min", "2", "--i-max", "1"]);
        assert_eq!(exit_code(&r.unwrap_err()), 2);
        assert!(Cli::try_parse_from(["dunwoody", "verify", "--bogus"]).is_err());
    }

    #[test]
    fn verify_single_level() {
        let (r, text) = run(&["verify", "--i-min", "3", "--i-max", "3", "--format", "json"]);
        assert_eq!(r.unwrap(), Outcome::Success);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["levels"][0]["subgroup_order"], "24");
        assert_eq!(v["levels"][0]["index_lower_bound"], "6");
    }
}
