use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eisenstein_cubic_cli::cache::LCache;
use eisenstein_cubic_cli::commands::{cmd_constants, cmd_family, cmd_gauss, cmd_lvalue, cmd_moment, cmd_symbol, parse_grid, MomentKind};
use eisenstein_cubic_cli::config::{ConfigOverrides, OutputFormat, RunConfig, YStrategy, CACHE_ENV};
use eisenstein_cubic_cli::literal::parse_eisenstein;
use eisenstein_cubic_cli::verify::{run_suite, Suite, DEFAULT_SEED};
use eisenstein_cubic_cli::Result;
use eisenstein_cubic::moments::dyadic_grid;
use eisenstein_cubic::Eisenstein;

const LITERAL_HELP: &str = "Eisenstein integers are written a+b*w (w = e^{2πi/3}): an optional sign, an integer, \
and optionally +/- an integer followed by *w, e.g. 1+3*w, -2-3*w, 10, 4*w. Whitespace is ignored.";

#[derive(Parser)]
#[command(name = "cubic-moments", version, about = "Cubic characters over Z[w] and moments of their central L-values", after_help = LITERAL_HELP)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// TOML file with any of the run settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// AFE error tolerance per L-value.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// `balanced` (Y = sqrt(3q)) or a fixed positive Y.
    #[arg(long, global = true)]
    y: Option<YStrategy>,
    #[arg(long, global = true)]
    prime_cutoff: Option<u64>,
    #[arg(long, global = true)]
    cube_cutoff: Option<u64>,
    #[arg(long, global = true)]
    inner_cutoff: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// L-value cache file.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the family members with conductor norm <= X.
    Family {
        #[arg(long)]
        x_max: Option<u64>,
    },
    /// The cubic residue symbol (alpha/n)_3 for primary n.
    Symbol {
        #[arg(long, value_parser = parse_literal)]
        alpha: Eisenstein,
        #[arg(long, value_parser = parse_literal)]
        n: Eisenstein,
        /// Use the factorization oracle instead of reciprocity.
        #[arg(long)]
        oracle: bool,
    },
    /// The cubic Gauss sum g(r, n).
    Gauss {
        #[arg(long, value_parser = parse_literal)]
        r: Eisenstein,
        #[arg(long, value_parser = parse_literal)]
        n: Eisenstein,
    },
    /// L(1/2, chi) for the family member (c1, c2).
    Lvalue {
        #[arg(long, value_parser = parse_literal)]
        c1: Eisenstein,
        #[arg(long, value_parser = parse_literal)]
        c2: Eisenstein,
    },
    /// Moment reports, one row per X.
    Moment {
        #[arg(value_enum)]
        kind: MomentKind,
        /// Comma-separated X values; defaults to 5 dyadic steps below --x-max.
        #[arg(long)]
        x_grid: Option<String>,
        #[arg(long)]
        x_max: Option<u64>,
    },
    /// The constants A, B, D, E and h9.
    Constants,
    /// Run the invariant suites; exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_literal(s: &str) -> std::result::Result<Eisenstein, String> {
    parse_eisenstein(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when `verify` finds a failing check.
fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    let x_max = match &cli.command {
        Command::Family { x_max } | Command::Moment { x_max, .. } => *x_max,
        _ => None,
    };
    let flags = ConfigOverrides {
        x_max,
        tolerance: g.tolerance,
        y_strategy: g.y,
        prime_cutoff: g.prime_cutoff,
        cube_cutoff: g.cube_cutoff,
        inner_cutoff: g.inner_cutoff,
        threads: g.threads,
        cache_path: g.cache.clone(),
        output_format: g.format,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), &flags)?;
    if cfg.threads > 0 {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }

    let text = match cli.command {
        Command::Family { .. } => cmd_family(cfg.x_max)?,
        Command::Symbol { alpha, n, oracle } => format!("{}\n", cmd_symbol(&alpha, &n, oracle)?),
        Command::Gauss { r, n } => cmd_gauss(&r, &n)?,
        Command::Lvalue { c1, c2 } => cmd_lvalue(&c1, &c2, &cfg)?,
        Command::Moment { kind, x_grid, .. } => {
            let grid = match x_grid {
                Some(s) => parse_grid(&s)?,
                None => dyadic_grid(cfg.x_max, 5),
            };
            let mut cache = LCache::open(&cfg.cache_path)?;
            let (text, summary) = cmd_moment(kind, &grid, &cfg, &mut cache)?;
            eprintln!("{summary}");
            text
        }
        Command::Constants => cmd_constants(&cfg)?,
        Command::Verify { suite, seed } => {
            let outcomes = run_suite(suite, seed, |o| eprintln!("{o}"));
            let failed = outcomes.iter().filter(|o| o.error.is_some()).count();
            println!("{} checks, {} passed, {failed} failed (seed {seed})", outcomes.len(), outcomes.len() - failed);
            return Ok(failed == 0);
        }
    };
    match &g.output {
        Some(path) => std::fs::write(path, text).map_err(eisenstein_cubic_cli::CliError::io_error(path))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(eisenstein_cubic_cli::CliError::io_error("<stdout>"))?,
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Runs the command with `-o` pointing at a temporary file and returns
    /// the result and the file contents.
    fn invoke(args: &[&str]) -> (Result<bool>, String) {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out.txt");
        let mut argv = vec!["cubic-moments"];
        argv.extend_from_slice(args);
        argv.extend(["-o", out.to_str().unwrap()]);
        let cli = Cli::try_parse_from(argv).expect("arguments parse");
        let r = run(cli);
        (r, std::fs::read_to_string(&out).unwrap_or_default())
    }

    fn output_of(args: &[&str]) -> String {
        let (r, text) = invoke(args);
        assert!(r.unwrap(), "{args:?}");
        text
    }

    #[test]
    fn family_lists_known_members() {
        let text = output_of(&["family", "--x-max", "200"]);
        let rows: Vec<_> = text.lines().collect();
        assert_eq!(rows[0], "c1,c2,cond_norm");
        assert!(rows.contains(&"10,1,100"));
        assert!(rows.contains(&"-2,7,196"));
        assert!(rows[1..].iter().all(|r| r.rsplit(',').next().unwrap().parse::<u64>().unwrap() <= 200));
    }

    #[test]
    fn symbol_example() {
        assert_eq!(output_of(&["symbol", "--alpha", "2", "--n", "1+3*w"]), "w^2\n");
        assert_eq!(output_of(&["symbol", "--alpha", "2", "--n", "1 + 3 * w", "--oracle"]), "w^2\n");
    }

    #[test]
    fn malformed_literal_is_rejected() {
        let err = Cli::try_parse_from(["cubic-moments", "symbol", "--alpha", "2", "--n", "1+3w"]).err().unwrap();
        assert!(err.to_string().contains("malformed"), "{err}");
    }

    #[test]
    fn capacity_error_names_the_parameter() {
        let (r, _) = invoke(&["family", "--x-max", "1000000"]);
        let err = r.unwrap_err().to_string();
        assert!(err.contains("x_max") && err.contains("1000000"), "{err}");
    }

    #[test]
    fn moment_reports_are_stable_across_cache_runs() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("c.jsonl");
        let args = [
            "moment", "first", "--x-grid", "250,500,1000", "--prime-cutoff", "1000", "--cube-cutoff", "50",
            "--inner-cutoff", "50", "--cache", cache.to_str().unwrap(),
        ];
        let cold = output_of(&args);
        let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
        assert_eq!(lines, 136);
        let warm = output_of(&args);
        assert_eq!(cold, warm);
        assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), lines);
        let rows: Vec<_> = cold.lines().collect();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].contains("predicted_main") && rows[0].contains("ratio"));
        assert!(rows[3].starts_with("1000,136,"));
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("c.jsonl");
        std::fs::write(
            &cache,
            "{\"c1_a\":10,\"c1_b\":0,\"c2_a\":1,\"c2_b\":0,\"cond_norm\":100,\"l_re\":1.0,\"l_im\":0.0,\"w_re\":10.0,\"w_im\":0.0,\"y_param\":1.0,\"trunc_bound\":0.0,\"schema_version\":0}\n",
        )
        .unwrap();
        let (r, _) = invoke(&["moment", "first", "--x-grid", "100", "--cache", cache.to_str().unwrap()]);
        assert!(r.unwrap_err().to_string().contains("schema version 0"));
    }

    #[test]
    fn verify_one_suite_passes() {
        let cli = Cli::try_parse_from(["cubic-moments", "verify", "--suite", "eisenstein", "--seed", "1"]).unwrap();
        assert!(run(cli).unwrap());
    }

    #[test]
    fn config_file_is_read() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.toml");
        std::fs::write(&cfg, "output_format = \"jsonl\"\nprime_cutoff = 1000\ncube_cutoff = 20\ninner_cutoff = 20\n").unwrap();
        let text = output_of(&["constants", "--config", cfg.to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(v["h9"], "9");
        let (r, _) = invoke(&["constants", "--config", cfg.to_str().unwrap(), "--tolerance", "1"]);
        assert!(r.is_err());
    }
}
