mod render;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use grove_forge_core::ast::{Checker, GlickOptions};
use grove_forge_core::cube::{balanced_point, polynomial_json, Analysis, CubeEngine, Point3};
use grove_forge_core::grove::{count_groves, enumerate_groves, to_ast_with, validate_with, Validity};
use grove_forge_core::harness::{run_verification, VerifyOptions};
use grove_forge_core::reconstruct::{build_grove, search_grove};
use grove_forge_core::{Ast, Error, Grove, Lattice};
use serde_json::Value;

const THREADS_VAR: &str = "GROVE_FORGE_THREADS";

#[derive(Parser)]
#[command(name = "grove-forge", version, about = "Groves, alternating sign triangles and the cube recurrence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every grove of a size, one JSON object per line.
    Enumerate {
        #[arg(long)]
        size: i32,
        #[arg(long)]
        count_only: bool,
        /// Keep groves whose triangle has no -1.
        #[arg(long)]
        permutation_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate groves or test triangles against the property lists.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        glick: bool,
        #[arg(long)]
        section5: bool,
        /// Allow -1 entries in the first property.
        #[arg(long)]
        strict_p1: bool,
    },
    /// Build a grove from a 0/1 triangle.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Constructive)]
        method: Method,
        /// Write one SVG per construction stage into this directory.
        #[arg(long)]
        trace_svg: Option<PathBuf>,
    },
    /// Evaluate the cube recurrence symbolically.
    Recurrence {
        #[arg(long)]
        level: i64,
        /// Point `I,J,K` on the level; defaults to the balanced point.
        #[arg(long, value_parser = parse_point)]
        point: Option<Point3>,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a grove or triangle.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = render::DEFAULT_SCALE)]
        scale: f64,
    },
    /// Check every claim at small sizes and write a JSON report.
    Verify {
        #[arg(long)]
        max_size: i32,
        /// Findings fail the run.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Constructive,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

fn parse_point(s: &str) -> Result<Point3, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [i, j, k] => Ok(Point3::new(i, j, k)),
        _ => Err("expected I,J,K".to_string()),
    }
}

/// Errors carrying the exit code they map to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: error.into() }
}

fn failed(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, error: error.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(_) | Error::InvalidSize(_) | Error::LimitExceeded(_) => usage(e),
            _ => failed(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.trim().parse().with_context(|| format!("{THREADS_VAR}={v}"))?;
        if n == 0 {
            return Err(anyhow!("{THREADS_VAR} must be at least 1"));
        }
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { size, count_only, permutation_only, out } => {
            enumerate(size, count_only, permutation_only, out.as_deref())
        }
        Command::Check { input, glick, section5, strict_p1 } => check(&input, glick, section5, strict_p1),
        Command::Reconstruct { input, method, trace_svg } => reconstruct(&input, method, trace_svg.as_deref()),
        Command::Recurrence { level, point, stats, out } => recurrence(level, point, stats, out.as_deref()),
        Command::Render { input, format, out, scale } => render_cmd(&input, format, out.as_deref(), scale),
        Command::Verify { max_size, strict, report } => verify(max_size, strict, &report),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(failed),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)
}

enum Input {
    Grove(Grove),
    Ast(Ast),
}

/// Every JSON document in the text; objects with `rows` are triangles.
fn parse_inputs(text: &str) -> Result<Vec<Input>, Failure> {
    let mut inputs = Vec::new();
    for doc in serde_json::Deserializer::from_str(text).into_iter::<Value>() {
        let doc = doc.map_err(|e| usage(Error::Malformed(e.to_string())))?;
        let raw = doc.to_string();
        let item = if doc.get("rows").is_some() {
            Input::Ast(Ast::from_json(&raw)?)
        } else {
            Input::Grove(Grove::from_json(&raw)?)
        };
        inputs.push(item);
    }
    if inputs.is_empty() {
        return Err(usage(Error::Malformed("empty input".to_string())));
    }
    Ok(inputs)
}

fn single_input(path: &Path) -> Result<Input, Failure> {
    let mut inputs = parse_inputs(&read_input(path)?)?;
    if inputs.len() != 1 {
        return Err(usage(anyhow!("{} holds {} documents, expected one", path.display(), inputs.len())));
    }
    Ok(inputs.remove(0))
}

fn single_ast(path: &Path) -> Result<Ast, Failure> {
    match single_input(path)? {
        Input::Ast(a) => Ok(a),
        Input::Grove(_) => Err(usage(Error::Malformed("missing field `rows`".to_string()))),
    }
}

fn enumerate(size: i32, count_only: bool, permutation_only: bool, out: Option<&Path>) -> Outcome {
    if count_only && !permutation_only {
        emit(&format!("{}\n", count_groves(size)?), out)?;
        return Ok(0);
    }
    let lat = Lattice::new(size)?;
    let mut groves = enumerate_groves(size)?;
    if permutation_only {
        groves.retain(|g| to_ast_with(&lat, g).is_ok_and(|a| !a.has_minus_one()));
    }
    let text = if count_only {
        format!("{}\n", groves.len())
    } else {
        groves.iter().map(|g| g.to_json(&lat) + "\n").collect()
    };
    emit(&text, out)?;
    Ok(0)
}

fn check(path: &Path, glick: bool, section5: bool, strict_p1: bool) -> Outcome {
    let inputs = parse_inputs(&read_input(path)?)?;
    let opts = GlickOptions { literal_p1: strict_p1 };
    let mut out = String::new();
    let mut ok = true;
    for (k, input) in inputs.iter().enumerate() {
        if inputs.len() > 1 {
            let _ = writeln!(out, "# {}", k + 1);
        }
        let ast = match input {
            Input::Grove(g) => {
                let lat = Lattice::new(g.n)?;
                match validate_with(&lat, g) {
                    Validity::Valid => {
                        let _ = writeln!(out, "grove: valid");
                    }
                    Validity::Invalid(vs) => {
                        ok = false;
                        let _ = writeln!(out, "grove: invalid");
                        for v in vs {
                            let _ = writeln!(out, "  {v}");
                        }
                        continue;
                    }
                }
                let a = to_ast_with(&lat, g)?;
                out.push_str(&a.to_ascii());
                a
            }
            Input::Ast(a) => a.clone(),
        };
        let checker = Checker::new(ast.n())?;
        if glick || !section5 {
            let r = checker.glick(&ast, opts);
            ok &= r.passes();
            write_checks(&mut out, r.checks().iter().map(|(name, c)| (*name, c.pass, c.witness.as_ref())));
        }
        if section5 {
            let r = checker.section5(&ast);
            ok &= r.passes();
            write_checks(&mut out, r.checks().iter().map(|(name, c)| (*name, c.pass, c.witness.as_ref())));
        }
    }
    print!("{out}");
    Ok(if ok { 0 } else { 1 })
}

fn write_checks<'a>(
    out: &mut String,
    checks: impl Iterator<Item = (&'a str, bool, Option<&'a grove_forge_core::ast::Witness>)>,
) {
    for (name, pass, witness) in checks {
        match witness {
            Some(w) if !pass => {
                let _ = writeln!(out, "{name}: fail ({w})");
            }
            _ => {
                let _ = writeln!(out, "{name}: {}", if pass { "pass" } else { "fail" });
            }
        }
    }
}

fn reconstruct(path: &Path, method: Method, trace: Option<&Path>) -> Outcome {
    let config = single_ast(path)?;
    let lat = Lattice::new(config.n())?;
    match method {
        Method::Search => {
            if trace.is_some() {
                return Err(usage(anyhow!("--trace-svg needs --method constructive")));
            }
            match search_grove(&config) {
                Some(g) => {
                    println!("{}", g.to_json(&lat));
                    Ok(0)
                }
                None => {
                    eprintln!("no grove has this triangle");
                    Ok(1)
                }
            }
        }
        Method::Constructive => {
            let built = build_grove(&config)?;
            if let Some(dir) = trace {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(failed)?;
                let big = Lattice::new(config.n() + 1)?;
                let mut pages: Vec<(String, String)> = built
                    .snapshots
                    .iter()
                    .map(|s| (s.label.clone(), render::aux_svg(&big, &s.aux, None, render::DEFAULT_SCALE)))
                    .collect();
                pages.push(("red".to_string(), render::aux_svg(&big, &built.aux, Some(&built.red), render::DEFAULT_SCALE)));
                pages.push(("grove".to_string(), render::grove_svg(&lat, &built.grove, render::DEFAULT_SCALE)));
                for (k, (label, svg)) in pages.iter().enumerate() {
                    let name = format!("{k:02}-{}.svg", label.replace(|c: char| !c.is_ascii_alphanumeric(), "_"));
                    let file = dir.join(name);
                    fs::write(&file, svg).with_context(|| format!("writing {}", file.display())).map_err(failed)?;
                }
            }
            println!("{}", built.grove.to_json(&lat));
            eprintln!(
                "routing backtracks {}, red backtracks {}",
                built.stats.routing_backtracks, built.stats.red_backtracks
            );
            Ok(0)
        }
    }
}

fn recurrence(level: i64, point: Option<Point3>, stats: bool, out: Option<&Path>) -> Outcome {
    let p = point.unwrap_or_else(|| balanced_point(level));
    if p.level() != level {
        return Err(usage(anyhow!("point {p} lies on level {}, not {level}", p.level())));
    }
    if level > i64::from(grove_forge_core::harness::CUBE_GUARD) {
        return Err(usage(Error::LimitExceeded(format!(
            "level {level} exceeds {}",
            grove_forge_core::harness::CUBE_GUARD
        ))));
    }
    let f = CubeEngine::new().evaluate_f(p)?;
    emit(&(polynomial_json(p, &f) + "\n"), out)?;
    if stats {
        let a = Analysis::of(&f);
        println!(
            "monomials {}, max |exponent| {}, coefficients all one: {}, variables {}",
            a.monomial_count, a.max_abs_exponent, a.all_coefficients_one, a.variables_touched
        );
    }
    Ok(0)
}

fn render_cmd(path: &Path, format: Format, out: Option<&Path>, scale: f64) -> Outcome {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(usage(anyhow!("scale must be positive")));
    }
    let text = match single_input(path)? {
        Input::Grove(g) => {
            let lat = Lattice::new(g.n)?;
            match format {
                Format::Svg => render::grove_svg(&lat, &g, scale),
                Format::Ascii => to_ast_with(&lat, &g)?.to_ascii(),
            }
        }
        Input::Ast(a) => match format {
            Format::Svg => render::ast_svg(&Lattice::new(a.n())?, &a, scale),
            Format::Ascii => a.to_ascii(),
        },
    };
    emit(&text, out)?;
    Ok(0)
}

fn verify(max_size: i32, strict: bool, path: &Path) -> Outcome {
    let report = run_verification(max_size, VerifyOptions { strict })?;
    fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display())).map_err(failed)?;
    print!("{}", report.summary());
    Ok(if strict && !report.passed { 1 } else { 0 })
}
