//! `oscillkit` command-line front end.

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use oscillkit::gmfourier::{aljancic_bound, gm_certify, parseval_norm, synthesize, PowerSvCoefficients, SeriesKind, SlowlyVarying};
use oscillkit::harness::{self, InequalityReport};
use oscillkit::maximal::{sharp_maximal, sjt_maximal, sjt_modified};
use oscillkit::norms::{k_l1_linfty, k_lorentz_linfty, k_lp_bmo, lz_norm, KProfile, LzParams};
use oscillkit::smoothness::{besov_norm, modulus_curve, BesovParams};
use oscillkit::{rearrange_exact, Error, GridFunction, RearrangementProfile};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const THREADS_ENV: &str = "OSCILLKIT_THREADS";

#[derive(Parser)]
#[command(name = "oscillkit", version, about = "Rearrangements, sharp maximal functions, smoothness and inequality checks")]
struct Cli {
    /// cap on worker threads; falls back to OSCILLKIT_THREADS
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// seed for random test functions that leave theirs unset
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// write the main output here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decreasing rearrangement of a grid function, as a step profile.
    Rearrange {
        #[arg(long)]
        input: PathBuf,
    },
    /// Sharp or s-threshold maximal function of a grid function.
    Maximal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MaximalOp::Sharp)]
        op: MaximalOp,
        #[arg(long, default_value_t = 0.01)]
        s: f64,
        /// include the half-shifted dyadic cubes
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        shifted: bool,
    },
    /// Modulus of smoothness in a Lorentz-Zygmund norm at one or more `t`.
    Modulus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Besov-type norm over a Lorentz-Zygmund base.
    Besov {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        xi: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        homogeneous: bool,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Lorentz-Zygmund norm of a rearrangement profile.
    Norm {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        /// defaults to the profile's total measure
        #[arg(long)]
        domain_measure: Option<f64>,
        /// profile CSV, or a grid CSV with `--grid`
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        grid: bool,
    },
    /// Tabulated K-functional of a grid function.
    Kfunc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        couple: Couple,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 1e-4)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
    /// Coefficients, synthesized function and certificate of a general monotone series.
    Gm {
        #[arg(long, value_enum)]
        family: GmFamily,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// number of coefficients
        #[arg(long = "N", alias = "n", default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// lower limit `A` of the family `b(x) = exp(−∫_A^{log x} dt/√(log t))`
        #[arg(long, default_value_t = 4.0)]
        a: f64,
        #[arg(long, value_enum, default_value_t = Series::Cosine)]
        series: Series,
        /// coefficients CSV for the custom family
        #[arg(long)]
        input: Option<PathBuf>,
        /// grid size of the synthesized function; defaults to 4N rounded up to a power of two
        #[arg(long)]
        samples: Option<usize>,
        /// directory for coefficients.csv, function.csv and certificate.json
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run one inequality verifier on a JSON config.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        config: PathBuf,
        /// also write `t,lhs,rhs` rows of the main report
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fit the growth of the extrapolation constant.
    Extrapolate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct BaseArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MaximalOp {
    Sharp,
    Sjt,
    SjtMod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Couple {
    LorentzLinfty,
    L1Linfty,
    LpBmo,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum GmFamily {
    PowerLog,
    CustomCsv,
    AppendixA,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    Cosine,
    Sine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Devore,
    DevoreSharp,
    Moduli,
    Kolyada,
    Herz,
    SharpVsSjt,
    Bds,
    Gj,
    Fs,
    DevoreDer,
    Extrapolate,
    CompareIj,
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_grid(path: &Path) -> Result<GridFunction, Failure> {
    GridFunction::from_csv(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn thread_cap(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Fills the seed of every `random_steps` function that has none, in document order.
fn seed_random_functions(v: &mut Value, seed: u64, next: &mut u64) {
    match v {
        Value::Object(map) => {
            if map.get("kind").and_then(Value::as_str) == Some("random_steps") && !map.contains_key("seed") {
                map.insert("seed".into(), json!(seed.wrapping_add(*next)));
                *next += 1;
            }
            for child in map.values_mut() {
                seed_random_functions(child, seed, next);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|c| seed_random_functions(c, seed, next)),
        _ => {}
    }
}

fn parse_config<T: serde::de::DeserializeOwned>(path: &Path, seed: u64) -> Result<T, Failure> {
    let text = read(path)?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: line {}: {e}", path.display(), e.line())))?;
    seed_random_functions(&mut v, seed, &mut 0);
    serde_json::from_value(v).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn run_theorem(theorem: Theorem, config: &Path, seed: u64) -> Result<InequalityReport, Failure> {
    let report = match theorem {
        Theorem::Devore => harness::verify_devore_lorentz(&parse_config(config, seed)?),
        Theorem::DevoreSharp => harness::verify_devore_sharpness(&parse_config(config, seed)?),
        Theorem::Moduli => harness::verify_moduli_coefficients(&parse_config(config, seed)?),
        Theorem::Kolyada => harness::verify_kolyada_lerner(&parse_config(config, seed)?),
        Theorem::Herz => harness::verify_herz(&parse_config(config, seed)?),
        Theorem::SharpVsSjt => harness::verify_equivalence(&parse_config(config, seed)?),
        Theorem::Bds => harness::verify_bds_log(&parse_config(config, seed)?),
        Theorem::Gj => harness::verify_gj(&parse_config(config, seed)?),
        Theorem::Fs => harness::verify_fs_limiting(&parse_config(config, seed)?),
        Theorem::DevoreDer => harness::verify_devore_der(&parse_config(config, seed)?),
        Theorem::Extrapolate => harness::extrapolation_fit(&parse_config(config, seed)?),
        Theorem::CompareIj => harness::compare_i_j(&parse_config(config, seed)?),
    };
    Ok(report?)
}

fn verify(cli: &Cli, theorem: Theorem, config: &Path, csv: &Option<PathBuf>) -> Result<(), Failure> {
    let report = run_theorem(theorem, config, cli.seed)?;
    emit(&cli.output, &(report.to_json() + "\n"))?;
    if let Some(path) = csv {
        write(path, &report.to_csv())?;
    }
    if report.all_consistent() {
        Ok(())
    } else {
        Err(Failure { code: 2, msg: format!("{}: verdict {:?} does not match the expected {:?}", report.theorem_id, report.verdict, report.expectation) })
    }
}

fn coefficients_csv(a: &[f64]) -> String {
    let mut s = String::from("n,a\n");
    for (i, v) in a.iter().enumerate() {
        s.push_str(&format!("{},{}\n", i + 1, v));
    }
    s
}

fn parse_coefficients(text: &str) -> Result<Vec<f64>, Failure> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("n,") {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or(line).trim();
        let v: f64 = field.parse().map_err(|_| Failure::from(Error::Parse { line: k + 1, msg: format!("not a number: {field:?}") }))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no coefficients".into() }.into());
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn gm(
    cli: &Cli,
    family: GmFamily,
    p: f64,
    q: f64,
    n: usize,
    alpha: f64,
    beta: f64,
    a: f64,
    series: Series,
    input: &Option<PathBuf>,
    samples: Option<usize>,
    out_dir: &Option<PathBuf>,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(usage("N must be at least 1"));
    }
    let coeffs = match family {
        GmFamily::PowerLog => PowerSvCoefficients::new(p, SlowlyVarying::log_power(alpha, beta, q), 0).to_vec(n),
        GmFamily::AppendixA => PowerSvCoefficients::new(p, SlowlyVarying::appendix_a(a, q)?, 0).to_vec(n),
        GmFamily::CustomCsv => {
            let path = input.as_ref().ok_or_else(|| usage("--family custom_csv needs --input"))?;
            parse_coefficients(&read(path)?)?
        }
    };
    let kind = match series {
        Series::Cosine => SeriesKind::Cosine,
        Series::Sine => SeriesKind::Sine,
    };
    let seq = gm_certify(&coeffs, kind)?;
    let m = samples.unwrap_or_else(|| (4 * seq.len()).next_power_of_two());
    let f = synthesize(&seq, m)?;
    let parseval = parseval_norm(&seq);
    let l2 = f.l2_norm();
    let convex = aljancic_bound(seq.coeffs(), 1, seq.len()).is_ok();
    let cert = json!({
        "schema": harness::REPORT_SCHEMA,
        "gm_constant": seq.gm_constant,
        "gm1_constant": seq.gm1_constant,
        "gm2_constant": seq.gm2_constant,
        "checks": {
            "general_monotone": seq.is_gm(),
            "convex_decreasing": convex,
            "parseval_l2": parseval,
            "synthesized_l2": l2,
            "parseval_relative_error": if parseval > 0.0 { (l2 - parseval).abs() / parseval } else { 0.0 },
        },
        "n": seq.len(),
        "samples": m,
        "series": kind,
    });
    let cert_text = serde_json::to_string_pretty(&cert).expect("certificate is plain data") + "\n";
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        write(&dir.join("coefficients.csv"), &coefficients_csv(seq.coeffs()))?;
        write(&dir.join("function.csv"), &f.to_csv())?;
        write(&dir.join("certificate.json"), &cert_text)?;
    }
    emit(&cli.output, &cert_text)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Rearrange { input } => emit(&cli.output, &rearrange_exact(&read_grid(input)?).to_csv()),
        Command::Maximal { input, op, s, shifted } => {
            let f = read_grid(input)?;
            let g = match op {
                MaximalOp::Sharp => sharp_maximal(&f, *shifted),
                MaximalOp::Sjt => sjt_maximal(&f, *s, *shifted)?,
                MaximalOp::SjtMod => sjt_modified(&f, *s, *shifted)?,
            };
            emit(&cli.output, &g.to_csv())
        }
        Command::Modulus { input, k, t, base } => {
            let f = read_grid(input)?;
            let params = LzParams::new(base.p, base.q, base.b, f.total_measure())?;
            let omegas = modulus_curve(&f, t, &params, *k)?;
            let mut s = String::from("t,omega,unresolved\n");
            for (t, w) in t.iter().zip(omegas) {
                s.push_str(&format!("{},{},{}\n", t, w.value, w.unresolved));
            }
            emit(&cli.output, &s)
        }
        Command::Besov { input, s, xi, r, k, homogeneous, base } => {
            let f = read_grid(input)?;
            let params = LzParams::new(base.p, base.q, base.b, f.total_measure())?;
            let bp = BesovParams::new(*s, *xi, *r, params, *k, *homogeneous)?;
            emit(&cli.output, &format!("{}\n", besov_norm(&f, &bp)?))
        }
        Command::Norm { p, q, b, domain_measure, input, grid } => {
            // the parameter gate runs before any input is read
            LzParams::new(*p, *q, *b, domain_measure.unwrap_or(1.0))?;
            let path = input.as_ref().ok_or_else(|| usage("norm needs --input"))?;
            let text = read(path)?;
            let profile = if *grid { rearrange_exact(&GridFunction::from_csv(&text)?) } else { RearrangementProfile::from_csv(&text)? };
            let params = LzParams::new(*p, *q, *b, domain_measure.unwrap_or_else(|| profile.total_measure()))?;
            emit(&cli.output, &format!("{}\n", lz_norm(&profile, &params)?))
        }
        Command::Kfunc { input, couple, p, r, t_min, t_max, points } => {
            if !(*t_min > 0.0 && t_max > t_min) || *points < 2 {
                return Err(usage("need 0 < t-min < t-max and at least two points"));
            }
            let f = read_grid(input)?;
            let star = rearrange_exact(&f);
            let grid = KProfile::log_grid(*t_min, *t_max, *points);
            let kp = match couple {
                Couple::LorentzLinfty => KProfile::tabulate("lorentz_linfty", grid, |t| k_lorentz_linfty(&star, *p, *r, t))?,
                Couple::L1Linfty => KProfile::tabulate("l1_linfty", grid, |t| k_l1_linfty(&star, t))?,
                Couple::LpBmo => KProfile::tabulate("lp_bmo", grid, |t| k_lp_bmo(&f, *p, *r, t))?,
            };
            emit(&cli.output, &kp.to_csv())
        }
        Command::Gm { family, p, q, n, alpha, beta, a, series, input, samples, out_dir } => {
            gm(cli, *family, *p, *q, *n, *alpha, *beta, *a, *series, input, *samples, out_dir)
        }
        Command::Verify { theorem, config, csv } => verify(cli, *theorem, config, csv),
        Command::Extrapolate { config, csv } => verify(cli, Theorem::Extrapolate, config, csv),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = match thread_cap(cli.threads) {
        Ok(t) => t,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return ExitCode::from(f.code);
        }
    };
    if let Some(n) = threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
