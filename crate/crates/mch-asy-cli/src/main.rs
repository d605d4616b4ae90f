use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use mch_asy::painleve2::{eval_pii, solve_pii, DEFAULT_S_MAX, DEFAULT_TOL};
use mch_asy::scattering::{check_symmetries, eval_r};
use mch_asy_cli::config::{symmetry_warnings, RunConfig};
use mch_asy_cli::scan::{pq_alternate, pq_invariance};
use mch_asy_cli::{parse_config, run_scan, write_output, CliError, Mode};

const PQ_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "mch-asy", version, about = "Long-time asymptotics of the modified Camassa-Holm equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    config: PathBuf,
    /// Treat symmetry warnings and per-point failures as errors.
    #[arg(long)]
    strict: bool,
    /// Overrides `output.path`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a Painleve II transcendent as `s,v,v_prime,q`.
    Pii {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        /// Grid `lo:hi:step`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan with `scan.s` read as the region I variable.
    Region1(ScanArgs),
    /// Scan with `scan.s` read as the region II variable.
    Region2(ScanArgs),
    /// Scan the shock region over `scan.window` or `scan.xi`.
    Region3 {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        /// Compare against a second `(p, q)` pair instead of scanning.
        #[arg(long)]
        check_pq_invariance: bool,
    },
    /// Report symmetry and admissibility of the configured data.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn parse_range(spec: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("--s: expected lo:hi:step, got {spec:?}")))?;
    match parts[..] {
        [lo, hi, step] if step > 0.0 && hi >= lo => Ok((lo, hi, step)),
        _ => Err(CliError::Config(format!("--s: expected lo:hi:step with lo <= hi and step > 0, got {spec:?}"))),
    }
}

fn pii(k: f64, s: &str, tol: f64, out: Option<&Path>) -> Result<(), CliError> {
    let (lo, hi, step) = parse_range(s)?;
    let sol = solve_pii(k, lo, hi.max(DEFAULT_S_MAX), tol).map_err(|e| CliError::Config(e.to_string()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["s", "v", "v_prime", "q"]).map_err(io)?;
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    for i in 0..=n {
        let s = lo + i as f64 * step;
        let p = eval_pii(&sol, s).map_err(|e| CliError::Config(e.to_string()))?;
        w.write_record([s, p.v, p.v_prime, p.q].map(|x| format!("{x:?}"))).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{}", String::from_utf8_lossy(&bytes));
            Ok(())
        }
    }
}

fn scan(args: &ScanArgs, mode: Mode, pq: (Option<f64>, Option<f64>)) -> Result<(), CliError> {
    let mut config = load(&args.config)?;
    if let Some(p) = pq.0 {
        config.shock.p = p;
    }
    if let Some(q) = pq.1 {
        config.shock.q = q;
    }
    config.validate()?;
    let data = config.scattering_data(base_dir(&args.config))?;
    let warnings = symmetry_warnings(&config, &data)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if args.strict && !warnings.is_empty() {
        return Err(CliError::Config(format!("symmetry check failed: {}", warnings.join("; "))));
    }
    let table = run_scan(&config, &data, mode)?;
    let path = args.out.clone().or_else(|| config.output.path.as_ref().map(PathBuf::from));
    write_output(&table, config.output.format, path.as_deref())?;
    let failed = table.failures();
    if failed > 0 {
        eprintln!("{failed} of {} points failed", table.rows.len());
        if args.strict {
            return Err(CliError::Strict(format!("{failed} points failed")));
        }
    }
    Ok(())
}

fn check_pq(args: &ScanArgs, pq: (Option<f64>, Option<f64>)) -> Result<(), CliError> {
    let mut config = load(&args.config)?;
    config.shock.p = pq.0.unwrap_or(config.shock.p);
    config.shock.q = pq.1.unwrap_or(config.shock.q);
    config.validate()?;
    let data = config.scattering_data(base_dir(&args.config))?;
    let (p, q) = (config.shock.p, config.shock.q);
    let (p2, q2) = pq_alternate(p, q);
    let rows = pq_invariance(&config, &data, Mode::Region3)?;
    if rows.is_empty() {
        return Err(CliError::Config("no scan point lies in the shock region".into()));
    }
    println!("x,t,u_re({p},{q}),u_im({p},{q}),u_re({p2},{q2}),u_im({p2},{q2}),difference");
    let mut worst = 0.0f64;
    for r in &rows {
        let cell = |v: &Result<num_complex::Complex64, String>| match v {
            Ok(z) => format!("{:?},{:?}", z.re, z.im),
            Err(_) => ",".to_string(),
        };
        let d = r.difference().unwrap_or(f64::INFINITY);
        worst = worst.max(d);
        println!("{:?},{:?},{},{},{:?}", r.point.x, r.point.t, cell(&r.first), cell(&r.second), d);
    }
    if worst < PQ_TOL {
        eprintln!("(p,q) invariance holds: max difference {worst:e}");
        Ok(())
    } else {
        Err(CliError::Strict(format!("(p,q) invariance fails: max difference {worst:e} exceeds {PQ_TOL:e}")))
    }
}

fn check(path: &Path) -> Result<(), CliError> {
    let config = load(path)?;
    let data = config.scattering_data(base_dir(path))?;
    let report = check_symmetries(&data, config.tolerances.symmetry_tol);
    let r = |z: f64| eval_r(&data, z).map_err(|e| CliError::Config(e.to_string()));
    let generic = data.is_generic().map_err(|e| CliError::Config(e.to_string()))?;
    let s3 = 3f64.sqrt();
    println!("odd_conj     {:e}", report.odd_conj);
    println!("inversion    {:e}", report.inversion);
    println!("modulus      {:e}", report.modulus);
    println!("|r(1)|       {:?}", r(1.0)?.norm());
    println!("|r(2+sqrt3)| {:?}", r(2.0 + s3)?.norm());
    println!("|r(2-sqrt3)| {:?}", r(2.0 - s3)?.norm());
    println!("generic      {generic}");
    for f in report.failures() {
        println!("FAIL {f}");
    }
    if report.pass() {
        println!("PASS");
        Ok(())
    } else {
        Err(CliError::Strict("symmetry check failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pii { k, s, tol, out } => pii(*k, s, *tol, out.as_deref()),
        Command::Region1(args) => scan(args, Mode::Region1, (None, None)),
        Command::Region2(args) => scan(args, Mode::Region2, (None, None)),
        Command::Region3 { scan: args, p, q, check_pq_invariance } => {
            if *check_pq_invariance {
                check_pq(args, (*p, *q))
            } else {
                scan(args, Mode::Region3, (*p, *q))
            }
        }
        Command::Check { config } => check(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
