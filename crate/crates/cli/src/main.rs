//! `dnhs`: compute and verify the D_N Haldane-Shastry chain toolkit from the
//! command line. Subcommands cover lattice sites, chain spectra, exact
//! partition functions, the large-coupling series, the symbolic Dunkl
//! verification, alcove geometry suites, the impurity limit, level-count
//! tables, and the acceptance suites.
//!
//! Exit codes: 0 on success, 1 on verification failure or runtime error,
//! 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use dnhs_core::{alcove, dunkl, eigen, lattice, qseries, spinops, verify};

#[derive(Parser)]
#[command(name = "dnhs", version, about = "D_N Haldane-Shastry chain toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice site tables (D_N by default; BC_N when --beta/--beta-prime given)
    Sites {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long = "beta-prime")]
        beta_prime: Option<f64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Assemble the chain, diagonalize, and round to the integer spectrum
    ChainSpectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Eigensolver backward-error tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Exact partition function (both closed forms, asserted equal)
    Partition {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Large-coupling dynamical partition series, truncated at --qmax
    DynSeries {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 40)]
        qmax: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Large-coupling scalar partition series, truncated at --qmax
    ScalarSeries {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 40)]
        qmax: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Symbolic triangularity report for H' plus a collocation spot check
    DunklVerify {
        #[arg(long)]
        n: usize,
        /// Truncation bound max|ν_i|
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// Pin the collocation coupling to an exact rational, e.g. "5/2"
        #[arg(long, value_parser = parse_rational)]
        a: Option<Rational64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Tiling, periodicity, and alcove-reduction suites
    Geometry {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Impurity defect against the vanishing boundary coupling
    Impurity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        epsilon: i8,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Level-count table (energy, count) from the exact partition function;
    /// always CSV so it can feed plotting directly
    Density {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Output path (standard output when omitted)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run the acceptance suites
    Verify {
        /// `all` or `fast`
        #[arg(value_parser = ["all", "fast"])]
        scope: String,
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_rational(s: &str) -> Result<Rational64, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
    let d: i64 = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
    if d == 0 {
        return Err("zero denominator".into());
    }
    Ok(Rational64::new(n, d))
}

fn poly_to_json(p: &dnhs_core::QPolynomial) -> Value {
    let mut map = Map::new();
    for (e, c) in p.terms() {
        map.insert(e.to_string(), Value::String(c.to_string()));
    }
    Value::Object(map)
}

fn series_to_json(s: &dnhs_core::QSeries) -> Value {
    let mut map = Map::new();
    for e in 0..=s.cutoff() {
        let c = s.coeff(e);
        if !num_traits_is_zero(c) {
            map.insert(e.to_string(), Value::String(c.to_string()));
        }
    }
    Value::Object(map)
}

fn num_traits_is_zero(c: &num_bigint::BigInt) -> bool {
    c.bits() == 0
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| e.to_string())
        }
    }
}

fn emit_json(v: &Value, out: Option<&std::path::Path>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(&text, out)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sites {
            n,
            beta,
            beta_prime,
            output,
        } => {
            let rows: Vec<(usize, f64, f64)> = match (beta, beta_prime) {
                (None, None) => {
                    let s = lattice::dn_sites(n).map_err(|e| e.to_string())?;
                    (0..n).map(|i| (i + 1, s.theta()[i], s.xi()[i])).collect()
                }
                (b, bp) => {
                    let s = lattice::bc_sites(n, b.unwrap_or(1.0), bp.unwrap_or(1.0))
                        .map_err(|e| e.to_string())?;
                    (0..n).map(|i| (i + 1, s.theta()[i], s.zeta()[i])).collect()
                }
            };
            match output.format {
                Format::Csv => {
                    let mut text = String::from("i,theta,cos2theta\n");
                    for (i, t, x) in rows {
                        let _ = writeln!(text, "{i},{t},{x}");
                    }
                    emit(&text, output.out.as_deref())?;
                }
                Format::Json => {
                    let sites: Vec<Value> = rows
                        .iter()
                        .map(|&(i, t, x)| json!({"i": i, "theta": t, "cos2theta": x}))
                        .collect();
                    emit_json(&json!({"n": n, "sites": sites}), output.out.as_deref())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ChainSpectrum { n, m, tol, output } => {
            let sites = lattice::dn_sites(n).map_err(|e| e.to_string())?;
            let cfg = spinops::SpinConfig::new(m, n).map_err(|e| e.to_string())?;
            let h = spinops::build_dn_chain(&sites, &cfg).map_err(|e| e.to_string())?;
            let spec = eigen::sym_eigenvalues(&h, tol).map_err(|e| e.to_string())?;
            let poly = eigen::spectral_qpoly(&spec, 1e-6).map_err(|e| e.to_string())?;
            let energies: Vec<i64> = spec.values().iter().map(|v| v.round() as i64).collect();
            match output.format {
                Format::Csv => {
                    let mut text = String::from("index,energy\n");
                    for (i, e) in energies.iter().enumerate() {
                        let _ = writeln!(text, "{i},{e}");
                    }
                    emit(&text, output.out.as_deref())?;
                }
                Format::Json => {
                    emit_json(
                        &json!({"n": n, "m": m, "energies": energies, "poly": poly_to_json(&poly)}),
                        output.out.as_deref(),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Partition { n, m, output } => {
            let z = qseries::chain_partition(n, m).map_err(|e| e.to_string())?;
            match output.format {
                Format::Csv => {
                    let mut text = String::from("exponent,coefficient\n");
                    for (e, c) in z.terms() {
                        let _ = writeln!(text, "{e},{c}");
                    }
                    emit(&text, output.out.as_deref())?;
                }
                Format::Json => {
                    emit_json(
                        &json!({"n": n, "m": m, "poly": poly_to_json(&z)}),
                        output.out.as_deref(),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DynSeries { n, m, qmax, output } => {
            let s = qseries::dyn_partition_series(n, m, qmax);
            emit_series(n, Some(m), &s, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ScalarSeries { n, qmax, output } => {
            let s = qseries::scalar_partition_series(n, qmax).map_err(|e| e.to_string())?;
            emit_series(n, None, &s, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DunklVerify {
            n,
            bound,
            a,
            seed,
            output,
        } => {
            let mut report = Map::new();
            report.insert("n".into(), json!(n));
            report.insert("bound".into(), json!(bound));
            let mut ok = true;
            for delta in [0u8, 1] {
                let key = format!("delta{delta}");
                match dunkl::hprime_matrix(bound, delta, n) {
                    Ok(h) => {
                        report.insert(
                            key,
                            json!({"status": "triangular", "dimension": h.dim(),
                                   "entries": h.num_entries()}),
                        );
                    }
                    Err(e) => {
                        ok = false;
                        report.insert(key, json!({"status": "failed", "error": e.to_string()}));
                    }
                }
            }
            let nu = dunkl::Multiindex::new(vec![2; n]).expect("uniform parity");
            match dunkl::collocation_check_at(0, &nu, 10, seed, a) {
                Ok(err) => {
                    report.insert("collocation_max_rel_error".into(), json!(err));
                }
                Err(e) => {
                    ok = false;
                    report.insert("collocation_error".into(), json!(e.to_string()));
                }
            }
            emit_json(&Value::Object(report), output.out.as_deref())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Geometry {
            n,
            samples,
            seed,
            output,
        } => {
            let tiling = alcove::tiling_check(n, samples, seed);
            let mut report = Map::new();
            report.insert("n".into(), json!(n));
            report.insert(
                "tiling".into(),
                json!({
                    "samples": tiling.samples,
                    "interior": tiling.interior,
                    "boundary": tiling.boundary,
                    "failures": tiling.failures,
                    "max_steps": tiling.max_steps,
                }),
            );
            report.insert(
                "periodicity".into(),
                json!({
                    "even_class": format!("{:?}", alcove::periodic_exponent(&vec![2; n])),
                    "odd_class": format!("{:?}", alcove::periodic_exponent(&vec![1; n])),
                }),
            );
            if n == 3 {
                let (vertices, faces) = alcove::rhombic_dodecahedron();
                report.insert(
                    "domain_polyhedron".into(),
                    json!({
                        "vertices": vertices,
                        "faces": faces,
                    }),
                );
            }
            let ok = tiling.failures == 0;
            emit_json(&Value::Object(report), output.out.as_deref())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Impurity { n, m, epsilon, output } => {
            let cfg = spinops::SpinConfig::new(m, n).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for exp in 1..=4 {
                let t = 10f64.powi(-exp);
                let defect = spinops::impurity_defect(n, &cfg, epsilon, t)
                    .map_err(|e| e.to_string())?;
                let raw = spinops::impurity_defect_uncorrected(n, &cfg, epsilon, t)
                    .map_err(|e| e.to_string())?;
                rows.push((t, defect, raw));
            }
            match output.format {
                Format::Csv => {
                    let mut text = String::from("t,defect,uncorrected\n");
                    for (t, d, r) in rows {
                        let _ = writeln!(text, "{t},{d},{r}");
                    }
                    emit(&text, output.out.as_deref())?;
                }
                Format::Json => {
                    let table: Vec<Value> = rows
                        .iter()
                        .map(|&(t, d, r)| json!({"t": t, "defect": d, "uncorrected": r}))
                        .collect();
                    emit_json(
                        &json!({"n": n, "m": m, "epsilon": epsilon, "table": table}),
                        output.out.as_deref(),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { n, m, out } => {
            let z = qseries::chain_partition(n, m).map_err(|e| e.to_string())?;
            let mut text = String::from("energy,count\n");
            for (e, c) in z.terms() {
                let _ = writeln!(text, "{e},{c}");
            }
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { scope, n, m, seed } => {
            let outcomes = if scope == "all" {
                verify::run_all()
            } else {
                verify::run_fast(n, m, seed)
            };
            let mut ok = true;
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("{}: {} ({})", o.name, status, o.detail);
                ok &= o.passed;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn emit_series(
    n: u32,
    m: Option<u32>,
    s: &dnhs_core::QSeries,
    output: &OutputOpts,
) -> Result<(), String> {
    match output.format {
        Format::Csv => {
            let mut text = String::from("exponent,coefficient\n");
            for e in 0..=s.cutoff() {
                let _ = writeln!(text, "{e},{}", s.coeff(e));
            }
            emit(&text, output.out.as_deref())
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), json!(n));
            if let Some(m) = m {
                obj.insert("m".into(), json!(m));
            }
            obj.insert("cutoff".into(), json!(s.cutoff()));
            obj.insert("coeffs".into(), series_to_json(s));
            emit_json(&Value::Object(obj), output.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
