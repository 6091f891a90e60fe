//! Thin command-line driver: compute, verify, export, cache. All data
//! goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1
//! verification mismatch, 2 bad arguments or violated preconditions.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use lattice_walks::envelope::{counts_from_json, counts_to_json, ResultCache, ResultEnvelope};
use lattice_walks::{area_enum, hofstadter, kreft, walk_oracle, RationalFlux};

#[derive(Parser)]
#[command(name = "lattice-walks", version, about = "Closed square-lattice walks by algebraic area")]
struct Cli {
    /// Size of the rayon thread pool used inside library calls.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the area table A, C_n(A) for A >= 0.
    Area {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Largest accepted n.
        #[arg(long, default_value_t = 20)]
        max_n: u64,
    },
    /// Run the oracle-equivalence and identity suites.
    Verify {
        #[arg(long)]
        n_max: u64,
    },
    /// Print the Kreft coefficient a_{p,q}(2j).
    Kreft {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        j: u64,
        #[arg(long, value_enum, default_value_t = KreftMode::Direct)]
        mode: KreftMode,
        /// Cross-method agreement report over every applicable mode.
        #[arg(long)]
        all: bool,
    },
    /// Print Tr H^n per site at flux 2πp/q.
    Trace {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = TraceMethod::Formula)]
        method: TraceMethod,
    },
    /// Print the m x A table of C_{m,m,n/2-m,n/2-m}(A).
    Lambda {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum KreftMode {
    Direct,
    Extrapolated,
    Series,
    ClosedForm,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TraceMethod {
    Formula,
    Partition,
    Matrix,
    Generating,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match cli.command {
        Command::Area { n, format, max_n } => cmd_area(n, format, max_n),
        Command::Verify { n_max } => cmd_verify(n_max),
        Command::Kreft { p, q, j, mode, all } => cmd_kreft(p, q, j, mode, all),
        Command::Trace { n, p, q, method } => cmd_trace(n, p, q, method),
        Command::Lambda { n } => cmd_lambda(n),
    }
}

fn bad_args(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Prints a float as an integer when it is one to 1e-9, else with full
/// precision.
fn fmt_value(v: f64) -> String {
    let rounded = v.round();
    if (v - rounded).abs() <= 1e-9 * v.abs().max(1.0) {
        format!("{}", rounded as i128)
    } else {
        format!("{v:.12}")
    }
}

/// Fetches the counts payload from the cache or computes and stores it.
/// The cache is keyed by (command, params, version); a miss or unusable
/// entry falls through to the computation.
fn cached_counts(
    command: &str,
    params: BTreeMap<String, String>,
    compute: impl FnOnce() -> lattice_walks::Result<BTreeMap<i64, BigInt>>,
) -> lattice_walks::Result<BTreeMap<i64, BigInt>> {
    let cache = ResultCache::from_env();
    let key = ResultEnvelope::new(command, params, serde_json::Value::Null);
    if let Some(cache) = &cache {
        if let Some(hit) = cache.lookup(&key) {
            if let Some(counts) = counts_from_json(&hit.payload) {
                eprintln!("cache hit ({command})");
                return Ok(counts);
            }
        }
    }
    let counts = compute()?;
    if let Some(cache) = &cache {
        let entry = ResultEnvelope {
            payload: counts_to_json(&counts),
            ..key
        };
        if let Err(e) = cache.append(&entry) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
    Ok(counts)
}

fn cmd_area(n: u64, format: Format, max_n: u64) -> ExitCode {
    if n < 2 || n > max_n || n % 2 != 0 {
        return bad_args(&format!("n must be even and in 2..={max_n}, got {n}"));
    }
    let params = BTreeMap::from([("n".to_string(), n.to_string())]);
    let counts = match cached_counts("area", params, || {
        Ok(area_enum::enumerate_areas(n)?.counts().clone())
    }) {
        Ok(c) => c,
        Err(e) => return bad_args(&e.to_string()),
    };
    let nonnegative: Vec<(i64, &BigInt)> =
        counts.iter().filter(|(&a, _)| a >= 0).map(|(&a, c)| (a, c)).collect();
    match format {
        Format::Table => {
            println!("# C_{n}(A) for A >= 0; C_n(-A) = C_n(A)");
            println!("{:>6}  {}", "A", "count");
            for (a, c) in nonnegative {
                println!("{a:>6}  {c}");
            }
        }
        Format::Csv => {
            for (a, c) in nonnegative {
                println!("{a},{c}");
            }
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = nonnegative
                .iter()
                .map(|(a, c)| (a.to_string(), serde_json::Value::String(c.to_string())))
                .collect();
            println!("{}", serde_json::Value::Object(map));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(n_max: u64) -> ExitCode {
    if n_max % 2 != 0 || n_max < 2 || n_max > 14 {
        return bad_args(&format!("n-max must be even and in 2..=14, got {n_max}"));
    }
    let start = Instant::now();
    let mut failures = 0u32;
    let mut check = |label: String, ok: bool, diff: String| {
        if ok {
            eprintln!("ok   {label}");
        } else {
            failures += 1;
            println!("FAIL {label}: {diff}");
        }
    };

    for n in (2..=n_max).step_by(2) {
        let formula = area_enum::enumerate_areas(n).unwrap();
        let oracle = walk_oracle::oracle_areas(n).unwrap();
        check(
            format!("enumerate_areas({n}) == oracle"),
            formula == oracle,
            format!("{:?} vs {:?}", formula.counts(), oracle.counts()),
        );

        let lambda = area_enum::lambda_area_table(n).unwrap();
        let by_steps = walk_oracle::oracle_areas_by_steps(n).unwrap();
        check(
            format!("lambda_area_table({n}) == step-resolved oracle"),
            lambda == by_steps,
            format!("{lambda:?} vs {by_steps:?}"),
        );

        for q in 1..=6u64 {
            for p in 0..q.max(2) {
                if p >= q && !(p == 0 && q == 1) {
                    continue;
                }
                if p.gcd(&q) != 1 {
                    continue;
                }
                let flux = RationalFlux::new(p, q).unwrap();
                let report = hofstadter::verify_moment_identity(n, flux).unwrap();
                check(
                    format!("moment identity n={n} flux={flux}"),
                    report.passes(),
                    format!(
                        "max deviation {:.3e}, values {:?}",
                        report.max_relative_deviation,
                        report.values()
                    ),
                );
            }
        }
    }

    eprintln!(
        "verify: n <= {n_max}, {failures} failure(s), {:.2}s",
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn kreft_by_mode(flux: RationalFlux, j: u64, mode: KreftMode) -> lattice_walks::Result<f64> {
    match mode {
        KreftMode::Direct => kreft::kreft_direct(flux, j),
        KreftMode::Extrapolated => kreft::kreft_extrapolated(flux, j),
        KreftMode::Series => kreft::kreft_series(flux, j),
        KreftMode::ClosedForm => Ok(kreft::kreft_closed_form(j)?.evaluate(flux)),
    }
}

fn cmd_kreft(p: u64, q: u64, j: u64, mode: KreftMode, all: bool) -> ExitCode {
    let flux = match RationalFlux::new(p, q) {
        Ok(f) => f,
        Err(e) => return bad_args(&e.to_string()),
    };
    if j == 0 {
        return bad_args("j must be positive");
    }
    if all {
        let mut values: Vec<(&str, f64)> = Vec::new();
        let modes: [(&str, KreftMode); 4] = [
            ("direct", KreftMode::Direct),
            ("extrapolated", KreftMode::Extrapolated),
            ("series", KreftMode::Series),
            ("closed-form", KreftMode::ClosedForm),
        ];
        for (name, m) in modes {
            match kreft_by_mode(flux, j, m) {
                Ok(v) => {
                    println!("{name:<13} {}", fmt_value(v));
                    values.push((name, v));
                }
                Err(e) => eprintln!("{name:<13} n/a ({e})"),
            }
        }
        let mut max_dev: f64 = 0.0;
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                let scale = a.1.abs().max(b.1.abs()).max(1.0);
                max_dev = max_dev.max((a.1 - b.1).abs() / scale);
            }
        }
        println!("max relative deviation {max_dev:.3e}");
        if max_dev <= 1e-9 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    } else {
        match kreft_by_mode(flux, j, mode) {
            Ok(v) => {
                println!("{}", fmt_value(v));
                ExitCode::SUCCESS
            }
            Err(e) => bad_args(&e.to_string()),
        }
    }
}

fn cmd_trace(n: u64, p: u64, q: u64, method: TraceMethod) -> ExitCode {
    let flux = match RationalFlux::new(p, q) {
        Ok(f) => f,
        Err(e) => return bad_args(&e.to_string()),
    };
    if method == TraceMethod::All {
        let report = match hofstadter::verify_moment_identity(n, flux) {
            Ok(r) => r,
            Err(e) => return bad_args(&e.to_string()),
        };
        println!("area-generating  {}", fmt_value(report.area_generating));
        println!("trace-formula    {}", fmt_value(report.trace_formula));
        println!("trace-partition  {}", fmt_value(report.trace_partition));
        println!("trace-matrix     {}", fmt_value(report.trace_matrix));
        println!("first-order      {}", fmt_value(report.first_order_scaled));
        println!(
            "max relative deviation {:.3e}",
            report.max_relative_deviation
        );
        return if report.passes() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    }
    let value = match method {
        TraceMethod::Formula => hofstadter::trace_formula(n, flux),
        TraceMethod::Partition => hofstadter::trace_partition(n, flux),
        TraceMethod::Matrix => hofstadter::trace_matrix(n, flux),
        TraceMethod::Generating => {
            area_enum::enumerate_areas(n).map(|d| d.evaluate_at_flux(flux).re)
        }
        TraceMethod::All => unreachable!(),
    };
    match value {
        Ok(v) => {
            println!("{}", fmt_value(v));
            ExitCode::SUCCESS
        }
        Err(e) => bad_args(&e.to_string()),
    }
}

fn cmd_lambda(n: u64) -> ExitCode {
    let table = match area_enum::lambda_area_table(n) {
        Ok(t) => t,
        Err(e) => return bad_args(&e.to_string()),
    };
    let areas: Vec<i64> = {
        let mut set = std::collections::BTreeSet::new();
        for row in &table {
            set.extend(row.keys().copied());
        }
        set.into_iter().collect()
    };
    print!("{:>4}", "m\\A");
    for a in &areas {
        print!("{a:>10}");
    }
    println!("{:>12}", "row total");
    let mut column_totals = vec![BigInt::zero(); areas.len()];
    let mut grand = BigInt::zero();
    for (m, row) in table.iter().enumerate() {
        print!("{m:>4}");
        let mut row_total = BigInt::zero();
        for (i, a) in areas.iter().enumerate() {
            let c = row.get(a).cloned().unwrap_or_else(BigInt::zero);
            print!("{c:>10}");
            row_total += &c;
            column_totals[i] += &c;
        }
        println!("{row_total:>12}");
        grand += row_total;
    }
    print!("{:>4}", "Σ");
    for c in &column_totals {
        print!("{c:>10}");
    }
    println!("{grand:>12}");
    ExitCode::SUCCESS
}
