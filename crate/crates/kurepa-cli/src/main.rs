//! `kurepa` — command-line front end for left factorial arithmetic:
//! sequence printing, congruence verification suites, divisor-pair
//! scans with resumable checkpoints, and stabilization certificates.
//!
//! Exit codes follow the verifier convention: 0 means every check
//! passed, 1 means a mathematical check failed (witnesses printed),
//! 2 means a usage or environment error. Files written via `--out`
//! contain only the payload (no timings), so reruns are byte-identical
//! regardless of worker count; the JSON envelope on stdout carries the
//! run metadata.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use kurepa::congruence::{bell_residues, run_selected, subfactorial_residues, SuiteKind};
use kurepa::exact;
use kurepa::modular::{left_factorial_residues, Modulus};
use kurepa::report::{
    atomic_write, certificate_to_csv, checkpoint_path, pairs_to_csv, read_checkpoint,
    records_to_csv, results_to_csv, seq_to_csv, write_checkpoint, ScanPayload, SeqEntry,
};
use kurepa::search::{
    find_pairs_bounded, find_pairs_up_to, scan_primes, DistributionReport, KurepaPair,
    PrimeIndexRecord,
};
use kurepa::stabilize::verify_stabilization;
use kurepa::{CheckResult, Claim, Jobs, StabilizationCertificate};

#[derive(Parser)]
#[command(
    name = "kurepa",
    version,
    about = "Left factorial sequences, congruence suites, and divisor-pair scans"
)]
struct Cli {
    /// Output format for payloads.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the payload to this file (atomically) instead of relying
    /// on stdout alone.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads: 0 = all cores, 1 = sequential.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Continue a scan from its checkpoint (requires --out).
    #[arg(long, global = true)]
    resume: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    LeftFactorial,
    Subfactorial,
    Bell,
    FloorE,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the sequences over an inclusive range of n.
    Seq {
        #[arg(value_enum)]
        kind: SeqKind,
        /// Range `A..B` (inclusive) or a single index `N`.
        range: String,
        /// Stream residues modulo this instead of exact values.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Run congruence check suites; exit 1 if anything fails.
    Verify {
        /// Suite name or `all`.
        #[arg(default_value = "all")]
        suite: String,
        /// Upper bound for the per-prime families.
        #[arg(long, default_value_t = 1000)]
        primes_to: u64,
        /// Upper bound for the index-driven families.
        #[arg(long, default_value_t = 200)]
        n_to: u64,
    },
    /// All divisor pairs of one odd prime, with exact orders.
    Pairs {
        prime: u64,
        /// Stop refining orders at this power.
        #[arg(long)]
        max_power: Option<u32>,
    },
    /// Scan every odd prime up to a limit and tabulate the index
    /// distribution; resumable via a checkpoint next to --out.
    Scan {
        #[arg(default_value_t = 10000)]
        limit: u64,
    },
    /// Certify that K(n) mod p^r is constant past its threshold.
    Stabilize {
        prime: u64,
        power: u32,
        /// How far past the threshold to watch (default 2p).
        #[arg(long)]
        window: Option<u64>,
    },
    /// Re-run the published deep-divisor search: all pairs of `prime`
    /// with n up to `n_max`, orders fully resolved.
    Zivkovic {
        #[arg(long, default_value_t = 54503)]
        prime: u64,
        #[arg(long, default_value_t = 50000)]
        n_max: u64,
    },
}

#[derive(Debug)]
struct AppError {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> AppError {
    AppError {
        message: message.into(),
        code: 2,
    }
}

impl From<kurepa::Error> for AppError {
    fn from(e: kurepa::Error) -> Self {
        let code = match e {
            kurepa::Error::KhViolation { .. } => 1,
            _ => 2,
        };
        AppError {
            message: e.to_string(),
            code,
        }
    }
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> AppError {
    usage(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    let started = Instant::now();
    let jobs = Jobs::from_count(cli.jobs);
    if cli.resume && !matches!(cli.command, Command::Scan { .. }) {
        return Err(usage("--resume only applies to scan"));
    }
    match &cli.command {
        Command::Seq {
            kind,
            range,
            modulus,
        } => {
            let (from, to) = parse_range(range)?;
            let entries = seq_entries(*kind, from, to, *modulus)?;
            let payload = serde_json::to_value(&entries).expect("serializable");
            let text = |format: Format| match format {
                Format::Plain => {
                    let mut s = String::new();
                    for e in &entries {
                        writeln!(s, "{}\t{}", e.n, e.value).unwrap();
                    }
                    s
                }
                Format::Csv => seq_to_csv(&entries),
                Format::Json => pretty(&payload),
            };
            emit(&cli, "seq", seq_params(*kind, from, to, *modulus), &payload, 0, text, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            primes_to,
            n_to,
        } => {
            let kinds = parse_suite(suite)?;
            let results = run_selected(&kinds, *primes_to, *n_to, jobs);
            let failures = results.iter().filter(|r| !r.passed).count();
            let payload = serde_json::to_value(&results).expect("serializable");
            let text = |format: Format| match format {
                Format::Plain => render_verify(suite, &results, failures),
                Format::Csv => results_to_csv(&results),
                Format::Json => pretty(&payload),
            };
            let params = serde_json::json!({
                "suite": suite, "primes_to": primes_to, "n_to": n_to,
            });
            emit(&cli, "verify", params, &payload, failures, text, started)?;
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Pairs { prime, max_power } => {
            let pairs = find_pairs_bounded(*prime, *prime, *max_power)?;
            let record = PrimeIndexRecord::new(*prime, pairs);
            let payload = serde_json::to_value(&record).expect("serializable");
            let text = |format: Format| match format {
                Format::Plain => render_record(&record),
                Format::Csv => records_to_csv(std::slice::from_ref(&record)),
                Format::Json => pretty(&payload),
            };
            let params = serde_json::json!({ "prime": prime, "max_power": max_power });
            emit(&cli, "pairs", params, &payload, 0, text, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { limit } => run_scan(&cli, *limit, jobs, started),
        Command::Stabilize {
            prime,
            power,
            window,
        } => {
            let window = window.unwrap_or(2 * *prime);
            if window == 0 {
                return Err(usage("--window must be positive"));
            }
            if !kurepa::modular::is_prime(*prime) {
                return Err(AppError::from(kurepa::Error::NotPrime(*prime)));
            }
            if *power == 0 {
                return Err(usage("power must be at least 1"));
            }
            let cert = verify_stabilization(*prime, *power, window)?;
            let payload = serde_json::to_value(&cert).expect("serializable");
            let text = |format: Format| match format {
                Format::Plain => render_certificate(&cert),
                Format::Csv => certificate_to_csv(&cert),
                Format::Json => pretty(&payload),
            };
            let params = serde_json::json!({ "prime": prime, "power": power, "window": window });
            emit(&cli, "stabilize", params, &payload, 0, text, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zivkovic { prime, n_max } => {
            let pairs = find_pairs_up_to(*prime, *n_max)?;
            let payload = serde_json::to_value(&pairs).expect("serializable");
            let text = |format: Format| match format {
                Format::Plain => render_pairs(&pairs),
                Format::Csv => pairs_to_csv(&pairs),
                Format::Json => pretty(&payload),
            };
            let params = serde_json::json!({ "prime": prime, "n_max": n_max });
            emit(&cli, "zivkovic", params, &payload, 0, text, started)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Exact-mode guard: big-integer listings stop here; `--mod` streams
/// have no bound.
const EXACT_LIMIT: u64 = 10_000;

fn parse_range(range: &str) -> Result<(u64, u64), AppError> {
    let bad = || usage(format!("bad range {range:?}: expected N or A..B"));
    if let Some((a, b)) = range.split_once("..") {
        let from = a.parse::<u64>().map_err(|_| bad())?;
        let to = b.parse::<u64>().map_err(|_| bad())?;
        if from > to {
            return Err(usage(format!("empty range {range:?}: {from} > {to}")));
        }
        Ok((from, to))
    } else {
        let n = range.parse::<u64>().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn seq_kind_name(kind: SeqKind) -> &'static str {
    match kind {
        SeqKind::LeftFactorial => "left-factorial",
        SeqKind::Subfactorial => "subfactorial",
        SeqKind::Bell => "bell",
        SeqKind::FloorE => "floor-e",
    }
}

fn seq_params(kind: SeqKind, from: u64, to: u64, modulus: Option<u64>) -> serde_json::Value {
    serde_json::json!({
        "kind": seq_kind_name(kind), "from": from, "to": to, "mod": modulus,
    })
}

fn collect_seq<T: ToString>(
    values: impl Iterator<Item = T>,
    from: u64,
    span: usize,
) -> Vec<SeqEntry> {
    values
        .enumerate()
        .skip(from as usize)
        .take(span)
        .map(|(n, v)| SeqEntry {
            n: n as u64,
            value: v.to_string(),
        })
        .collect()
}

fn seq_entries(
    kind: SeqKind,
    from: u64,
    to: u64,
    modulus: Option<u64>,
) -> Result<Vec<SeqEntry>, AppError> {
    let span = (to - from + 1) as usize;
    let entries = match modulus {
        None => {
            if to > EXACT_LIMIT {
                return Err(usage(format!(
                    "exact mode stops at n = {EXACT_LIMIT}; pass --mod to stream residues"
                )));
            }
            match kind {
                SeqKind::LeftFactorial => collect_seq(exact::left_factorials(), from, span),
                SeqKind::Subfactorial => collect_seq(exact::subfactorials(), from, span),
                SeqKind::Bell => collect_seq(exact::bells(), from, span),
                SeqKind::FloorE => collect_seq(
                    exact::subfactorials()
                        .enumerate()
                        .map(|(n, s)| s - exact::parity_delta(n as u64)),
                    from,
                    span,
                ),
            }
        }
        Some(m) => {
            let m = Modulus::new(m)?;
            match kind {
                SeqKind::LeftFactorial => collect_seq(left_factorial_residues(m), from, span),
                SeqKind::Subfactorial => collect_seq(subfactorial_residues(m), from, span),
                SeqKind::Bell => collect_seq(bell_residues(m), from, span),
                SeqKind::FloorE => collect_seq(
                    subfactorial_residues(m)
                        .enumerate()
                        .map(move |(n, s)| m.sub(s, exact::parity_delta(n as u64))),
                    from,
                    span,
                ),
            }
        }
    };
    Ok(entries)
}

fn parse_suite(suite: &str) -> Result<Vec<SuiteKind>, AppError> {
    if suite == "all" {
        return Ok(SuiteKind::ALL.to_vec());
    }
    SuiteKind::from_name(suite).map(|k| vec![k]).ok_or_else(|| {
        let names: Vec<&str> = SuiteKind::ALL.iter().map(|k| k.name()).collect();
        usage(format!(
            "unknown suite {suite:?}; expected all or one of: {}",
            names.join(", ")
        ))
    })
}

fn render_check(r: &CheckResult) -> String {
    let aux = r.aux.map(|a| format!(" aux={a}")).unwrap_or_default();
    let status = if r.passed { "pass" } else { "FAIL" };
    match r.claim {
        Claim::Congruence { lhs, rhs, modulus } => {
            let relation = match r.polarity {
                kurepa::Polarity::MustHold => "==",
                kurepa::Polarity::MustFail => "!=",
            };
            format!(
                "{status} {} subject={}{aux} {lhs} {relation} {rhs} (mod {modulus})",
                r.name, r.subject
            )
        }
        Claim::Predicate { holds } => format!(
            "{status} {} subject={}{aux} holds={holds}",
            r.name, r.subject
        ),
    }
}

fn render_verify(suite: &str, results: &[CheckResult], failures: usize) -> String {
    let mut s = String::new();
    for r in results.iter().filter(|r| !r.passed) {
        writeln!(s, "{}", render_check(r)).unwrap();
    }
    writeln!(
        s,
        "suite {suite}: {} checks, {failures} failed",
        results.len()
    )
    .unwrap();
    s
}

fn render_record(record: &PrimeIndexRecord) -> String {
    let mut s = format!("p={} index={}\n", record.p, record.index);
    for pair in &record.pairs {
        writeln!(s, "n={} order={}", pair.n, pair.order).unwrap();
    }
    s
}

fn render_pairs(pairs: &[KurepaPair]) -> String {
    let mut s = String::new();
    for pair in pairs {
        writeln!(s, "p={} n={} order={}", pair.p, pair.n, pair.order).unwrap();
    }
    writeln!(s, "pairs: {}", pairs.len()).unwrap();
    s
}

fn render_certificate(c: &StabilizationCertificate) -> String {
    format!(
        "p={} r={} l_r={} threshold={} modulus={} stable_value={} window={} \
         observed_first_stable={} valuation_at_threshold={}\n",
        c.p,
        c.r,
        c.l_r,
        c.threshold,
        c.modulus,
        c.stable_value,
        c.window,
        c.observed_first_stable,
        c.valuation_at_threshold
    )
}

fn render_scan(records: &[PrimeIndexRecord], report: &DistributionReport) -> String {
    let mut s = String::new();
    for record in records {
        let pairs = record
            .pairs
            .iter()
            .map(|pair| format!("{}:{}", pair.n, pair.order))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(s, "p={} index={} pairs={}", record.p, record.index, pairs).unwrap();
    }
    writeln!(
        s,
        "odd primes: {} (limit {})",
        report.odd_primes, report.limit
    )
    .unwrap();
    writeln!(s, "max index: {}", report.max_index).unwrap();
    for entry in &report.ratios {
        writeln!(
            s,
            "index {}: count {} ratio {} ({}/{})",
            entry.index, entry.count, entry.rendered, entry.numerator, entry.denominator
        )
        .unwrap();
    }
    s
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Write the payload file (if requested) and print to stdout: payload
/// text for plain/csv, the metadata envelope for json.
fn emit(
    cli: &Cli,
    command: &str,
    params: serde_json::Value,
    payload: &serde_json::Value,
    failures: usize,
    text: impl Fn(Format) -> String,
    started: Instant,
) -> Result<(), AppError> {
    if let Some(out) = &cli.out {
        atomic_write(out, text(cli.format).as_bytes()).map_err(|e| io_error(out, e))?;
    }
    match cli.format {
        Format::Plain | Format::Csv => print!("{}", text(cli.format)),
        Format::Json => {
            let envelope = serde_json::json!({
                "command": command,
                "params": params,
                "version": env!("CARGO_PKG_VERSION"),
                "duration_ms": started.elapsed().as_millis() as u64,
                "failures": failures,
                "payload": payload,
            });
            print!("{}", pretty(&envelope));
        }
    }
    Ok(())
}

/// Primes handled between checkpoint writes.
const SCAN_CHUNK: usize = 128;

fn run_scan(cli: &Cli, limit: u64, jobs: Jobs, started: Instant) -> Result<ExitCode, AppError> {
    if limit < 3 {
        return Err(usage("scan limit must be at least 3"));
    }
    let primes: Vec<u64> = kurepa::modular::sieve_primes(limit)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();

    let checkpoint = cli.out.as_deref().map(checkpoint_path);
    let mut records: Vec<PrimeIndexRecord> = Vec::with_capacity(primes.len());
    if cli.resume {
        let Some(cp) = &checkpoint else {
            return Err(usage("--resume requires --out (the checkpoint lives next to it)"));
        };
        records = read_checkpoint(cp).map_err(|e| io_error(cp, e))?;
        if records.len() > primes.len()
            || records.iter().zip(&primes).any(|(r, &p)| r.p != p)
        {
            return Err(usage(format!(
                "checkpoint {} does not match a scan to {limit}",
                cp.display()
            )));
        }
    }

    while records.len() < primes.len() {
        let upper = (records.len() + SCAN_CHUNK).min(primes.len());
        let chunk = &primes[records.len()..upper];
        records.extend(scan_primes(chunk, jobs)?);
        if let Some(cp) = &checkpoint {
            write_checkpoint(cp, &records).map_err(|e| io_error(cp, e))?;
        }
    }

    let report = DistributionReport::from_records(limit, &records);
    let payload = ScanPayload {
        records,
        distribution: report,
    };
    let payload_value = serde_json::to_value(&payload).expect("serializable");
    let text = |format: Format| match format {
        Format::Plain => render_scan(&payload.records, &payload.distribution),
        Format::Csv => records_to_csv(&payload.records),
        Format::Json => pretty(&payload_value),
    };
    let params = serde_json::json!({ "limit": limit, "resume": cli.resume });
    emit(cli, "scan", params, &payload_value, 0, text, started)?;
    if let Some(cp) = &checkpoint {
        match std::fs::remove_file(cp) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_error(cp, e)),
        }
    }
    Ok(ExitCode::SUCCESS)
}
