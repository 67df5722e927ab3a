//! Command-line front door: certification runs, numeric experiments, gamma
//! scans, and oracle cross-checks, with reproducible machine-readable
//! output.
//!
//! Exit codes: 0 when everything requested passed, 1 on usage errors
//! (including out-of-range relation indices), 2 when a certification or
//! oracle check failed.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;
use serde::Serialize;

use qhecke::certify::{
    certify, certify_with_oracle, oracle_check, oracle_check_corrupted, Relation,
    RelationCertificate, DEEP_HOST_CAP, DEFAULT_HOST_CAP, ORACLE_REL_TOL,
};
use qhecke::rep::{
    check_ttt, gamma0_root, projector_tower_numeric, scan_gamma, scan_rank_one_family,
    standard_r_seed, trivial_seed,
};
use qhecke::Error;

#[derive(Parser)]
#[command(
    name = "qhecke",
    about = "Exact certifier and numeric explorer for Hecke-algebra antisymmetrizer identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run exact relation certificates and write a JSON report.
    Certify(CertifyArgs),
    /// Numeric regular-representation cross-checks of the catalogue.
    Oracle(OracleArgs),
    /// Tabulate \[N+2\] + 2\[N\] over the window (pi/(N+1), pi/N) as CSV.
    ScanGamma(ScanArgs),
    /// Build and validate Hermitian seeds; scan the rank-one family.
    Seeds(SeedsArgs),
    /// Spectral checks of projector differences on tensor powers.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Relation id (repeatable); see `--all` for the catalogue.
    #[arg(long = "relation")]
    relations: Vec<String>,
    /// Certify the whole catalogue.
    #[arg(long)]
    all: bool,
    /// Single index N to certify.
    #[arg(long)]
    n: Option<usize>,
    /// Certify every valid N up to this bound (default 4).
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Allow host rank 8 (memory-heavy; roughly 40320 basis elements and
    /// minutes of work per certificate).
    #[arg(long)]
    deep: bool,
    /// RNG seed for the oracle pre-check.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Skip the numeric oracle pre-check.
    #[arg(long)]
    skip_oracle: bool,
    /// Output path for the JSON report (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "relation")]
    relations: Vec<String>,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Samples per relation.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Self-test: corrupt one side and require the oracle to notice.
    #[arg(long)]
    corrupt: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Window index N (>= 2).
    #[arg(long)]
    n: usize,
    /// Number of subdivisions (>= 2; endpoints are included as rows).
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeedsArgs {
    /// Local dimension n of C^n.
    #[arg(long = "local-dim", default_value_t = 2)]
    local_dim: usize,
    /// Angle gamma with q = e^(i gamma); defaults to pi/4.
    #[arg(long)]
    gamma: Option<f64>,
    /// Grid resolution of the rank-one scan.
    #[arg(long, default_value_t = 8)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Local dimension n of C^n.
    #[arg(long = "local-dim", default_value_t = 2)]
    local_dim: usize,
    /// Check N = 2 up to this bound.
    #[arg(long = "n-max", default_value_t = 4)]
    n_max: usize,
    /// Optional unit-circle angle; without it the standard seed at the
    /// generic real q = 2 is used.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Certify(args) => cmd_certify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ScanGamma(args) => cmd_scan_gamma(args),
        Command::Seeds(args) => cmd_seeds(args),
        Command::Spectrum(args) => cmd_spectrum(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            // Precondition violations are usage errors.
            let usage = e.downcast_ref::<Error>().is_some_and(|err| {
                matches!(
                    err,
                    Error::RelationOutOfRange { .. }
                        | Error::UnknownRelation(_)
                        | Error::InvalidParameter(_)
                        | Error::RankOverflow { .. }
                )
            });
            ExitCode::from(if usage { 1 } else { 2 })
        }
    }
}

/// Resolve the requested (relation, n) pairs, honoring validity ranges and
/// the host-rank cap.
fn resolve_jobs(
    relations: &[String],
    all: bool,
    n: Option<usize>,
    n_max: Option<usize>,
    deep: bool,
) -> anyhow::Result<Vec<(Relation, usize)>> {
    let cap = if deep { DEEP_HOST_CAP } else { DEFAULT_HOST_CAP };
    let rels: Vec<Relation> = if all || relations.is_empty() {
        if !all && relations.is_empty() {
            return Err(Error::InvalidParameter(
                "specify --relation <id> (repeatable) or --all".into(),
            )
            .into());
        }
        Relation::ALL.to_vec()
    } else {
        relations
            .iter()
            .map(|s| Relation::parse(s))
            .collect::<Result<_, _>>()?
    };
    let mut jobs = Vec::new();
    for rel in rels {
        match n {
            Some(n) => {
                rel.check_range(n)?;
                if rel.host_rank(n) > cap {
                    return Err(Error::InvalidParameter(format!(
                        "{} at N = {n} needs host rank {} (cap {cap}); pass --deep for rank {DEEP_HOST_CAP}",
                        rel.id(),
                        rel.host_rank(n)
                    ))
                    .into());
                }
                jobs.push((rel, n));
            }
            None => {
                let hi = n_max.unwrap_or(4);
                for m in rel.min_n()..=hi {
                    if rel.host_rank(m) <= cap {
                        jobs.push((rel, m));
                    }
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::InvalidParameter("no (relation, N) pairs in range".into()).into());
    }
    Ok(jobs)
}

#[derive(Serialize)]
struct CertifyReport {
    seed: u64,
    oracle_samples_per_relation: usize,
    deep: bool,
    all_proved: bool,
    certificates: Vec<RelationCertificate>,
}

fn cmd_certify(args: CertifyArgs) -> anyhow::Result<ExitCode> {
    if args.deep {
        eprintln!(
            "warning: --deep certifies in host rank {DEEP_HOST_CAP} ({} basis elements); \
             expect minutes of runtime and about a gigabyte of memory",
            (1..=DEEP_HOST_CAP).product::<usize>()
        );
    }
    let jobs = resolve_jobs(&args.relations, args.all, args.n, args.n_max, args.deep)?;
    let samples = if args.skip_oracle { 0 } else { 5 };
    let mut certificates = Vec::with_capacity(jobs.len());
    for (rel, n) in jobs {
        let cert = if args.skip_oracle {
            certify(rel, n)?
        } else {
            certify_with_oracle(rel, n, args.seed, samples)?
        };
        eprintln!(
            "{}(N={n}) host {}: {} ({} residual terms, {:.2}s)",
            cert.relation_id,
            cert.host_rank,
            if cert.proved() { "proved" } else { "FAILED" },
            cert.residual_terms,
            cert.wall_time_s
        );
        certificates.push(cert);
    }
    let all_proved = certificates.iter().all(|c| c.proved());
    let report = CertifyReport {
        seed: args.seed,
        oracle_samples_per_relation: samples,
        deep: args.deep,
        all_proved,
        certificates,
    };
    emit_json(&report, args.out.as_deref())?;
    Ok(ExitCode::from(if all_proved { 0 } else { 2 }))
}

#[derive(Serialize)]
struct OracleReport {
    seed: u64,
    samples_per_relation: usize,
    corrupt_self_test: bool,
    tolerance: f64,
    all_within_tolerance: bool,
    checks: Vec<OracleCheckRow>,
}

#[derive(Serialize)]
struct OracleCheckRow {
    relation_id: String,
    n: usize,
    host_rank: usize,
    samples: Vec<qhecke::certify::OracleSample>,
    max_rel_err: f64,
}

fn cmd_oracle(args: OracleArgs) -> anyhow::Result<ExitCode> {
    let jobs = resolve_jobs(&args.relations, args.all, args.n, args.n_max, false)?;
    let mut checks = Vec::new();
    for (rel, n) in jobs {
        let samples = if args.corrupt {
            oracle_check_corrupted(rel, n, args.seed, args.samples)?
        } else {
            oracle_check(rel, n, args.seed, args.samples)?
        };
        let max_rel_err = samples.iter().map(|s| s.max_rel_err).fold(0.0, f64::max);
        eprintln!(
            "{}(N={n}): max relative deviation {max_rel_err:.3e}",
            rel.id()
        );
        checks.push(OracleCheckRow {
            relation_id: rel.id().to_string(),
            n,
            host_rank: rel.host_rank(n),
            samples,
            max_rel_err,
        });
    }
    let all_within = checks.iter().all(|c| c.max_rel_err <= ORACLE_REL_TOL);
    // The self-test passes exactly when the corruption is visible.
    let ok = if args.corrupt { !all_within } else { all_within };
    let report = OracleReport {
        seed: args.seed,
        samples_per_relation: args.samples,
        corrupt_self_test: args.corrupt,
        tolerance: ORACLE_REL_TOL,
        all_within_tolerance: all_within,
        checks,
    };
    emit_json(&report, args.out.as_deref())?;
    Ok(ExitCode::from(if ok { 0 } else { 2 }))
}

fn cmd_scan_gamma(args: ScanArgs) -> anyhow::Result<ExitCode> {
    let table = scan_gamma(args.n, args.steps)?;
    let csv = table.to_csv();
    match args.out.as_deref() {
        Some(path) => write_atomic(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    eprintln!(
        "scanned N = {} with {} rows; {} sign change(s)",
        table.n,
        table.rows.len(),
        table.sign_changes
    );
    Ok(ExitCode::from(0))
}

#[derive(Serialize)]
struct SeedsReport {
    local_dim: usize,
    gamma: f64,
    gamma0: f64,
    trivial: qhecke::rep::SeedJson,
    trivial_residuals: qhecke::rep::TtReport,
    scan: Vec<qhecke::rep::AnsatzScanRow>,
    accepted: Vec<qhecke::rep::SeedJson>,
}

fn cmd_seeds(args: SeedsArgs) -> anyhow::Result<ExitCode> {
    let gamma = args.gamma.unwrap_or(std::f64::consts::PI / 4.0);
    let trivial = trivial_seed(args.local_dim, gamma)?;
    let trivial_residuals = check_ttt(args.local_dim, gamma, &trivial.t)?;
    let scan = scan_rank_one_family(args.local_dim, gamma, args.steps, args.steps)?;
    let accepted: Vec<_> = scan
        .iter()
        .filter(|row| row.accepted)
        .map(|row| {
            qhecke::rep::rank_one_family(args.local_dim, gamma, &row.weights, &row.phases)
                .map(|s| s.to_json())
        })
        .collect::<Result<_, _>>()?;
    eprintln!(
        "seeds at n = {}, gamma = {gamma:.6}: trivial accepted, {} of {} rank-one points accepted",
        args.local_dim,
        accepted.len(),
        scan.len()
    );
    let report = SeedsReport {
        local_dim: args.local_dim,
        gamma,
        gamma0: gamma0_root(),
        trivial: trivial.to_json(),
        trivial_residuals,
        scan,
        accepted,
    };
    emit_json(&report, args.out.as_deref())?;
    Ok(ExitCode::from(0))
}

#[derive(Serialize)]
struct SpectrumReport {
    local_dim: usize,
    q_re: f64,
    q_im: f64,
    rows: Vec<SpectrumRow>,
    all_within_tolerance: bool,
    tolerance: f64,
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    expected_magnitude: f64,
    eigenvalues: Vec<f64>,
    max_deviation: f64,
}

fn cmd_spectrum(args: SpectrumArgs) -> anyhow::Result<ExitCode> {
    const TOL: f64 = 1e-7;
    let n_local = args.local_dim;
    let (q, t) = match args.gamma {
        Some(gamma) => {
            let seed = trivial_seed(n_local, gamma)?;
            (seed.q(), seed.t)
        }
        None => {
            let q = Complex64::new(2.0, 0.0);
            (q, standard_r_seed(n_local, q))
        }
    };
    let qv = |k: i64| ((q.powi(k as i32) - q.powi(-(k as i32))) / (q - q.inv())).re;
    let mut rows = Vec::new();
    for n in 2..=args.n_max {
        let strands = n + 1;
        if n_local.pow(strands as u32) > qhecke::rep::MAX_TENSOR_DIM {
            anyhow::bail!("n = {n} exceeds the tensor dimension cap");
        }
        let plain = projector_tower_numeric(&t, n_local, strands, q, n, 0)?;
        let primed = projector_tower_numeric(&t, n_local, strands, q, n, 1)?;
        let d = &plain[n - 1] - &primed[n - 1];
        let radicand = qv(n as i64 - 1) * qv(n as i64 + 1);
        let lam = if radicand >= 0.0 {
            radicand.sqrt() / qv(n as i64)
        } else {
            0.0
        };
        let eigenvalues = d.hermitian_eigenvalues();
        let max_deviation = eigenvalues
            .iter()
            .map(|e| e.abs().min((e - lam).abs()).min((e + lam).abs()))
            .fold(0.0, f64::max);
        eprintln!("N = {n}: expected +-{lam:.9}, max deviation {max_deviation:.3e}");
        rows.push(SpectrumRow {
            n,
            expected_magnitude: lam,
            eigenvalues,
            max_deviation,
        });
    }
    let all_within = rows.iter().all(|r| r.max_deviation <= TOL);
    let report = SpectrumReport {
        local_dim: n_local,
        q_re: q.re,
        q_im: q.im,
        rows,
        all_within_tolerance: all_within,
        tolerance: TOL,
    };
    emit_json(&report, args.out.as_deref())?;
    Ok(ExitCode::from(if all_within { 0 } else { 2 }))
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => println!("{json}"),
    }
    Ok(())
}

/// Reports are written once: to a sibling temp file, then renamed over the
/// target.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
        )),
        None => PathBuf::from(format!(
            ".{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
        )),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
