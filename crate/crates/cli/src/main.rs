//! Command-line surface for the exact tridiagonal-system toolkit.
//!
//! Subcommands: `build` (thin construction from a parameter array),
//! `verify` (full axiom report), `scan` (polynomial prediction against the
//! verified axioms over a list of t), and `iso` (intertwiner search).
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 theorem mismatch (reserved; a mismatch would falsify the prediction).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tdpair::{
    build_seed, drinfeld_poly, find_isomorphism, from_parameter_array_thin,
    geometric_eigenvalues, ladder_eigenvalue, scan, split_decomposition, trace_identities,
    AxiomReport, Error as TdError, ParallelSystem, ParameterArrayFile, Rational, ScanRow,
    Subspace, SystemFile, TraceIdentityReport, SEED_NAMES,
};

#[derive(Parser)]
#[command(
    name = "tdpair",
    version,
    about = "Exact tridiagonal systems of q-Serre type: build, verify, perturb, scan"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a system from a parameter array (thin construction) and verify it
    Build(BuildArgs),
    /// Verify every axiom of a system and report the results
    Verify(VerifyArgs),
    /// Compare the polynomial prediction with verified axioms across t values
    Scan(ScanArgs),
    /// Search for an isomorphism (invertible intertwiner) between two systems
    Iso(IsoArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Built-in seed name: d1, d1-phi5, d2
    #[arg(long, conflicts_with = "pa")]
    seed: Option<String>,
    /// Parameter-array JSON file
    #[arg(long)]
    pa: Option<PathBuf>,
    /// Output path for the system JSON (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// System JSON file
    #[arg(long, conflicts_with = "seed")]
    system: Option<PathBuf>,
    /// Built-in seed name
    #[arg(long)]
    seed: Option<String>,
    /// Emit the report as JSON instead of the human summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// System JSON file
    #[arg(long, conflicts_with = "seed")]
    system: Option<PathBuf>,
    /// Built-in seed name
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated t values, e.g. 1,2,-1,9/4
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Inclusive rational range A:B:STEP, e.g. -2:2:1/2
    #[arg(long, allow_hyphen_values = true)]
    t_range: Option<String>,
    /// Append t = 0 and every rational root of the Drinfel'd polynomial
    /// scaled to its t value
    #[arg(long)]
    auto_bad: bool,
    /// Emit rows as JSON instead of the table
    #[arg(long)]
    json: bool,
    /// Also write the JSON rows to this file
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IsoArgs {
    /// First system JSON file
    first: PathBuf,
    /// Second system JSON file
    second: PathBuf,
}

enum CliError {
    Usage(String),
    Verification(String),
    Theorem(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Theorem(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Theorem(m) => m,
        }
    }
}

impl From<TdError> for CliError {
    fn from(e: TdError) -> Self {
        match e {
            TdError::TheoremMismatch { .. } => CliError::Theorem(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Build(args) => cmd_build(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Scan(args) => cmd_scan(args),
        Cmd::Iso(args) => cmd_iso(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn write_or_print(output: Option<&Path>, json: &str) -> CliResult<()> {
    match output {
        Some(path) => {
            fs::write(path, json)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn seed_by_name(name: &str) -> CliResult<ParallelSystem> {
    if !SEED_NAMES.contains(&name) {
        return Err(CliError::Usage(format!(
            "unknown seed {name:?}; known seeds: {}",
            SEED_NAMES.join(", ")
        )));
    }
    Ok(build_seed(name)?)
}

fn load_system(seed: &Option<String>, system: &Option<PathBuf>) -> CliResult<ParallelSystem> {
    match (seed, system) {
        (Some(name), None) => seed_by_name(name),
        (None, Some(path)) => {
            let file: SystemFile = read_json(path)?;
            Ok(file.into_system()?)
        }
        _ => Err(CliError::Usage(
            "pass exactly one of --seed NAME or --system FILE".into(),
        )),
    }
}

fn cmd_build(args: BuildArgs) -> CliResult<()> {
    let ps = match (&args.seed, &args.pa) {
        (Some(name), None) => seed_by_name(name)?,
        (None, Some(path)) => {
            let file: ParameterArrayFile = read_json(path)?;
            let (ctx, pa) = file.into_parts()?;
            from_parameter_array_thin(&pa, &ctx)?
        }
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --seed NAME or --pa FILE".into(),
            ))
        }
    };
    let report = ps.verify();
    if !report.is_td_system {
        let axiom = report
            .failing_axiom()
            .map(|a| a.to_string())
            .unwrap_or_else(|| "unknown".into());
        return Err(CliError::Verification(format!(
            "thin candidate failed verification: {axiom}"
        )));
    }
    let json = to_pretty(&SystemFile::from_system(&ps))?;
    write_or_print(args.output.as_deref(), &json)
}

/// Everything `verify` reports; the human summary renders exactly this.
#[derive(Serialize)]
struct VerifyOutput {
    n: usize,
    d: usize,
    q: Rational,
    report: AxiomReport,
    zeta: Option<Vec<Rational>>,
    trace_identities: Option<TraceIdentityReport>,
    split_dims: Option<Vec<usize>>,
    ladder_matches_trace: Option<bool>,
}

fn cmd_verify(args: VerifyArgs) -> CliResult<()> {
    let ps = load_system(&args.seed, &args.system)?;
    let report = ps.verify();
    let zeta = ps.split_sequence().ok();
    let trace = trace_identities(&ps).ok();
    let (split_dims, ladder_matches_trace) = match split_decomposition(&ps) {
        Ok(u) => {
            let dims = u.iter().map(Subspace::dim).collect();
            let matches = zeta.as_ref().map(|z| {
                z.iter().enumerate().all(|(i, zi)| {
                    ladder_eigenvalue(&ps, &u, i)
                        .map(|l| &l == zi)
                        .unwrap_or(false)
                })
            });
            (Some(dims), matches)
        }
        Err(_) => (None, None),
    };
    let out = VerifyOutput {
        n: ps.dim(),
        d: ps.diameter(),
        q: ps.ctx().q().clone(),
        report,
        zeta,
        trace_identities: trace,
        split_dims,
        ladder_matches_trace,
    };
    if args.json {
        println!("{}", to_pretty(&out)?);
    } else {
        print!("{}", render_verify(&out));
    }
    if out.report.is_td_system {
        Ok(())
    } else {
        let axiom = out
            .report
            .failing_axiom()
            .map(|a| a.to_string())
            .unwrap_or_else(|| "unknown".into());
        Err(CliError::Verification(format!(
            "system is not a tridiagonal system ({axiom})"
        )))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_verify(out: &VerifyOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "system: n = {}, d = {}, q = {}", out.n, out.d, out.q);
    let td = if out.report.is_td_system {
        "yes".to_string()
    } else {
        let axiom = out
            .report
            .failing_axiom()
            .map(|a| a.to_string())
            .unwrap_or_else(|| "unknown".into());
        format!("NO ({axiom})")
    };
    let _ = writeln!(
        s,
        "TD system: {td}; mock TD: {}; sharp: {}; q-Serre: {}",
        yes_no(out.report.is_mock_td_system),
        yes_no(out.report.is_sharp),
        yes_no(out.report.qserre_ok),
    );
    let _ = writeln!(
        s,
        "axioms: parallel {}; band {}; irreducible {}; mock(vi) {}",
        yes_no(out.report.is_parallel),
        yes_no(out.report.td_band_ok),
        yes_no(out.report.irreducible),
        yes_no(out.report.mock_vi_ok),
    );
    if let Some(w) = &out.report.witness {
        let _ = writeln!(s, "invariant witness: {}", render_subspace(w));
    }
    if let Some(zeta) = &out.zeta {
        let _ = writeln!(s, "zeta = ({})", join_rationals(zeta));
    }
    if let Some(t) = &out.trace_identities {
        let _ = writeln!(
            s,
            "trace identities: big1 {}; big2 {}; nonvanishing {}",
            yes_no(t.big1),
            yes_no(t.big2),
            yes_no(t.nz_tr_ed_estar0 && t.nz_tr_e0_estar0 && t.nz_zeta_d && t.nz_weighted_sum),
        );
    }
    if let Some(dims) = &out.split_dims {
        let dims_str: Vec<String> = dims.iter().map(usize::to_string).collect();
        let ladder = out.ladder_matches_trace.map(yes_no).unwrap_or("n/a");
        let _ = writeln!(
            s,
            "split dims = ({}); ladder = trace: {ladder}",
            dims_str.join(", ")
        );
    }
    s
}

fn join_rationals(v: &[Rational]) -> String {
    v.iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_subspace(w: &Subspace) -> String {
    let cols: Vec<String> = w
        .basis_vectors()
        .iter()
        .map(|col| format!("({})", join_rationals(col)))
        .collect();
    format!("span{{{}}}", cols.join(", "))
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    s.trim()
        .parse()
        .map_err(|e: TdError| CliError::Usage(e.to_string()))
}

fn collect_ts(args: &ScanArgs, ps: &ParallelSystem) -> CliResult<Vec<Rational>> {
    let mut ts: Vec<Rational> = Vec::new();
    if let Some(list) = &args.t {
        for part in list.split(',') {
            ts.push(parse_rational(part)?);
        }
    }
    if let Some(range) = &args.t_range {
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage("--t-range expects A:B:STEP".into()));
        }
        let a = parse_rational(parts[0])?;
        let b = parse_rational(parts[1])?;
        let step = parse_rational(parts[2])?;
        if step.is_zero() || b < a {
            return Err(CliError::Usage(
                "--t-range needs a nonzero step and B >= A".into(),
            ));
        }
        let step = step.abs();
        let mut cur = a;
        while cur <= b {
            ts.push(cur.clone());
            cur = &cur + &step;
        }
    }
    if args.auto_bad {
        ts.push(Rational::zero());
        let zeta = ps.split_sequence().map_err(CliError::from)?;
        let p = drinfeld_poly(&zeta, ps.ctx()).map_err(CliError::from)?;
        ts.extend(p.rational_bad_t());
    }
    if ts.is_empty() {
        return Err(CliError::Usage(
            "no t values: pass --t, --t-range, or --auto-bad".into(),
        ));
    }
    Ok(ts)
}

fn cmd_scan(args: ScanArgs) -> CliResult<()> {
    let ps = load_system(&args.seed, &args.system)?;
    let report = ps.verify();
    if !report.is_td_system {
        let axiom = report
            .failing_axiom()
            .map(|a| a.to_string())
            .unwrap_or_else(|| "unknown".into());
        return Err(CliError::Verification(format!(
            "scan requires a verified tridiagonal system; this one fails: {axiom}"
        )));
    }
    let (geo_theta, geo_theta_star) = geometric_eigenvalues(ps.ctx());
    if !report.qserre_ok || ps.theta() != geo_theta || ps.theta_star() != geo_theta_star {
        return Err(CliError::Verification(
            "scan requires q-Serre type with the normalized geometric eigenvalues \
             theta_i = q^(2i-d), theta*_i = q^(d-2i); normalize the system first"
                .into(),
        ));
    }

    let ts = collect_ts(&args, &ps)?;
    let verdicts = scan(&ps, &ts)?;
    let rows: Vec<ScanRow> = verdicts.iter().map(ScanRow::from).collect();
    let json = to_pretty(&rows)?;

    if let Some(path) = &args.output {
        fs::write(path, &json)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.json {
        println!("{json}");
    } else {
        print!("{}", render_scan(&rows));
        if let Some(path) = &args.output {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn render_scan(rows: &[ScanRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>10}  {:>9}  {:>6}  {:<14}  witness",
        "t", "predicted", "actual", "failing axiom"
    );
    for row in rows {
        let axiom = row.failing_axiom.as_deref().unwrap_or("-");
        let witness = row
            .witness
            .as_ref()
            .map(render_subspace)
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>10}  {:>9}  {:>6}  {:<14}  {witness}",
            row.t.to_string(),
            yes_no(row.predicted),
            yes_no(row.actual),
            axiom,
        );
    }
    s
}

fn cmd_iso(args: IsoArgs) -> CliResult<()> {
    let first: SystemFile = read_json(&args.first)?;
    let second: SystemFile = read_json(&args.second)?;
    let ps1 = first.into_system()?;
    let ps2 = second.into_system()?;

    if ps1.dim() != ps2.dim() {
        return Err(CliError::Verification(format!(
            "not isomorphic: dimensions differ ({} vs {})",
            ps1.dim(),
            ps2.dim()
        )));
    }
    let pa1 = ps1.parameter_array()?;
    let pa2 = ps2.parameter_array()?;
    if let Some(diff) = first_difference(&pa1, &pa2) {
        return Err(CliError::Verification(format!("not isomorphic: {diff}")));
    }
    match find_isomorphism(&ps1, &ps2)? {
        Some(s) => {
            println!("isomorphic; intertwiner S with S A1 = A2 S and S A*1 = A*2 S:");
            println!("{}", to_pretty(&s)?);
            Ok(())
        }
        None => Err(CliError::Verification(
            "not isomorphic: no invertible intertwiner exists".into(),
        )),
    }
}

fn first_difference(pa1: &tdpair::ParameterArray, pa2: &tdpair::ParameterArray) -> Option<String> {
    if pa1.diameter() != pa2.diameter() {
        return Some(format!(
            "diameters differ ({} vs {})",
            pa1.diameter(),
            pa2.diameter()
        ));
    }
    for i in 0..=pa1.diameter() {
        if pa1.theta()[i] != pa2.theta()[i] {
            return Some(format!("theta differs at i = {i}"));
        }
        if pa1.theta_star()[i] != pa2.theta_star()[i] {
            return Some(format!("theta_star differs at i = {i}"));
        }
        if pa1.zeta()[i] != pa2.zeta()[i] {
            return Some(format!("zeta differs at i = {i}"));
        }
    }
    None
}

fn to_pretty<T: Serialize>(value: &T) -> CliResult<String> {
    let mut json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
    json.push('\n');
    Ok(json)
}
