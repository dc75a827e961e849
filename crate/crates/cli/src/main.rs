//! Command-line surface: curve inspection, zeta tables, bound
//! optimization, comparison-table reproduction, code construction, and
//! code auditing.
//!
//! Exit codes: 0 success, 2 parse/flag error, 3 unsupported model,
//! 4 empty optimization domain, 5 enumeration too large, 6 duplicate
//! codeword, 7 violated bound in an audit.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use sigmacode_core::bounds::{
    self, least_prime_power_at_least, prime_power, singleton_cap, BoundsError, Mode, TableId,
};
use sigmacode_core::codes::{self, CodeError, ConstructionParams, DPolicy};
use sigmacode_core::curve::CurveError;
use sigmacode_core::rrspace::RrError;
use sigmacode_core::zeta::{LPolynomial, ZetaTable};
use sigmacode_core::{CurveModel, FieldSpec};

#[derive(Parser)]
#[command(name = "sigmacode", version, about = "Nonlinear codes over F_q ∪ {∞}")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// List the places of a curve.
    Places(PlacesArgs),
    /// Emit L-polynomial coefficients and effective divisor counts.
    Zeta(ZetaArgs),
    /// Optimize the size lower bound for given (n, d).
    Bounds(BoundsArgs),
    /// Reproduce one of the shipped comparison tables.
    Table(TableArgs),
    /// Build a code and write it as a SIGC file.
    Construct(ConstructArgs),
    /// Audit a SIGC file: exact minimum distance and bound checks.
    Audit(AuditArgs),
}

#[derive(Args)]
struct PlacesArgs {
    /// Curve: "rational", "y2=RHS(x)", or "affine:EQN:inf=K[:g=G]".
    #[arg(long)]
    curve: String,
    #[arg(long)]
    q: u64,
    /// Restrict the listing to places of this degree.
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u32,
    /// Rational place count (elliptic family).
    #[arg(long, value_name = "N")]
    n_places: Option<u64>,
    /// Genus (maximal family).
    #[arg(long)]
    g: Option<u32>,
    /// Comma-separated b_0..b_2g (custom family).
    #[arg(long)]
    coeffs: Option<String>,
    /// Largest effective-divisor degree to tabulate.
    #[arg(long, default_value_t = 6)]
    imax: usize,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value = "paper")]
    mode: String,
    /// Load the zeta data from a JSON file (as written by `zeta
    /// --format json`) instead of assuming a maximal curve.
    #[arg(long, value_name = "FILE")]
    zeta_from: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// I, II, or III.
    #[arg(long)]
    preset: String,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    s: i64,
    #[arg(long, default_value = "disjoint")]
    d_policy: String,
    /// Output SIGC path (a .meta.json sidecar is written next to it).
    #[arg(long)]
    out_file: PathBuf,
}

#[derive(Args)]
struct AuditArgs {
    /// SIGC file to audit.
    #[arg(long, value_name = "FILE")]
    in_file: PathBuf,
    /// Worker threads for the distance scan (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Disable early-exit pruning for stable pair-scan profiles.
    #[arg(long)]
    exact_profile: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Failure {
        let code = match &e {
            CurveError::Parse(_) => 2,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<RrError> for Failure {
    fn from(e: RrError) -> Failure {
        let code = match &e {
            RrError::EnumerationTooLarge(_) => 5,
            RrError::UnsupportedModel => 3,
            RrError::Curve(CurveError::Parse(_)) => 2,
            RrError::Curve(_) => 3,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Failure {
        let code = match &e {
            CodeError::Curve(CurveError::Parse(_)) => 2,
            CodeError::Curve(_) => 3,
            CodeError::Rr(RrError::EnumerationTooLarge(_)) => 5,
            CodeError::Rr(RrError::UnsupportedModel) => 3,
            CodeError::DuplicateCodeword { .. } => 6,
            CodeError::InvalidParams(_)
            | CodeError::UnsupportedS(_)
            | CodeError::NoDisjointSupport(_)
            | CodeError::UnsupportedAlphabet(_)
            | CodeError::BadMagic
            | CodeError::BadVersion(_)
            | CodeError::TruncatedFile
            | CodeError::TrailingBytes(_)
            | CodeError::SymbolOutOfRange { .. }
            | CodeError::InconsistentInfFlag
            | CodeError::MissingMetadata => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Failure {
        let code = match &e {
            BoundsError::EmptyDomain { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let (output, exit) = match &cli.command {
        Command::Places(args) => (cmd_places(args, cli.format)?, ExitCode::SUCCESS),
        Command::Zeta(args) => (cmd_zeta(args, cli.format)?, ExitCode::SUCCESS),
        Command::Bounds(args) => (cmd_bounds(args, cli.format)?, ExitCode::SUCCESS),
        Command::Table(args) => (cmd_table(args, cli.format)?, ExitCode::SUCCESS),
        Command::Construct(args) => (cmd_construct(args, cli.format)?, ExitCode::SUCCESS),
        Command::Audit(args) => cmd_audit(args, cli.format)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| Failure::new(1, format!("cannot write output: {e}")))?,
        None => print!("{output}"),
    }
    Ok(exit)
}

fn field_for(q: u64) -> Result<FieldSpec, Failure> {
    let (p, k) = prime_power(q)
        .ok_or_else(|| Failure::new(2, format!("{q} is not a prime power")))?;
    FieldSpec::make(p, k).map_err(|e| Failure::new(2, e.to_string()))
}

fn parse_curve(desc: &str, q: u64) -> Result<CurveModel, Failure> {
    let field = field_for(q)?;
    Ok(CurveModel::parse(&field, desc)?)
}

/// Three significant digits, scientific: "4.85e19". Exact integers keep
/// their plain form below one million.
fn sci3(v: &BigInt, round: bool) -> String {
    let digits = v.to_string();
    if digits.len() <= 6 {
        return digits;
    }
    let mut exp = digits.len() - 1;
    let mut m: u32 = digits[..3].parse().unwrap();
    if round && digits.as_bytes()[3] >= b'5' {
        m += 1;
        if m == 1000 {
            m = 100;
            exp += 1;
        }
    }
    format!("{}.{:02}e{}", m / 100, m % 100, exp)
}

#[derive(Serialize)]
struct PlaceRow {
    place: String,
    degree: u32,
    infinite: bool,
}

fn cmd_places(args: &PlacesArgs, format: Format) -> Result<String, Failure> {
    let model = parse_curve(&args.curve, args.q)?;
    let places = match args.degree {
        Some(r) => model.places_of_degree(r)?,
        None => model.rational_places()?,
    };
    let rows: Vec<PlaceRow> = places
        .iter()
        .map(|p| PlaceRow {
            place: format!("{p}"),
            degree: p.degree(),
            infinite: p.is_infinite(),
        })
        .collect();
    #[derive(Serialize)]
    struct Listing {
        curve: String,
        q: u64,
        count: usize,
        places: Vec<PlaceRow>,
    }
    let listing = Listing {
        curve: model.describe(),
        q: args.q,
        count: rows.len(),
        places: rows,
    };
    Ok(match format {
        Format::Json => to_json(&listing),
        Format::Csv => {
            let mut out = String::from("place,degree,infinite\n");
            for r in &listing.places {
                out.push_str(&format!("{},{},{}\n", r.place, r.degree, r.infinite));
            }
            out
        }
        Format::Md => {
            let mut out = format!(
                "# Places of {} over F_{} ({} shown)\n\n| place | degree | infinite |\n|---|---|---|\n",
                listing.curve, listing.q, listing.count
            );
            for r in &listing.places {
                out.push_str(&format!("| {} | {} | {} |\n", r.place, r.degree, r.infinite));
            }
            out
        }
    })
}

fn lp_from_zeta_args(args: &ZetaArgs) -> Result<LPolynomial, Failure> {
    let bad = |m: String| Failure::new(2, m);
    match args.family.as_str() {
        "rational" => Ok(LPolynomial::rational(args.q)),
        "elliptic" => {
            let n = args
                .n_places
                .ok_or_else(|| bad("elliptic family needs --n-places".into()))?;
            LPolynomial::elliptic(args.q, n).map_err(|e| bad(e.to_string()))
        }
        "maximal" => {
            let g = args
                .g
                .ok_or_else(|| bad("maximal family needs --g".into()))?;
            LPolynomial::maximal(args.q, g).map_err(|e| bad(e.to_string()))
        }
        "custom" => {
            let raw = args
                .coeffs
                .as_ref()
                .ok_or_else(|| bad("custom family needs --coeffs".into()))?;
            let coeffs: Result<Vec<BigInt>, _> =
                raw.split(',').map(|c| BigInt::from_str(c.trim())).collect();
            let coeffs = coeffs.map_err(|e| bad(format!("bad coefficient: {e}")))?;
            let g = args
                .g
                .unwrap_or(((coeffs.len().max(1) - 1) / 2) as u32);
            LPolynomial::custom(args.q, g, coeffs).map_err(|e| bad(e.to_string()))
        }
        other => Err(bad(format!("unknown family '{other}'"))),
    }
}

fn cmd_zeta(args: &ZetaArgs, format: Format) -> Result<String, Failure> {
    let lp = lp_from_zeta_args(args)?;
    let table = ZetaTable::emit(&lp, args.imax);
    Ok(match format {
        Format::Json => to_json(&table),
        Format::Csv => {
            let mut out = String::from("kind,index,value\n");
            for (j, c) in table.coeffs.iter().enumerate() {
                out.push_str(&format!("coefficient,{j},{c}\n"));
            }
            for (i, a) in table.counts.iter().enumerate() {
                out.push_str(&format!("effective_count,{i},{a}\n"));
            }
            out
        }
        Format::Md => {
            let mut out = format!(
                "# Zeta data: q = {}, genus = {}\n\n| j | b_j | A_j |\n|---|---|---|\n",
                table.q, table.g
            );
            for i in 0..table.coeffs.len().max(table.counts.len()) {
                out.push_str(&format!(
                    "| {} | {} | {} |\n",
                    i,
                    table.coeffs.get(i).map(String::as_str).unwrap_or("0"),
                    table.counts.get(i).map(String::as_str).unwrap_or("-"),
                ));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct BoundsReport {
    q: u32,
    g: u32,
    n: u32,
    d: u32,
    mode: String,
    m: i64,
    s: i64,
    size: String,
    size_approx: String,
    singleton_cap: String,
    comparisons: bounds::ComparisonReport,
}

fn cmd_bounds(args: &BoundsArgs, format: Format) -> Result<String, Failure> {
    let mode = Mode::from_str(&args.mode).map_err(|m| Failure::new(2, m))?;
    let lp = match &args.zeta_from {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("cannot read zeta file: {e}")))?;
            let table: ZetaTable =
                serde_json::from_str(&raw).map_err(|e| Failure::new(2, e.to_string()))?;
            table.ingest().map_err(|e| Failure::new(2, e.to_string()))?
        }
        None if args.g == 0 => LPolynomial::rational(args.q),
        // default: a curve with as many rational places as the genus allows
        None if args.g == 1 => {
            let n1 = bounds::nq1(args.q as u64)?;
            LPolynomial::elliptic(args.q, n1).map_err(|e| Failure::new(2, e.to_string()))?
        }
        None => LPolynomial::maximal(args.q, args.g)
            .map_err(|e| Failure::new(2, e.to_string()))?,
    };
    if lp.q != args.q || lp.g != args.g {
        return Err(Failure::new(2, "zeta data does not match --q/--g"));
    }
    let opt = bounds::optimize(&lp, args.n, args.d, mode)?;
    let report = BoundsReport {
        q: args.q,
        g: args.g,
        n: args.n,
        d: args.d,
        mode: mode.to_string(),
        m: opt.m,
        s: opt.s,
        size: opt.size.to_string(),
        size_approx: sci3(&opt.size, false),
        singleton_cap: singleton_cap(args.q as u64 + 1, args.n, args.d).to_string(),
        comparisons: bounds::comparison_predicates(&lp, args.n, args.d),
    };
    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "q,g,n,d,mode,m,s,size,singleton_cap\n{},{},{},{},{},{},{},{},{}\n",
            report.q,
            report.g,
            report.n,
            report.d,
            report.mode,
            report.m,
            report.s,
            report.size,
            report.singleton_cap
        ),
        Format::Md => format!(
            "# Size bound: q = {}, g = {}, n = {}, d = {} ({} mode)\n\n\
             best m = {}, s = {}\nsize >= {} (~{})\nSingleton cap: {}\n\
             suggested restriction alphabet: {}\n",
            report.q,
            report.g,
            report.n,
            report.d,
            report.mode,
            report.m,
            report.s,
            report.size,
            report.size_approx,
            report.singleton_cap,
            least_prime_power_at_least(report.n as u64 - 1),
        ),
    })
}

fn cmd_table(args: &TableArgs, format: Format) -> Result<String, Failure> {
    let id = TableId::from_str(&args.preset).map_err(|m| Failure::new(2, m))?;
    let spec = bounds::table_spec(id);
    let rows = bounds::table_preset(id)?;
    // the shipped presentation: exact integers in the small tables,
    // three significant digits in the wide one (columns derived from
    // other constructions round, ours truncates)
    let shorten = |v: &BigInt, round: bool| -> String {
        if id == TableId::III {
            sci3(v, round)
        } else {
            v.to_string()
        }
    };
    Ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from(
                "d,extension,restriction,multiplication,ours,ours_m,ours_s,strict,strict_m,strict_s,divergent\n",
            );
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.d,
                    r.extension,
                    r.restriction,
                    r.multiplication
                        .as_ref()
                        .map(|m| m.to_string())
                        .unwrap_or_default(),
                    r.ours,
                    r.ours_m,
                    r.ours_s,
                    r.strict,
                    r.strict_m,
                    r.strict_s,
                    r.divergent
                ));
            }
            out
        }
        Format::Md => {
            let mut out = format!(
                "# Table {:?}: ({}+1)-ary codes of length {} (q = {}, genus {})\n\n",
                id, spec.q, spec.n, spec.q, spec.g
            );
            let mult_col = rows.iter().any(|r| r.multiplication.is_some());
            out.push_str(if mult_col {
                "| d | extension | restriction | multiplication | ours | strict | divergent |\n|---|---|---|---|---|---|---|\n"
            } else {
                "| d | extension | restriction | ours | strict | divergent |\n|---|---|---|---|---|---|\n"
            });
            for r in &rows {
                let strict_cell = format!(
                    "{} (m={}, s={})",
                    shorten(&r.strict, false),
                    r.strict_m,
                    r.strict_s
                );
                if mult_col {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} | {} | {} | {} |\n",
                        r.d,
                        shorten(&r.extension, true),
                        shorten(&r.restriction, true),
                        r.multiplication
                            .as_ref()
                            .map(|m| shorten(m, true))
                            .unwrap_or_default(),
                        shorten(&r.ours, false),
                        strict_cell,
                        r.divergent
                    ));
                } else {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} | {} | {} |\n",
                        r.d,
                        shorten(&r.extension, true),
                        shorten(&r.restriction, true),
                        shorten(&r.ours, false),
                        strict_cell,
                        r.divergent
                    ));
                }
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ConstructSummary {
    curve: String,
    q: u16,
    n: usize,
    m: i64,
    s: i64,
    policy: String,
    size: usize,
    dist_guarantee: i64,
    eval_overlap: u32,
    stratum_counts: Vec<u64>,
    file: String,
}

fn cmd_construct(args: &ConstructArgs, format: Format) -> Result<String, Failure> {
    let model = parse_curve(&args.curve, args.q)?;
    let policy = DPolicy::from_str(&args.d_policy).map_err(|m| Failure::new(2, m))?;
    let params = ConstructionParams {
        m: args.m,
        s: args.s,
        policy,
    };
    let code = codes::build_code(&model, &params)?;
    codes::write_code(&code, &args.out_file)?;
    let meta = code.meta.as_ref().unwrap();
    let summary = ConstructSummary {
        curve: meta.curve.clone(),
        q: code.q,
        n: code.n,
        m: meta.m,
        s: meta.s,
        policy: meta.policy.clone(),
        size: code.word_count(),
        dist_guarantee: code.n as i64 - meta.m - 2 * meta.s - meta.eval_overlap as i64,
        eval_overlap: meta.eval_overlap,
        stratum_counts: meta.stratum_counts.clone(),
        file: args.out_file.display().to_string(),
    };
    Ok(match format {
        Format::Json => to_json(&summary),
        Format::Csv => format!(
            "q,n,m,s,policy,size,dist_guarantee,eval_overlap\n{},{},{},{},{},{},{},{}\n",
            summary.q,
            summary.n,
            summary.m,
            summary.s,
            summary.policy,
            summary.size,
            summary.dist_guarantee,
            summary.eval_overlap
        ),
        Format::Md => format!(
            "# Constructed code\n\ncurve: {}\nq = {}, n = {}, m = {}, s = {} ({} policy)\n\
             size M = {}\nguaranteed distance: {}\nstratum sizes by excess degree: {:?}\n\
             written to {}\n",
            summary.curve,
            summary.q,
            summary.n,
            summary.m,
            summary.s,
            summary.policy,
            summary.size,
            summary.dist_guarantee,
            summary.stratum_counts,
            summary.file
        ),
    })
}

fn cmd_audit(args: &AuditArgs, format: Format) -> Result<(String, ExitCode), Failure> {
    let code = codes::read_code(&args.in_file)?;
    let meta = code
        .meta
        .clone()
        .ok_or_else(|| Failure::new(2, "SIGC file has no metadata sidecar"))?;
    let coeffs: Result<Vec<BigInt>, _> =
        meta.lpoly.iter().map(|c| BigInt::from_str(c)).collect();
    let coeffs = coeffs.map_err(|e| Failure::new(2, format!("bad metadata: {e}")))?;
    let lp = LPolynomial::custom(code.q as u32, meta.genus, coeffs)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    let report = match args.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Failure::new(1, e.to_string()))?
            .install(|| {
                if args.exact_profile {
                    let d = codes::min_distance(&code, true)?;
                    let mut r = codes::audit(&code, &lp)?;
                    debug_assert_eq!(r.d_min, d);
                    r.d_min = d;
                    Ok::<_, CodeError>(r)
                } else {
                    codes::audit(&code, &lp)
                }
            })?,
        None => codes::audit(&code, &lp)?,
    };
    let exit = if report.flags.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(7)
    };
    let output = match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut out = format!(
                "q,n,size,d_min,size_lower,dist_lower,singleton_cap,flags\n{},{},{},{},{},{},{},{}\n",
                report.q,
                report.n,
                report.size,
                report.d_min,
                report.size_lower,
                report.dist_lower,
                report.singleton_cap,
                report.flags.join("; ")
            );
            for note in &report.notes {
                out.push_str(&format!("note,,,,,,,{note}\n"));
            }
            out
        }
        Format::Md => {
            let mut out = format!(
                "# Audit of {}\n\nq = {}, n = {}, M = {}\nexact d_min = {}\n\
                 size lower bound: {}\ndistance guarantee: {}\nSingleton cap: {}\n",
                args.in_file.display(),
                report.q,
                report.n,
                report.size,
                report.d_min,
                report.size_lower,
                report.dist_lower,
                report.singleton_cap
            );
            if report.flags.is_empty() {
                out.push_str("verdict: PASS\n");
            } else {
                out.push_str("verdict: FAIL\n");
                for f in &report.flags {
                    out.push_str(&format!("violation: {f}\n"));
                }
            }
            for nline in &report.notes {
                out.push_str(&format!("note: {nline}\n"));
            }
            out
        }
    };
    Ok((output, exit))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}
