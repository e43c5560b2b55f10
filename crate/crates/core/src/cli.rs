//! Command-line front end: transforms, verification cases, the conjecture
//! scan, enumerations and exports.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::harness::{conjecture_scan, full_suite, run_checks, summary_table, CaseId, Check, Report, Status};
use crate::paths::{enumerate_paths, PathBudget, PathSpec, PyramidMode};
use crate::series::TruncatedSeries;
use crate::spartitions::{enumerate_spartitions, family_membership, is_j_run, FamilyId, SPartitionBudget};
use crate::transform::{big_to_json, nonneg_criterion, run_transform, sequence_to_bfile, to_triangle, Triangle};

#[derive(Debug, Parser)]
#[command(name = "run-transform", version, about = "Run transform of sequences and the objects it counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the transformed triangle, its decomposition and a nonnegativity verdict.
    Transform(TransformArgs),
    /// Run verification cases and emit JSON reports.
    Verify(VerifyArgs),
    /// Scan the conjecture over a parameter grid.
    Scan(ScanArgs),
    /// List paths or s-partitions of one size.
    Enumerate(EnumerateArgs),
    /// Write a triangle or sequence in b-file or CSV form.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Bfile,
    Pretty,
}

#[derive(Debug, Args)]
pub struct SequenceInput {
    /// Comma-separated integers.
    #[arg(long, conflicts_with = "file")]
    pub seq: Option<String>,
    /// One integer per line; `n a(n)` lines use the last field.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub input: SequenceInput,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// catalan, nk, jdyck, jmd, jmd-closed-form, jdyck-identities, family,
    /// bell, even-cycles, schroeder, schroeder-pyramid-start,
    /// schroeder-recursion, amd, conjecture
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub case: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// s-partition family for `--case family`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub no_flats: bool,
    /// Abscissa advance of a flatstep for conjecture niceness.
    #[arg(long, default_value_t = 2)]
    pub flat_width: u32,
    /// Also write the JSON lines here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Comma-separated values or a range `a..b` (inclusive).
    #[arg(long, default_value = "1..3")]
    pub j: String,
    #[arg(long, default_value = "0..3")]
    pub m: String,
    #[arg(long, default_value = "0..2")]
    pub d: String,
    #[arg(long, default_value_t = 5)]
    pub order: usize,
    #[arg(long)]
    pub no_flats: bool,
    #[arg(long, default_value_t = 2)]
    pub flat_width: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathKind {
    Dyck,
    Nk,
    Jdyck,
    Jmd,
    Schroeder,
    Amd,
    Conjecture,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, conflicts_with_all = ["schroeder", "spartitions", "paths"])]
    pub dyck: bool,
    #[arg(long, conflicts_with_all = ["spartitions", "paths"])]
    pub schroeder: bool,
    #[arg(long, conflicts_with = "paths")]
    pub spartitions: bool,
    /// Any path family, parameterized by --j --m --d --k.
    #[arg(long, value_enum)]
    pub paths: Option<PathKind>,
    /// Restrict s-partitions to a family.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub stats: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub no_flats: bool,
    #[arg(long, default_value_t = 2)]
    pub flat_width: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportTarget {
    /// The transformed triangle read by rows.
    Triangle,
    /// Row sums of the triangle (the input sequence).
    RowSums,
    /// The y^0 column (the decomposition).
    Column0,
    /// The input sequence itself.
    Sequence,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: SequenceInput,
    #[arg(long, value_enum, default_value = "triangle")]
    pub target: ExportTarget,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value = "bfile")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
struct Exit {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Exit>;

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Transform(a) => cmd_transform(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Export(a) => cmd_export(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn io_err(e: std::io::Error) -> Exit {
    usage(format!("i/o: {e}"))
}

fn parse_int(token: &str) -> Result<BigInt, Exit> {
    token
        .trim()
        .parse::<BigInt>()
        .map_err(|_| usage(format!("not an integer: {token:?}")))
}

fn read_sequence(input: &SequenceInput) -> Result<Vec<BigInt>, Exit> {
    if let Some(s) = &input.seq {
        return s.split(',').filter(|t| !t.trim().is_empty()).map(parse_int).collect();
    }
    let Some(path) = &input.file else {
        return Err(usage("provide --seq or --file"));
    };
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_int(l.split_whitespace().last().unwrap_or(l)))
        .collect()
}

fn sequence_and_order(input: &SequenceInput, order: Option<usize>) -> Result<(Vec<BigInt>, usize), Exit> {
    let seq = read_sequence(input)?;
    if seq.is_empty() {
        return Err(usage("empty sequence"));
    }
    let order = order.unwrap_or(seq.len() - 1);
    if seq.len() < order + 1 {
        return Err(usage(format!(
            "order {order} needs {} terms, got {}",
            order + 1,
            seq.len()
        )));
    }
    Ok((seq[..=order].to_vec(), order))
}

fn triangle_of(seq: &[BigInt], order: usize) -> Result<Triangle, Exit> {
    let f = TruncatedSeries::from_integers(order, seq);
    let t = run_transform(&f, order).map_err(|e| usage(e.to_string()))?;
    to_triangle(&t).map_err(|e| usage(e.to_string()))
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

fn emit(text: &str, path: &Option<PathBuf>, out: &mut dyn Write) -> Result<(), Exit> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn cmd_transform(a: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (seq, order) = sequence_and_order(&a.input, a.order)?;
    let tri = triangle_of(&seq, order)?;
    let verdict = nonneg_criterion(&seq, order).map_err(|e| usage(e.to_string()))?;
    let word = if verdict.verdict() { "nonnegative" } else { "negative" };
    let text = match a.format {
        Format::Pretty => format!("{}a = {}\nverdict: {word}\n", tri.to_pretty(), join(&verdict.a)),
        Format::Json => {
            let mut v = tri.to_json();
            v["a"] = Value::Array(verdict.a.iter().map(big_to_json).collect());
            v["nonnegative"] = json!(verdict.verdict());
            format!("{v}\n")
        }
        Format::Csv | Format::Bfile => {
            writeln!(err, "a = {}\nverdict: {word}", join(&verdict.a)).map_err(io_err)?;
            if a.format == Format::Csv {
                tri.to_csv()
            } else {
                tri.to_bfile()
            }
        }
    };
    emit(&text, &a.out, out)?;
    Ok(0)
}

fn parse_family(name: &str) -> Result<FamilyId, Exit> {
    let fam = match name {
        "all" => FamilyId::AllSPartitions,
        "set" => FamilyId::SetPartitions,
        "noncrossing" => FamilyId::NoncrossingSPartitions,
        "nonoverlapping" => FamilyId::NonoverlappingPartitions,
        "cycles" => FamilyId::PermutationCycles,
        "nonnesting" => FamilyId::NonnestingPartitions,
        "even-cycles" => crate::harness::even_cycles(),
        _ => {
            if let Some(k) = name.strip_prefix('f').and_then(|k| k.parse::<u32>().ok()) {
                FamilyId::Fk(k)
            } else if let Some((j, inner)) = name
                .strip_prefix('j')
                .and_then(|rest| rest.split_once('-'))
            {
                let j = j.parse::<u32>().map_err(|_| usage(format!("unknown family {name:?}")))?;
                FamilyId::JCompatible(j, Box::new(parse_family(inner)?))
            } else {
                return Err(usage(format!("unknown family {name:?}")));
            }
        }
    };
    Ok(fam)
}

fn need(v: Option<u32>, flag: &str, case: &str) -> Result<u32, Exit> {
    v.ok_or_else(|| usage(format!("case {case} needs --{flag}")))
}

fn select_check(a: &VerifyArgs, name: &str) -> Result<Check, Exit> {
    let j = || need(a.j, "j", name);
    let m = || need(a.m, "m", name);
    let d = || need(a.d, "d", name);
    Ok(match name {
        "catalan" => Check::Case(CaseId::CatalanTriangle),
        "nk" => Check::Case(CaseId::TheoremNk(need(a.k, "k", name)?)),
        "jdyck" => Check::Case(CaseId::JDyck(j()?)),
        "jmd" => Check::Case(CaseId::Jmd(j()?, m()?, d()?)),
        "jmd-closed-form" => Check::JmdClosedForm(j()?, m()?, d()?),
        "jdyck-identities" => Check::JDyckIdentities(j()?),
        "family" => {
            let fam = a.family.as_deref().ok_or_else(|| usage("case family needs --family"))?;
            Check::Case(CaseId::RunClosedFamily(parse_family(fam)?))
        }
        "bell" => Check::Case(CaseId::BellRemark),
        "even-cycles" => Check::Case(CaseId::EvenCycles),
        "schroeder" => Check::Case(CaseId::SchroederBase),
        "schroeder-pyramid-start" => Check::SchroederPyramidStart,
        "schroeder-recursion" => Check::SchroederRecursion,
        "amd" => Check::Case(CaseId::AmdTheorem(m()?, d()?)),
        "conjecture" => Check::Case(CaseId::Conjecture {
            j: j()?,
            m: m()?,
            d: d()?,
            flats: !a.no_flats,
            flat_width: a.flat_width,
        }),
        _ => return Err(usage(format!("unknown case {name:?}"))),
    })
}

fn json_lines(reports: &[Report]) -> String {
    reports.iter().map(|r| r.to_json_line() + "\n").collect()
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let checks = match &a.case {
        Some(name) => vec![select_check(a, name)?],
        None => full_suite(),
    };
    let reports = run_checks(&checks, a.order)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(e.to_string()))?;
    let lines = json_lines(&reports);
    if let Some(p) = &a.out {
        fs::write(p, &lines).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    write!(out, "{lines}{}", summary_table(&reports)).map_err(io_err)?;
    for r in reports.iter().filter(|r| r.status == Status::BudgetExceeded) {
        writeln!(err, "warning: {} at order {} exceeds the enumeration budget", r.case, r.order).map_err(io_err)?;
    }
    Ok(if reports.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 })
}

fn parse_grid(text: &str) -> Result<Vec<u32>, Exit> {
    let bad = || usage(format!("bad parameter list {text:?}"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse::<u32>().map_err(|_| bad())?;
        let hi = hi.trim().parse::<u32>().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect()
}

/// Cells of the grid that are theorems and so must pass.
pub fn scan_cell_is_theorem(j: u32, m: u32, flats: bool) -> bool {
    j == 1 || (!flats && m.is_multiple_of(j))
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> CmdResult {
    let (js, ms, ds) = (parse_grid(&a.j)?, parse_grid(&a.m)?, parse_grid(&a.d)?);
    if js.contains(&0) || a.flat_width == 0 {
        return Err(usage("j and the flat width must be positive"));
    }
    let flats = !a.no_flats;
    let reports = conjecture_scan(&js, &ms, &ds, flats, a.flat_width, a.order).map_err(|e| usage(e.to_string()))?;
    let lines = json_lines(&reports);
    if let Some(p) = &a.out {
        fs::write(p, &lines).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    write!(out, "{lines}{}", summary_table(&reports)).map_err(io_err)?;
    let theorem_failed = reports.iter().any(|r| {
        let p = &r.params;
        let (j, m) = (p["j"].as_u64().unwrap_or(0) as u32, p["m"].as_u64().unwrap_or(0) as u32);
        r.status == Status::Fail && scan_cell_is_theorem(j, m, flats)
    });
    Ok(if theorem_failed { 1 } else { 0 })
}

fn path_spec(a: &EnumerateArgs) -> Result<Option<(PathSpec, PyramidMode)>, Exit> {
    let kind = if a.dyck {
        PathKind::Dyck
    } else if a.schroeder {
        PathKind::Schroeder
    } else if let Some(k) = a.paths {
        k
    } else {
        return Ok(None);
    };
    let name = format!("{kind:?}").to_lowercase();
    let j = || need(a.j, "j", &name);
    let m = || need(a.m, "m", &name);
    let d = || need(a.d, "d", &name);
    let spec = match kind {
        PathKind::Dyck => (PathSpec::dyck(), PyramidMode::All),
        PathKind::Nk => (PathSpec::n_k(need(a.k, "k", &name)?), PyramidMode::All),
        PathKind::Jdyck => (PathSpec::j_dyck(j()?), PyramidMode::HeightMod(j()?)),
        PathKind::Jmd => (PathSpec::jmd(j()?, m()?, d()?), PyramidMode::HeightMod(j()?)),
        PathKind::Schroeder => (PathSpec::schroeder(), PyramidMode::All),
        PathKind::Amd => (PathSpec::amd(m()?, d()?), PyramidMode::All),
        PathKind::Conjecture => (
            PathSpec::conjecture(j()?, m()?, d()?, !a.no_flats).with_flat_width(a.flat_width),
            PyramidMode::AbscissaMod(j()?),
        ),
    };
    if spec.0.j == 0 {
        return Err(usage("j must be positive"));
    }
    Ok(Some(spec))
}

fn render_rows(header: &[&str], rows: Vec<Vec<String>>, format: Format, stats: bool) -> String {
    let cols = if stats { header.len() } else { 1 };
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let obj: serde_json::Map<String, Value> = header[..cols]
                        .iter()
                        .zip(r)
                        .map(|(h, v)| (h.to_string(), Value::String(v.clone())))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            format!("{}\n", Value::Array(items))
        }
        Format::Csv => {
            let mut s = header[..cols].join(",") + "\n";
            for r in rows {
                s.push_str(&r[..cols].iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            s
        }
        Format::Bfile | Format::Pretty => rows.iter().map(|r| r[..cols].join("\t") + "\n").collect(),
    }
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    let text = if let Some((spec, mode)) = path_spec(a)? {
        PathBudget::default().check(&spec, a.size).map_err(|e| usage(e.to_string()))?;
        let rows = enumerate_paths(&spec, a.size)
            .into_iter()
            .map(|p| {
                let profile: Vec<String> = p.flat_profile().iter().map(|(l, c)| format!("{l}:{c}")).collect();
                vec![
                    p.to_string(),
                    p.size().to_string(),
                    p.pyramid_ascents(mode).to_string(),
                    profile.join(" "),
                ]
            })
            .collect();
        render_rows(&["path", "size", "pyramid_ascents", "flat_profile"], rows, a.format, a.stats)
    } else if a.spartitions || a.family.is_some() {
        let fam = match &a.family {
            Some(name) => parse_family(name)?,
            None => FamilyId::AllSPartitions,
        };
        let j = fam.run_modulus();
        let support = a.size * j as usize;
        let all = enumerate_spartitions(support, &SPartitionBudget::default()).map_err(|e| usage(e.to_string()))?;
        let rows = all
            .into_iter()
            .filter(|p| family_membership(p, &fam))
            .map(|p| {
                let runs = p.blocks().iter().filter(|b| is_j_run(b, j)).count();
                vec![p.to_string(), a.size.to_string(), runs.to_string()]
            })
            .collect();
        render_rows(&["spartition", "size", "runs"], rows, a.format, a.stats)
    } else {
        return Err(usage("choose --dyck, --schroeder, --spartitions, --paths or --family"));
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(0)
}

fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> CmdResult {
    let (seq, order) = sequence_and_order(&a.input, a.order)?;
    let tri = triangle_of(&seq, order)?;
    let values = match a.target {
        ExportTarget::Triangle => None,
        ExportTarget::RowSums => Some(tri.row_sums()),
        ExportTarget::Column0 => Some(tri.column(0)),
        ExportTarget::Sequence => Some(seq.clone()),
    };
    let text = match (values, a.format) {
        (None, Format::Csv) => tri.to_csv(),
        (None, Format::Json) => format!("{}\n", tri.to_json()),
        (None, Format::Pretty) => tri.to_pretty(),
        (None, Format::Bfile) => tri.to_bfile(),
        (Some(v), Format::Csv | Format::Pretty) => join(&v) + "\n",
        (Some(v), Format::Json) => format!("{}\n", Value::Array(v.iter().map(big_to_json).collect())),
        (Some(v), Format::Bfile) => sequence_to_bfile(&v),
    };
    emit(&text, &a.out, out)?;
    Ok(0)
}
