//! Command-line surface: module files in, JSON or markdown out.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::artin::invariants_f;
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::modcore::{decompose_degree, TruncatedModule};
use crate::nakayama::{presentation_degree, sheaf_report, simple_saturated, simple_saturated_oi, SheafFactor};
use crate::oimod::kn_cross_check;
use crate::skelcat::{left_ore_check, BoundedSkeleton, CatKind, FreeQuiverCategory};
use crate::torsion::{is_separated, torsion_report};

/// Largest window any command accepts.
pub const WINDOW_CAP: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "fisheaf", version, about = "Truncated FI- and OI-modules: validation, sheafification, simple sheaves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a module file.
    Check { file: PathBuf },
    /// Irreducible multiplicities of one degree of an FI-module.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Sheafify a module; prints the report and optionally writes the sheaf.
    Sheafify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A simple saturated module: a partition for FI, a degree for OI.
    Simple {
        #[arg(long = "cat")]
        cat: CatKind,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        window: usize,
    },
    /// Compare the coface-difference module K_n with the inverse-Nakayama simple.
    Kn {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        window: usize,
    },
    /// Exhaustive left Ore check.
    Ore {
        #[arg(long = "cat", value_enum)]
        cat: OreCategory,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Group-side computations.
    Artin {
        #[command(subcommand)]
        command: ArtinCommand,
    },
    /// Generation and presentation degree of a module file.
    StableRange { file: PathBuf },
    /// Summary table for a directory of module files.
    Report {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ArtinCommand {
    /// Dimension of the invariants of F(n) under the stabilizer of [i].
    Invariants {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "i")]
        i: usize,
        #[arg(long)]
        horizon: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OreCategory {
    Fi,
    Oi,
    Kronecker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Markdown,
}

/// Runs the CLI on `args` (program name first), writing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn check_window(window: usize) -> Result<()> {
    if window > WINDOW_CAP {
        return Err(Error::Window(format!("window {window} exceeds the cap {WINDOW_CAP}")));
    }
    Ok(())
}

pub fn load_module(path: &Path) -> Result<TruncatedModule> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v = TruncatedModule::from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    check_window(v.window)?;
    Ok(v)
}

/// Writes through a sibling temporary file so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(|e| Error::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Decomposition of one degree keyed by `(2,1)`-style labels.
pub fn decomposition_json(v: &TruncatedModule, degree: usize) -> Result<Value> {
    if v.kind != CatKind::Fi {
        return Err(Error::Invalid("decompose needs an FI-module".into()));
    }
    if degree > v.window {
        return Err(Error::Window(format!("degree {degree} outside window {}", v.window)));
    }
    let mut m = Map::new();
    for (lambda, mult) in decompose_degree(v, degree)? {
        m.insert(lambda.paren(), json!(mult));
    }
    Ok(Value::Object(m))
}

fn execute(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Check { file } => {
            let v = load_module(&file)?;
            let report = v.validate();
            let code = if report.passed { 0 } else { 1 };
            Ok((pretty(&report), code))
        }
        Command::Decompose { file, degree } => {
            let v = load_module(&file)?;
            Ok((pretty(&decomposition_json(&v, degree)?), 0))
        }
        Command::Sheafify { file, output } => {
            let v = load_module(&file)?;
            let (sh, report) = sheaf_report(&v)?;
            if let Some(path) = output {
                write_atomic(&path, &sh.module.to_json())?;
            }
            Ok((pretty(&report), 0))
        }
        Command::Simple { cat, lambda, window } => {
            check_window(window)?;
            let v = match cat {
                CatKind::Fi => simple_saturated(&lambda.parse::<Partition>()?, window)?,
                CatKind::Oi => {
                    let m = lambda.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad OI degree {lambda:?}")))?;
                    simple_saturated_oi(m, window)?
                }
            };
            Ok((v.to_json(), 0))
        }
        Command::Kn { n, window } => {
            check_window(window)?;
            let r = kn_cross_check(n, window)?;
            let code = if r.isomorphic { 0 } else { 1 };
            Ok((pretty(&r), code))
        }
        Command::Ore { cat, bound } => {
            let (name, pairs, failure) = match cat {
                OreCategory::Fi | OreCategory::Oi => {
                    let kind = if cat == OreCategory::Fi { CatKind::Fi } else { CatKind::Oi };
                    let r = left_ore_check(&BoundedSkeleton { kind, bound });
                    (kind.to_string(), r.pairs_checked, r.failure.map(|(f, g)| vec![f.to_string(), g.to_string()]))
                }
                OreCategory::Kronecker => {
                    let q = FreeQuiverCategory::kronecker();
                    let r = left_ore_check(&q);
                    ("kronecker".to_string(), r.pairs_checked, r.failure.map(|(f, g)| vec![q.name(&f), q.name(&g)]))
                }
            };
            let code = if failure.is_none() { 0 } else { 1 };
            let out = json!({
                "category": name,
                "bound": bound,
                "pairs_checked": pairs,
                "passed": failure.is_none(),
                "failure": failure,
            });
            Ok((pretty(&out), code))
        }
        Command::Artin { command: ArtinCommand::Invariants { n, i, horizon } } => {
            let dim = invariants_f(n, i, horizon)?.dim();
            let next = invariants_f(n, i, horizon + 1)?.dim();
            let out = json!({ "n": n, "i": i, "horizon": horizon, "dim": dim, "stable": dim == next });
            Ok((pretty(&out), 0))
        }
        Command::StableRange { file } => {
            let v = load_module(&file)?;
            Ok((pretty(&presentation_degree(&v)?), 0))
        }
        Command::Report { dir, format, output } => {
            let report = corpus_report(&dir)?;
            let text = match format {
                ReportFormat::Json => pretty(&report),
                ReportFormat::Markdown => report.to_markdown(),
            };
            match output {
                Some(path) => {
                    write_atomic(&path, &text)?;
                    Ok((String::new(), 0))
                }
                None => Ok((text, 0)),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub file: String,
    pub kind: CatKind,
    pub window: usize,
    pub dims: Vec<usize>,
    pub valid: bool,
    pub separated: bool,
    pub torsion_dims: Vec<usize>,
    pub saturated: Option<bool>,
    pub factors: Option<Vec<SheafFactor>>,
    pub gen_degree: Option<usize>,
    pub presentation_degree: Option<usize>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unreadable {
    pub file: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub modules: usize,
    pub valid: usize,
    pub separated: usize,
    pub saturated: usize,
    pub unreadable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub rows: Vec<ReportRow>,
    pub unreadable: Vec<Unreadable>,
    pub summary: ReportSummary,
}

fn report_row(file: String, v: &TruncatedModule) -> ReportRow {
    let valid = v.validate().passed;
    let mut row = ReportRow {
        file,
        kind: v.kind,
        window: v.window,
        dims: v.dims.clone(),
        valid,
        separated: is_separated(v),
        torsion_dims: torsion_report(v).torsion_dims,
        saturated: None,
        factors: None,
        gen_degree: None,
        presentation_degree: None,
        note: None,
    };
    if !valid {
        row.note = Some("fails validation".into());
        return row;
    }
    match presentation_degree(v) {
        Ok(pb) => {
            row.gen_degree = Some(pb.gen_degree);
            row.presentation_degree = Some(pb.presentation_degree);
        }
        Err(e) => row.note = Some(e.to_string()),
    }
    match sheaf_report(v) {
        Ok((_, r)) => {
            row.saturated = Some(r.unit_iso);
            row.factors = Some(r.factors);
        }
        Err(e) => row.note = Some(e.to_string()),
    }
    row
}

/// One row per `*.json` file of `dir`, in file-name order.
pub fn corpus_report(dir: &Path) -> Result<CorpusReport> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut rows = Vec::new();
    let mut unreadable = Vec::new();
    for path in files {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match load_module(&path) {
            Ok(v) => rows.push(report_row(name, &v)),
            Err(e) => unreadable.push(Unreadable { file: name, error: e.to_string() }),
        }
    }
    let summary = ReportSummary {
        modules: rows.len(),
        valid: rows.iter().filter(|r| r.valid).count(),
        separated: rows.iter().filter(|r| r.separated).count(),
        saturated: rows.iter().filter(|r| r.saturated == Some(true)).count(),
        unreadable: unreadable.len(),
    };
    Ok(CorpusReport { rows, unreadable, summary })
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn factor_text(f: &SheafFactor) -> String {
    match &f.lambda {
        Some(l) => format!("{l}x{}", f.mult),
        None => format!("[{}]x{}", f.degree, f.mult),
    }
}

impl CorpusReport {
    pub fn to_markdown(&self) -> String {
        let mut s = String::from(
            "| file | kind | window | dims | valid | separated | saturated | torsion | factors | gen | pres |\n\
             |---|---|---|---|---|---|---|---|---|---|---|\n",
        );
        let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        for r in &self.rows {
            let factors = r
                .factors
                .as_ref()
                .map_or_else(|| "-".to_string(), |fs| fs.iter().map(factor_text).collect::<Vec<_>>().join(" "));
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.file,
                r.kind,
                r.window,
                list(&r.dims),
                r.valid,
                r.separated,
                opt(&r.saturated),
                list(&r.torsion_dims),
                factors,
                opt(&r.gen_degree),
                opt(&r.presentation_degree),
            ));
        }
        for u in &self.unreadable {
            s.push_str(&format!("\nunreadable: {}: {}\n", u.file, u.error));
        }
        let t = &self.summary;
        s.push_str(&format!(
            "\n{} modules, {} valid, {} separated, {} saturated, {} unreadable\n",
            t.modules, t.valid, t.separated, t.saturated, t.unreadable
        ));
        s
    }
}
